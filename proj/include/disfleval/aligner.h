// disfleval/aligner.h

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef DISFLEVAL_ALIGNER_H_
#define DISFLEVAL_ALIGNER_H_

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "disfleval/transcript.h"

namespace disfleval {

/// Cost of each edit operation, split by the fluency class it is charged to.
class WeightScheme {
 public:
  /// Sclite weights: copy 0, insertion 3, deletion 3, substitution 4, for
  /// both classes.
  static WeightScheme standard();

  /// Fluent words as standard. Disfluent copy, insertion and substitution
  /// cost +epsilon more, disfluent deletion -epsilon less, so that the
  /// aligner prefers deleting disfluent reference words.
  static WeightScheme disfluency_aware();

  /// Parses "standard" or "disfluency"; throws std::invalid_argument.
  static WeightScheme by_name(std::string_view name);

  LexCost cost(EditOp op, FluencyClass cls) const {
    return table_[static_cast<std::size_t>(op)][static_cast<std::size_t>(cls)];
  }

  /// Same table with every epsilon component zeroed.
  WeightScheme without_epsilon() const;

  std::string_view name() const { return name_; }

  friend bool operator==(const WeightScheme &a, const WeightScheme &b) {
    return a.table_ == b.table_;
  }

 private:
  WeightScheme() = default;

  // [op][class]
  std::array<std::array<LexCost, 2>, 4> table_{};
  std::string_view name_;
};

/// Class an inserted hypothesis word is charged to, given how many reference
/// tokens are already consumed: that of the next unconsumed reference token,
/// or FLUENT once the reference is exhausted.
FluencyClass insertion_class(const ReferenceTranscript &ref, std::size_t consumed);

/// Minimum-cost monotone alignment by dynamic programming. Among equal-cost
/// tracebacks, read from the end, prefers COPY, then SUBSTITUTE, then DELETE,
/// then INSERT.
Alignment align(const ReferenceTranscript &ref, const std::vector<Token> &hyp,
                const WeightScheme &scheme);

inline Alignment align(const ReferenceTranscript &ref, const Hypothesis &hyp,
                       const WeightScheme &scheme) {
  return align(ref, hyp.tokens, scheme);
}

/// Sums the scheme cost of each step of an existing alignment.
LexCost alignment_cost(const Alignment &alignment, const WeightScheme &scheme);

class OracleLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kOracleMaxLength = 10;

/// Exhaustive enumeration of every monotone total alignment; returns all that
/// attain the minimum cost, in a canonical order. Independent of align().
/// Throws OracleLimitError when either side exceeds kOracleMaxLength.
std::vector<Alignment> oracle_align_all(const ReferenceTranscript &ref,
                                        const std::vector<Token> &hyp,
                                        const WeightScheme &scheme);

}  // namespace disfleval

#endif  // DISFLEVAL_ALIGNER_H_
