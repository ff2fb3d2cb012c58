// disfleval/metrics.h

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

#ifndef DISFLEVAL_METRICS_H_
#define DISFLEVAL_METRICS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "disfleval/transcript.h"

namespace disfleval {

/// Exact error ratio. Undefined (no value) when the denominator is zero.
struct Ratio {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;

  std::optional<double> value() const {
    if (denominator == 0) return std::nullopt;
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }

  Ratio &operator+=(const Ratio &o) {
    numerator += o.numerator;
    denominator += o.denominator;
    return *this;
  }
  friend bool operator==(const Ratio &, const Ratio &) = default;
};

/// Fluent error rate: fluent substitutions, insertions and deletions over the
/// number of fluent reference words.
Ratio fer(const CountBundle &b);

/// Disfluent error rate: disfluent words not deleted (copies, substitutions)
/// plus insertions charged to disfluent words, over the number of disfluent
/// reference words.
Ratio der(const CountBundle &b);

/// One increment per alignment step, keyed on (op, charged class). Throws
/// std::logic_error when a step index falls outside the reference.
CountBundle counts_from_alignment(const Alignment &alignment, const ReferenceTranscript &ref);

/// Standard WER against the fluent subsequence of the reference.
struct FluentWer {
  std::uint64_t substitutions = 0;
  std::uint64_t insertions = 0;
  std::uint64_t deletions = 0;
  std::uint64_t reference_words = 0;

  std::uint64_t errors() const { return substitutions + insertions + deletions; }
  /// 0 when both sides are empty; undefined when only the reference is.
  std::optional<double> value() const;

  FluentWer &operator+=(const FluentWer &o);
  friend bool operator==(const FluentWer &, const FluentWer &) = default;
};

FluentWer wer_fluent(const ReferenceTranscript &ref, const std::vector<Token> &hyp);

/// Per repair type: denominator is the total reparandum length, numerator the
/// reparandum words not deleted plus insertions charged inside a reparandum.
/// Interregnum words never count. Only types that occur are present.
std::map<RepairType, Ratio> der_by_type(const Alignment &alignment,
                                        const ReferenceTranscript &ref);

/// Same split of the DER numerator/denominator by disfluency category.
/// Numerators and denominators sum to der().
std::map<DisfluencyCategory, Ratio> der_by_category(const Alignment &alignment,
                                                    const ReferenceTranscript &ref);

struct UtteranceScore {
  std::string utterance_id;
  CountBundle counts;
  FluentWer wer;
  std::map<RepairType, Ratio> by_type;
  std::map<DisfluencyCategory, Ratio> by_category;

  Ratio fer() const { return disfleval::fer(counts); }
  Ratio der() const { return disfleval::der(counts); }

  friend bool operator==(const UtteranceScore &, const UtteranceScore &) = default;
};

/// Disfluency-aware alignment for FER/DER plus a standard alignment against
/// the fluent subsequence for WER.
UtteranceScore score_utterance(const ReferenceTranscript &ref, const std::vector<Token> &hyp);

/// Micro-averaged corpus totals: every count is summed, ratios divide sums.
struct CorpusScore {
  std::uint64_t utterances = 0;
  CountBundle counts;
  FluentWer wer;
  std::map<RepairType, Ratio> by_type;
  std::map<DisfluencyCategory, Ratio> by_category;

  Ratio fer() const { return disfleval::fer(counts); }
  Ratio der() const { return disfleval::der(counts); }

  void add(const UtteranceScore &u);
  /// Associative and commutative.
  CorpusScore &merge(const CorpusScore &other);

  friend bool operator==(const CorpusScore &, const CorpusScore &) = default;
};

CorpusScore aggregate(const std::vector<UtteranceScore> &scores);

}  // namespace disfleval

#endif  // DISFLEVAL_METRICS_H_
