// disfleval/transcript.h

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

#ifndef DISFLEVAL_TRANSCRIPT_H_
#define DISFLEVAL_TRANSCRIPT_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace disfleval {

/// A normalized word. Never empty, never contains whitespace.
class Token {
 public:
  /// Throws std::invalid_argument when `surface` violates the invariant.
  explicit Token(std::string surface);

  const std::string &surface() const { return surface_; }

  friend bool operator==(const Token &, const Token &) = default;
  friend auto operator<=>(const Token &, const Token &) = default;

 private:
  std::string surface_;
};

enum class FluencyClass { kFluent, kDisfluent };

/// Only meaningful for disfluent tokens.
enum class DisfluencyCategory { kEdited, kInterjection, kPartial };

enum class RepairType { kRepetition, kCorrection, kRestart };

std::string_view to_string(FluencyClass c);
std::string_view to_string(DisfluencyCategory c);
std::string_view to_string(RepairType t);

struct AnnotatedToken {
  Token token;
  FluencyClass fluency = FluencyClass::kFluent;
  // Set iff fluency == kDisfluent.
  std::optional<DisfluencyCategory> category;

  static AnnotatedToken fluent(std::string surface);
  static AnnotatedToken disfluent(std::string surface, DisfluencyCategory category);

  bool is_disfluent() const { return fluency == FluencyClass::kDisfluent; }

  friend bool operator==(const AnnotatedToken &, const AnnotatedToken &) = default;
};

/// Half-open token index range [begin, end).
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return begin == end; }
  bool contains(std::size_t i) const { return i >= begin && i < end; }

  friend bool operator==(const TokenRange &, const TokenRange &) = default;
};

/// One speech repair: reparandum, optional interregnum, possibly-empty repair.
/// Ranges are ordered and disjoint. An empty repair still records its
/// position (where the repair would have started).
struct RepairStructure {
  TokenRange reparandum;
  std::optional<TokenRange> interregnum;
  TokenRange repair;
  RepairType type = RepairType::kCorrection;

  friend bool operator==(const RepairStructure &, const RepairStructure &) = default;
};

class ReferenceTranscript {
 public:
  ReferenceTranscript() = default;
  /// Validates every invariant; throws std::invalid_argument on violation.
  ReferenceTranscript(std::string utterance_id, std::vector<AnnotatedToken> tokens,
                      std::vector<RepairStructure> repairs = {});

  const std::string &utterance_id() const { return utterance_id_; }
  const std::vector<AnnotatedToken> &tokens() const { return tokens_; }
  const std::vector<RepairStructure> &repairs() const { return repairs_; }

  std::size_t size() const { return tokens_.size(); }
  std::size_t fluent_count() const { return fluent_count_; }
  std::size_t disfluent_count() const { return tokens_.size() - fluent_count_; }

  friend bool operator==(const ReferenceTranscript &a, const ReferenceTranscript &b) {
    return a.utterance_id_ == b.utterance_id_ && a.tokens_ == b.tokens_ &&
           a.repairs_ == b.repairs_;
  }

 private:
  std::string utterance_id_;
  std::vector<AnnotatedToken> tokens_;
  std::vector<RepairStructure> repairs_;
  std::size_t fluent_count_ = 0;
};

struct Hypothesis {
  std::string utterance_id;
  std::vector<Token> tokens;

  friend bool operator==(const Hypothesis &, const Hypothesis &) = default;
};

/// The reference with every disfluent token removed, order preserved.
std::vector<Token> fluent_subsequence(const ReferenceTranscript &ref);

/// Classifies a repair from token surfaces alone: RESTART when the repair is
/// empty, REPETITION when reparandum and repair surfaces agree elementwise,
/// CORRECTION otherwise.
RepairType derive_repair_type(const std::vector<AnnotatedToken> &tokens,
                              const TokenRange &reparandum, const TokenRange &repair);

// ---------------------------------------------------------------------------
// Alignment primitives.

enum class EditOp { kCopy, kSubstitute, kDelete, kInsert };

char op_letter(EditOp op);

/// Two-tier alignment cost. `base` is in units of the integer edit weights,
/// `eps` counts +epsilon minus -epsilon contributions. Ordering is
/// lexicographic, which matches real-valued weights base + eps * 1e-7 for any
/// utterance with fewer than 10^7 tokens.
struct LexCost {
  std::int64_t base = 0;
  std::int64_t eps = 0;

  LexCost &operator+=(const LexCost &o) {
    base += o.base;
    eps += o.eps;
    return *this;
  }
  friend LexCost operator+(LexCost a, const LexCost &b) { return a += b; }
  friend bool operator==(const LexCost &, const LexCost &) = default;
  friend auto operator<=>(const LexCost &, const LexCost &) = default;
};

struct AlignmentStep {
  EditOp op = EditOp::kCopy;
  std::optional<std::size_t> ref_index;
  std::optional<std::size_t> hyp_index;
  FluencyClass charged = FluencyClass::kFluent;

  friend bool operator==(const AlignmentStep &, const AlignmentStep &) = default;
};

struct Alignment {
  std::vector<AlignmentStep> steps;
  LexCost cost;

  friend bool operator==(const Alignment &, const Alignment &) = default;
};

/// Checks the structural alignment invariants against a reference/hypothesis
/// pair (monotone, total, COPY iff equal surfaces, charged classes). Returns an
/// empty string when valid, otherwise a description of the first violation.
std::string check_alignment(const Alignment &alignment, const ReferenceTranscript &ref,
                            const std::vector<Token> &hyp);

// ---------------------------------------------------------------------------
// Counts.

/// Operation counts for one fluency class, plus that class's reference size.
struct ClassCounts {
  std::uint64_t copies = 0;
  std::uint64_t substitutions = 0;
  std::uint64_t insertions = 0;
  std::uint64_t deletions = 0;
  std::uint64_t reference_words = 0;

  ClassCounts &operator+=(const ClassCounts &o);
  friend bool operator==(const ClassCounts &, const ClassCounts &) = default;
};

/// Class-split counts feeding FER and DER. `fluent` of an all-fluent reference
/// holds the plain WER counts.
struct CountBundle {
  ClassCounts fluent;
  ClassCounts disfluent;

  CountBundle &operator+=(const CountBundle &o) {
    fluent += o.fluent;
    disfluent += o.disfluent;
    return *this;
  }
  friend bool operator==(const CountBundle &, const CountBundle &) = default;

  /// Copies + substitutions + insertions over both classes.
  std::uint64_t hypothesis_words() const;
};

}  // namespace disfleval

#endif  // DISFLEVAL_TRANSCRIPT_H_
