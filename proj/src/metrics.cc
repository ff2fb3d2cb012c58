// src/metrics.cc

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

#include "disfleval/metrics.h"

#include <stdexcept>

#include "disfleval/aligner.h"

namespace disfleval {

Ratio fer(const CountBundle &b) {
  const auto &f = b.fluent;
  return {f.substitutions + f.insertions + f.deletions, f.reference_words};
}

Ratio der(const CountBundle &b) {
  const auto &d = b.disfluent;
  return {d.substitutions + d.insertions + d.copies, d.reference_words};
}

CountBundle counts_from_alignment(const Alignment &alignment, const ReferenceTranscript &ref) {
  CountBundle b;
  b.fluent.reference_words = ref.fluent_count();
  b.disfluent.reference_words = ref.disfluent_count();
  for (const auto &s : alignment.steps) {
    if (s.ref_index && *s.ref_index >= ref.size())
      throw std::logic_error("alignment step references token " + std::to_string(*s.ref_index) +
                             " of a " + std::to_string(ref.size()) + "-token reference");
    ClassCounts &c = s.charged == FluencyClass::kFluent ? b.fluent : b.disfluent;
    switch (s.op) {
      case EditOp::kCopy: ++c.copies; break;
      case EditOp::kSubstitute: ++c.substitutions; break;
      case EditOp::kInsert: ++c.insertions; break;
      case EditOp::kDelete: ++c.deletions; break;
    }
  }
  return b;
}

std::optional<double> FluentWer::value() const {
  if (reference_words == 0) {
    if (errors() == 0) return 0.0;
    return std::nullopt;
  }
  return static_cast<double>(errors()) / static_cast<double>(reference_words);
}

FluentWer &FluentWer::operator+=(const FluentWer &o) {
  substitutions += o.substitutions;
  insertions += o.insertions;
  deletions += o.deletions;
  reference_words += o.reference_words;
  return *this;
}

FluentWer wer_fluent(const ReferenceTranscript &ref, const std::vector<Token> &hyp) {
  std::vector<AnnotatedToken> fluent;
  fluent.reserve(ref.fluent_count());
  for (const auto &t : fluent_subsequence(ref)) fluent.push_back({t, FluencyClass::kFluent, {}});
  const ReferenceTranscript fluent_ref(ref.utterance_id(), std::move(fluent));
  const CountBundle b =
      counts_from_alignment(align(fluent_ref, hyp, WeightScheme::standard()), fluent_ref);
  return {b.fluent.substitutions, b.fluent.insertions, b.fluent.deletions,
          b.fluent.reference_words};
}

namespace {

// Calls visit(ref_index) for every step that counts toward a DER numerator:
// disfluent copies and substitutions at their reference token, disfluent
// insertions at the next unconsumed reference token.
template <typename Visit>
void for_each_der_hit(const Alignment &alignment, const ReferenceTranscript &ref, Visit visit) {
  std::size_t consumed = 0;
  for (const auto &s : alignment.steps) {
    switch (s.op) {
      case EditOp::kCopy:
      case EditOp::kSubstitute:
        if (s.charged == FluencyClass::kDisfluent) visit(*s.ref_index);
        consumed = *s.ref_index + 1;
        break;
      case EditOp::kDelete:
        consumed = *s.ref_index + 1;
        break;
      case EditOp::kInsert:
        if (s.charged == FluencyClass::kDisfluent && consumed < ref.size()) visit(consumed);
        break;
    }
  }
}

}  // namespace

std::map<RepairType, Ratio> der_by_type(const Alignment &alignment,
                                        const ReferenceTranscript &ref) {
  std::map<RepairType, Ratio> out;
  std::vector<std::optional<RepairType>> type_of(ref.size());
  for (const auto &r : ref.repairs()) {
    out[r.type].denominator += r.reparandum.size();
    for (std::size_t i = r.reparandum.begin; i < r.reparandum.end; ++i) type_of[i] = r.type;
  }
  for_each_der_hit(alignment, ref, [&](std::size_t i) {
    if (type_of[i]) ++out[*type_of[i]].numerator;
  });
  return out;
}

std::map<DisfluencyCategory, Ratio> der_by_category(const Alignment &alignment,
                                                    const ReferenceTranscript &ref) {
  std::map<DisfluencyCategory, Ratio> out;
  for (const auto &t : ref.tokens()) {
    if (t.category) ++out[*t.category].denominator;
  }
  for_each_der_hit(alignment, ref,
                   [&](std::size_t i) { ++out[*ref.tokens()[i].category].numerator; });
  return out;
}

UtteranceScore score_utterance(const ReferenceTranscript &ref, const std::vector<Token> &hyp) {
  const Alignment a = align(ref, hyp, WeightScheme::disfluency_aware());
  UtteranceScore s;
  s.utterance_id = ref.utterance_id();
  s.counts = counts_from_alignment(a, ref);
  s.wer = wer_fluent(ref, hyp);
  s.by_type = der_by_type(a, ref);
  s.by_category = der_by_category(a, ref);
  return s;
}

void CorpusScore::add(const UtteranceScore &u) {
  ++utterances;
  counts += u.counts;
  wer += u.wer;
  for (const auto &[k, v] : u.by_type) by_type[k] += v;
  for (const auto &[k, v] : u.by_category) by_category[k] += v;
}

CorpusScore &CorpusScore::merge(const CorpusScore &other) {
  utterances += other.utterances;
  counts += other.counts;
  wer += other.wer;
  for (const auto &[k, v] : other.by_type) by_type[k] += v;
  for (const auto &[k, v] : other.by_category) by_category[k] += v;
  return *this;
}

CorpusScore aggregate(const std::vector<UtteranceScore> &scores) {
  CorpusScore c;
  for (const auto &s : scores) c.add(s);
  return c;
}

}  // namespace disfleval
