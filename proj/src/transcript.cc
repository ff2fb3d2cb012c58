// src/transcript.cc

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

#include "disfleval/transcript.h"

#include <sstream>
#include <stdexcept>

namespace disfleval {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

void fail(const std::string &id, const std::string &what) {
  throw std::invalid_argument("utterance '" + id + "': " + what);
}

}  // namespace

Token::Token(std::string surface) : surface_(std::move(surface)) {
  if (surface_.empty()) throw std::invalid_argument("empty token");
  for (char c : surface_) {
    if (is_space(c)) throw std::invalid_argument("token contains whitespace: '" + surface_ + "'");
  }
}

std::string_view to_string(FluencyClass c) {
  return c == FluencyClass::kFluent ? "fluent" : "disfluent";
}

std::string_view to_string(DisfluencyCategory c) {
  switch (c) {
    case DisfluencyCategory::kEdited: return "edited";
    case DisfluencyCategory::kInterjection: return "interjection";
    case DisfluencyCategory::kPartial: return "partial";
  }
  return "?";
}

std::string_view to_string(RepairType t) {
  switch (t) {
    case RepairType::kRepetition: return "repetition";
    case RepairType::kCorrection: return "correction";
    case RepairType::kRestart: return "restart";
  }
  return "?";
}

AnnotatedToken AnnotatedToken::fluent(std::string surface) {
  return AnnotatedToken{Token(std::move(surface)), FluencyClass::kFluent, std::nullopt};
}

AnnotatedToken AnnotatedToken::disfluent(std::string surface, DisfluencyCategory category) {
  return AnnotatedToken{Token(std::move(surface)), FluencyClass::kDisfluent, category};
}

ReferenceTranscript::ReferenceTranscript(std::string utterance_id,
                                         std::vector<AnnotatedToken> tokens,
                                         std::vector<RepairStructure> repairs)
    : utterance_id_(std::move(utterance_id)),
      tokens_(std::move(tokens)),
      repairs_(std::move(repairs)) {
  for (const auto &t : tokens_) {
    if (t.category.has_value() != t.is_disfluent())
      fail(utterance_id_, "token '" + t.token.surface() +
                              "' must carry a category iff it is disfluent");
    if (!t.is_disfluent()) ++fluent_count_;
  }

  const std::size_t n = tokens_.size();
  std::size_t previous_end = 0;
  for (const auto &r : repairs_) {
    if (r.reparandum.empty()) fail(utterance_id_, "empty reparandum");
    if (r.reparandum.begin < previous_end) fail(utterance_id_, "repair structures overlap");
    std::size_t cursor = r.reparandum.end;
    if (r.interregnum) {
      if (r.interregnum->begin != cursor || r.interregnum->end < r.interregnum->begin)
        fail(utterance_id_, "interregnum must directly follow the reparandum");
      cursor = r.interregnum->end;
    }
    if (r.repair.begin != cursor || r.repair.end < r.repair.begin)
      fail(utterance_id_, "repair must directly follow the reparandum/interregnum");
    if (r.repair.end > n) fail(utterance_id_, "repair structure index out of range");
    previous_end = r.repair.end;

    for (std::size_t i = r.reparandum.begin; i < r.reparandum.end; ++i)
      if (!tokens_[i].is_disfluent()) fail(utterance_id_, "fluent token inside a reparandum");
    if (r.interregnum) {
      for (std::size_t i = r.interregnum->begin; i < r.interregnum->end; ++i)
        if (!tokens_[i].is_disfluent()) fail(utterance_id_, "fluent token inside an interregnum");
    }
    for (std::size_t i = r.repair.begin; i < r.repair.end; ++i)
      if (tokens_[i].is_disfluent()) fail(utterance_id_, "disfluent token inside a repair");

    if (derive_repair_type(tokens_, r.reparandum, r.repair) != r.type)
      fail(utterance_id_, "repair type disagrees with token surfaces");
  }
}

std::vector<Token> fluent_subsequence(const ReferenceTranscript &ref) {
  std::vector<Token> out;
  out.reserve(ref.fluent_count());
  for (const auto &t : ref.tokens()) {
    if (!t.is_disfluent()) out.push_back(t.token);
  }
  return out;
}

RepairType derive_repair_type(const std::vector<AnnotatedToken> &tokens,
                              const TokenRange &reparandum, const TokenRange &repair) {
  if (repair.empty()) return RepairType::kRestart;
  if (reparandum.size() != repair.size()) return RepairType::kCorrection;
  for (std::size_t k = 0; k < repair.size(); ++k) {
    if (tokens[reparandum.begin + k].token != tokens[repair.begin + k].token)
      return RepairType::kCorrection;
  }
  return RepairType::kRepetition;
}

char op_letter(EditOp op) {
  switch (op) {
    case EditOp::kCopy: return 'C';
    case EditOp::kSubstitute: return 'S';
    case EditOp::kDelete: return 'D';
    case EditOp::kInsert: return 'I';
  }
  return '?';
}

std::string check_alignment(const Alignment &alignment, const ReferenceTranscript &ref,
                            const std::vector<Token> &hyp) {
  std::size_t next_ref = 0, next_hyp = 0;
  std::ostringstream err;
  for (std::size_t k = 0; k < alignment.steps.size(); ++k) {
    const auto &s = alignment.steps[k];
    const bool wants_ref = s.op != EditOp::kInsert;
    const bool wants_hyp = s.op != EditOp::kDelete;
    if (s.ref_index.has_value() != wants_ref || s.hyp_index.has_value() != wants_hyp) {
      err << "step " << k << ": wrong index presence for " << op_letter(s.op);
      return err.str();
    }
    if (wants_ref) {
      if (*s.ref_index != next_ref || next_ref >= ref.size()) {
        err << "step " << k << ": ref index " << *s.ref_index << " out of order";
        return err.str();
      }
      if (s.charged != ref.tokens()[next_ref].fluency) {
        err << "step " << k << ": charged class differs from reference token";
        return err.str();
      }
      ++next_ref;
    }
    if (s.op == EditOp::kInsert) {
      const FluencyClass expected =
          next_ref < ref.size() ? ref.tokens()[next_ref].fluency : FluencyClass::kFluent;
      if (s.charged != expected) {
        err << "step " << k << ": insertion charged to the wrong class";
        return err.str();
      }
    }
    if (wants_hyp) {
      if (*s.hyp_index != next_hyp || next_hyp >= hyp.size()) {
        err << "step " << k << ": hyp index " << *s.hyp_index << " out of order";
        return err.str();
      }
      ++next_hyp;
    }
    if (s.op == EditOp::kCopy || s.op == EditOp::kSubstitute) {
      const bool equal = ref.tokens()[*s.ref_index].token == hyp[*s.hyp_index];
      if (equal != (s.op == EditOp::kCopy)) {
        err << "step " << k << ": " << op_letter(s.op) << " on "
            << (equal ? "equal" : "unequal") << " surfaces";
        return err.str();
      }
    }
  }
  if (next_ref != ref.size() || next_hyp != hyp.size()) return "alignment is not total";
  return {};
}

ClassCounts &ClassCounts::operator+=(const ClassCounts &o) {
  copies += o.copies;
  substitutions += o.substitutions;
  insertions += o.insertions;
  deletions += o.deletions;
  reference_words += o.reference_words;
  return *this;
}

std::uint64_t CountBundle::hypothesis_words() const {
  return fluent.copies + fluent.substitutions + fluent.insertions + disfluent.copies +
         disfluent.substitutions + disfluent.insertions;
}

}  // namespace disfleval
