// src/oracle.cc

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

// Brute-force enumeration of alignments. Shares nothing with the dynamic
// program in aligner.cc beyond the weight table.

#include <optional>
#include <string>

#include "disfleval/aligner.h"

namespace disfleval {

namespace {

class Enumerator {
 public:
  Enumerator(const ReferenceTranscript &ref, const std::vector<Token> &hyp,
             const WeightScheme &scheme)
      : ref_(ref), hyp_(hyp), scheme_(scheme) {}

  std::vector<Alignment> run() {
    walk(0, 0, LexCost{});
    return std::move(best_);
  }

 private:
  void walk(std::size_t i, std::size_t j, LexCost cost) {
    const std::size_t m = ref_.size(), n = hyp_.size();
    if (i == m && j == n) {
      if (!best_cost_ || cost < *best_cost_) {
        best_cost_ = cost;
        best_.clear();
      }
      if (cost == *best_cost_) best_.push_back(Alignment{path_, cost});
      return;
    }
    if (i < m && j < n) {
      const auto &r = ref_.tokens()[i];
      const EditOp op = r.token == hyp_[j] ? EditOp::kCopy : EditOp::kSubstitute;
      step({op, i, j, r.fluency}, i + 1, j + 1, cost);
    }
    if (i < m) {
      const auto &r = ref_.tokens()[i];
      step({EditOp::kDelete, i, std::nullopt, r.fluency}, i + 1, j, cost);
    }
    if (j < n) {
      const FluencyClass cls = i < m ? ref_.tokens()[i].fluency : FluencyClass::kFluent;
      step({EditOp::kInsert, std::nullopt, j, cls}, i, j + 1, cost);
    }
  }

  void step(const AlignmentStep &s, std::size_t i, std::size_t j, LexCost cost) {
    path_.push_back(s);
    walk(i, j, cost + scheme_.cost(s.op, s.charged));
    path_.pop_back();
  }

  const ReferenceTranscript &ref_;
  const std::vector<Token> &hyp_;
  const WeightScheme &scheme_;
  std::vector<AlignmentStep> path_;
  std::optional<LexCost> best_cost_;
  std::vector<Alignment> best_;
};

}  // namespace

std::vector<Alignment> oracle_align_all(const ReferenceTranscript &ref,
                                        const std::vector<Token> &hyp,
                                        const WeightScheme &scheme) {
  if (ref.size() > kOracleMaxLength || hyp.size() > kOracleMaxLength) {
    throw OracleLimitError("oracle enumeration is limited to " +
                           std::to_string(kOracleMaxLength) + " tokens per side (got " +
                           std::to_string(ref.size()) + " x " + std::to_string(hyp.size()) +
                           ")");
  }
  return Enumerator(ref, hyp, scheme).run();
}

}  // namespace disfleval
