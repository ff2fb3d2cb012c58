// src/aligner.cc

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

#include "disfleval/aligner.h"

#include <algorithm>
#include <string>

namespace disfleval {

namespace {

constexpr std::size_t kFluent = static_cast<std::size_t>(FluencyClass::kFluent);
constexpr std::size_t kDisfluent = static_cast<std::size_t>(FluencyClass::kDisfluent);

constexpr std::size_t idx(EditOp op) { return static_cast<std::size_t>(op); }

}  // namespace

WeightScheme WeightScheme::standard() {
  WeightScheme w;
  w.name_ = "standard";
  for (std::size_t c : {kFluent, kDisfluent}) {
    w.table_[idx(EditOp::kCopy)][c] = {0, 0};
    w.table_[idx(EditOp::kInsert)][c] = {3, 0};
    w.table_[idx(EditOp::kDelete)][c] = {3, 0};
    w.table_[idx(EditOp::kSubstitute)][c] = {4, 0};
  }
  return w;
}

WeightScheme WeightScheme::disfluency_aware() {
  WeightScheme w = standard();
  w.name_ = "disfluency";
  w.table_[idx(EditOp::kCopy)][kDisfluent] = {0, +1};
  w.table_[idx(EditOp::kInsert)][kDisfluent] = {3, +1};
  w.table_[idx(EditOp::kDelete)][kDisfluent] = {3, -1};
  w.table_[idx(EditOp::kSubstitute)][kDisfluent] = {4, +1};
  return w;
}

WeightScheme WeightScheme::by_name(std::string_view name) {
  if (name == "standard") return standard();
  if (name == "disfluency" || name == "disfluency_aware") return disfluency_aware();
  throw std::invalid_argument("unknown weight scheme '" + std::string(name) +
                              "' (expected standard or disfluency)");
}

WeightScheme WeightScheme::without_epsilon() const {
  WeightScheme w = *this;
  for (auto &row : w.table_)
    for (auto &cell : row) cell.eps = 0;
  return w;
}

FluencyClass insertion_class(const ReferenceTranscript &ref, std::size_t consumed) {
  return consumed < ref.size() ? ref.tokens()[consumed].fluency : FluencyClass::kFluent;
}

Alignment align(const ReferenceTranscript &ref, const std::vector<Token> &hyp,
                const WeightScheme &scheme) {
  const std::size_t m = ref.size(), n = hyp.size();
  const auto &rt = ref.tokens();
  const std::size_t width = n + 1;
  // cost[i * width + j]: best cost aligning ref[0, i) with hyp[0, j).
  std::vector<LexCost> cost((m + 1) * width);
  auto at = [&](std::size_t i, std::size_t j) -> LexCost & { return cost[i * width + j]; };

  auto diag_cost = [&](std::size_t i, std::size_t j) {
    const EditOp op = rt[i - 1].token == hyp[j - 1] ? EditOp::kCopy : EditOp::kSubstitute;
    return scheme.cost(op, rt[i - 1].fluency);
  };
  auto del_cost = [&](std::size_t i) { return scheme.cost(EditOp::kDelete, rt[i - 1].fluency); };
  auto ins_cost = [&](std::size_t i) {
    return scheme.cost(EditOp::kInsert, insertion_class(ref, i));
  };

  for (std::size_t i = 1; i <= m; ++i) at(i, 0) = at(i - 1, 0) + del_cost(i);
  for (std::size_t i = 0; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      LexCost best = at(i, j - 1) + ins_cost(i);
      if (i > 0) {
        best = std::min(best, at(i - 1, j) + del_cost(i));
        best = std::min(best, at(i - 1, j - 1) + diag_cost(i, j));
      }
      at(i, j) = best;
    }
  }

  Alignment out;
  out.cost = at(m, n);
  std::size_t i = m, j = n;
  while (i > 0 || j > 0) {
    const LexCost here = at(i, j);
    if (i > 0 && j > 0 && at(i - 1, j - 1) + diag_cost(i, j) == here) {
      const EditOp op = rt[i - 1].token == hyp[j - 1] ? EditOp::kCopy : EditOp::kSubstitute;
      out.steps.push_back({op, i - 1, j - 1, rt[i - 1].fluency});
      --i;
      --j;
    } else if (i > 0 && at(i - 1, j) + del_cost(i) == here) {
      out.steps.push_back({EditOp::kDelete, i - 1, std::nullopt, rt[i - 1].fluency});
      --i;
    } else {
      out.steps.push_back({EditOp::kInsert, std::nullopt, j - 1, insertion_class(ref, i)});
      --j;
    }
  }
  std::reverse(out.steps.begin(), out.steps.end());
  return out;
}

LexCost alignment_cost(const Alignment &alignment, const WeightScheme &scheme) {
  LexCost total;
  for (const auto &s : alignment.steps) total += scheme.cost(s.op, s.charged);
  return total;
}

}  // namespace disfleval
