// disfleval/report.h

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

#ifndef DISFLEVAL_REPORT_H_
#define DISFLEVAL_REPORT_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "disfleval/aligner.h"
#include "disfleval/ingest.h"
#include "disfleval/metrics.h"
#include "disfleval/normalize.h"

namespace disfleval {

inline constexpr std::string_view kReportSchema = "disfleval.score/1";

std::string_view tool_version();

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReportConfig {
  NormalizationConfig normalization;
  MissingPolicy missing = MissingPolicy::kError;
};

struct ScoreReport {
  ReportConfig config;
  // Sorted by utterance id.
  std::vector<UtteranceScore> utterances;
  CorpusScore corpus;
  std::vector<std::string> missing;
};

/// Scores every pair on up to `jobs` threads. The result is sorted by
/// utterance id and does not depend on `jobs`.
std::vector<UtteranceScore> score_pairs(const std::vector<UtterancePair> &pairs,
                                        std::size_t jobs = 1);

ScoreReport build_report(const PairingResult &paired, const ReportConfig &config,
                         std::size_t jobs = 1);

nlohmann::json to_json(const ScoreReport &report);

/// One row per utterance and a final "TOTAL" row; ratios with 4 decimals,
/// "NA" when undefined.
std::string to_tsv(const ScoreReport &report);

/// Human-readable corpus summary, percentages with one decimal.
std::string summary_text(const CorpusScore &corpus);

/// Corpus totals recomputed from the per-utterance records of a JSON report.
CorpusScore corpus_from_utterance_records(const nlohmann::json &report);

/// Throws ReportError unless the corpus block equals the recomputation from
/// the per-utterance records and every ratio value matches its counts.
void verify_report(const nlohmann::json &report);

}  // namespace disfleval

#endif  // DISFLEVAL_REPORT_H_
