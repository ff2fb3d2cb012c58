// src/report.cc

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

#include "disfleval/report.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#ifndef DISFLEVAL_VERSION
#define DISFLEVAL_VERSION "0.0.0"
#endif

namespace disfleval {

using nlohmann::json;

std::string_view tool_version() { return DISFLEVAL_VERSION; }

std::vector<UtteranceScore> score_pairs(const std::vector<UtterancePair> &pairs,
                                        std::size_t jobs) {
  std::vector<UtteranceScore> out(pairs.size());
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, pairs.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < pairs.size(); k = next++) {
      try {
        out[k] = score_utterance(pairs[k].reference, pairs[k].hypothesis.tokens);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto &t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);

  std::sort(out.begin(), out.end(), [](const UtteranceScore &a, const UtteranceScore &b) {
    return a.utterance_id < b.utterance_id;
  });
  return out;
}

ScoreReport build_report(const PairingResult &paired, const ReportConfig &config,
                         std::size_t jobs) {
  ScoreReport r;
  r.config = config;
  r.utterances = score_pairs(paired.pairs, jobs);
  r.corpus = aggregate(r.utterances);
  r.missing = paired.missing;
  std::sort(r.missing.begin(), r.missing.end());
  return r;
}

namespace {

json ratio_json(const Ratio &r) {
  json j = {{"numerator", r.numerator}, {"denominator", r.denominator}};
  if (auto v = r.value()) j["value"] = *v;
  else j["value"] = nullptr;
  return j;
}

json class_json(const ClassCounts &c) {
  return {{"copies", c.copies},
          {"substitutions", c.substitutions},
          {"insertions", c.insertions},
          {"deletions", c.deletions},
          {"reference_words", c.reference_words}};
}

json wer_json(const FluentWer &w) {
  json j = {{"substitutions", w.substitutions},
            {"insertions", w.insertions},
            {"deletions", w.deletions},
            {"reference_words", w.reference_words},
            {"errors", w.errors()}};
  if (auto v = w.value()) j["value"] = *v;
  else j["value"] = nullptr;
  return j;
}

template <typename Key>
json ratio_map_json(const std::map<Key, Ratio> &m) {
  json j = json::object();
  for (const auto &[k, v] : m) j[std::string(to_string(k))] = ratio_json(v);
  return j;
}

void fill_score_fields(json &j, const CountBundle &counts, const FluentWer &wer,
                       const std::map<RepairType, Ratio> &by_type,
                       const std::map<DisfluencyCategory, Ratio> &by_category) {
  j["counts"] = {{"fluent", class_json(counts.fluent)},
                 {"disfluent", class_json(counts.disfluent)}};
  j["fer"] = ratio_json(fer(counts));
  j["der"] = ratio_json(der(counts));
  j["wer_fluent"] = wer_json(wer);
  j["der_by_type"] = ratio_map_json(by_type);
  j["der_by_category"] = ratio_map_json(by_category);
}

std::string_view to_string(MissingPolicy p) {
  return p == MissingPolicy::kError ? "error" : "empty";
}

}  // namespace

json to_json(const ScoreReport &report) {
  const auto &n = report.config.normalization;
  json j;
  j["schema"] = kReportSchema;
  j["tool"] = {{"name", "disfleval"}, {"version", tool_version()}};
  j["config"] = {
      {"fer_der_scheme", WeightScheme::disfluency_aware().name()},
      {"wer_scheme", WeightScheme::standard().name()},
      {"missing", to_string(report.config.missing)},
      {"normalization",
       {{"lowercase", n.lowercase},
        {"strip_punctuation", n.strip_punctuation},
        {"drop_partial_words", n.drop_partial_words},
        {"auto_label", n.auto_label},
        {"filler_lexicon", n.filler_lexicon}}},
  };
  json utts = json::array();
  for (const auto &u : report.utterances) {
    json ju;
    ju["id"] = u.utterance_id;
    fill_score_fields(ju, u.counts, u.wer, u.by_type, u.by_category);
    utts.push_back(std::move(ju));
  }
  j["utterances"] = std::move(utts);

  json c;
  c["utterances"] = report.corpus.utterances;
  fill_score_fields(c, report.corpus.counts, report.corpus.wer, report.corpus.by_type,
                    report.corpus.by_category);
  c["missing_hypotheses"] = report.missing;
  j["corpus"] = std::move(c);
  return j;
}

namespace {

std::string fixed4(std::optional<double> v) {
  if (!v) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", *v);
  return buf;
}

void tsv_row(std::ostringstream &out, const std::string &id, const CountBundle &c,
             const FluentWer &w) {
  const auto &f = c.fluent;
  const auto &d = c.disfluent;
  out << id << '\t' << f.reference_words << '\t' << d.reference_words << '\t' << f.copies
      << '\t' << f.substitutions << '\t' << f.insertions << '\t' << f.deletions << '\t'
      << d.copies << '\t' << d.substitutions << '\t' << d.insertions << '\t' << d.deletions
      << '\t' << fixed4(fer(c).value()) << '\t' << fixed4(der(c).value()) << '\t'
      << fixed4(w.value()) << '\n';
}

}  // namespace

std::string to_tsv(const ScoreReport &report) {
  std::ostringstream out;
  out << "id\tfluent_words\tdisfluent_words\tc_f\ts_f\ti_f\td_f\tc_d\ts_d\ti_d\td_d\t"
         "fer\tder\twer_fluent\n";
  for (const auto &u : report.utterances) tsv_row(out, u.utterance_id, u.counts, u.wer);
  tsv_row(out, "TOTAL", report.corpus.counts, report.corpus.wer);
  return out.str();
}

std::string summary_text(const CorpusScore &corpus) {
  auto pct = [](std::optional<double> v) {
    if (!v) return std::string("NA");
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", 100.0 * *v);
    return std::string(buf);
  };
  const Ratio f = corpus.fer(), d = corpus.der();
  const auto &w = corpus.wer;
  std::ostringstream out;
  out << "%WER " << pct(w.value()) << " [ " << w.errors() << " / " << w.reference_words << ", "
      << w.insertions << " ins, " << w.deletions << " del, " << w.substitutions << " sub ]\n"
      << "%FER " << pct(f.value()) << " [ " << f.numerator << " / " << f.denominator << " ]\n"
      << "%DER " << pct(d.value()) << " [ " << d.numerator << " / " << d.denominator << " ]\n";
  for (const auto &[type, r] : corpus.by_type) {
    out << "%DER(" << to_string(type) << ") " << pct(r.value()) << " [ " << r.numerator << " / "
        << r.denominator << " ]\n";
  }
  out << "Scored " << corpus.utterances << " utterances.\n";
  return out.str();
}

namespace {

ClassCounts class_from_json(const json &j) {
  ClassCounts c;
  c.copies = j.at("copies").get<std::uint64_t>();
  c.substitutions = j.at("substitutions").get<std::uint64_t>();
  c.insertions = j.at("insertions").get<std::uint64_t>();
  c.deletions = j.at("deletions").get<std::uint64_t>();
  c.reference_words = j.at("reference_words").get<std::uint64_t>();
  return c;
}

Ratio ratio_from_json(const json &j) {
  return {j.at("numerator").get<std::uint64_t>(), j.at("denominator").get<std::uint64_t>()};
}

FluentWer wer_from_json(const json &j) {
  FluentWer w;
  w.substitutions = j.at("substitutions").get<std::uint64_t>();
  w.insertions = j.at("insertions").get<std::uint64_t>();
  w.deletions = j.at("deletions").get<std::uint64_t>();
  w.reference_words = j.at("reference_words").get<std::uint64_t>();
  return w;
}

template <typename Key>
std::map<Key, Ratio> ratio_map_from_json(const json &j, std::initializer_list<Key> keys) {
  std::map<Key, Ratio> out;
  for (const auto &[name, value] : j.items()) {
    bool known = false;
    for (Key k : keys) {
      if (to_string(k) == name) {
        out[k] = ratio_from_json(value);
        known = true;
      }
    }
    if (!known) throw ReportError("unknown breakdown key '" + name + "'");
  }
  return out;
}

UtteranceScore score_from_json(const json &j) {
  UtteranceScore s;
  s.utterance_id = j.value("id", std::string());
  s.counts.fluent = class_from_json(j.at("counts").at("fluent"));
  s.counts.disfluent = class_from_json(j.at("counts").at("disfluent"));
  s.wer = wer_from_json(j.at("wer_fluent"));
  s.by_type = ratio_map_from_json(
      j.at("der_by_type"),
      {RepairType::kRepetition, RepairType::kCorrection, RepairType::kRestart});
  s.by_category = ratio_map_from_json(
      j.at("der_by_category"), {DisfluencyCategory::kEdited, DisfluencyCategory::kInterjection,
                                DisfluencyCategory::kPartial});
  return s;
}

void check_value(const json &j, std::optional<double> expected, const std::string &where) {
  const json &v = j.at("value");
  const bool ok = expected ? (v.is_number() && v.get<double>() == *expected) : v.is_null();
  if (!ok) throw ReportError(where + ": value does not match its counts");
}

void check_block(const json &j, const UtteranceScore &s, const std::string &where) {
  check_value(j.at("fer"), s.fer().value(), where + " fer");
  check_value(j.at("der"), s.der().value(), where + " der");
  check_value(j.at("wer_fluent"), s.wer.value(), where + " wer_fluent");
  if (ratio_from_json(j.at("fer")) != s.fer() || ratio_from_json(j.at("der")) != s.der())
    throw ReportError(where + ": fer/der counts disagree with the operation counts");
}

}  // namespace

CorpusScore corpus_from_utterance_records(const json &report) {
  try {
    CorpusScore c;
    for (const auto &u : report.at("utterances")) c.add(score_from_json(u));
    return c;
  } catch (const json::exception &e) {
    throw ReportError(std::string("malformed report: ") + e.what());
  }
}

void verify_report(const json &report) {
  try {
    if (report.at("schema") != kReportSchema) throw ReportError("unexpected report schema");
    for (const auto &u : report.at("utterances"))
      check_block(u, score_from_json(u), "utterance " + u.value("id", std::string("?")));

    const CorpusScore recomputed = corpus_from_utterance_records(report);
    const json &cj = report.at("corpus");
    UtteranceScore stated = score_from_json(cj);
    check_block(cj, stated, "corpus");
    CorpusScore stated_corpus;
    stated_corpus.utterances = cj.at("utterances").get<std::uint64_t>();
    stated_corpus.counts = stated.counts;
    stated_corpus.wer = stated.wer;
    stated_corpus.by_type = stated.by_type;
    stated_corpus.by_category = stated.by_category;
    if (!(stated_corpus == recomputed))
      throw ReportError("corpus block differs from the sum of the utterance records");
  } catch (const json::exception &e) {
    throw ReportError(std::string("malformed report: ") + e.what());
  }
}

}  // namespace disfleval
