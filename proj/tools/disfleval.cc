// tools/disfleval.cc

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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "disfleval/aligner.h"
#include "disfleval/ingest.h"
#include "disfleval/metrics.h"
#include "disfleval/normalize.h"
#include "disfleval/report.h"
#include "disfleval/synth.h"

namespace {

using namespace disfleval;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitPairing = 3;

NormalizationConfig load_normalization(const std::string &path) {
  return path.empty() ? default_normalization_config() : load_normalization_config(path);
}

void write_output(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

struct ScoreArgs {
  std::string ref, hyp, output, format = "json", missing = "error", norm_config;
  std::size_t jobs = 1;
  bool verify = false;
  bool quiet = false;
};

int run_score(const ScoreArgs &a) {
  ReportConfig config;
  config.normalization = load_normalization(a.norm_config);
  config.missing = a.missing == "empty" ? MissingPolicy::kEmpty : MissingPolicy::kError;

  const auto refs = read_reference_file(a.ref, config.normalization);
  const auto hyps = read_hypothesis_file(a.hyp, config.normalization);
  const PairingResult paired = pair_files(refs, hyps, config.missing);
  for (const auto &id : paired.missing)
    std::cerr << "WARNING: no hypothesis for " << id << ", scored as empty\n";

  const ScoreReport report = build_report(paired, config, a.jobs);
  const nlohmann::json j = to_json(report);
  if (a.verify) verify_report(j);
  write_output(a.output, a.format == "tsv" ? to_tsv(report) : j.dump(2) + "\n");
  if (!a.quiet) std::cerr << summary_text(report.corpus);
  return kExitOk;
}

struct AlignArgs {
  std::string ref, hyp, utterance, scheme = "disfluency", norm_config;
  bool enumerate = false;
};

std::string pad(const std::string &s, std::size_t width) {
  return s + std::string(width - s.size(), ' ');
}

std::string render_alignment(const Alignment &a, const ReferenceTranscript &ref,
                             const std::vector<Token> &hyp) {
  std::vector<std::string> r, h, o;
  for (const auto &s : a.steps) {
    std::string rc, hc;
    if (s.ref_index) {
      const auto &t = ref.tokens()[*s.ref_index];
      rc = t.token.surface() + (t.is_disfluent() ? "*" : "");
    }
    if (s.hyp_index) hc = hyp[*s.hyp_index].surface();
    r.push_back(rc);
    h.push_back(hc);
    o.push_back(std::string(1, op_letter(s.op)));
  }
  std::string rr = "REF:", hr = "HYP:", orow = "OPS:";
  for (std::size_t k = 0; k < a.steps.size(); ++k) {
    const std::size_t w = std::max({r[k].size(), h[k].size(), std::size_t{1}});
    rr += "  " + pad(r[k], w);
    hr += "  " + pad(h[k], w);
    orow += "  " + pad(o[k], w);
  }
  auto rstrip = [](std::string s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
  };
  return rstrip(rr) + "\n" + rstrip(hr) + "\n" + rstrip(orow) + "\n";
}

std::string class_line(const ClassCounts &c) {
  std::ostringstream out;
  out << "c=" << c.copies << " s=" << c.substitutions << " i=" << c.insertions
      << " d=" << c.deletions << " n=" << c.reference_words;
  return out.str();
}

int run_align(const AlignArgs &a) {
  const NormalizationConfig norm = load_normalization(a.norm_config);
  const WeightScheme scheme = WeightScheme::by_name(a.scheme);
  const auto refs = read_reference_file(a.ref, norm);
  const auto hyps = read_hypothesis_file(a.hyp, norm);

  auto ref_it = std::find_if(refs.begin(), refs.end(), [&](const ReferenceTranscript &r) {
    return r.utterance_id() == a.utterance;
  });
  if (ref_it == refs.end()) throw PairingError("unknown utterance id: " + a.utterance);
  auto hyp_it = std::find_if(hyps.begin(), hyps.end(),
                             [&](const Hypothesis &h) { return h.utterance_id == a.utterance; });
  const std::vector<Token> hyp = hyp_it == hyps.end() ? std::vector<Token>{} : hyp_it->tokens;

  const Alignment alignment = align(*ref_it, hyp, scheme);
  const CountBundle counts = counts_from_alignment(alignment, *ref_it);
  std::cout << "utterance: " << a.utterance << "  scheme: " << scheme.name() << "\n"
            << render_alignment(alignment, *ref_it, hyp) << "cost: base=" << alignment.cost.base
            << " eps=" << alignment.cost.eps << "\n"
            << "fluent:    " << class_line(counts.fluent) << "\n"
            << "disfluent: " << class_line(counts.disfluent) << "\n";
  auto show = [](const Ratio &r) {
    std::ostringstream out;
    if (auto v = r.value()) out << r.numerator << "/" << r.denominator << " = " << *v;
    else out << "NA";
    return out.str();
  };
  std::cout << "FER " << show(fer(counts)) << "  DER " << show(der(counts)) << "\n";
  if (a.enumerate) {
    try {
      const auto all = oracle_align_all(*ref_it, hyp, scheme);
      std::cout << "note: " << all.size()
                << (all.size() == 1 ? " minimal alignment exists" : " minimal alignments exist")
                << " under the " << scheme.name() << " scheme\n";
    } catch (const OracleLimitError &e) {
      std::cout << "note: enumeration skipped: " << e.what() << "\n";
    }
  }
  return kExitOk;
}

struct SimulateArgs {
  std::uint64_t seed = 0;
  std::string out_dir, mode = "e2e";
  CorpusSpec spec;
  std::size_t jobs = 1;
};

int run_simulate(SimulateArgs a) {
  a.spec.mode = system_mode_by_name(a.mode);
  a.spec.disfluency.validate();
  a.spec.channel.validate();
  const SyntheticCorpus corpus = generate_corpus(a.spec, a.seed);

  std::filesystem::create_directories(a.out_dir);
  const std::filesystem::path dir(a.out_dir);
  std::string ref_text, hyp_text;
  for (const auto &r : corpus.references) ref_text += format_bracket(r) + "\n";
  for (const auto &h : corpus.hypotheses) hyp_text += format_hypothesis(h) + "\n";
  write_output((dir / "ref.txt").string(), ref_text);
  write_output((dir / "hyp.txt").string(), hyp_text);

  // Score what was written so the report matches the files exactly.
  ReportConfig config;
  std::istringstream ref_in(ref_text), hyp_in(hyp_text);
  const auto refs = read_references(ref_in, config.normalization, "ref.txt");
  const auto hyps = read_hypotheses(hyp_in, config.normalization, "hyp.txt");
  const ScoreReport report = build_report(pair_files(refs, hyps, config.missing), config, a.jobs);
  write_output((dir / "report.json").string(), to_json(report).dump(2) + "\n");
  std::cerr << summary_text(report.corpus);
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Scoring for joint speech recognition and disfluency removal: "
               "fluent (FER) and disfluent (DER) word error rates."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  ScoreArgs score;
  auto *score_cmd = app.add_subcommand("score", "Score a hypothesis file against references");
  score_cmd->add_option("--ref", score.ref, "Annotated reference file")->required();
  score_cmd->add_option("--hyp", score.hyp, "Hypothesis file")->required();
  score_cmd->add_option("--format", score.format, "Output format")
      ->check(CLI::IsMember({"json", "tsv"}));
  score_cmd->add_option("--missing", score.missing,
                        "References without hypothesis: error, or score as empty")
      ->check(CLI::IsMember({"error", "empty"}));
  score_cmd->add_option("-o,--output", score.output, "Output file (default stdout)");
  score_cmd->add_option("-j,--jobs", score.jobs, "Scoring threads")->check(CLI::PositiveNumber);
  score_cmd->add_option("--norm-config", score.norm_config,
                        std::string("Normalization key=value file (default: $") +
                            kNormalizationConfigEnv + ")");
  score_cmd->add_flag("--verify", score.verify,
                      "Recompute the corpus block from the utterance records before writing");
  score_cmd->add_flag("-q,--quiet", score.quiet, "No summary on stderr");

  AlignArgs align_args;
  auto *align_cmd = app.add_subcommand("align", "Show the alignment of one utterance");
  align_cmd->add_option("--ref", align_args.ref, "Annotated reference file")->required();
  align_cmd->add_option("--hyp", align_args.hyp, "Hypothesis file")->required();
  align_cmd->add_option("--utterance", align_args.utterance, "Utterance id")->required();
  align_cmd->add_option("--scheme", align_args.scheme, "Alignment weights")
      ->check(CLI::IsMember({"standard", "disfluency"}));
  align_cmd->add_flag("--enumerate", align_args.enumerate,
                      "Count all minimal alignments by exhaustive enumeration (short utterances)");
  align_cmd->add_option("--norm-config", align_args.norm_config, "Normalization key=value file");

  SimulateArgs sim;
  auto *sim_cmd = app.add_subcommand("simulate", "Generate and score a synthetic corpus");
  sim_cmd->set_config("--config", "", "key=value file with any of the options below");
  sim_cmd->add_option("--seed", sim.seed, "Random seed")->required();
  sim_cmd->add_option("--out", sim.out_dir, "Output directory")->required();
  sim_cmd->add_option("--mode", sim.mode, "Simulated system")
      ->check(CLI::IsMember({"e2e", "verbatim"}));
  sim_cmd->add_option("--utterances", sim.spec.utterances, "Corpus size");
  sim_cmd->add_option("--vocab", sim.spec.vocab_size, "Vocabulary size");
  sim_cmd->add_option("--min-len", sim.spec.length.min, "Minimum fluent length");
  sim_cmd->add_option("--max-len", sim.spec.length.max, "Maximum fluent length");
  sim_cmd->add_option("--max-span", sim.spec.disfluency.max_span, "Longest reparandum");
  sim_cmd->add_option("--p-repetition", sim.spec.disfluency.repetition, "Repetition rate");
  sim_cmd->add_option("--p-correction", sim.spec.disfluency.correction, "Correction rate");
  sim_cmd->add_option("--p-restart", sim.spec.disfluency.restart, "Restart rate");
  sim_cmd->add_option("--p-filler", sim.spec.disfluency.filler, "Filler rate");
  sim_cmd->add_option("--p-sub", sim.spec.channel.substitution, "Channel substitution rate");
  sim_cmd->add_option("--p-ins", sim.spec.channel.insertion, "Channel insertion rate");
  sim_cmd->add_option("--p-del", sim.spec.channel.deletion, "Channel deletion rate");
  sim_cmd->add_option("-j,--jobs", sim.jobs, "Scoring threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    // --help and --version exit 0; every usage error maps to the parse code.
    return app.exit(e) == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*score_cmd) return run_score(score);
    if (*align_cmd) return run_align(align_args);
    if (*sim_cmd) return run_simulate(sim);
  } catch (const ParseError &e) {
    std::cerr << "ERROR: " << e.what() << "\n";
    return kExitParse;
  } catch (const ConfigError &e) {
    std::cerr << "ERROR: " << e.what() << "\n";
    return kExitParse;
  } catch (const SynthConfigError &e) {
    std::cerr << "ERROR: " << e.what() << "\n";
    return kExitParse;
  } catch (const PairingError &e) {
    std::cerr << "ERROR: " << e.what() << "\n";
    return kExitPairing;
  } catch (const std::exception &e) {
    std::cerr << "ERROR: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
