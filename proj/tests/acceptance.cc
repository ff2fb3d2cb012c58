// tests/acceptance.cc

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

// Acceptance suite: one [PASS]/[FAIL] line per criterion, exit status 1 if
// any criterion fails. Detail lines start with four spaces.

#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "disfleval/aligner.h"
#include "disfleval/ingest.h"
#include "disfleval/metrics.h"
#include "disfleval/report.h"
#include "disfleval/synth.h"
#include "test_util.h"

namespace disfleval {
namespace {

int failures = 0;

void verdict(bool ok, int number, const std::string &title, const std::string &detail) {
  if (!ok) ++failures;
  std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", number, title.c_str(), detail.c_str());
  std::fflush(stdout);
}

void detail(const std::string &line) { std::printf("    %s\n", line.c_str()); }

std::string fmt(double v, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string ratio_str(const Ratio &r) {
  return std::to_string(r.numerator) + "/" + std::to_string(r.denominator) + " = " +
         (r.value() ? fmt(*r.value(), 4) : "undefined");
}

// ---------------------------------------------------------------------------

void worked_example() {
  CountBundle b;
  b.fluent = {3, 2, 0, 1, 6};     // c, s, i, d, n
  b.disfluent = {2, 0, 0, 3, 5};
  const Ratio f = fer(b), d = der(b);
  const bool ok = f == Ratio{3, 6} && d == Ratio{2, 5} && f.value() == 0.5 && d.value() == 0.4;
  verdict(ok, 1, "worked example", "FER " + ratio_str(f) + ", DER " + ratio_str(d));
}

void weight_tables() {
  const auto s = WeightScheme::standard();
  const auto a = WeightScheme::disfluency_aware();
  const auto F = FluencyClass::kFluent, D = FluencyClass::kDisfluent;
  bool ok = true;
  std::string table;
  const EditOp ops[] = {EditOp::kCopy, EditOp::kInsert, EditOp::kDelete, EditOp::kSubstitute};
  const std::int64_t base[] = {0, 3, 3, 4};
  const std::int64_t eps[] = {+1, +1, -1, +1};
  for (int k = 0; k < 4; ++k) {
    for (auto c : {F, D}) ok = ok && s.cost(ops[k], c) == LexCost{base[k], 0};
    ok = ok && a.cost(ops[k], F) == LexCost{base[k], 0};
    ok = ok && a.cost(ops[k], D) == LexCost{base[k], eps[k]};
    table += std::string(1, op_letter(ops[k])) + "=" + std::to_string(a.cost(ops[k], D).base) +
             (a.cost(ops[k], D).eps > 0 ? "+e " : "-e ");
  }
  verdict(ok, 2, "weight tables", "standard 0/3/3/4; disfluent " + table);
}

std::vector<testing::RandomPair> random_pairs() {
  Rng rng(20240611);
  std::vector<testing::RandomPair> out;
  for (int k = 0; k < 1000; ++k) out.push_back(testing::random_pair(rng, 8, 4));
  return out;
}

void oracle_equivalence(const std::vector<testing::RandomPair> &pairs) {
  const auto start = std::chrono::steady_clock::now();
  int mismatches = 0;
  for (const auto &p : pairs) {
    for (const auto &scheme : {WeightScheme::standard(), WeightScheme::disfluency_aware()}) {
      const auto dp = align(p.ref, p.hyp, scheme);
      const auto all = oracle_align_all(p.ref, p.hyp, scheme);
      if (all.empty() || dp.cost != all.front().cost || !check_alignment(dp, p.ref, p.hyp).empty()) {
        if (++mismatches <= 5) detail(std::string(scheme.name()) + " " + testing::describe(p));
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  verdict(mismatches == 0 && secs < 60, 3, "oracle equivalence",
          std::to_string(2 * pairs.size() - mismatches) + "/" + std::to_string(2 * pairs.size()) +
              " DP costs equal the enumerated minimum (" + fmt(secs, 1) + " s)");
}

void ambiguity_invariance(const std::vector<testing::RandomPair> &pairs) {
  const auto scheme = WeightScheme::disfluency_aware();
  int counterexamples = 0, ambiguous = 0;
  for (const auto &p : pairs) {
    const auto all = oracle_align_all(p.ref, p.hyp, scheme);
    if (all.size() > 1) ++ambiguous;
    const auto first = counts_from_alignment(all.front(), p.ref);
    for (const auto &a : all) {
      const auto c = counts_from_alignment(a, p.ref);
      if (fer(c) != fer(first) || der(c) != der(first)) {
        ++counterexamples;
        detail("counterexample " + testing::describe(p) + ": " + testing::ops_of(all.front()) +
               " (FER " + ratio_str(fer(first)) + ", DER " + ratio_str(der(first)) + ") vs " +
               testing::ops_of(a) + " (FER " + ratio_str(fer(c)) + ", DER " + ratio_str(der(c)) +
               ")");
        break;
      }
    }
  }
  verdict(counterexamples == 0, 4, "ambiguity invariance",
          std::to_string(counterexamples) + " counterexamples over " +
              std::to_string(pairs.size()) + " pairs (" + std::to_string(ambiguous) +
              " with several minimal alignments)");
}

// Disfluent reference indices that an alignment deletes.
std::set<std::size_t> deleted_disfluent(const Alignment &a, const ReferenceTranscript &ref) {
  std::set<std::size_t> out;
  for (const auto &s : a.steps)
    if (s.op == EditOp::kDelete && ref.tokens()[*s.ref_index].is_disfluent())
      out.insert(*s.ref_index);
  return out;
}

// Repetitions with optional filler and context: the standard scheme can
// delete either copy, the disfluency-aware one must delete the marked copy.
void discrimination() {
  static const char *kSymbols[] = {"a", "b", "c", "d", "e", "f"};
  Rng rng(5);
  const auto standard = WeightScheme::standard();
  const auto aware = WeightScheme::disfluency_aware();
  int passed = 0, total = 0;
  while (total < 50) {
    const std::size_t span = 1 + rng.below(3);
    const std::size_t pre = rng.below(3), post = rng.below(3);
    const bool filler = rng.below(2);
    std::vector<std::string> rep, before, after;
    for (std::size_t k = 0; k < span; ++k) rep.push_back(kSymbols[rng.below(6)]);
    for (std::size_t k = 0; k < pre; ++k) before.push_back(kSymbols[rng.below(6)]);
    for (std::size_t k = 0; k < post; ++k) after.push_back(kSymbols[rng.below(6)]);
    std::string ref_text, hyp_text;
    auto add = [](std::string &s, const std::string &w) { s += (s.empty() ? "" : " ") + w; };
    for (const auto &w : before) add(ref_text, w), add(hyp_text, w);
    for (const auto &w : rep) add(ref_text, w + "/E");
    if (filler) add(ref_text, "uh/I");
    for (const auto &w : rep) add(ref_text, w), add(hyp_text, w);
    for (const auto &w : after) add(ref_text, w), add(hyp_text, w);
    const auto ref = testing::ref_of(ref_text);
    const auto hyp = testing::words(hyp_text);
    if (ref.size() > kOracleMaxLength) continue;
    ++total;

    const auto std_all = oracle_align_all(ref, hyp, standard);
    std::set<std::set<std::size_t>> treatments;
    for (const auto &a : std_all) treatments.insert(deleted_disfluent(a, ref));
    const bool premise = std_all.size() >= 2 && treatments.size() >= 2;

    const auto aware_all = oracle_align_all(ref, hyp, aware);
    bool ok = premise && aware_all.size() == 1 && align(ref, hyp, aware) == aware_all.front() &&
              deleted_disfluent(aware_all.front(), ref).size() == ref.disfluent_count();
    if (ok) {
      ++passed;
    } else {
      detail("ref=\"" + ref_text + "\" hyp=\"" + hyp_text + "\": standard minima " +
             std::to_string(std_all.size()) + ", aware minima " +
             std::to_string(aware_all.size()));
    }
  }

  // The pair quoted as the canonical example has a single standard minimum;
  // listed for reference, not counted.
  const auto single = oracle_align_all(testing::ref_of("a/E b"), testing::words("b"), standard);
  detail("note: \"a/E b\" / \"b\" has " + std::to_string(single.size()) +
         " standard minimum (" + testing::ops_of(single.front()) +
         "); the suite uses repetition pairs instead");
  verdict(passed == total, 5, "align discrimination",
          std::to_string(passed) + "/" + std::to_string(total) +
              " constructed instances have >= 2 standard minima and a unique "
              "disfluency-aware minimum deleting the disfluent tokens");
}

CorpusScore score_corpus(const CorpusSpec &spec, std::uint64_t seed) {
  const auto corpus = generate_corpus(spec, seed);
  const auto paired = pair_files(corpus.references, corpus.hypotheses, MissingPolicy::kError);
  return build_report(paired, {}, 4).corpus;
}

CorpusSpec acceptance_spec(SystemMode mode, ChannelRates rates) {
  CorpusSpec spec;
  spec.utterances = 10000;
  spec.vocab_size = 1000;
  spec.length = {5, 20};
  spec.disfluency = {0.05, 0.04, 0.02, 0.05, 3};
  spec.channel = rates;
  spec.mode = mode;
  return spec;
}

void end_to_end() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  auto require = [&](bool cond, const std::string &what) {
    detail(std::string(cond ? "ok   " : "FAIL ") + what);
    ok = ok && cond;
  };

  const auto e2e = score_corpus(acceptance_spec(SystemMode::kE2EPerfect, {}), 1);
  require(e2e.fer().numerator == 0 && e2e.der().numerator == 0 && e2e.wer.errors() == 0,
          "zero-noise e2e: FER " + ratio_str(e2e.fer()) + ", DER " + ratio_str(e2e.der()) +
              ", WER_fluent " + fmt(e2e.wer.value().value_or(-1), 3));
  const auto verb = score_corpus(acceptance_spec(SystemMode::kVerbatim, {}), 1);
  require(verb.der().numerator == verb.der().denominator && verb.fer().numerator == 0,
          "zero-noise verbatim: FER " + ratio_str(verb.fer()) + ", DER " + ratio_str(verb.der()));

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const ChannelRates noise{0.05, 0, 0};
    const auto v = score_corpus(acceptance_spec(SystemMode::kVerbatim, noise), seed);
    const auto e = score_corpus(acceptance_spec(SystemMode::kE2EPerfect, noise), seed);
    const double f = *e.fer().value();
    require(*v.der().value() > 0.9 && e.der().numerator == 0 && f >= 0.04 && f <= 0.06,
            "p_sub=0.05 seed " + std::to_string(seed) + ": verbatim DER " +
                fmt(*v.der().value()) + ", e2e DER " + ratio_str(e.der()) + ", e2e FER " +
                fmt(f));
  }
  // Diagnostic only: e2e DER hits come from substitutions that happen to
  // equal a nearby disfluent word, so they shrink with the vocabulary.
  {
    auto spec = acceptance_spec(SystemMode::kE2EPerfect, {0.05, 0, 0});
    spec.vocab_size = 30000;
    detail("diagnostic (not scored): seed 1 with a 30000-word vocabulary, e2e DER " +
           ratio_str(score_corpus(spec, 1).der()));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(secs < 120, "runtime " + fmt(secs, 1) + " s");
  verdict(ok, 6, "end-to-end sanity", "10000-utterance synthetic corpora, 5 noise seeds");
}

void typology() {
  const DisfluencyRates rates{0.1, 0.1, 0.1, 0.1, 3};
  std::size_t structures = 0, matched = 0, bucket_mismatches = 0;
  std::map<RepairType, std::size_t> by_type;
  Ratio type_sum, edited;
  for (std::uint64_t k = 0; structures < 500; ++k) {
    const std::string id = "t" + std::to_string(k);
    ReferenceTranscript ref("x", {});
    try {
      ref = gen_reference(id, derive_seed(7, 0, k), 20, {3, 15}, rates);
    } catch (const std::invalid_argument &e) {
      // A generated label that disagrees with its surfaces is rejected here.
      ++structures;
      detail(id + ": " + e.what());
      continue;
    }
    // The bracket parser re-derives every type from the surfaces alone.
    const auto reparsed = parse_repair_bracket(format_bracket(ref));
    const std::size_t n = std::min(ref.repairs().size(), 500 - structures);
    for (std::size_t r = 0; r < n; ++r) {
      const bool same = r < reparsed.repairs().size() &&
                        reparsed.repairs()[r].type == ref.repairs()[r].type &&
                        reparsed.repairs()[r].reparandum == ref.repairs()[r].reparandum;
      if (same) ++matched;
      else detail(id + " structure " + std::to_string(r) + " differs after re-parsing");
      ++by_type[ref.repairs()[r].type];
    }
    structures += n;

    const auto hyp = channel(testing::surfaces(ref), {0.1, 0.05, 0.1}, derive_seed(7, 1, k), 20);
    const auto a = align(ref, hyp, WeightScheme::disfluency_aware());
    Ratio utt_types;
    for (const auto &[t, r] : der_by_type(a, ref)) utt_types += r;
    const auto cats = der_by_category(a, ref);
    const auto it = cats.find(DisfluencyCategory::kEdited);
    const Ratio utt_edited = it == cats.end() ? Ratio{} : it->second;
    if (!(utt_types == utt_edited)) ++bucket_mismatches;
    type_sum += utt_types;
    edited += utt_edited;
  }
  detail("REPETITION " + std::to_string(by_type[RepairType::kRepetition]) + ", CORRECTION " +
         std::to_string(by_type[RepairType::kCorrection]) + ", RESTART " +
         std::to_string(by_type[RepairType::kRestart]));
  detail("sum of per-type buckets " + ratio_str(type_sum) + ", EDITED category " +
         ratio_str(edited));
  verdict(matched == structures && bucket_mismatches == 0 && type_sum == edited, 7,
          "typology classification",
          std::to_string(matched) + "/" + std::to_string(structures) +
              " repair types match the generator; " + std::to_string(bucket_mismatches) +
              " utterances with per-type sums != EDITED DER");
}

void determinism() {
  CorpusSpec spec;
  spec.utterances = 2000;
  spec.disfluency = {0.1, 0.1, 0.05, 0.1, 3};
  spec.channel = {0.1, 0.05, 0.05};
  spec.mode = SystemMode::kVerbatim;
  auto render = [&](std::size_t jobs) {
    const auto corpus = generate_corpus(spec, 42);
    const auto paired = pair_files(corpus.references, corpus.hypotheses, MissingPolicy::kError);
    return to_json(build_report(paired, {}, jobs)).dump(2);
  };
  const std::string first = render(1);
  bool ok = render(1) == first;
  std::string tried = "jobs 1 (twice)";
  for (std::size_t jobs : {2u, 4u, 8u, 16u}) {
    ok = ok && render(jobs) == first;
    tried += ", " + std::to_string(jobs);
  }
  verdict(ok, 8, "determinism",
          "byte-identical JSON (" + std::to_string(first.size()) + " bytes) for " + tried);
}

}  // namespace
}  // namespace disfleval

int main() {
  using namespace disfleval;
  worked_example();
  weight_tables();
  const auto pairs = random_pairs();
  oracle_equivalence(pairs);
  ambiguity_invariance(pairs);
  discrimination();
  end_to_end();
  typology();
  determinism();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
