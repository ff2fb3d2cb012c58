// src/synth.cc

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

#include "disfleval/synth.h"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>

#include "disfleval/normalize.h"

namespace disfleval {

namespace {

void check_probability(double p, const char *name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw SynthConfigError(std::string(name) + " must be a probability in [0, 1], got " +
                           std::to_string(p));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::optional<std::size_t> vocabulary_index(const Token &t) {
  const std::string &s = t.surface();
  if (s.size() < 2 || s[0] != 'w') return std::nullopt;
  std::size_t k = 0;
  auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), k);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  if (s.size() > 2 && s[1] == '0') return std::nullopt;
  return k;
}

std::vector<std::vector<std::string>> filler_entries() {
  std::vector<std::vector<std::string>> out;
  for (const auto &e : NormalizationConfig::default_fillers()) {
    std::istringstream ss(e);
    std::vector<std::string> words;
    std::string w;
    while (ss >> w) words.push_back(w);
    out.push_back(std::move(words));
  }
  return out;
}

}  // namespace

void DisfluencyRates::validate() const {
  check_probability(repetition, "repetition rate");
  check_probability(correction, "correction rate");
  check_probability(restart, "restart rate");
  check_probability(filler, "filler rate");
  if (repetition + correction + restart + filler > 1.0 + 1e-12)
    throw SynthConfigError("disfluency rates must sum to at most 1");
  if (max_span < 1) throw SynthConfigError("max_span must be at least 1");
}

void ChannelRates::validate() const {
  check_probability(substitution, "substitution rate");
  check_probability(insertion, "insertion rate");
  check_probability(deletion, "deletion rate");
  if (substitution + deletion > 1.0 + 1e-12)
    throw SynthConfigError("substitution + deletion rates must not exceed 1");
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Reject the 2^64 mod n smallest outputs so the remainder is unbiased.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = engine_();
    if (x >= threshold) return x % n;
  }
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ splitmix64(stream)) + index);
}

Token vocabulary_word(std::size_t k) { return Token("w" + std::to_string(k)); }

ReferenceTranscript gen_reference(std::string utterance_id, std::uint64_t seed,
                                  std::size_t vocab_size, LengthRange length,
                                  const DisfluencyRates &rates) {
  rates.validate();
  if (vocab_size < 2) throw SynthConfigError("vocabulary needs at least 2 words");
  if (length.min < 1 || length.min > length.max)
    throw SynthConfigError("length range must satisfy 1 <= min <= max");

  static const auto fillers = filler_entries();
  Rng rng(seed);
  const std::size_t n = length.min + rng.below(length.max - length.min + 1);
  std::vector<std::size_t> backbone(n);
  for (auto &w : backbone) w = rng.below(vocab_size);

  std::vector<AnnotatedToken> tokens;
  std::vector<RepairStructure> repairs;
  auto emit_fluent = [&](std::size_t w) {
    tokens.push_back({vocabulary_word(w), FluencyClass::kFluent, std::nullopt});
  };
  auto emit_disfluent = [&](std::string surface, DisfluencyCategory c) {
    tokens.push_back(AnnotatedToken::disfluent(std::move(surface), c));
  };
  auto emit_filler = [&] {
    for (const auto &w : fillers[rng.below(fillers.size())])
      emit_disfluent(w, DisfluencyCategory::kInterjection);
  };
  // Emits the optional interregnum after a reparandum ending at the current
  // position and returns its range.
  auto maybe_interregnum = [&]() -> std::optional<TokenRange> {
    if (!rng.bernoulli(rates.filler)) return std::nullopt;
    const std::size_t begin = tokens.size();
    emit_filler();
    return TokenRange{begin, tokens.size()};
  };

  const double cut_rep = rates.repetition;
  const double cut_cor = cut_rep + rates.correction;
  const double cut_res = cut_cor + rates.restart;
  const double cut_fill = cut_res + rates.filler;

  std::size_t p = 0;
  while (p < n) {
    const double u = rng.unit();
    if (u < cut_cor) {
      const bool repetition = u < cut_rep;
      const std::size_t span = 1 + rng.below(std::min(rates.max_span, n - p));
      std::vector<std::size_t> reparandum(backbone.begin() + p, backbone.begin() + p + span);
      if (!repetition) {
        auto &w = reparandum[rng.below(span)];
        w = (w + 1 + rng.below(vocab_size - 1)) % vocab_size;
      }
      RepairStructure r;
      r.reparandum.begin = tokens.size();
      for (auto w : reparandum)
        emit_disfluent(vocabulary_word(w).surface(), DisfluencyCategory::kEdited);
      r.reparandum.end = tokens.size();
      r.interregnum = maybe_interregnum();
      r.repair.begin = tokens.size();
      for (std::size_t k = 0; k < span; ++k) emit_fluent(backbone[p + k]);
      r.repair.end = tokens.size();
      r.type = repetition ? RepairType::kRepetition : RepairType::kCorrection;
      repairs.push_back(r);
      p += span;
    } else if (u < cut_res) {
      const std::size_t span = 1 + rng.below(rates.max_span);
      RepairStructure r;
      r.reparandum.begin = tokens.size();
      for (std::size_t k = 0; k < span; ++k)
        emit_disfluent(vocabulary_word(rng.below(vocab_size)).surface(),
                       DisfluencyCategory::kEdited);
      r.reparandum.end = tokens.size();
      r.interregnum = maybe_interregnum();
      r.repair = {tokens.size(), tokens.size()};
      r.type = RepairType::kRestart;
      repairs.push_back(r);
      emit_fluent(backbone[p++]);
    } else {
      if (u < cut_fill) emit_filler();
      emit_fluent(backbone[p++]);
    }
  }
  return ReferenceTranscript(std::move(utterance_id), std::move(tokens), std::move(repairs));
}

std::vector<Token> channel(const std::vector<Token> &tokens, const ChannelRates &rates,
                           std::uint64_t seed, std::size_t vocab_size) {
  rates.validate();
  if (vocab_size < 2) throw SynthConfigError("vocabulary needs at least 2 words");
  Rng rng(seed);
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (const auto &t : tokens) {
    const double u = rng.unit();
    if (u < rates.deletion) {
      // dropped
    } else if (u < rates.deletion + rates.substitution) {
      const auto own = vocabulary_index(t);
      if (own && *own < vocab_size) {
        out.push_back(vocabulary_word((*own + 1 + rng.below(vocab_size - 1)) % vocab_size));
      } else {
        out.push_back(vocabulary_word(rng.below(vocab_size)));
      }
    } else {
      out.push_back(t);
    }
    if (rng.bernoulli(rates.insertion)) out.push_back(vocabulary_word(rng.below(vocab_size)));
  }
  return out;
}

SystemMode system_mode_by_name(std::string_view name) {
  if (name == "e2e" || name == "e2e_perfect") return SystemMode::kE2EPerfect;
  if (name == "verbatim") return SystemMode::kVerbatim;
  throw SynthConfigError("unknown system mode '" + std::string(name) +
                         "' (expected e2e or verbatim)");
}

std::string_view to_string(SystemMode mode) {
  return mode == SystemMode::kE2EPerfect ? "e2e" : "verbatim";
}

Hypothesis simulate_system(const ReferenceTranscript &ref, SystemMode mode,
                           const ChannelRates &rates, std::uint64_t seed,
                           std::size_t vocab_size) {
  std::vector<Token> clean;
  if (mode == SystemMode::kE2EPerfect) {
    clean = fluent_subsequence(ref);
  } else {
    for (const auto &t : ref.tokens()) clean.push_back(t.token);
  }
  return Hypothesis{ref.utterance_id(), channel(clean, rates, seed, vocab_size)};
}

SyntheticCorpus generate_corpus(const CorpusSpec &spec, std::uint64_t seed) {
  SyntheticCorpus out;
  out.references.reserve(spec.utterances);
  out.hypotheses.reserve(spec.utterances);
  const std::size_t width = std::max<std::size_t>(6, std::to_string(spec.utterances).size());
  for (std::size_t k = 0; k < spec.utterances; ++k) {
    std::string id = std::to_string(k);
    id = "utt" + std::string(width - id.size(), '0') + id;
    out.references.push_back(gen_reference(std::move(id), derive_seed(seed, 0, k),
                                            spec.vocab_size, spec.length, spec.disfluency));
    out.hypotheses.push_back(simulate_system(out.references.back(), spec.mode, spec.channel,
                                             derive_seed(seed, 1, k), spec.vocab_size));
  }
  return out;
}

}  // namespace disfleval
