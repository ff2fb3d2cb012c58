// disfleval/synth.h

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

// Seeded synthetic corpora: disfluent references and simulated system output.
// Only std::mt19937_64 (whose output sequence is fixed by the standard) is
// used for randomness, and all distributions are computed here, so a seed
// produces the same corpus with any standard library.

#ifndef DISFLEVAL_SYNTH_H_
#define DISFLEVAL_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "disfleval/ingest.h"
#include "disfleval/transcript.h"

namespace disfleval {

class SynthConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Probability, at each position of the fluent backbone, of starting a
/// structure there. At most one is drawn per position.
struct DisfluencyRates {
  double repetition = 0;
  double correction = 0;
  double restart = 0;
  // A standalone filler before the word, and separately the chance that a
  // repair structure gets an interregnum.
  double filler = 0;
  std::size_t max_span = 1;

  void validate() const;
};

struct ChannelRates {
  double substitution = 0;
  double insertion = 0;
  double deletion = 0;

  void validate() const;
};

struct LengthRange {
  std::size_t min = 1;
  std::size_t max = 1;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [0, 1) with 53 random bits.
  double unit();
  bool bernoulli(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Stream-separated seed for the index-th item of a corpus.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Synthetic word k of the backbone vocabulary ("w0", "w1", ...).
Token vocabulary_word(std::size_t k);

/// A fluent backbone of random words with injected repetitions, corrections,
/// restarts and fillers. Throws SynthConfigError for infeasible settings.
ReferenceTranscript gen_reference(std::string utterance_id, std::uint64_t seed,
                                  std::size_t vocab_size, LengthRange length,
                                  const DisfluencyRates &rates);

/// Independent per-token deletion, substitution (by a different vocabulary
/// word) or copy; after each position a random vocabulary word is inserted
/// with probability rates.insertion.
std::vector<Token> channel(const std::vector<Token> &tokens, const ChannelRates &rates,
                           std::uint64_t seed, std::size_t vocab_size);

enum class SystemMode {
  kE2EPerfect,  // emits the fluent subsequence
  kVerbatim,    // emits every reference word
};

SystemMode system_mode_by_name(std::string_view name);
std::string_view to_string(SystemMode mode);

Hypothesis simulate_system(const ReferenceTranscript &ref, SystemMode mode,
                           const ChannelRates &rates, std::uint64_t seed,
                           std::size_t vocab_size);

struct CorpusSpec {
  std::size_t utterances = 100;
  std::size_t vocab_size = 1000;
  LengthRange length{5, 20};
  DisfluencyRates disfluency;
  ChannelRates channel;
  SystemMode mode = SystemMode::kE2EPerfect;
};

struct SyntheticCorpus {
  std::vector<ReferenceTranscript> references;
  std::vector<Hypothesis> hypotheses;
};

/// Utterance k uses seeds derived from (seed, k), so any prefix of a corpus is
/// independent of how many utterances follow it.
SyntheticCorpus generate_corpus(const CorpusSpec &spec, std::uint64_t seed);

}  // namespace disfleval

#endif  // DISFLEVAL_SYNTH_H_
