// disfleval/ingest.h

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

// Reading annotated references and plain hypotheses.
//
// Every line is "utterance_id<TAB>text". Reference text supports two
// annotation layers:
//
//   suffix tags   i want a flight to/E boston/E uh/I i/I mean/I to denver
//   brackets      i want a flight [ to boston + { uh i mean } to denver ]
//
// /E marks an edited (reparandum) word, /I an interjection and /P a partial
// word. A bracket holds reparandum '+' optional '{ interregnum }' and a
// possibly empty repair. A bracket inside a reparandum is flattened into it.
// Suffix tags are also accepted in bracket lines, except inside a repair.

#ifndef DISFLEVAL_INGEST_H_
#define DISFLEVAL_INGEST_H_

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "disfleval/normalize.h"
#include "disfleval/transcript.h"

namespace disfleval {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column, std::string message);

  const std::string &source() const { return source_; }
  std::size_t line() const { return line_; }
  // 1-based byte column within the line; 0 when unknown.
  std::size_t column() const { return column_; }
  const std::string &message() const { return message_; }

  ParseError located(std::string source, std::size_t line) const;

 private:
  std::string source_;
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

class PairingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Suffix-tag reference line. Bracket characters are treated as plain words.
ReferenceTranscript parse_inline(std::string_view line, const NormalizationConfig &config = {});

/// Bracket reference line; suffix tags are honored too. A line without
/// brackets parses exactly as parse_inline would.
ReferenceTranscript parse_repair_bracket(std::string_view line,
                                         const NormalizationConfig &config = {});

Hypothesis parse_hypothesis(std::string_view line, const NormalizationConfig &config = {});

/// Serialization back to the line formats. Re-parsing the output with default
/// normalization reproduces the transcript (repairs only survive in bracket
/// form).
std::string format_inline(const ReferenceTranscript &ref);
std::string format_bracket(const ReferenceTranscript &ref);
std::string format_hypothesis(const Hypothesis &hyp);

/// Whole files. Blank lines and lines starting with '#' are skipped. Reference
/// lines go through parse_repair_bracket. ParseError carries `source` and the
/// 1-based line number.
std::vector<ReferenceTranscript> read_references(std::istream &in,
                                                 const NormalizationConfig &config,
                                                 const std::string &source = "<ref>");
std::vector<Hypothesis> read_hypotheses(std::istream &in, const NormalizationConfig &config,
                                        const std::string &source = "<hyp>");
std::vector<ReferenceTranscript> read_reference_file(const std::string &path,
                                                     const NormalizationConfig &config);
std::vector<Hypothesis> read_hypothesis_file(const std::string &path,
                                             const NormalizationConfig &config);

struct UtterancePair {
  ReferenceTranscript reference;
  Hypothesis hypothesis;
};

enum class MissingPolicy {
  kError,  // a reference without hypothesis is a pairing error
  kEmpty,  // score it against an empty hypothesis
};

struct PairingResult {
  // In reference file order.
  std::vector<UtterancePair> pairs;
  // References that had no hypothesis (scored as empty under kEmpty).
  std::vector<std::string> missing;
};

/// Matches hypotheses to references by utterance id. Throws PairingError on
/// duplicate ids in either input, on a hypothesis id with no reference, and
/// (under kError) on references without a hypothesis.
PairingResult pair_files(const std::vector<ReferenceTranscript> &refs,
                         const std::vector<Hypothesis> &hyps, MissingPolicy policy);

}  // namespace disfleval

#endif  // DISFLEVAL_INGEST_H_
