// src/ingest.cc

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

#include "disfleval/ingest.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace disfleval {

ParseError::ParseError(std::string source, std::size_t line, std::size_t column,
                       std::string message)
    : std::runtime_error([&] {
        std::string where = source.empty() ? std::string() : source + ":";
        if (line) where += std::to_string(line) + ":";
        if (column) where += std::to_string(column) + ":";
        return (where.empty() ? std::string() : where + " ") + message;
      }()),
      source_(std::move(source)),
      line_(line),
      column_(column),
      message_(std::move(message)) {}

ParseError ParseError::located(std::string source, std::size_t line) const {
  return ParseError(std::move(source), line, column_, message_);
}

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

struct RawWord {
  std::string_view text;
  std::size_t column;  // 1-based, within the full line
};

struct SplitLine {
  std::string id;
  std::vector<RawWord> words;
  std::size_t text_column;
};

[[noreturn]] void fail_at(std::size_t column, const std::string &message) {
  throw ParseError("", 0, column, message);
}

SplitLine split_line(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
  SplitLine out;
  std::size_t text_start;
  const auto tab = line.find('\t');
  if (tab == std::string_view::npos) {
    // A bare id with no text at all is an empty utterance.
    if (std::any_of(line.begin(), line.end(), is_blank))
      fail_at(1, "expected 'utterance_id<TAB>text'");
    out.id = std::string(line);
    text_start = line.size();
  } else {
    out.id = std::string(line.substr(0, tab));
    text_start = tab + 1;
  }
  if (out.id.empty()) fail_at(1, "missing utterance id");
  if (std::any_of(out.id.begin(), out.id.end(), is_blank))
    fail_at(1, "utterance id contains whitespace");
  out.text_column = text_start + 1;

  std::size_t i = text_start;
  while (i < line.size()) {
    while (i < line.size() && is_blank(line[i])) ++i;
    const std::size_t b = i;
    while (i < line.size() && !is_blank(line[i])) ++i;
    if (i > b) out.words.push_back({line.substr(b, i - b), b + 1});
  }
  return out;
}

struct Tagged {
  std::string_view stem;
  std::optional<DisfluencyCategory> tag;
};

Tagged split_tag(const RawWord &w) {
  const auto slash = w.text.rfind('/');
  if (slash == std::string_view::npos) return {w.text, std::nullopt};
  const auto suffix = w.text.substr(slash + 1);
  const auto stem = w.text.substr(0, slash);
  std::optional<DisfluencyCategory> tag;
  if (suffix == "E") tag = DisfluencyCategory::kEdited;
  else if (suffix == "I") tag = DisfluencyCategory::kInterjection;
  else if (suffix == "P") tag = DisfluencyCategory::kPartial;
  if (!tag || stem.empty())
    fail_at(w.column, "malformed annotation suffix in '" + std::string(w.text) +
                          "' (expected /E, /I or /P)");
  return {stem, tag};
}

// Where a word sits relative to bracket structure.
enum class Role { kOutside, kReparandum, kInterregnum, kRepair };

class ReferenceBuilder {
 public:
  explicit ReferenceBuilder(const NormalizationConfig &config) : config_(config) {}

  void add(const RawWord &w, Role role) {
    const Tagged t = split_tag(w);
    if (role == Role::kRepair && t.tag)
      fail_at(w.column, "annotated word '" + std::string(w.text) + "' inside a repair");

    std::optional<DisfluencyCategory> category = t.tag;
    if (!category) {
      if (role == Role::kReparandum) category = DisfluencyCategory::kEdited;
      else if (role == Role::kInterregnum) category = DisfluencyCategory::kInterjection;
      else if (role == Role::kOutside && config_.auto_label && t.stem.back() == '-')
        category = DisfluencyCategory::kPartial;
    }
    if (category == DisfluencyCategory::kPartial && config_.drop_partial_words) return;
    auto surface = normalize_word(t.stem, config_);
    if (!surface) return;

    if (category) {
      tokens_.push_back(AnnotatedToken::disfluent(std::move(*surface), *category));
    } else {
      tokens_.push_back(AnnotatedToken::fluent(std::move(*surface)));
    }
    auto_label_candidate_.push_back(role == Role::kOutside && !t.tag && !category);
  }

  std::size_t size() const { return tokens_.size(); }

  void add_repair(TokenRange reparandum, std::optional<TokenRange> interregnum,
                  TokenRange repair) {
    // Normalization may have emptied the reparandum; the bracket carries no
    // structure then.
    if (reparandum.empty()) return;
    if (interregnum && interregnum->empty()) interregnum.reset();
    const RepairType type = derive_repair_type(tokens_, reparandum, repair);
    repairs_.push_back({reparandum, interregnum, repair, type});
  }

  ReferenceTranscript finish(std::string id, std::size_t text_column) {
    if (config_.auto_label) label_fillers();
    if (tokens_.empty()) fail_at(text_column, "empty utterance");
    return ReferenceTranscript(std::move(id), std::move(tokens_), std::move(repairs_));
  }

 private:
  // Greedy left-to-right, longest entry first at each position.
  void label_fillers() {
    std::vector<std::vector<std::string>> entries;
    for (const auto &e : config_.filler_lexicon) {
      std::istringstream ss(e);
      std::vector<std::string> words;
      std::string w;
      while (ss >> w) words.push_back(w);
      if (!words.empty()) entries.push_back(std::move(words));
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto &a, const auto &b) { return a.size() > b.size(); });

    std::size_t i = 0;
    while (i < tokens_.size()) {
      std::size_t matched = 0;
      for (const auto &entry : entries) {
        if (i + entry.size() > tokens_.size()) continue;
        bool ok = true;
        for (std::size_t k = 0; k < entry.size() && ok; ++k) {
          ok = auto_label_candidate_[i + k] && tokens_[i + k].token.surface() == entry[k];
        }
        if (ok) {
          matched = entry.size();
          break;
        }
      }
      if (matched == 0) {
        ++i;
        continue;
      }
      for (std::size_t k = 0; k < matched; ++k, ++i) {
        tokens_[i].fluency = FluencyClass::kDisfluent;
        tokens_[i].category = DisfluencyCategory::kInterjection;
      }
    }
  }

  const NormalizationConfig &config_;
  std::vector<AnnotatedToken> tokens_;
  std::vector<bool> auto_label_candidate_;
  std::vector<RepairStructure> repairs_;
};

enum class Phase { kReparandum, kAfterPlus, kInterregnum, kRepair };

struct Frame {
  Phase phase = Phase::kReparandum;
  std::size_t open_column = 0;
  std::size_t reparandum_words = 0;  // raw words, before normalization
  std::size_t reparandum_begin = 0;
  std::size_t reparandum_end = 0;
  std::optional<std::size_t> interregnum_begin;
  std::size_t interregnum_end = 0;
};

ReferenceTranscript parse_reference(std::string_view line, const NormalizationConfig &config,
                                    bool brackets) {
  SplitLine split = split_line(line);
  ReferenceBuilder builder(config);
  std::vector<Frame> stack;

  for (const RawWord &w : split.words) {
    const std::string_view s = w.text;
    const bool structural = brackets && (s == "[" || s == "]" || s == "+" || s == "{" || s == "}");
    if (!structural) {
      Role role = Role::kOutside;
      if (stack.size() == 2) {
        role = stack.back().phase == Phase::kInterregnum ? Role::kInterregnum : Role::kReparandum;
        ++stack.front().reparandum_words;
      } else if (stack.size() == 1) {
        Frame &f = stack.back();
        switch (f.phase) {
          case Phase::kReparandum:
            role = Role::kReparandum;
            ++f.reparandum_words;
            break;
          case Phase::kInterregnum: role = Role::kInterregnum; break;
          case Phase::kAfterPlus:
            f.phase = Phase::kRepair;
            role = Role::kRepair;
            break;
          case Phase::kRepair: role = Role::kRepair; break;
        }
      }
      builder.add(w, role);
      continue;
    }

    if (s == "[") {
      if (stack.empty()) {
        Frame f;
        f.open_column = w.column;
        f.reparandum_begin = builder.size();
        stack.push_back(f);
      } else if (stack.size() == 1 && stack.back().phase == Phase::kReparandum) {
        Frame f;
        f.open_column = w.column;
        stack.push_back(f);
      } else if (stack.size() == 2) {
        fail_at(w.column, "brackets nested deeper than one level");
      } else {
        fail_at(w.column, "bracket inside a repair or interregnum is not supported");
      }
    } else if (s == "+") {
      if (stack.empty()) fail_at(w.column, "'+' outside a bracket");
      Frame &f = stack.back();
      if (f.phase != Phase::kReparandum) fail_at(w.column, "unexpected second '+'");
      if (f.reparandum_words == 0 && stack.size() == 1) fail_at(w.column, "empty reparandum");
      f.phase = Phase::kAfterPlus;
      f.reparandum_end = builder.size();
    } else if (s == "{") {
      if (stack.empty()) fail_at(w.column, "'{' outside a bracket");
      Frame &f = stack.back();
      if (f.phase != Phase::kAfterPlus) fail_at(w.column, "'{' must directly follow '+'");
      f.phase = Phase::kInterregnum;
      f.interregnum_begin = builder.size();
    } else if (s == "}") {
      if (stack.empty()) fail_at(w.column, "'}' outside a bracket");
      Frame &f = stack.back();
      if (f.phase != Phase::kInterregnum) fail_at(w.column, "unbalanced '}'");
      f.phase = Phase::kRepair;
      f.interregnum_end = builder.size();
    } else {  // "]"
      if (stack.empty()) fail_at(w.column, "unbalanced ']'");
      const Frame f = stack.back();
      if (f.phase == Phase::kReparandum) fail_at(w.column, "bracket is missing '+'");
      if (f.phase == Phase::kInterregnum) fail_at(w.column, "unclosed '{' before ']'");
      stack.pop_back();
      if (stack.empty()) {
        std::optional<TokenRange> interregnum;
        std::size_t repair_begin = f.reparandum_end;
        if (f.interregnum_begin) {
          interregnum = TokenRange{*f.interregnum_begin, f.interregnum_end};
          repair_begin = f.interregnum_end;
        }
        builder.add_repair({f.reparandum_begin, f.reparandum_end}, interregnum,
                           {repair_begin, builder.size()});
      }
    }
  }
  if (!stack.empty()) fail_at(stack.back().open_column, "unbalanced '['");
  return builder.finish(std::move(split.id), split.text_column);
}

char tag_letter(DisfluencyCategory c) {
  switch (c) {
    case DisfluencyCategory::kEdited: return 'E';
    case DisfluencyCategory::kInterjection: return 'I';
    case DisfluencyCategory::kPartial: return 'P';
  }
  return '?';
}

void append_word(std::string &out, std::string_view word) {
  if (!out.empty() && out.back() != '\t') out += ' ';
  out += word;
}

void append_token(std::string &out, const AnnotatedToken &t,
                  std::optional<DisfluencyCategory> implied) {
  append_word(out, t.token.surface());
  if (t.category && t.category != implied) {
    out += '/';
    out += tag_letter(*t.category);
  }
}

}  // namespace

ReferenceTranscript parse_inline(std::string_view line, const NormalizationConfig &config) {
  return parse_reference(line, config, false);
}

ReferenceTranscript parse_repair_bracket(std::string_view line,
                                         const NormalizationConfig &config) {
  return parse_reference(line, config, true);
}

Hypothesis parse_hypothesis(std::string_view line, const NormalizationConfig &config) {
  SplitLine split = split_line(line);
  Hypothesis hyp{std::move(split.id), {}};
  for (const RawWord &w : split.words) {
    if (config.drop_partial_words && w.text.back() == '-') continue;
    if (auto s = normalize_word(w.text, config)) hyp.tokens.emplace_back(std::move(*s));
  }
  return hyp;
}

std::string format_inline(const ReferenceTranscript &ref) {
  std::string out = ref.utterance_id() + '\t';
  for (const auto &t : ref.tokens()) append_token(out, t, std::nullopt);
  return out;
}

std::string format_bracket(const ReferenceTranscript &ref) {
  std::string out = ref.utterance_id() + '\t';
  const auto &tokens = ref.tokens();
  std::size_t i = 0;
  for (const auto &r : ref.repairs()) {
    for (; i < r.reparandum.begin; ++i) append_token(out, tokens[i], std::nullopt);
    append_word(out, "[");
    for (; i < r.reparandum.end; ++i) append_token(out, tokens[i], DisfluencyCategory::kEdited);
    append_word(out, "+");
    if (r.interregnum) {
      append_word(out, "{");
      for (; i < r.interregnum->end; ++i)
        append_token(out, tokens[i], DisfluencyCategory::kInterjection);
      append_word(out, "}");
    }
    for (; i < r.repair.end; ++i) append_token(out, tokens[i], std::nullopt);
    append_word(out, "]");
  }
  for (; i < tokens.size(); ++i) append_token(out, tokens[i], std::nullopt);
  return out;
}

std::string format_hypothesis(const Hypothesis &hyp) {
  std::string out = hyp.utterance_id + '\t';
  for (const auto &t : hyp.tokens) append_word(out, t.surface());
  return out;
}

namespace {

bool skip_line(const std::string &line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

template <typename T, typename Parse>
std::vector<T> read_lines(std::istream &in, const std::string &source, Parse parse) {
  std::vector<T> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    try {
      out.push_back(parse(line));
    } catch (const ParseError &e) {
      throw e.located(source, line_no);
    } catch (const std::invalid_argument &e) {
      throw ParseError(source, line_no, 0, e.what());
    }
  }
  return out;
}

std::ifstream open_or_throw(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, 0, "cannot open file");
  return in;
}

}  // namespace

std::vector<ReferenceTranscript> read_references(std::istream &in,
                                                 const NormalizationConfig &config,
                                                 const std::string &source) {
  return read_lines<ReferenceTranscript>(
      in, source, [&](const std::string &l) { return parse_repair_bracket(l, config); });
}

std::vector<Hypothesis> read_hypotheses(std::istream &in, const NormalizationConfig &config,
                                        const std::string &source) {
  return read_lines<Hypothesis>(
      in, source, [&](const std::string &l) { return parse_hypothesis(l, config); });
}

std::vector<ReferenceTranscript> read_reference_file(const std::string &path,
                                                     const NormalizationConfig &config) {
  auto in = open_or_throw(path);
  return read_references(in, config, path);
}

std::vector<Hypothesis> read_hypothesis_file(const std::string &path,
                                             const NormalizationConfig &config) {
  auto in = open_or_throw(path);
  return read_hypotheses(in, config, path);
}

PairingResult pair_files(const std::vector<ReferenceTranscript> &refs,
                         const std::vector<Hypothesis> &hyps, MissingPolicy policy) {
  std::set<std::string> ref_ids;
  for (const auto &r : refs) {
    if (!ref_ids.insert(r.utterance_id()).second)
      throw PairingError("duplicate utterance id in reference: " + r.utterance_id());
  }
  std::map<std::string, const Hypothesis *> by_id;
  for (const auto &h : hyps) {
    if (!by_id.emplace(h.utterance_id, &h).second)
      throw PairingError("duplicate utterance id in hypothesis: " + h.utterance_id);
    if (!ref_ids.count(h.utterance_id))
      throw PairingError("hypothesis id has no reference: " + h.utterance_id);
  }

  PairingResult result;
  for (const auto &r : refs) {
    auto it = by_id.find(r.utterance_id());
    if (it == by_id.end()) {
      result.missing.push_back(r.utterance_id());
      if (policy == MissingPolicy::kEmpty)
        result.pairs.push_back({r, Hypothesis{r.utterance_id(), {}}});
      continue;
    }
    result.pairs.push_back({r, *it->second});
  }
  if (policy == MissingPolicy::kError && !result.missing.empty()) {
    std::string msg = "no hypothesis for " + std::to_string(result.missing.size()) +
                      " reference utterance(s):";
    for (const auto &id : result.missing) msg += " " + id;
    throw PairingError(msg);
  }
  return result;
}

}  // namespace disfleval
