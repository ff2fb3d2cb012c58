// src/normalize.cc

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

#include "disfleval/normalize.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace disfleval {

namespace {

bool is_ascii_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 128 && ((u >= 33 && u <= 47) || (u >= 58 && u <= 64) || (u >= 91 && u <= 96) ||
                     (u >= 123 && u <= 126));
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

bool parse_flag(const std::string &key, const std::string &value, int line) {
  if (value == "true" || value == "1" || value == "on" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "off" || value == "no") return false;
  throw ConfigError("config line " + std::to_string(line) + ": bad boolean for '" + key +
                    "': '" + value + "'");
}

}  // namespace

std::vector<std::string> NormalizationConfig::default_fillers() {
  return {"uh", "um", "hm", "you know", "i mean", "well", "like"};
}

std::optional<std::string> normalize_word(std::string_view raw,
                                          const NormalizationConfig &config) {
  std::string_view s = raw;
  if (config.strip_punctuation) {
    while (!s.empty() && is_ascii_punct(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_ascii_punct(s.back())) s.remove_suffix(1);
  }
  if (s.empty()) return std::nullopt;
  std::string out(s);
  if (config.lowercase) {
    for (auto &c : out) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
  }
  return out;
}

NormalizationConfig parse_normalization_config(std::istream &in, NormalizationConfig base) {
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "lowercase") {
      base.lowercase = parse_flag(key, value, line_no);
    } else if (key == "strip_punctuation") {
      base.strip_punctuation = parse_flag(key, value, line_no);
    } else if (key == "drop_partial_words") {
      base.drop_partial_words = parse_flag(key, value, line_no);
    } else if (key == "auto_label") {
      base.auto_label = parse_flag(key, value, line_no);
    } else if (key == "fillers") {
      base.filler_lexicon.clear();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        // Entries are stored in normalized form, one space between words.
        std::stringstream words(item);
        std::string w, joined;
        while (words >> w) {
          auto n = normalize_word(w, base);
          if (!n) continue;
          if (!joined.empty()) joined += ' ';
          joined += *n;
        }
        if (!joined.empty()) base.filler_lexicon.push_back(joined);
      }
    } else {
      throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return base;
}

NormalizationConfig load_normalization_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open normalization config '" + path + "'");
  return parse_normalization_config(in);
}

NormalizationConfig default_normalization_config() {
  const char *path = std::getenv(kNormalizationConfigEnv);
  if (path == nullptr || *path == '\0') return {};
  return load_normalization_config(path);
}

std::string format_normalization_config(const NormalizationConfig &config) {
  auto flag = [](bool b) { return b ? "true" : "false"; };
  std::ostringstream out;
  out << "lowercase=" << flag(config.lowercase) << '\n'
      << "strip_punctuation=" << flag(config.strip_punctuation) << '\n'
      << "drop_partial_words=" << flag(config.drop_partial_words) << '\n'
      << "auto_label=" << flag(config.auto_label) << '\n'
      << "fillers=";
  for (std::size_t i = 0; i < config.filler_lexicon.size(); ++i) {
    if (i) out << ',';
    out << config.filler_lexicon[i];
  }
  out << '\n';
  return out.str();
}

}  // namespace disfleval
