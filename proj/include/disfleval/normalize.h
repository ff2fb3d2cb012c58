// disfleval/normalize.h

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

#ifndef DISFLEVAL_NORMALIZE_H_
#define DISFLEVAL_NORMALIZE_H_

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace disfleval {

/// Environment variable naming a default normalization config file.
inline constexpr const char *kNormalizationConfigEnv = "DISFLEVAL_NORMALIZATION";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NormalizationConfig {
  bool lowercase = true;
  bool strip_punctuation = true;
  // Partial words (tagged /P, or ending in '-' in hypotheses) are removed.
  bool drop_partial_words = false;
  // Label untagged filler-lexicon matches as interjections and untagged
  // words ending in '-' as partials. Gold annotations always win.
  bool auto_label = false;
  // Normalized entries; multiword fillers are space separated.
  std::vector<std::string> filler_lexicon = default_fillers();

  static std::vector<std::string> default_fillers();

  friend bool operator==(const NormalizationConfig &, const NormalizationConfig &) = default;
};

/// Applies case folding and punctuation stripping to one raw word. Returns
/// nullopt when nothing is left.
std::optional<std::string> normalize_word(std::string_view raw, const NormalizationConfig &config);

/// Reads `key=value` lines ('#' comments allowed). Keys: lowercase,
/// strip_punctuation, drop_partial_words, auto_label, fillers (comma list).
/// Unknown keys and malformed values throw ConfigError.
NormalizationConfig parse_normalization_config(std::istream &in, NormalizationConfig base = {});
NormalizationConfig load_normalization_config(const std::string &path);

/// Defaults, overridden by the file named in DISFLEVAL_NORMALIZATION if set.
NormalizationConfig default_normalization_config();

/// Inverse of parse_normalization_config.
std::string format_normalization_config(const NormalizationConfig &config);

}  // namespace disfleval

#endif  // DISFLEVAL_NORMALIZE_H_
