// tests/ingest_test.cc

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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "disfleval/ingest.h"
#include "disfleval/synth.h"
#include "test_util.h"

namespace disfleval {
namespace {

using testing::words;

std::size_t parse_error_column(const std::string &line, bool brackets = true) {
  try {
    if (brackets) parse_repair_bracket(line);
    else parse_inline(line);
  } catch (const ParseError &e) {
    return e.column();
  }
  ADD_FAILURE() << "no ParseError for: " << line;
  return 0;
}

TEST(ParseInlineTest, SuffixTags) {
  const auto r = parse_inline("u1\ti want a flight to/E boston/E uh/I i/I mean/I to denver");
  EXPECT_EQ(r.utterance_id(), "u1");
  EXPECT_EQ(r.size(), 11u);
  EXPECT_EQ(r.fluent_count(), 6u);
  EXPECT_EQ(r.disfluent_count(), 5u);
  EXPECT_EQ(r.tokens()[4].category, DisfluencyCategory::kEdited);
  EXPECT_EQ(r.tokens()[6].category, DisfluencyCategory::kInterjection);
  EXPECT_EQ(r.tokens()[9].category, std::nullopt);
  EXPECT_TRUE(r.repairs().empty());
}

TEST(ParseInlineTest, Unannotated) {
  const auto r = parse_inline("u2\tthe cat");
  EXPECT_EQ(r.size(), 2u);
  EXPECT_EQ(r.fluent_count(), 2u);
  EXPECT_TRUE(r.repairs().empty());
}

TEST(ParseInlineTest, PartialWords) {
  NormalizationConfig drop;
  drop.drop_partial_words = true;
  const auto dropped = parse_inline("u3\twou-/P the cat", drop);
  EXPECT_EQ(dropped.size(), 2u);
  EXPECT_EQ(dropped.fluent_count(), 2u);

  const auto kept = parse_inline("u3\twou-/P the cat");
  ASSERT_EQ(kept.size(), 3u);
  EXPECT_EQ(kept.tokens()[0].category, DisfluencyCategory::kPartial);
  EXPECT_EQ(kept.tokens()[0].token.surface(), "wou");
}

TEST(ParseInlineTest, MalformedSuffixNamesColumn) {
  EXPECT_EQ(parse_error_column("u1\tthe to/X cat", false), 8u);
  EXPECT_EQ(parse_error_column("u1\tthe /E cat", false), 8u);
  EXPECT_EQ(parse_error_column("u1\tthe to/ cat", false), 8u);
}

TEST(ParseInlineTest, EmptyUtteranceIsAnError) {
  EXPECT_THROW(parse_inline("u1\t"), ParseError);
  EXPECT_THROW(parse_inline("u1\t  ... , "), ParseError);
  EXPECT_THROW(parse_inline("u1"), ParseError);
}

TEST(ParseInlineTest, BracketsAreOrdinaryPunctuation) {
  const auto r = parse_inline("u\t[ a + b ]");
  EXPECT_EQ(r.size(), 2u);
  EXPECT_TRUE(r.repairs().empty());
}

TEST(ParseBracketTest, CorrectionWithInterregnum) {
  const auto r = parse_repair_bracket("u1\ti want a flight [ to boston + { uh i mean } to denver ]");
  ASSERT_EQ(r.repairs().size(), 1u);
  const auto &s = r.repairs()[0];
  EXPECT_EQ(s.reparandum, (TokenRange{4, 6}));
  ASSERT_TRUE(s.interregnum.has_value());
  EXPECT_EQ(*s.interregnum, (TokenRange{6, 9}));
  EXPECT_EQ(s.repair, (TokenRange{9, 11}));
  EXPECT_EQ(s.type, RepairType::kCorrection);
  EXPECT_EQ(r.tokens()[4].category, DisfluencyCategory::kEdited);
  EXPECT_EQ(r.tokens()[7].category, DisfluencyCategory::kInterjection);
  EXPECT_FALSE(r.tokens()[9].is_disfluent());
}

TEST(ParseBracketTest, RepetitionAndRestart) {
  auto r = parse_repair_bracket("u\tso [ from + from ] that standpoint");
  ASSERT_EQ(r.repairs().size(), 1u);
  EXPECT_EQ(r.repairs()[0].type, RepairType::kRepetition);
  EXPECT_FALSE(r.repairs()[0].interregnum.has_value());

  r = parse_repair_bracket("u\t[ there's a + ] let's go");
  ASSERT_EQ(r.repairs().size(), 1u);
  EXPECT_EQ(r.repairs()[0].type, RepairType::kRestart);
  EXPECT_EQ(r.repairs()[0].repair, (TokenRange{2, 2}));
  EXPECT_EQ(r.tokens()[2].token.surface(), "let's");
}

TEST(ParseBracketTest, NestedBracketFlattensIntoReparandum) {
  const auto r = parse_repair_bracket("u\t[ [ i + { uh } i ] + i ] went");
  ASSERT_EQ(r.repairs().size(), 1u);
  EXPECT_EQ(r.repairs()[0].reparandum, (TokenRange{0, 3}));
  EXPECT_EQ(r.tokens()[0].category, DisfluencyCategory::kEdited);
  EXPECT_EQ(r.tokens()[1].category, DisfluencyCategory::kInterjection);
  EXPECT_EQ(r.tokens()[2].category, DisfluencyCategory::kEdited);
  EXPECT_EQ(r.repairs()[0].repair, (TokenRange{3, 4}));
  EXPECT_EQ(r.repairs()[0].type, RepairType::kCorrection);
}

TEST(ParseBracketTest, StructuralErrors) {
  EXPECT_EQ(parse_error_column("u\tso [ from + from that"), 6u);   // unbalanced '['
  EXPECT_EQ(parse_error_column("u\tso from ] that"), 11u);         // unbalanced ']'
  EXPECT_EQ(parse_error_column("u\tso [ from from ] that"), 18u);  // missing '+'
  EXPECT_EQ(parse_error_column("u\tso { uh } that"), 6u);          // '{' outside
  EXPECT_EQ(parse_error_column("u\t[ a + b { uh } ]"), 11u);       // '{' after repair words
  EXPECT_EQ(parse_error_column("u\t[ a + [ b + c ] ]"), 9u);       // bracket in repair
  EXPECT_EQ(parse_error_column("u\t[ [ [ a + b ] + c ] + d ]"), 7u);
  EXPECT_EQ(parse_error_column("u\t[ a + b/E ]"), 9u);             // tag inside repair
  EXPECT_EQ(parse_error_column("u\t[ + a ]"), 5u);                 // empty reparandum
  EXPECT_EQ(parse_error_column("u\ta + b"), 5u);                   // '+' outside
}

TEST(ParseBracketTest, NoBracketsMatchesInline) {
  const std::string line = "u\tuh/I i want to/E a flight wou-/P to denver";
  EXPECT_EQ(parse_repair_bracket(line), parse_inline(line));
}

TEST(ParseBracketTest, ClassProjectionMatchesSuffixForm) {
  const auto b = parse_repair_bracket("u\ti want a flight [ to boston + { uh i mean } to denver ]");
  const auto s = parse_inline("u\ti want a flight to/E boston/E uh/I i/I mean/I to denver");
  EXPECT_EQ(b.tokens(), s.tokens());
}

TEST(ParseHypothesisTest, Basics) {
  EXPECT_EQ(parse_hypothesis("u1\ti want a flight to denver").tokens.size(), 6u);
  const auto empty = parse_hypothesis("u2\t");
  EXPECT_EQ(empty.utterance_id, "u2");
  EXPECT_TRUE(empty.tokens.empty());
  EXPECT_TRUE(parse_hypothesis("u2").tokens.empty());
  EXPECT_EQ(parse_hypothesis("u3\tThe CAT.").tokens, words("the cat"));
  EXPECT_THROW(parse_hypothesis("\ti want"), ParseError);
  EXPECT_THROW(parse_hypothesis("i want"), ParseError);
}

TEST(NormalizationTest, OptionsAreHonored) {
  NormalizationConfig raw;
  raw.lowercase = false;
  raw.strip_punctuation = false;
  EXPECT_EQ(parse_hypothesis("u\tThe CAT.", raw).tokens, words("The CAT."));
  EXPECT_EQ(normalize_word("\"Hello,\"", {}), "hello");
  EXPECT_EQ(normalize_word("don't", {}), "don't");
  EXPECT_EQ(normalize_word("--", {}), std::nullopt);
}

TEST(NormalizationTest, AutoLabelFillers) {
  NormalizationConfig c;
  c.auto_label = true;
  const auto r = parse_repair_bracket("u\twell i mean um you know i like it", c);
  std::vector<bool> disfluent;
  for (const auto &t : r.tokens()) disfluent.push_back(t.is_disfluent());
  // "like" is a filler lexicon entry and is labeled as one.
  EXPECT_EQ(disfluent, (std::vector<bool>{true, true, true, true, true, true, false, true, false}));
  EXPECT_EQ(r.tokens()[0].category, DisfluencyCategory::kInterjection);
}

TEST(NormalizationTest, AutoLabelKeepsGoldAndStructure) {
  NormalizationConfig c;
  c.auto_label = true;
  const auto r = parse_repair_bracket("u\twell/E [ uh + uh ] wou- go", c);
  EXPECT_EQ(r.tokens()[0].category, DisfluencyCategory::kEdited);
  EXPECT_EQ(r.tokens()[1].category, DisfluencyCategory::kEdited);
  EXPECT_FALSE(r.tokens()[2].is_disfluent());  // repair words stay fluent
  EXPECT_EQ(r.tokens()[3].category, DisfluencyCategory::kPartial);
  EXPECT_FALSE(r.tokens()[4].is_disfluent());
}

TEST(NormalizationTest, ConfigFileRoundTrip) {
  NormalizationConfig c;
  c.lowercase = false;
  c.drop_partial_words = true;
  c.filler_lexicon = {"uh", "you know"};
  std::istringstream in("# comment\n" + format_normalization_config(c));
  EXPECT_EQ(parse_normalization_config(in), c);

  std::istringstream bad("colour=blue\n");
  EXPECT_THROW(parse_normalization_config(bad), ConfigError);
  std::istringstream bad_flag("lowercase=maybe\n");
  EXPECT_THROW(parse_normalization_config(bad_flag), ConfigError);
}

TEST(NormalizationTest, EnvironmentDefault) {
  const auto path = std::filesystem::temp_directory_path() / "disfleval_norm_test.cfg";
  {
    std::ofstream out(path);
    out << "lowercase=false\n";
  }
  ::setenv(kNormalizationConfigEnv, path.c_str(), 1);
  EXPECT_FALSE(default_normalization_config().lowercase);
  ::unsetenv(kNormalizationConfigEnv);
  EXPECT_TRUE(default_normalization_config().lowercase);
  std::filesystem::remove(path);
}

TEST(ReadFileTest, SkipsCommentsAndReportsLine) {
  std::istringstream good("# header\n\nu1\ta b\nu2\tc/E d\n");
  const auto refs = read_references(good, {}, "refs.txt");
  ASSERT_EQ(refs.size(), 2u);
  EXPECT_EQ(refs[1].disfluent_count(), 1u);

  std::istringstream bad("u1\ta b\n# c\nu2\tc/Q d\n");
  try {
    read_references(bad, {}, "refs.txt");
    FAIL() << "expected ParseError";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.source(), "refs.txt");
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 4u);
    EXPECT_NE(std::string(e.what()).find("refs.txt:3:4"), std::string::npos);
  }
}

std::vector<ReferenceTranscript> three_refs() {
  return {parse_inline("a\tx"), parse_inline("b\ty"), parse_inline("c\tz")};
}

TEST(PairFilesTest, AllMatched) {
  const std::vector<Hypothesis> hyps = {parse_hypothesis("c\tz"), parse_hypothesis("a\tx"),
                                        parse_hypothesis("b\ty")};
  const auto r = pair_files(three_refs(), hyps, MissingPolicy::kError);
  ASSERT_EQ(r.pairs.size(), 3u);
  EXPECT_TRUE(r.missing.empty());
  for (const auto &p : r.pairs) EXPECT_EQ(p.reference.utterance_id(), p.hypothesis.utterance_id);
}

TEST(PairFilesTest, MissingStrictNamesId) {
  const std::vector<Hypothesis> hyps = {parse_hypothesis("a\tx"), parse_hypothesis("c\tz")};
  try {
    pair_files(three_refs(), hyps, MissingPolicy::kError);
    FAIL() << "expected PairingError";
  } catch (const PairingError &e) {
    EXPECT_NE(std::string(e.what()).find(" b"), std::string::npos);
  }
}

TEST(PairFilesTest, MissingScoredAsEmpty) {
  const std::vector<Hypothesis> hyps = {parse_hypothesis("a\tx"), parse_hypothesis("c\tz")};
  const auto r = pair_files(three_refs(), hyps, MissingPolicy::kEmpty);
  ASSERT_EQ(r.pairs.size(), 3u);
  EXPECT_EQ(r.missing, std::vector<std::string>{"b"});
  EXPECT_TRUE(r.pairs[1].hypothesis.tokens.empty());
}

TEST(PairFilesTest, DuplicatesAndStrayHypotheses) {
  auto refs = three_refs();
  refs.push_back(parse_inline("a\tq"));
  EXPECT_THROW(pair_files(refs, {}, MissingPolicy::kEmpty), PairingError);
  EXPECT_THROW(pair_files(three_refs(), {parse_hypothesis("a\tx"), parse_hypothesis("a\tx")},
                          MissingPolicy::kEmpty),
               PairingError);
  EXPECT_THROW(pair_files(three_refs(), {parse_hypothesis("zz\tx")}, MissingPolicy::kEmpty),
               PairingError);
}

// Generated corpora cover repetitions, corrections, restarts, interregna and
// standalone fillers.
std::vector<ReferenceTranscript> generated(std::size_t n, std::uint64_t seed) {
  DisfluencyRates rates;
  rates.repetition = 0.1;
  rates.correction = 0.1;
  rates.restart = 0.05;
  rates.filler = 0.1;
  rates.max_span = 3;
  std::vector<ReferenceTranscript> out;
  for (std::size_t k = 0; k < n; ++k)
    out.push_back(gen_reference("g" + std::to_string(k), derive_seed(seed, 0, k), 20, {1, 15},
                                rates));
  return out;
}

TEST(RoundTripTest, BracketFormatReparses) {
  for (const auto &ref : generated(300, 11)) {
    const std::string line = format_bracket(ref);
    EXPECT_EQ(parse_repair_bracket(line), ref) << line;
  }
}

TEST(RoundTripTest, InlineFormatReparses) {
  for (const auto &g : generated(300, 12)) {
    const auto parsed = parse_inline(format_inline(g));
    EXPECT_EQ(parse_inline(format_inline(parsed)), parsed);
    EXPECT_EQ(parsed.tokens(), g.tokens());
    // Class projection of the bracket form equals the suffix form.
    EXPECT_EQ(parse_repair_bracket(format_bracket(g)).tokens(), parsed.tokens());
  }
}

}  // namespace
}  // namespace disfleval
