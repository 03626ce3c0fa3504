#include <gtest/gtest.h>

#include <random>

#include "asymrep/error.hpp"
#include "asymrep/presentation.hpp"

using namespace asymrep;

namespace {

Word w(const GroupPresentation& p, const char* text) { return parse_word(text, p); }

}  // namespace

TEST(ParsePresentation, CommutatorSugarExpands) {
  auto p = parse_presentation("<a,b|[a,b]>");
  ASSERT_EQ(p.generators, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(p.relators.size(), 1u);
  EXPECT_EQ(p.relators[0], Word({{0, 1}, {1, 1}, {0, -1}, {1, -1}}));
  EXPECT_EQ(p.normal_form, NormalForm::abelian);
}

TEST(ParsePresentation, OneGeneratorNoRelators) {
  auto p = parse_presentation("<a|>");
  EXPECT_EQ(p.rank(), 1u);
  EXPECT_TRUE(p.relators.empty());
  EXPECT_EQ(p.normal_form, NormalForm::free);
}

TEST(ParsePresentation, UndeclaredGeneratorReportsLocation) {
  try {
    parse_presentation("<a,b|a b c>");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 10u);
    EXPECT_NE(std::string(e.what()).find("undeclared generator 'c'"), std::string::npos);
  }
}

TEST(ParsePresentation, DuplicateGenerator) { EXPECT_THROW(parse_presentation("<a,a|>"), ParseError); }

TEST(ParsePresentation, MultilineLocation) {
  try {
    parse_presentation("<a,b|\n  a b,\n  a ^ >");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ParsePresentation, SyntaxErrors) {
  for (const char* bad : {"", "<", "<a", "<a|", "<|>", "<A|>", "<a|a^>", "<a|a^-x>", "<a|[a]>", "<a,|>", "a|b>"})
    EXPECT_THROW(parse_presentation(bad), ParseError) << bad;
}

TEST(ParsePresentation, ExponentsAndWhitespace) {
  auto p = parse_presentation("  < x1 , y_2 |  x1^3 y_2^-2 , [x1 , y_2]  > ");
  ASSERT_EQ(p.relators.size(), 2u);
  EXPECT_EQ(p.relators[0].size(), 5u);
  EXPECT_EQ(p.relators[0].letters()[4], (Letter{1, -1}));
}

TEST(ParsePresentation, AbelianInferenceNeedsEveryPair) {
  EXPECT_EQ(parse_presentation("<a,b,c|[a,b]>").normal_form, NormalForm::free);
  EXPECT_EQ(parse_presentation("<a,b,c|[a,b],[a,c],[b,c]>").normal_form, NormalForm::abelian);
  EXPECT_EQ(parse_presentation("<a,b|[a,b], a^2>").normal_form, NormalForm::free);
  EXPECT_THROW(parse_presentation("<a,b|a b>", NormalForm::abelian), DomainError);
  EXPECT_EQ(parse_presentation("<a,b|[a,b]>", NormalForm::free).normal_form, NormalForm::free);
}

TEST(ParsePresentation, FormatRoundTripIsFixedPoint) {
  for (const char* text : {"<a,b|[a,b]>", "<a|>", "<x,y,z|x^3 y^-2, [x,[y,z]], x x^-1>", "<a,b|a b a b>"}) {
    auto p1 = parse_presentation(text);
    auto p2 = parse_presentation(format_presentation(p1));
    EXPECT_EQ(p1.generators, p2.generators) << text;
    EXPECT_EQ(p1.relators, p2.relators) << text;
    EXPECT_EQ(p1.normal_form, p2.normal_form) << text;
    EXPECT_EQ(format_presentation(p1), format_presentation(p2));
  }
}

TEST(ReduceWord, Examples) {
  auto f = parse_presentation("<a,b|>");
  auto z2 = parse_presentation("<a,b|[a,b]>");
  EXPECT_TRUE(reduce_word(w(f, "a a^-1"), NormalForm::free).empty());
  EXPECT_EQ(reduce_word(w(z2, "b a"), NormalForm::abelian), w(z2, "a b"));
  EXPECT_EQ(reduce_word(w(z2, "a b a"), NormalForm::abelian), w(z2, "a^2 b"));
  EXPECT_EQ(reduce_word(w(f, "a b a"), NormalForm::free), w(f, "a b a"));
}

TEST(WordMultiply, Examples) {
  auto z2 = parse_presentation("<a,b|[a,b]>");
  EXPECT_TRUE(word_multiply(w(z2, "a"), w(z2, "a^-1"), z2).empty());
  EXPECT_EQ(word_multiply(w(z2, "a"), w(z2, "b"), z2), w(z2, "a b"));
  EXPECT_EQ(word_multiply(w(z2, "b"), w(z2, "a"), z2), w(z2, "a b"));
  auto f = parse_presentation("<a,b|>");
  EXPECT_EQ(word_multiply(w(f, "a b"), w(f, "b^-1"), f), w(f, "a"));
  auto one = parse_presentation("<a|>");
  EXPECT_THROW(word_multiply(w(f, "b"), Word{}, one), DomainError);
}

TEST(WordInverse, Examples) {
  auto f = parse_presentation("<a,b|>");
  EXPECT_EQ(word_inverse(w(f, "a b")), w(f, "b^-1 a^-1"));
  EXPECT_TRUE(word_inverse(Word{}).empty());
  EXPECT_EQ(word_inverse(w(f, "a^-1")), w(f, "a"));
}

TEST(FormatWord, CollapsesRuns) {
  auto f = parse_presentation("<a,b|>");
  EXPECT_EQ(format_word(w(f, "a a a b^-1 b^-1"), f), "a^3 b^-2");
  EXPECT_EQ(format_word(Word{}, f), "");
}

TEST(Ball, Z2RadiusOne) {
  auto z2 = parse_presentation("<a,b|[a,b]>");
  auto F = ball(z2, 1);
  ASSERT_EQ(F.size(), 5u);
  EXPECT_TRUE(F.words()[0].empty());
  for (const char* s : {"a", "a^-1", "b", "b^-1"}) EXPECT_TRUE(F.contains(w(z2, s))) << s;
  EXPECT_EQ(F.radius(), 1);
}

TEST(Ball, Z2RadiusTwoHasThirteen) {
  auto z2 = parse_presentation("<a,b|[a,b]>");
  auto F = ball(z2, 2);
  EXPECT_EQ(F.size(), 13u);
  int count = 0;
  for (int k = -2; k <= 2; ++k)
    for (int l = -2; l <= 2; ++l)
      if (std::abs(k) + std::abs(l) <= 2) {
        ++count;
        std::vector<Letter> letters;
        for (int i = 0; i < std::abs(k); ++i) letters.push_back({0, k > 0 ? 1 : -1});
        for (int i = 0; i < std::abs(l); ++i) letters.push_back({1, l > 0 ? 1 : -1});
        EXPECT_TRUE(F.contains(Word(letters))) << k << "," << l;
      }
  EXPECT_EQ(count, 13);
}

TEST(Ball, FreeOneGenerator) {
  auto p = parse_presentation("<a|>");
  auto F = ball(p, 2);
  EXPECT_EQ(F.size(), 5u);
  for (const char* s : {"a", "a^-1", "a^2", "a^-2"}) EXPECT_TRUE(F.contains(w(p, s)));
}

TEST(Ball, FreeTwoGeneratorsCount) {
  // 1 + 4 + 4*3 reduced words of length <= 2.
  EXPECT_EQ(ball(parse_presentation("<a,b|>"), 2).size(), 17u);
}

TEST(Ball, RadiusZeroAndNegative) {
  auto p = parse_presentation("<a|>");
  EXPECT_EQ(ball(p, 0).size(), 1u);
  EXPECT_THROW(ball(p, -1), DomainError);
}

TEST(FiniteSubset, Validation) {
  auto p = parse_presentation("<a|>");
  EXPECT_THROW(FiniteSubset::from_words(p, {w(p, "a"), w(p, "a^-1")}), DomainError);
  EXPECT_THROW(FiniteSubset::from_words(p, {Word{}, w(p, "a")}), DomainError);
  EXPECT_THROW(FiniteSubset::from_words(p, {Word{}, w(p, "a a^-1")}), DomainError);
  auto F = FiniteSubset::from_words(p, {Word{}, w(p, "a"), w(p, "a^-1")});
  EXPECT_EQ(F.size(), 3u);
  EXPECT_FALSE(F.radius());
}

namespace {

Word random_word(std::mt19937_64& rng, std::size_t rank, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<std::size_t> gen(0, rank - 1);
  std::bernoulli_distribution sign;
  std::vector<Letter> l;
  for (int i = len(rng); i > 0; --i) l.push_back({gen(rng), sign(rng) ? 1 : -1});
  return Word(l);
}

}  // namespace

TEST(PresentationProperties, ReduceIdempotentAndInverseCancels) {
  std::mt19937_64 rng(7);
  for (const char* text : {"<a,b|>", "<a,b|[a,b]>", "<a,b,c|[a,b],[a,c],[b,c]>"}) {
    auto p = parse_presentation(text);
    for (int trial = 0; trial < 200; ++trial) {
      Word u = random_word(rng, p.rank(), 12);
      Word r = reduce_word(u, p.normal_form);
      EXPECT_EQ(reduce_word(r, p.normal_form), r);
      EXPECT_TRUE(word_multiply(u, word_inverse(u), p).empty());
      EXPECT_TRUE(word_multiply(word_inverse(u), u, p).empty());
    }
  }
}

TEST(PresentationProperties, BallsAreNestedAndInversionClosed) {
  for (const char* text : {"<a,b|>", "<a,b|[a,b]>"}) {
    auto p = parse_presentation(text);
    for (int r = 0; r < 3; ++r) {
      auto inner = ball(p, r);
      auto outer = ball(p, r + 1);
      for (const auto& u : inner.words()) {
        EXPECT_TRUE(outer.contains(u));
        EXPECT_TRUE(inner.contains(reduce_word(word_inverse(u), p.normal_form)));
      }
    }
  }
}
