#include <catch_amalgamated.hpp>

#include "hnnforge/dsl.hpp"
#include "support.hpp"

using namespace hnnforge;

TEST_CASE("parse the cyclic amalgam presentation", "[dsl]") {
  auto p = parse_presentation("< a, b | a^4, b^6, a^2 = b^3 >");
  CHECK(p.alphabet == Alphabet{"a", "b"});
  REQUIRE(p.relators.size() == 3);
  CHECK(p.relators[0] == Word::generator(0, 4));
  CHECK(p.relators[1] == Word::generator(1, 6));
  CHECK(p.relators[2] == Word{{0, 2}, {1, -3}});
  CHECK(render(p) == "< a, b | a^4, b^6, a^2 b^-3 >");
  CHECK(render(parse_presentation(render(p))) == render(p));
}

TEST_CASE("free and empty presentations", "[dsl]") {
  auto p = parse_presentation("< a | >");
  CHECK(p.alphabet.size() == 1);
  CHECK(p.relators.empty());
  CHECK(p.is_free());
  CHECK(render(p) == "< a | >");
  CHECK(render(parse_presentation("<|>")) == "< | >");
  CHECK(render(parse_presentation("< a, b | a a^-1 b >")) == "< a, b | b >");
}

TEST_CASE("parse errors carry spans", "[dsl]") {
  auto expect_span = [](std::string const& text) {
    try {
      parse_presentation(text);
      FAIL("no error for " << text);
    } catch (ParseError const& e) {
      CHECK(e.span().start <= e.span().end);
      CHECK(e.span().end <= text.size());
      return e.span();
    }
    return SourceSpan{};
  };
  auto s = expect_span("< a | a^0 >");
  CHECK(s.start == 8);
  expect_span("< a | a^ >");
  expect_span("< a | a^x >");
  expect_span("< a | b >");
  expect_span("< a | a");
  expect_span("< a | (a b >");
  expect_span("< a, a | >");
  expect_span("< a | a > junk");
  expect_span("");
  CHECK_THROWS_AS(parse_presentation("< a | b >"), UnknownGenerator);
}

TEST_CASE("parse words", "[dsl]") {
  Alphabet ab{"a", "b"};
  CHECK(parse_word("a b^-1 a", ab) == Word{{0, 1}, {1, -1}, {0, 1}});
  CHECK(parse_word("a a^-1", ab).empty());
  CHECK(parse_word("", ab).empty());
  CHECK(parse_word("1", ab).empty());
  CHECK(parse_word("(a b)^2", ab) == Word{{0, 1}, {1, 1}, {0, 1}, {1, 1}});
  CHECK(parse_word("(a b)^-1", ab) == Word{{1, -1}, {0, -1}});
  CHECK_THROWS_AS(parse_word("c", ab), UnknownGenerator);
  // names are case sensitive; A is not a^-1
  CHECK_THROWS_AS(parse_word("A", ab), UnknownGenerator);
  Alphabet long_names{"g1", "g10"};
  CHECK(parse_word("g10 g1^2", long_names) == Word{{1, 1}, {0, 2}});
}

TEST_CASE("JSON forms", "[dsl]") {
  auto p = parse_presentation("< x, y | x^4, y^6, x^2 y^-3 >");
  auto j = presentation_to_json(p);
  CHECK(j["generators"] == json({"x", "y"}));
  CHECK(j["relators"][0] == json::parse(R"([["x",4]])"));
  CHECK(j["relators"][2] == json::parse(R"([["x",2],["y",-3]])"));
  CHECK(presentation_from_json(j) == p);
  CHECK(presentation_from_json(json("< x, y | x^4, y^6, x^2 y^-3 >")) == p);
  CHECK(word_from_json(json::parse(R"([["x",1],["x",-1]])"), p.alphabet).empty());
  CHECK_THROWS_AS(word_from_json(json::parse(R"([["x",0]])"), p.alphabet), InvalidInput);
  CHECK_THROWS_AS(word_from_json(json::parse(R"([["z",1]])"), p.alphabet), UnknownGenerator);
}

TEST_CASE("render then parse is the identity on canonical presentations",
          "[dsl][property]") {
  testkit::Rng rng(0xd51);
  for (int trial = 0; trial < 500; ++trial) {
    auto     n = static_cast<int>(rng.range(1, 6));
    Alphabet al;
    for (int i = 0; i < n; ++i) {
      al.add((rng.below(2) ? "g" : "x_") + std::to_string(i));
    }
    std::vector<Word> rels;
    auto              k = rng.range(0, 8);
    for (int i = 0; i < k; ++i) {
      auto w = free_reduce(testkit::to_word(testkit::random_letters(rng, n, rng.below(13))));
      if (!w.empty()) {
        rels.push_back(w);
      }
    }
    Presentation p(al, rels);
    auto         text = render(p);
    auto         q    = parse_presentation(text);
    CHECK(q == p);
    CHECK(render(q) == text);
    CHECK(presentation_from_json(presentation_to_json(p)) == p);
  }
}
