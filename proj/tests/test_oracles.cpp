#include <catch_amalgamated.hpp>

#include <algorithm>

#include "hnnforge/dsl.hpp"
#include "hnnforge/oracles.hpp"
#include "support.hpp"

using namespace hnnforge;
using testkit::Letters;

namespace {
  Alphabet const AB{"a", "b"};

  Word w(std::string const& text) {
    return parse_word(text, AB);
  }

  std::vector<Word> words(std::initializer_list<char const*> texts) {
    std::vector<Word> out;
    for (auto const* t : texts) {
      out.push_back(w(t));
    }
    return out;
  }
}  // namespace

TEST_CASE("folding <a^2, b>", "[oracles]") {
  auto st = build_stallings(2, words({"a^2", "b"}));
  CHECK(st.num_states() == 2);
  CHECK(st.target(0, make_letter(0, false)) == 1);
  CHECK(st.target(1, make_letter(0, false)) == 0);
  CHECK(st.target(0, make_letter(1, false)) == 0);
  CHECK(st.num_edges() - st.num_states() + 1 == 2);
  // shortlex order of the basis words
  CHECK(st.basis() == words({"b", "a^2"}));
}

TEST_CASE("degenerate automata", "[oracles]") {
  auto one = build_stallings(2, words({"a"}));
  CHECK(one.num_states() == 1);
  CHECK(one.basis() == words({"a"}));
  auto none = build_stallings(2, {});
  CHECK(none.num_states() == 1);
  CHECK(none.num_edges() == 0);
  CHECK(none.basis().empty());
  CHECK(none.accepts(Word()));
  CHECK(!none.accepts(w("a")));
}

TEST_CASE("membership in <a^2, b>", "[oracles]") {
  auto o = SubgroupOracle::free(AB, words({"a^2", "b"}));
  CHECK(o.contains(w("a^2 b a^-2")));
  CHECK(!o.contains(w("a")));
  CHECK(!o.contains(w("a b a^-1")));
  CHECK(o.contains(Word()));
  CHECK(contains(o, w("b a^2 b^-3")));
  CHECK_THROWS_AS(o.contains(Alphabet{"a", "c"}, w("a")), AlphabetMismatch);
  // index-2 coset table: a swaps the two cosets, b fixes both. Its
  // stabilizer is <a^2, b, a b a^-1>, which contains <a^2, b>.
  testkit::CosetTable t{2, {1, 0}, {0, 1}};
  auto                full = SubgroupOracle::free(AB, words({"a^2", "b", "a b a^-1"}));
  testkit::Rng        rng(7);
  for (int i = 0; i < 500; ++i) {
    auto ls = testkit::random_letters(rng, 2, rng.below(12));
    auto x  = testkit::to_word(ls);
    CHECK(full.contains(x) == t.stabilizes(ls));
    if (o.contains(x)) {
      CHECK(t.stabilizes(ls));
    }
  }
}

TEST_CASE("rewrite in basis letters", "[oracles]") {
  auto o = SubgroupOracle::free(AB, words({"a^2", "b"}));
  CHECK(o.rewrite_in_basis(w("a^2 b a^2")) == Word{{0, 1}, {1, 1}, {0, 1}});
  CHECK(rewrite_in_basis(o, Word()).empty());
  CHECK_THROWS_AS(o.rewrite_in_basis(w("a")), NotInSubgroup);
  CHECK(!o.try_rewrite(w("a b")).has_value());
}

TEST_CASE("caller order is kept when the generators are a basis", "[oracles]") {
  auto o = SubgroupOracle::free(AB, words({"a^2", "b"}));
  CHECK(o.basis() == words({"a^2", "b"}));
  CHECK(o.stallings().basis() == words({"b", "a^2"}));
  CHECK(o.rewrite_in_basis(w("a^2 b")) == Word{{0, 1}, {1, 1}});
  auto inv = SubgroupOracle::free(AB, words({"a^-2", "b"}));
  CHECK(inv.basis() == words({"a^-2", "b"}));
  CHECK(inv.rewrite_in_basis(w("a^2")) == Word::generator(0, -1));
  // not a basis: the shortlex Stallings basis is used instead
  auto red = SubgroupOracle::free(AB, words({"a^2", "a^4", "b"}));
  CHECK(red.basis().size() == 2);
}

TEST_CASE("finite tables", "[oracles]") {
  auto c4 = FiniteGroupTable::cyclic(4, "x");
  Alphabet x{"x"};
  CHECK(c4.evaluate(Word::generator(0, 4), x) == c4.identity());
  CHECK(c4.evaluate(Word(), x) == c4.identity());
  CHECK_THROWS_AS(c4.evaluate(Word::generator(0), Alphabet{"y"}), MissingImage);
  CHECK(evaluate(c4, Word::generator(0, 5), x) == c4.evaluate(Word::generator(0), x));

  auto c6 = FiniteGroupTable::cyclic(6, "y");
  auto y3 = c6.evaluate(Word::generator(0, 3), Alphabet{"y"});
  std::vector<FiniteGroupTable::element_type> order_two;
  for (FiniteGroupTable::element_type e = 0; e < c6.order(); ++e) {
    if (e != c6.identity() && c6.product(e, e) == c6.identity()) {
      order_two.push_back(e);
    }
  }
  REQUIRE(order_two.size() == 1);
  CHECK(y3 == order_two[0]);

  auto round = FiniteGroupTable::from_json(c6.to_json());
  CHECK(round.order() == 6);
  CHECK(round.evaluate(Word::generator(0, 3), Alphabet{"y"}) == y3);
}

TEST_CASE("table validation", "[oracles]") {
  // not associative: a Latin square that is not a group
  json bad = json::parse(R"({"order":5,"product":[[0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]]})");
  CHECK_THROWS_AS(FiniteGroupTable::from_json(bad), InvalidTable);
  json no_id = json::parse(R"({"order":2,"product":[[1,0],[0,1]]})");
  CHECK_NOTHROW(FiniteGroupTable::from_json(no_id));  // identity is element 1
  json not_group = json::parse(R"({"order":2,"product":[[0,0],[0,0]]})");
  CHECK_THROWS_AS(FiniteGroupTable::from_json(not_group), InvalidTable);
  json ragged = json::parse(R"({"order":2,"product":[[0,1],[1]]})");
  CHECK_THROWS_AS(FiniteGroupTable::from_json(ragged), InvalidTable);
}

TEST_CASE("finite subgroup oracle", "[oracles]") {
  auto     c6 = std::make_shared<FiniteGroupTable>(FiniteGroupTable::cyclic(6, "y"));
  Alphabet y{"y"};
  auto     o = SubgroupOracle::finite(c6, y, {Word::generator(0, 2)});
  CHECK(o.finite_order() == std::optional<std::size_t>(3));
  CHECK(o.contains(Word::generator(0, 4)));
  CHECK(!o.contains(Word::generator(0, 3)));
  CHECK(o.expand(o.rewrite_in_basis(Word::generator(0, -2))) == Word::generator(0, -2));
  CHECK_THROWS_AS(o.rewrite_in_basis(Word::generator(0)), NotInSubgroup);
}

TEST_CASE("folding is independent of generator order", "[oracles][property]") {
  testkit::Rng rng(0xf01d);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Word> gens;
    auto              k = rng.range(0, 4);
    for (int i = 0; i < k; ++i) {
      gens.push_back(testkit::to_word(testkit::random_letters(rng, 2, rng.below(7) + 1)));
    }
    auto st = build_stallings(2, gens);
    auto shuffled = gens;
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
    }
    for (auto& g : shuffled) {
      if (rng.below(2)) {
        g = invert(g);
      }
    }
    auto st2 = build_stallings(2, shuffled);
    CHECK(st == st2);
    CHECK(st.basis() == st2.basis());
    // rank from the Euler characteristic
    CHECK(st.basis().size() == st.num_edges() - st.num_states() + 1);
    for (auto const& bw : st.basis()) {
      CHECK(bw.is_reduced());
      CHECK(st.accepts(bw));
    }
    for (auto const& g : gens) {
      CHECK(st.accepts(g));
    }
  }
}

TEST_CASE("rewriting round-trips for members", "[oracles][property]") {
  testkit::Rng rng(0xbead);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Word> gens;
    auto              k = rng.range(1, 3);
    for (int i = 0; i < k; ++i) {
      gens.push_back(testkit::to_word(testkit::random_letters(rng, 2, rng.below(6) + 1)));
    }
    auto o = SubgroupOracle::free(AB, gens);
    for (int j = 0; j < 20; ++j) {
      // random product of generators is a member
      Word m;
      for (int s = 0; s < 4; ++s) {
        auto g = gens[rng.below(gens.size())];
        m      = multiply(m, rng.below(2) ? g : invert(g));
      }
      REQUIRE(o.contains(m));
      CHECK(free_reduce(o.expand(o.rewrite_in_basis(m))) == free_reduce(m));
    }
  }
}

TEST_CASE("coset splitting and left cosets", "[oracles]") {
  auto o  = SubgroupOracle::free(AB, words({"a^2", "b", "a b a^-1"}));
  auto st = o.stallings();
  REQUIRE(st.is_complete());
  CHECK(st.num_states() == 2);
  testkit::Rng rng(99);
  for (int i = 0; i < 300; ++i) {
    auto g  = testkit::to_word(testkit::random_letters(rng, 2, rng.below(10)));
    auto sp = st.split_right_coset(g);
    auto u = substitute(sp.subgroup_part, st.basis());
    CHECK(multiply(u, sp.representative) == free_reduce(g));
    CHECK(sp.representative.length() <= 1);
    // g and g h (h in H) lie in the same left coset
    CHECK(st.left_coset_state(g) == st.left_coset_state(multiply(g, w("b"))));
  }
  CHECK(!st.to_dot(AB).empty());
}
