#ifndef HNNFORGE_EMBED_HPP_
#define HNNFORGE_EMBED_HPP_

// Embedding into two-generator groups, the tower of HNN extensions and
// amalgams behind it, Hall's semigroup words, and Higman's family of
// amalgams indexed by a function f.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "amalgam.hpp"
#include "dsl.hpp"
#include "error.hpp"
#include "hnn.hpp"
#include "iso.hpp"
#include "oracles.hpp"
#include "words.hpp"

namespace hnnforge {

  ////////////////////////////////////////////////////////////////////////
  // Two-generator embedding
  ////////////////////////////////////////////////////////////////////////

  //! w_i = a^-1 b^-1 a b^-i a b^-1 a^-1 b^i a^-1 b a b^-i a b a^-1 b^i over
  //! the alphabet (a, b); a = 0, b = 1.
  inline Word hnn_generator_word(std::int64_t i) {
    if (i < 1) {
      throw InvalidIndex("generator index must be at least 1");
    }
    auto a = [](std::int64_t e) { return Word::generator(0, e); };
    auto b = [](std::int64_t e) { return Word::generator(1, e); };
    return multiply({a(-1), b(-1), a(1), b(-i), a(1), b(-1), a(-1), b(i),
                     a(-1), b(1),  a(1), b(-i), a(1), b(1),  a(-1), b(i)});
  }

  //! Presentations of the intermediate groups: K = G * <u>, P the multiple
  //! HNN extension with t_i^-1 u t_i = g_i u, Q = P *_{t_i = b^-i v b^i}
  //! F(b, v), and H = Q with stable letter a conjugating (b, v) to (u, b).
  struct Tower {
    Presentation k;
    Presentation p;
    Presentation q;
    Presentation h;
  };

  struct EmbedResult {
    Presentation      target;  // < a, b | R_j(w_1, ..., w_k) >
    std::vector<Word> images;  // g_i -> w_i over (a, b)
    Tower             tower;
  };

  inline Tower build_tower(Presentation const& src) {
    auto const k = src.alphabet.size();
    Tower      tw;

    Alphabet     k_alpha = src.alphabet;
    auto const   u       = k_alpha.add(k_alpha.fresh_name("u"));
    tw.k                 = Presentation(k_alpha, src.relators);

    std::vector<MultiHnnMember> family;
    Alphabet                    seen = k_alpha;
    std::vector<std::string>    t_names;
    auto const                  uw = Word::generator(u);
    for (gen_index i = 0; i < k; ++i) {
      auto name = seen.fresh_name("t" + std::to_string(i + 1));
      seen.add(name);
      t_names.push_back(name);
      auto dom = SubgroupOracle::declared(k_alpha, {uw});
      auto img = multiply(Word::generator(i), uw);
      auto cod = SubgroupOracle::declared(k_alpha, {img});
      family.push_back(
          {name, IsoData::make(std::move(dom), std::move(cod), {img}, {uw})});
    }
    MultiHnnData multi(tw.k, std::move(family));
    tw.p = multi_hnn_presentation(multi);

    auto const& p_alpha = tw.p.alphabet;
    Alphabet    f_alpha;
    auto        b_name = p_alpha.fresh_name("b");
    auto        b      = f_alpha.add(b_name);
    Alphabet    tmp    = p_alpha;
    tmp.add(b_name);
    auto v = f_alpha.add(tmp.fresh_name("v"));

    std::vector<Word> t_words, s_words;
    for (gen_index i = 0; i < k; ++i) {
      t_words.push_back(Word::generator(*p_alpha.index_of(t_names[i])));
      auto bi = Word::generator(b, static_cast<std::int64_t>(i) + 1);
      s_words.push_back(multiply({invert(bi), Word::generator(v), bi}));
    }
    AmalgamData q(tw.p, Presentation(f_alpha, {}),
                  IsoData::make(SubgroupOracle::declared(p_alpha, t_words),
                                SubgroupOracle::declared(f_alpha, s_words),
                                s_words, t_words));
    tw.q = amalgam_presentation(q);

    auto const& q_alpha = tw.q.alphabet;
    auto        bq      = Word::generator(*q_alpha.index_of(f_alpha.name(b)));
    auto        vq      = Word::generator(*q_alpha.index_of(f_alpha.name(v)));
    auto        uq      = Word::generator(*q_alpha.index_of(k_alpha.name(u)));
    HnnData     h(tw.q, q_alpha.fresh_name("a"),
              IsoData::make(SubgroupOracle::declared(q_alpha, {bq, vq}),
                            SubgroupOracle::declared(q_alpha, {uq, bq}),
                            {uq, bq}, {bq, vq}));
    tw.h = hnn_presentation(h);
    return tw;
  }

  inline EmbedResult embed_two_generators(Presentation const& src) {
    EmbedResult r;
    for (std::size_t i = 0; i < src.alphabet.size(); ++i) {
      r.images.push_back(hnn_generator_word(static_cast<std::int64_t>(i) + 1));
    }
    std::vector<Word> rels;
    for (auto const& rel : src.relators) {
      rels.push_back(free_reduce(substitute(rel, r.images)));
    }
    r.target = Presentation(Alphabet{"a", "b"}, std::move(rels));
    r.tower  = build_tower(src);
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Unique decodability
  ////////////////////////////////////////////////////////////////////////

  //! b a b a^(i+2) b a^2 b over (a, b).
  inline Word hall_semigroup_word(std::int64_t i) {
    if (i < 1) {
      throw InvalidIndex("index must be at least 1");
    }
    auto a = [](std::int64_t e) { return Word::generator(0, e); };
    auto b = [](std::int64_t e) { return Word::generator(1, e); };
    return multiply({b(1), a(1), b(1), a(i + 2), b(1), a(2), b(1)});
  }

  //! Sardinas-Patterson test on positive words, compared letter by letter.
  //! Repeated or empty codewords make the code ambiguous.
  inline bool is_uniquely_decodable(std::vector<Word> const& code) {
    using seq = std::vector<letter_type>;
    std::set<seq> words;
    for (auto const& w : code) {
      for (auto const& s : w.syllables()) {
        if (s.exp < 0) {
          throw InvalidInput("semigroup words must be positive");
        }
      }
      auto ls = letters(w);
      if (ls.empty() || !words.insert(ls).second) {
        return false;
      }
    }
    auto is_prefix = [](seq const& p, seq const& s) {
      return p.size() <= s.size() && std::equal(p.begin(), p.end(), s.begin());
    };
    std::set<seq>    dangling;
    std::vector<seq> work;
    auto             push = [&](seq s) {
      if (dangling.insert(s).second) {
        work.push_back(std::move(s));
      }
    };
    for (auto const& x : words) {
      for (auto const& y : words) {
        if (x != y && is_prefix(x, y)) {
          push(seq(y.begin() + static_cast<std::ptrdiff_t>(x.size()), y.end()));
        }
      }
    }
    while (!work.empty()) {
      auto s = std::move(work.back());
      work.pop_back();
      if (words.contains(s)) {
        return false;
      }
      for (auto const& c : words) {
        if (is_prefix(c, s)) {
          push(seq(s.begin() + static_cast<std::ptrdiff_t>(c.size()), s.end()));
        } else if (is_prefix(s, c)) {
          push(seq(c.begin() + static_cast<std::ptrdiff_t>(s.size()), c.end()));
        }
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Higman's family
  ////////////////////////////////////////////////////////////////////////

  //! F(a, b) *_{U = V} F(c, d) with U generated by b^-f(n) a b^f(n) and V by
  //! d^-f(n) c d^f(n) for n = 0..N, identified in pairs.
  struct HigmanFamily {
    std::vector<std::int64_t> f;       // f(0), ..., f(N)
    std::vector<std::int64_t> values;  // distinct values in order of n
    AmalgamData               amalgam;
    Presentation              presentation;

    [[nodiscard]] std::int64_t max_f() const {
      return values.empty() ? -1 : *std::max_element(values.begin(), values.end());
    }
  };

  inline HigmanFamily higman_presentation(std::vector<std::int64_t> f) {
    if (f.empty()) {
      throw InvalidInput("f needs at least one value");
    }
    std::vector<std::int64_t> values;
    std::set<std::int64_t>    seen;
    for (auto x : f) {
      if (x < 0) {
        throw InvalidInput("f must take non-negative values");
      }
      if (seen.insert(x).second) {
        values.push_back(x);
      }
    }
    auto conj = [](gen_index x, gen_index y, std::int64_t e) {
      return multiply({Word::generator(y, -e), Word::generator(x),
                       Word::generator(y, e)});
    };
    Alphabet          left{"a", "b"}, right{"c", "d"};
    std::vector<Word> u, v;
    for (auto x : values) {
      u.push_back(conj(0, 1, x));
      v.push_back(conj(0, 1, x));
    }
    auto iso = IsoData::from_forward(SubgroupOracle::free(left, u),
                                     SubgroupOracle::free(right, v), v);
    AmalgamData d(Presentation(left, {}), Presentation(right, {}), std::move(iso));
    auto        pres = amalgam_presentation(d);
    return HigmanFamily{std::move(f), std::move(values), std::move(d),
                        std::move(pres)};
  }

  //! Whether b^-m a b^m = d^-m c d^m holds in the amalgam. Outside the range
  //! of the truncated table the answer is not determined by it.
  inline bool higman_query(HigmanFamily const& fam, std::int64_t m) {
    if (m < 0 || m > fam.max_f()) {
      throw OutOfTruncationRange("m = " + std::to_string(m)
                                 + " lies outside [0, max f] = [0, "
                                 + std::to_string(fam.max_f()) + "]");
    }
    auto conj = [](gen_index x, gen_index y, std::int64_t e) {
      return multiply({Word::generator(y, -e), Word::generator(x),
                       Word::generator(y, e)});
    };
    auto w = multiply(conj(0, 1, m), invert(conj(2, 3, m)));
    return is_trivial_amalgam(fam.amalgam, w);
  }

  //! f(0..n) from a formula name or a table. Accepted: "n^2", "2n", "n",
  //! "n^3 mod 17", or "@path" naming a file of whitespace- or
  //! comma-separated integers (or a JSON array).
  inline std::vector<std::int64_t> f_values(std::string const& spec,
                                            std::int64_t       n) {
    if (n < 0) {
      throw InvalidInput("N must be non-negative");
    }
    std::vector<std::int64_t> out;
    if (!spec.empty() && spec.front() == '@') {
      std::ifstream in(spec.substr(1));
      if (!in) {
        throw InvalidInput("cannot read f table '" + spec.substr(1) + "'");
      }
      std::string text((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
      std::vector<std::int64_t> table;
      auto j = json::parse(text, nullptr, false);
      if (!j.is_discarded() && j.is_array()) {
        table = j.get<std::vector<std::int64_t>>();
      } else {
        for (auto& c : text) {
          if (c == ',') {
            c = ' ';
          }
        }
        std::istringstream ss(text);
        std::int64_t       x = 0;
        while (ss >> x) {
          table.push_back(x);
        }
        if (!ss.eof()) {
          throw InvalidInput("f table must contain integers only");
        }
      }
      if (static_cast<std::int64_t>(table.size()) < n + 1) {
        throw InvalidInput("f table has fewer than N + 1 values");
      }
      table.resize(static_cast<std::size_t>(n + 1));
      return table;
    }
    std::string s;
    for (char c : spec) {
      if (c != ' ' && c != '*') {
        s += c;
      }
    }
    std::function<std::int64_t(std::int64_t)> f;
    if (s == "n^2") {
      f = [](std::int64_t x) { return x * x; };
    } else if (s == "2n") {
      f = [](std::int64_t x) { return 2 * x; };
    } else if (s == "n") {
      f = [](std::int64_t x) { return x; };
    } else if (s == "n^3mod17") {
      f = [](std::int64_t x) { return (x % 17) * (x % 17) % 17 * (x % 17) % 17; };
    } else {
      throw InvalidInput("unknown f '" + spec
                         + "'; use n^2, 2n, n, n^3 mod 17 or @file");
    }
    for (std::int64_t i = 0; i <= n; ++i) {
      out.push_back(f(i));
    }
    return out;
  }

}  // namespace hnnforge

#endif  // HNNFORGE_EMBED_HPP_
