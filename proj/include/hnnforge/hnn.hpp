#ifndef HNNFORGE_HNN_HPP_
#define HNNFORGE_HNN_HPP_

// HNN extensions G*_phi with the convention t^-1 a t = phi(a) for a in A,
// multiple HNN extensions, Britton reduction, and the amalgam K *_U L that
// witnesses the embedding of G in G*_phi.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "amalgam.hpp"
#include "dsl.hpp"
#include "error.hpp"
#include "iso.hpp"
#include "oracles.hpp"
#include "words.hpp"

namespace hnnforge {

  class HnnData {
   public:
    HnnData(Presentation base, std::string stable, IsoData iso)
        : _base(std::move(base)), _stable(std::move(stable)),
          _iso(std::move(iso)) {
      if (!is_valid_generator_name(_stable)) {
        throw InvalidName("invalid stable letter name '" + _stable + "'");
      }
      if (_base.alphabet.contains(_stable)) {
        throw StableLetterClash("stable letter '" + _stable
                                + "' already names a base generator");
      }
      if (!(_iso.domain().alphabet() == _base.alphabet)
          || !(_iso.codomain().alphabet() == _base.alphabet)) {
        throw AlphabetMismatch("associated subgroups must be over the base "
                               "alphabet");
      }
      _alphabet = _base.alphabet;
      _alphabet.add(_stable);
    }

    [[nodiscard]] Presentation const& base() const noexcept {
      return _base;
    }
    [[nodiscard]] std::string const& stable() const noexcept {
      return _stable;
    }
    [[nodiscard]] IsoData const& iso() const noexcept {
      return _iso;
    }
    //! Base alphabet followed by the stable letter.
    [[nodiscard]] Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }
    [[nodiscard]] gen_index stable_index() const noexcept {
      return static_cast<gen_index>(_base.alphabet.size());
    }

   private:
    Presentation _base;
    std::string  _stable;
    IsoData      _iso;
    Alphabet     _alphabet;
  };

  struct MultiHnnMember {
    std::string stable;
    IsoData     iso;
  };

  class MultiHnnData {
   public:
    MultiHnnData(Presentation base, std::vector<MultiHnnMember> family)
        : _base(std::move(base)), _family(std::move(family)) {
      Alphabet seen = _base.alphabet;
      for (auto const& m : _family) {
        if (seen.contains(m.stable)) {
          throw StableLetterClash("stable letter '" + m.stable
                                  + "' is not fresh");
        }
        seen.add(m.stable);
        if (!(m.iso.domain().alphabet() == _base.alphabet)
            || !(m.iso.codomain().alphabet() == _base.alphabet)) {
          throw AlphabetMismatch("associated subgroups must be over the base "
                                 "alphabet");
        }
      }
    }

    [[nodiscard]] Presentation const& base() const noexcept {
      return _base;
    }
    [[nodiscard]] std::vector<MultiHnnMember> const& family() const noexcept {
      return _family;
    }

   private:
    Presentation                _base;
    std::vector<MultiHnnMember> _family;
  };

  namespace detail {
    // p plus a stable letter t and relators t^-1 a_i t phi(a_i)^-1. Words of
    // iso are over a prefix of p's alphabet, so indices carry over.
    inline Presentation adjoin_stable(Presentation const& p,
                                      std::string const&  stable,
                                      IsoData const&      iso) {
      if (p.alphabet.contains(stable)) {
        throw StableLetterClash("stable letter '" + stable + "' is not fresh");
      }
      Presentation out = p;
      auto         t   = out.alphabet.add(stable);
      auto const&  a   = iso.domain().basis();
      for (std::size_t i = 0; i < a.size(); ++i) {
        out.relators.push_back(multiply({Word::generator(t, -1), a[i],
                                         Word::generator(t),
                                         invert(iso.forward()[i])}));
      }
      return out;
    }
  }  // namespace detail

  inline Presentation hnn_presentation(HnnData const& d) {
    return detail::adjoin_stable(d.base(), d.stable(), d.iso());
  }

  inline Presentation multi_hnn_presentation(MultiHnnData const& d) {
    Presentation p = d.base();
    for (auto const& m : d.family()) {
      p = detail::adjoin_stable(p, m.stable, m.iso);
    }
    return p;
  }

  ////////////////////////////////////////////////////////////////////////
  // Britton reduction
  ////////////////////////////////////////////////////////////////////////

  //! Removes pinches t^-1 u t (u in A, replaced by phi(u)) and t u t^-1
  //! (u in B, replaced by phi^-1(u)) until none is left. The leftmost pinch is
  //! always applied first, with u the whole base run between the two stable
  //! letters.
  inline Word britton_reduce(HnnData const& d, Word const& w) {
    if (!d.iso().decidable()) {
      throw UnsupportedClass("Britton reduction needs decidable associated "
                             "subgroups");
    }
    auto const t = d.stable_index();
    for (auto const& s : w.syllables()) {
      if (s.gen > t) {
        throw OracleFailure("word uses a generator outside base + stable");
      }
    }
    auto cur = free_reduce(w);
    while (true) {
      auto const syl = cur.syllables();
      std::optional<std::size_t> prev;
      bool                       applied = false;
      for (std::size_t q = 0; q < syl.size() && !applied; ++q) {
        if (syl[q].gen != t) {
          continue;
        }
        if (prev) {
          auto p = *prev;
          Word u(std::vector<Syllable>(syl.begin() + p + 1, syl.begin() + q));
          std::optional<Word> image;
          std::int64_t        dp = 0, dq = 0;
          if (syl[p].exp < 0 && syl[q].exp > 0) {
            if (d.iso().domain().contains(u)) {
              image = d.iso().map_forward(u);
              dp = 1, dq = -1;
            }
          } else if (syl[p].exp > 0 && syl[q].exp < 0) {
            if (d.iso().codomain().contains(u)) {
              image = d.iso().map_backward(u);
              dp = -1, dq = 1;
            }
          }
          if (image) {
            std::vector<Syllable> out(syl.begin(), syl.begin() + p);
            if (syl[p].exp + dp != 0) {
              out.push_back({t, syl[p].exp + dp});
            }
            auto const& img = image->syllables();
            out.insert(out.end(), img.begin(), img.end());
            if (syl[q].exp + dq != 0) {
              out.push_back({t, syl[q].exp + dq});
            }
            out.insert(out.end(), syl.begin() + q + 1, syl.end());
            cur     = free_reduce(Word(std::move(out)));
            applied = true;
          }
        }
        prev = q;
      }
      if (!applied) {
        return cur;
      }
    }
  }

  //! Decides w = 1 in the base group (words over the base alphabet).
  using BaseWordProblem = std::function<bool(Word const&)>;

  //! Word problem for the base group when it is free or carries a finite
  //! table through its associated-subgroup oracle.
  inline BaseWordProblem default_base_word_problem(HnnData const& d) {
    auto const& dom = d.iso().domain();
    if (dom.kind() == SubgroupOracle::Kind::finite) {
      auto table  = dom.table_ptr();
      auto images = dom.table_images();
      return [table, images](Word const& w) {
        return table->evaluate(w, images) == table->identity();
      };
    }
    if (d.base().is_free()) {
      return [](Word const& w) { return free_reduce(w).empty(); };
    }
    throw UnsupportedClass("no word-problem oracle for this base group");
  }

  inline bool is_trivial_hnn(HnnData const&         d,
                             Word const&            w,
                             BaseWordProblem const& base_wp) {
    auto r = britton_reduce(d, w);
    for (auto const& s : r.syllables()) {
      if (s.gen == d.stable_index()) {
        return false;
      }
    }
    return base_wp(r);
  }

  inline bool is_trivial_hnn(HnnData const& d, Word const& w) {
    return is_trivial_hnn(d, w, default_base_word_problem(d));
  }

  ////////////////////////////////////////////////////////////////////////
  // Embedding witness
  ////////////////////////////////////////////////////////////////////////

  //! The amalgam K *_{U = V} L with K = G * <u>, L = G' * <v>,
  //! U = <G, u^-1 A u>, V = <G', v B v^-1>, identifying g with g' and
  //! u^-1 a u with v phi(a) v^-1; G*_phi embeds via g -> g, t -> u v.
  struct TheoremOneWitness {
    AmalgamData       amalgam;
    std::vector<Word> generator_images;  // base generator i -> word
    Word              stable_image;      // u v

    //! Image of a word over the HNN alphabet (base + stable).
    [[nodiscard]] Word map(Word const& w) const {
      auto images = generator_images;
      images.push_back(stable_image);
      return substitute(w, images);
    }
  };

  inline TheoremOneWitness theorem_one_witness(HnnData const& d) {
    auto const& g_alpha = d.base().alphabet;
    auto const  n       = static_cast<gen_index>(g_alpha.size());

    Alphabet all = d.alphabet();  // keeps the new names clear of t as well
    Alphabet k_alpha = g_alpha;
    auto     u_name  = all.fresh_name("u");
    all.add(u_name);
    auto u = k_alpha.add(u_name);

    Alphabet l_alpha;
    for (auto const& name : g_alpha.names()) {
      auto c = all.fresh_name(name + "_R");
      all.add(c);
      l_alpha.add(c);
    }
    auto v_name = all.fresh_name("v");
    all.add(v_name);
    auto v = l_alpha.add(v_name);
    if (k_alpha.contains(v_name) || l_alpha.contains(u_name)) {
      throw StableLetterClash("cannot choose fresh letters u, v");
    }

    // G' words are G words with the same indices (copies occupy 0..n-1)
    Presentation k_pres(k_alpha, d.base().relators);
    Presentation l_pres(l_alpha, d.base().relators);

    auto conj = [](Word const& x, gen_index c, bool inverse_first) {
      auto cw = Word::generator(c);
      return inverse_first ? multiply({invert(cw), x, cw})
                           : multiply({cw, x, invert(cw)});
    };

    auto const&       a_basis = d.iso().domain().basis();
    auto const&       b_basis = d.iso().codomain().basis();
    std::vector<Word> u_gens, v_gens, fwd, bwd;
    for (gen_index i = 0; i < n; ++i) {
      u_gens.push_back(Word::generator(i));
      fwd.push_back(Word::generator(i));
    }
    for (std::size_t i = 0; i < a_basis.size(); ++i) {
      u_gens.push_back(conj(a_basis[i], u, true));
      fwd.push_back(conj(d.iso().forward()[i], v, false));
    }
    for (gen_index i = 0; i < n; ++i) {
      v_gens.push_back(Word::generator(i));
      bwd.push_back(Word::generator(i));
    }
    for (std::size_t j = 0; j < b_basis.size(); ++j) {
      v_gens.push_back(conj(b_basis[j], v, false));
      bwd.push_back(conj(d.iso().backward()[j], u, true));
    }

    bool const free_base = d.base().is_free() && d.iso().decidable()
                           && d.iso().domain().kind() == SubgroupOracle::Kind::free;
    auto dom = free_base ? SubgroupOracle::free(k_alpha, u_gens)
                         : SubgroupOracle::declared(k_alpha, u_gens);
    auto cod = free_base ? SubgroupOracle::free(l_alpha, v_gens)
                         : SubgroupOracle::declared(l_alpha, v_gens);
    if (dom.basis().size() != u_gens.size()
        || cod.basis().size() != v_gens.size()) {
      throw InvalidIso("witness subgroups are not free on the expected bases");
    }
    auto fwd_b = align_to_basis(dom, u_gens, fwd);
    auto bwd_b = align_to_basis(cod, v_gens, bwd);
    auto iso   = IsoData::make(std::move(dom), std::move(cod), std::move(fwd_b),
                               std::move(bwd_b));

    AmalgamData       amalgam(std::move(k_pres), std::move(l_pres), std::move(iso));
    std::vector<Word> g_images;
    for (gen_index i = 0; i < n; ++i) {
      g_images.push_back(Word::generator(i));
    }
    auto t_image = multiply(Word::generator(u),
                            Word::generator(amalgam.right_offset() + v));
    return {std::move(amalgam), std::move(g_images), std::move(t_image)};
  }

}  // namespace hnnforge

#endif  // HNNFORGE_HNN_HPP_
