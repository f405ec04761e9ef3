#ifndef HNNFORGE_AMALGAM_HPP_
#define HNNFORGE_AMALGAM_HPP_

// Amalgamated free products V0 *_U V1: presentations, and the alternating
// right-coset normal form deciding the word problem when both factors are
// free or finite.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsl.hpp"
#include "error.hpp"
#include "iso.hpp"
#include "oracles.hpp"
#include "words.hpp"

namespace hnnforge {

  enum class Side { left, right };

  //! V0 = left, V1 = right, and the identification of U0 <= V0 with
  //! U1 <= V1 given as an IsoData whose domain is over the left alphabet.
  class AmalgamData {
   public:
    AmalgamData(Presentation left, Presentation right, IsoData iso)
        : _left(std::move(left)), _right(std::move(right)),
          _iso(std::move(iso)) {
      for (auto const& n : _right.alphabet.names()) {
        if (_left.alphabet.contains(n)) {
          throw AlphabetCollision("generator '" + n
                                  + "' occurs in both factors");
        }
      }
      if (!(_iso.domain().alphabet() == _left.alphabet)) {
        throw AlphabetMismatch("amalgamated subgroup (left) is not over the "
                               "left factor's alphabet");
      }
      if (!(_iso.codomain().alphabet() == _right.alphabet)) {
        throw AlphabetMismatch("amalgamated subgroup (right) is not over the "
                               "right factor's alphabet");
      }
      for (auto const& n : _left.alphabet.names()) {
        _union.add(n);
      }
      for (auto const& n : _right.alphabet.names()) {
        _union.add(n);
      }
    }

    [[nodiscard]] Presentation const& left() const noexcept {
      return _left;
    }
    [[nodiscard]] Presentation const& right() const noexcept {
      return _right;
    }
    [[nodiscard]] IsoData const& iso() const noexcept {
      return _iso;
    }
    //! Left generators followed by right generators.
    [[nodiscard]] Alphabet const& alphabet() const noexcept {
      return _union;
    }
    [[nodiscard]] gen_index right_offset() const noexcept {
      return static_cast<gen_index>(_left.alphabet.size());
    }

    //! A right-factor word re-indexed into the union alphabet.
    [[nodiscard]] Word lift_right(Word const& w) const {
      std::vector<Syllable> out;
      for (auto const& s : w.syllables()) {
        out.push_back({s.gen + right_offset(), s.exp});
      }
      return Word(std::move(out));
    }

   private:
    Presentation _left;
    Presentation _right;
    IsoData      _iso;
    Alphabet     _union;
  };

  inline Presentation amalgam_presentation(AmalgamData const& d) {
    std::vector<Word> rels = d.left().relators;
    for (auto const& r : d.right().relators) {
      rels.push_back(d.lift_right(r));
    }
    auto const& basis = d.iso().domain().basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      rels.push_back(
          multiply(basis[i], invert(d.lift_right(d.iso().forward()[i]))));
    }
    return Presentation(d.alphabet(), std::move(rels));
  }

  struct NormalFormFactor {
    Side side;
    Word word;  // over the union alphabet

    bool operator==(NormalFormFactor const&) const = default;
  };

  //! prefix (a word in the domain basis letters of the amalgamated subgroup)
  //! followed by strictly alternating right-coset representatives, none in
  //! the amalgamated subgroup.
  struct NormalForm {
    Word                          prefix;
    std::vector<NormalFormFactor> factors;

    bool operator==(NormalForm const&) const = default;
  };

  namespace detail {

    // One factor of the amalgam: canonical words for its elements, membership
    // in its copy of U, right-coset splitting, and conversion between its
    // words and the abstract U-words in domain basis letters.
    class FactorGroup {
     public:
      FactorGroup(Presentation const& p, IsoData const& iso, Side side)
          : _iso(&iso), _side(side),
            _oracle(side == Side::left ? &iso.domain() : &iso.codomain()) {
        if (_oracle->kind() == SubgroupOracle::Kind::finite) {
          _finite = true;
          init_finite();
        } else if (_oracle->kind() == SubgroupOracle::Kind::free
                   && p.is_free()) {
          _finite = false;
        } else {
          throw UnsupportedFactorClass(
              "normal forms need free or finite factors");
        }
      }

      [[nodiscard]] Word canon(Word const& w) const {
        if (!_finite) {
          return free_reduce(w);
        }
        return *_words[element(w)];
      }

      [[nodiscard]] bool is_identity(Word const& w) const {
        if (!_finite) {
          return free_reduce(w).empty();
        }
        return element(w) == _table->identity();
      }

      [[nodiscard]] bool in_u(Word const& w) const {
        if (!_finite) {
          return _oracle->stallings().accepts(w);
        }
        return _in_u[element(w)];
      }

      // side word (in U) -> U-word in domain basis letters
      [[nodiscard]] Word to_u(Word const& w) const {
        auto b = _oracle->rewrite_in_basis(w);
        return _side == Side::left ? b : _iso->codomain_to_domain_letters(b);
      }

      // U-word in domain basis letters -> side word
      [[nodiscard]] Word from_u(Word const& u) const {
        return _side == Side::left ? _iso->domain().expand(u)
                                   : substitute(u, _iso->forward());
      }

      // w = u * rep with u in U (returned as a side word), rep the designated
      // shortlex-least element of the right coset U w.
      [[nodiscard]] std::pair<Word, Word> split(Word const& w) const {
        if (!_finite) {
          auto r = _oracle->stallings().split_right_coset(w);
          return {multiply(w, invert(r.representative)), r.representative};
        }
        auto x   = element(w);
        auto rep = _coset_rep[x];
        return {*_words[_table->product(x, _table->inverse(rep))], *_words[rep]};
      }

     private:
      [[nodiscard]] FiniteGroupTable::element_type element(Word const& w) const {
        return _table->evaluate(w, _oracle->table_images());
      }

      void init_finite() {
        _table       = _oracle->table_ptr();
        auto const n = _table->order();
        // shortlex words over the factor's own generators
        std::vector<FiniteGroupTable::element_type> gens(
            _oracle->table_images().begin(), _oracle->table_images().end());
        FiniteSubgroupWords all(*_table, gens);
        _words.resize(n);
        for (std::size_t x = 0; x < n; ++x) {
          if (all.word[x]) {
            // basis letters of `all` are the factor generators themselves
            _words[x] = *all.word[x];
          }
        }
        _in_u.assign(n, false);
        std::vector<FiniteGroupTable::element_type> u_elems;
        for (std::size_t x = 0; x < n; ++x) {
          if (_words[x] && _oracle->contains(*_words[x])) {
            _in_u[x] = true;
            u_elems.push_back(static_cast<FiniteGroupTable::element_type>(x));
          }
        }
        _coset_rep.assign(n, 0);
        std::vector<bool> done(n, false);
        for (std::size_t x = 0; x < n; ++x) {
          if (done[x] || !_words[x]) {
            continue;
          }
          auto                           ex   = static_cast<FiniteGroupTable::element_type>(x);
          FiniteGroupTable::element_type best = ex;
          for (auto u : u_elems) {
            auto y = _table->product(u, ex);
            if (shortlex_less(*_words[y], *_words[best])) {
              best = y;
            }
          }
          for (auto u : u_elems) {
            auto y        = _table->product(u, ex);
            done[y]       = true;
            _coset_rep[y] = best;
          }
        }
      }

      IsoData const*        _iso;
      Side                  _side;
      SubgroupOracle const* _oracle;
      bool                  _finite = false;

      std::shared_ptr<FiniteGroupTable const>     _table;
      std::vector<std::optional<Word>>            _words;
      std::vector<bool>                           _in_u;
      std::vector<FiniteGroupTable::element_type> _coset_rep;
    };

  }  // namespace detail

  //! Word-problem and normal-form solver for one amalgam. Construction does
  //! the per-factor precomputation; queries are const and thread-safe.
  class AmalgamSolver {
   public:
    explicit AmalgamSolver(AmalgamData const& d)
        : _data(&d),
          _left(d.left(), d.iso(), Side::left),
          _right(d.right(), d.iso(), Side::right) {}

    //! Reduced alternating sequence: factors none of which lie in U, plus a
    //! U-word that is only non-trivial when there are no factors.
    struct Reduced {
      Word                          u;
      std::vector<NormalFormFactor> factors;  // side-local words
    };

    [[nodiscard]] Reduced reduce(Word const& w) const {
      auto const off = _data->right_offset();
      Reduced    st;
      auto       process = [&](Side s, Word g) {
        auto const& fg = group(s);
        if (st.factors.empty()) {
          auto m = fg.canon(multiply(fg.from_u(st.u), g));
          st.u   = Word();
          if (fg.in_u(m)) {
            st.u = fg.to_u(m);
          } else {
            st.factors.push_back({s, std::move(m)});
          }
          return;
        }
        auto& top = st.factors.back();
        if (top.side == s) {
          auto m = fg.canon(multiply(top.word, g));
          if (!fg.in_u(m)) {
            top.word = std::move(m);
            return;
          }
          auto u = fg.to_u(m);
          st.factors.pop_back();
          if (st.factors.empty()) {
            st.u = std::move(u);
          } else {
            auto& nt  = st.factors.back();
            auto const& og = group(nt.side);
            nt.word   = og.canon(multiply(nt.word, og.from_u(u)));
          }
          return;
        }
        if (fg.in_u(g)) {
          auto const& og = group(top.side);
          top.word = og.canon(multiply(top.word, og.from_u(fg.to_u(g))));
        } else {
          st.factors.push_back({s, fg.canon(g)});
        }
      };

      auto                  rw = free_reduce(w);
      std::vector<Syllable> run;
      std::optional<Side>   run_side;
      auto flush = [&] {
        if (run_side) {
          process(*run_side, Word(std::move(run)));
        }
        run.clear();
      };
      for (auto const& syl : rw.syllables()) {
        if (syl.gen >= _data->alphabet().size()) {
          throw AlphabetMismatch("word uses a generator outside the amalgam");
        }
        Side s = syl.gen < off ? Side::left : Side::right;
        if (run_side != s) {
          flush();
          run_side = s;
        }
        run.push_back(s == Side::left ? syl
                                      : Syllable{syl.gen - off, syl.exp});
      }
      flush();
      return st;
    }

    [[nodiscard]] bool is_trivial(Word const& w) const {
      auto r = reduce(w);
      return r.factors.empty() && _left.is_identity(_left.from_u(r.u));
    }

    [[nodiscard]] NormalForm normal_form(Word const& w) const {
      auto       r = reduce(w);
      NormalForm nf;
      if (r.factors.empty()) {
        nf.prefix = canonical_u(r.u);
        return nf;
      }
      Word carry;  // U-word to be multiplied on the right of the next factor
      nf.factors.resize(r.factors.size());
      for (std::size_t i = r.factors.size(); i-- > 0;) {
        auto const& f       = r.factors[i];
        auto const& fg      = group(f.side);
        auto        x       = fg.canon(multiply(f.word, fg.from_u(carry)));
        auto [u_part, rep]  = fg.split(x);
        carry               = fg.to_u(u_part);
        nf.factors[i].side  = f.side;
        nf.factors[i].word  = f.side == Side::left ? rep : _data->lift_right(rep);
      }
      nf.prefix = canonical_u(carry);
      return nf;
    }

    //! Prefix and factors multiplied back together, over the union alphabet.
    [[nodiscard]] Word evaluate(NormalForm const& nf) const {
      Word w = _left.from_u(nf.prefix);
      for (auto const& f : nf.factors) {
        w = multiply(w, f.word);
      }
      return w;
    }

   private:
    [[nodiscard]] detail::FactorGroup const& group(Side s) const {
      return s == Side::left ? _left : _right;
    }

    [[nodiscard]] Word canonical_u(Word const& u) const {
      return _data->iso().domain().rewrite_in_basis(_left.from_u(u));
    }

    AmalgamData const*  _data;
    detail::FactorGroup _left;
    detail::FactorGroup _right;
  };

  inline NormalForm normal_form(AmalgamData const& d, Word const& w) {
    return AmalgamSolver(d).normal_form(w);
  }

  inline bool is_trivial_amalgam(AmalgamData const& d, Word const& w) {
    return AmalgamSolver(d).is_trivial(w);
  }

  inline json normal_form_to_json(AmalgamData const& d, NormalForm const& nf) {
    json factors = json::array();
    for (auto const& f : nf.factors) {
      factors.push_back({{"side", f.side == Side::left ? "L" : "R"},
                         {"word", word_to_json(f.word, d.alphabet())}});
    }
    return json{{"prefix", word_to_json(d.iso().domain().expand(nf.prefix),
                                        d.alphabet())},
                {"factors", factors}};
  }

}  // namespace hnnforge

#endif  // HNNFORGE_AMALGAM_HPP_
