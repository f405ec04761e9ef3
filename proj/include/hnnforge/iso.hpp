#ifndef HNNFORGE_ISO_HPP_
#define HNNFORGE_ISO_HPP_

// Isomorphisms between two subgroups, given basis-to-basis.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "oracles.hpp"
#include "words.hpp"

namespace hnnforge {

  namespace detail {
    // Whether u and v are the same element of the group an oracle lives in.
    inline bool same_element(SubgroupOracle const& o,
                             Word const&           u,
                             Word const&           v) {
      if (o.kind() == SubgroupOracle::Kind::finite) {
        auto const& t = o.table();
        return t.evaluate(u, o.table_images()) == t.evaluate(v, o.table_images());
      }
      return free_reduce(u) == free_reduce(v);
    }

    inline void check_alphabet(Word const& w, Alphabet const& a,
                               char const* what) {
      for (auto const& s : w.syllables()) {
        if (s.gen >= a.size()) {
          throw AlphabetMismatch(std::string(what)
                                 + " uses a generator outside its alphabet");
        }
      }
    }
  }  // namespace detail

  //! Images given per generator in gens, reindexed by the oracle's basis.
  //! Each basis element must be one of gens or its inverse.
  inline std::vector<Word> align_to_basis(SubgroupOracle const&    o,
                                          std::vector<Word> const& gens,
                                          std::vector<Word> const& images) {
    if (gens.size() != images.size()) {
      throw InvalidIso("need one image per generator");
    }
    std::vector<Word> out;
    for (auto const& b : o.basis()) {
      bool found = false;
      for (std::size_t i = 0; i < gens.size() && !found; ++i) {
        if (free_reduce(gens[i]) == b) {
          out.push_back(images[i]);
          found = true;
        } else if (free_reduce(gens[i]) == invert(b)) {
          out.push_back(invert(images[i]));
          found = true;
        }
      }
      if (!found) {
        throw InvalidIso("subgroup generators are not a free basis; give a "
                         "reduced basis so images can be matched");
      }
    }
    return out;
  }

  //! An isomorphism A -> B. forward[i] is the image (a word over B's
  //! alphabet) of the i-th basis element of A, and backward[j] the image
  //! over A's alphabet of the j-th basis element of B. Consistency is
  //! checked once, at construction.
  class IsoData {
   public:
    static IsoData make(SubgroupOracle    domain,
                        SubgroupOracle    codomain,
                        std::vector<Word> forward,
                        std::vector<Word> backward) {
      IsoData d(std::move(domain), std::move(codomain), std::move(forward),
                std::move(backward));
      d.verify();
      d.prepare();
      return d;
    }

    //! Derives backward images from forward ones. Always possible for finite
    //! subgroups; for free or declared ones the forward images must be the
    //! codomain basis up to order and inversion.
    static IsoData from_forward(SubgroupOracle    domain,
                                SubgroupOracle    codomain,
                                std::vector<Word> forward) {
      if (forward.size() != domain.basis().size()) {
        throw InvalidIso("need one forward image per domain basis element");
      }
      std::vector<Word> backward;
      auto const&       cb = codomain.basis();
      if (domain.kind() == SubgroupOracle::Kind::finite
          && codomain.kind() == SubgroupOracle::Kind::finite) {
        backward = finite_inverse(domain, codomain, forward);
      } else {
        for (auto const& y : cb) {
          std::optional<Word> img;
          for (std::size_t i = 0; i < forward.size() && !img; ++i) {
            auto f = free_reduce(forward[i]);
            if (f == free_reduce(y)) {
              img = domain.basis()[i];
            } else if (f == invert(free_reduce(y))) {
              img = invert(domain.basis()[i]);
            }
          }
          if (!img) {
            throw InvalidIso("cannot derive backward images: forward images "
                             "are not the codomain basis; give them explicitly");
          }
          backward.push_back(*img);
        }
      }
      return make(std::move(domain), std::move(codomain), std::move(forward),
                  std::move(backward));
    }

    [[nodiscard]] SubgroupOracle const& domain() const noexcept {
      return _domain;
    }
    [[nodiscard]] SubgroupOracle const& codomain() const noexcept {
      return _codomain;
    }
    [[nodiscard]] std::vector<Word> const& forward() const noexcept {
      return _forward;
    }
    [[nodiscard]] std::vector<Word> const& backward() const noexcept {
      return _backward;
    }
    [[nodiscard]] bool decidable() const noexcept {
      return _domain.kind() != SubgroupOracle::Kind::declared
             && _codomain.kind() != SubgroupOracle::Kind::declared;
    }

    //! phi(a) for a in A, over the codomain alphabet.
    [[nodiscard]] Word map_forward(Word const& a) const {
      return substitute(_domain.rewrite_in_basis(a), _forward);
    }

    //! phi^-1(b) for b in B, over the domain alphabet.
    [[nodiscard]] Word map_backward(Word const& b) const {
      return substitute(_codomain.rewrite_in_basis(b), _backward);
    }

    //! Codomain basis letters -> domain basis letters.
    [[nodiscard]] Word codomain_to_domain_letters(Word const& y) const {
      return substitute(y, _codomain_in_domain);
    }

   private:
    IsoData(SubgroupOracle    domain,
            SubgroupOracle    codomain,
            std::vector<Word> forward,
            std::vector<Word> backward)
        : _domain(std::move(domain)), _codomain(std::move(codomain)),
          _forward(std::move(forward)), _backward(std::move(backward)) {
      for (auto& w : _forward) {
        w = free_reduce(w);
      }
      for (auto& w : _backward) {
        w = free_reduce(w);
      }
    }

    static std::vector<Word> finite_inverse(SubgroupOracle const&    domain,
                                            SubgroupOracle const&    codomain,
                                            std::vector<Word> const& forward) {
      auto const& ta = domain.table();
      auto const& tb = codomain.table();
      std::vector<FiniteGroupTable::element_type> els;
      for (auto const& g : domain.basis()) {
        els.push_back(ta.evaluate(g, domain.table_images()));
      }
      detail::FiniteSubgroupWords words(ta, els);
      std::vector<std::optional<Word>> preimage(tb.order());
      for (std::size_t x = 0; x < ta.order(); ++x) {
        if (words.word[x]) {
          auto y = tb.evaluate(substitute(*words.word[x], forward),
                               codomain.table_images());
          if (!preimage[y]) {
            preimage[y] = domain.expand(*words.word[x]);
          }
        }
      }
      std::vector<Word> backward;
      for (auto const& y : codomain.basis()) {
        auto const& p = preimage[tb.evaluate(y, codomain.table_images())];
        if (!p) {
          throw InvalidIso("forward map is not onto the codomain subgroup");
        }
        backward.push_back(*p);
      }
      return backward;
    }

    void verify() const {
      if (_forward.size() != _domain.basis().size()) {
        throw InvalidIso("need one forward image per domain basis element");
      }
      if (_backward.size() != _codomain.basis().size()) {
        throw InvalidIso("need one backward image per codomain basis element");
      }
      for (auto const& w : _forward) {
        detail::check_alphabet(w, _codomain.alphabet(), "forward image");
      }
      for (auto const& w : _backward) {
        detail::check_alphabet(w, _domain.alphabet(), "backward image");
      }
      if (!decidable()) {
        return;
      }
      for (auto const& w : _forward) {
        if (!_codomain.contains(w)) {
          throw InvalidIso("forward image does not lie in the codomain");
        }
      }
      for (auto const& w : _backward) {
        if (!_domain.contains(w)) {
          throw InvalidIso("backward image does not lie in the domain");
        }
      }
      if (_domain.kind() == SubgroupOracle::Kind::finite
          || _codomain.kind() == SubgroupOracle::Kind::finite) {
        verify_finite_homomorphism();
      }
      for (std::size_t i = 0; i < _forward.size(); ++i) {
        auto back = substitute(_codomain.rewrite_in_basis(_forward[i]), _backward);
        if (!detail::same_element(_domain, back, _domain.basis()[i])) {
          throw InvalidIso("backward(forward(a_" + std::to_string(i + 1)
                           + ")) != a_" + std::to_string(i + 1));
        }
      }
      for (std::size_t j = 0; j < _backward.size(); ++j) {
        auto fwd = substitute(_domain.rewrite_in_basis(_backward[j]), _forward);
        if (!detail::same_element(_codomain, fwd, _codomain.basis()[j])) {
          throw InvalidIso("forward(backward(b_" + std::to_string(j + 1)
                           + ")) != b_" + std::to_string(j + 1));
        }
      }
    }

    // The generator assignment must extend to an injective homomorphism of
    // the finite subgroups; checked edge by edge on the Cayley graph of A.
    void verify_finite_homomorphism() const {
      if (_domain.kind() != SubgroupOracle::Kind::finite
          || _codomain.kind() != SubgroupOracle::Kind::finite) {
        // A finite nontrivial subgroup cannot be isomorphic to a subgroup of
        // a free group; the trivial case passes the round-trip check.
        if (_domain.finite_order() != std::optional<std::size_t>(1)
            && _codomain.finite_order() != std::optional<std::size_t>(1)) {
          throw InvalidIso("finite and free subgroups are not isomorphic");
        }
        return;
      }
      auto const& ta = _domain.table();
      auto const& tb = _codomain.table();
      std::vector<FiniteGroupTable::element_type> ga, gb;
      for (std::size_t i = 0; i < _forward.size(); ++i) {
        ga.push_back(ta.evaluate(_domain.basis()[i], _domain.table_images()));
        gb.push_back(tb.evaluate(_forward[i], _codomain.table_images()));
      }
      std::vector<std::optional<FiniteGroupTable::element_type>> phi(ta.order());
      std::vector<FiniteGroupTable::element_type> queue{ta.identity()};
      phi[ta.identity()] = tb.identity();
      for (std::size_t q = 0; q < queue.size(); ++q) {
        auto x = queue[q];
        for (std::size_t i = 0; i < ga.size(); ++i) {
          auto y  = ta.product(x, ga[i]);
          auto fy = tb.product(*phi[x], gb[i]);
          if (!phi[y]) {
            phi[y] = fy;
            queue.push_back(y);
          } else if (*phi[y] != fy) {
            throw InvalidIso("generator images do not define a homomorphism");
          }
        }
      }
      std::vector<bool> hit(tb.order(), false);
      for (auto x : queue) {
        if (hit[*phi[x]]) {
          throw InvalidIso("generator images do not define an injective map");
        }
        hit[*phi[x]] = true;
      }
      if (_codomain.finite_order() != std::optional<std::size_t>(queue.size())) {
        throw InvalidIso("subgroups have different orders");
      }
    }

    void prepare() {
      if (!decidable()) {
        return;
      }
      for (auto const& b : _backward) {
        _codomain_in_domain.push_back(_domain.rewrite_in_basis(b));
      }
    }

    SubgroupOracle    _domain;
    SubgroupOracle    _codomain;
    std::vector<Word> _forward;
    std::vector<Word> _backward;
    std::vector<Word> _codomain_in_domain;
  };

}  // namespace hnnforge

#endif  // HNNFORGE_ISO_HPP_
