#ifndef HNNFORGE_ORACLES_HPP_
#define HNNFORGE_ORACLES_HPP_

// Subgroup membership and rewriting oracles: Stallings automata for finitely
// generated subgroups of free groups, multiplication tables for finite
// groups, and a uniform SubgroupOracle wrapper over both.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dsl.hpp"
#include "error.hpp"
#include "words.hpp"

namespace hnnforge {

  ////////////////////////////////////////////////////////////////////////
  // StallingsAutomaton
  ////////////////////////////////////////////////////////////////////////

  //! Folded, inverse-consistent labelled graph whose reduced closed paths at
  //! the base state (state 0) read exactly the subgroup it was built from.
  //! States are numbered by BFS from the base in letter order, so two
  //! automata for the same subgroup are equal as values.
  class StallingsAutomaton {
   public:
    using state_type                  = std::uint32_t;
    static constexpr state_type UNDEF = std::numeric_limits<state_type>::max();

    StallingsAutomaton() : StallingsAutomaton(0) {}
    explicit StallingsAutomaton(std::size_t rank)
        : _rank(rank), _delta(2 * rank, UNDEF), _tree_letter(1, 0),
          _tree_parent(1, UNDEF), _edge_basis(2 * rank, 0) {}

    static StallingsAutomaton build(std::size_t rank,
                                    std::span<Word const> gens);

    [[nodiscard]] std::size_t rank() const noexcept {
      return _rank;
    }
    [[nodiscard]] std::size_t num_states() const noexcept {
      return _rank == 0 ? 1 : _delta.size() / (2 * _rank);
    }
    [[nodiscard]] static constexpr state_type base() noexcept {
      return 0;
    }
    [[nodiscard]] state_type target(state_type s, letter_type l) const {
      return _delta[s * 2 * _rank + l];
    }

    //! Number of unoriented edges.
    [[nodiscard]] std::size_t num_edges() const {
      std::size_t n = 0;
      for (state_type s = 0; s < num_states(); ++s) {
        for (gen_index g = 0; g < _rank; ++g) {
          n += target(s, make_letter(g, false)) != UNDEF;
        }
      }
      return n;
    }

    [[nodiscard]] std::vector<Word> const& basis() const noexcept {
      return _basis;
    }

    //! Every state has every outgoing letter, i.e. the subgroup has finite
    //! index equal to num_states().
    [[nodiscard]] bool is_complete() const {
      return std::none_of(
          _delta.begin(), _delta.end(), [](state_type t) { return t == UNDEF; });
    }

    //! Shortlex-least word labelling a path from the base to s.
    [[nodiscard]] Word tree_path(state_type s) const {
      std::vector<letter_type> rev;
      while (s != base()) {
        rev.push_back(_tree_letter[s]);
        s = _tree_parent[s];
      }
      std::reverse(rev.begin(), rev.end());
      return from_letters(rev);
    }

    struct ReadResult {
      state_type  state;     // state reached
      std::size_t consumed;  // number of letters read
      Word        basis_word;
    };

    //! Reads the letters of w from the base as far as the automaton allows,
    //! collecting the non-tree edges crossed as basis letters.
    [[nodiscard]] ReadResult read(std::span<letter_type const> ls) const {
      std::vector<Syllable> stack;
      state_type            s = base();
      std::size_t           i = 0;
      for (; i < ls.size(); ++i) {
        if (letter_gen(ls[i]) >= _rank) {
          break;
        }
        auto t = target(s, ls[i]);
        if (t == UNDEF) {
          break;
        }
        auto b = _edge_basis[s * 2 * _rank + ls[i]];
        if (b != 0) {
          detail::push_reduced(
              stack,
              {static_cast<gen_index>(std::abs(b) - 1), b > 0 ? 1 : -1});
        }
        s = t;
      }
      return {s, i, Word(std::move(stack))};
    }

    [[nodiscard]] bool accepts(Word const& w) const {
      auto ls = letters(free_reduce(w));
      auto r  = read(ls);
      return r.consumed == ls.size() && r.state == base();
    }

    //! Word in basis letters x_0..x_{r-1} (x_j standing for basis()[j])
    //! equal to w, or nullopt if w is not in the subgroup.
    [[nodiscard]] std::optional<Word> rewrite(Word const& w) const {
      auto ls = letters(free_reduce(w));
      auto r  = read(ls);
      if (r.consumed != ls.size() || r.state != base()) {
        return std::nullopt;
      }
      return r.basis_word;
    }

    //! Decomposition g = u * rep with u in the subgroup H (given in basis
    //! letters) and rep the shortlex-least element of the right coset H g.
    struct CosetSplit {
      Word subgroup_part;
      Word representative;
    };

    [[nodiscard]] CosetSplit split_right_coset(Word const& g) const {
      auto ls = letters(free_reduce(g));
      auto r  = read(ls);
      // rep = tree_path(v) followed by the unread suffix; the concatenation
      // is reduced since the first unread letter is not readable at v.
      std::vector<letter_type> rep = letters(tree_path(r.state));
      rep.insert(rep.end(), ls.begin() + r.consumed, ls.end());
      return {r.basis_word, from_letters(rep)};
    }

    //! State reached from the base by reading w^-1 when the automaton is
    //! complete; identifies the left coset w H.
    [[nodiscard]] state_type left_coset_state(Word const& w) const {
      auto ls = letters(invert(free_reduce(w)));
      auto r  = read(ls);
      if (r.consumed != ls.size()) {
        throw UnsupportedClass("subgroup has infinite index");
      }
      return r.state;
    }

    [[nodiscard]] std::string to_dot(Alphabet const& alphabet) const {
      std::ostringstream os;
      os << "digraph stallings {\n  rankdir=LR;\n  0 [shape=doublecircle];\n";
      for (state_type s = 0; s < num_states(); ++s) {
        for (gen_index g = 0; g < _rank; ++g) {
          auto t = target(s, make_letter(g, false));
          if (t != UNDEF) {
            os << "  " << s << " -> " << t << " [label=\""
               << (g < alphabet.size() ? alphabet.name(g)
                                       : "#" + std::to_string(g))
               << "\"];\n";
          }
        }
      }
      os << "}\n";
      return os.str();
    }

    bool operator==(StallingsAutomaton const& that) const {
      return _rank == that._rank && _delta == that._delta;
    }

   private:
    std::size_t             _rank;
    std::vector<state_type> _delta;  // num_states x 2 * rank
    std::vector<letter_type> _tree_letter;
    std::vector<state_type>  _tree_parent;
    // +-(j + 1) if the edge is the basis edge j traversed forwards or
    // backwards, 0 for tree edges
    std::vector<std::int64_t> _edge_basis;
    std::vector<Word>         _basis;
  };

  namespace detail {

    // Union-find based folding with a FIFO worklist of pending merges.
    class Folder {
     public:
      std::uint32_t add_state() {
        _parent.push_back(static_cast<std::uint32_t>(_parent.size()));
        _out.emplace_back();
        return _parent.back();
      }

      std::uint32_t find(std::uint32_t x) {
        while (_parent[x] != x) {
          _parent[x] = _parent[_parent[x]];
          x          = _parent[x];
        }
        return x;
      }

      void add_edge(std::uint32_t s, letter_type l, std::uint32_t t) {
        attach(find(s), l, find(t));
        attach(find(t), letter_inv(l), find(s));
        fold();
      }

      void fold() {
        while (!_pending.empty()) {
          auto [x, y] = _pending.front();
          _pending.pop_front();
          merge(x, y);
        }
      }

      std::vector<std::map<letter_type, std::uint32_t>>& out() {
        return _out;
      }

     private:
      void attach(std::uint32_t s, letter_type l, std::uint32_t t) {
        auto it = _out[s].find(l);
        if (it == _out[s].end()) {
          _out[s].emplace(l, t);
        } else if (find(it->second) != find(t)) {
          _pending.emplace_back(it->second, t);
        }
      }

      void merge(std::uint32_t x, std::uint32_t y) {
        x = find(x);
        y = find(y);
        if (x == y) {
          return;
        }
        if (y < x) {
          std::swap(x, y);
        }
        _parent[y] = x;
        auto moved = std::move(_out[y]);
        _out[y].clear();
        for (auto const& [l, z] : moved) {
          attach(x, l, z);
        }
      }

      std::vector<std::uint32_t>                        _parent;
      std::vector<std::map<letter_type, std::uint32_t>> _out;
      std::deque<std::pair<std::uint32_t, std::uint32_t>> _pending;
    };

  }  // namespace detail

  inline StallingsAutomaton
  StallingsAutomaton::build(std::size_t rank, std::span<Word const> gens) {
    detail::Folder folder;
    auto           root = folder.add_state();
    for (auto const& g : gens) {
      auto ls = letters(free_reduce(g));
      if (ls.empty()) {
        continue;
      }
      for (auto l : ls) {
        if (letter_gen(l) >= rank) {
          throw AlphabetMismatch("generator word outside the alphabet");
        }
      }
      auto cur = root;
      for (std::size_t i = 0; i < ls.size(); ++i) {
        auto next = i + 1 == ls.size() ? root : folder.add_state();
        folder.add_edge(cur, ls[i], next);
        cur = folder.find(next);
      }
    }

    // BFS renumbering from the base in letter order
    std::map<std::uint32_t, state_type> id;
    std::vector<std::uint32_t>          order;
    std::vector<letter_type>            tree_letter{0};
    std::vector<state_type>             tree_parent{UNDEF};
    auto                                r0 = folder.find(root);
    id.emplace(r0, 0);
    order.push_back(r0);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (auto const& [l, z] : folder.out()[order[i]]) {
        auto fz = folder.find(z);
        if (!id.contains(fz)) {
          id.emplace(fz, static_cast<state_type>(order.size()));
          order.push_back(fz);
          tree_letter.push_back(l);
          tree_parent.push_back(static_cast<state_type>(i));
        }
      }
    }

    StallingsAutomaton result(rank);
    auto const         width = 2 * rank;
    result._delta.assign(order.size() * width, UNDEF);
    result._edge_basis.assign(order.size() * width, 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (auto const& [l, z] : folder.out()[order[i]]) {
        result._delta[i * width + l] = id.at(folder.find(z));
      }
    }
    result._tree_letter = std::move(tree_letter);
    result._tree_parent = std::move(tree_parent);

    auto is_tree_edge = [&](state_type s, letter_type l, state_type t) {
      return (t != 0 && result._tree_parent[t] == s
              && result._tree_letter[t] == l)
             || (s != 0 && result._tree_parent[s] == t
                 && result._tree_letter[s] == letter_inv(l));
    };

    struct Candidate {
      Word       word;
      state_type s;
      letter_type l;
    };
    std::vector<Candidate> cands;
    for (state_type s = 0; s < order.size(); ++s) {
      for (gen_index g = 0; g < rank; ++g) {
        auto l = make_letter(g, false);
        auto t = result.target(s, l);
        if (t == UNDEF || is_tree_edge(s, l, t)) {
          continue;
        }
        auto w = multiply({result.tree_path(s), Word::generator(g),
                           invert(result.tree_path(t))});
        cands.push_back({std::move(w), s, l});
      }
    }
    std::stable_sort(cands.begin(), cands.end(), [](auto const& x, auto const& y) {
      return shortlex_less(x.word, y.word);
    });
    for (std::size_t j = 0; j < cands.size(); ++j) {
      auto const& c = cands[j];
      auto        t = result.target(c.s, c.l);
      result._edge_basis[c.s * width + c.l] = static_cast<std::int64_t>(j) + 1;
      result._edge_basis[t * width + letter_inv(c.l)]
          = -(static_cast<std::int64_t>(j) + 1);
      result._basis.push_back(c.word);
    }
    return result;
  }

  inline StallingsAutomaton build_stallings(std::size_t           rank,
                                            std::span<Word const> gens) {
    return StallingsAutomaton::build(rank, gens);
  }

  ////////////////////////////////////////////////////////////////////////
  // FiniteGroupTable
  ////////////////////////////////////////////////////////////////////////

  //! Multiplication table of a finite group with named generator images.
  class FiniteGroupTable {
   public:
    using element_type                    = std::uint32_t;
    static constexpr std::size_t MAX_ORDER = 10'000;

    FiniteGroupTable(std::size_t                                order,
                     std::vector<element_type>                  product,
                     std::map<std::string, element_type>        generators)
        : _order(order), _product(std::move(product)),
          _generators(std::move(generators)) {
      validate();
    }

    //! Cyclic group of order n with generator name mapped to 1.
    static FiniteGroupTable cyclic(std::size_t n, std::string const& name) {
      std::vector<element_type> prod(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          prod[i * n + j] = static_cast<element_type>((i + j) % n);
        }
      }
      return FiniteGroupTable(n, std::move(prod),
                              {{name, static_cast<element_type>(n > 1)}});
    }

    static FiniteGroupTable from_json(json const& j) {
      if (!j.is_object() || !j.contains("order") || !j.contains("product")) {
        throw InvalidTable("table JSON needs \"order\" and \"product\"");
      }
      auto                      n = j.at("order").get<std::size_t>();
      std::vector<element_type> prod;
      auto const&               rows = j.at("product");
      if (!rows.is_array() || rows.size() != n) {
        throw InvalidTable("product must have `order` rows");
      }
      for (auto const& row : rows) {
        if (!row.is_array() || row.size() != n) {
          throw InvalidTable("product rows must have `order` entries");
        }
        for (auto const& x : row) {
          prod.push_back(x.get<element_type>());
        }
      }
      std::map<std::string, element_type> gens;
      if (j.contains("generators")) {
        for (auto const& [k, v] : j.at("generators").items()) {
          gens.emplace(k, v.get<element_type>());
        }
      }
      return FiniteGroupTable(n, std::move(prod), std::move(gens));
    }

    [[nodiscard]] json to_json() const {
      json rows = json::array();
      for (std::size_t i = 0; i < _order; ++i) {
        rows.push_back(std::vector<element_type>(
            _product.begin() + i * _order, _product.begin() + (i + 1) * _order));
      }
      return json{{"order", _order}, {"product", rows}, {"generators", _generators}};
    }

    [[nodiscard]] std::size_t order() const noexcept {
      return _order;
    }
    [[nodiscard]] element_type identity() const noexcept {
      return _identity;
    }
    [[nodiscard]] element_type product(element_type x, element_type y) const {
      return _product[x * _order + y];
    }
    [[nodiscard]] element_type inverse(element_type x) const {
      return _inverse[x];
    }
    [[nodiscard]] std::map<std::string, element_type> const&
    generator_images() const noexcept {
      return _generators;
    }

    [[nodiscard]] element_type power(element_type x, std::int64_t k) const {
      if (k < 0) {
        x = inverse(x);
        k = -k;
      }
      k %= static_cast<std::int64_t>(_order);
      element_type result = _identity;
      while (k > 0) {
        if (k & 1) {
          result = product(result, x);
        }
        x = product(x, x);
        k >>= 1;
      }
      return result;
    }

    //! Images of the generators of alphabet, by generator index.
    [[nodiscard]] std::vector<element_type>
    bind(Alphabet const& alphabet) const {
      std::vector<element_type> out;
      for (auto const& name : alphabet.names()) {
        auto it = _generators.find(name);
        if (it == _generators.end()) {
          throw MissingImage("table has no image for generator '" + name + "'");
        }
        out.push_back(it->second);
      }
      return out;
    }

    [[nodiscard]] element_type
    evaluate(Word const& w, std::span<element_type const> images) const {
      element_type x = _identity;
      for (auto const& s : w.syllables()) {
        if (s.gen >= images.size()) {
          throw MissingImage("no table image for generator #"
                             + std::to_string(s.gen));
        }
        x = product(x, power(images[s.gen], s.exp));
      }
      return x;
    }

    [[nodiscard]] element_type evaluate(Word const&     w,
                                        Alphabet const& alphabet) const {
      std::vector<element_type> images(alphabet.size(), _identity);
      std::vector<bool>         known(alphabet.size(), false);
      for (gen_index i = 0; i < alphabet.size(); ++i) {
        auto it = _generators.find(alphabet.name(i));
        if (it != _generators.end()) {
          images[i] = it->second;
          known[i]  = true;
        }
      }
      for (auto const& s : w.syllables()) {
        if (!known.at(s.gen)) {
          throw MissingImage("table has no image for generator '"
                             + alphabet.name(s.gen) + "'");
        }
      }
      return evaluate(w, images);
    }

    //! Closure of the given elements under multiplication.
    [[nodiscard]] std::vector<element_type>
    generated_subgroup(std::span<element_type const> gens) const {
      std::vector<bool>         seen(_order, false);
      std::vector<element_type> elems{_identity};
      seen[_identity] = true;
      for (std::size_t i = 0; i < elems.size(); ++i) {
        for (auto g : gens) {
          for (auto y : {product(elems[i], g), product(elems[i], inverse(g))}) {
            if (!seen[y]) {
              seen[y] = true;
              elems.push_back(y);
            }
          }
        }
      }
      std::sort(elems.begin(), elems.end());
      return elems;
    }

   private:
    void validate() {
      if (_order == 0 || _order > MAX_ORDER) {
        throw InvalidTable("group order must lie in [1, 10000]");
      }
      if (_product.size() != _order * _order) {
        throw InvalidTable("product table has the wrong size");
      }
      for (auto x : _product) {
        if (x >= _order) {
          throw InvalidTable("product entry out of range");
        }
      }
      for (auto const& [name, x] : _generators) {
        if (x >= _order) {
          throw InvalidTable("generator image out of range for '" + name + "'");
        }
      }
      std::optional<element_type> id;
      for (element_type e = 0; e < _order && !id; ++e) {
        bool ok = true;
        for (element_type x = 0; x < _order && ok; ++x) {
          ok = product(e, x) == x && product(x, e) == x;
        }
        if (ok) {
          id = e;
        }
      }
      if (!id) {
        throw InvalidTable("table has no identity");
      }
      _identity = *id;
      _inverse.assign(_order, 0);
      for (element_type x = 0; x < _order; ++x) {
        bool found = false;
        for (element_type y = 0; y < _order && !found; ++y) {
          if (product(x, y) == _identity && product(y, x) == _identity) {
            _inverse[x] = y;
            found       = true;
          }
        }
        if (!found) {
          throw InvalidTable("element " + std::to_string(x)
                             + " has no inverse");
        }
      }
      // Full triple check up to order 64; beyond that a deterministic
      // stride sample keeps validation at roughly 64^3 products.
      std::size_t stride = _order <= 64 ? 1 : (_order + 63) / 64;
      for (std::size_t x = 0; x < _order; x += stride) {
        for (std::size_t y = 0; y < _order; y += stride) {
          for (std::size_t z = 0; z < _order; z += stride) {
            auto a = static_cast<element_type>(x), b = static_cast<element_type>(y),
                 c = static_cast<element_type>(z);
            if (product(product(a, b), c) != product(a, product(b, c))) {
              throw InvalidTable("table is not associative");
            }
          }
        }
      }
    }

    std::size_t                         _order;
    std::vector<element_type>           _product;
    std::map<std::string, element_type> _generators;
    element_type                        _identity = 0;
    std::vector<element_type>           _inverse;
  };

  namespace detail {

    // Elements of the subgroup generated by gens (element ids), each with its
    // shortlex-least word over basis letters x_0.. (x_j <-> gens[j]).
    struct FiniteSubgroupWords {
      std::vector<std::optional<Word>> word;  // indexed by element id
      std::size_t                      size = 0;

      FiniteSubgroupWords(FiniteGroupTable const&                          t,
                          std::span<FiniteGroupTable::element_type const> gens)
          : word(t.order()) {
        std::vector<std::vector<letter_type>> path(t.order());
        std::vector<FiniteGroupTable::element_type> queue{t.identity()};
        word[t.identity()] = Word();
        for (std::size_t i = 0; i < queue.size(); ++i) {
          auto x = queue[i];
          for (gen_index j = 0; j < gens.size(); ++j) {
            for (bool inv : {false, true}) {
              auto y = t.product(x, inv ? t.inverse(gens[j]) : gens[j]);
              if (!word[y]) {
                path[y] = path[x];
                path[y].push_back(make_letter(j, inv));
                word[y] = from_letters(path[y]);
                queue.push_back(y);
              }
            }
          }
        }
        size = queue.size();
      }

      [[nodiscard]] bool contains(FiniteGroupTable::element_type x) const {
        return word[x].has_value();
      }
    };

  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // SubgroupOracle
  ////////////////////////////////////////////////////////////////////////

  //! Membership and basis rewriting for a subgroup of a base group given by
  //! generator words over the base alphabet.
  //!
  //! * free: the base group is free on the alphabet; decisions come from the
  //!   Stallings automaton. If the given generators are, up to order and
  //!   inversion, exactly the automaton's basis, that order is kept as the
  //!   basis order; otherwise the automaton's shortlex basis is used.
  //! * finite: the base group is a finite table; the "basis" is the given
  //!   generator list and rewriting yields shortlex words in it.
  //! * declared: no decision procedure; only the generator list is known
  //!   (enough to build presentations).
  class SubgroupOracle {
   public:
    enum class Kind { free, finite, declared };

    static SubgroupOracle free(Alphabet const& alphabet,
                               std::vector<Word> gens) {
      SubgroupOracle o(Kind::free, alphabet);
      for (auto& g : gens) {
        g = free_reduce(g);
      }
      auto st = std::make_shared<StallingsAutomaton>(
          StallingsAutomaton::build(alphabet.size(), gens));
      o._stallings = st;
      auto const& sb = st->basis();
      // adopt the caller's order when gens is the basis up to order/sign
      std::vector<std::int64_t> perm(sb.size(), 0);
      bool adopt = gens.size() == sb.size();
      for (std::size_t i = 0; i < gens.size() && adopt; ++i) {
        bool found = false;
        for (std::size_t j = 0; j < sb.size() && !found; ++j) {
          if (perm[j] != 0) {
            continue;
          }
          if (gens[i] == sb[j]) {
            perm[j] = static_cast<std::int64_t>(i) + 1;
            found   = true;
          } else if (gens[i] == invert(sb[j])) {
            perm[j] = -(static_cast<std::int64_t>(i) + 1);
            found   = true;
          }
        }
        adopt = found;
      }
      if (adopt) {
        o._basis = std::move(gens);
        o._perm  = std::move(perm);
      } else {
        o._basis = sb;
        o._perm.resize(sb.size());
        std::iota(o._perm.begin(), o._perm.end(), 1);
      }
      return o;
    }

    static SubgroupOracle
    finite(std::shared_ptr<FiniteGroupTable const> table,
           Alphabet const&                          alphabet,
           std::vector<Word>                        gens) {
      SubgroupOracle o(Kind::finite, alphabet);
      o._table  = std::move(table);
      o._images = o._table->bind(alphabet);
      std::vector<FiniteGroupTable::element_type> els;
      for (auto& g : gens) {
        g = free_reduce(g);
        els.push_back(o._table->evaluate(g, o._images));
      }
      o._basis = std::move(gens);
      o._words = std::make_shared<detail::FiniteSubgroupWords>(*o._table, els);
      return o;
    }

    static SubgroupOracle declared(Alphabet const& alphabet,
                                   std::vector<Word> gens) {
      SubgroupOracle o(Kind::declared, alphabet);
      for (auto& g : gens) {
        g = free_reduce(g);
        for (auto const& s : g.syllables()) {
          if (s.gen >= alphabet.size()) {
            throw AlphabetMismatch("generator word outside the alphabet");
          }
        }
      }
      o._basis = std::move(gens);
      return o;
    }

    [[nodiscard]] Kind kind() const noexcept {
      return _kind;
    }
    [[nodiscard]] Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }
    [[nodiscard]] std::vector<Word> const& basis() const noexcept {
      return _basis;
    }
    [[nodiscard]] std::size_t rank() const noexcept {
      return _basis.size();
    }
    [[nodiscard]] StallingsAutomaton const& stallings() const {
      require(Kind::free);
      return *_stallings;
    }
    [[nodiscard]] FiniteGroupTable const& table() const {
      require(Kind::finite);
      return *_table;
    }
    [[nodiscard]] std::shared_ptr<FiniteGroupTable const> table_ptr() const {
      return _table;
    }
    [[nodiscard]] std::vector<FiniteGroupTable::element_type> const&
    table_images() const {
      return _images;
    }

    //! Number of elements (finite) or nullopt.
    [[nodiscard]] std::optional<std::size_t> finite_order() const {
      if (_kind == Kind::finite) {
        return _words->size;
      }
      if (_kind == Kind::free && _basis.empty()) {
        return 1;
      }
      return std::nullopt;
    }

    [[nodiscard]] bool contains(Word const& w) const {
      switch (_kind) {
        case Kind::free:
          return _stallings->accepts(w);
        case Kind::finite:
          return _words->contains(_table->evaluate(w, _images));
        case Kind::declared:
          break;
      }
      throw UnsupportedClass("declared subgroup has no membership oracle");
    }

    bool contains(Alphabet const& alphabet, Word const& w) const {
      if (!(alphabet == _alphabet)) {
        throw AlphabetMismatch("word alphabet differs from the oracle's");
      }
      return contains(w);
    }

    //! w as a word in basis letters x_0..x_{r-1}, or nullopt if w is not in
    //! the subgroup.
    [[nodiscard]] std::optional<Word> try_rewrite(Word const& w) const {
      switch (_kind) {
        case Kind::free: {
          auto r = _stallings->rewrite(w);
          if (!r) {
            return std::nullopt;
          }
          return from_stallings_letters(*r);
        }
        case Kind::finite: {
          auto const& x = _words->word[_table->evaluate(w, _images)];
          if (!x) {
            return std::nullopt;
          }
          return *x;
        }
        case Kind::declared:
          break;
      }
      throw UnsupportedClass("declared subgroup has no rewriting oracle");
    }

    [[nodiscard]] Word rewrite_in_basis(Word const& w) const {
      auto r = try_rewrite(w);
      if (!r) {
        throw NotInSubgroup("word is not in the subgroup");
      }
      return *r;
    }

    //! Converts a word in Stallings basis letters into this oracle's basis
    //! letters.
    [[nodiscard]] Word from_stallings_letters(Word const& w) const {
      std::vector<Syllable> out;
      for (auto const& s : w.syllables()) {
        auto p = _perm[s.gen];
        out.push_back({static_cast<gen_index>(std::abs(p) - 1),
                       p > 0 ? s.exp : -s.exp});
      }
      return free_reduce(Word(std::move(out)));
    }

    //! Substitutes the basis words for basis letters.
    [[nodiscard]] Word expand(Word const& basis_word) const {
      return substitute(basis_word, _basis);
    }

   private:
    SubgroupOracle(Kind k, Alphabet alphabet)
        : _kind(k), _alphabet(std::move(alphabet)) {}

    void require(Kind k) const {
      if (_kind != k) {
        throw UnsupportedClass("oracle is of a different kind");
      }
    }

    Kind                                           _kind;
    Alphabet                                       _alphabet;
    std::vector<Word>                              _basis;
    std::shared_ptr<StallingsAutomaton const>      _stallings;
    std::vector<std::int64_t>                      _perm;
    std::shared_ptr<FiniteGroupTable const>        _table;
    std::vector<FiniteGroupTable::element_type>    _images;
    std::shared_ptr<detail::FiniteSubgroupWords const> _words;
  };

  inline bool contains(SubgroupOracle const& o, Word const& w) {
    return o.contains(w);
  }

  inline Word rewrite_in_basis(SubgroupOracle const& o, Word const& w) {
    return o.rewrite_in_basis(w);
  }

  inline FiniteGroupTable::element_type evaluate(FiniteGroupTable const& t,
                                                 Word const&             w,
                                                 Alphabet const& alphabet) {
    return t.evaluate(w, alphabet);
  }

}  // namespace hnnforge

#endif  // HNNFORGE_ORACLES_HPP_
