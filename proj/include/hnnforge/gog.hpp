#ifndef HNNFORGE_GOG_HPP_
#define HNNFORGE_GOG_HPP_

// Serre graphs, graphs of groups, the fundamental-group presentation relative
// to a maximal tree, and finite balls of the Bass-Serre tree.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dsl.hpp"
#include "error.hpp"
#include "oracles.hpp"
#include "words.hpp"

namespace hnnforge {

  using vertex_id = std::uint32_t;
  using edge_id   = std::uint32_t;

  //! Directed edges with endpoint maps o, t and a fixed-point-free involution
  //! bar with o(bar(e)) = t(e).
  struct SerreGraph {
    std::size_t            num_vertices = 0;
    std::vector<vertex_id> o;
    std::vector<vertex_id> t;
    std::vector<edge_id>   bar;

    [[nodiscard]] std::size_t num_edges() const noexcept {
      return o.size();
    }

    //! Representative of the unoriented edge {e, bar(e)}: the smaller id,
    //! which is also its positive orientation.
    [[nodiscard]] edge_id positive(edge_id e) const {
      return std::min(e, bar[e]);
    }

    //! Adds e: u -> v and its reverse, returning e.
    edge_id add_edge(vertex_id u, vertex_id v) {
      auto e = static_cast<edge_id>(o.size());
      o.push_back(u);
      t.push_back(v);
      bar.push_back(e + 1);
      o.push_back(v);
      t.push_back(u);
      bar.push_back(e);
      return e;
    }
  };

  //! One message per violated axiom, naming the offending ids. Empty means
  //! the graph is a connected Serre graph.
  inline std::vector<std::string> validate_graph(SerreGraph const& g) {
    std::vector<std::string> bad;
    auto const               m = g.num_edges();
    if (g.t.size() != m || g.bar.size() != m) {
      bad.push_back("o, t and bar must have the same length");
      return bad;
    }
    bool ids_ok = true;
    for (edge_id e = 0; e < m; ++e) {
      if (g.o[e] >= g.num_vertices || g.t[e] >= g.num_vertices) {
        bad.push_back("edge " + std::to_string(e) + ": endpoint out of range");
        ids_ok = false;
      }
      if (g.bar[e] >= m) {
        bad.push_back("edge " + std::to_string(e) + ": bar out of range");
        ids_ok = false;
      }
    }
    if (!ids_ok) {
      return bad;
    }
    for (edge_id e = 0; e < m; ++e) {
      if (g.bar[e] == e) {
        bad.push_back("involution not free: bar(" + std::to_string(e)
                      + ") = " + std::to_string(e));
      } else if (g.bar[g.bar[e]] != e) {
        bad.push_back("bar is not an involution at edge " + std::to_string(e));
      }
      if (g.o[g.bar[e]] != g.t[e]) {
        bad.push_back("o(bar(e)) != t(e) for edge " + std::to_string(e));
      }
    }
    if (g.num_vertices == 0) {
      bad.push_back("graph has no vertices");
      return bad;
    }
    std::vector<vertex_id> parent(g.num_vertices);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](vertex_id x) {
      while (parent[x] != x) {
        x = parent[x] = parent[parent[x]];
      }
      return x;
    };
    for (edge_id e = 0; e < m; ++e) {
      parent[find(g.o[e])] = find(g.t[e]);
    }
    std::set<vertex_id> comps;
    for (vertex_id v = 0; v < g.num_vertices; ++v) {
      comps.insert(find(v));
    }
    if (comps.size() > 1) {
      bad.push_back("not connected: " + std::to_string(comps.size())
                    + " components");
    }
    return bad;
  }

  //! Maximal tree as sorted unoriented edge ids (positive orientations), by
  //! BFS from vertex 0 trying incident edges in order of unoriented id.
  inline std::vector<edge_id> spanning_tree(SerreGraph const& g) {
    if (g.num_vertices == 0) {
      return {};
    }
    std::vector<std::vector<edge_id>> out(g.num_vertices);
    for (edge_id e = 0; e < g.num_edges(); ++e) {
      out[g.o[e]].push_back(e);
    }
    for (auto& es : out) {
      std::sort(es.begin(), es.end(), [&](edge_id x, edge_id y) {
        return std::pair(g.positive(x), x) < std::pair(g.positive(y), y);
      });
    }
    std::vector<bool>      seen(g.num_vertices, false);
    std::vector<vertex_id> queue{0};
    std::vector<edge_id>   tree;
    seen[0] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (auto e : out[queue[i]]) {
        if (!seen[g.t[e]]) {
          seen[g.t[e]] = true;
          queue.push_back(g.t[e]);
          tree.push_back(g.positive(e));
        }
      }
    }
    if (queue.size() != g.num_vertices) {
      throw NotConnected("graph is not connected");
    }
    std::sort(tree.begin(), tree.end());
    return tree;
  }

  ////////////////////////////////////////////////////////////////////////
  // Graph of groups
  ////////////////////////////////////////////////////////////////////////

  //! A vertex or edge group: a presentation, plus a multiplication table when
  //! the group is finite.
  struct GroupSpec {
    Presentation                            presentation;
    std::shared_ptr<FiniteGroupTable const> table;

    [[nodiscard]] bool is_finite() const noexcept {
      return table != nullptr;
    }
    [[nodiscard]] bool is_free() const {
      return !table && presentation.is_free();
    }
  };

  class GraphOfGroups {
   public:
    //! injections[e] lists, for each generator of edge_groups[e], its image
    //! in vertex_groups[t(e)].
    GraphOfGroups(SerreGraph                     graph,
                  std::vector<GroupSpec>         vertex_groups,
                  std::vector<GroupSpec>         edge_groups,
                  std::vector<std::vector<Word>> injections)
        : _graph(std::move(graph)), _vertex(std::move(vertex_groups)),
          _edge(std::move(edge_groups)), _inj(std::move(injections)) {
      validate();
      for (edge_id e = 0; e < _graph.num_edges(); ++e) {
        _oracle.push_back(make_oracle(e));
      }
    }

    [[nodiscard]] SerreGraph const& graph() const noexcept {
      return _graph;
    }
    [[nodiscard]] GroupSpec const& vertex_group(vertex_id v) const {
      return _vertex.at(v);
    }
    [[nodiscard]] GroupSpec const& edge_group(edge_id e) const {
      return _edge.at(e);
    }
    [[nodiscard]] std::vector<Word> const& injection(edge_id e) const {
      return _inj.at(e);
    }
    //! The subgroup i_e(G_e) of G_{t(e)}.
    [[nodiscard]] SubgroupOracle const& image_oracle(edge_id e) const {
      return _oracle.at(e);
    }

   private:
    void validate() const {
      auto bad = validate_graph(_graph);
      if (!bad.empty()) {
        throw InvalidGraphOfGroups(bad.front());
      }
      if (_vertex.size() != _graph.num_vertices
          || _edge.size() != _graph.num_edges()
          || _inj.size() != _graph.num_edges()) {
        throw InvalidGraphOfGroups("need one group per vertex and one group "
                                   "and injection per directed edge");
      }
      for (auto const& gs : _vertex) {
        check_table(gs);
      }
      for (edge_id e = 0; e < _graph.num_edges(); ++e) {
        auto const& ge = _edge[e];
        check_table(ge);
        if (render(ge.presentation) != render(_edge[_graph.bar[e]].presentation)) {
          throw InvalidGraphOfGroups("edge " + std::to_string(e)
                                     + ": G_e differs from G_bar(e)");
        }
        auto const& gv = _vertex[_graph.t[e]];
        if (_inj[e].size() != ge.presentation.alphabet.size()) {
          throw InvalidGraphOfGroups("edge " + std::to_string(e)
                                     + ": need one image per edge generator");
        }
        for (auto const& w : _inj[e]) {
          for (auto const& s : w.syllables()) {
            if (s.gen >= gv.presentation.alphabet.size()) {
              throw InvalidGraphOfGroups(
                  "edge " + std::to_string(e)
                  + ": injection image outside the target vertex alphabet");
            }
          }
        }
        check_injective(e);
      }
    }

    static void check_table(GroupSpec const& gs) {
      if (!gs.table) {
        return;
      }
      auto images = gs.table->bind(gs.presentation.alphabet);
      for (auto const& r : gs.presentation.relators) {
        if (gs.table->evaluate(r, images) != gs.table->identity()) {
          throw InvalidGraphOfGroups("table does not satisfy relator "
                                     + render_word(r, gs.presentation.alphabet));
        }
      }
    }

    // Desk-scale injectivity: table comparison for finite edge groups,
    // Stallings rank for free ones.
    void check_injective(edge_id e) const {
      auto const& ge = _edge[e];
      auto const& gv = _vertex[_graph.t[e]];
      auto const  k  = ge.presentation.alphabet.size();
      if (ge.is_finite() && gv.is_finite()) {
        auto const& te = *ge.table;
        auto const& tv = *gv.table;
        auto        ie = te.bind(ge.presentation.alphabet);
        auto        iv = tv.bind(gv.presentation.alphabet);
        std::vector<FiniteGroupTable::element_type> img;
        for (auto const& w : _inj[e]) {
          img.push_back(tv.evaluate(w, iv));
        }
        std::vector<std::optional<FiniteGroupTable::element_type>> phi(te.order());
        std::vector<FiniteGroupTable::element_type>                queue{te.identity()};
        phi[te.identity()] = tv.identity();
        for (std::size_t q = 0; q < queue.size(); ++q) {
          for (std::size_t i = 0; i < k; ++i) {
            auto y  = te.product(queue[q], ie[i]);
            auto fy = tv.product(*phi[queue[q]], img[i]);
            if (!phi[y]) {
              phi[y] = fy;
              queue.push_back(y);
            } else if (*phi[y] != fy) {
              throw InvalidGraphOfGroups("edge " + std::to_string(e)
                                         + ": injection is not a homomorphism");
            }
          }
        }
        std::set<FiniteGroupTable::element_type> hit;
        for (auto x : queue) {
          if (!hit.insert(*phi[x]).second) {
            throw InvalidGraphOfGroups("edge " + std::to_string(e)
                                       + ": injection is not injective");
          }
        }
      } else if (ge.is_free() && gv.is_free()) {
        auto st = StallingsAutomaton::build(gv.presentation.alphabet.size(),
                                            _inj[e]);
        if (st.basis().size() != k) {
          throw InvalidGraphOfGroups("edge " + std::to_string(e)
                                     + ": images do not freely generate a "
                                       "subgroup of the expected rank");
        }
      } else if (ge.is_free() && gv.is_finite() && k != 0) {
        throw InvalidGraphOfGroups("edge " + std::to_string(e)
                                   + ": free group cannot inject into a "
                                     "finite group");
      }
    }

    [[nodiscard]] SubgroupOracle make_oracle(edge_id e) const {
      auto const& gv = _vertex[_graph.t[e]];
      if (gv.is_finite()) {
        return SubgroupOracle::finite(gv.table, gv.presentation.alphabet,
                                      _inj[e]);
      }
      if (gv.is_free()) {
        return SubgroupOracle::free(gv.presentation.alphabet, _inj[e]);
      }
      return SubgroupOracle::declared(gv.presentation.alphabet, _inj[e]);
    }

    SerreGraph                     _graph;
    std::vector<GroupSpec>         _vertex;
    std::vector<GroupSpec>         _edge;
    std::vector<std::vector<Word>> _inj;
    std::vector<SubgroupOracle>    _oracle;
  };

  //! Global naming for the fundamental group: vertex generators (renamed
  //! with a vertex-index suffix where a name repeats across vertices) in
  //! vertex order, then one stable letter per non-tree unoriented edge.
  class FundamentalAlphabet {
   public:
    explicit FundamentalAlphabet(GraphOfGroups const& gg) {
      auto const& g = gg.graph();
      std::map<std::string, std::size_t> count;
      for (vertex_id v = 0; v < g.num_vertices; ++v) {
        for (auto const& n : gg.vertex_group(v).presentation.alphabet.names()) {
          ++count[n];
        }
      }
      std::set<std::string> used;
      for (vertex_id v = 0; v < g.num_vertices; ++v) {
        std::vector<gen_index> map;
        for (auto const& n : gg.vertex_group(v).presentation.alphabet.names()) {
          std::string name = n;
          if (count[n] > 1 && used.contains(n)) {
            name = n + "_" + std::to_string(v);
          }
          while (used.contains(name) || (name != n && count.contains(name))) {
            name += "_";
          }
          used.insert(name);
          map.push_back(_alphabet.add(name));
        }
        _vertex_map.push_back(std::move(map));
      }
      _tree = spanning_tree(g);
      std::set<edge_id> in_tree(_tree.begin(), _tree.end());
      for (edge_id e = 0; e < g.num_edges(); ++e) {
        if (g.positive(e) == e && !in_tree.contains(e)) {
          _non_tree.push_back(e);
        }
      }
      for (std::size_t k = 0; k < _non_tree.size(); ++k) {
        std::string base = _non_tree.size() == 1 ? "t" : "t_" + std::to_string(k + 1);
        auto name = _alphabet.fresh_name(base);
        _stable.emplace(_non_tree[k], _alphabet.add(name));
      }
    }

    [[nodiscard]] Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }
    [[nodiscard]] std::vector<edge_id> const& tree() const noexcept {
      return _tree;
    }
    [[nodiscard]] std::vector<edge_id> const& non_tree() const noexcept {
      return _non_tree;
    }

    //! A word of vertex group v in the global alphabet.
    [[nodiscard]] Word lift(vertex_id v, Word const& w) const {
      return relabel(w, _vertex_map.at(v));
    }

    //! Stable letter of the unoriented edge of e, with sign by orientation;
    //! empty for tree edges.
    [[nodiscard]] Word stable(SerreGraph const& g, edge_id e) const {
      auto it = _stable.find(g.positive(e));
      if (it == _stable.end()) {
        return Word();
      }
      return Word::generator(it->second, g.positive(e) == e ? 1 : -1);
    }

   private:
    Alphabet                            _alphabet;
    std::vector<std::vector<gen_index>> _vertex_map;
    std::vector<edge_id>                _tree;
    std::vector<edge_id>                _non_tree;
    std::map<edge_id, gen_index>        _stable;
  };

  inline Presentation fundamental_presentation(GraphOfGroups const& gg) {
    auto const&         g = gg.graph();
    FundamentalAlphabet fa(gg);
    std::vector<Word>   rels;
    for (vertex_id v = 0; v < g.num_vertices; ++v) {
      for (auto const& r : gg.vertex_group(v).presentation.relators) {
        rels.push_back(fa.lift(v, r));
      }
    }
    // tree edge e: i_bar(e)(z) = i_e(z) for each edge generator z
    for (auto e : fa.tree()) {
      auto be = g.bar[e];
      for (std::size_t j = 0; j < gg.injection(e).size(); ++j) {
        rels.push_back(multiply(fa.lift(g.o[e], gg.injection(be)[j]),
                                invert(fa.lift(g.t[e], gg.injection(e)[j]))));
      }
    }
    // non-tree edge e: t_e^-1 i_bar(e)(z) t_e = i_e(z)
    for (auto e : fa.non_tree()) {
      auto be = g.bar[e];
      auto t  = fa.stable(g, e);
      for (std::size_t j = 0; j < gg.injection(e).size(); ++j) {
        rels.push_back(multiply({invert(t), fa.lift(g.o[e], gg.injection(be)[j]),
                                 t, invert(fa.lift(g.t[e], gg.injection(e)[j]))}));
      }
    }
    return Presentation(fa.alphabet(), std::move(rels));
  }

  ////////////////////////////////////////////////////////////////////////
  // Bass-Serre balls
  ////////////////////////////////////////////////////////////////////////

  struct BallNode {
    std::size_t id;      // coset id
    vertex_id   vertex;  // orbit label
    Word        rep;     // node is the coset rep * G_vertex
  };

  struct BallEdge {
    std::size_t from;
    std::size_t to;
    edge_id     edge;  // orbit label
  };

  struct BallTree {
    std::size_t           root = 0;
    std::vector<BallNode> nodes;
    std::vector<BallEdge> edges;
    Alphabet              alphabet;

    //! node count = edge count + 1, connected, and no coset listed twice.
    [[nodiscard]] bool is_tree() const {
      if (nodes.size() != edges.size() + 1) {
        return false;
      }
      std::vector<std::size_t> parent(nodes.size());
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](std::size_t x) {
        while (parent[x] != x) {
          x = parent[x] = parent[parent[x]];
        }
        return x;
      };
      for (auto const& e : edges) {
        if (e.from >= nodes.size() || e.to >= nodes.size()) {
          return false;
        }
        auto a = find(e.from), b = find(e.to);
        if (a == b) {
          return false;  // cycle
        }
        parent[a] = b;
      }
      std::set<std::pair<vertex_id, std::vector<letter_type>>> cosets;
      for (auto const& n : nodes) {
        if (!cosets.emplace(n.vertex, letters(n.rep)).second) {
          return false;
        }
      }
      return true;
    }

    [[nodiscard]] json to_json() const {
      json ns = json::array(), es = json::array();
      for (auto const& n : nodes) {
        ns.push_back({{"id", n.id},
                      {"vertex", n.vertex},
                      {"rep", render_word(n.rep, alphabet)}});
      }
      for (auto const& e : edges) {
        es.push_back({{"from", e.from}, {"to", e.to}, {"edge", e.edge}});
      }
      return json{{"root", root}, {"nodes", ns}, {"edges", es}};
    }

    [[nodiscard]] std::string to_dot() const {
      std::ostringstream os;
      os << "graph bass_serre {\n";
      for (auto const& n : nodes) {
        os << "  " << n.id << " [label=\"" << render_word(n.rep, alphabet)
           << " G" << n.vertex << "\"];\n";
      }
      for (auto const& e : edges) {
        os << "  " << e.from << " -- " << e.to << " [label=\"e" << e.edge
           << "\"];\n";
      }
      os << "}\n";
      return os.str();
    }
  };

  constexpr std::size_t DEFAULT_NODE_BUDGET = 1'000'000;

  namespace detail {

    // Left coset representatives of i_bar(e)(G_e) in G_o(e), shortlex
    // sorted, the trivial coset first.
    inline std::vector<Word> left_coset_reps(GraphOfGroups const& gg,
                                             edge_id              e) {
      auto const& g      = gg.graph();
      auto const& gv     = gg.vertex_group(g.o[e]);
      auto const& oracle = gg.image_oracle(g.bar[e]);
      std::vector<Word> reps;
      if (gv.is_finite()) {
        auto const& tab    = *gv.table;
        auto        images = tab.bind(gv.presentation.alphabet);
        FiniteSubgroupWords all(tab, images);
        std::vector<FiniteGroupTable::element_type> sub;
        for (auto const& w : oracle.basis()) {
          sub.push_back(tab.evaluate(w, images));
        }
        auto              s = tab.generated_subgroup(sub);
        std::vector<bool> done(tab.order(), false);
        // visit elements in shortlex order of their words: the first element
        // met in each coset is its representative
        std::vector<FiniteGroupTable::element_type> els;
        for (std::size_t x = 0; x < tab.order(); ++x) {
          if (all.word[x]) {
            els.push_back(static_cast<FiniteGroupTable::element_type>(x));
          }
        }
        std::sort(els.begin(), els.end(), [&](auto x, auto y) {
          return shortlex_less(*all.word[x], *all.word[y]);
        });
        for (auto x : els) {
          if (done[x]) {
            continue;
          }
          reps.push_back(*all.word[x]);
          for (auto h : s) {
            done[tab.product(x, h)] = true;
          }
        }
        return reps;
      }
      if (gv.is_free()) {
        auto const& st = oracle.stallings();
        if (!st.is_complete()) {
          throw UnsupportedClass("edge group has infinite index in vertex "
                                 + std::to_string(g.o[e]));
        }
        for (StallingsAutomaton::state_type s = 0; s < st.num_states(); ++s) {
          reps.push_back(invert(st.tree_path(s)));
        }
        std::sort(reps.begin(), reps.end(), shortlex_less);
        return reps;
      }
      throw UnsupportedClass("ball expansion needs free or finite vertex groups");
    }

  }  // namespace detail

  //! The radius-r ball around the coset G_root of the Bass-Serre tree. The
  //! children of a node g G_v along an edge e out of v are g r t_e G_t(e),
  //! r ranging over left coset representatives of i_bar(e)(G_e) in G_v,
  //! except the pair (bar of the edge it was reached by, trivial coset),
  //! which leads back to the parent.
  inline BallTree bass_serre_ball(GraphOfGroups const& gg,
                                  vertex_id            root,
                                  std::size_t          radius,
                                  std::size_t budget = DEFAULT_NODE_BUDGET) {
    auto const& g = gg.graph();
    if (root >= g.num_vertices) {
      throw InvalidInput("root vertex out of range");
    }
    bool all_finite = true;
    for (vertex_id v = 0; v < g.num_vertices; ++v) {
      all_finite = all_finite && gg.vertex_group(v).is_finite();
    }
    if (!all_finite) {
      bool small = g.num_edges() == 2;
      for (vertex_id v = 0; v < g.num_vertices; ++v) {
        small = small
                && (gg.vertex_group(v).is_finite() || gg.vertex_group(v).is_free());
      }
      if (!small) {
        throw UnsupportedClass("ball expansion needs finite vertex groups, or "
                               "a single edge or loop with free/finite sides");
      }
    }

    FundamentalAlphabet               fa(gg);
    std::vector<std::vector<edge_id>> out(g.num_vertices);
    std::vector<std::vector<Word>>    reps(g.num_edges());
    for (edge_id e = 0; e < g.num_edges() && radius > 0; ++e) {
      out[g.o[e]].push_back(e);
      reps[e] = detail::left_coset_reps(gg, e);
      for (auto& r : reps[e]) {
        r = fa.lift(g.o[e], r);
      }
    }

    BallTree tree;
    tree.alphabet = fa.alphabet();
    tree.nodes.push_back({0, root, Word()});
    std::vector<std::optional<edge_id>> via{std::nullopt};
    std::size_t                         level_begin = 0;
    for (std::size_t depth = 0; depth < radius; ++depth) {
      auto level_end = tree.nodes.size();
      for (auto i = level_begin; i < level_end; ++i) {
        auto const v = tree.nodes[i].vertex;
        for (auto e : out[v]) {
          for (std::size_t k = 0; k < reps[e].size(); ++k) {
            if (k == 0 && via[i] && g.bar[*via[i]] == e) {
              continue;
            }
            if (tree.nodes.size() >= budget) {
              throw RadiusTooLarge("ball exceeds the node budget of "
                                   + std::to_string(budget));
            }
            auto id = tree.nodes.size();
            tree.nodes.push_back(
                {id, g.t[e],
                 multiply({tree.nodes[i].rep, reps[e][k], fa.stable(g, e)})});
            via.push_back(e);
            tree.edges.push_back({i, id, e});
          }
        }
      }
      level_begin = level_end;
    }
    return tree;
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline GroupSpec group_from_json(json const& j) {
      GroupSpec gs;
      if (j.is_string()) {
        gs.presentation = parse_presentation(j.get<std::string>());
        return gs;
      }
      if (j.contains("cyclic")) {
        auto n    = j.at("cyclic").get<std::size_t>();
        auto name = j.value("generator", std::string("x"));
        gs.table  = std::make_shared<FiniteGroupTable>(
            FiniteGroupTable::cyclic(n, name));
        Alphabet a{name};
        gs.presentation = Presentation(a, {Word::generator(0, static_cast<std::int64_t>(n))});
        if (j.contains("presentation")) {
          gs.presentation = presentation_from_json(j.at("presentation"));
        }
        return gs;
      }
      gs.presentation = presentation_from_json(j.at("presentation"));
      if (j.contains("table")) {
        gs.table = std::make_shared<FiniteGroupTable>(
            FiniteGroupTable::from_json(j.at("table")));
      }
      return gs;
    }

    inline json group_to_json(GroupSpec const& gs) {
      json j{{"presentation", presentation_to_json(gs.presentation)}};
      if (gs.table) {
        j["table"] = gs.table->to_json();
      }
      return j;
    }
  }  // namespace detail

  //! {"vertices": [group...], "o": [...], "t": [...], "bar": [...],
  //!  "edges": [{group fields..., "images": [word...]}]}
  //! A group is a presentation string, {"presentation": ..., "table": ...},
  //! or {"cyclic": n, "generator": name}.
  inline GraphOfGroups graph_of_groups_from_json(json const& j) {
    SerreGraph             g;
    std::vector<GroupSpec> vs, es;
    for (auto const& v : j.at("vertices")) {
      vs.push_back(detail::group_from_json(v));
    }
    g.num_vertices = vs.size();
    g.o            = j.at("o").get<std::vector<vertex_id>>();
    g.t            = j.at("t").get<std::vector<vertex_id>>();
    g.bar          = j.at("bar").get<std::vector<edge_id>>();
    auto const& je = j.at("edges");
    if (je.size() != g.o.size()) {
      throw InvalidGraphOfGroups("need one entry in \"edges\" per directed edge");
    }
    auto bad = validate_graph(g);
    if (!bad.empty()) {
      throw InvalidGraphOfGroups(bad.front());
    }
    std::vector<std::vector<Word>> inj;
    for (edge_id e = 0; e < je.size(); ++e) {
      es.push_back(detail::group_from_json(je[e]));
      inj.push_back(words_from_json(je[e].at("images"),
                                    vs.at(g.t[e]).presentation.alphabet));
    }
    return GraphOfGroups(std::move(g), std::move(vs), std::move(es),
                         std::move(inj));
  }

  inline json graph_of_groups_to_json(GraphOfGroups const& gg) {
    auto const& g  = gg.graph();
    json        vs = json::array(), es = json::array();
    for (vertex_id v = 0; v < g.num_vertices; ++v) {
      vs.push_back(detail::group_to_json(gg.vertex_group(v)));
    }
    for (edge_id e = 0; e < g.num_edges(); ++e) {
      auto j      = detail::group_to_json(gg.edge_group(e));
      json images = json::array();
      for (auto const& w : gg.injection(e)) {
        images.push_back(render_word(w, gg.vertex_group(g.t[e]).presentation.alphabet));
      }
      j["images"] = images;
      es.push_back(j);
    }
    return json{{"vertices", vs}, {"o", g.o}, {"t", g.t}, {"bar", g.bar}, {"edges", es}};
  }

}  // namespace hnnforge

#endif  // HNNFORGE_GOG_HPP_
