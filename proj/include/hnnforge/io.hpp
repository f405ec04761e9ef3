#ifndef HNNFORGE_IO_HPP_
#define HNNFORGE_IO_HPP_

// JSON forms of HNN and amalgam data.
//
//   hnn:     {"base": group, "stable": "t", "domain": [word...],
//             "codomain": [word...], "forward": [word...]?, "backward": [...]?}
//   amalgam: {"left": group, "right": group, "domain": [word over left...],
//             "codomain": [word over right...], "forward"?, "backward"?}
//
// A group is a presentation string, {"presentation": ..., "table": ...} or
// {"cyclic": n, "generator": name}. forward[i] is the image of domain[i];
// when omitted it defaults to codomain[i].

#include <fstream>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include "amalgam.hpp"
#include "dsl.hpp"
#include "error.hpp"
#include "gog.hpp"
#include "hnn.hpp"
#include "iso.hpp"
#include "oracles.hpp"

namespace hnnforge {

  inline json read_json_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw InvalidInput("cannot open '" + path + "'");
    }
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    auto j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
      throw InvalidInput("'" + path + "' is not valid JSON");
    }
    return j;
  }

  //! The natural oracle for a subgroup of gs: table-backed when finite,
  //! Stallings when free, declared otherwise.
  inline SubgroupOracle subgroup_oracle(GroupSpec const&         gs,
                                        std::vector<Word> const& gens) {
    if (gs.is_finite()) {
      return SubgroupOracle::finite(gs.table, gs.presentation.alphabet, gens);
    }
    if (gs.is_free()) {
      return SubgroupOracle::free(gs.presentation.alphabet, gens);
    }
    return SubgroupOracle::declared(gs.presentation.alphabet, gens);
  }

  namespace detail {
    inline IsoData iso_from_json(json const&      j,
                                 GroupSpec const& dom_group,
                                 GroupSpec const& cod_group) {
      auto const& da  = dom_group.presentation.alphabet;
      auto const& ca  = cod_group.presentation.alphabet;
      auto        dom = words_from_json(j.at("domain"), da);
      auto        cod = words_from_json(j.at("codomain"), ca);
      auto fwd = j.contains("forward") ? words_from_json(j.at("forward"), ca) : cod;
      auto dom_o = subgroup_oracle(dom_group, dom);
      auto cod_o = subgroup_oracle(cod_group, cod);
      auto fwd_b = align_to_basis(dom_o, dom, fwd);
      if (j.contains("backward")) {
        auto bwd = words_from_json(j.at("backward"), da);
        auto bwd_b = align_to_basis(cod_o, cod, bwd);
        return IsoData::make(std::move(dom_o), std::move(cod_o),
                             std::move(fwd_b), std::move(bwd_b));
      }
      if (!j.contains("forward") && dom.size() == cod.size()) {
        // domain[i] <-> codomain[i]
        auto bwd_b = align_to_basis(cod_o, cod, dom);
        return IsoData::make(std::move(dom_o), std::move(cod_o),
                             std::move(fwd_b), std::move(bwd_b));
      }
      return IsoData::from_forward(std::move(dom_o), std::move(cod_o),
                                   std::move(fwd_b));
    }
  }  // namespace detail

  struct HnnSpec {
    GroupSpec base;
    HnnData   data;
  };

  inline HnnSpec hnn_from_json(json const& j) {
    auto base = detail::group_from_json(j.at("base"));
    auto iso  = detail::iso_from_json(j, base, base);
    HnnData d(base.presentation, j.value("stable", std::string("t")), std::move(iso));
    return {std::move(base), std::move(d)};
  }

  struct AmalgamSpec {
    GroupSpec   left;
    GroupSpec   right;
    AmalgamData data;
  };

  inline AmalgamSpec amalgam_from_json(json const& j) {
    auto left  = detail::group_from_json(j.at("left"));
    auto right = detail::group_from_json(j.at("right"));
    auto iso   = detail::iso_from_json(j, left, right);
    AmalgamData d(left.presentation, right.presentation, std::move(iso));
    return {std::move(left), std::move(right), std::move(d)};
  }

}  // namespace hnnforge

#endif  // HNNFORGE_IO_HPP_
