#ifndef HNNFORGE_TESTS_SUPPORT_HPP_
#define HNNFORGE_TESTS_SUPPORT_HPP_

// Deterministic generators and independent reference implementations used
// as oracles by the unit and acceptance tests. Nothing here calls into the
// library's reduction, folding or normal-form code.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hnnforge/words.hpp"

namespace testkit {

  using hnnforge::Syllable;
  using hnnforge::Word;

  // splitmix64
  struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
      std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
      z               = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z               = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) {
      return next() % n;
    }
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
      return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
  };

  // Signed letters: generator g is +(g+1), its inverse -(g+1).
  using Letters = std::vector<int>;

  inline Letters random_letters(Rng& rng, int rank, std::size_t len) {
    Letters out;
    for (std::size_t i = 0; i < len; ++i) {
      int g = static_cast<int>(rng.below(static_cast<std::uint64_t>(rank))) + 1;
      out.push_back(rng.below(2) ? g : -g);
    }
    return out;
  }

  // Builds a Word syllable by syllable without any cancellation.
  inline Word to_word(Letters const& ls) {
    std::vector<Syllable> syl;
    for (int l : ls) {
      auto g = static_cast<hnnforge::gen_index>(std::abs(l) - 1);
      std::int64_t e = l > 0 ? 1 : -1;
      if (!syl.empty() && syl.back().gen == g && (syl.back().exp > 0) == (e > 0)) {
        syl.back().exp += e;
      } else {
        syl.push_back({g, e});
      }
    }
    return Word(std::move(syl));
  }

  inline Letters from_word(Word const& w) {
    Letters out;
    for (auto const& s : w.syllables()) {
      int l = static_cast<int>(s.gen) + 1;
      for (std::int64_t i = 0; i < std::llabs(s.exp); ++i) {
        out.push_back(s.exp > 0 ? l : -l);
      }
    }
    return out;
  }

  inline Letters stack_reduce(Letters const& ls) {
    Letters st;
    for (int l : ls) {
      if (!st.empty() && st.back() == -l) {
        st.pop_back();
      } else {
        st.push_back(l);
      }
    }
    return st;
  }

  inline Letters inverse(Letters const& ls) {
    Letters out(ls.rbegin(), ls.rend());
    for (auto& l : out) {
      l = -l;
    }
    return out;
  }

  // Calls f on every letter sequence of length exactly len over rank
  // generators (unreduced sequences included).
  inline void for_each_sequence(int rank, std::size_t len,
                                std::function<void(Letters const&)> const& f) {
    Letters cur(len, 1);
    std::vector<int> digit(len, 0);
    auto letter = [rank](int d) { return d < rank ? d + 1 : -(d - rank + 1); };
    while (true) {
      for (std::size_t i = 0; i < len; ++i) {
        cur[i] = letter(digit[i]);
      }
      f(cur);
      std::size_t k = 0;
      while (k < len && ++digit[k] == 2 * rank) {
        digit[k] = 0;
        ++k;
      }
      if (k == len) {
        return;
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // BS(1, n): faithful affine action x -> n^k x + c over Z[1/n], acting on
  // the right (a: x -> x + 1, t: x -> n x). Numbers are stored scaled by
  // n^SCALE so they stay integral.
  ////////////////////////////////////////////////////////////////////////

  struct Affine {
    std::int64_t k = 0;     // multiplier n^k
    __int128     c = 0;     // translation * n^SCALE
  };

  class AffineBS1n {
   public:
    explicit AffineBS1n(int n, int scale = 24) : _n(n), _scale(scale) {
      _one = 1;
      for (int i = 0; i < scale; ++i) {
        _one *= n;
      }
    }

    // letters over (a, t): a = +-1, t = +-2
    [[nodiscard]] Affine eval(Letters const& ls) const {
      Affine f;
      for (int l : ls) {
        // f then g where g is x -> m x + d: x -> m (n^k x + c) + d
        if (l == 1 || l == -1) {
          f.c += l > 0 ? _one : -_one;
        } else if (l == 2) {
          f.k += 1;
          f.c *= _n;
        } else {
          f.k -= 1;
          if (f.c % _n != 0) {
            throw std::runtime_error("affine oracle: scale too small");
          }
          f.c /= _n;
        }
      }
      return f;
    }

    [[nodiscard]] bool trivial(Letters const& ls) const {
      auto f = eval(ls);
      return f.k == 0 && f.c == 0;
    }

   private:
    int      _n;
    int      _scale;
    __int128 _one = 1;
  };

  ////////////////////////////////////////////////////////////////////////
  // BS(m, n) = < a, t | t^-1 a^m t = a^n >: a second, letter-level Britton
  // reduction (rightmost pinch first, membership by divisibility), plus
  // affine quotients over F_p (a: x -> x + 1, t: x -> (n/m) x).
  ////////////////////////////////////////////////////////////////////////

  inline bool britton_trivial_bs(int m, int n, Letters ls) {
    // encode as syllables: ('a', k) or ('t', +-1)
    struct S {
      bool         t;
      std::int64_t e;
    };
    auto normalize = [](std::vector<S>& v) {
      std::vector<S> out;
      for (auto s : v) {
        if (!s.t && s.e == 0) {
          continue;
        }
        if (!out.empty() && !out.back().t && !s.t) {
          out.back().e += s.e;
          if (out.back().e == 0) {
            out.pop_back();
          }
        } else if (!out.empty() && out.back().t && s.t && out.back().e == -s.e) {
          out.pop_back();
        } else {
          out.push_back(s);
        }
      }
      v = std::move(out);
    };
    std::vector<S> v;
    for (int l : ls) {
      v.push_back(std::abs(l) == 1 ? S{false, l} : S{true, l > 0 ? 1 : -1});
    }
    normalize(v);
    while (true) {
      bool done = true;
      for (std::size_t i = v.size(); i-- > 0 && done;) {
        // pattern t^e1 a^k t^e2 ending at i, with i the right stable letter
        if (!v[i].t || i < 2 || v[i - 1].t || !v[i - 2].t) {
          continue;
        }
        auto e1 = v[i - 2].e, e2 = v[i].e, k = v[i - 1].e;
        if (e1 == -1 && e2 == 1 && k % m == 0) {
          v[i - 2] = {false, k / m * n};
        } else if (e1 == 1 && e2 == -1 && k % n == 0) {
          v[i - 2] = {false, k / n * m};
        } else {
          continue;
        }
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i - 1),
                v.begin() + static_cast<std::ptrdiff_t>(i + 1));
        normalize(v);
        done = false;
      }
      if (done) {
        break;
      }
    }
    return v.empty();
  }

  inline std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t p) {
    std::int64_t r = 1;
    b %= p;
    while (e > 0) {
      if (e & 1) {
        r = r * b % p;
      }
      b = b * b % p;
      e >>= 1;
    }
    return r;
  }

  // image of the word in the affine group of F_p, trivial or not
  inline bool affine_mod_p_trivial(int m, int n, std::int64_t p, Letters const& ls) {
    std::int64_t r    = n * mod_pow(m, p - 2, p) % p;  // n / m
    std::int64_t rinv = m * mod_pow(n, p - 2, p) % p;
    std::int64_t mul = 1, add = 0;
    for (int l : ls) {
      if (std::abs(l) == 1) {
        add = ((add + l) % p + p) % p;
      } else {
        auto f = l > 0 ? r : rinv;
        mul    = mul * f % p;
        add    = add * f % p;
      }
    }
    return mul == 1 && add == 0;
  }

  ////////////////////////////////////////////////////////////////////////
  // 2x2 integer matrices: SL2(Z) with x = [[0,-1],[1,0]], y = [[0,-1],[1,1]]
  ////////////////////////////////////////////////////////////////////////

  using Mat = std::array<std::int64_t, 4>;  // row major

  inline Mat mat_mul(Mat const& p, Mat const& q) {
    return {p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3],
            p[2] * q[0] + p[3] * q[2], p[2] * q[1] + p[3] * q[3]};
  }

  inline Mat mat_inv(Mat const& p) {  // determinant 1
    return {p[3], -p[1], -p[2], p[0]};
  }

  constexpr Mat MAT_I{1, 0, 0, 1};
  constexpr Mat MAT_X{0, -1, 1, 0};
  constexpr Mat MAT_Y{0, -1, 1, 1};

  // letters over (x, y)
  inline Mat sl2_eval(Letters const& ls) {
    Mat r = MAT_I;
    for (int l : ls) {
      Mat g = std::abs(l) == 1 ? MAT_X : MAT_Y;
      r     = mat_mul(r, l > 0 ? g : mat_inv(g));
    }
    return r;
  }

  inline bool sl2_trivial(Letters const& ls) {
    return sl2_eval(ls) == MAT_I;
  }

  inline bool psl2_trivial(Letters const& ls) {
    auto r = sl2_eval(ls);
    return r == MAT_I || r == Mat{-1, 0, 0, -1};
  }

  ////////////////////////////////////////////////////////////////////////
  // Transitive permutation representations of F(a, b) on {0..n-1}: the
  // stabilizer of 0 runs over all subgroups of index n.
  ////////////////////////////////////////////////////////////////////////

  struct CosetTable {
    int              n;
    std::vector<int> a, b;  // images of each point

    [[nodiscard]] int act(int x, int l) const {
      if (l == 1) {
        return a[static_cast<std::size_t>(x)];
      }
      if (l == 2) {
        return b[static_cast<std::size_t>(x)];
      }
      auto const& p = l == -1 ? a : b;
      for (int y = 0; y < n; ++y) {
        if (p[static_cast<std::size_t>(y)] == x) {
          return y;
        }
      }
      return -1;
    }

    [[nodiscard]] bool stabilizes(Letters const& ls) const {
      int x = 0;
      for (int l : ls) {
        x = act(x, l);
      }
      return x == 0;
    }
  };

  // One table per subgroup of index n (relabelled canonically by BFS from 0).
  inline std::vector<CosetTable> subgroups_of_index(int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> perms;
    for (int i = 0; i < n; ++i) {
      perm[static_cast<std::size_t>(i)] = i;
    }
    do {
      perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
    std::vector<CosetTable> out;
    for (auto const& pa : perms) {
      for (auto const& pb : perms) {
        CosetTable t{n, pa, pb};
        // BFS relabel from 0 in letter order a, a^-1, b, b^-1
        std::vector<int> label(static_cast<std::size_t>(n), -1), order{0};
        label[0] = 0;
        for (std::size_t i = 0; i < order.size(); ++i) {
          for (int l : {1, -1, 2, -2}) {
            int y = t.act(order[i], l);
            if (label[static_cast<std::size_t>(y)] < 0) {
              label[static_cast<std::size_t>(y)] = static_cast<int>(order.size());
              order.push_back(y);
            }
          }
        }
        if (static_cast<int>(order.size()) != n) {
          continue;  // not transitive
        }
        std::vector<int> ca(static_cast<std::size_t>(n)), cb(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x) {
          ca[static_cast<std::size_t>(label[static_cast<std::size_t>(x)])]
              = label[static_cast<std::size_t>(pa[static_cast<std::size_t>(x)])];
          cb[static_cast<std::size_t>(label[static_cast<std::size_t>(x)])]
              = label[static_cast<std::size_t>(pb[static_cast<std::size_t>(x)])];
        }
        if (seen.emplace(ca, cb).second) {
          out.push_back({n, ca, cb});
        }
      }
    }
    return out;
  }

  // Schreier generators of the stabilizer of 0.
  inline std::vector<Letters> schreier_generators(CosetTable const& t) {
    std::vector<Letters> path(static_cast<std::size_t>(t.n));
    std::vector<bool>    seen(static_cast<std::size_t>(t.n), false);
    std::vector<int>     order{0};
    seen[0] = true;
    std::set<std::pair<int, int>> tree;  // (point, positive letter) tree edges
    for (std::size_t i = 0; i < order.size(); ++i) {
      int x = order[i];
      for (int l : {1, -1, 2, -2}) {
        int y = t.act(x, l);
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = true;
          path[static_cast<std::size_t>(y)] = path[static_cast<std::size_t>(x)];
          path[static_cast<std::size_t>(y)].push_back(l);
          order.push_back(y);
          if (l > 0) {
            tree.emplace(x, l);
          } else {
            tree.emplace(y, -l);
          }
        }
      }
    }
    std::vector<Letters> gens;
    for (int x = 0; x < t.n; ++x) {
      for (int l : {1, 2}) {
        if (tree.contains({x, l})) {
          continue;
        }
        int  y = t.act(x, l);
        auto g = path[static_cast<std::size_t>(x)];
        g.push_back(l);
        auto back = inverse(path[static_cast<std::size_t>(y)]);
        g.insert(g.end(), back.begin(), back.end());
        gens.push_back(stack_reduce(g));
      }
    }
    return gens;
  }

  ////////////////////////////////////////////////////////////////////////
  // Sardinas-Patterson on strings, iterating whole dangling-suffix sets.
  ////////////////////////////////////////////////////////////////////////

  inline bool sardinas_patterson(std::set<std::string> const& code) {
    std::set<std::string> s;
    for (auto const& x : code) {
      for (auto const& y : code) {
        if (x != y && y.starts_with(x)) {
          s.insert(y.substr(x.size()));
        }
      }
    }
    std::set<std::set<std::string>> history;
    while (!s.empty()) {
      for (auto const& x : s) {
        if (x.empty() || code.contains(x)) {
          return false;
        }
      }
      if (!history.insert(s).second) {
        return true;
      }
      std::set<std::string> next;
      for (auto const& x : s) {
        for (auto const& c : code) {
          if (c.starts_with(x)) {
            next.insert(c.substr(x.size()));
          }
          if (x.starts_with(c)) {
            next.insert(x.substr(c.size()));
          }
        }
      }
      s = std::move(next);
    }
    return true;
  }

}  // namespace testkit

#endif  // HNNFORGE_TESTS_SUPPORT_HPP_
