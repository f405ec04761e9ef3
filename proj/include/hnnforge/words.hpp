#ifndef HNNFORGE_WORDS_HPP_
#define HNNFORGE_WORDS_HPP_

// Free-group words in run-length (syllable) form, and the alphabets they are
// written over.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"

namespace hnnforge {

  using gen_index = std::uint32_t;

  //! A single signed letter g^{+1} or g^{-1}, packed as 2 * gen + (inverse).
  //! The packing fixes the letter order used by shortlex: a < a^-1 < b < ...
  using letter_type = std::uint32_t;

  constexpr letter_type make_letter(gen_index g, bool inverse) noexcept {
    return 2 * g + (inverse ? 1 : 0);
  }
  constexpr gen_index letter_gen(letter_type l) noexcept {
    return l / 2;
  }
  constexpr bool letter_inverse(letter_type l) noexcept {
    return (l & 1) != 0;
  }
  constexpr letter_type letter_inv(letter_type l) noexcept {
    return l ^ 1;
  }

  struct Syllable {
    gen_index    gen;
    std::int64_t exp;

    bool operator==(Syllable const&) const = default;
  };

  ////////////////////////////////////////////////////////////////////////
  // Alphabet
  ////////////////////////////////////////////////////////////////////////

  inline bool is_valid_generator_name(std::string_view name) noexcept {
    if (name.empty()) {
      return false;
    }
    auto alpha = [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(name.front())) {
      return false;
    }
    return std::all_of(name.begin(), name.end(), [&](char c) {
      return alpha(c) || digit(c) || c == '_';
    });
  }

  //! Ordered list of distinct generator names; the index of a generator is
  //! its position. Equality compares the name sequence.
  class Alphabet {
   public:
    Alphabet() = default;

    Alphabet(std::initializer_list<std::string> names) {
      for (auto const& n : names) {
        add(n);
      }
    }

    explicit Alphabet(std::vector<std::string> const& names) {
      for (auto const& n : names) {
        add(n);
      }
    }

    gen_index add(std::string const& name) {
      if (!is_valid_generator_name(name)) {
        throw InvalidName("invalid generator name '" + name + "'");
      }
      if (_index.contains(name)) {
        throw InvalidName("duplicate generator name '" + name + "'");
      }
      auto i = static_cast<gen_index>(_names.size());
      _names.push_back(name);
      _index.emplace(name, i);
      return i;
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return _names.size();
    }
    [[nodiscard]] bool empty() const noexcept {
      return _names.empty();
    }
    [[nodiscard]] std::string const& name(gen_index i) const {
      return _names.at(i);
    }
    [[nodiscard]] std::vector<std::string> const& names() const noexcept {
      return _names;
    }
    [[nodiscard]] std::optional<gen_index>
    index_of(std::string_view name) const {
      auto it = _index.find(std::string(name));
      if (it == _index.end()) {
        return std::nullopt;
      }
      return it->second;
    }
    [[nodiscard]] bool contains(std::string_view name) const {
      return index_of(name).has_value();
    }

    bool operator==(Alphabet const& that) const {
      return _names == that._names;
    }

    //! Returns a name based on base that does not occur in this alphabet.
    [[nodiscard]] std::string fresh_name(std::string const& base) const {
      std::string result = base;
      while (contains(result)) {
        result += "_";
      }
      return result;
    }

   private:
    std::vector<std::string>                   _names;
    std::unordered_map<std::string, gen_index> _index;
  };

  ////////////////////////////////////////////////////////////////////////
  // Word
  ////////////////////////////////////////////////////////////////////////

  //! Immutable sequence of syllables g^e with e != 0. A Word is reduced iff
  //! no two adjacent syllables share a generator.
  class Word {
   public:
    Word() = default;

    //! Stores the syllables as given (no reduction); zero exponents are
    //! rejected.
    explicit Word(std::vector<Syllable> syllables)
        : _syl(std::move(syllables)) {
      for (auto const& s : _syl) {
        if (s.exp == 0) {
          throw InvalidInput("syllable with zero exponent");
        }
      }
    }

    Word(std::initializer_list<Syllable> syllables)
        : Word(std::vector<Syllable>(syllables)) {}

    static Word generator(gen_index g, std::int64_t exp = 1) {
      if (exp == 0) {
        return Word();
      }
      Word w;
      w._syl.push_back({g, exp});
      return w;
    }

    [[nodiscard]] std::span<Syllable const> syllables() const noexcept {
      return _syl;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _syl.size();
    }
    [[nodiscard]] bool empty() const noexcept {
      return _syl.empty();
    }
    [[nodiscard]] Syllable const& operator[](std::size_t i) const {
      return _syl[i];
    }
    [[nodiscard]] Syllable const& front() const {
      return _syl.front();
    }
    [[nodiscard]] Syllable const& back() const {
      return _syl.back();
    }

    //! Number of letters, i.e. the sum of |exponent|.
    [[nodiscard]] std::int64_t length() const noexcept {
      std::int64_t n = 0;
      for (auto const& s : _syl) {
        n += std::llabs(s.exp);
      }
      return n;
    }

    [[nodiscard]] bool is_reduced() const noexcept {
      for (std::size_t i = 1; i < _syl.size(); ++i) {
        if (_syl[i].gen == _syl[i - 1].gen) {
          return false;
        }
      }
      return true;
    }

    [[nodiscard]] gen_index max_generator() const noexcept {
      gen_index m = 0;
      for (auto const& s : _syl) {
        m = std::max(m, s.gen);
      }
      return m;
    }

    bool operator==(Word const&) const = default;

   private:
    std::vector<Syllable> _syl;
  };

  namespace detail {
    // Appends a syllable to a reduced syllable stack, merging and cancelling
    // at the seam.
    inline void push_reduced(std::vector<Syllable>& stack, Syllable s) {
      if (s.exp == 0) {
        return;
      }
      if (!stack.empty() && stack.back().gen == s.gen) {
        stack.back().exp += s.exp;
        if (stack.back().exp == 0) {
          stack.pop_back();
        }
      } else {
        stack.push_back(s);
      }
    }

    inline Word make_word(std::vector<Syllable>&& syl) {
      return Word(std::move(syl));
    }
  }  // namespace detail

  inline Word free_reduce(Word const& w) {
    if (w.is_reduced()) {
      return w;
    }
    std::vector<Syllable> stack;
    stack.reserve(w.size());
    for (auto const& s : w.syllables()) {
      detail::push_reduced(stack, s);
    }
    return detail::make_word(std::move(stack));
  }

  inline Word invert(Word const& w) {
    std::vector<Syllable> out;
    out.reserve(w.size());
    for (auto it = w.syllables().rbegin(); it != w.syllables().rend(); ++it) {
      out.push_back({it->gen, -it->exp});
    }
    return detail::make_word(std::move(out));
  }

  //! Reduced product u * v. The operands need not be reduced.
  inline Word multiply(Word const& u, Word const& v) {
    std::vector<Syllable> stack;
    stack.reserve(u.size() + v.size());
    for (auto const& s : u.syllables()) {
      detail::push_reduced(stack, s);
    }
    for (auto const& s : v.syllables()) {
      detail::push_reduced(stack, s);
    }
    return detail::make_word(std::move(stack));
  }

  //! Checked product: the operands must be written over equal alphabets.
  inline Word multiply(Alphabet const& au,
                       Word const&     u,
                       Alphabet const& av,
                       Word const&     v) {
    if (!(au == av)) {
      throw AlphabetMismatch("multiply: operands over different alphabets");
    }
    return multiply(u, v);
  }

  inline Word multiply(std::initializer_list<Word> factors) {
    std::vector<Syllable> stack;
    for (auto const& f : factors) {
      for (auto const& s : f.syllables()) {
        detail::push_reduced(stack, s);
      }
    }
    return detail::make_word(std::move(stack));
  }

  //! w = conjugator * core * conjugator^-1 with core cyclically reduced.
  struct CyclicReduction {
    Word core;
    Word conjugator;
  };

  inline CyclicReduction cyclically_reduce(Word const& w) {
    auto                  r = free_reduce(w);
    std::vector<Syllable> core(r.syllables().begin(), r.syllables().end());
    std::vector<Syllable> conj;
    std::size_t           lo = 0, hi = core.size();
    // Peel matching ends: F M L with F, L on the same generator equals
    // L^-1 (F L M) L, and F L merges into one syllable.
    while (hi - lo >= 2 && core[lo].gen == core[hi - 1].gen) {
      auto first = core[lo];
      auto last  = core[hi - 1];
      detail::push_reduced(conj, {last.gen, -last.exp});
      --hi;
      core[lo].exp = first.exp + last.exp;
      if (core[lo].exp == 0) {
        ++lo;
      }
    }
    std::vector<Syllable> out(core.begin() + lo, core.begin() + hi);
    return {detail::make_word(std::move(out)),
            detail::make_word(std::move(conj))};
  }

  //! w^n, computed through the cyclic reduction of w so large exponents cost
  //! O(|w|) syllables.
  inline Word power(Word const& w, std::int64_t n) {
    if (n == 0 || w.empty()) {
      return Word();
    }
    auto base = n > 0 ? w : invert(w);
    auto k    = n > 0 ? n : -n;
    auto [core, conj] = cyclically_reduce(base);
    if (core.empty()) {
      return Word();
    }
    std::vector<Syllable> body;
    if (core.size() == 1) {
      body.push_back({core[0].gen, core[0].exp * k});
    } else {
      body.reserve(core.size() * static_cast<std::size_t>(k));
      for (std::int64_t i = 0; i < k; ++i) {
        body.insert(body.end(), core.syllables().begin(),
                    core.syllables().end());
      }
    }
    return multiply({conj, detail::make_word(std::move(body)), invert(conj)});
  }

  //! Homomorphic image of w under g_i -> images[i], freely reduced.
  inline Word substitute(Word const& w, std::span<Word const> images) {
    std::vector<Syllable> stack;
    for (auto const& s : w.syllables()) {
      if (s.gen >= images.size()) {
        throw MissingImage("no image for generator #" + std::to_string(s.gen));
      }
      auto img = power(images[s.gen], s.exp);
      for (auto const& t : img.syllables()) {
        detail::push_reduced(stack, t);
      }
    }
    return detail::make_word(std::move(stack));
  }

  inline Word substitute(Word const& w, std::vector<Word> const& images) {
    return substitute(w, std::span<Word const>(images));
  }

  inline Word substitute(Word const& w, std::map<gen_index, Word> const& images) {
    std::vector<Syllable> stack;
    for (auto const& s : w.syllables()) {
      auto it = images.find(s.gen);
      if (it == images.end()) {
        throw MissingImage("no image for generator #" + std::to_string(s.gen));
      }
      auto const img = power(it->second, s.exp);
      for (auto const& t : img.syllables()) {
        detail::push_reduced(stack, t);
      }
    }
    return detail::make_word(std::move(stack));
  }

  //! Reindexes generators through the given map (no reduction needed since
  //! distinct generators stay distinct).
  inline Word relabel(Word const& w, std::span<gen_index const> map) {
    std::vector<Syllable> out;
    out.reserve(w.size());
    for (auto const& s : w.syllables()) {
      out.push_back({map[s.gen], s.exp});
    }
    return free_reduce(detail::make_word(std::move(out)));
  }

  ////////////////////////////////////////////////////////////////////////
  // Letters and shortlex
  ////////////////////////////////////////////////////////////////////////

  inline std::vector<letter_type> letters(Word const& w) {
    std::vector<letter_type> out;
    out.reserve(static_cast<std::size_t>(w.length()));
    for (auto const& s : w.syllables()) {
      auto l = make_letter(s.gen, s.exp < 0);
      for (std::int64_t i = 0; i < std::llabs(s.exp); ++i) {
        out.push_back(l);
      }
    }
    return out;
  }

  inline Word from_letters(std::span<letter_type const> ls) {
    std::vector<Syllable> stack;
    for (auto l : ls) {
      detail::push_reduced(
          stack, {letter_gen(l), letter_inverse(l) ? std::int64_t{-1} : 1});
    }
    return detail::make_word(std::move(stack));
  }

  //! Strict shortlex order on letter sequences: length first, then
  //! lexicographic under the letter packing order.
  inline bool shortlex_less(Word const& u, Word const& v) {
    auto lu = u.length(), lv = v.length();
    if (lu != lv) {
      return lu < lv;
    }
    auto a = letters(u), b = letters(v);
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }

  inline std::int64_t exponent_sum(Word const& w, gen_index g) {
    std::int64_t n = 0;
    for (auto const& s : w.syllables()) {
      if (s.gen == g) {
        n += s.exp;
      }
    }
    return n;
  }

}  // namespace hnnforge

#endif  // HNNFORGE_WORDS_HPP_
