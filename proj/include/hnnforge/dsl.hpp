#ifndef HNNFORGE_DSL_HPP_
#define HNNFORGE_DSL_HPP_

// Text and JSON forms of words and presentations.
//
//   presentation := "<" genlist "|" relitem ("," relitem)* ">"
//   genlist      := name ("," name)* | (empty)
//   relitem      := word ("=" word)?
//   word         := term+ | "1"
//   term         := (name | "(" word ")") ("^" signed-integer)?
//
// Generator names are case sensitive and there is no uppercase-inverse
// shorthand. A relation u = v is stored as the relator u v^-1.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "words.hpp"

namespace hnnforge {

  struct Presentation {
    Alphabet          alphabet;
    std::vector<Word> relators;

    Presentation() = default;
    Presentation(Alphabet a, std::vector<Word> rels)
        : alphabet(std::move(a)), relators(std::move(rels)) {
      for (auto const& r : relators) {
        for (auto const& s : r.syllables()) {
          if (s.gen >= alphabet.size()) {
            throw InvalidInput("relator uses a generator outside the alphabet");
          }
        }
      }
    }

    [[nodiscard]] bool is_free() const noexcept {
      for (auto const& r : relators) {
        if (!free_reduce(r).empty()) {
          return false;
        }
      }
      return true;
    }

    //! Structural equality: same alphabet, relators equal after reduction.
    bool operator==(Presentation const& that) const {
      if (!(alphabet == that.alphabet)
          || relators.size() != that.relators.size()) {
        return false;
      }
      for (std::size_t i = 0; i < relators.size(); ++i) {
        if (free_reduce(relators[i]) != free_reduce(that.relators[i])) {
          return false;
        }
      }
      return true;
    }
  };

  ////////////////////////////////////////////////////////////////////////
  // Rendering
  ////////////////////////////////////////////////////////////////////////

  inline std::string render_word(Word const& w, Alphabet const& alphabet) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i != 0) {
        out += ' ';
      }
      out += alphabet.name(w[i].gen);
      if (w[i].exp != 1) {
        out += '^';
        out += std::to_string(w[i].exp);
      }
    }
    return out;
  }

  //! Canonical text: relators are freely reduced, an empty relator is "1".
  inline std::string render(Presentation const& p) {
    std::string out = "<";
    auto const& names = p.alphabet.names();
    for (std::size_t i = 0; i < names.size(); ++i) {
      out += i == 0 ? " " : ", ";
      out += names[i];
    }
    out += " |";
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      out += i == 0 ? " " : ", ";
      out += render_word(free_reduce(p.relators[i]), p.alphabet);
    }
    out += " >";
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Parsing
  ////////////////////////////////////////////////////////////////////////

  namespace detail {

    class Parser {
     public:
      explicit Parser(std::string_view text) : _text(text) {}

      Presentation presentation() {
        skip_ws();
        expect('<');
        Alphabet alphabet;
        skip_ws();
        if (peek() != '|') {
          while (true) {
            skip_ws();
            auto start = _pos;
            auto name  = read_name();
            if (alphabet.contains(name)) {
              throw ParseError({start, _pos},
                               "duplicate generator '" + name + "'");
            }
            alphabet.add(name);
            skip_ws();
            if (peek() == ',') {
              ++_pos;
              continue;
            }
            break;
          }
        }
        skip_ws();
        expect('|');
        std::vector<Word> relators;
        skip_ws();
        if (peek() != '>') {
          while (true) {
            auto lhs = word(alphabet, ",=>");
            skip_ws();
            if (peek() == '=') {
              ++_pos;
              auto rhs = word(alphabet, ",>");
              lhs      = multiply(lhs, invert(rhs));
            }
            relators.push_back(std::move(lhs));
            skip_ws();
            if (peek() == ',') {
              ++_pos;
              continue;
            }
            break;
          }
        }
        skip_ws();
        expect('>');
        skip_ws();
        if (!at_end()) {
          throw ParseError({_pos, _text.size()},
                           "trailing input after presentation");
        }
        return Presentation(std::move(alphabet), std::move(relators));
      }

      Word whole_word(Alphabet const& alphabet) {
        skip_ws();
        if (at_end()) {
          return Word();
        }
        auto w = word(alphabet, "");
        skip_ws();
        if (!at_end()) {
          throw ParseError({_pos, _text.size()}, "unexpected input after word");
        }
        return w;
      }

     private:
      // word := term+, stopping before any character in stop (or ')' / end)
      Word word(Alphabet const& alphabet, std::string_view stop) {
        skip_ws();
        auto                  start = _pos;
        std::vector<Syllable> stack;
        bool                  any = false;
        while (true) {
          skip_ws();
          if (at_end() || peek() == ')'
              || stop.find(peek()) != std::string_view::npos) {
            break;
          }
          auto t = term(alphabet);
          for (auto const& s : t.syllables()) {
            push_reduced(stack, s);
          }
          any = true;
        }
        if (!any) {
          throw ParseError(
              {start, std::min(std::max(start + 1, _pos), _text.size())},
              "expected a word");
        }
        return Word(std::move(stack));
      }

      Word term(Alphabet const& alphabet) {
        auto start = _pos;
        Word base;
        if (peek() == '(') {
          ++_pos;
          base = word(alphabet, "");
          skip_ws();
          if (peek() != ')') {
            throw ParseError({start, _pos}, "unbalanced '('");
          }
          ++_pos;
        } else if (peek() == '1' && !is_name_char(peek(1))) {
          ++_pos;
        } else {
          auto name = read_name();
          auto idx  = alphabet.index_of(name);
          if (!idx) {
            throw UnknownGenerator({start, _pos}, name);
          }
          base = Word::generator(*idx);
        }
        skip_ws();
        if (peek() == '^') {
          ++_pos;
          skip_ws();
          auto e = read_exponent();
          return power(base, e);
        }
        return base;
      }

      std::int64_t read_exponent() {
        auto start = _pos;
        bool neg   = false;
        if (peek() == '-' || peek() == '+') {
          neg = peek() == '-';
          ++_pos;
        }
        auto digits = _pos;
        while (!at_end() && peek() >= '0' && peek() <= '9') {
          ++_pos;
        }
        if (digits == _pos) {
          throw ParseError({start, std::min(_pos + 1, _text.size())},
                           "malformed power: expected an integer after '^'");
        }
        std::int64_t value = 0;
        auto [ptr, ec]     = std::from_chars(
            _text.data() + digits, _text.data() + _pos, value);
        if (ec != std::errc()) {
          throw ParseError({start, _pos}, "malformed power: out of range");
        }
        if (value == 0) {
          throw ParseError({start, _pos}, "zero exponent is not allowed");
        }
        return neg ? -value : value;
      }

      static bool is_name_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')
               || (c >= '0' && c <= '9') || c == '_';
      }

      std::string read_name() {
        auto start = _pos;
        char c     = peek();
        if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))) {
          throw ParseError({start, std::min(start + 1, _text.size())},
                           at_end() ? "unexpected end of input"
                                    : "expected a generator name");
        }
        while (!at_end() && is_name_char(peek())) {
          ++_pos;
        }
        return std::string(_text.substr(start, _pos - start));
      }

      void expect(char c) {
        if (peek() != c) {
          throw ParseError({_pos, std::min(_pos + 1, _text.size())},
                           at_end() ? std::string("unbalanced input: expected '")
                                          + c + "' before end of input"
                                    : std::string("expected '") + c + "'");
        }
        ++_pos;
      }

      void skip_ws() {
        while (!at_end()
               && (peek() == ' ' || peek() == '\t' || peek() == '\n'
                   || peek() == '\r')) {
          ++_pos;
        }
      }

      [[nodiscard]] bool at_end() const {
        return _pos >= _text.size();
      }
      [[nodiscard]] char peek(std::size_t ahead = 0) const {
        return _pos + ahead < _text.size() ? _text[_pos + ahead] : '\0';
      }

      std::string_view _text;
      std::size_t      _pos = 0;
    };

  }  // namespace detail

  inline Presentation parse_presentation(std::string_view text) {
    return detail::Parser(text).presentation();
  }

  //! Parses a word over alphabet and returns it freely reduced; the empty
  //! string and "1" denote the identity.
  inline Word parse_word(std::string_view text, Alphabet const& alphabet) {
    return detail::Parser(text).whole_word(alphabet);
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  using json = nlohmann::json;

  inline json word_to_json(Word const& w, Alphabet const& alphabet) {
    json out = json::array();
    for (auto const& s : w.syllables()) {
      out.push_back(json::array({alphabet.name(s.gen), s.exp}));
    }
    return out;
  }

  //! Accepts either the syllable-pair array form or a string in the word
  //! grammar.
  inline Word word_from_json(json const& j, Alphabet const& alphabet) {
    if (j.is_string()) {
      return parse_word(j.get<std::string>(), alphabet);
    }
    if (!j.is_array()) {
      throw InvalidInput("word must be a string or an array of [name, exp]");
    }
    std::vector<Syllable> syl;
    for (auto const& item : j) {
      if (!item.is_array() || item.size() != 2 || !item[0].is_string()
          || !item[1].is_number_integer()) {
        throw InvalidInput("syllable must be [name, exponent]");
      }
      auto name = item[0].get<std::string>();
      auto idx  = alphabet.index_of(name);
      if (!idx) {
        throw UnknownGenerator({0, 0}, name);
      }
      auto e = item[1].get<std::int64_t>();
      if (e == 0) {
        throw InvalidInput("syllable with zero exponent");
      }
      syl.push_back({*idx, e});
    }
    return free_reduce(Word(std::move(syl)));
  }

  inline json presentation_to_json(Presentation const& p) {
    json rels = json::array();
    for (auto const& r : p.relators) {
      rels.push_back(word_to_json(free_reduce(r), p.alphabet));
    }
    return json{{"generators", p.alphabet.names()}, {"relators", rels}};
  }

  //! Accepts the canonical object form or a presentation string.
  inline Presentation presentation_from_json(json const& j) {
    if (j.is_string()) {
      return parse_presentation(j.get<std::string>());
    }
    if (!j.is_object() || !j.contains("generators")) {
      throw InvalidInput("presentation must be a string or an object with "
                         "\"generators\"");
    }
    Alphabet alphabet;
    for (auto const& g : j.at("generators")) {
      alphabet.add(g.get<std::string>());
    }
    std::vector<Word> rels;
    if (j.contains("relators")) {
      for (auto const& r : j.at("relators")) {
        rels.push_back(word_from_json(r, alphabet));
      }
    }
    return Presentation(std::move(alphabet), std::move(rels));
  }

  inline std::vector<Word> words_from_json(json const&     j,
                                           Alphabet const& alphabet) {
    std::vector<Word> out;
    if (!j.is_array()) {
      throw InvalidInput("expected an array of words");
    }
    for (auto const& w : j) {
      out.push_back(word_from_json(w, alphabet));
    }
    return out;
  }

}  // namespace hnnforge

#endif  // HNNFORGE_DSL_HPP_
