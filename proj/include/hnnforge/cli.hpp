#ifndef HNNFORGE_CLI_HPP_
#define HNNFORGE_CLI_HPP_

// The hnn-forge command line. run() takes the argument list without the
// program name and returns the exit code: 0 on success, 1 on domain errors,
// 2 on usage or parse errors. Errors go to err as one JSON object.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "amalgam.hpp"
#include "dsl.hpp"
#include "embed.hpp"
#include "error.hpp"
#include "gog.hpp"
#include "hnn.hpp"
#include "io.hpp"
#include "words.hpp"

namespace hnnforge::cli {

  inline constexpr char const* SCHEMA = "hnn-forge/1";

  namespace detail {

    struct UsageError : std::runtime_error {
      using std::runtime_error::runtime_error;
    };

    inline std::string slurp(std::istream& in) {
      return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }

    // "-" reads stdin, "@path" reads the file, anything else is the text itself
    inline std::string text_arg(std::string const& v, std::istream& stdin_) {
      if (v == "-") {
        return slurp(stdin_);
      }
      if (v.empty() || v.front() != '@') {
        return v;
      }
      std::ifstream in(v.substr(1));
      if (!in) {
        throw UsageError("cannot open '" + v.substr(1) + "'");
      }
      return slurp(in);
    }

    inline Presentation presentation_arg(std::string const& v, std::istream& stdin_) {
      auto text  = text_arg(v, stdin_);
      auto start = text.find_first_not_of(" \t\r\n");
      if (start != std::string::npos && (text[start] == '{' || text[start] == '"')) {
        return presentation_from_json(json::parse(text));
      }
      return parse_presentation(text);
    }

    inline std::size_t node_budget() {
      if (char const* env = std::getenv("HNN_FORGE_NODE_BUDGET")) {
        try {
          auto n = std::stoull(env);
          if (n > 0) {
            return n;
          }
        } catch (std::exception const&) {
        }
        throw UsageError("HNN_FORGE_NODE_BUDGET must be a positive integer");
      }
      return DEFAULT_NODE_BUDGET;
    }

    inline json json_arg(std::string const& path, std::istream& stdin_) {
      if (path != "-") {
        return read_json_file(path);
      }
      auto j = json::parse(slurp(stdin_), nullptr, false);
      if (j.is_discarded()) {
        throw InvalidInput("stdin is not valid JSON");
      }
      return j;
    }

    inline std::vector<std::string> batch_lines(std::string const& path,
                                                std::istream&      stdin_) {
      std::ifstream file;
      if (path != "-") {
        file.open(path);
        if (!file) {
          throw UsageError("cannot open '" + path + "'");
        }
      }
      std::istream&            in = path == "-" ? stdin_ : file;
      std::vector<std::string> out;
      std::string              line;
      while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
          continue;
        }
        out.push_back(line);
      }
      return out;
    }

    // Evaluates f on every item; results keep input order.
    template <typename T>
    std::vector<T> parallel_map(std::vector<std::string> const&         items,
                                std::function<T(std::string const&)> const& f) {
      std::vector<T> out(items.size());
      auto           threads = std::max(1u, std::thread::hardware_concurrency());
      auto           chunk   = (items.size() + threads - 1) / threads;
      std::vector<std::future<void>> jobs;
      for (std::size_t begin = 0; begin < items.size(); begin += chunk) {
        auto end = std::min(items.size(), begin + chunk);
        jobs.push_back(std::async(std::launch::async, [&, begin, end] {
          for (auto i = begin; i < end; ++i) {
            out[i] = f(items[i]);
          }
        }));
      }
      for (auto& j : jobs) {
        j.get();
      }
      return out;
    }

    inline void emit(std::ostream& out, json j, bool with_schema) {
      if (with_schema) {
        json o{{"schema", SCHEMA}};
        o.update(j);
        j = std::move(o);
      }
      out << j.dump() << '\n';
    }

    inline json error_json(std::string const& code, std::string const& message) {
      return json{{"error", code}, {"message", message}};
    }

  }  // namespace detail

  //! "-" as a file or text argument reads `in`.
  inline int run(std::vector<std::string> const& args,
                 std::ostream&                   out,
                 std::ostream&                   err,
                 std::istream&                   in = std::cin) {
    CLI::App app{"Constructions and word problems for HNN extensions, amalgams "
                 "and graphs of groups",
                 "hnn-forge"};
    app.require_subcommand(1, 1);

    std::string presentation, word, hnn_file, amalgam_file, gog_file, f_spec,
        batch_file;
    unsigned    root = 0, radius = 0;
    long long   n_arg = 10, hall_n = 20, query = 0;
    bool        as_json = false, as_dot = false;

    auto add_json = [&](CLI::App* c) {
      c->add_flag("--json", as_json, "JSON output with a schema tag");
    };

    auto* parse = app.add_subcommand("parse", "Parse and render a presentation");
    parse->add_option("--presentation", presentation, "Text, @file, or - for stdin")->required();
    add_json(parse);

    auto* reduce = app.add_subcommand("reduce", "Free and cyclic reduction");
    reduce->add_option("--presentation", presentation, "Text, @file, or - for stdin")->required();
    reduce->add_option("--word", word, "Word over the presentation")->required();
    add_json(reduce);

    auto* hnn = app.add_subcommand("hnn", "Presentation of an HNN extension");
    hnn->add_option("--hnn", hnn_file, "HNN JSON file")->required();
    add_json(hnn);

    auto* amalgam = app.add_subcommand("amalgam",
                                       "Presentation or normal form in an amalgam");
    amalgam->add_option("--amalgam", amalgam_file, "Amalgam JSON file")->required();
    amalgam->add_option("--word", word, "Word to put in normal form");
    add_json(amalgam);

    auto* britton = app.add_subcommand("britton", "Britton-reduce a word");
    britton->add_option("--hnn", hnn_file, "HNN JSON file")->required();
    britton->add_option("--word", word, "Word")->required();
    add_json(britton);

    auto* solve = app.add_subcommand("solve", "Decide whether words are trivial");
    auto* solve_hnn = solve->add_option("--hnn", hnn_file, "HNN JSON file");
    auto* solve_am  = solve->add_option("--amalgam", amalgam_file, "Amalgam JSON file");
    solve_hnn->excludes(solve_am);
    auto* solve_word  = solve->add_option("--word", word, "Word");
    auto* solve_batch = solve->add_option("--batch", batch_file,
                                          "File with one word per line (- for stdin)");
    solve_word->excludes(solve_batch);
    add_json(solve);

    auto* gog = app.add_subcommand("gog", "Fundamental group of a graph of groups");
    gog->add_option("--gog", gog_file, "Graph-of-groups JSON file")->required();
    add_json(gog);

    auto* ball = app.add_subcommand("ball", "Ball in the Bass-Serre tree");
    ball->add_option("--gog", gog_file, "Graph-of-groups JSON file")->required();
    ball->add_option("--root", root, "Root vertex");
    ball->add_option("--radius", radius, "Radius")->required();
    ball->add_flag("--dot", as_dot, "DOT output");
    add_json(ball);

    auto* embed2 = app.add_subcommand("embed2", "Embed into a two-generator group");
    embed2->add_option("--presentation", presentation, "Text, @file, or - for stdin")->required();
    add_json(embed2);

    auto* hall = app.add_subcommand("hall", "Hall's semigroup words and code check");
    hall->add_option("--N", hall_n, "Number of words")->check(CLI::PositiveNumber);
    add_json(hall);

    auto* higman = app.add_subcommand("higman", "Truncated Higman amalgam");
    higman->add_option("--f", f_spec, "n^2 | 2n | n | n^3 mod 17 | @file")->required();
    higman->add_option("--N", n_arg, "Truncation")->check(CLI::NonNegativeNumber);
    auto* higman_q = higman->add_option("--query", query, "m to test");
    add_json(higman);

    try {
      std::vector<std::string> rev(args.rbegin(), args.rend());
      app.parse(rev);
    } catch (CLI::ParseError const& e) {
      if (e.get_exit_code() == 0) {
        app.exit(e, out, err);
        return 0;
      }
      detail::emit(err, detail::error_json("UsageError", e.what()), false);
      return 2;
    }

    try {
      json result;
      std::string text;

      if (parse->parsed()) {
        auto p = detail::presentation_arg(presentation, in);
        text   = render(p);
        result = {{"presentation", presentation_to_json(p)}, {"text", text}};
      } else if (reduce->parsed()) {
        auto p  = detail::presentation_arg(presentation, in);
        auto w  = parse_word(word, p.alphabet);
        auto cr = cyclically_reduce(w);
        text    = render_word(w, p.alphabet);
        result  = {{"reduced", render_word(w, p.alphabet)},
                   {"cyclic_core", render_word(cr.core, p.alphabet)},
                   {"conjugator", render_word(cr.conjugator, p.alphabet)},
                   {"length", w.length()}};
      } else if (hnn->parsed()) {
        auto spec = hnn_from_json(detail::json_arg(hnn_file, in));
        auto p    = hnn_presentation(spec.data);
        text      = render(p);
        result    = {{"presentation", presentation_to_json(p)}, {"text", text}};
      } else if (amalgam->parsed()) {
        auto spec = amalgam_from_json(detail::json_arg(amalgam_file, in));
        if (word.empty()) {
          auto p = amalgam_presentation(spec.data);
          text   = render(p);
          result = {{"presentation", presentation_to_json(p)}, {"text", text}};
        } else {
          auto w  = parse_word(word, spec.data.alphabet());
          auto nf = normal_form(spec.data, w);
          result  = {{"normal_form", normal_form_to_json(spec.data, nf)}};
          text    = result["normal_form"].dump();
        }
      } else if (britton->parsed()) {
        auto spec = hnn_from_json(detail::json_arg(hnn_file, in));
        auto w    = parse_word(word, spec.data.alphabet());
        auto r    = britton_reduce(spec.data, w);
        std::int64_t stable = 0;
        for (auto const& s : r.syllables()) {
          if (s.gen == spec.data.stable_index()) {
            stable += s.exp < 0 ? -s.exp : s.exp;
          }
        }
        text   = render_word(r, spec.data.alphabet());
        result = {{"reduced", text}, {"stable_letters", stable}};
      } else if (solve->parsed()) {
        if (hnn_file.empty() == amalgam_file.empty()) {
          throw detail::UsageError("solve needs exactly one of --hnn, --amalgam");
        }
        if (!solve_word->count() && batch_file.empty()) {
          throw detail::UsageError("solve needs --word or --batch");
        }
        std::function<bool(std::string const&)> decide;
        std::optional<HnnSpec>                  hs;
        std::optional<AmalgamSpec>              as;
        std::optional<AmalgamSolver>            solver;
        std::optional<BaseWordProblem>          base_wp;
        if (!hnn_file.empty()) {
          hs.emplace(hnn_from_json(detail::json_arg(hnn_file, in)));
          base_wp.emplace(default_base_word_problem(hs->data));
          decide = [&](std::string const& s) {
            return is_trivial_hnn(hs->data, parse_word(s, hs->data.alphabet()),
                                  *base_wp);
          };
        } else {
          as.emplace(amalgam_from_json(detail::json_arg(amalgam_file, in)));
          solver.emplace(as->data);
          decide = [&](std::string const& s) {
            return solver->is_trivial(parse_word(s, as->data.alphabet()));
          };
        }
        if (batch_file.empty()) {
          result = {{"trivial", decide(word)}};
          text   = result.dump();
        } else {
          auto lines = detail::batch_lines(batch_file, in);
          // parse everything up front so errors surface deterministically
          for (auto const& l : lines) {
            parse_word(l, hs ? hs->data.alphabet() : as->data.alphabet());
          }
          auto verdicts = detail::parallel_map<char>(
              lines, [&](std::string const& s) { return static_cast<char>(decide(s)); });
          json arr = json::array();
          for (std::size_t i = 0; i < lines.size(); ++i) {
            arr.push_back({{"word", lines[i]}, {"trivial", verdicts[i] != 0}});
            text += json{{"trivial", verdicts[i] != 0}}.dump();
            if (i + 1 < lines.size()) {
              text += '\n';
            }
          }
          result = {{"results", arr}};
        }
      } else if (gog->parsed()) {
        auto gg   = graph_of_groups_from_json(detail::json_arg(gog_file, in));
        auto p    = fundamental_presentation(gg);
        text      = render(p);
        result    = {{"presentation", presentation_to_json(p)},
                     {"text", text},
                     {"tree", spanning_tree(gg.graph())}};
      } else if (ball->parsed()) {
        auto gg = graph_of_groups_from_json(detail::json_arg(gog_file, in));
        auto bt = bass_serre_ball(gg, root, radius, detail::node_budget());
        if (as_dot) {
          out << bt.to_dot();
          return 0;
        }
        result = bt.to_json();
        text   = result.dump();
      } else if (embed2->parsed()) {
        auto src = detail::presentation_arg(presentation, in);
        auto r   = embed_two_generators(src);
        json imgs = json::object();
        for (std::size_t i = 0; i < r.images.size(); ++i) {
          imgs[src.alphabet.name(static_cast<gen_index>(i))]
              = render_word(r.images[i], r.target.alphabet);
        }
        auto pj = [](Presentation const& p) { return json(render(p)); };
        result = {{"target", render(r.target)},
                  {"images", imgs},
                  {"tower",
                   {{"K", pj(r.tower.k)},
                    {"P", pj(r.tower.p)},
                    {"Q", pj(r.tower.q)},
                    {"H", pj(r.tower.h)}}}};
        text = result.dump();
      } else if (hall->parsed()) {
        Alphabet          ab{"a", "b"};
        std::vector<Word> code;
        json              words = json::array();
        for (long long i = 1; i <= hall_n; ++i) {
          code.push_back(hall_semigroup_word(i));
          words.push_back(render_word(code.back(), ab));
        }
        result = {{"words", words},
                  {"uniquely_decodable", is_uniquely_decodable(code)}};
        text   = json{{"uniquely_decodable", result["uniquely_decodable"]}}.dump();
      } else if (higman->parsed()) {
        auto fam = higman_presentation(f_values(f_spec, n_arg));
        if (higman_q->count()) {
          bool in_range = std::find(fam.f.begin(), fam.f.end(), query) != fam.f.end();
          bool trivial  = higman_query(fam, query);
          result = {{"m", query}, {"trivial", trivial}, {"in_range", in_range}};
          text   = json{{"trivial", trivial}}.dump();
        } else {
          text   = render(fam.presentation);
          result = {{"f", fam.f},
                    {"presentation", presentation_to_json(fam.presentation)},
                    {"text", text}};
        }
      }

      if (as_json) {
        detail::emit(out, result, true);
      } else {
        out << text << '\n';
      }
      return 0;
    } catch (ParseError const& e) {
      auto j    = detail::error_json(e.code(), e.what());
      j["span"] = {e.span().start, e.span().end};
      detail::emit(err, j, false);
      return 2;
    } catch (detail::UsageError const& e) {
      detail::emit(err, detail::error_json("UsageError", e.what()), false);
      return 2;
    } catch (InvalidInput const& e) {
      detail::emit(err, detail::error_json(e.code(), e.what()), false);
      return 2;
    } catch (json::exception const& e) {
      detail::emit(err, detail::error_json("InvalidInput", e.what()), false);
      return 2;
    } catch (Error const& e) {
      detail::emit(err, detail::error_json(e.code(), e.what()), false);
      return 1;
    }
  }

}  // namespace hnnforge::cli

#endif  // HNNFORGE_CLI_HPP_
