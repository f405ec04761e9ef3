#include <catch_amalgamated.hpp>

#include <sstream>

#include "hnnforge/cli.hpp"

using namespace hnnforge;

namespace {

  std::string data(std::string const& name) {
    return std::string(HNNFORGE_DATA_DIR) + "/" + name;
  }

  struct Run {
    int         code;
    std::string out;
    std::string err;
  };

  Run run(std::vector<std::string> args, std::string const& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    int                code = cli::run(args, out, err, in);
    return {code, out.str(), err.str()};
  }

}  // namespace

TEST_CASE("parse and render", "[cli]") {
  auto r = run({"parse", "--presentation", "< a, b | a^4, b^6, a^2 = b^3 >"});
  CHECK(r.code == 0);
  CHECK(r.out == "< a, b | a^4, b^6, a^2 b^-3 >\n");

  auto bad = run({"parse", "--presentation", "< a | a^0 >"});
  CHECK(bad.code == 2);
  auto j = json::parse(bad.err);
  CHECK(j["span"] == json({8, 9}));

  auto js = run({"parse", "--presentation", "< a | a^2 >", "--json"});
  CHECK(js.code == 0);
  CHECK(json::parse(js.out)["schema"] == "hnn-forge/1");
}

TEST_CASE("solve single words", "[cli]") {
  auto yes = run({"solve", "--hnn", data("bs12.json"), "--word", "t^-1 a t a^-2"});
  CHECK(yes.code == 0);
  CHECK(yes.out == "{\"trivial\":true}\n");
  auto no = run({"solve", "--hnn", data("bs12.json"), "--word", "t^-1 a t a^-1"});
  CHECK(no.out == "{\"trivial\":false}\n");
  auto am = run({"solve", "--amalgam", data("sl2z.json"), "--word", "x^2 y^-3"});
  CHECK(am.out == "{\"trivial\":true}\n");

  CHECK(run({"solve", "--word", "a"}).code == 2);
  CHECK(run({"solve", "--hnn", data("bs12.json")}).code == 2);
  CHECK(run({"solve", "--hnn", data("bs12.json"), "--word", "q"}).code == 2);
}

TEST_CASE("batch solving keeps input order", "[cli]") {
  auto r = run({"solve", "--hnn", data("bs12.json"), "--batch", data("bs12_words.txt")});
  CHECK(r.code == 0);
  CHECK(r.out
        == "{\"trivial\":true}\n{\"trivial\":false}\n{\"trivial\":false}\n"
           "{\"trivial\":true}\n");
  // same bytes every time
  for (int i = 0; i < 5; ++i) {
    CHECK(run({"solve", "--hnn", data("bs12.json"), "--batch", data("bs12_words.txt")}).out
          == r.out);
  }
  auto js = run({"solve", "--hnn", data("bs12.json"), "--batch", data("bs12_words.txt"),
                 "--json"});
  auto j  = json::parse(js.out);
  REQUIRE(j["results"].size() == 4);
  CHECK(j["results"][0]["word"] == "t^-1 a t a^-2");
}

TEST_CASE("constructions", "[cli]") {
  CHECK(run({"hnn", "--hnn", data("bs12.json")}).out == "< a, t | t^-1 a t a^-2 >\n");
  CHECK(run({"gog", "--gog", data("bs12_gog.json")}).out == "< a, t | t^-1 a t a^-2 >\n");
  CHECK(run({"amalgam", "--amalgam", data("sl2z.json")}).out
        == "< x, y | x^4, y^6, x^2 y^-3 >\n");
  CHECK(run({"gog", "--gog", data("sl2z_gog.json")}).out
        == "< x, y | x^4, y^6, x^2 y^-3 >\n");
  auto nf = run({"amalgam", "--amalgam", data("c2c3_amalgam.json"), "--word", "x y x y"});
  CHECK(json::parse(nf.out)["factors"].size() == 4);
  auto br = run({"britton", "--hnn", data("bs12.json"), "--word", "t a^2 t^-1", "--json"});
  CHECK(json::parse(br.out)["reduced"] == "a");
  auto red = run({"reduce", "--presentation", "< a, b | >", "--word", "a b a^-1"});
  CHECK(red.out == "a b a^-1\n");
}

TEST_CASE("balls", "[cli]") {
  auto r = run({"ball", "--gog", data("c2c3.json"), "--radius", "2"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["nodes"].size() == 7);
  auto dot = run({"ball", "--gog", data("c2c3.json"), "--radius", "1", "--dot"});
  CHECK(dot.out.find("graph bass_serre {") != std::string::npos);
  CHECK(run({"ball", "--gog", data("c2c3.json"), "--radius", "1", "--root", "9"}).code == 2);
}

TEST_CASE("embedding commands", "[cli]") {
  auto e = run({"embed2", "--presentation", "< g1 | >"});
  CHECK(e.code == 0);
  auto j = json::parse(e.out);
  CHECK(j["tower"]["K"] == "< g1, u | >");
  CHECK(j["images"]["g1"]
        == "a^-1 b^-1 a b^-1 a b^-1 a^-1 b a^-1 b a b^-1 a b a^-1 b");

  CHECK(run({"hall"}).out == "{\"uniquely_decodable\":true}\n");
  CHECK(run({"hall", "--N", "3", "--json"}).code == 0);

  CHECK(run({"higman", "--f", "n^2", "--N", "10", "--query", "49"}).out
        == "{\"trivial\":true}\n");
  CHECK(run({"higman", "--f", "n^2", "--N", "10", "--query", "50"}).out
        == "{\"trivial\":false}\n");
  auto out_of_range = run({"higman", "--f", "n^2", "--N", "10", "--query", "101"});
  CHECK(out_of_range.code == 1);
  CHECK(json::parse(out_of_range.err)["error"] == "OutOfTruncationRange");
  CHECK(run({"higman", "--f", "n^2", "--N", "0"}).out == "< a, b, c, d | a c^-1 >\n");
}

TEST_CASE("stdin input", "[cli]") {
  CHECK(run({"parse", "--presentation", "-"}, "< a | a^3 >\n").out == "< a | a^3 >\n");
  CHECK(run({"solve", "--hnn", data("bs12.json"), "--batch", "-"}, "t^-1 a t a^-2\n\na\n").out
        == "{\"trivial\":true}\n{\"trivial\":false}\n");
  auto hnn = R"({"base": "< a | >", "stable": "t", "domain": ["a"], "codomain": ["a^3"]})";
  CHECK(run({"hnn", "--hnn", "-"}, hnn).out == "< a, t | t^-1 a t a^-3 >\n");
  CHECK(run({"hnn", "--hnn", "-"}, "not json").code == 2);
}

TEST_CASE("usage errors", "[cli]") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"hnn", "--hnn", data("missing.json")}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
