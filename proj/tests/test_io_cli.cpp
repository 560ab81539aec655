#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "eulerchar/corpus.hpp"
#include "eulerchar/json_io.hpp"
#include "eulerchar/verification.hpp"

using namespace eulerchar;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("eulerchar-io-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    fs::path p = path / name;
    write_file(p.string(), content);
    return p.string();
  }
};

struct CliResult {
  int code;
  std::string out, err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("fan JSON round trip") {
  for (const auto& nf : corpus::standard_fans()) {
    std::string text = fan_json(nf.fan);
    Fan back = parse_fan_json(text);
    CHECK(back.dim == nf.fan.dim);
    CHECK(back.rays == nf.fan.rays);
    CHECK(back.max_cones == nf.fan.max_cones);
    CHECK(fan_json(back) == text);
  }
  CHECK_THROWS_AS(parse_fan_json("{"), Error);
  CHECK_THROWS_AS(parse_fan_json("{\"dim\": 2}"), Error);
  CHECK_THROWS_AS(parse_fan_json("{\"dim\": \"x\", \"rays\": [], \"max_cones\": []}"), Error);
}

TEST_CASE("closure JSON round trip") {
  for (const GoodClosure& gc : {toric_good_closure(corpus::p2()), corpus::gm_declared(),
                                corpus::a1_seeded(), corpus::a2_bl()}) {
    std::string text = closure_json(gc);
    GoodClosure back = parse_closure_json(text);
    CHECK(back.ambient_dim == gc.ambient_dim);
    CHECK(back.components == gc.components);
    CHECK(back.strata.size() == gc.strata.size());
    CHECK(closure_json(back) == text);
  }

  // Subsets may name components instead of indices.
  GoodClosure byname = parse_closure_json(R"({
    "ambient_dim": 1,
    "components": ["zero", "infinity"],
    "strata": [
      {"subset": [], "motive": "1 + L"},
      {"subset": ["zero"], "motive": "1"},
      {"subset": ["infinity"], "motive": "1"}
    ]
  })");
  CHECK(byname.stratum({0}).motive == parse_class("1"));
  CHECK(mv_print(strata_class(byname, Measure::topological()).value) == "0");

  // Strata incompatible with the declared toric source are rejected.
  CHECK_THROWS_AS(parse_closure_json(R"({
    "toric_source": {"dim": 2, "rays": [[1,0],[0,1],[-1,-1]],
                     "max_cones": [[0,1],[1,2],[0,2]]},
    "strata": [{"subset": [0], "motive": "1 + 7L"}]
  })"), Error);
}

TEST_CASE("variety and seeds JSON round trips") {
  for (const auto& nv : corpus::standard_varieties()) {
    std::string text = variety_json(nv.variety);
    StratifiedVariety back = parse_variety_json(text);
    CHECK(back.name == nv.variety.name);
    CHECK(back.pieces.size() == nv.variety.pieces.size());
    CHECK(back.proper == nv.variety.proper);
    CHECK(variety_json(back) == text);
  }

  SeedTable seeds;
  seeds.set("Cg(2)", "count", "q + 3");
  seeds.set("E", "top", "0");
  SeedTable back = parse_seeds_json(seeds_json(seeds));
  CHECK(back.entries() == seeds.entries());
  CHECK_THROWS_AS(parse_seeds_json("[]"), Error);
}

TEST_CASE("shipped corpus files match the built-in corpus") {
  fs::path root = fs::path(EULERCHAR_REPO_DIR) / "corpus";
  REQUIRE(fs::exists(root));
  for (const auto& nf : corpus::standard_fans()) {
    fs::path p = root / "fans" / (nf.file + ".json");
    CAPTURE(p.string());
    REQUIRE(fs::exists(p));
    CHECK(read_file(p.string()) == fan_json(nf.fan));
  }
  for (const auto& nv : corpus::standard_varieties()) {
    fs::path p = root / "varieties" / (nv.file + ".json");
    CAPTURE(p.string());
    REQUIRE(fs::exists(p));
    CHECK(read_file(p.string()) == variety_json(nv.variety));
  }
  CorpusSet loaded = load_corpus(root.string());
  CHECK(loaded.fans.size() == corpus::standard_fans().size());
  CHECK(loaded.varieties.size() == corpus::standard_varieties().size());
}

TEST_CASE("cli: gw eval") {
  auto r = cli({"gw", "eval", "<1,-1> + <1>", "--field", "Q"});
  CHECK(r.code == 0);
  CHECK(r.out == "h + <1> (rank 3, sig 1)\n");

  CHECK(cli({"gw", "eval", "<1,1>", "--field", "F5"}).out == "h (rank 2)\n");
  CHECK(cli({"gw", "eval", "<1> - <1,2>"}).out == "-<2> (rank -1)\n");
  CHECK(cli({"gw", "eval", "<1,", "--field", "Q"}).code == 2);
  CHECK(cli({"gw", "eval", "<1>", "--field", "F4"}).code == 2);
}

TEST_CASE("cli: fan and class commands") {
  TempDir tmp;
  std::string p2 = tmp.file("p2.json", fan_json(corpus::p2()));
  std::string p112 = tmp.file("p112.json", fan_json(corpus::p112()));
  std::string p3 = tmp.file("p3.json", fan_json(corpus::p3()));
  std::string quadrant =
      tmp.file("quad.json", R"({"dim": 2, "rays": [[1,0],[0,1]], "max_cones": [[0,1]]})");
  std::string broken = tmp.file("broken.json", "{\"dim\": 2,");
  std::string invalid =
      tmp.file("bad.json", R"({"dim": 2, "rays": [[2,0],[0,1]], "max_cones": [[0,1]]})");

  CHECK(cli({"class", "toric", p2}).out == "1 + L + L^2\n");

  CHECK(cli({"fan", "validate", p2}).out == "valid, smooth, complete (verified)\n");
  CHECK(cli({"fan", "validate", p112}).out == "valid, singular, complete (verified)\n");
  CHECK(cli({"fan", "validate", p3}).out == "valid, smooth, complete (structural)\n");
  CHECK(cli({"fan", "validate", quadrant}).out == "valid, smooth, not complete\n");

  auto bad = cli({"fan", "validate", invalid});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("primitive") != std::string::npos);
  CHECK(cli({"fan", "validate", broken}).code == 2);
  CHECK(cli({"fan", "validate", tmp.path.string() + "/absent.json"}).code == 2);

  auto sub = cli({"fan", "subdivide", p2, "--cone", "0,1"});
  CHECK(sub.code == 0);
  Fan blown = parse_fan_json(sub.out);
  CHECK(blown.rays.size() == 4);
  CHECK(blown.rays.back() == std::vector<long long>{1, 1});
  CHECK(cli({"fan", "subdivide", p2, "--cone", "0,1", "--ray", "1,2"}).code == 0);
  CHECK(cli({"fan", "subdivide", p2, "--cone", "0,5"}).code == 2);
  CHECK(cli({"fan", "subdivide", p2, "--cone", "zero"}).code == 2);

  auto res = cli({"fan", "resolve2d", p112});
  CHECK(res.code == 0);
  auto doc = nlohmann::json::parse(res.out);
  CHECK(doc.at("inserted_rays") == nlohmann::json::parse("[[0,-1]]"));
  Fan resolved = parse_fan_json(doc.at("fan").dump());
  CHECK(resolved.rays.size() == 4);
  CHECK(is_smooth(resolved));
}

TEST_CASE("cli: measure and euler commands") {
  TempDir tmp;
  auto r = cli({"measure", "apply", "1 + L + L^2", "--measure", "count"});
  CHECK(r.code == 0);
  CHECK(r.out == "1 + q + q^2\n");
  CHECK(cli({"measure", "apply", "1 + L", "--measure", "gw", "--field", "Q"}).out == "h\n");

  auto noted = cli({"measure", "apply", "[Cg(2)]", "--measure", "top"});
  CHECK(noted.code == 0);
  CHECK(noted.out == "-2\n");
  CHECK(noted.err.find("default") != std::string::npos);

  std::string seeds = tmp.file("seeds.json", R"x({"Cg(2)": {"top": "11"}})x");
  auto seeded = cli({"measure", "apply", "[Cg(2)]", "--measure", "top", "--seeds", seeds});
  CHECK(seeded.out == "11\n");
  CHECK(seeded.err.empty());

  CHECK(cli({"measure", "apply", "1 + L", "--measure", "volume"}).code == 2);

  std::string gm = tmp.file("gm.json", closure_json(corpus::gm_toric()));
  CHECK(cli({"euler", "closure", gm, "--measure", "gw", "--field", "Q"}).out == "<-1> - <1>\n");
  CHECK(cli({"euler", "closure", gm, "--measure", "top"}).out == "0\n");

  std::string nodal = tmp.file("nodal.json", variety_json(corpus::nodal_cubic()));
  CHECK(cli({"euler", "singular", nodal, "--measure", "gw", "--field", "Q"}).out == "<-1>\n");
  CHECK(cli({"euler", "singular", nodal, "--measure", "count"}).out == "q\n");
}

TEST_CASE("cli: identity checks and exit codes") {
  TempDir tmp;
  std::string p2 = tmp.file("p2.json", fan_json(corpus::p2()));
  std::string p1xp1 = tmp.file("p1xp1.json", fan_json(corpus::p1xp1()));
  std::string p2closure = tmp.file("p2c.json", closure_json(toric_good_closure(corpus::p2())));
  std::string nodal = tmp.file("nodal.json", variety_json(corpus::nodal_cubic()));

  auto blowup = cli({"check", "blowup", p2, "--cone", "0,1", "--measure", "gw", "--field", "Q"});
  CHECK(blowup.code == 0);
  CHECK(blowup.out == "lhs=h rhs=h OK\n");

  auto gld = cli({"check", "gld", p2closure, "--cone", "1,2", "--measure", "count"});
  CHECK(gld.code == 0);
  CHECK(gld.out == "lhs=1 - 2q + q^2 rhs=1 - 2q + q^2 OK\n");

  auto gb = cli({"check", "gauss-bonnet", nodal, "--measure", "gw", "--field", "Q"});
  CHECK(gb.code == 0);
  CHECK(gb.out == "lhs=<-1> rhs=<-1> OK\n");

  auto gbj = cli({"check", "gauss-bonnet", nodal, "--measure", "top", "--json"});
  CHECK(gbj.code == 0);
  CHECK(gbj.out.find("\"equal\": true") != std::string::npos);
  CHECK(gbj.out.find("\"measure\": \"top\"") != std::string::npos);

  // A variety whose declared total class disagrees with its strata: the two
  // gauss-bonnet sides differ, which is an identity failure, not bad input.
  StratifiedVariety lying;
  lying.name = "wrong total";
  lying.pieces = {corpus::a1_seeded()};
  lying.total_class = parse_class("5 + L");
  std::string lying_path = tmp.file("lying.json", variety_json(lying));
  auto fail = cli({"check", "gauss-bonnet", lying_path, "--measure", "count"});
  CHECK(fail.code == 1);
  CHECK(fail.out == "lhs=5 + q rhs=q FAIL\n");

  // When both routes of chi_c exist and disagree, the mismatch is reported
  // with both sides printed and exit code 1 as well.
  StratifiedVariety broken = corpus::nodal_cubic();
  broken.total_class = parse_class("1 + 9L");
  std::string broken_path = tmp.file("broken.json", variety_json(broken));
  auto mism = cli({"euler", "singular", broken_path, "--measure", "count"});
  CHECK(mism.code == 0);  // pro degree alone does not consult total_class
  auto mism2 = cli({"check", "gauss-bonnet", broken_path, "--measure", "count"});
  CHECK(mism2.code == 1);
  CHECK(mism2.err.find("CrossCheckMismatch") != std::string::npos);

  auto fact = cli({"check", "factorization", p2, p1xp1, "--classfn", "euler"});
  CHECK(fact.code == 0);
  CHECK(fact.out.find("constant along path: OK") != std::string::npos);
  CHECK(cli({"check", "factorization", p2, p1xp1}).code == 0);

  CHECK(cli({"bogus"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"check"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("cli: suite run") {
  unsetenv("MEL_CORPUS");
  auto first = cli({"suite", "run"});
  CHECK(first.code == 0);
  CHECK(first.out.find("all ") != std::string::npos);
  CHECK(first.out.find("[FAIL]") == std::string::npos);

  // Byte-determinism across runs.
  auto second = cli({"suite", "run"});
  CHECK(second.out == first.out);

  // Corpus resolution: a bad MEL_CORPUS is an input error, but --corpus wins.
  setenv("MEL_CORPUS", "/nonexistent/corpus-dir", 1);
  CHECK(cli({"suite", "run"}).code == 2);
  fs::path root = fs::path(EULERCHAR_REPO_DIR) / "corpus";
  auto flagged = cli({"suite", "run", "--corpus", root.string()});
  CHECK(flagged.code == 0);
  unsetenv("MEL_CORPUS");
  CHECK(flagged.out == first.out);

  auto json = cli({"suite", "run", "--json"});
  CHECK(json.code == 0);
  CHECK(json.out.find("\"failed\": 0") != std::string::npos);
}
