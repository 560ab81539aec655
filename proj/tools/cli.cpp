#include "cli.hpp"

#include <cstdlib>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "eulerchar/closure.hpp"
#include "eulerchar/corpus.hpp"
#include "eulerchar/euler.hpp"
#include "eulerchar/fan.hpp"
#include "eulerchar/gw.hpp"
#include "eulerchar/json_io.hpp"
#include "eulerchar/motive.hpp"
#include "eulerchar/verification.hpp"

namespace eulerchar {
namespace {

using J = nlohmann::ordered_json;

std::vector<long long> parse_int_list(const std::string& s, const char* opt) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t b = tok.find_first_not_of(" \t");
    size_t e = tok.find_last_not_of(" \t");
    bool ok = b != std::string::npos;
    long long v = 0;
    if (ok) {
      try {
        size_t used = 0;
        v = std::stoll(tok.substr(b, e - b + 1), &used);
        ok = used == e - b + 1;
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok)
      throw Error(Errc::ParseError,
                  std::string(opt) + " expects comma-separated integers, got '" + s + "'");
    out.push_back(v);
  }
  if (out.empty())
    throw Error(Errc::ParseError, std::string(opt) + " expects a nonempty integer list");
  return out;
}

ConeRef cone_arg(const std::string& s) {
  ConeRef c;
  for (long long v : parse_int_list(s, "--cone")) {
    if (v < 0 || v > std::numeric_limits<int>::max())
      throw Error(Errc::ParseError, "--cone indices must be nonnegative ray indices");
    c.push_back(static_cast<int>(v));
  }
  std::sort(c.begin(), c.end());
  return c;
}

Measure measure_arg(const std::string& name, const std::string& field) {
  if (name == "top") return Measure::topological();
  if (name == "count") return Measure::point_count();
  if (name == "gw") return Measure::quadratic(parse_field(field));
  throw Error(Errc::ParseError, "unknown measure '" + name + "' (expected top, count, or gw)");
}

// --measure/--field/--seeds trio shared by the evaluation commands.
struct MeasureOpts {
  std::string measure;
  std::string field = "Q";
  std::string seeds_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--measure", measure, "top | count | gw")->required();
    cmd->add_option("--field", field, "base field for gw: Q, R, or F<p> (default Q)");
    cmd->add_option("--seeds", seeds_path, "JSON seed table for named atoms");
  }

  Measure make() const { return measure_arg(measure, field); }
  SeedTable seeds() const {
    return seeds_path.empty() ? SeedTable{} : parse_seeds_json(read_file(seeds_path));
  }
};

void report_default_seeds(const EvalNotes& notes, std::ostream& err) {
  for (const auto& atom : notes.default_seeds_used)
    err << "note: seed for " << atom << " taken from the external default table"
        << " (override with --seeds)\n";
}

std::string two_sided(const MeasureValue& lhs, const MeasureValue& rhs, bool ok) {
  return "lhs=" + mv_print(lhs) + " rhs=" + mv_print(rhs) + (ok ? " OK" : " FAIL");
}

int cmd_fan_validate(const std::string& file, std::ostream& out) {
  Fan f = parse_fan_json(read_file(file));
  require_valid(f);
  out << "valid, " << (is_smooth(f) ? "smooth" : "singular") << ", " << is_complete(f).str()
      << "\n";
  return 0;
}

int cmd_fan_subdivide(const std::string& file, const std::string& cone,
                      const std::string& ray, std::ostream& out) {
  Fan f = parse_fan_json(read_file(file));
  std::optional<std::vector<long long>> new_ray;
  if (!ray.empty()) new_ray = parse_int_list(ray, "--ray");
  out << fan_json(stellar_subdivide(f, cone_arg(cone), new_ray));
  return 0;
}

int cmd_fan_resolve2d(const std::string& file, std::ostream& out) {
  out << resolution_json(resolve_2d(parse_fan_json(read_file(file))));
  return 0;
}

int cmd_class_toric(const std::string& file, std::ostream& out) {
  out << print_class(class_of_toric(parse_fan_json(read_file(file)))) << "\n";
  return 0;
}

int cmd_measure_apply(const std::string& expr, const MeasureOpts& mo, std::ostream& out,
                      std::ostream& err) {
  EvalNotes notes;
  MeasureValue v = apply_measure(parse_class(expr), mo.make(), mo.seeds(), &notes);
  report_default_seeds(notes, err);
  out << mv_print(v) << "\n";
  return 0;
}

int cmd_euler_closure(const std::string& file, const MeasureOpts& mo, std::ostream& out,
                      std::ostream& err) {
  GoodClosure gc = parse_closure_json(read_file(file));
  EvalNotes notes;
  EulerDegree d = strata_class(gc, mo.make(), mo.seeds(), &notes);
  report_default_seeds(notes, err);
  out << mv_print(d.value) << "\n";
  return 0;
}

int cmd_euler_singular(const std::string& file, const MeasureOpts& mo, std::ostream& out,
                       std::ostream& err) {
  StratifiedVariety v = parse_variety_json(read_file(file));
  EvalNotes notes;
  EulerDegree d = pro_euler_degree(v, mo.make(), mo.seeds(), &notes);
  report_default_seeds(notes, err);
  out << mv_print(d.value) << "\n";
  return 0;
}

int cmd_check_blowup(const std::string& file, const std::string& cone, const MeasureOpts& mo,
                     std::ostream& out) {
  Fan f = parse_fan_json(read_file(file));
  BlowupSquareData sq = blowup_closure(toric_good_closure(f), cone_arg(cone));
  BlowupAdditivityReport rep = check_blowup_additivity(sq, mo.make(), mo.seeds());
  out << two_sided(mv_sub(rep.base.value, rep.center.value),
                   mv_sub(rep.total.value, rep.exceptional.value), rep.holds)
      << "\n";
  return rep.holds ? 0 : 1;
}

int cmd_check_gld(const std::string& file, const std::string& cone, const MeasureOpts& mo,
                  std::ostream& out) {
  GoodClosure gc = parse_closure_json(read_file(file));
  BlowupSquareData sq = blowup_closure(gc, cone_arg(cone));
  GldReport rep = check_good_local_data(sq, mo.make(), mo.seeds());
  out << two_sided(rep.lhs.value, rep.rhs.value, rep.holds) << "\n";
  return rep.holds ? 0 : 1;
}

int cmd_check_gauss_bonnet(const std::string& file, const MeasureOpts& mo, bool as_json,
                           std::ostream& out) {
  StratifiedVariety v = parse_variety_json(read_file(file));
  GaussBonnetReport rep = gauss_bonnet_check(v, mo.make(), mo.seeds());
  if (as_json) {
    J doc;
    doc["lhs"] = mv_print(rep.lhs.value);
    doc["rhs"] = mv_print(rep.rhs.value);
    doc["equal"] = rep.equal;
    doc["measure"] = rep.measure;
    out << doc.dump(2) << "\n";
  } else {
    out << two_sided(rep.lhs.value, rep.rhs.value, rep.equal) << "\n";
  }
  return rep.equal ? 0 : 1;
}

int cmd_check_factorization(const std::string& file_a, const std::string& file_b,
                            const std::string& classfn, std::ostream& out) {
  Fan a = parse_fan_json(read_file(file_a));
  Fan b = parse_fan_json(read_file(file_b));
  FactorizationPath path = weak_factorization_path_2d(a, b);
  std::vector<Fan> stages = replay_path(path);
  out << "path: " << path.moves.size() << " moves, " << stages.size()
      << " stages, all smooth and complete\n";
  if (classfn.empty()) return 0;
  if (classfn != "euler")
    throw Error(Errc::ParseError, "unknown --classfn '" + classfn + "' (expected euler)");
  bool ok = true;
  for (const Measure& m : {Measure::topological(), Measure::quadratic(FieldDescriptor::Q())}) {
    bool constant = verify_closure_compatibility(
        path, [&](const GoodClosure& gc) { return strata_class(gc, m); });
    out << "euler class (" << m.str() << ") constant along path: "
        << (constant ? "OK" : "FAIL") << "\n";
    ok = ok && constant;
  }
  return ok ? 0 : 1;
}

int cmd_gw_eval(const std::string& expr, const std::string& field, std::ostream& out) {
  GWElement x = parse_gw(expr, parse_field(field));
  std::optional<Int> sig;
  try {
    sig = invariants(x).signature;
  } catch (const Error& e) {
    if (e.code() != Errc::VirtualFormNotClassifiable) throw;
  }
  out << print_gw(x) << " (rank " << gw_rank(x);
  if (sig) out << ", sig " << *sig;
  out << ")\n";
  return 0;
}

int cmd_suite_run(const std::string& corpus_dir, bool as_json, std::ostream& out) {
  std::string dir = corpus_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("MEL_CORPUS")) dir = env;
  }
  CorpusSet corpus = dir.empty() ? builtin_corpus() : load_corpus(dir);
  std::vector<CheckResult> results = run_all_checks(corpus);
  size_t failed = 0;
  for (const CheckResult& r : results)
    if (!r.ok) ++failed;
  if (as_json) {
    J doc;
    doc["checks"] = J::array();
    for (const CheckResult& r : results) {
      J item;
      item["id"] = r.id;
      item["ok"] = r.ok;
      item["detail"] = r.detail;
      doc["checks"].push_back(std::move(item));
    }
    doc["total"] = results.size();
    doc["failed"] = failed;
    out << doc.dump(2) << "\n";
  } else {
    for (const CheckResult& r : results) {
      out << (r.ok ? "[PASS] " : "[FAIL] ") << r.id;
      if (!r.detail.empty()) out << ": " << r.detail;
      out << "\n";
    }
    if (failed == 0)
      out << "all " << results.size() << " checks passed\n";
    else
      out << failed << " of " << results.size() << " checks failed\n";
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Euler degrees of stratified varieties: toric fans, good closures, and"
               " motivic measures"};
  app.name("eulerchar");
  app.require_subcommand(1);
  std::function<int()> action;

  // Option storage; lives until run_cli returns, which the callbacks rely on.
  std::string fv_file;
  std::string fs_file, fs_cone, fs_ray;
  std::string fr_file;
  std::string ct_file;
  std::string ma_expr;
  MeasureOpts ma_mo;
  std::string ec_file;
  MeasureOpts ec_mo;
  std::string es_file;
  MeasureOpts es_mo;
  std::string cb_file, cb_cone;
  MeasureOpts cb_mo;
  std::string cg_file, cg_cone;
  MeasureOpts cg_mo;
  std::string gb_file;
  MeasureOpts gb_mo;
  bool gb_json = false;
  std::string cf_a, cf_b, cf_classfn;
  std::string ge_expr, ge_field = "Q";
  std::string sr_corpus;
  bool sr_json = false;

  auto* fan = app.add_subcommand("fan", "inspect and transform fans");
  fan->require_subcommand(1);
  {
    auto* c = fan->add_subcommand("validate", "structural validation, smoothness, completeness");
    c->add_option("file", fv_file, "fan JSON")->required();
    c->callback([&] { action = [&] { return cmd_fan_validate(fv_file, out); }; });
  }
  {
    auto* c = fan->add_subcommand("subdivide", "stellar subdivision at a cone");
    c->add_option("file", fs_file, "fan JSON")->required();
    c->add_option("--cone", fs_cone, "ray indices i,j[,k] of the cone")->required();
    c->add_option("--ray", fs_ray, "coordinates x,y[,z] of the new ray (default: primitive sum)");
    c->callback([&] { action = [&] { return cmd_fan_subdivide(fs_file, fs_cone, fs_ray, out); }; });
  }
  {
    auto* c = fan->add_subcommand("resolve2d", "minimal smooth refinement of a 2D fan");
    c->add_option("file", fr_file, "fan JSON")->required();
    c->callback([&] { action = [&] { return cmd_fan_resolve2d(fr_file, out); }; });
  }

  auto* cls = app.add_subcommand("class", "classes in the motive ring");
  cls->require_subcommand(1);
  {
    auto* c = cls->add_subcommand("toric", "class of a toric variety from its fan");
    c->add_option("file", ct_file, "fan JSON")->required();
    c->callback([&] { action = [&] { return cmd_class_toric(ct_file, out); }; });
  }

  auto* meas = app.add_subcommand("measure", "evaluate measures on classes");
  meas->require_subcommand(1);
  {
    auto* c = meas->add_subcommand("apply", "apply a measure to a class expression");
    c->add_option("class", ma_expr, "class expression, e.g. \"1 + L + L^2\"")->required();
    ma_mo.attach(c);
    c->callback([&] { action = [&] { return cmd_measure_apply(ma_expr, ma_mo, out, err); }; });
  }

  auto* euler = app.add_subcommand("euler", "Euler degrees");
  euler->require_subcommand(1);
  {
    auto* c = euler->add_subcommand("closure", "strata degree of a good closure");
    c->add_option("file", ec_file, "closure JSON")->required();
    ec_mo.attach(c);
    c->callback([&] { action = [&] { return cmd_euler_closure(ec_file, ec_mo, out, err); }; });
  }
  {
    auto* c = euler->add_subcommand("singular", "Euler degree of a stratified variety");
    c->add_option("file", es_file, "variety JSON")->required();
    es_mo.attach(c);
    c->callback([&] { action = [&] { return cmd_euler_singular(es_file, es_mo, out, err); }; });
  }

  auto* check = app.add_subcommand("check", "verify identities (exit 1 when one fails)");
  check->require_subcommand(1);
  {
    auto* c = check->add_subcommand("blowup", "degree additivity under a toric blow-up");
    c->add_option("file", cb_file, "fan JSON")->required();
    c->add_option("--cone", cb_cone, "ray indices of the center")->required();
    cb_mo.attach(c);
    c->callback([&] { action = [&] { return cmd_check_blowup(cb_file, cb_cone, cb_mo, out); }; });
  }
  {
    auto* c = check->add_subcommand("gld", "good local data under a boundary blow-up");
    c->add_option("file", cg_file, "closure JSON (with a toric source)")->required();
    c->add_option("--cone", cg_cone, "ray indices of the center")->required();
    cg_mo.attach(c);
    c->callback([&] { action = [&] { return cmd_check_gld(cg_file, cg_cone, cg_mo, out); }; });
  }
  {
    auto* c = check->add_subcommand("gauss-bonnet", "chi_c vs. the stratified Euler degree");
    c->add_option("file", gb_file, "variety JSON")->required();
    gb_mo.attach(c);
    c->add_flag("--json", gb_json, "emit the report as JSON");
    c->callback([&] { action = [&] { return cmd_check_gauss_bonnet(gb_file, gb_mo, gb_json, out); }; });
  }
  {
    auto* c = check->add_subcommand("factorization",
                                    "weak factorization path between two smooth complete 2D fans");
    c->add_option("fanA", cf_a, "first fan JSON")->required();
    c->add_option("fanB", cf_b, "second fan JSON")->required();
    c->add_option("--classfn", cf_classfn, "class function to carry along the path (euler)");
    c->callback([&] { action = [&] { return cmd_check_factorization(cf_a, cf_b, cf_classfn, out); }; });
  }

  auto* gw = app.add_subcommand("gw", "Grothendieck-Witt arithmetic");
  gw->require_subcommand(1);
  {
    auto* c = gw->add_subcommand("eval", "canonicalize a form expression");
    c->add_option("expr", ge_expr, "e.g. \"<1,-1> + <1>\"")->required();
    c->add_option("--field", ge_field, "Q, R, or F<p> (default Q)");
    c->callback([&] { action = [&] { return cmd_gw_eval(ge_expr, ge_field, out); }; });
  }

  auto* suite = app.add_subcommand("suite", "self-check suites over the corpus");
  suite->require_subcommand(1);
  {
    auto* c = suite->add_subcommand("run", "run every corpus check");
    c->add_option("--corpus", sr_corpus, "corpus directory (default: $MEL_CORPUS, else built-in)");
    c->add_flag("--json", sr_json, "emit results as JSON");
    c->callback([&] { action = [&] { return cmd_suite_run(sr_corpus, sr_json, out); }; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }
  if (!action) {
    err << app.help();
    return 2;
  }
  try {
    return action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::CrossCheckMismatch ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace eulerchar
