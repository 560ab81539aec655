// Acceptance harness: one line per shipped guarantee, independent of the unit
// suites.  Exits 0 iff every criterion passes.  Reference values come from the
// brute-force oracles, never from the library under test.

#include <chrono>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eulerchar/closure.hpp"
#include "eulerchar/corpus.hpp"
#include "eulerchar/euler.hpp"
#include "eulerchar/fan.hpp"
#include "eulerchar/gw.hpp"
#include "eulerchar/motive.hpp"
#include "oracles.hpp"

using namespace eulerchar;

namespace {

const Measure kTop = Measure::topological();
const Measure kCount = Measure::point_count();
const Measure kGw = Measure::quadratic(FieldDescriptor::Q());
const std::vector<Measure> kAllMeasures{kTop, kCount, kGw};

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::string cone_str(const ConeRef& c) {
  std::string s = "{";
  for (size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + "}";
}

// 1. The Euler degree of a smooth open variety does not depend on which good
//    closure presents it, and matches the pinned classical values.
Outcome closure_independence() {
  struct Group {
    std::string open_set;
    std::vector<GoodClosure> closures;
    std::string top, quad;
  };
  std::vector<Group> groups;
  groups.push_back({"G_m",
                    {corpus::gm_toric(), corpus::gm_declared(), corpus::p1_minus_points(2)},
                    "0",
                    "<-1> - <1>"});
  groups.push_back({"A^1", {corpus::a1_p1(), corpus::a1_seeded()}, "1", "<-1>"});
  groups.push_back({"A^2", {corpus::a2_p2(), corpus::a2_p1xp1(), corpus::a2_bl()}, "1", "<1>"});
  groups.push_back({"G_m^2",
                    {toric_good_closure(corpus::p2()), toric_good_closure(corpus::p1xp1()),
                     toric_good_closure(corpus::bl_pt_p2()),
                     toric_good_closure(corpus::hirzebruch(2))},
                    "0",
                    "2<1> - 2<-1>"});
  groups.push_back(
      {"A^1 x G_m", {corpus::a1_gm_p1xp1(), corpus::a1_gm_bl()}, "0", "<1> - <-1>"});

  size_t closures = 0;
  for (const Group& g : groups) {
    if (g.closures.size() < 2)
      return {false, g.open_set + " is presented by fewer than two closures"};
    MeasureValue top_want = parse_measure_value(g.top, kTop);
    MeasureValue quad_want = parse_measure_value(g.quad, kGw);
    for (const GoodClosure& gc : g.closures) {
      ++closures;
      MeasureValue top_got = strata_class(gc, kTop).value;
      if (!mv_equal(top_got, top_want))
        return {false, "a closure of " + g.open_set + " has topological degree " +
                           mv_print(top_got) + ", expected " + g.top};
      MeasureValue quad_got = strata_class(gc, kGw).value;
      if (!mv_equal(quad_got, quad_want))
        return {false, "a closure of " + g.open_set + " has quadratic degree " +
                           mv_print(quad_got) + ", expected " + g.quad};
    }
  }
  std::ostringstream d;
  d << groups.size() << " open varieties, " << closures
    << " closures: degrees independent of the closure and equal to the pinned values";
  return {true, d.str()};
}

// 2. chi_c == the stratification-built Euler degree on every proper corpus
//    variety, over Z and over GW(Q), with pinned degrees for the classics.
Outcome singular_gauss_bonnet() {
  auto vars = corpus::standard_varieties();
  size_t proper = 0, comparisons = 0;
  for (const auto& nv : vars) {
    if (!nv.variety.proper) continue;
    ++proper;
    for (const Measure& m : {kTop, kGw}) {
      GaussBonnetReport rep = gauss_bonnet_check(nv.variety, m);
      if (!rep.equal)
        return {false, nv.file + " under " + m.str() + ": " + mv_print(rep.lhs.value) +
                           " vs " + mv_print(rep.rhs.value)};
      ++comparisons;
    }
  }
  if (proper < 8)
    return {false, "only " + std::to_string(proper) + " proper varieties in the corpus"};

  struct Spot {
    const char* name;
    const char* quad;
  };
  for (const Spot& s : {Spot{"nodal cubic", "<-1>"}, Spot{"cuspidal cubic", "h"},
                        Spot{"P(1,1,2)", "h + <1>"}}) {
    bool seen = false;
    for (const auto& nv : vars) {
      if (nv.variety.name != s.name) continue;
      seen = true;
      MeasureValue got = pro_euler_degree(nv.variety, kGw).value;
      if (!mv_equal(got, parse_measure_value(s.quad, kGw)))
        return {false, std::string(s.name) + " has quadratic degree " + mv_print(got) +
                           ", expected " + s.quad};
    }
    if (!seen) return {false, std::string("corpus lacks ") + s.name};
  }
  std::ostringstream d;
  d << proper << " proper varieties x 2 measures (" << comparisons
    << " two-route comparisons), classical degrees pinned";
  return {true, d.str()};
}

// The smooth complete surface fans of the corpus with at most `max_rays` rays.
std::vector<corpus::NamedFan> smooth_surface_fans(size_t max_rays) {
  std::vector<corpus::NamedFan> out;
  for (auto& nf : corpus::standard_fans()) {
    if (nf.fan.dim != 2 || nf.fan.rays.size() > max_rays) continue;
    if (!is_smooth(nf.fan) || !is_complete(nf.fan).complete) continue;
    out.push_back(std::move(nf));
  }
  return out;
}

// 3. Degree additivity under fixed-point blow-ups, across every corpus
//    surface and every torus-fixed center, plus a point blow-up of P^3.
Outcome blowup_additivity() {
  size_t squares = 0, comparisons = 0;
  for (const auto& nf : smooth_surface_fans(12)) {
    GoodClosure base = toric_good_closure(nf.fan);
    for (const ConeRef& c : nf.fan.max_cones) {
      BlowupSquareData sq = blowup_closure(base, c);
      ++squares;
      for (const Measure& m : kAllMeasures) {
        BlowupAdditivityReport rep = check_blowup_additivity(sq, m);
        if (!rep.holds)
          return {false, nf.file + " blown up at " + cone_str(c) + " under " + m.str()};
        ++comparisons;
      }
      if (nf.file == "p2") {
        MeasureValue total = check_blowup_additivity(sq, kGw).total.value;
        if (!mv_equal(total, parse_measure_value("2h", kGw)))
          return {false, "the blown-up plane has quadratic degree " + mv_print(total) +
                             ", expected 2h"};
      }
    }
  }
  BlowupSquareData sq3 = blowup_closure(toric_good_closure(corpus::p3()), {0, 1, 2});
  ++squares;
  for (const Measure& m : kAllMeasures) {
    BlowupAdditivityReport rep = check_blowup_additivity(sq3, m);
    if (!rep.holds) return {false, "P^3 blown up at a point fails under " + m.str()};
    ++comparisons;
  }
  MeasureValue total3 = check_blowup_additivity(sq3, kGw).total.value;
  if (!mv_equal(total3, parse_measure_value("3h", kGw)))
    return {false, "blown-up P^3 has quadratic degree " + mv_print(total3) + ", expected 3h"};
  std::ostringstream d;
  d << squares << " blow-up squares x 3 measures are additive; degrees 2h (plane) and 3h"
    << " (P^3) pinned";
  return {true, d.str()};
}

// 4. Boundary-corner blow-ups of the P^2 and P^1 x P^1 torus closures leave
//    the open degree unchanged.
Outcome good_local_data() {
  size_t corners = 0, comparisons = 0;
  for (const Fan& f : {corpus::p2(), corpus::p1xp1()}) {
    GoodClosure gc = toric_good_closure(f);
    for (const ConeRef& c : f.max_cones) {
      BlowupSquareData sq = blowup_closure(gc, c);
      ++corners;
      for (const Measure& m : kAllMeasures) {
        GldReport rep = check_good_local_data(sq, m);
        if (!rep.holds)
          return {false, "corner " + cone_str(c) + " under " + m.str() + ": " +
                             mv_print(rep.lhs.value) + " vs " + mv_print(rep.rhs.value)};
        ++comparisons;
      }
    }
  }
  std::ostringstream d;
  d << corners << " boundary corners x 3 measures: open degree survives the blow-up";
  return {true, d.str()};
}

// 5. Weak factorization between random smooth complete surface fans: a path
//    is found quickly, every stage is a smooth complete fan, and the Euler
//    degree is constant along it.
Outcome weak_factorization() {
  size_t total_moves = 0;
  double worst_ms = 0;
  for (int i = 0; i < 10; ++i) {
    Fan a = corpus::random_smooth_complete_2d(9000 + 2 * i, 10);
    Fan b = corpus::random_smooth_complete_2d(9001 + 2 * i, 10);
    auto t0 = std::chrono::steady_clock::now();
    FactorizationPath path = weak_factorization_path_2d(a, b);
    std::vector<Fan> stages = replay_path(path);
    for (const Fan& s : stages)
      if (!validate_fan(s).empty() || !is_smooth(s) || !is_complete(s).complete)
        return {false, "pair " + std::to_string(i) + " passes through a bad stage"};
    bool top_ok = verify_closure_compatibility(
        path, [&](const GoodClosure& gc) { return strata_class(gc, kTop); });
    bool quad_ok = verify_closure_compatibility(
        path, [&](const GoodClosure& gc) { return strata_class(gc, kGw); });
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    worst_ms = std::max(worst_ms, ms);
    if (ms >= 1000.0)
      return {false, "pair " + std::to_string(i) + " took " + std::to_string(ms) + "ms"};
    if (!top_ok || !quad_ok)
      return {false, "degree not constant along the path of pair " + std::to_string(i)};
    total_moves += path.moves.size();
  }
  std::ostringstream d;
  d << "10 random fan pairs, " << total_moves
    << " moves in total, all stages smooth and complete, degrees constant; slowest pair "
    << static_cast<long long>(worst_ms) << "ms";
  return {true, d.str()};
}

// 6. The class-level relation [Xt] - [E] == [X] - [C] for every generated
//    toric blow-up.
Outcome blowup_class_relation() {
  size_t checked = 0;
  auto check_one = [&](const std::string& label, const Fan& f, const ConeRef& c) -> Outcome {
    Fan blown = stellar_subdivide(f, c);
    int e_index = static_cast<int>(f.rays.size());
    MotiveClass x = class_of_toric(f);
    MotiveClass xt = class_of_toric(blown);
    MotiveClass center = class_of_toric(star_fan(f, c));
    MotiveClass exc = class_of_toric(star_fan(blown, {e_index}));
    if (!bittner_blowup_check(x, center, xt, exc))
      return {false, label + " at " + cone_str(c) + ": class relation fails"};
    ++checked;
    return {true, ""};
  };
  for (const auto& nf : smooth_surface_fans(12))
    for (const ConeRef& c : nf.fan.max_cones) {
      Outcome o = check_one(nf.file, nf.fan, c);
      if (!o.ok) return o;
    }
  Outcome o3 = check_one("p3", corpus::p3(), {0, 1, 2});
  if (!o3.ok) return o3;
  std::ostringstream d;
  d << checked << " toric blow-ups satisfy the exact class relation";
  return {true, d.str()};
}

// 7. The quadratic-form kernel: Hilbert reciprocity, ring laws, Witt
//    cancellation, and brute-forced finite-field isometry.
Outcome quadratic_form_kernel() {
  std::mt19937_64 rng(31337);
  auto draw = [&](long long lo, long long hi) {
    std::uniform_int_distribution<long long> d(lo, hi);
    return d(rng);
  };
  auto draw_nonzero = [&](long long lo, long long hi) {
    long long v = 0;
    do {
      v = draw(lo, hi);
    } while (v == 0);
    return v;
  };

  for (int i = 0; i < 200; ++i) {
    Int a = draw_nonzero(-999, 999);
    Int b = draw_nonzero(-999, 999);
    std::set<Int> odd_primes;
    for (const auto& [p, e] : factorize(a))
      if (p != 2) odd_primes.insert(p);
    for (const auto& [p, e] : factorize(b))
      if (p != 2) odd_primes.insert(p);
    int prod = hilbert_symbol(a, b, Place::inf()) * hilbert_symbol(a, b, Place::prime(2));
    for (const Int& p : odd_primes) prod *= hilbert_symbol(a, b, Place::prime(p));
    if (prod != 1)
      return {false, "reciprocity fails for a=" + a.str() + ", b=" + b.str()};
  }

  const std::vector<FieldDescriptor> fields{FieldDescriptor::Q(), FieldDescriptor::R(),
                                            FieldDescriptor::Fp(3), FieldDescriptor::Fp(5),
                                            FieldDescriptor::Fp(7)};
  auto random_form = [&](const FieldDescriptor& f, int max_rank) {
    int n = static_cast<int>(draw(0, max_rank));
    std::vector<Int> diag;
    for (int i = 0; i < n; ++i) {
      Int e = draw_nonzero(-20, 20);
      if (f.kind == FieldDescriptor::Kind::FinitePrime && e % f.p == 0) e += 1;
      diag.push_back(e);
    }
    return form_from_diagonal(f, diag);
  };
  for (const FieldDescriptor& f : fields)
    for (int i = 0; i < 30; ++i) {
      GWElement a = random_form(f, 6), b = random_form(f, 6), c = random_form(f, 6);
      bool laws = gw_add(a, b) == gw_add(b, a) && gw_mul(a, b) == gw_mul(b, a) &&
                  gw_add(gw_add(a, b), c) == gw_add(a, gw_add(b, c)) &&
                  gw_mul(gw_mul(a, b), c) == gw_mul(a, gw_mul(b, c)) &&
                  gw_mul(a, gw_add(b, c)) == gw_add(gw_mul(a, b), gw_mul(a, c)) &&
                  gw_add(a, gw_neg(a)) == gw_zero(f) && gw_mul(a, gw_unit(f)) == a &&
                  gw_mul(a, gw_zero(f)) == gw_zero(f);
      if (!laws) return {false, "a ring law fails over " + f.str()};
    }
  for (const FieldDescriptor& f :
       {FieldDescriptor::Q(), FieldDescriptor::R(), FieldDescriptor::Fp(5)})
    for (int i = 0; i < 100; ++i) {
      GWElement a = random_form(f, 6), b = random_form(f, 6), c = random_form(f, 6);
      if (gw_equals(gw_add(a, c), gw_add(b, c)) != gw_equals(a, b))
        return {false, "Witt cancellation fails over " + f.str()};
    }

  size_t brute_forced = 0;
  for (long long p : {3LL, 5LL, 7LL}) {
    FieldDescriptor f = FieldDescriptor::Fp(p);
    for (int i = 0; i < 80; ++i) {
      int n = static_cast<int>(draw(1, 3));
      std::vector<long long> a, b;
      std::vector<Int> ai, bi;
      for (int k = 0; k < n; ++k) {
        a.push_back(draw(1, p - 1));
        b.push_back(draw(1, p - 1));
        ai.push_back(a.back());
        bi.push_back(b.back());
      }
      bool lib = gw_equals(form_from_diagonal(f, ai), form_from_diagonal(f, bi));
      bool oracle = oracles::fp_isometric_counts(a, b, p);
      if (lib != oracle)
        return {false, "isometry over F" + std::to_string(p) +
                           " disagrees with the representation counts"};
      if (p == 3 || n <= 2) {
        if (oracles::fp_isometric_transporter(a, b, p) != oracle)
          return {false, "the two brute-force oracles disagree over F" + std::to_string(p)};
      }
      ++brute_forced;
    }
  }
  std::ostringstream d;
  d << "200 reciprocity pairs, ring laws over 5 fields, 300 cancellation checks, "
    << brute_forced << " brute-forced finite-field isometries";
  return {true, d.str()};
}

// 8. Counting: the topological degree of a toric variety equals its number of
//    maximal cones, and point counts match honest enumeration over F_q.
Outcome counting_measures() {
  auto fans = corpus::standard_fans();
  for (const auto& nf : fans) {
    MeasureValue got = apply_measure(class_of_toric(nf.fan), kTop);
    MeasureValue want = Int(static_cast<long long>(nf.fan.max_cones.size()));
    if (!mv_equal(got, want))
      return {false, nf.file + ": topological degree " + mv_print(got) + " != " +
                         mv_print(want) + " maximal cones"};
  }
  auto count_at = [](const Fan& f, long long q) {
    return std::get<QPoly>(apply_measure(class_of_toric(f), kCount)).eval(q);
  };
  for (long long q : {3LL, 5LL}) {
    struct Case {
      const char* label;
      Fan fan;
      long long want;
    };
    const Case cases[] = {
        {"P^1", corpus::p1(), oracles::count_projective_space(1, q)},
        {"P^2", corpus::p2(), oracles::count_projective_space(2, q)},
        {"P^1 x P^1", corpus::p1xp1(), oracles::count_p1xp1(q)},
        {"Bl_pt P^2", corpus::bl_pt_p2(), oracles::count_blowup_p2(q)},
    };
    for (const Case& c : cases)
      if (count_at(c.fan, q) != Int(c.want))
        return {false, std::string(c.label) + " at q=" + std::to_string(q) +
                           " disagrees with enumeration (" + std::to_string(c.want) + ")"};
  }
  std::ostringstream d;
  d << fans.size() << " fans have topological degree == #max cones; point counts at q=3,5 "
    << "match enumeration for P^1, P^2, P^1 x P^1, Bl_pt P^2";
  return {true, d.str()};
}

// 9. Every corpus variety ships with at least two stratifications, and all of
//    them produce the same Euler degrees.
Outcome stratification_independence() {
  auto vars = corpus::standard_varieties();
  std::map<std::string, std::vector<const StratifiedVariety*>> groups;
  for (const auto& nv : vars) groups[nv.variety.name].push_back(&nv.variety);
  size_t comparisons = 0;
  for (const auto& [name, vs] : groups) {
    if (vs.size() < 2) return {false, "'" + name + "' has a single stratification"};
    for (const Measure& m : kAllMeasures) {
      EulerDegree first = pro_euler_degree(*vs[0], m);
      for (size_t i = 1; i < vs.size(); ++i) {
        if (pro_euler_degree(*vs[i], m) != first)
          return {false, "'" + name + "' disagrees with itself under " + m.str()};
        ++comparisons;
      }
    }
  }
  if (groups.size() < 7)
    return {false, "only " + std::to_string(groups.size()) + " distinct varieties"};
  std::ostringstream d;
  d << groups.size() << " varieties x >= 2 stratifications x 3 measures: " << comparisons
    << " degree agreements";
  return {true, d.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion table[] = {
      {"closure independence", closure_independence},
      {"singular Gauss-Bonnet", singular_gauss_bonnet},
      {"blow-up additivity", blowup_additivity},
      {"good local data at corners", good_local_data},
      {"weak factorization", weak_factorization},
      {"class-level blow-up relation", blowup_class_relation},
      {"quadratic-form kernel", quadratic_form_kernel},
      {"counting measures", counting_measures},
      {"stratification independence", stratification_independence},
  };
  bool all_ok = true;
  int index = 0;
  for (const Criterion& cr : table) {
    ++index;
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.ok ? "[PASS]" : "[FAIL]") << " criterion " << index << " (" << cr.name
              << "): " << o.detail << "\n";
    all_ok = all_ok && o.ok;
  }
  return all_ok ? 0 : 1;
}
