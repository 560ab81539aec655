#include "eulerchar/corpus.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace eulerchar::corpus {

namespace {

StratumData with_class(const std::string& cls) {
  StratumData d;
  d.motive = parse_class(cls);
  return d;
}

StratumData with_seeds(std::map<std::string, std::string> seeds) {
  StratumData d;
  d.seeds = std::move(seeds);
  return d;
}

}  // namespace

// --- fans ---

Fan p1() { return {1, {{1}, {-1}}, {{0}, {1}}}; }

Fan p2() { return {2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}}}; }

Fan p3() {
  return {3,
          {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}},
          {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
}

Fan p1xp1() {
  return {2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}};
}

Fan p1cubed() {
  Fan f;
  f.dim = 3;
  f.rays = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
  for (int sx : {0, 3})
    for (int sy : {1, 4})
      for (int sz : {2, 5}) f.max_cones.push_back({sx, sy, sz});
  return f;
}

Fan hirzebruch(long long a) {
  return {2, {{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}};
}

Fan p112() { return {2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {0, 2}}}; }

Fan bl_pt_p2() { return stellar_subdivide(p2(), {0, 1}); }

Fan random_smooth_complete_2d(uint64_t seed, int max_rays) {
  std::mt19937_64 rng(seed);
  Fan f = (rng() & 1) ? p1xp1() : p2();
  int base = static_cast<int>(f.rays.size());
  if (max_rays <= base) return f;
  int target = base + static_cast<int>(rng() % static_cast<uint64_t>(max_rays - base + 1));
  while (static_cast<int>(f.rays.size()) < target) {
    size_t i = rng() % f.max_cones.size();
    f = stellar_subdivide(f, f.max_cones[i]);
  }
  return f;
}

Fan random_singular_complete_2d(uint64_t seed) {
  for (uint64_t attempt = 0; attempt < 1000; ++attempt) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + attempt + 1);
    int n = 4 + static_cast<int>(rng() % 4);
    std::set<std::vector<long long>> rayset;
    for (int guard = 0; static_cast<int>(rayset.size()) < n && guard < 400; ++guard) {
      long long x = static_cast<long long>(rng() % 9) - 4;
      long long y = static_cast<long long>(rng() % 9) - 4;
      if (x == 0 && y == 0) continue;
      rayset.insert(primitive({x, y}));
    }
    if (static_cast<int>(rayset.size()) < n) continue;

    std::vector<std::vector<long long>> rays(rayset.begin(), rayset.end());
    std::sort(rays.begin(), rays.end(), ray_angle_less);
    bool convex_steps = true, singular = false;
    for (int i = 0; i < n; ++i) {
      const auto& u = rays[i];
      const auto& v = rays[(i + 1) % n];
      long long cross = u[0] * v[1] - u[1] * v[0];
      if (cross <= 0) {
        convex_steps = false;
        break;
      }
      if (cross >= 2) singular = true;
    }
    if (!convex_steps || !singular) continue;

    Fan f;
    f.dim = 2;
    f.rays = std::move(rays);
    for (int i = 0; i < n; ++i) {
      int j = (i + 1) % n;
      f.max_cones.push_back({std::min(i, j), std::max(i, j)});
    }
    require_valid(f);
    return f;
  }
  throw Error(Errc::Unsupported, "failed to sample a singular complete fan");
}

// --- good closures ---

GoodClosure point_closure(const Int& count) {
  std::map<Subset, StratumData> strata;
  StratumData d;
  d.motive = MotiveClass::constant(count);
  strata.emplace(Subset{}, std::move(d));
  return make_good_closure(0, {}, std::move(strata));
}

GoodClosure gm_toric() { return toric_good_closure(p1()); }

GoodClosure gm_declared() {
  std::map<Subset, StratumData> strata;
  strata.emplace(Subset{}, with_class("1 + L"));
  strata.emplace(Subset{0}, with_class("1"));
  strata.emplace(Subset{1}, with_class("1"));
  return make_good_closure(1, {"zero", "infinity"}, std::move(strata));
}

GoodClosure gm_bundle(const Int& copies) {
  std::map<Subset, StratumData> strata;
  StratumData amb;
  amb.motive = mc_scale(copies, parse_class("1 + L"));
  strata.emplace(Subset{}, std::move(amb));
  StratumData ends;
  ends.motive = MotiveClass::constant(2 * copies);
  strata.emplace(Subset{0}, std::move(ends));
  return make_good_closure(1, {"ends"}, std::move(strata));
}

GoodClosure a1_p1() {
  std::map<Subset, StratumData> strata;
  strata.emplace(Subset{}, with_class("1 + L"));
  strata.emplace(Subset{0}, with_class("1"));
  return make_good_closure(1, {"infinity"}, std::move(strata));
}

GoodClosure a1_seeded() {
  std::map<Subset, StratumData> strata;
  strata.emplace(Subset{},
                 with_seeds({{"top", "2"}, {"count", "q + 1"}, {"gw", "h"}}));
  strata.emplace(Subset{0},
                 with_seeds({{"top", "1"}, {"count", "1"}, {"gw", "<1>"}}));
  return make_good_closure(1, {"infinity"}, std::move(strata));
}

GoodClosure p1_minus_points(int k) {
  std::map<Subset, StratumData> strata;
  strata.emplace(Subset{}, with_class("1 + L"));
  std::vector<std::string> components;
  for (int i = 0; i < k; ++i) {
    components.push_back("q" + std::to_string(i));
    strata.emplace(Subset{i}, with_class("1"));
  }
  return make_good_closure(1, std::move(components), std::move(strata));
}

GoodClosure a2_p2() {
  std::map<Subset, StratumData> strata;
  strata.emplace(Subset{}, with_class("1 + L + L^2"));
  strata.emplace(Subset{0}, with_class("1 + L"));
  return make_good_closure(2, {"line"}, std::move(strata));
}

GoodClosure a2_p1xp1() {
  std::map<Subset, StratumData> strata;
  strata.emplace(Subset{}, with_class("1 + 2L + L^2"));
  strata.emplace(Subset{0}, with_class("1 + L"));
  strata.emplace(Subset{1}, with_class("1 + L"));
  strata.emplace(Subset{0, 1}, with_class("1"));
  return make_good_closure(2, {"h", "v"}, std::move(strata));
}

GoodClosure a2_bl() {
  // Blow up P^2 at a point of the line at infinity: the boundary becomes the
  // strict transform of the line plus the exceptional curve, meeting once.
  std::map<Subset, StratumData> strata;
  strata.emplace(Subset{}, with_class("1 + 2L + L^2"));
  strata.emplace(Subset{0}, with_class("1 + L"));
  strata.emplace(Subset{1}, with_class("1 + L"));
  strata.emplace(Subset{0, 1}, with_class("1"));
  return make_good_closure(2, {"line", "e"}, std::move(strata));
}

GoodClosure a1_gm_p1xp1() {
  // A^1 x G_m in P^1 x P^1; boundary: the infinity section and the two
  // horizontal sections over 0 and infinity of the second factor.
  std::map<Subset, StratumData> strata;
  strata.emplace(Subset{}, with_class("1 + 2L + L^2"));
  strata.emplace(Subset{0}, with_class("1 + L"));
  strata.emplace(Subset{1}, with_class("1 + L"));
  strata.emplace(Subset{2}, with_class("1 + L"));
  strata.emplace(Subset{0, 1}, with_class("1"));
  strata.emplace(Subset{0, 2}, with_class("1"));
  return make_good_closure(2, {"sect", "z", "w"}, std::move(strata));
}

GoodClosure a1_gm_bl() {
  // Same open set after blowing up the corner where sect meets z; the
  // exceptional curve separates them.
  std::map<Subset, StratumData> strata;
  strata.emplace(Subset{}, with_class("1 + 3L + L^2"));
  strata.emplace(Subset{0}, with_class("1 + L"));
  strata.emplace(Subset{1}, with_class("1 + L"));
  strata.emplace(Subset{2}, with_class("1 + L"));
  strata.emplace(Subset{3}, with_class("1 + L"));
  strata.emplace(Subset{0, 2}, with_class("1"));
  strata.emplace(Subset{0, 3}, with_class("1"));
  strata.emplace(Subset{1, 3}, with_class("1"));
  return make_good_closure(2, {"sect", "z", "w", "e"}, std::move(strata));
}

// --- stratified varieties ---

StratifiedVariety nodal_cubic() {
  StratifiedVariety v;
  v.name = "nodal cubic";
  v.pieces = {point_closure(), gm_toric()};
  v.total_class = parse_class("L");
  return v;
}

StratifiedVariety nodal_cubic_alt() {
  StratifiedVariety v;
  v.name = "nodal cubic";
  v.pieces = {point_closure(), point_closure(), p1_minus_points(3)};
  v.total_class = parse_class("L");
  return v;
}

StratifiedVariety cuspidal_cubic() {
  StratifiedVariety v;
  v.name = "cuspidal cubic";
  v.pieces = {point_closure(), a1_p1()};
  v.total_class = parse_class("1 + L");
  return v;
}

StratifiedVariety cuspidal_cubic_alt() {
  StratifiedVariety v;
  v.name = "cuspidal cubic";
  v.pieces = {point_closure(2), gm_toric()};
  v.total_class = parse_class("1 + L");
  return v;
}

StratifiedVariety two_p1s() {
  StratifiedVariety v;
  v.name = "two lines through a point";
  v.pieces = {point_closure(), a1_p1(), a1_p1()};
  v.total_class = parse_class("1 + 2L");
  return v;
}

StratifiedVariety two_p1s_alt() {
  StratifiedVariety v;
  v.name = "two lines through a point";
  v.pieces = {point_closure(3), gm_toric(), gm_toric()};
  v.total_class = parse_class("1 + 2L");
  return v;
}

StratifiedVariety toric_orbit_variety(const Fan& f, const std::string& name) {
  require_valid(f);
  if (f.dim != 2)
    throw Error(Errc::Unsupported, "orbit stratification is implemented for surfaces");
  StratifiedVariety v;
  v.name = name;
  v.pieces.push_back(toric_good_closure(resolve_2d(f).fan));
  for (size_t i = 0; i < f.rays.size(); ++i) v.pieces.push_back(gm_toric());
  for (size_t i = 0; i < f.max_cones.size(); ++i) v.pieces.push_back(point_closure());
  v.total_class = class_of_toric(f);
  return v;
}

StratifiedVariety toric_coarse_variety(const Fan& f, const std::string& name) {
  require_valid(f);
  if (f.dim != 2)
    throw Error(Errc::Unsupported, "orbit stratification is implemented for surfaces");
  StratifiedVariety v;
  v.name = name;
  v.pieces.push_back(toric_good_closure(resolve_2d(f).fan));
  v.pieces.push_back(gm_bundle(Int(f.rays.size())));
  v.pieces.push_back(point_closure(Int(f.max_cones.size())));
  v.total_class = class_of_toric(f);
  return v;
}

// --- the shipped corpus ---

std::vector<NamedFan> standard_fans() {
  std::vector<NamedFan> out;
  out.push_back({"p1", p1()});
  out.push_back({"p2", p2()});
  out.push_back({"p3", p3()});
  out.push_back({"p1xp1", p1xp1()});
  out.push_back({"p1cubed", p1cubed()});
  out.push_back({"hirzebruch2", hirzebruch(2)});
  out.push_back({"p112", p112()});
  out.push_back({"bl_pt_p2", bl_pt_p2()});
  out.push_back({"smooth_rnd_a", random_smooth_complete_2d(11, 9)});
  out.push_back({"smooth_rnd_b", random_smooth_complete_2d(22, 12)});
  out.push_back({"sing_a", random_singular_complete_2d(101)});
  out.push_back({"sing_b", random_singular_complete_2d(202)});
  out.push_back({"sing_c", random_singular_complete_2d(303)});
  return out;
}

std::vector<NamedVariety> standard_varieties() {
  std::vector<NamedVariety> out;
  out.push_back({"nodal_cubic", nodal_cubic()});
  out.push_back({"nodal_cubic_alt", nodal_cubic_alt()});
  out.push_back({"cuspidal_cubic", cuspidal_cubic()});
  out.push_back({"cuspidal_cubic_alt", cuspidal_cubic_alt()});
  out.push_back({"two_p1s", two_p1s()});
  out.push_back({"two_p1s_alt", two_p1s_alt()});
  out.push_back({"p112_orbit", toric_orbit_variety(p112(), "P(1,1,2)")});
  out.push_back({"p112_coarse", toric_coarse_variety(p112(), "P(1,1,2)")});
  out.push_back(
      {"sing_a_orbit", toric_orbit_variety(random_singular_complete_2d(101),
                                           "random singular surface A")});
  out.push_back(
      {"sing_a_coarse", toric_coarse_variety(random_singular_complete_2d(101),
                                             "random singular surface A")});
  out.push_back(
      {"sing_b_orbit", toric_orbit_variety(random_singular_complete_2d(202),
                                           "random singular surface B")});
  out.push_back(
      {"sing_b_coarse", toric_coarse_variety(random_singular_complete_2d(202),
                                             "random singular surface B")});
  out.push_back(
      {"sing_c_orbit", toric_orbit_variety(random_singular_complete_2d(303),
                                           "random singular surface C")});
  out.push_back(
      {"sing_c_coarse", toric_coarse_variety(random_singular_complete_2d(303),
                                             "random singular surface C")});
  out.push_back({"p2_control", toric_orbit_variety(p2(), "P^2 control")});
  out.push_back({"p2_control_coarse", toric_coarse_variety(p2(), "P^2 control")});
  return out;
}

}  // namespace eulerchar::corpus
