#include "eulerchar/closure.hpp"

#include <algorithm>
#include <set>

namespace eulerchar {

namespace {

std::string subset_str(const Subset& I) {
  std::string s = "{";
  for (size_t i = 0; i < I.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(I[i]);
  }
  return s + "}";
}

}  // namespace

const StratumData& GoodClosure::stratum(const Subset& I) const {
  static const StratumData empty = [] {
    StratumData d;
    d.origin = StratumData::Origin::Empty;
    return d;
  }();
  Subset s = I;
  std::sort(s.begin(), s.end());
  auto it = strata.find(s);
  return it == strata.end() ? empty : it->second;
}

GoodClosure make_good_closure(int ambient_dim, std::vector<std::string> components,
                              std::map<Subset, StratumData> strata,
                              std::optional<Fan> toric_source) {
  if (ambient_dim < 0)
    throw Error(Errc::NotAGoodClosure, "ambient dimension must be nonnegative");
  {
    std::set<std::string> seen;
    for (const auto& c : components) {
      if (c.empty())
        throw Error(Errc::NotAGoodClosure, "empty boundary component id");
      if (!seen.insert(c).second)
        throw Error(Errc::NotAGoodClosure, "duplicate boundary component id '" + c + "'");
    }
  }

  GoodClosure gc;
  gc.ambient_dim = ambient_dim;
  gc.components = std::move(components);
  gc.toric_source = std::move(toric_source);
  const int k = static_cast<int>(gc.components.size());

  for (auto& [subset, data] : strata) {
    Subset I = subset;
    std::sort(I.begin(), I.end());
    for (size_t i = 0; i < I.size(); ++i) {
      if (I[i] < 0 || I[i] >= k)
        throw Error(Errc::NotAGoodClosure, "stratum " + subset_str(I) +
                                               " references a component index out of range");
      if (i > 0 && I[i] == I[i - 1])
        throw Error(Errc::NotAGoodClosure,
                    "stratum " + subset_str(I) + " repeats a component");
    }
    if (data.origin == StratumData::Origin::Empty) continue;
    if (data.motive && *data.motive == MotiveClass::zero() && data.seeds.empty())
      continue;  // an explicitly zero class is an empty stratum
    if (!gc.strata.emplace(I, std::move(data)).second)
      throw Error(Errc::NotAGoodClosure, "stratum " + subset_str(I) + " appears twice");
  }

  auto amb = gc.strata.find(Subset{});
  if (amb == gc.strata.end() || (!amb->second.motive && amb->second.seeds.empty()))
    throw Error(Errc::MissingAmbient,
                "closure record is missing its ambient stratum (I = {})");

  for (const auto& [I, data] : gc.strata) {
    if (!data.motive) continue;
    auto d = data.motive->dim();
    if (!d) continue;  // atoms of unknown dimension: nothing to check
    long long expect = static_cast<long long>(gc.ambient_dim) -
                       static_cast<long long>(I.size());
    if (*d != expect)
      throw Error(Errc::NotAGoodClosure,
                  "stratum " + subset_str(I) + " has dimension " + std::to_string(*d) +
                      " but should have dimension " + std::to_string(expect) +
                      " in ambient dimension " + std::to_string(gc.ambient_dim));
  }
  return gc;
}

GoodClosure toric_good_closure(const Fan& f, const std::string& open_spec) {
  if (open_spec != "torus")
    throw Error(Errc::Unsupported,
                "only the dense torus is supported as the open piece of a toric closure");
  require_valid(f);
  if (!is_smooth(f))
    throw Error(Errc::NotAGoodClosure,
                "toric closure needs a smooth fan: the boundary of a singular toric "
                "variety is not a simple-normal-crossings divisor");
  if (!is_complete(f).complete)
    throw Error(Errc::NotAGoodClosure, "toric closure needs a complete fan");

  GoodClosure gc;
  gc.ambient_dim = f.dim;
  for (size_t i = 0; i < f.rays.size(); ++i)
    gc.components.push_back("D" + std::to_string(i));
  gc.toric_source = f;
  for (auto& [c, star] : all_star_fans(f)) {
    StratumData d;
    d.origin = StratumData::Origin::ToricCone;
    d.cone = c;
    d.motive = class_of_toric(star);
    gc.strata.emplace(c, std::move(d));
  }
  return gc;
}

BlowupSquareData blowup_closure(const GoodClosure& gc, const ConeRef& center) {
  if (!gc.toric_source)
    throw Error(Errc::UnsupportedClosure, "blow-ups are only supported for toric closures");
  const Fan& f = *gc.toric_source;
  ConeRef c = center;
  std::sort(c.begin(), c.end());
  Fan total_fan = stellar_subdivide(f, c);

  BlowupSquareData sq;
  sq.base = gc;
  sq.center = std::move(c);
  sq.new_ray = total_fan.rays.back();
  sq.exceptional = "D" + std::to_string(total_fan.rays.size() - 1);
  sq.total = toric_good_closure(total_fan);
  return sq;
}

// ---------------------------------------------------------------------------
// Weak factorization in dimension 2

namespace {

void require_smooth_complete_2d(const Fan& f, const char* which) {
  if (f.dim != 2)
    throw Error(Errc::Unsupported,
                std::string("weak factorization handles 2-dimensional fans only (") +
                    which + " has dimension " + std::to_string(f.dim) + ")");
  require_valid(f);
  if (!is_smooth(f))
    throw Error(Errc::FanValidation, std::string(which) + " fan is not smooth");
  if (!is_complete(f).complete)
    throw Error(Errc::FanValidation, std::string(which) + " fan is not complete");
}

// Complete 2D fan in angular normal form: rays sorted counterclockwise from
// the positive x-axis, maximal cones the consecutive pairs.
Fan sorted_complete_2d(std::vector<std::vector<long long>> rays) {
  std::sort(rays.begin(), rays.end(), ray_angle_less);
  Fan f;
  f.dim = 2;
  f.rays = std::move(rays);
  int n = static_cast<int>(f.rays.size());
  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    ConeRef c{std::min(i, j), std::max(i, j)};
    f.max_cones.push_back(std::move(c));
  }
  std::sort(f.max_cones.begin(), f.max_cones.end());
  return f;
}

// Rays of cur (in removal order) whose contraction takes cur down to exactly
// the rays of target; every step is the inverse of a smooth blow-up.  cur must
// be a smooth refinement of target, both in angular normal form.
std::vector<std::vector<long long>> blow_down_order(Fan cur, const Fan& target) {
  std::set<std::vector<long long>> keep(target.rays.begin(), target.rays.end());
  std::vector<std::vector<long long>> removed;
  while (cur.rays.size() > keep.size()) {
    int n = static_cast<int>(cur.rays.size());
    int found = -1;
    for (int k = 0; k < n && found < 0; ++k) {
      if (keep.count(cur.rays[k])) continue;
      const auto& p = cur.rays[(k + n - 1) % n];
      const auto& q = cur.rays[(k + 1) % n];
      if (p[0] + q[0] == cur.rays[k][0] && p[1] + q[1] == cur.rays[k][1]) found = k;
    }
    if (found < 0)
      throw Error(Errc::FanValidation,
                  "factorization: no contractible ray between refinement and target");
    removed.push_back(cur.rays[found]);
    auto rays = cur.rays;
    rays.erase(rays.begin() + found);
    cur = sorted_complete_2d(std::move(rays));
  }
  if (cur.rays != target.rays)
    throw Error(Errc::FanValidation,
                "factorization: contraction did not land on the target fan");
  return removed;
}

}  // namespace

FactorizationPath weak_factorization_path_2d(const Fan& a, const Fan& b) {
  require_smooth_complete_2d(a, "first");
  require_smooth_complete_2d(b, "second");

  Fan A = sorted_complete_2d(a.rays);
  Fan B = sorted_complete_2d(b.rays);

  // Common smooth refinement: resolve the fan on the union of the ray sets.
  std::set<std::vector<long long>> u(A.rays.begin(), A.rays.end());
  u.insert(B.rays.begin(), B.rays.end());
  Fan peak = resolve_2d(sorted_complete_2d({u.begin(), u.end()})).fan;
  peak = sorted_complete_2d(peak.rays);

  FactorizationPath path;
  path.from = A;
  path.to = B;

  // Ascend from A to the peak, inserting rays in the reverse of a blow-down
  // order so that every intermediate fan stays smooth.
  auto up = blow_down_order(peak, A);
  std::reverse(up.begin(), up.end());
  Fan cur = A;
  for (const auto& r : up) {
    auto c = relint_containing_max_cone(cur, r);
    if (!c)
      throw Error(Errc::FanValidation,
                  "factorization: inserted ray is not interior to any cone");
    path.moves.push_back({FactorizationMove::Direction::Subdivide, *c, r});
    cur = sorted_complete_2d(stellar_subdivide(cur, *c, r).rays);
  }
  if (cur.rays != peak.rays)
    throw Error(Errc::FanValidation,
                "factorization: ascent did not reach the common refinement");

  // Descend from the peak to B.
  for (const auto& r : blow_down_order(peak, B)) {
    int n = static_cast<int>(cur.rays.size());
    auto it = std::find(cur.rays.begin(), cur.rays.end(), r);
    if (it == cur.rays.end())
      throw Error(Errc::FanValidation, "factorization: descent lost track of a ray");
    int k = static_cast<int>(it - cur.rays.begin());
    int p = (k + n - 1) % n, q = (k + 1) % n;
    ConeRef center{std::min(p, q), std::max(p, q)};
    path.moves.push_back({FactorizationMove::Direction::Contract, std::move(center), r});
    auto rays = cur.rays;
    rays.erase(rays.begin() + k);
    cur = sorted_complete_2d(std::move(rays));
  }
  if (cur.rays != B.rays)
    throw Error(Errc::FanValidation,
                "factorization: descent did not land on the target fan");
  return path;
}

std::vector<Fan> replay_path(const FactorizationPath& path) {
  auto check_stage = [](const Fan& f) {
    if (f.dim != 2)
      throw Error(Errc::Unsupported, "factorization paths are 2-dimensional");
    require_valid(f);
    if (!is_smooth(f))
      throw Error(Errc::FanValidation, "factorization path visits a singular fan");
    if (!is_complete(f).complete)
      throw Error(Errc::FanValidation, "factorization path visits an incomplete fan");
  };

  std::vector<Fan> out;
  Fan cur = path.from;
  check_stage(cur);
  out.push_back(cur);

  for (const auto& mv : path.moves) {
    if (mv.direction == FactorizationMove::Direction::Subdivide) {
      cur = sorted_complete_2d(stellar_subdivide(cur, mv.center, mv.ray).rays);
    } else {
      int n = static_cast<int>(cur.rays.size());
      auto it = std::find(cur.rays.begin(), cur.rays.end(), mv.ray);
      if (it == cur.rays.end())
        throw Error(Errc::FanValidation,
                    "contraction removes a ray the fan does not have");
      int k = static_cast<int>(it - cur.rays.begin());
      int p = (k + n - 1) % n, q = (k + 1) % n;
      ConeRef center{std::min(p, q), std::max(p, q)};
      ConeRef want = mv.center;
      std::sort(want.begin(), want.end());
      if (center != want)
        throw Error(Errc::FanValidation,
                    "contraction center does not match the fan's cone structure");
      if (cur.rays[p][0] + cur.rays[q][0] != mv.ray[0] ||
          cur.rays[p][1] + cur.rays[q][1] != mv.ray[1])
        throw Error(Errc::FanValidation,
                    "contraction is not the inverse of a smooth blow-up");
      auto rays = cur.rays;
      rays.erase(rays.begin() + k);
      cur = sorted_complete_2d(std::move(rays));
    }
    check_stage(cur);
    out.push_back(cur);
  }

  if (!fans_isomorphic_by_rays(cur, path.to))
    throw Error(Errc::FanValidation,
                "factorization path does not end at its declared target");
  return out;
}

}  // namespace eulerchar
