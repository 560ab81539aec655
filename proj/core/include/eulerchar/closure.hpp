#pragma once

#include <functional>

#include "eulerchar/fan.hpp"
#include "eulerchar/motive.hpp"

namespace eulerchar {

// Sorted component-index list naming a closed stratum D_I.
using Subset = std::vector<int>;

struct StratumData {
  enum class Origin { ToricCone, UserDeclared, Empty };
  Origin origin = Origin::UserDeclared;
  // Class of the (smooth proper) closed stratum, when known.
  std::optional<MotiveClass> motive;
  // Direct degree seeds, keyed by measure id; these take precedence over the
  // motive when both are present.
  std::map<std::string, std::string> seeds;
  // For toric strata, the cone this stratum came from.
  ConeRef cone;
};

// A smooth open U together with a smooth proper compactification whose
// boundary is a simple-normal-crossings union of the named components; the
// record keeps one stratum per subset I (absent subsets are empty).
struct GoodClosure {
  int ambient_dim = 0;
  std::vector<std::string> components;
  std::map<Subset, StratumData> strata;
  std::optional<Fan> toric_source;

  const StratumData& stratum(const Subset& I) const;
};

// Assembles and checks a closure record: the ambient stratum (I = {}) must be
// present, and every declared stratum of computable dimension must sit in the
// right codimension.
GoodClosure make_good_closure(int ambient_dim, std::vector<std::string> components,
                              std::map<Subset, StratumData> strata,
                              std::optional<Fan> toric_source = {});

// Boundary-divisor closure of the dense torus of a smooth complete fan;
// stratum classes come from the star fans.  Only the dense torus is supported
// as the open set.
GoodClosure toric_good_closure(const Fan& f, const std::string& open_spec = "torus");

// One blow-up square: base closure, blown-up closure, the center cone, and the
// exceptional component.  An empty center models the trivial square (nothing
// blown up, no exceptional divisor).
struct BlowupSquareData {
  GoodClosure base;
  GoodClosure total;
  ConeRef center;
  std::vector<long long> new_ray;
  std::string exceptional;
};

// Stellar blow-up of a toric closure at a boundary cone of dimension >= 2.
BlowupSquareData blowup_closure(const GoodClosure& gc, const ConeRef& center);

struct FactorizationMove {
  enum class Direction { Subdivide, Contract } direction = Direction::Subdivide;
  // Subdivide: the cone being split, as ray indices in the pre-move fan.
  // Contract: the merged cone's rays, again in pre-move indices.
  ConeRef center;
  std::vector<long long> ray;  // inserted (subdivide) or removed (contract) ray
};

// A path of blow-ups and blow-downs between two smooth complete 2D fans,
// passing through a common smooth refinement at the peak.
struct FactorizationPath {
  Fan from, to;
  std::vector<FactorizationMove> moves;
};

FactorizationPath weak_factorization_path_2d(const Fan& a, const Fan& b);

// Replays the path from its start, checking that every intermediate fan is
// valid, smooth and complete, and that the final fan matches the declared
// endpoint up to ray renumbering.  Returns every fan visited.
std::vector<Fan> replay_path(const FactorizationPath& path);

// True when class_fn takes the same value on the torus closure of every fan
// along the path; degree-level pushforwards are identities, so any honest
// Euler-class functional must be constant across the moves.
template <typename F>
bool verify_closure_compatibility(const FactorizationPath& path, F&& class_fn) {
  auto fans = replay_path(path);
  if (fans.empty()) return true;
  auto prev = class_fn(toric_good_closure(fans.front()));
  for (size_t i = 1; i < fans.size(); ++i) {
    auto cur = class_fn(toric_good_closure(fans[i]));
    if (!(cur == prev)) return false;
    prev = std::move(cur);
  }
  return true;
}

}  // namespace eulerchar
