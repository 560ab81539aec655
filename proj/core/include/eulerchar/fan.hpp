#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eulerchar/arith.hpp"

namespace eulerchar {

// Simplicial rational fan in Z^dim.  Rays are primitive integer vectors;
// maximal cones are sorted lists of ray indices.  dim 0 (the trivial fan) is
// allowed: it arises as the star of a maximal cone.
struct Fan {
  int dim = 0;
  std::vector<std::vector<long long>> rays;
  std::vector<std::vector<int>> max_cones;
};

// A cone of a fan, as a sorted list of ray indices; {} is the zero cone.
using ConeRef = std::vector<int>;

struct Diagnostic {
  std::string code;
  std::string message;
};

// Structural checks: ray shape/primitivity/distinctness, simpliciality,
// maximality, ray coverage, and pairwise intersection-is-a-common-face
// (decided exactly via a separating functional).  Empty result == valid.
std::vector<Diagnostic> validate_fan(const Fan& f);

// Throws Errc::FanValidation listing the first few diagnostics.
void require_valid(const Fan& f);

// Is c (a sorted index list) a face of some maximal cone?
bool is_cone(const Fan& f, const ConeRef& c);

// Every cone of the fan, the zero cone included.
std::set<ConeRef> all_cones(const Fan& f);

// Index of the sublattice spanned by the cone's rays inside its saturation
// (gcd of maximal minors); 1 means the rays extend to a Z-basis.
Int cone_lattice_index(const Fan& f, const ConeRef& c);

bool is_smooth_cone(const Fan& f, const ConeRef& c);
bool is_smooth(const Fan& f);

// Does cone c contain x?  With relative_interior set, membership is strict
// (all barycentric coordinates positive).
bool cone_contains(const Fan& f, const ConeRef& c, const std::vector<long long>& x,
                   bool relative_interior = false);

// Maximal cone whose relative interior contains x, if any.
std::optional<ConeRef> relint_containing_max_cone(const Fan& f,
                                                  const std::vector<long long>& x);

struct Completeness {
  bool complete = false;
  enum class Mode { Exact, Structural } mode = Mode::Exact;
  std::string str() const;
};

// Support covers R^dim?  Exact for dim <= 2; for higher dimension the answer
// combines facet-pairing and dual-graph structure with randomized point
// location, and is reported as "structural".
Completeness is_complete(const Fan& f);

// Stellar subdivision at cone c (dim >= 2).  The default new ray is the
// primitive generator of the sum of c's rays; an explicit ray must be
// primitive and interior to c.  The new ray is appended at index rays.size().
Fan stellar_subdivide(const Fan& f, const ConeRef& c,
                      const std::optional<std::vector<long long>>& new_ray = {});

// Fan of the orbit closure: cones containing c, projected to the quotient of
// the lattice by the saturated span of c.  star_fan(f, {}) == f.
Fan star_fan(const Fan& f, const ConeRef& c);

// Star fans of every cone at once; validates f a single time, which matters
// when walking all strata of larger fans.
std::map<ConeRef, Fan> all_star_fans(const Fan& f);

struct Resolution {
  Fan fan;
  // Rays inserted, in order; replaying them as stellar subdivisions of the
  // evolving fan reproduces `fan`.
  std::vector<std::vector<long long>> inserted_rays;
};

// Hirzebruch-Jung resolution of a 2-dimensional fan: inserts rays until every
// cone is unimodular.  Support and existing rays are preserved.
Resolution resolve_2d(const Fan& f);

// Equality up to renumbering the rays.
bool fans_isomorphic_by_rays(const Fan& a, const Fan& b);

// Strict counterclockwise angular order on nonzero 2D integer vectors,
// starting at the positive x-axis.
bool ray_angle_less(const std::vector<long long>& a, const std::vector<long long>& b);

}  // namespace eulerchar
