#pragma once

#include <cstdint>

#include "eulerchar/closure.hpp"
#include "eulerchar/euler.hpp"

// Deterministic builders for the shipped example data: standard fans, good
// closures of a handful of small open varieties constructed several ways, and
// stratified (mostly singular) varieties.  The JSON corpus on disk is exactly
// the serialization of these objects (see the corpusgen tool).
namespace eulerchar::corpus {

// --- fans ---

Fan p1();
Fan p2();
Fan p3();
Fan p1xp1();
Fan p1cubed();
Fan hirzebruch(long long a);  // smooth for every a
Fan p112();                   // weighted projective plane P(1,1,2)
Fan bl_pt_p2();               // P^2 blown up at a torus-fixed point

// Random smooth complete 2D fan: a chain of smooth stellar subdivisions
// starting from P^2 or P^1 x P^1, at most max_rays rays.
Fan random_smooth_complete_2d(uint64_t seed, int max_rays);

// Random complete 2D fan with at least one singular cone (rejection-sampled,
// deterministic in the seed).
Fan random_singular_complete_2d(uint64_t seed);

// --- good closures ---

GoodClosure point_closure(const Int& count = Int(1));
GoodClosure gm_toric();              // G_m via the P^1 fan
GoodClosure gm_declared();           // G_m declared by hand, no toric source
GoodClosure gm_bundle(const Int& copies);  // disjoint union of copies of G_m
GoodClosure a1_p1();                 // A^1 in P^1, class-backed strata
GoodClosure a1_seeded();             // A^1 in P^1, direct degree seeds only
GoodClosure p1_minus_points(int k);  // P^1 minus k rational points
GoodClosure a2_p2();                 // A^2 in P^2
GoodClosure a2_p1xp1();              // A^2 in P^1 x P^1
GoodClosure a2_bl();                 // A^2 in a blow-up of P^2
GoodClosure a1_gm_p1xp1();           // A^1 x G_m in P^1 x P^1
GoodClosure a1_gm_bl();              // A^1 x G_m after a corner blow-up

// --- stratified varieties ---

StratifiedVariety nodal_cubic();
StratifiedVariety nodal_cubic_alt();
StratifiedVariety cuspidal_cubic();
StratifiedVariety cuspidal_cubic_alt();
StratifiedVariety two_p1s();      // two lines through a point
StratifiedVariety two_p1s_alt();

// Orbit-by-orbit stratification of a complete 2D toric variety: the dense
// torus (compactified on a resolution of f), one G_m per ray, one point per
// maximal cone.  Works for singular f; that is the point.
StratifiedVariety toric_orbit_variety(const Fan& f, const std::string& name);

// Same variety, coarser bookkeeping: all ray orbits bundled into one piece,
// all fixed points into another.
StratifiedVariety toric_coarse_variety(const Fan& f, const std::string& name);

// --- the shipped corpus ---

struct NamedFan {
  std::string file;  // stem of the JSON file, e.g. "p2"
  Fan fan;
};

struct NamedVariety {
  std::string file;
  StratifiedVariety variety;
};

std::vector<NamedFan> standard_fans();
std::vector<NamedVariety> standard_varieties();

}  // namespace eulerchar::corpus
