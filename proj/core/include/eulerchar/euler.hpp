#pragma once

#include "eulerchar/closure.hpp"
#include "eulerchar/motive.hpp"

namespace eulerchar {

// The degree of an Euler class: a value in the target ring of one measure,
// tagged with the measure it came from so that values of different measures
// never compare equal by accident.
struct EulerDegree {
  std::string measure;  // Measure::str(), e.g. "top", "count", "gw(Q)"
  MeasureValue value;

  bool operator==(const EulerDegree& o) const {
    return measure == o.measure && mv_equal(value, o.value);
  }
  bool operator!=(const EulerDegree& o) const { return !(*this == o); }
};

std::string ed_print(const EulerDegree& d);

// chi(U) as the alternating sum sum_I (-1)^{|I|} deg m(D_I) over the closed
// strata of a good closure.  Per stratum, a direct seed for the measure wins;
// otherwise the stratum's class is pushed through the measure (named atoms
// resolved via `seeds`).
EulerDegree strata_class(const GoodClosure& gc, const Measure& m,
                         const SeedTable& seeds = {}, EvalNotes* notes = nullptr);

// A possibly singular proper variety presented by a stratification: each open
// piece carries a good closure, with an optional integer weight (default 1).
// total_class, when present, is an independently known class of the whole
// variety used for cross-checking.
struct StratifiedVariety {
  std::string name;
  std::vector<GoodClosure> pieces;
  std::vector<Int> weights;  // empty: every weight is 1
  std::optional<MotiveClass> total_class;
  bool proper = true;
};

// Weight of piece i (1 when weights is empty).
Int piece_weight(const StratifiedVariety& v, size_t i);

// sum_i w_i * strata_class(piece_i): the intrinsic, stratification-built
// degree of the variety's Euler class.
EulerDegree pro_euler_degree(const StratifiedVariety& v, const Measure& m,
                             const SeedTable& seeds = {}, EvalNotes* notes = nullptr);

// Compactly-supported Euler characteristic via classes: evaluates the measure
// on sum_i w_i [U_i], where [U_i] is recovered from piece i's closure by
// inclusion-exclusion.  When total_class is also present the two routes must
// agree exactly; a mismatch throws Errc::CrossCheckMismatch.
EulerDegree chi_c(const StratifiedVariety& v, const Measure& m,
                  const SeedTable& seeds = {}, EvalNotes* notes = nullptr);

struct BlowupAdditivityReport {
  EulerDegree base, center, total, exceptional;
  bool holds = false;  // deg(base) - deg(center) == deg(total) - deg(exceptional)
};

// Degree-level blow-up additivity for a toric blow-up square.  An empty
// center (trivial square) contributes zero, as does an absent exceptional
// divisor.
BlowupAdditivityReport check_blowup_additivity(const BlowupSquareData& sq,
                                               const Measure& m,
                                               const SeedTable& seeds = {});

struct GldReport {
  EulerDegree lhs, rhs;  // base degree vs. degree rebuilt upstairs
  bool holds = false;
};

// Good-local-data identity for a blow-up square whose center lies in the
// boundary: the open piece is untouched, so the degree computed from the base
// closure must equal the one computed from the blown-up closure.
GldReport check_good_local_data(const BlowupSquareData& sq, const Measure& m,
                                const SeedTable& seeds = {});

struct GaussBonnetReport {
  EulerDegree lhs;  // chi_c route
  EulerDegree rhs;  // pro_euler_degree route
  bool equal = false;
  std::string measure;
};

// Both global invariants of a proper stratified variety, compared exactly.
GaussBonnetReport gauss_bonnet_check(const StratifiedVariety& v, const Measure& m,
                                     const SeedTable& seeds = {});

}  // namespace eulerchar
