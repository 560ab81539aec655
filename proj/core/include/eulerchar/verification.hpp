#pragma once

#include "eulerchar/corpus.hpp"

// Deterministic self-checks over the example corpus.  Each runner returns one
// result per named check; a failed check carries a human-readable detail.
// The CLI's `suite run` prints these, and the acceptance harness builds on
// them with independently coded oracles.
namespace eulerchar {

struct CheckResult {
  std::string id;
  bool ok = false;
  std::string detail;
};

struct CorpusSet {
  std::vector<corpus::NamedFan> fans;
  std::vector<corpus::NamedVariety> varieties;
};

// The corpus constructed in memory (what corpusgen serializes).
CorpusSet builtin_corpus();

// Reads <dir>/fans/*.json and <dir>/varieties/*.json.
CorpusSet load_corpus(const std::string& dir);

// Matching strata degrees across several closures of the same open variety.
std::vector<CheckResult> check_closure_independence();

// chi_c == pro_euler_degree on every corpus variety, plus pinned values for
// the classically known ones.
std::vector<CheckResult> check_gauss_bonnet(const CorpusSet& c);

// Degree additivity and the class-level blow-up relation over every
// fixed-point blow-up of the suitable corpus fans.
std::vector<CheckResult> check_blowup_relations(const CorpusSet& c);

// Base degree == blown-up degree for every boundary-corner blow-up of the
// P^2 and P^1 x P^1 torus closures.
std::vector<CheckResult> check_local_data_corners();

// Factorization paths between random smooth complete fan pairs: found,
// replayed, and degree-constant along the way.
std::vector<CheckResult> check_factorization_sample();

// Ring laws, Hilbert reciprocity, Witt cancellation, pinned symbol values.
std::vector<CheckResult> check_gw_kernel();

// Degrees agree across measures: topological degree == number of maximal
// cones == form rank == point count at q = 1, on every corpus fan.
std::vector<CheckResult> check_measure_coherence(const CorpusSet& c);

// Identical pro_euler_degree across the stratifications of each variety.
std::vector<CheckResult> check_stratification_independence(const CorpusSet& c);

// Everything above, in order.
std::vector<CheckResult> run_all_checks(const CorpusSet& c);

}  // namespace eulerchar
