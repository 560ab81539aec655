#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>

#include "eulerchar/gw.hpp"

namespace eulerchar {

struct Fan;

// Monomial in the class ring: a power of the Lefschetz class L times a formal
// product of named generators ("[Cg(1)]" and friends).
struct Atom {
  int lpow = 0;
  std::map<std::string, int> names;  // name -> exponent (>= 1)

  static Atom L(int k = 1) { return {k, {}}; }
  static Atom named(const std::string& id) { return {0, {{id, 1}}}; }

  bool is_unit() const { return lpow == 0 && names.empty(); }
  Atom operator*(const Atom& o) const;
  auto operator<=>(const Atom&) const = default;

  // Dimension when every factor has a known one (L contributes its power,
  // genus-g curve atoms "Cg(g)" contribute 1); nullopt otherwise.
  std::optional<int> dim() const;
  std::string str() const;
};

// If id has the shape "Cg(<g>)", returns the genus.
std::optional<int> genus_curve_atom(const std::string& id);

// Element of Z[L] extended by free named generators.
class MotiveClass {
 public:
  MotiveClass() = default;

  static MotiveClass zero() { return {}; }
  static MotiveClass one() { return constant(1); }
  static MotiveClass constant(const Int& n);
  static MotiveClass L(int k = 1);
  static MotiveClass named(const std::string& id);

  const std::map<Atom, Int>& coeffs() const { return coeffs_; }
  void add_term(const Atom& a, const Int& c);
  bool is_zero() const { return coeffs_.empty(); }

  // Top dimension across atoms; nullopt when some atom is of unknown
  // dimension or the class is zero.
  std::optional<int> dim() const;

  bool operator==(const MotiveClass&) const = default;

 private:
  std::map<Atom, Int> coeffs_;
};

MotiveClass mc_add(const MotiveClass& a, const MotiveClass& b);
MotiveClass mc_sub(const MotiveClass& a, const MotiveClass& b);
MotiveClass mc_neg(const MotiveClass& a);
MotiveClass mc_mul(const MotiveClass& a, const MotiveClass& b);
MotiveClass mc_scale(const Int& k, const MotiveClass& a);

// Text syntax: "1 + 2L + L^2", "[Cg(2)]", "L^2*[E]".
MotiveClass parse_class(const std::string& s);
std::string print_class(const MotiveClass& x);

// Orbit decomposition: sum of (L-1)^(n - dim sigma) over the cones of the fan
// (the zero cone included).  Works for any valid fan, singular ones too.
MotiveClass class_of_toric(const Fan& f);

// Polynomial in the point-count variable q.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(const Int& c) { add_term(0, c); }
  static QPoly q(int power = 1);

  void add_term(int pow, const Int& c);
  const std::map<int, Int>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  Int eval(const Int& q0) const;

  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  bool operator==(const QPoly&) const = default;

  std::string str() const;

 private:
  std::map<int, Int> coeffs_;
};

QPoly parse_qpoly(const std::string& s);

// A motivic measure: ring homomorphism out of the class ring, determined by
// where L goes plus seeds for named atoms.
struct Measure {
  enum class Target { Integers, PolyQ, GW };
  std::string id;
  Target target = Target::Integers;
  FieldDescriptor field;  // GW target only

  static Measure topological() { return {"top", Target::Integers, {}}; }
  static Measure point_count() { return {"count", Target::PolyQ, {}}; }
  static Measure quadratic(const FieldDescriptor& f) { return {"gw", Target::GW, f}; }

  std::string str() const {
    return target == Target::GW ? id + "(" + field.str() + ")" : id;
  }
};

using MeasureValue = std::variant<Int, QPoly, GWElement>;

MeasureValue mv_zero(const Measure& m);
MeasureValue mv_one(const Measure& m);
MeasureValue mv_add(const MeasureValue& a, const MeasureValue& b);
MeasureValue mv_sub(const MeasureValue& a, const MeasureValue& b);
MeasureValue mv_mul(const MeasureValue& a, const MeasureValue& b);
MeasureValue mv_scale(const Int& k, const MeasureValue& a);
bool mv_equal(const MeasureValue& a, const MeasureValue& b);
std::string mv_print(const MeasureValue& v);

// Parses a seed/report value in the syntax of the measure's target ring.
MeasureValue parse_measure_value(const std::string& raw, const Measure& m);

// Seed assignments, keyed by atom id then measure id; raw strings are parsed
// lazily against the requesting measure.  Shipped defaults: L -> 1 / q / <-1>,
// and genus-g curve atoms under top (2-2g) and gw ((1-g)*h).  User entries
// override defaults, including the L assignment.
class SeedTable {
 public:
  void set(const std::string& atom, const std::string& measure, const std::string& raw);

  struct Hit {
    std::string raw;
    bool is_default = false;
  };
  std::optional<Hit> lookup(const std::string& atom, const Measure& m) const;

  const std::map<std::string, std::map<std::string, std::string>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> entries_;
};

// Records which shipped defaults fired during an evaluation, for reporting.
struct EvalNotes {
  std::set<std::string> default_seeds_used;
};

// Evaluates the measure on a class; named atoms are resolved through the seed
// table (missing ones raise Errc::MissingSeed, lazily, only when actually hit).
MeasureValue apply_measure(const MotiveClass& x, const Measure& m,
                           const SeedTable& seeds = {}, EvalNotes* notes = nullptr);

// Exactness of the blow-up relation: Xt - E == X - C in the class ring.
bool bittner_blowup_check(const MotiveClass& X, const MotiveClass& C,
                          const MotiveClass& Xt, const MotiveClass& E);

}  // namespace eulerchar
