#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eulerchar/arith.hpp"

namespace eulerchar {

// Base field for quadratic-form arithmetic: Q, R, or F_p with p an odd prime.
struct FieldDescriptor {
  enum class Kind { Rationals, Reals, FinitePrime };
  Kind kind = Kind::Rationals;
  Int p = 0;

  static FieldDescriptor Q() { return {Kind::Rationals, 0}; }
  static FieldDescriptor R() { return {Kind::Reals, 0}; }
  static FieldDescriptor Fp(const Int& p);

  bool operator==(const FieldDescriptor&) const = default;
  std::string str() const;
};

// "Q", "R", or "F<p>".
FieldDescriptor parse_field(const std::string& s);

// A place of Q: a prime (2 allowed) or the real place.
struct Place {
  bool infinite = false;
  Int p = 0;

  static Place inf() { return {true, 0}; }
  static Place prime(const Int& p) { return {false, p}; }
  // Int lacks <=>; the named category lets the default fall back to == and <.
  std::strong_ordering operator<=>(const Place&) const = default;
  std::string str() const { return infinite ? "inf" : p.str(); }
};

// Element of the Grothendieck-Witt ring presented as an integer combination of
// square classes: entries are canonical representatives, values are
// multiplicities (negative values make the element virtual).
class GWElement {
 public:
  GWElement() : field_(FieldDescriptor::Q()) {}
  explicit GWElement(FieldDescriptor f) : field_(std::move(f)) {}

  const FieldDescriptor& field() const { return field_; }
  const std::map<Int, Int>& coeffs() const { return coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }
  // True when every multiplicity is nonnegative, i.e. the element is the class
  // of an honest quadratic form.
  bool honest() const;

  // Adds mult copies of <entry> (entry is canonicalised; zero entries rejected).
  void add_term(const Int& entry, const Int& mult);

  bool operator==(const GWElement&) const = default;  // syntactic equality

 private:
  FieldDescriptor field_;
  std::map<Int, Int> coeffs_;
};

// Canonical representative of a's square class: signed square-free integer
// over Q, +-1 over R, 1 or the least positive non-residue over F_p.
Int canonical_square_class(const FieldDescriptor& f, const Int& a);

GWElement form_from_diagonal(const FieldDescriptor& f, const std::vector<Int>& entries);
GWElement gw_zero(const FieldDescriptor& f);
GWElement gw_unit(const FieldDescriptor& f);                    // <1>
GWElement hyperbolic(const FieldDescriptor& f, const Int& k = 1);  // k * (<1> + <-1>)

GWElement gw_add(const GWElement& a, const GWElement& b);
GWElement gw_sub(const GWElement& a, const GWElement& b);
GWElement gw_neg(const GWElement& a);
GWElement gw_mul(const GWElement& a, const GWElement& b);
GWElement gw_scale(const Int& k, const GWElement& a);
Int gw_rank(const GWElement& a);

// Hilbert symbol (a,b)_v for nonzero a, b.
int hilbert_symbol(const Int& a, const Int& b, const Place& v);
int hilbert_symbol(const Rat& a, const Rat& b, const Place& v);

// Is d a square in the completion at v?
bool is_local_square(const Int& d, const Place& v);

struct FormInvariants {
  Int rank;
  Int disc;                      // canonical square class of the determinant
  std::optional<Int> signature;  // real places only (Q, R)
  std::map<Place, int> hasse;    // Q only; finitely supported, +1 omitted
};

// Classifying invariants of an honest form; virtual input is rejected with
// Errc::VirtualFormNotClassifiable.
FormInvariants invariants(const GWElement& q);

// Decides equality in GW(k) through the classification of quadratic forms
// (rank/signature over R, rank/disc over F_p, Hasse-Minkowski over Q).
bool gw_equals(const GWElement& a, const GWElement& b);

// Does the form represent zero nontrivially?  Honest forms only.
bool is_isotropic(const GWElement& q);

// Text syntax: sums of k*h and <a,b,...> with integer or p/q entries.
GWElement parse_gw(const std::string& s, const FieldDescriptor& f);
std::string print_gw(const GWElement& x);

}  // namespace eulerchar
