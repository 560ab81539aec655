#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace eulerchar {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::rational<Int>;

// Error codes shared across the library.  The CLI maps these to exit status 2
// (bad input); identity violations are reported through return values, not
// exceptions.
enum class Errc {
  InvalidFormEntry,
  UnsupportedField,
  FieldMismatch,
  InvalidPlace,
  VirtualFormNotClassifiable,
  MissingSeed,
  FanValidation,
  InvalidSubdivisionRay,
  NoSuchCone,
  NotAGoodClosure,
  MissingAmbient,
  UnsupportedClosure,
  Unsupported,
  CrossCheckMismatch,
  ParseError,
  IoError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

inline int sign(const Int& a) { return a > 0 ? 1 : (a < 0 ? -1 : 0); }

// Least nonnegative residue.
Int mod_pos(const Int& a, const Int& m);

Int pow_int(const Int& base, unsigned exp);

// Deterministic for the sizes we care about (Miller-Rabin with many rounds).
bool is_prime(const Int& n);

// Prime factorisation by trial division, with a square-root fallback for a
// large leftover cofactor.  Throws Errc::Unsupported if the input is beyond
// what trial division can settle; everything in the corpus is tiny.
std::map<Int, int> factorize(const Int& n);

// Signed square-free part: the canonical representative of a nonzero integer
// modulo nonzero rational squares.
Int squarefree_part(const Int& n);

// Legendre symbol (a|p) for odd prime p: +1, -1, or 0 when p | a.
int legendre(const Int& a, const Int& p);

Int gcd_all(const std::vector<long long>& v);

// v / gcd(v); the zero vector is returned unchanged.
std::vector<long long> primitive(std::vector<long long> v);

}  // namespace eulerchar
