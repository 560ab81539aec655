#include "eulerchar/arith.hpp"

#include <numeric>

#include <boost/multiprecision/miller_rabin.hpp>

namespace eulerchar {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidFormEntry: return "InvalidFormEntry";
    case Errc::UnsupportedField: return "UnsupportedField";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::InvalidPlace: return "InvalidPlace";
    case Errc::VirtualFormNotClassifiable: return "VirtualFormNotClassifiable";
    case Errc::MissingSeed: return "MissingSeed";
    case Errc::FanValidation: return "FanValidation";
    case Errc::InvalidSubdivisionRay: return "InvalidSubdivisionRay";
    case Errc::NoSuchCone: return "NoSuchCone";
    case Errc::NotAGoodClosure: return "NotAGoodClosure";
    case Errc::MissingAmbient: return "MissingAmbient";
    case Errc::UnsupportedClosure: return "UnsupportedClosure";
    case Errc::Unsupported: return "Unsupported";
    case Errc::CrossCheckMismatch: return "CrossCheckMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
  }
  return "Error";
}

Int mod_pos(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

Int pow_int(const Int& base, unsigned exp) {
  Int r = 1;
  Int b = base;
  while (exp) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return boost::multiprecision::miller_rabin_test(n, 32);
}

static void factor_into(Int n, int mult, std::map<Int, int>& out);

// Trial division up to this many candidate divisors; inputs needing more are
// rejected rather than silently mis-canonicalised.
static const long long kTrialBound = 1'000'000;

static void factor_into(Int n, int mult, std::map<Int, int>& out) {
  if (n < 0) n = -n;
  if (n <= 1) return;
  for (Int d = 2; d <= kTrialBound; d == 2 ? d = 3 : d += 2) {
    if (d * d > n) break;
    while (n % d == 0) {
      out[d] += mult;
      n /= d;
    }
  }
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += mult;
    return;
  }
  Int r = boost::multiprecision::sqrt(n);
  if (r * r == n) {
    factor_into(r, 2 * mult, out);
    return;
  }
  throw Error(Errc::Unsupported,
              "cannot factor " + n.str() + " (beyond trial-division bound)");
}

std::map<Int, int> factorize(const Int& n) {
  if (n == 0) throw Error(Errc::InvalidFormEntry, "factorize(0)");
  std::map<Int, int> out;
  factor_into(n, 1, out);
  return out;
}

Int squarefree_part(const Int& n) {
  if (n == 0) throw Error(Errc::InvalidFormEntry, "zero has no square class");
  Int r = n < 0 ? -1 : 1;
  for (const auto& [p, e] : factorize(n))
    if (e % 2) r *= p;
  return r;
}

int legendre(const Int& a, const Int& p) {
  Int r = mod_pos(a, p);
  if (r == 0) return 0;
  Int e = boost::multiprecision::powm(r, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

Int gcd_all(const std::vector<long long>& v) {
  Int g = 0;
  for (long long x : v) g = boost::multiprecision::gcd(g, Int(x < 0 ? -x : x));
  return g;
}

std::vector<long long> primitive(std::vector<long long> v) {
  Int g = gcd_all(v);
  if (g <= 1) return v;
  long long gg = g.convert_to<long long>();
  for (auto& x : v) x /= gg;
  return v;
}

}  // namespace eulerchar
