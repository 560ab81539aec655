#include "eulerchar/gw.hpp"

#include <algorithm>
#include <sstream>

#include "parse_util.hpp"

namespace eulerchar {

FieldDescriptor FieldDescriptor::Fp(const Int& p) {
  if (p == 2)
    throw Error(Errc::UnsupportedField, "even characteristic is not supported");
  if (!is_prime(p))
    throw Error(Errc::UnsupportedField, p.str() + " is not prime");
  return {Kind::FinitePrime, p};
}

std::string FieldDescriptor::str() const {
  switch (kind) {
    case Kind::Rationals: return "Q";
    case Kind::Reals: return "R";
    case Kind::FinitePrime: return "F" + p.str();
  }
  return "?";
}

FieldDescriptor parse_field(const std::string& s) {
  if (s == "Q") return FieldDescriptor::Q();
  if (s == "R") return FieldDescriptor::R();
  if (s.size() >= 2 && s[0] == 'F') {
    Int p;
    try {
      p = Int(s.substr(1));
    } catch (const std::exception&) {
      throw Error(Errc::UnsupportedField, "bad field name '" + s + "'");
    }
    return FieldDescriptor::Fp(p);
  }
  throw Error(Errc::UnsupportedField, "bad field name '" + s + "' (want Q, R, or F<p>)");
}

static Int least_nonresidue(const Int& p) {
  for (Int n = 2;; ++n)
    if (legendre(n, p) == -1) return n;
}

Int canonical_square_class(const FieldDescriptor& f, const Int& a) {
  if (a == 0) throw Error(Errc::InvalidFormEntry, "zero diagonal entry");
  switch (f.kind) {
    case FieldDescriptor::Kind::Rationals:
      return squarefree_part(a);
    case FieldDescriptor::Kind::Reals:
      return a > 0 ? 1 : -1;
    case FieldDescriptor::Kind::FinitePrime: {
      Int r = mod_pos(a, f.p);
      if (r == 0)
        throw Error(Errc::InvalidFormEntry,
                    a.str() + " vanishes in F" + f.p.str());
      return legendre(r, f.p) == 1 ? Int(1) : least_nonresidue(f.p);
    }
  }
  throw Error(Errc::UnsupportedField, "unknown field");
}

bool GWElement::honest() const {
  for (const auto& [_, m] : coeffs_)
    if (m < 0) return false;
  return true;
}

void GWElement::add_term(const Int& entry, const Int& mult) {
  if (mult == 0) return;
  Int rep = canonical_square_class(field_, entry);
  Int& m = coeffs_[rep];
  m += mult;
  if (m == 0) coeffs_.erase(rep);
}

GWElement form_from_diagonal(const FieldDescriptor& f, const std::vector<Int>& entries) {
  GWElement x(f);
  for (const Int& a : entries) x.add_term(a, 1);
  return x;
}

GWElement gw_zero(const FieldDescriptor& f) { return GWElement(f); }

GWElement gw_unit(const FieldDescriptor& f) {
  GWElement x(f);
  x.add_term(1, 1);
  return x;
}

GWElement hyperbolic(const FieldDescriptor& f, const Int& k) {
  GWElement x(f);
  x.add_term(1, k);
  x.add_term(-1, k);
  return x;
}

static void require_same_field(const GWElement& a, const GWElement& b) {
  if (!(a.field() == b.field()))
    throw Error(Errc::FieldMismatch,
                a.field().str() + " vs " + b.field().str());
}

GWElement gw_add(const GWElement& a, const GWElement& b) {
  require_same_field(a, b);
  GWElement r = a;
  for (const auto& [rep, m] : b.coeffs()) r.add_term(rep, m);
  return r;
}

GWElement gw_neg(const GWElement& a) {
  GWElement r(a.field());
  for (const auto& [rep, m] : a.coeffs()) r.add_term(rep, -m);
  return r;
}

GWElement gw_sub(const GWElement& a, const GWElement& b) {
  return gw_add(a, gw_neg(b));
}

GWElement gw_mul(const GWElement& a, const GWElement& b) {
  require_same_field(a, b);
  GWElement r(a.field());
  for (const auto& [ra, ma] : a.coeffs())
    for (const auto& [rb, mb] : b.coeffs()) r.add_term(ra * rb, ma * mb);
  return r;
}

GWElement gw_scale(const Int& k, const GWElement& a) {
  GWElement r(a.field());
  for (const auto& [rep, m] : a.coeffs()) r.add_term(rep, k * m);
  return r;
}

Int gw_rank(const GWElement& a) {
  Int r = 0;
  for (const auto& [_, m] : a.coeffs()) r += m;
  return r;
}

// ---------------------------------------------------------------------------
// Hilbert symbols

static int valuation(Int& n, const Int& p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int hilbert_symbol(const Int& a, const Int& b, const Place& v) {
  if (a == 0 || b == 0)
    throw Error(Errc::InvalidFormEntry, "hilbert symbol of zero");
  if (v.infinite) return (a < 0 && b < 0) ? -1 : 1;
  const Int& p = v.p;
  if (!is_prime(p)) throw Error(Errc::InvalidPlace, v.p.str() + " is not prime");
  Int u = a, w = b;
  int alpha = valuation(u, p);
  int beta = valuation(w, p);
  if (p == 2) {
    auto eps = [](const Int& t) { return mod_pos((t - 1) / 2, 2); };
    auto omega = [](const Int& t) { return mod_pos((t * t - 1) / 8, 2); };
    Int e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
    return mod_pos(e, 2) == 0 ? 1 : -1;
  }
  int r = 1;
  if ((alpha * beta) % 2 && mod_pos((p - 1) / 2, 2) == 1) r = -r;
  if (beta % 2) r *= legendre(u, p);
  if (alpha % 2) r *= legendre(w, p);
  return r;
}

int hilbert_symbol(const Rat& a, const Rat& b, const Place& v) {
  return hilbert_symbol(Int(a.numerator() * a.denominator()),
                        Int(b.numerator() * b.denominator()), v);
}

bool is_local_square(const Int& d, const Place& v) {
  if (d == 0) throw Error(Errc::InvalidFormEntry, "is_local_square(0)");
  if (v.infinite) return d > 0;
  Int u = d;
  int val = valuation(u, v.p);
  if (val % 2) return false;
  if (v.p == 2) return mod_pos(u, 8) == 1;
  return legendre(u, v.p) == 1;
}

// ---------------------------------------------------------------------------
// Invariants and equality

static const GWElement& require_honest(const GWElement& q) {
  if (!q.honest())
    throw Error(Errc::VirtualFormNotClassifiable, "virtual element: " + print_gw(q));
  return q;
}

// Parity of the exponent of -1 in prod_{i<j} (a_i, a_j)_v, computed from
// multiplicities without expanding the diagonal.
static int hasse_sign(const GWElement& q, const Place& v) {
  const auto& c = q.coeffs();
  Int parity = 0;
  for (auto i = c.begin(); i != c.end(); ++i) {
    if (hilbert_symbol(i->first, i->first, v) == -1)
      parity += i->second * (i->second - 1) / 2;
    for (auto j = std::next(i); j != c.end(); ++j)
      if (hilbert_symbol(i->first, j->first, v) == -1)
        parity += i->second * j->second;
  }
  return mod_pos(parity, 2) == 0 ? 1 : -1;
}

// Places that can carry a nontrivial Hilbert symbol of entries of q: 2 and the
// odd primes dividing some entry (the real place is handled via signatures).
static std::vector<Place> relevant_finite_places(const GWElement& q) {
  std::vector<Place> out{Place::prime(2)};
  std::map<Int, int> seen;
  for (const auto& [rep, _] : q.coeffs())
    for (const auto& [p, __] : factorize(rep))
      if (p != 2 && !seen.count(p)) {
        seen[p] = 1;
        out.push_back(Place::prime(p));
      }
  std::sort(out.begin(), out.end());
  return out;
}

FormInvariants invariants(const GWElement& q) {
  require_honest(q);
  FormInvariants inv;
  inv.rank = gw_rank(q);
  Int disc = 1;
  for (const auto& [rep, m] : q.coeffs())
    if (mod_pos(m, 2) == 1) disc *= rep;
  const auto& f = q.field();
  inv.disc = q.is_zero() ? Int(1) : canonical_square_class(f, disc);
  if (f.kind != FieldDescriptor::Kind::FinitePrime) {
    Int sig = 0;
    for (const auto& [rep, m] : q.coeffs()) sig += rep > 0 ? m : -m;
    inv.signature = sig;
  }
  if (f.kind == FieldDescriptor::Kind::Rationals) {
    for (const Place& v : relevant_finite_places(q))
      if (hasse_sign(q, v) == -1) inv.hasse[v] = -1;
    if (hasse_sign(q, Place::inf()) == -1) inv.hasse[Place::inf()] = -1;
  }
  return inv;
}

bool gw_equals(const GWElement& a, const GWElement& b) {
  require_same_field(a, b);
  GWElement d = gw_sub(a, b);
  if (d.is_zero()) return true;
  if (gw_rank(d) != 0) return false;
  GWElement pos(a.field()), neg(a.field());
  for (const auto& [rep, m] : d.coeffs())
    (m > 0 ? pos : neg).add_term(rep, m > 0 ? m : -m);
  FormInvariants ip = invariants(pos), in = invariants(neg);
  switch (a.field().kind) {
    case FieldDescriptor::Kind::Reals:
      return ip.signature == in.signature;
    case FieldDescriptor::Kind::FinitePrime:
      return ip.disc == in.disc;
    case FieldDescriptor::Kind::Rationals:
      return ip.signature == in.signature && ip.disc == in.disc &&
             ip.hasse == in.hasse;
  }
  return false;
}

bool is_isotropic(const GWElement& q) {
  require_honest(q);
  Int rank = gw_rank(q);
  if (rank < 2) return false;
  const auto& f = q.field();
  FormInvariants inv = invariants(q);
  switch (f.kind) {
    case FieldDescriptor::Kind::Reals:
      return *inv.signature != rank && *inv.signature != -rank;
    case FieldDescriptor::Kind::FinitePrime: {
      if (rank >= 3) return true;
      return inv.disc == canonical_square_class(f, -1);
    }
    case FieldDescriptor::Kind::Rationals: {
      if (rank == 2) return inv.disc == -1;
      bool indefinite = *inv.signature != rank && *inv.signature != -rank;
      if (!indefinite) return false;
      if (rank >= 5) return true;
      // Ranks 3 and 4: Hasse-Minkowski over the finitely many places where a
      // unimodular reduction argument does not apply.
      for (const Place& v : relevant_finite_places(q)) {
        int eps = hasse_sign(q, v);
        if (rank == 3) {
          if (eps != hilbert_symbol(Int(-1), -inv.disc, v)) return false;
        } else {
          if (is_local_square(inv.disc, v) &&
              eps != hilbert_symbol(Int(-1), Int(-1), v))
            return false;
        }
      }
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Text syntax

GWElement parse_gw(const std::string& text, const FieldDescriptor& f) {
  detail::Cursor c{text};
  GWElement out(f);
  bool first = true;
  while (!c.eof()) {
    int sgn = 1;
    if (c.eat('-')) sgn = -1;
    else if (c.eat('+')) sgn = 1;
    else if (!first) c.fail("expected '+' or '-'");
    first = false;

    Int mult = 1;
    char ch = c.peek();
    if (ch != 'h' && ch != '<') {
      mult = c.integer();
      c.eat('*');
      ch = c.peek();
      if (ch != 'h' && ch != '<') {
        // A bare integer term is only meaningful for zero.
        if (mult == 0) continue;
        c.fail("expected 'h' or '<' after coefficient");
      }
    }
    if (c.eat('h')) {
      out.add_term(1, sgn * mult);
      out.add_term(-1, sgn * mult);
      continue;
    }
    if (!c.eat('<')) c.fail("expected 'h' or '<'");
    while (true) {
      Int num = c.integer();
      Int entry = num;
      if (c.eat('/')) {
        Int den = c.integer();
        if (den == 0) c.fail("zero denominator");
        entry = num * den;  // a/b and ab agree modulo squares
      }
      out.add_term(entry, sgn * mult);
      if (c.eat(',')) continue;
      if (c.eat('>')) break;
      c.fail("expected ',' or '>'");
    }
  }
  return out;
}

std::string print_gw(const GWElement& x) {
  if (x.is_zero()) return "0";
  // Cosmetic hyperbolic extraction. Only the square classes h itself occupies
  // participate, so the printed string reparses to the same presentation:
  // pairing arbitrary <a> with <-a> would be ring-correct but lossy.
  std::map<Int, Int> rem = x.coeffs();
  Int hcount = 0;
  const auto& f = x.field();
  Int mone = canonical_square_class(f, Int(-1));
  if (mone == 1) {
    // -1 is a square, so h presents as <1, 1>.
    auto it = rem.find(Int(1));
    if (it != rem.end()) {
      Int t = it->second / 2;  // rounds toward zero either way
      hcount += t;
      it->second -= 2 * t;
    }
  } else if (rem.count(Int(1)) != 0 && rem.count(mone) != 0) {
    Int ma = rem[Int(1)], mb = rem[mone];
    Int t = 0;
    if (ma > 0 && mb > 0) t = std::min(ma, mb);
    if (ma < 0 && mb < 0) t = std::max(ma, mb);
    hcount += t;
    rem[Int(1)] -= t;
    rem[mone] -= t;
  }

  std::vector<Int> pos_entries, neg_entries;
  for (const auto& [rep, m] : rem) {
    for (Int k = 0; k < (m > 0 ? m : -m); ++k)
      (m > 0 ? pos_entries : neg_entries).push_back(rep);
  }

  struct Term {
    int sgn;
    std::string text;
  };
  std::vector<Term> terms;
  if (hcount != 0) {
    Int a = hcount > 0 ? hcount : -hcount;
    terms.push_back({hcount > 0 ? 1 : -1, a == 1 ? "h" : a.str() + "*h"});
  }
  auto bracket = [](const std::vector<Int>& es) {
    std::string t = "<";
    for (size_t i = 0; i < es.size(); ++i) {
      if (i) t += ",";
      t += es[i].str();
    }
    return t + ">";
  };
  if (!pos_entries.empty()) terms.push_back({1, bracket(pos_entries)});
  if (!neg_entries.empty()) terms.push_back({-1, bracket(neg_entries)});

  std::string out;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i == 0) {
      if (terms[i].sgn < 0) out += "-";
    } else {
      out += terms[i].sgn < 0 ? " - " : " + ";
    }
    out += terms[i].text;
  }
  return out;
}

}  // namespace eulerchar
