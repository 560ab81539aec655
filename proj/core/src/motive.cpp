#include "eulerchar/motive.hpp"

#include <algorithm>

#include "eulerchar/fan.hpp"
#include "parse_util.hpp"

namespace eulerchar {

Atom Atom::operator*(const Atom& o) const {
  Atom r = *this;
  r.lpow += o.lpow;
  for (const auto& [n, e] : o.names) r.names[n] += e;
  return r;
}

std::optional<int> genus_curve_atom(const std::string& id) {
  if (id.size() < 5 || id.substr(0, 3) != "Cg(" || id.back() != ')')
    return std::nullopt;
  std::string inner = id.substr(3, id.size() - 4);
  if (inner.empty() ||
      !std::all_of(inner.begin(), inner.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return std::nullopt;
  return std::stoi(inner);
}

std::optional<int> Atom::dim() const {
  int d = lpow;
  for (const auto& [n, e] : names) {
    if (!genus_curve_atom(n)) return std::nullopt;
    d += e;  // curves are one-dimensional
  }
  return d;
}

std::string Atom::str() const {
  if (is_unit()) return "1";
  std::vector<std::string> parts;
  if (lpow == 1) parts.push_back("L");
  else if (lpow > 1) parts.push_back("L^" + std::to_string(lpow));
  for (const auto& [n, e] : names) {
    std::string t = "[" + n + "]";
    if (e > 1) t += "^" + std::to_string(e);
    parts.push_back(t);
  }
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "*";
    out += parts[i];
  }
  return out;
}

MotiveClass MotiveClass::constant(const Int& n) {
  MotiveClass r;
  r.add_term(Atom{}, n);
  return r;
}

MotiveClass MotiveClass::L(int k) {
  MotiveClass r;
  r.add_term(Atom::L(k), 1);
  return r;
}

MotiveClass MotiveClass::named(const std::string& id) {
  MotiveClass r;
  r.add_term(Atom::named(id), 1);
  return r;
}

void MotiveClass::add_term(const Atom& a, const Int& c) {
  if (c == 0) return;
  if (a.lpow < 0) throw Error(Errc::ParseError, "negative power of L");
  Int& m = coeffs_[a];
  m += c;
  if (m == 0) coeffs_.erase(a);
}

std::optional<int> MotiveClass::dim() const {
  if (coeffs_.empty()) return std::nullopt;
  int best = 0;
  for (const auto& [a, _] : coeffs_) {
    auto d = a.dim();
    if (!d) return std::nullopt;
    best = std::max(best, *d);
  }
  return best;
}

MotiveClass mc_add(const MotiveClass& a, const MotiveClass& b) {
  MotiveClass r = a;
  for (const auto& [atom, c] : b.coeffs()) r.add_term(atom, c);
  return r;
}

MotiveClass mc_neg(const MotiveClass& a) {
  MotiveClass r;
  for (const auto& [atom, c] : a.coeffs()) r.add_term(atom, -c);
  return r;
}

MotiveClass mc_sub(const MotiveClass& a, const MotiveClass& b) {
  return mc_add(a, mc_neg(b));
}

MotiveClass mc_mul(const MotiveClass& a, const MotiveClass& b) {
  MotiveClass r;
  for (const auto& [aa, ca] : a.coeffs())
    for (const auto& [ab, cb] : b.coeffs()) r.add_term(aa * ab, ca * cb);
  return r;
}

MotiveClass mc_scale(const Int& k, const MotiveClass& a) {
  MotiveClass r;
  for (const auto& [atom, c] : a.coeffs()) r.add_term(atom, k * c);
  return r;
}

// ---------------------------------------------------------------------------
// Text syntax

static Atom parse_atom_factors(detail::Cursor& c) {
  Atom atom;
  bool any = false;
  while (true) {
    char ch = c.peek();
    if (ch == 'L') {
      c.eat('L');
      atom = atom * Atom::L(c.exponent());
      any = true;
    } else if (ch == '[') {
      c.eat('[');
      size_t start = c.i;
      while (c.i < c.s.size() && c.s[c.i] != ']') ++c.i;
      if (c.i >= c.s.size()) c.fail("unterminated '['");
      std::string id = c.s.substr(start, c.i - start);
      ++c.i;  // ']'
      if (id.empty()) c.fail("empty atom name");
      int e = c.exponent();
      for (int k = 0; k < e; ++k) atom = atom * Atom::named(id);
      any = true;
    } else {
      break;
    }
    c.eat('*');
  }
  if (!any) c.fail("expected 'L' or '[name]'");
  return atom;
}

MotiveClass parse_class(const std::string& text) {
  detail::Cursor c{text};
  MotiveClass out;
  bool first = true;
  while (!c.eof()) {
    int sgn = 1;
    if (c.eat('-')) sgn = -1;
    else if (c.eat('+')) sgn = 1;
    else if (!first) c.fail("expected '+' or '-'");
    first = false;

    Int coeff = 1;
    bool have_coeff = false;
    char ch = c.peek();
    if (ch != 'L' && ch != '[') {
      coeff = c.integer();
      have_coeff = true;
      c.eat('*');
      ch = c.peek();
    }
    if (ch == 'L' || ch == '[') {
      out.add_term(parse_atom_factors(c), sgn * coeff);
    } else if (have_coeff) {
      out.add_term(Atom{}, sgn * coeff);  // constant term
    } else {
      c.fail("expected term");
    }
  }
  return out;
}

std::string print_class(const MotiveClass& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [atom, c] : x.coeffs()) {
    Int a = c > 0 ? c : -c;
    std::string body;
    if (atom.is_unit()) body = a.str();
    else if (a == 1) body = atom.str();
    else body = a.str() + atom.str();
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    out += body;
  }
  return out;
}

MotiveClass class_of_toric(const Fan& f) {
  require_valid(f);
  MotiveClass lm1 = mc_sub(MotiveClass::L(), MotiveClass::one());
  std::vector<MotiveClass> pow{MotiveClass::one()};
  for (int k = 1; k <= f.dim; ++k) pow.push_back(mc_mul(pow.back(), lm1));
  MotiveClass out;
  for (const auto& cone : all_cones(f))
    out = mc_add(out, pow[f.dim - static_cast<int>(cone.size())]);
  return out;
}

// ---------------------------------------------------------------------------
// Point-count polynomials

QPoly QPoly::q(int power) {
  QPoly p;
  p.add_term(power, 1);
  return p;
}

void QPoly::add_term(int pow, const Int& c) {
  if (c == 0) return;
  if (pow < 0) throw Error(Errc::ParseError, "negative power of q");
  Int& m = coeffs_[pow];
  m += c;
  if (m == 0) coeffs_.erase(pow);
}

Int QPoly::eval(const Int& q0) const {
  Int r = 0;
  for (const auto& [p, c] : coeffs_) r += c * pow_int(q0, p);
  return r;
}

QPoly QPoly::operator+(const QPoly& o) const {
  QPoly r = *this;
  for (const auto& [p, c] : o.coeffs_) r.add_term(p, c);
  return r;
}

QPoly QPoly::operator-(const QPoly& o) const {
  QPoly r = *this;
  for (const auto& [p, c] : o.coeffs_) r.add_term(p, -c);
  return r;
}

QPoly QPoly::operator*(const QPoly& o) const {
  QPoly r;
  for (const auto& [pa, ca] : coeffs_)
    for (const auto& [pb, cb] : o.coeffs_) r.add_term(pa + pb, ca * cb);
  return r;
}

std::string QPoly::str() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [p, c] : coeffs_) {
    Int a = c > 0 ? c : -c;
    std::string body;
    std::string var = p == 0 ? "" : (p == 1 ? "q" : "q^" + std::to_string(p));
    if (var.empty()) body = a.str();
    else if (a == 1) body = var;
    else body = a.str() + var;
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    out += body;
  }
  return out;
}

QPoly parse_qpoly(const std::string& text) {
  detail::Cursor c{text};
  QPoly out;
  bool first = true;
  while (!c.eof()) {
    int sgn = 1;
    if (c.eat('-')) sgn = -1;
    else if (c.eat('+')) sgn = 1;
    else if (!first) c.fail("expected '+' or '-'");
    first = false;

    Int coeff = 1;
    bool have_coeff = false;
    if (c.peek() != 'q') {
      coeff = c.integer();
      have_coeff = true;
      c.eat('*');
    }
    if (c.eat('q')) {
      out.add_term(c.exponent(), sgn * coeff);
    } else if (have_coeff) {
      out.add_term(0, sgn * coeff);
    } else {
      c.fail("expected term");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Measures

MeasureValue mv_zero(const Measure& m) {
  switch (m.target) {
    case Measure::Target::Integers: return Int(0);
    case Measure::Target::PolyQ: return QPoly();
    case Measure::Target::GW: return gw_zero(m.field);
  }
  throw Error(Errc::Unsupported, "unknown measure target");
}

MeasureValue mv_one(const Measure& m) {
  switch (m.target) {
    case Measure::Target::Integers: return Int(1);
    case Measure::Target::PolyQ: return QPoly(Int(1));
    case Measure::Target::GW: return gw_unit(m.field);
  }
  throw Error(Errc::Unsupported, "unknown measure target");
}

static void require_same_kind(const MeasureValue& a, const MeasureValue& b) {
  if (a.index() != b.index())
    throw Error(Errc::FieldMismatch, "mixing values of different measures");
}

MeasureValue mv_add(const MeasureValue& a, const MeasureValue& b) {
  require_same_kind(a, b);
  if (auto* x = std::get_if<Int>(&a)) return *x + std::get<Int>(b);
  if (auto* x = std::get_if<QPoly>(&a)) return *x + std::get<QPoly>(b);
  return gw_add(std::get<GWElement>(a), std::get<GWElement>(b));
}

MeasureValue mv_sub(const MeasureValue& a, const MeasureValue& b) {
  require_same_kind(a, b);
  if (auto* x = std::get_if<Int>(&a)) return *x - std::get<Int>(b);
  if (auto* x = std::get_if<QPoly>(&a)) return *x - std::get<QPoly>(b);
  return gw_sub(std::get<GWElement>(a), std::get<GWElement>(b));
}

MeasureValue mv_mul(const MeasureValue& a, const MeasureValue& b) {
  require_same_kind(a, b);
  if (auto* x = std::get_if<Int>(&a)) return *x * std::get<Int>(b);
  if (auto* x = std::get_if<QPoly>(&a)) return *x * std::get<QPoly>(b);
  return gw_mul(std::get<GWElement>(a), std::get<GWElement>(b));
}

MeasureValue mv_scale(const Int& k, const MeasureValue& a) {
  if (auto* x = std::get_if<Int>(&a)) return k * *x;
  if (auto* x = std::get_if<QPoly>(&a)) return QPoly(k) * *x;
  return gw_scale(k, std::get<GWElement>(a));
}

bool mv_equal(const MeasureValue& a, const MeasureValue& b) {
  require_same_kind(a, b);
  if (auto* x = std::get_if<Int>(&a)) return *x == std::get<Int>(b);
  if (auto* x = std::get_if<QPoly>(&a)) return *x == std::get<QPoly>(b);
  return gw_equals(std::get<GWElement>(a), std::get<GWElement>(b));
}

std::string mv_print(const MeasureValue& v) {
  if (auto* x = std::get_if<Int>(&v)) return x->str();
  if (auto* x = std::get_if<QPoly>(&v)) return x->str();
  return print_gw(std::get<GWElement>(v));
}

MeasureValue parse_measure_value(const std::string& raw, const Measure& m) {
  switch (m.target) {
    case Measure::Target::Integers: {
      detail::Cursor c{raw};
      Int v = c.integer();
      if (!c.eof()) c.fail("trailing input");
      return v;
    }
    case Measure::Target::PolyQ: return parse_qpoly(raw);
    case Measure::Target::GW: return parse_gw(raw, m.field);
  }
  throw Error(Errc::Unsupported, "unknown measure target");
}

void SeedTable::set(const std::string& atom, const std::string& measure,
                    const std::string& raw) {
  entries_[atom][measure] = raw;
}

std::optional<SeedTable::Hit> SeedTable::lookup(const std::string& atom,
                                                const Measure& m) const {
  if (auto it = entries_.find(atom); it != entries_.end())
    if (auto jt = it->second.find(m.id); jt != it->second.end())
      return Hit{jt->second, false};
  // Where L goes is part of the measure's definition, not an external
  // default, so these hits are not flagged in EvalNotes.
  if (atom == "L") {
    switch (m.target) {
      case Measure::Target::Integers: return Hit{"1", false};
      case Measure::Target::PolyQ: return Hit{"q", false};
      case Measure::Target::GW: return Hit{"<-1>", false};
    }
  }
  if (auto g = genus_curve_atom(atom)) {
    if (m.id == "top") return Hit{Int(2 - 2 * *g).str(), true};
    if (m.id == "gw") {
      Int k = 1 - *g;
      if (k == 0) return Hit{"0", true};
      std::string s = (k < 0 ? "-" : "");
      Int a = k < 0 ? -k : k;
      return Hit{s + (a == 1 ? "h" : a.str() + "*h"), true};
    }
  }
  return std::nullopt;
}

static MeasureValue mv_pow(const MeasureValue& v, int k, const Measure& m) {
  MeasureValue r = mv_one(m);
  for (int i = 0; i < k; ++i) r = mv_mul(r, v);
  return r;
}

static MeasureValue resolve_seed(const std::string& atom, const Measure& m,
                                 const SeedTable& seeds, EvalNotes* notes) {
  auto hit = seeds.lookup(atom, m);
  if (!hit)
    throw Error(Errc::MissingSeed,
                "no seed for [" + atom + "] under measure " + m.str());
  if (hit->is_default && notes)
    notes->default_seeds_used.insert(atom + "/" + m.id);
  return parse_measure_value(hit->raw, m);
}

MeasureValue apply_measure(const MotiveClass& x, const Measure& m,
                           const SeedTable& seeds, EvalNotes* notes) {
  MeasureValue out = mv_zero(m);
  for (const auto& [atom, coeff] : x.coeffs()) {
    MeasureValue v = mv_one(m);
    if (atom.lpow > 0)
      v = mv_mul(v, mv_pow(resolve_seed("L", m, seeds, notes), atom.lpow, m));
    for (const auto& [name, e] : atom.names)
      v = mv_mul(v, mv_pow(resolve_seed(name, m, seeds, notes), e, m));
    out = mv_add(out, mv_scale(coeff, v));
  }
  return out;
}

bool bittner_blowup_check(const MotiveClass& X, const MotiveClass& C,
                          const MotiveClass& Xt, const MotiveClass& E) {
  return mc_sub(Xt, E) == mc_sub(X, C);
}

}  // namespace eulerchar
