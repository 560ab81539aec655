#include "eulerchar/fan.hpp"

#include <algorithm>
#include <random>

namespace eulerchar {

namespace {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

RatMat to_rat(const std::vector<std::vector<long long>>& m) {
  RatMat r(m.size());
  for (size_t i = 0; i < m.size(); ++i)
    for (long long x : m[i]) r[i].emplace_back(Int(x));
  return r;
}

// Gauss-Jordan elimination; returns the rank and leaves m in reduced form.
// cols limits elimination to the leading columns (the rest ride along as
// right-hand sides).
size_t rref(RatMat& m, size_t cols, std::vector<size_t>* pivot_cols = nullptr) {
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < m.size(); ++c) {
    size_t piv = rank;
    while (piv < m.size() && m[piv][c] == Rat(0)) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[rank], m[piv]);
    Rat lead = m[rank][c];
    for (auto& x : m[rank]) x /= lead;
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == Rat(0)) continue;
      Rat factor = m[r][c];
      for (size_t j = 0; j < m[r].size(); ++j) m[r][j] -= factor * m[rank][j];
    }
    if (pivot_cols) pivot_cols->push_back(c);
    ++rank;
  }
  return rank;
}

struct LinSolve {
  bool consistent = false;
  bool unique = false;
  RatVec x;
};

// Solves M x = rhs exactly over Q (M given row-wise).
LinSolve solve_rational(const RatMat& M, const RatVec& rhs) {
  size_t rows = M.size(), cols = rows ? M[0].size() : 0;
  RatMat aug(rows);
  for (size_t r = 0; r < rows; ++r) {
    aug[r] = M[r];
    aug[r].push_back(rhs[r]);
  }
  std::vector<size_t> pivots;
  size_t rank = rref(aug, cols, &pivots);
  LinSolve out;
  for (size_t r = rank; r < rows; ++r)
    if (aug[r][cols] != Rat(0)) return out;  // inconsistent
  out.consistent = true;
  out.unique = rank == cols;
  if (out.unique) {
    out.x.assign(cols, Rat(0));
    for (size_t r = 0; r < rank; ++r) out.x[pivots[r]] = aug[r][cols];
  }
  return out;
}

// Rational kernel basis of the k x n matrix (rows are vectors).
RatMat kernel_basis(const RatMat& rows, size_t n) {
  RatMat m = rows;
  std::vector<size_t> pivots;
  size_t rank = rref(m, n, &pivots);
  std::vector<bool> is_pivot(n, false);
  for (size_t c : pivots) is_pivot[c] = true;
  RatMat basis;
  for (size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    RatVec v(n, Rat(0));
    v[free] = Rat(1);
    for (size_t r = 0; r < rank; ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

Rat dot(const RatVec& a, const std::vector<long long>& b) {
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(Int(b[i]));
  return s;
}

// Determinant of a square rational matrix.
Rat rat_det(RatMat m) {
  Rat det(1);
  size_t n = m.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && m[piv][c] == Rat(0)) ++piv;
    if (piv == n) return Rat(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == Rat(0)) continue;
      Rat f = m[r][c] / m[c][c];
      for (size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return det;
}

// Is the origin in the convex hull of the given rational points?  Decided by
// Caratheodory: check every affinely independent subset of size <= d+1.
bool origin_in_hull(const RatMat& pts, size_t d) {
  size_t m = pts.size();
  size_t maxk = std::min(m, d + 1);
  std::vector<size_t> idx;
  // Enumerate subsets by bitmask; point counts here are tiny (<= 2*dim).
  for (size_t mask = 1; mask < (size_t(1) << m); ++mask) {
    size_t k = static_cast<size_t>(__builtin_popcountll(mask));
    if (k > maxk) continue;
    idx.clear();
    for (size_t i = 0; i < m; ++i)
      if (mask & (size_t(1) << i)) idx.push_back(i);
    // System: sum lambda_i pts[i] = 0, sum lambda_i = 1.
    RatMat M(d + 1, RatVec(k, Rat(0)));
    RatVec rhs(d + 1, Rat(0));
    for (size_t j = 0; j < k; ++j) {
      for (size_t r = 0; r < d; ++r) M[r][j] = pts[idx[j]][r];
      M[d][j] = Rat(1);
    }
    rhs[d] = Rat(1);
    LinSolve s = solve_rational(M, rhs);
    if (!s.consistent || !s.unique) continue;
    bool ok = true;
    for (const Rat& l : s.x)
      if (l < Rat(0)) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

std::vector<int> sorted_copy(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

long long cross2(const std::vector<long long>& a, const std::vector<long long>& b) {
  return a[0] * b[1] - a[1] * b[0];
}

// Strict angular order on nonzero 2D vectors, starting at the positive x-axis.
bool angle_less(const std::vector<long long>& a, const std::vector<long long>& b) {
  auto half = [](const std::vector<long long>& v) {
    return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1;
  };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross2(a, b) > 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// Validation

// 2D fast path.  Simplicial 2D cones are angular sectors of width < pi, and
// with rays deduplicated and cones non-nested the face condition is exactly
// "no bounding ray of one sector lies strictly inside the other".
static bool face_check_2d(const Fan& f, const std::vector<int>& a,
                          const std::vector<int>& b) {
  auto cross = [&](int i, int j) {
    const auto& u = f.rays[i];
    const auto& v = f.rays[j];
    return Int(u[0]) * v[1] - Int(u[1]) * v[0];
  };
  auto oriented = [&](std::vector<int> c) {
    if (c.size() == 2 && cross(c[0], c[1]) < 0) std::swap(c[0], c[1]);
    return c;
  };
  std::vector<int> A = oriented(a), B = oriented(b);
  auto strictly_inside = [&](const std::vector<int>& c, int r) {
    return c.size() == 2 && cross(c[0], r) > 0 && cross(r, c[1]) > 0;
  };
  for (int r : b)
    if (strictly_inside(A, r)) return false;
  for (int r : a)
    if (strictly_inside(B, r)) return false;
  return true;
}

static bool intersection_is_common_face(const Fan& f, const std::vector<int>& a,
                                        const std::vector<int>& b) {
  if (f.dim == 2) return face_check_2d(f, a, b);
  std::vector<int> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(common));
  // Separating functional: w vanishing on the common rays, strictly positive
  // on the rest of a, strictly negative on the rest of b.  For simplicial
  // cones such a w exists exactly when the cones meet along cone(common).
  RatMat frows;
  for (int i : common) frows.push_back(to_rat({f.rays[i]})[0]);
  size_t n = f.dim;
  RatMat basis = frows.empty()
                     ? [&] {
                         RatMat id(n, RatVec(n, Rat(0)));
                         for (size_t i = 0; i < n; ++i) id[i][i] = Rat(1);
                         return id;
                       }()
                     : kernel_basis(frows, n);
  RatMat pts;
  auto push_projected = [&](int ray, int sgn) {
    RatVec p;
    for (const auto& bvec : basis) p.push_back(Rat(Int(sgn)) * dot(bvec, f.rays[ray]));
    pts.push_back(std::move(p));
  };
  for (int i : a)
    if (!std::binary_search(common.begin(), common.end(), i)) push_projected(i, 1);
  for (int i : b)
    if (!std::binary_search(common.begin(), common.end(), i)) push_projected(i, -1);
  if (pts.empty()) return true;  // a == b
  return !origin_in_hull(pts, basis.size());
}

std::vector<Diagnostic> validate_fan(const Fan& f) {
  std::vector<Diagnostic> out;
  auto add = [&](const std::string& code, const std::string& msg) {
    out.push_back({code, msg});
  };
  if (f.dim < 0) {
    add("bad-dim", "dim must be nonnegative");
    return out;
  }
  for (size_t i = 0; i < f.rays.size(); ++i) {
    const auto& r = f.rays[i];
    if (static_cast<int>(r.size()) != f.dim) {
      add("ray-shape", "ray " + std::to_string(i) + " has wrong length");
      return out;
    }
    Int g = gcd_all(r);
    if (g == 0) add("ray-zero", "ray " + std::to_string(i) + " is zero");
    else if (g != 1) add("ray-not-primitive", "ray " + std::to_string(i) + " is not primitive");
    for (size_t j = 0; j < i; ++j)
      if (f.rays[j] == r) add("ray-duplicate", "rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }
  if (!out.empty()) return out;

  std::vector<std::vector<int>> cones;
  for (size_t ci = 0; ci < f.max_cones.size(); ++ci) {
    auto c = sorted_copy(f.max_cones[ci]);
    if (c.empty()) {
      add("cone-empty", "maximal cone " + std::to_string(ci) + " is empty");
      continue;
    }
    if (std::adjacent_find(c.begin(), c.end()) != c.end()) {
      add("cone-dup-index", "maximal cone " + std::to_string(ci) + " repeats a ray");
      continue;
    }
    if (c.front() < 0 || c.back() >= static_cast<int>(f.rays.size())) {
      add("cone-bad-index", "maximal cone " + std::to_string(ci) + " indexes a missing ray");
      continue;
    }
    RatMat rows;
    for (int i : c) rows.push_back(to_rat({f.rays[i]})[0]);
    if (rref(rows, f.dim) != c.size())
      add("cone-not-simplicial",
          "maximal cone " + std::to_string(ci) + " has dependent rays");
    cones.push_back(std::move(c));
  }
  if (!out.empty()) return out;

  for (size_t i = 0; i < cones.size(); ++i)
    for (size_t j = 0; j < i; ++j) {
      if (cones[i] == cones[j]) {
        add("cone-duplicate",
            "maximal cones " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
      } else if (subset_of(cones[i], cones[j]) || subset_of(cones[j], cones[i])) {
        add("cone-not-maximal",
            "maximal cone " + std::to_string(j) + " and " + std::to_string(i) +
                " are nested");
      }
    }
  if (!out.empty()) return out;

  std::vector<bool> used(f.rays.size(), false);
  for (const auto& c : cones)
    for (int i : c) used[i] = true;
  for (size_t i = 0; i < used.size(); ++i)
    if (!used[i]) add("unused-ray", "ray " + std::to_string(i) + " is in no maximal cone");

  for (size_t i = 0; i < cones.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (!intersection_is_common_face(f, cones[j], cones[i]))
        add("intersection-not-a-face",
            "maximal cones " + std::to_string(j) + " and " + std::to_string(i) +
                " do not meet in a common face");
  return out;
}

void require_valid(const Fan& f) {
  auto diags = validate_fan(f);
  if (diags.empty()) return;
  std::string msg;
  for (size_t i = 0; i < diags.size() && i < 3; ++i) {
    if (i) msg += "; ";
    msg += diags[i].message;
  }
  if (diags.size() > 3) msg += "; ...";
  throw Error(Errc::FanValidation, msg);
}

bool is_cone(const Fan& f, const ConeRef& c) {
  auto s = sorted_copy(c);
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
  if (!s.empty() && (s.front() < 0 || s.back() >= static_cast<int>(f.rays.size())))
    return false;
  if (s.empty()) return true;
  for (const auto& m : f.max_cones)
    if (subset_of(s, sorted_copy(m))) return true;
  return false;
}

std::set<ConeRef> all_cones(const Fan& f) {
  std::set<ConeRef> out;
  out.insert(ConeRef{});  // insert({}) would pick the empty initializer_list overload
  for (const auto& m : f.max_cones) {
    auto c = sorted_copy(m);
    size_t k = c.size();
    for (size_t mask = 1; mask < (size_t(1) << k); ++mask) {
      ConeRef sub;
      for (size_t i = 0; i < k; ++i)
        if (mask & (size_t(1) << i)) sub.push_back(c[i]);
      out.insert(std::move(sub));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Smoothness

static Int int_det(std::vector<std::vector<Int>> m) {
  // Fraction-free (Bareiss) elimination.
  size_t n = m.size();
  Int prev = 1;
  int sign_flips = 0;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      ++sign_flips;
    }
    for (size_t r = c + 1; r < n; ++r) {
      for (size_t j = c + 1; j < n; ++j)
        m[r][j] = (m[r][j] * m[c][c] - m[r][c] * m[c][j]) / prev;
      m[r][c] = 0;
    }
    prev = m[c][c];
  }
  return sign_flips % 2 ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

Int cone_lattice_index(const Fan& f, const ConeRef& c) {
  if (c.empty()) return 1;
  size_t k = c.size(), n = f.dim;
  if (k > n) throw Error(Errc::NoSuchCone, "cone exceeds ambient dimension");
  // gcd over all k x k minors of the k x n ray matrix
  std::vector<int> cols(k);
  for (size_t i = 0; i < k; ++i) cols[i] = static_cast<int>(i);
  Int g = 0;
  while (true) {
    std::vector<std::vector<Int>> sub(k, std::vector<Int>(k));
    for (size_t r = 0; r < k; ++r)
      for (size_t j = 0; j < k; ++j) sub[r][j] = f.rays[c[r]][cols[j]];
    Int d = int_det(sub);
    g = boost::multiprecision::gcd(g, d < 0 ? Int(-d) : d);
    // next combination
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && cols[i] == static_cast<int>(n - k + i)) --i;
    if (i < 0) break;
    ++cols[i];
    for (size_t j = i + 1; j < k; ++j) cols[j] = cols[j - 1] + 1;
  }
  return g;
}

bool is_smooth_cone(const Fan& f, const ConeRef& c) {
  return cone_lattice_index(f, c) == 1;
}

bool is_smooth(const Fan& f) {
  require_valid(f);
  for (const auto& m : f.max_cones)
    if (!is_smooth_cone(f, sorted_copy(m))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Membership and completeness

bool cone_contains(const Fan& f, const ConeRef& c, const std::vector<long long>& x,
                   bool relative_interior) {
  if (c.empty()) {
    bool zero = std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; });
    return zero;
  }
  size_t n = f.dim, k = c.size();
  RatMat M(n, RatVec(k, Rat(0)));
  RatVec rhs(n, Rat(0));
  for (size_t r = 0; r < n; ++r) {
    for (size_t j = 0; j < k; ++j) M[r][j] = Rat(Int(f.rays[c[j]][r]));
    rhs[r] = Rat(Int(x[r]));
  }
  LinSolve s = solve_rational(M, rhs);
  if (!s.consistent || !s.unique) return false;
  for (const Rat& l : s.x) {
    if (l < Rat(0)) return false;
    if (relative_interior && l == Rat(0)) return false;
  }
  return true;
}

std::optional<ConeRef> relint_containing_max_cone(const Fan& f,
                                                  const std::vector<long long>& x) {
  for (const auto& m : f.max_cones) {
    auto c = sorted_copy(m);
    if (cone_contains(f, c, x, true)) return c;
  }
  return std::nullopt;
}

std::string Completeness::str() const {
  if (!complete) return "not complete";
  return mode == Mode::Exact ? "complete (verified)" : "complete (structural)";
}

static Completeness complete_2d(const Fan& f) {
  size_t r = f.rays.size();
  if (r < 3) return {false, Completeness::Mode::Exact};
  for (const auto& m : f.max_cones)
    if (m.size() != 2) return {false, Completeness::Mode::Exact};
  std::vector<int> order(r);
  for (size_t i = 0; i < r; ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return angle_less(f.rays[a], f.rays[b]); });
  std::set<ConeRef> expected;
  for (size_t i = 0; i < r; ++i) {
    int a = order[i], b = order[(i + 1) % r];
    if (cross2(f.rays[a], f.rays[b]) <= 0)
      return {false, Completeness::Mode::Exact};  // a gap of angle >= pi
    ConeRef c{a, b};
    std::sort(c.begin(), c.end());
    expected.insert(c);
  }
  std::set<ConeRef> actual;
  for (const auto& m : f.max_cones) actual.insert(sorted_copy(m));
  return {actual == expected, Completeness::Mode::Exact};
}

static Completeness complete_structural(const Fan& f) {
  size_t n = f.dim;
  for (const auto& m : f.max_cones)
    if (m.size() != n) return {false, Completeness::Mode::Structural};
  if (f.max_cones.empty()) return {false, Completeness::Mode::Structural};
  // Every facet shared by exactly two maximal cones.
  std::map<ConeRef, std::vector<size_t>> facet_owners;
  for (size_t ci = 0; ci < f.max_cones.size(); ++ci) {
    auto c = sorted_copy(f.max_cones[ci]);
    for (size_t drop = 0; drop < c.size(); ++drop) {
      ConeRef facet;
      for (size_t i = 0; i < c.size(); ++i)
        if (i != drop) facet.push_back(c[i]);
      facet_owners[facet].push_back(ci);
    }
  }
  for (const auto& [_, owners] : facet_owners)
    if (owners.size() != 2) return {false, Completeness::Mode::Structural};
  // Dual graph connected.
  std::vector<std::vector<size_t>> adj(f.max_cones.size());
  for (const auto& [_, owners] : facet_owners) {
    adj[owners[0]].push_back(owners[1]);
    adj[owners[1]].push_back(owners[0]);
  }
  std::vector<bool> seen(f.max_cones.size(), false);
  std::vector<size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    size_t v = stack.back();
    stack.pop_back();
    for (size_t w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
    return {false, Completeness::Mode::Structural};
  // Randomized point location: every sample must land in some maximal cone.
  long long box = 1;
  for (const auto& ray : f.rays)
    for (long long x : ray) box = std::max(box, x < 0 ? -x : x);
  box *= 3;
  std::mt19937_64 rng(0x5eedf00dULL);
  std::uniform_int_distribution<long long> dist(-box, box);
  for (int trial = 0; trial < 64; ++trial) {
    std::vector<long long> x(n);
    bool zero = true;
    for (auto& v : x) {
      v = dist(rng);
      zero = zero && v == 0;
    }
    if (zero) continue;
    bool inside = false;
    for (const auto& m : f.max_cones)
      if (cone_contains(f, sorted_copy(m), x)) {
        inside = true;
        break;
      }
    if (!inside) return {false, Completeness::Mode::Structural};
  }
  return {true, Completeness::Mode::Structural};
}

Completeness is_complete(const Fan& f) {
  require_valid(f);
  if (f.dim == 0) return {true, Completeness::Mode::Exact};
  if (f.dim == 1) {
    bool pos = false, neg = false;
    for (const auto& r : f.rays) {
      pos = pos || r[0] > 0;
      neg = neg || r[0] < 0;
    }
    bool covered = pos && neg && f.max_cones.size() == f.rays.size();
    return {covered, Completeness::Mode::Exact};
  }
  if (f.dim == 2) return complete_2d(f);
  return complete_structural(f);
}

// ---------------------------------------------------------------------------
// Stellar subdivision

Fan stellar_subdivide(const Fan& f, const ConeRef& cone,
                      const std::optional<std::vector<long long>>& new_ray) {
  require_valid(f);
  ConeRef c = sorted_copy(cone);
  if (!is_cone(f, c) || c.size() < 2)
    throw Error(Errc::NoSuchCone,
                "subdivision center must be a cone of dimension >= 2");
  std::vector<long long> ray;
  if (new_ray) {
    ray = *new_ray;
    if (static_cast<int>(ray.size()) != f.dim)
      throw Error(Errc::InvalidSubdivisionRay, "ray has wrong length");
    if (gcd_all(ray) != 1)
      throw Error(Errc::InvalidSubdivisionRay, "ray is not primitive");
    if (!cone_contains(f, c, ray, true))
      throw Error(Errc::InvalidSubdivisionRay,
                  "ray is not interior to the center cone");
  } else {
    ray.assign(f.dim, 0);
    for (int i : c)
      for (int j = 0; j < f.dim; ++j) ray[j] += f.rays[i][j];
    ray = primitive(ray);
  }

  Fan g;
  g.dim = f.dim;
  g.rays = f.rays;
  int idx = static_cast<int>(g.rays.size());
  g.rays.push_back(ray);
  for (const auto& m : f.max_cones) {
    auto mc = sorted_copy(m);
    if (!subset_of(c, mc)) {
      g.max_cones.push_back(mc);
      continue;
    }
    for (int drop : c) {
      ConeRef nc;
      for (int i : mc)
        if (i != drop) nc.push_back(i);
      nc.push_back(idx);
      std::sort(nc.begin(), nc.end());
      g.max_cones.push_back(std::move(nc));
    }
  }
  require_valid(g);
  return g;
}

// ---------------------------------------------------------------------------
// Star fans

// Core star computation; assumes f valid and c a sorted nonempty cone of f.
static Fan star_of(const Fan& f, const ConeRef& c) {
  size_t k = c.size(), n = f.dim;
  // Integer column reduction M V = [T | 0] with V unimodular; the projection
  // to the quotient lattice is x -> (x V) restricted to the last n-k columns.
  std::vector<std::vector<Int>> W(k, std::vector<Int>(n));
  for (size_t r = 0; r < k; ++r)
    for (size_t j = 0; j < n; ++j) W[r][j] = f.rays[c[r]][j];
  std::vector<std::vector<Int>> V(n, std::vector<Int>(n, 0));
  for (size_t i = 0; i < n; ++i) V[i][i] = 1;
  auto col_axpy = [&](size_t dst, size_t src, const Int& t) {
    // col_dst -= t * col_src
    for (size_t r = 0; r < k; ++r) W[r][dst] -= t * W[r][src];
    for (size_t r = 0; r < n; ++r) V[r][dst] -= t * V[r][src];
  };
  auto col_swap = [&](size_t a, size_t b) {
    for (size_t r = 0; r < k; ++r) std::swap(W[r][a], W[r][b]);
    for (size_t r = 0; r < n; ++r) std::swap(V[r][a], V[r][b]);
  };
  for (size_t row = 0; row < k; ++row) {
    while (true) {
      size_t nz = 0, best = 0;
      Int bestabs = 0;
      for (size_t j = row; j < n; ++j) {
        if (W[row][j] == 0) continue;
        Int a = W[row][j] < 0 ? Int(-W[row][j]) : W[row][j];
        if (nz == 0 || a < bestabs) {
          best = j;
          bestabs = a;
        }
        ++nz;
      }
      if (nz == 0)
        throw Error(Errc::FanValidation, "cone rays are dependent");
      if (nz == 1) {
        if (best != row) col_swap(row, best);
        break;
      }
      // best has the least absolute value, so every quotient is nonzero and
      // each pass shrinks the row.
      for (size_t j = row; j < n; ++j) {
        if (j == best || W[row][j] == 0) continue;
        Int t = W[row][j] / W[row][best];
        if (t != 0) col_axpy(j, best, t);
      }
    }
  }

  auto project = [&](const std::vector<long long>& x) {
    std::vector<long long> out(n - k);
    for (size_t j = k; j < n; ++j) {
      Int s = 0;
      for (size_t r = 0; r < n; ++r) s += Int(x[r]) * V[r][j];
      out[j - k] = s.convert_to<long long>();
    }
    return out;
  };

  Fan g;
  g.dim = static_cast<int>(n - k);
  std::map<std::vector<long long>, int> ray_index;
  std::set<ConeRef> new_cones;
  for (const auto& m : f.max_cones) {
    auto mc = sorted_copy(m);
    if (!subset_of(c, mc)) continue;
    ConeRef image;
    for (int i : mc) {
      if (std::binary_search(c.begin(), c.end(), i)) continue;
      auto p = primitive(project(f.rays[i]));
      auto it = ray_index.find(p);
      int id;
      if (it == ray_index.end()) {
        id = static_cast<int>(g.rays.size());
        ray_index[p] = id;
        g.rays.push_back(p);
      } else {
        id = it->second;
      }
      image.push_back(id);
    }
    std::sort(image.begin(), image.end());
    if (!image.empty()) new_cones.insert(image);
  }
  g.max_cones.assign(new_cones.begin(), new_cones.end());
  require_valid(g);
  return g;
}

Fan star_fan(const Fan& f, const ConeRef& cone) {
  require_valid(f);
  ConeRef c = sorted_copy(cone);
  if (!is_cone(f, c)) throw Error(Errc::NoSuchCone, "not a cone of the fan");
  if (c.empty()) return f;
  return star_of(f, c);
}

std::map<ConeRef, Fan> all_star_fans(const Fan& f) {
  require_valid(f);
  std::map<ConeRef, Fan> out;
  for (const ConeRef& c : all_cones(f))
    out.emplace(c, c.empty() ? f : star_of(f, c));
  return out;
}

// ---------------------------------------------------------------------------
// 2D resolution

static Int det2(const std::vector<long long>& u, const std::vector<long long>& v) {
  return Int(u[0]) * v[1] - Int(u[1]) * v[0];
}

static Int ceil_div(const Int& a, const Int& b) {
  // b > 0
  Int q = a / b, r = a % b;
  if (r > 0) ++q;
  return q;
}

// One Hirzebruch-Jung insertion for the singular cone <u, v> (det > 1):
// the unique primitive w interior to the cone with det(u, w) = 1.
static std::vector<long long> hj_insertion(const std::vector<long long>& u,
                                           const std::vector<long long>& v) {
  Int d = det2(u, v);
  // complete u to a basis: det(u, ustar) = 1
  Int x0 = u[0], y0 = u[1];
  // find a, b with a*x0 + b*y0 = 1
  Int a, b, g;
  {
    // extended gcd
    Int old_r = x0, r = y0, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      Int q = old_r / r;
      Int tmp;
      tmp = old_r - q * r; old_r = r; r = tmp;
      tmp = old_s - q * s; old_s = s; s = tmp;
      tmp = old_t - q * t; old_t = t; t = tmp;
    }
    g = old_r;
    a = old_s;
    b = old_t;
    if (g < 0) {
      g = -g;
      a = -a;
      b = -b;
    }
  }
  // u primitive => g == 1; det(u, (-b, a)) = x0*a - y0*(-b) = 1
  std::vector<long long> ustar{(-b).convert_to<long long>(), a.convert_to<long long>()};
  // In the basis (u, ustar): v = p*u + d*ustar with p = det(v, ustar).
  Int p = det2(v, ustar);
  Int m = ceil_div(p, d);
  // w = m*u + ustar lies strictly inside and satisfies det(u, w) = 1.
  std::vector<long long> w{(m * u[0] + ustar[0]).convert_to<long long>(),
                           (m * u[1] + ustar[1]).convert_to<long long>()};
  return w;
}

Resolution resolve_2d(const Fan& f) {
  if (f.dim != 2)
    throw Error(Errc::FanValidation, "resolve_2d requires a 2-dimensional fan");
  require_valid(f);
  Resolution res;
  res.fan = f;
  while (true) {
    bool found = false;
    for (const auto& m : res.fan.max_cones) {
      auto c = sorted_copy(m);
      if (c.size() != 2)
        throw Error(Errc::FanValidation, "resolve_2d requires 2-dimensional cones");
      auto u = res.fan.rays[c[0]], v = res.fan.rays[c[1]];
      Int d = det2(u, v);
      if (d < 0) {
        std::swap(u, v);
        d = -d;
      }
      if (d <= 1) continue;
      auto w = hj_insertion(u, v);
      res.fan = stellar_subdivide(res.fan, c, w);
      res.inserted_rays.push_back(w);
      found = true;
      break;
    }
    if (!found) break;
  }
  return res;
}

bool fans_isomorphic_by_rays(const Fan& a, const Fan& b) {
  if (a.dim != b.dim || a.rays.size() != b.rays.size() ||
      a.max_cones.size() != b.max_cones.size())
    return false;
  std::map<std::vector<long long>, int> bindex;
  for (size_t i = 0; i < b.rays.size(); ++i) bindex[b.rays[i]] = static_cast<int>(i);
  std::vector<int> perm(a.rays.size());
  for (size_t i = 0; i < a.rays.size(); ++i) {
    auto it = bindex.find(a.rays[i]);
    if (it == bindex.end()) return false;
    perm[i] = it->second;
  }
  std::set<ConeRef> ca, cb;
  for (const auto& m : a.max_cones) {
    ConeRef t;
    for (int i : m) t.push_back(perm[i]);
    std::sort(t.begin(), t.end());
    ca.insert(t);
  }
  for (const auto& m : b.max_cones) cb.insert(sorted_copy(m));
  return ca == cb;
}

bool ray_angle_less(const std::vector<long long>& a, const std::vector<long long>& b) {
  return angle_less(a, b);
}

}  // namespace eulerchar
