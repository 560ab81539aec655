#include "oracles.hpp"

namespace oracles {
namespace {

long long mod(long long a, long long p) {
  long long r = a % p;
  return r < 0 ? r + p : r;
}

// Advances x through (F_p)^n lexicographically; false once wrapped around.
bool next_tuple(std::vector<long long>& x, long long p) {
  for (size_t k = 0; k < x.size(); ++k) {
    if (++x[k] < p) return true;
    x[k] = 0;
  }
  return false;
}

}  // namespace

std::vector<long long> fp_value_counts(const std::vector<long long>& diag, long long p) {
  std::vector<long long> counts(p, 0);
  std::vector<long long> x(diag.size(), 0);
  do {
    long long v = 0;
    for (size_t i = 0; i < diag.size(); ++i) v = mod(v + mod(diag[i], p) * x[i] * x[i], p);
    ++counts[v];
  } while (next_tuple(x, p));
  return counts;
}

bool fp_isometric_counts(const std::vector<long long>& a, const std::vector<long long>& b,
                         long long p) {
  return a.size() == b.size() && fp_value_counts(a, p) == fp_value_counts(b, p);
}

bool fp_isometric_transporter(const std::vector<long long>& a,
                              const std::vector<long long>& b, long long p) {
  if (a.size() != b.size()) return false;
  size_t n = a.size();
  if (n == 0) return true;
  std::vector<long long> t(n * n, 0);  // t[k * n + i] = T_{k i}
  do {
    bool match = true;
    for (size_t i = 0; i < n && match; ++i) {
      for (size_t j = i; j < n && match; ++j) {
        long long s = 0;
        for (size_t k = 0; k < n; ++k) s = mod(s + mod(a[k], p) * t[k * n + i] * t[k * n + j], p);
        if (s != (i == j ? mod(b[i], p) : 0)) match = false;
      }
    }
    if (match) return true;
  } while (next_tuple(t, p));
  return false;
}

bool conic_has_point(long long a, long long b, long long box) {
  for (long long x = 0; x <= box; ++x)
    for (long long y = 0; y <= box; ++y)
      for (long long z = 0; z <= box; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        if (a * x * x + b * y * y == z * z) return true;
      }
  return false;
}

namespace {

// Enumerates representatives with first nonzero coordinate equal to 1.
long long count_normalized(int len, long long q) {
  std::vector<long long> x(len, 0);
  long long count = 0;
  do {
    int lead = -1;
    for (int i = 0; i < len; ++i)
      if (x[i] != 0) {
        lead = i;
        break;
      }
    if (lead >= 0 && x[lead] == 1) ++count;
  } while (next_tuple(x, q));
  return count;
}

}  // namespace

long long count_projective_space(int n, long long q) { return count_normalized(n + 1, q); }

long long count_p1xp1(long long q) {
  return count_normalized(2, q) * count_normalized(2, q);
}

long long count_blowup_p2(long long q) {
  // P = (p0:p1:p2), L = (l0:l1:l2) with sum l_i p_i = 0; O in L means l0 = 0.
  std::vector<long long> pt(3, 0);
  long long count = 0;
  do {
    int lead_p = -1;
    for (int i = 0; i < 3; ++i)
      if (pt[i] != 0) {
        lead_p = i;
        break;
      }
    if (lead_p < 0 || pt[lead_p] != 1) continue;
    std::vector<long long> ln(3, 0);
    do {
      if (ln[0] != 0) continue;  // line must pass through O
      int lead_l = -1;
      for (int i = 0; i < 3; ++i)
        if (ln[i] != 0) {
          lead_l = i;
          break;
        }
      if (lead_l < 0 || ln[lead_l] != 1) continue;
      if (mod(ln[0] * pt[0] + ln[1] * pt[1] + ln[2] * pt[2], q) == 0) ++count;
    } while (next_tuple(ln, q));
  } while (next_tuple(pt, q));
  return count;
}

}  // namespace oracles
