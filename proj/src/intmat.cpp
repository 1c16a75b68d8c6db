#include "intmat.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "errors.hpp"

namespace wmath {

i64 gcd_i64(i64 a, i64 b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

i64 lcm_i64(i64 a, i64 b) {
  if (a == 0 || b == 0) return 0;
  return std::llabs(a / gcd_i64(a, b) * b);
}

bool is_prime_i64(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<i64> prime_divisors(i64 n) {
  std::vector<i64> out;
  n = std::llabs(n);
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

IMat IMat::identity(int n) {
  IMat m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::string IMat::key() const {
  std::string s;
  s.reserve(a.size());
  for (i64 v : a) s.push_back((char)(int)v);
  return s;
}

IMat mul(const IMat& x, const IMat& y) {
  IMat r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      i64 v = x.at(i, k);
      if (!v) continue;
      for (int j = 0; j < x.n; ++j) r.at(i, j) += v * y.at(k, j);
    }
  return r;
}

IVec apply(const IMat& m, const IVec& v) {
  IVec r(m.n, 0);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r[i] += m.at(i, j) * v[j];
  return r;
}

IMat mat_pow(const IMat& m, i64 e) {
  IMat r = IMat::identity(m.n), b = m;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

i64 trace(const IMat& m) {
  i64 t = 0;
  for (int i = 0; i < m.n; ++i) t += m.at(i, i);
  return t;
}

Rat::Rat(i64 n, i64 d) {
  if (d == 0) throw invalid_input("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i64 g = gcd_i64(n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

Rat Rat::operator+(const Rat& o) const { return Rat(num * o.den + o.num * den, den * o.den); }
Rat Rat::operator-(const Rat& o) const { return Rat(num * o.den - o.num * den, den * o.den); }
Rat Rat::operator*(const Rat& o) const { return Rat(num * o.num, den * o.den); }
Rat Rat::operator/(const Rat& o) const {
  if (o.num == 0) throw invalid_input("rational division by zero");
  return Rat(num * o.den, den * o.num);
}

namespace {

// Gauss elimination on an augmented rational matrix; returns row echelon
// pivots.  rows x cols, in place.
std::vector<int> eliminate(RMat& m) {
  std::vector<int> pivot_cols;
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c].num == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rat inv = Rat(1) / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].num == 0) continue;
      Rat f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    pivot_cols.push_back((int)c);
    ++r;
  }
  return pivot_cols;
}

}  // namespace

bool solve_rational(const std::vector<IVec>& cols, const IVec& rhs, RVec& out) {
  size_t m = rhs.size();
  size_t k = cols.size();
  RMat aug(m, RVec(k + 1));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < k; ++j) aug[i][j] = Rat(cols[j][i]);
    aug[i][k] = Rat(rhs[i]);
  }
  std::vector<int> piv = eliminate(aug);
  // consistent iff no pivot in the rhs column
  for (int c : piv)
    if ((size_t)c == k) return false;
  out.assign(k, Rat(0));
  size_t r = 0;
  for (int c : piv) {
    out[(size_t)c] = aug[r][k];
    ++r;
  }
  return true;
}

int rank_of(const std::vector<IVec>& vectors) {
  if (vectors.empty()) return 0;
  size_t m = vectors[0].size();
  RMat rm(vectors.size(), RVec(m));
  for (size_t i = 0; i < vectors.size(); ++i)
    for (size_t j = 0; j < m; ++j) rm[i][j] = Rat(vectors[i][j]);
  return (int)eliminate(rm).size();
}

bool in_span(const std::vector<IVec>& vectors, const IVec& v) {
  if (vectors.empty()) {
    for (i64 x : v)
      if (x) return false;
    return true;
  }
  std::vector<IVec> with = vectors;
  with.push_back(v);
  return rank_of(with) == rank_of(vectors);
}

std::vector<i64> torsion_invariants(IMatD columns, int rows) {
  // Smith normal form by elementary operations; matrix entries stay small
  // at our scale.
  int cols = (int)columns.size();
  if (cols == 0) return {};
  // work on rows x cols matrix M with M[i][j] = columns[j][i]
  IMatD M(rows, IVec(cols, 0));
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) M[i][j] = columns[j][i];

  std::vector<i64> invariants;
  int top = 0, left = 0;
  while (top < rows && left < cols) {
    // find smallest nonzero entry in the remaining block
    int pi = -1, pj = -1;
    i64 best = 0;
    for (int i = top; i < rows; ++i)
      for (int j = left; j < cols; ++j) {
        i64 v = std::llabs(M[i][j]);
        if (v != 0 && (best == 0 || v < best)) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    std::swap(M[pi], M[top]);
    for (int i = 0; i < rows; ++i) std::swap(M[i][pj], M[i][left]);
    bool clean = true;
    i64 p = M[top][left];
    for (int i = top + 1; i < rows; ++i) {
      i64 q = M[i][left] / p;
      if (q)
        for (int j = left; j < cols; ++j) M[i][j] -= q * M[top][j];
      if (M[i][left]) clean = false;
    }
    for (int j = left + 1; j < cols; ++j) {
      i64 q = M[top][j] / p;
      if (q)
        for (int i = top; i < rows; ++i) M[i][j] -= q * M[i][left];
      if (M[top][j]) clean = false;
    }
    if (!clean) continue;  // repeat with a smaller pivot
    invariants.push_back(std::llabs(p));
    ++top;
    ++left;
  }
  // normalize divisibility chain
  for (size_t i = 0; i + 1 < invariants.size(); ++i)
    for (size_t j = i + 1; j < invariants.size(); ++j) {
      i64 a = invariants[i], b = invariants[j];
      i64 g = gcd_i64(a, b);
      invariants[i] = g;
      invariants[j] = (g == 0) ? 0 : a / g * b;
    }
  std::vector<i64> out;
  for (i64 d : invariants)
    if (d > 1) out.push_back(d);
  return out;
}

i64 mod_pow(i64 b, i64 e, i64 p) {
  i64 r = 1 % p;
  b %= p;
  if (b < 0) b += p;
  while (e > 0) {
    if (e & 1) r = (__int128)r * b % p;
    b = (__int128)b * b % p;
    e >>= 1;
  }
  return r;
}

i64 mod_inv(i64 x, i64 p) {
  x %= p;
  if (x < 0) x += p;
  if (x == 0) throw integrity_error("mod_inv of zero");
  return mod_pow(x, p - 2, p);
}

}  // namespace wmath
