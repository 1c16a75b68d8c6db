#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Exact small-scale integer linear algebra.  Everything here works on
// matrices of rank <= ~10 with entries that stay tiny, so the emphasis is
// on exactness and clarity, not speed.

namespace wmath {

using i64 = long long;
using IVec = std::vector<i64>;
using IMatD = std::vector<IVec>;  // dense row-major, possibly non-square

i64 gcd_i64(i64 a, i64 b);
i64 lcm_i64(i64 a, i64 b);
bool is_prime_i64(i64 n);
std::vector<i64> prime_divisors(i64 n);

// Square integer matrix with value semantics; used for Weyl group elements.
struct IMat {
  int n = 0;
  IVec a;  // n*n row-major

  IMat() = default;
  explicit IMat(int n_) : n(n_), a((size_t)n_ * n_, 0) {}
  i64& at(int i, int j) { return a[(size_t)i * n + j]; }
  i64 at(int i, int j) const { return a[(size_t)i * n + j]; }
  static IMat identity(int n);
  bool operator==(const IMat& o) const { return n == o.n && a == o.a; }
  std::string key() const;  // packed bytes for hashing
};

IMat mul(const IMat& x, const IMat& y);
IVec apply(const IMat& m, const IVec& v);
IMat mat_pow(const IMat& m, i64 e);
i64 trace(const IMat& m);

// Exact rational scalar (small denominators only).
struct Rat {
  i64 num = 0, den = 1;
  Rat() = default;
  Rat(i64 n) : num(n), den(1) {}
  Rat(i64 n, i64 d);
  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool is_integer() const { return den == 1; }
};

using RVec = std::vector<Rat>;
using RMat = std::vector<RVec>;

// Solve A x = b exactly over Q; A given column-wise as vectors of length m.
// Returns false when inconsistent.  Requires the columns to be linearly
// independent.
bool solve_rational(const std::vector<IVec>& cols, const IVec& rhs, RVec& out);

int rank_of(const std::vector<IVec>& vectors);

// True iff v lies in the Q-span of the given vectors.
bool in_span(const std::vector<IVec>& vectors, const IVec& v);

// Nontrivial invariant factors (d_i > 1) of the integer matrix (columns are
// generators of a sublattice of Z^rows).  The product is the torsion order
// of the quotient.
std::vector<i64> torsion_invariants(IMatD columns, int rows);

// --- modular arithmetic helpers (Dixon's method) ---
i64 mod_pow(i64 b, i64 e, i64 p);
i64 mod_inv(i64 x, i64 p);

}  // namespace wmath
