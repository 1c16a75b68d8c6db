#pragma once

#include <map>
#include <string>
#include <vector>

#include "intmat.hpp"
#include "partition.hpp"

// Root systems of types A-D (rank-capped) and G2, stored in the basis of
// simple roots with an integral bilinear form, so non-simply-laced types
// need no irrational coordinates.

namespace rootsys {

using wmath::Family;
using wmath::i64;
using wmath::IMat;
using wmath::IMatD;
using wmath::IVec;
using wmath::RVec;

struct SimpleFactor {
  Family family;
  int rank;
  bool operator==(const SimpleFactor& o) const {
    return family == o.family && rank == o.rank;
  }
  bool operator<(const SimpleFactor& o) const {
    if (family != o.family) return (char)family < (char)o.family;
    return rank < o.rank;
  }
  std::string str() const;
};

// Isomorphism type of a root system, possibly a product.  Factors are kept
// canonically sorted; D2, D3, B1, C1 are normalized on construction so each
// type has a single spelling.
struct CartanType {
  std::vector<SimpleFactor> factors;

  CartanType() = default;
  explicit CartanType(std::vector<SimpleFactor> fs);
  static CartanType parse(const std::string& s, int rank_cap = 5);
  static CartanType simple(Family f, int rank) {
    return CartanType({{f, rank}});
  }
  std::string str() const;
  int rank() const;
  bool irreducible() const { return factors.size() == 1; }
  bool operator==(const CartanType& o) const { return factors == o.factors; }
  bool operator<(const CartanType& o) const { return factors < o.factors; }
};

i64 root_count(const SimpleFactor& f);
i64 weyl_order(const CartanType& t);
std::vector<i64> fundamental_degrees(const CartanType& t);
i64 center_order(const CartanType& t);  // connection index of the s.c. form

struct FactorInfo {
  Family family = Family::A;
  int rank = 0;
  std::vector<int> simple_idx;  // global indices, canonical diagram order
  IVec highest_root;
  std::vector<i64> marks;  // coefficients of the highest root
};

struct RootSystem {
  CartanType type;
  int rank = 0;
  IMatD form;    // (alpha_i, alpha_j)
  IMatD cartan;  // a[i][j] = 2(alpha_i, alpha_j)/(alpha_i, alpha_i)
  std::vector<IVec> roots;  // positives first (height, then lex), negatives mirrored
  int n_pos = 0;
  std::vector<FactorInfo> factors;
  std::vector<int> factor_of_simple;
  std::map<IVec, int> index_of;

  i64 inner(const IVec& x, const IVec& y) const;
  i64 norm(const IVec& x) const { return inner(x, x); }
  // 2(x,v)/(v,v)
  i64 cartan_int(const IVec& x, const IVec& v) const;
  IVec reflect(const IVec& x, const IVec& v) const;
  IMat reflection_matrix(const IVec& v) const;
  int root_index(const IVec& v) const;
  bool is_root(const IVec& v) const { return root_index(v) >= 0; }
  // index into [0, n_pos) regardless of sign; -1 if not a root
  int pos_index(const IVec& v) const;
  i64 height(const IVec& v) const;
  int factor_of_root(const IVec& v) const;
};

RootSystem build_root_system(const CartanType& t);

struct ExtendedFactor {
  Family family;
  int rank;
  std::vector<IVec> nodes;   // simple roots of the factor, then -theta
  std::vector<i64> marks;    // per node; affine node carries 1
  IMatD cartan_ints;         // pairwise 2(n_i,n_j)/(n_j,n_j) ... row i col j
};
std::vector<ExtendedFactor> extended_diagram(const RootSystem& rs);

// A base of parent roots recognized as a simple system, with factors in
// canonical order and each factor's roots arranged in Bourbaki order.
struct ClassifiedBase {
  CartanType type;
  std::vector<IVec> base;
  std::vector<std::pair<int, int>> factor_spans;  // [begin, end) into base
};
ClassifiedBase classify_base(const RootSystem& parent,
                             std::vector<IVec> base);
CartanType classify_subsystem(const RootSystem& parent,
                              const std::vector<IVec>& base);

// Coordinates of the canonical simple roots in the standard orthogonal
// basis (dimension rank+1 for type A, rank otherwise).
std::vector<RVec> standard_e_coords(Family f, int rank);

std::string debug_dump_json(const RootSystem& rs);

}  // namespace rootsys
