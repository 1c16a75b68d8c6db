#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "partition.hpp"
#include "rootsys.hpp"

// Finite Weyl groups realized as integer matrices acting on the simple-root
// basis, with exact rational character tables.  Tables of types A and B/C
// are built from the Murnaghan-Nakayama rule and its bipartition analogue;
// types D and G2 go through the Dixon-Burnside eigenvector method modulo a
// prime and exact lifting.  Every table is validated against both
// orthogonality relations before it is returned.

namespace weylgrp {

using rootsys::CartanType;
using rootsys::RootSystem;
using wmath::Bipartition;
using wmath::Family;
using wmath::i64;
using wmath::IMat;
using wmath::Partition;

struct WeylGroup {
  int dim = 0;
  std::vector<IMat> elements;  // BFS order from the identity
  std::vector<int> generators;
  std::unordered_map<std::string, int> index;
  std::vector<int> inv;  // element index -> inverse index

  i64 order() const { return (i64)elements.size(); }
  int index_of(const IMat& m) const;
  int mul(int a, int b) const;
  i64 element_order(int a) const;

  static WeylGroup enumerate(int dim, const std::vector<IMat>& gens, i64 cap);
};

// Enumerate W from the simple reflections of rs; checks the classical order
// formula.  `cap` bounds the order (resource_error beyond it).
WeylGroup enumerate_group(const RootSystem& rs, i64 cap = 50000);

struct ConjClasses {
  int num = 0;
  std::vector<int> rep;       // least element index per class
  std::vector<int> class_of;  // element -> class
  std::vector<i64> size;
  std::vector<int> inv_class;
};
ConjClasses conjugacy_classes(const WeylGroup& W);

struct CharTable {
  std::vector<std::string> labels;
  std::vector<std::vector<i64>> values;  // [irreducible][class]
  std::vector<i64> dims;
  std::vector<i64> b;  // b-invariants, filled by repops
  std::vector<std::vector<i64>> fake_degrees;  // filled by repops
  int trivial = -1;
  int sign = -1;

  int n_chars() const { return (int)labels.size(); }
  int index_of_label(const std::string& l) const;
};

// Cycle type of a permutation matrix written on the A_n simple-root basis
// (partition of n+1, recovered from the characteristic polynomial).
Partition a_cycle_type(const IMat& m);

// Signed cycle type (positive cycles; negative cycles) of an element of
// W(B_n)/W(C_n)/W(D_n) given on the simple-root basis of that type.
std::pair<Partition, Partition> signed_cycle_type(const IMat& m, Family fam,
                                                  int rank);

// Character table of one irreducible factor.  D and G2 rows come out of
// Dixon's method in a deterministic but provisional order with empty labels;
// repops assigns phi{dim}_{b} names once b-invariants exist.
CharTable factor_char_table(const RootSystem& rs, const WeylGroup& W,
                            const ConjClasses& cc);

void check_orthogonality(const WeylGroup& W, const ConjClasses& cc,
                         const CharTable& t);

// Everything the rest of the program needs to know about one Weyl group.
struct WeylData {
  CartanType type;
  RootSystem rs;
  WeylGroup W;
  ConjClasses cc;
  CharTable table;
  std::vector<i64> degrees;
  // for product types: factor class indices per class of the product
  std::vector<std::vector<int>> class_tuple;
  std::vector<const WeylData*> factor_data;

  int n_pos() const { return rs.n_pos; }
};

// A reflection subgroup of `parent` generated by the reflections of
// `base_in_parent`, identified with the abstract group `sub`.
struct Embedding {
  const WeylData* sub = nullptr;
  const WeylData* parent = nullptr;
  std::vector<int> to_parent;  // sub element index -> parent element index
  std::vector<int> fusion;     // sub class -> parent class
};
Embedding embed_subgroup(const WeylData& sub,
                         const std::vector<wmath::IVec>& base_in_parent,
                         const WeylData& parent);

// per element: position of the image of each positive root (sign folded)
std::vector<std::vector<int>> pos_root_action(const RootSystem& rs,
                                              const WeylGroup& W);

// Hyperoctahedral character value on a class of a type-D group (used to
// restrict B_n characters to W(D_n)).
i64 bn_char_value_on(const RootSystem& d_rs, const WeylGroup& W, int elem_idx,
                     const Bipartition& bp);

std::string char_table_json(const WeylData& wd);

}  // namespace weylgrp
