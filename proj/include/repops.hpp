#pragma once

#include <string>
#include <vector>

#include "weylgrp.hpp"

// Class-function algebra over Weyl groups: Frobenius induction through a
// class fusion map, b-invariants read from the Molien series of the
// reflection representation, and Lusztig-Spaltenstein truncated induction.

namespace repops {

using rootsys::CartanType;
using weylgrp::Embedding;
using weylgrp::WeylData;
using wmath::i64;

// Completed Weyl group data for a type, built once and cached.  Tables come
// back with b-invariants, fake degrees and final labels, and have passed
// orthogonality and the Poincare-polynomial identity.
const WeylData& weyl_data(const CartanType& t, i64 order_cap = 50000);

i64 inner_product(const WeylData& wd, const std::vector<i64>& f,
                  const std::vector<i64>& g);

// Frobenius induction of a sub-class-function (value form) to the parent.
std::vector<i64> induce(const Embedding& em, const std::vector<i64>& sub_values);

// Restriction of a parent class function along the fusion map.
std::vector<i64> restrict_through(const Embedding& em,
                                  const std::vector<i64>& parent_values);

// Decomposition into irreducible multiplicities; throws integrity_error if a
// multiplicity is negative or non-integral (callers always pass characters).
std::vector<i64> decompose_character(const WeylData& wd,
                                     const std::vector<i64>& values);

// Truncated induction: the unique constituent of Ind with the same
// b-invariant as the source character.  Throws integrity_error when
// uniqueness or the b-match fails (that always signals a table/fusion bug).
int j_induce(const Embedding& em, int sub_char_idx);

bool j_transitivity_check(const Embedding& sub_to_parent,
                          const Embedding& sub_to_mid,
                          const Embedding& mid_to_parent, int sub_char_idx);

// Molien series multiplicities of one irreducible in the symmetric algebra
// of the reflection representation, up to degree `limit` inclusive.
std::vector<i64> molien_multiplicities(const WeylData& wd, int char_idx,
                                       int limit);

// index of the unique b = 1 irreducible of an irreducible type
int reflection_char(const WeylData& wd);

// internal entry point used by weyl_data; exposed for targeted tests
void complete_table(WeylData& wd);

}  // namespace repops
