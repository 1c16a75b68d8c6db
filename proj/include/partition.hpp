#pragma once

#include <string>
#include <vector>

#include "intmat.hpp"

// Partition combinatorics: dominance, parity-constrained families,
// X-collapse, border strips, and the Murnaghan-Nakayama evaluations used to
// build character tables of symmetric and hyperoctahedral groups.

namespace wmath {

using Partition = std::vector<i64>;  // weakly decreasing, positive parts

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', G = 'G' };

i64 part_sum(const Partition& p);
Partition transpose(const Partition& p);
i64 n_invariant(const Partition& p);  // sum (i-1)*p_i, 0-based rows
std::string part_str(const Partition& p);
Partition parse_partition(const std::string& s);

// lambda <= mu in dominance order (equal sizes required)
bool dominance_leq(const Partition& lambda, const Partition& mu);

std::vector<Partition> partitions_of(i64 n);

// Parity constraints: B -> even parts with even multiplicity (size odd),
// C -> odd parts with even multiplicity (size even), D -> even parts with
// even multiplicity (size even).
bool valid_partition(const Partition& p, Family f, i64 size);
std::vector<Partition> valid_partitions(Family f, i64 size);
bool very_even(const Partition& p);  // all parts even (type D split classes)

// Dominance-maximal valid partition below lambda.  Throws invalid_input when
// no valid partition of that size exists.
Partition collapse(const Partition& lambda, Family f);

// All ways to remove a border strip of length k; `height` is the leg length
// (number of rows spanned minus one).
struct StripRemoval {
  Partition rest;
  int height;
};
std::vector<StripRemoval> remove_strips(const Partition& p, i64 k);

// chi_lambda evaluated at cycle type mu (both partitions of n).
i64 sn_char_value(const Partition& lambda, const Partition& mu);

// Irreducible character of the hyperoctahedral group Z2 wr S_n indexed by
// the bipartition (alpha; beta), evaluated at the class with positive cycle
// type mu and negative cycle type nu.  Convention: ((n); -) is trivial,
// (-: (1^n)) is the determinant character.
i64 hyperoct_char_value(const Partition& alpha, const Partition& beta,
                        const Partition& mu, const Partition& nu);

struct Bipartition {
  Partition alpha, beta;
  bool operator==(const Bipartition& o) const {
    return alpha == o.alpha && beta == o.beta;
  }
};
std::string bipart_str(const Bipartition& b);
std::vector<Bipartition> bipartitions_of(i64 n);

// b-invariant of the hyperoctahedral character (alpha; beta):
// 2 n(alpha) + 2 n(beta) + |beta|.  Used as a cross-check against the
// Molien-series computation.
i64 hyperoct_b(const Bipartition& bp);

}  // namespace wmath
