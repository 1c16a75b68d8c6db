#pragma once

#include <optional>
#include <string>
#include <vector>

#include "partition.hpp"
#include "rootsys.hpp"

// Unipotent-class combinatorics per simple type: partition parameterization
// with parity constraints, class dimensions, X-collapse, the Springer
// correspondence for trivial local systems, and the partition rule for
// Lusztig-Spaltenstein induction from Levi subgroups.
//
// Springer data for B/C/D ships as data files generated by the symbol
// algorithm in this module; G2 ships curated.  Every file is re-validated at
// load against the b-identity, injectivity and the anchor classes.

namespace unipotent {

using rootsys::CartanType;
using wmath::Family;
using wmath::i64;
using wmath::Partition;

struct UnipotentClass {
  std::string label;  // partition string, or a curated name for G2
  Partition lambda;   // empty for G2
  int very_even = 0;  // 0 none, 1 = I, 2 = II (type D split classes)
  i64 dim = 0;        // conjugacy class dimension in the simple group
  std::string springer;  // label in Irr(W) of the same type
};

struct UnipotentTable {
  Family family;
  int rank = 0;
  std::string provenance;
  std::vector<UnipotentClass> classes;

  int index_of(const std::string& label, int very_even = 0) const;
  const UnipotentClass& by_label(const std::string& label,
                                 int very_even = 0) const;
};

// partition size units for one simple factor: A_n -> n+1, B_n -> 2n+1,
// C_n/D_n -> 2n
i64 partition_size(Family f, int rank);

i64 class_dim(Family f, int rank, const Partition& lambda);

// group dimension of the simple factor (roots + rank)
i64 group_dim(Family f, int rank);

// Cached access; computes type A, loads + validates data files otherwise.
const UnipotentTable& unipotent_table(Family f, int rank);

// Symbol-algorithm generator behind the same validation gate as the files.
UnipotentTable generate_table(Family f, int rank);

// location of the curated data files (WEYL_STRATA_DATA overrides)
std::string data_dir();

// re-run the full validation suite on a table (throws integrity_error)
void validate_table(const UnipotentTable& t);

wmath::Bipartition springer_symbol(Family f, const Partition& lambda);

// --- Lusztig-Spaltenstein induction, combinatorial side ---

// Levi of one irreducible classical target factor, in partition-size units.
struct InductionDatum {
  Family target_family = Family::A;
  int target_rank = 0;
  std::vector<Partition> gl_parts;  // class of GL(a_i) as a partition of a_i
  Partition core;                   // class of the same-family core; may be empty
};

struct InducedClass {
  Partition lambda;
  bool very_even_ambiguous = false;
};

InducedClass ls_induce(const InductionDatum& d);

// conversions of core classes when the abstract factor type hides the
// ambient family (rank-1 and low-rank D cores)
Partition b1_core_partition(const Partition& a1_class);            // |.| = 3
Partition d2_core_partition(const Partition& first,
                            const Partition& second, int& very_even_flag);
Partition d3_core_partition(const Partition& a3_class);            // |.| = 6
Partition a3_class_from_d3_core(const Partition& d3_part);

bool dominance_leq(const Partition& a, const Partition& b);

}  // namespace unipotent
