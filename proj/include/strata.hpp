#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "repops.hpp"
#include "rootsys.hpp"
#include "unipotent.hpp"
#include "weylgrp.hpp"

// Jordan classes, sheets and Lusztig strata of a connected reductive group,
// computed at the level of conjugacy invariants: pseudo-Levi root subsystems
// (Borel-de Siebenthal), unipotent classes of the pseudo-Levis, the map phi
// sending a class datum to the truncated induction of its Springer
// character, and the regular-closure degeneration order.

namespace strata {

using rootsys::CartanType;
using rootsys::RootSystem;
using weylgrp::WeylData;
using wmath::i64;
using wmath::IVec;

struct GroupSpec {
  CartanType type;
  int total_rank = 0;   // >= semisimple rank; the difference is a central torus
  i64 characteristic = 0;  // 0 or a prime
  i64 order_cap = 50000;
  int rank_cap = 5;

  static GroupSpec parse(const std::string& type_str, int total_rank = -1,
                         i64 characteristic = 0, i64 order_cap = 50000,
                         int rank_cap = 5);
};

using Mask = std::uint64_t;

// Stabilizer-induced symmetry of a pseudo-Levi: a permutation of its factors
// plus, for self-mapped D factors hit by an outer automorphism, a swap of
// the very-even class pair.
struct FactorAction {
  std::vector<int> perm;       // factor f of L maps to perm[f]
  std::vector<char> flip_ve;   // flip very-even flag of factor f
  bool operator<(const FactorAction& o) const {
    if (perm != o.perm) return perm < o.perm;
    return flip_ve < o.flip_ve;
  }
};

struct PseudoLevi {
  int id = -1;
  Mask mask = 0;  // canonical representative (positive-root bitset)
  rootsys::ClassifiedBase base;
  CartanType type;
  const WeylData* wd = nullptr;
  weylgrp::Embedding emb;  // W_s into W
  bool is_levi = false;
  int central_torus_rank = 0;
  std::set<i64> excluded_primes;
  std::vector<i64> pi0_invariants;  // torsion of P / Z Phi_L (coset refinement)
  std::vector<Mask> factor_masks;
  std::vector<const unipotent::UnipotentTable*> factor_tables;
  std::vector<FactorAction> actions;
  i64 n_roots() const;
};

// An ordered Levi pair: L (a class representative) sitting inside the
// concrete subsystem `target_mask`, whose class is `target`.
struct LeviPair {
  int levi = -1;
  Mask target_mask = 0;
  int target = -1;
  int transport = 0;  // W element mapping target_mask onto the target rep
};

struct Context {
  GroupSpec spec;
  const WeylData* G = nullptr;
  std::vector<std::vector<int>> pos_act;
  std::vector<PseudoLevi> levis;
  int full_levi = -1;  // id of the class of the full system
  std::map<Mask, std::pair<int, int>> registry;  // mask -> (class id, trans)
  std::vector<std::vector<LeviPair>> pairs;      // per levi id

  const PseudoLevi& levi_of_mask(Mask m) const;
};

Context build_context(const GroupSpec& spec);

// A Jordan class datum: pseudo-Levi class, unipotent class tuple (canonical
// under the stabilizer action), and a central-translate multiplicity for the
// L = G case.
struct Atom {
  int id = -1;
  int levi = -1;
  std::vector<int> tuple;  // per factor: row in the factor's unipotent table
  i64 multiplicity = 1;
  i64 dim_class = 0;  // unipotent class dimension inside L
  i64 orbit_dim = 0;  // dim of the G-conjugacy classes in the datum
  int phi = -1;       // irreducible of W(G)
  std::string phi_label;
  std::string tuple_label;
};

struct Sheet {
  int id = -1;
  int generator = -1;
  std::vector<int> members;
  i64 orbit_dim = 0;
  i64 multiplicity = 1;
  bool ambiguous_pair = false;
};

struct Stratum {
  int id = -1;
  int phi = -1;
  std::string phi_label;
  i64 orbit_dim = 0;
  std::vector<int> atoms;
  std::vector<int> sheets;
  i64 components = 0;
  bool ambiguous_pair = false;
  bool coset_refinement_flag = false;
};

struct TheoremReport {
  bool phi_constant_on_closures = false;
  bool dim_constant_on_closures = false;
  bool strata_are_unions_of_sheets = false;
  bool components_are_the_sheets = false;
  std::vector<std::string> violations;
  bool ok() const {
    return phi_constant_on_closures && dim_constant_on_closures &&
           strata_are_unions_of_sheets && components_are_the_sheets;
  }
};

struct Decomposition {
  const Context* ctx = nullptr;
  std::vector<Atom> atoms;
  std::vector<std::vector<int>> closures;      // per atom, sorted member ids
  std::vector<bool> closure_ambiguous;
  std::vector<Sheet> sheets;
  std::vector<Stratum> strata;
  std::vector<int> excluded_levis;  // dropped at this characteristic
  TheoremReport report;

  i64 jordan_datum_count() const;  // atoms counted with multiplicity
  i64 sheet_count() const;         // sheets counted with multiplicity
};

Decomposition decompose(const Context& ctx);

// The induction-compatibility and transitivity suite over every Levi pair:
// springer(Ind O) = j(springer O) at the pair level, and the two-step
// j-induction to W agrees with the direct one, for every character.
std::vector<std::string> verify_induction_compatibility(const Context& ctx);

TheoremReport verify_theorem(const Context& ctx);

std::string report_json(const Decomposition& d);
std::string report_markdown(const Decomposition& d);

}  // namespace strata
