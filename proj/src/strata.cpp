#include "strata.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "errors.hpp"
#include "json.hpp"

namespace strata {

using rootsys::ClassifiedBase;
using rootsys::root_count;
using unipotent::UnipotentTable;
using weylgrp::Embedding;
using wmath::Family;
using wmath::IMat;
using wmath::Partition;
using wmath::Rat;
using wmath::RVec;

GroupSpec GroupSpec::parse(const std::string& type_str, int total_rank,
                           i64 characteristic, i64 order_cap, int rank_cap) {
  GroupSpec s;
  s.type = CartanType::parse(type_str, rank_cap);
  s.rank_cap = rank_cap;
  s.total_rank = total_rank < 0 ? s.type.rank() : total_rank;
  if (s.total_rank < s.type.rank())
    throw config_error("total rank below the semisimple rank");
  if (characteristic != 0 && !wmath::is_prime_i64(characteristic))
    throw config_error("characteristic must be 0 or a prime");
  s.characteristic = characteristic;
  if (order_cap <= 0) throw config_error("order cap must be positive");
  s.order_cap = order_cap;
  return s;
}

i64 PseudoLevi::n_roots() const {
  i64 c = 0;
  for (Mask m = mask; m; m &= m - 1) ++c;
  return 2 * c;
}

const PseudoLevi& Context::levi_of_mask(Mask m) const {
  auto it = registry.find(m);
  if (it == registry.end()) throw integrity_error("mask not registered");
  return levis[it->second.first];
}

// ---------------------------------------------------------------------------
// mask utilities

namespace {

Mask act_mask(const std::vector<int>& act_row, Mask m) {
  Mask out = 0;
  for (Mask rest = m; rest; rest &= rest - 1) {
    int p = std::countr_zero(rest);
    out |= (Mask)1 << act_row[p];
  }
  return out;
}

std::vector<IVec> mask_roots(const RootSystem& rs, Mask m) {
  std::vector<IVec> out;
  for (Mask rest = m; rest; rest &= rest - 1)
    out.push_back(rs.roots[std::countr_zero(rest)]);
  return out;
}

Mask closure_mask(const RootSystem& rs, std::vector<IVec> gens) {
  std::set<IVec> roots(gens.begin(), gens.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<IVec> cur(roots.begin(), roots.end());
    for (auto& v : cur)
      for (auto& w : cur) {
        IVec img = rs.reflect(w, v);
        if (roots.insert(img).second) grew = true;
      }
  }
  Mask m = 0;
  for (auto& v : roots) {
    int p = rs.pos_index(v);
    if (p < 0) throw integrity_error("closure left the root system");
    m |= (Mask)1 << p;
  }
  return m;
}

// indecomposable elements of the positive system of the subsystem
std::vector<IVec> base_of_mask(const RootSystem& rs, Mask m) {
  std::vector<IVec> pos = mask_roots(rs, m);
  std::set<IVec> posset(pos.begin(), pos.end());
  std::vector<IVec> base;
  for (auto& r : pos) {
    bool decomposable = false;
    for (auto& a : pos) {
      IVec diff(r.size());
      for (size_t i = 0; i < r.size(); ++i) diff[i] = r[i] - a[i];
      if (diff == IVec(r.size(), 0)) continue;
      if (posset.count(diff)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) base.push_back(r);
  }
  return base;
}

i64 pprime_part(i64 n, i64 p) {
  if (p <= 0) return n;
  while (n % p == 0) n /= p;
  return n;
}

std::string family_str(Family f) { return std::string(1, (char)f); }

}  // namespace

// ---------------------------------------------------------------------------
// context construction

namespace {

struct Builder {
  const GroupSpec& spec;
  Context& ctx;
  const WeylData& G;

  // registry bookkeeping during enumeration
  std::vector<Mask> canon_of_class;
  std::vector<unsigned> excl;  // bitmask over prime_universe
  std::vector<i64> prime_universe{2, 3};
  std::map<Mask, std::pair<int, int>> reg;

  explicit Builder(const GroupSpec& s, Context& c)
      : spec(s), ctx(c), G(*c.G) {}

  unsigned primes_to_bits(const std::vector<i64>& ps) {
    unsigned b = 0;
    for (i64 p : ps) {
      auto it = std::find(prime_universe.begin(), prime_universe.end(), p);
      if (it == prime_universe.end()) {
        prime_universe.push_back(p);
        b |= 1u << (prime_universe.size() - 1);
      } else {
        b |= 1u << (it - prime_universe.begin());
      }
    }
    return b;
  }

  int register_orbit(Mask m) {
    auto it = reg.find(m);
    if (it != reg.end()) return it->second.first;
    // orbit with transports from the anchor
    std::map<Mask, int> trans;
    trans[m] = 0;
    std::deque<Mask> work{m};
    while (!work.empty()) {
      Mask cur = work.front();
      work.pop_front();
      for (int g : G.W.generators) {
        Mask img = act_mask(ctx.pos_act[g], cur);
        if (!trans.count(img)) {
          trans[img] = G.W.mul(g, trans[cur]);
          work.push_back(img);
        }
      }
    }
    Mask canon = trans.begin()->first;  // std::map: least mask
    int wc = trans[canon];              // canon = act(wc)(m)
    int id = (int)canon_of_class.size();
    canon_of_class.push_back(canon);
    excl.push_back(~0u);
    for (auto& [mask, w] : trans) {
      // mask = act(w)(m), canon = act(wc)(m)  =>  mask = act(w wc^{-1})(canon)
      int rel = G.W.mul(w, G.W.inv[wc]);
      reg[mask] = {id, rel};
    }
    return id;
  }

  struct Step {
    int child;
    unsigned primes;
  };

  std::vector<Step> steps_of(Mask canon) {
    std::vector<Step> out;
    std::vector<IVec> base = base_of_mask(G.rs, canon);
    if (base.empty()) return out;
    int n = (int)base.size();
    // factor partition by orthogonality
    std::vector<int> factor(n, -1);
    int nf = 0;
    for (int s = 0; s < n; ++s) {
      if (factor[s] >= 0) continue;
      factor[s] = nf;
      std::deque<int> work{s};
      while (!work.empty()) {
        int u = work.front();
        work.pop_front();
        for (int v = 0; v < n; ++v)
          if (factor[v] < 0 && G.rs.inner(base[u], base[v]) != 0) {
            factor[v] = nf;
            work.push_back(v);
          }
      }
      ++nf;
    }
    // expansions of all subsystem roots to find each factor's highest root
    std::vector<IVec> theta(nf);
    std::vector<i64> theta_h(nf, -1);
    std::vector<std::vector<i64>> theta_coeff(nf);
    for (auto& r : mask_roots(G.rs, canon)) {
      RVec coeff;
      if (!wmath::solve_rational(base, r, coeff))
        throw integrity_error("subsystem root outside base span");
      std::vector<i64> ic(n);
      i64 h = 0;
      int f = -1;
      for (int i = 0; i < n; ++i) {
        if (!coeff[i].is_integer())
          throw integrity_error("non-integral root expansion");
        ic[i] = coeff[i].num;
        h += ic[i];
        if (ic[i] != 0) f = factor[i];
      }
      if (f < 0) continue;
      if (h > theta_h[f]) {
        theta_h[f] = h;
        theta[f] = r;
        theta_coeff[f] = ic;
      }
    }
    for (int f = 0; f < nf; ++f) {
      std::vector<int> nodes;  // base indices of this factor
      for (int i = 0; i < n; ++i)
        if (factor[i] == f) nodes.push_back(i);
      int k = (int)nodes.size();
      // extended nodes: the k base roots plus -theta (mark 1)
      std::vector<IVec> ext;
      std::vector<i64> marks;
      for (int i : nodes) {
        ext.push_back(base[i]);
        marks.push_back(theta_coeff[f][i]);
      }
      IVec neg(theta[f].size());
      for (size_t i = 0; i < neg.size(); ++i) neg[i] = -theta[f][i];
      ext.push_back(neg);
      marks.push_back(1);
      int total = k + 1;
      for (unsigned subset = 0; subset < (1u << total) - 1; ++subset) {
        std::vector<IVec> gens;
        i64 removed_gcd = 0;
        for (int i = 0; i < total; ++i) {
          if (subset & (1u << i))
            gens.push_back(ext[i]);
          else
            removed_gcd = wmath::gcd_i64(removed_gcd, marks[i]);
        }
        for (int i = 0; i < n; ++i)
          if (factor[i] != f) gens.push_back(base[i]);
        Mask child = gens.empty() ? 0 : closure_mask(G.rs, gens);
        if (child == canon) continue;
        unsigned primes = primes_to_bits(wmath::prime_divisors(removed_gcd));
        out.push_back({register_orbit(child), primes});
      }
    }
    return out;
  }

  void enumerate() {
    Mask full = G.rs.n_pos ? (((Mask)1 << G.rs.n_pos) - 1) : 0;
    int root_id = register_orbit(full);
    excl[root_id] = 0;
    std::vector<std::vector<Step>> edges;
    std::vector<char> expanded;
    // expand every class and relax the exclusion sets to a fixpoint; the
    // per-path prime sets distribute over the intersection, so the fixpoint
    // is the intersection over all realization paths
    bool changed = true;
    while (changed) {
      changed = false;
      size_t n = canon_of_class.size();
      edges.resize(n);
      expanded.resize(n, 0);
      for (size_t id = 0; id < n; ++id) {
        if (expanded[id]) continue;
        edges[id] = steps_of(canon_of_class[id]);
        expanded[id] = 1;
        changed = true;
        n = canon_of_class.size();
        edges.resize(n);
        expanded.resize(n, 0);
      }
      for (size_t id = 0; id < canon_of_class.size(); ++id) {
        if (excl[id] == ~0u) continue;
        for (auto& st : edges[id]) {
          unsigned merged = excl[st.child] & (excl[id] | st.primes);
          if (merged != excl[st.child]) {
            excl[st.child] = merged;
            changed = true;
          }
        }
      }
    }
    for (unsigned e : excl)
      if (e == ~0u) throw integrity_error("unreachable subsystem class");
  }
};

std::vector<FactorAction> stabilizer_actions(const Context& ctx,
                                             const PseudoLevi& L) {
  const WeylData& G = *ctx.G;
  std::set<FactorAction> seen;
  int nf = (int)L.base.factor_spans.size();
  const WeylData* d4 = nullptr;
  for (auto& f : L.type.factors)
    if (f.family == Family::D && f.rank == 4)
      d4 = &repops::weyl_data(CartanType::simple(Family::D, 4));
  for (int w = 0; w < (int)G.W.order(); ++w) {
    if (act_mask(ctx.pos_act[w], L.mask) != L.mask) continue;
    FactorAction a;
    a.perm.assign(nf, -1);
    a.flip_ve.assign(nf, 0);
    bool ok = true;
    for (int f = 0; f < nf && ok; ++f) {
      IVec img = wmath::apply(G.W.elements[w], L.base.base[L.base.factor_spans[f].first]);
      int p = G.rs.pos_index(img);
      if (p < 0) throw integrity_error("stabilizer does not permute roots");
      int dest = -1;
      for (int f2 = 0; f2 < nf; ++f2)
        if (L.factor_masks[f2] & ((Mask)1 << p)) {
          dest = f2;
          break;
        }
      if (dest < 0) throw integrity_error("factor image not found");
      a.perm[f] = dest;
      auto tf = L.type.factors[f], td = L.type.factors[dest];
      if (!(tf == td)) throw integrity_error("stabilizer mixes factor types");
      if (tf.family == Family::D && tf.rank == 4) {
        if (dest != f)
          throw integrity_error("unexpected permutation of D4 factors");
        // inner or outer on this factor?
        auto [b0, e0] = L.base.factor_spans[f];
        std::vector<IVec> fbase(L.base.base.begin() + b0,
                                L.base.base.begin() + e0);
        IMat m(e0 - b0);
        for (int j = 0; j < e0 - b0; ++j) {
          IVec imgj = wmath::apply(G.W.elements[w], fbase[j]);
          RVec coeff;
          if (!wmath::solve_rational(fbase, imgj, coeff))
            throw integrity_error("stabilizer image outside factor span");
          for (int i = 0; i < e0 - b0; ++i) {
            if (!coeff[i].is_integer())
              throw integrity_error("non-integral stabilizer action");
            m.at(i, j) = coeff[i].num;
          }
        }
        if (d4->W.index_of(m) < 0) a.flip_ve[f] = 1;
      }
    }
    if (ok) seen.insert(a);
  }
  return std::vector<FactorAction>(seen.begin(), seen.end());
}

}  // namespace

Context build_context(const GroupSpec& spec) {
  Context ctx;
  ctx.spec = spec;
  ctx.G = &repops::weyl_data(spec.type, spec.order_cap);
  const WeylData& G = *ctx.G;
  if (G.rs.n_pos > 62) throw resource_error("too many positive roots");
  ctx.pos_act = weylgrp::pos_root_action(G.rs, G.W);

  Builder b(spec, ctx);
  b.enumerate();

  // deterministic class order: root count descending, then type, then mask
  int ncls = (int)b.canon_of_class.size();
  std::vector<int> order(ncls);
  std::iota(order.begin(), order.end(), 0);
  std::vector<ClassifiedBase> bases(ncls);
  for (int i = 0; i < ncls; ++i)
    bases[i] = rootsys::classify_base(G.rs, base_of_mask(G.rs, b.canon_of_class[i]));
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    i64 rx = std::popcount(b.canon_of_class[x]);
    i64 ry = std::popcount(b.canon_of_class[y]);
    if (rx != ry) return rx > ry;
    std::string sx = bases[x].type.str(), sy = bases[y].type.str();
    if (sx != sy) return sx < sy;
    return b.canon_of_class[x] < b.canon_of_class[y];
  });
  std::vector<int> newid(ncls);
  for (int i = 0; i < ncls; ++i) newid[order[i]] = i;

  // levi canonical masks: subsystems generated by subsets of simple roots
  std::set<Mask> levi_canons;
  for (unsigned subset = 0; subset < (1u << G.rs.rank); ++subset) {
    std::vector<IVec> gens;
    for (int i = 0; i < G.rs.rank; ++i)
      if (subset & (1u << i)) {
        IVec e(G.rs.rank, 0);
        e[i] = 1;
        gens.push_back(e);
      }
    Mask m = gens.empty() ? 0 : closure_mask(G.rs, gens);
    auto it = b.reg.find(m);
    if (it == b.reg.end())
      throw integrity_error("Levi subsystem missing from the enumeration");
    levi_canons.insert(b.canon_of_class[it->second.first]);
  }

  ctx.levis.resize(ncls);
  for (int i = 0; i < ncls; ++i) {
    PseudoLevi& L = ctx.levis[newid[i]];
    L.id = newid[i];
    L.mask = b.canon_of_class[i];
    L.base = bases[i];
    L.type = L.base.type;
    L.wd = &repops::weyl_data(L.type, spec.order_cap);
    L.emb = weylgrp::embed_subgroup(*L.wd, L.base.base, G);
    L.is_levi = levi_canons.count(L.mask) > 0;
    L.central_torus_rank = spec.total_rank - L.type.rank();
    for (size_t u = 0; u < b.prime_universe.size(); ++u)
      if (b.excl[i] & (1u << u)) L.excluded_primes.insert(b.prime_universe[u]);
    // torsion of the weight lattice modulo the span of Phi_L
    {
      wmath::IMatD cols;
      for (auto& v : L.base.base) {
        IVec u(G.rs.rank, 0);
        for (int r = 0; r < G.rs.rank; ++r)
          for (int c = 0; c < G.rs.rank; ++c) u[r] += G.rs.cartan[r][c] * v[c];
        cols.push_back(u);
      }
      L.pi0_invariants = wmath::torsion_invariants(cols, G.rs.rank);
    }
    for (auto& span : L.base.factor_spans) {
      std::vector<IVec> fbase(L.base.base.begin() + span.first,
                              L.base.base.begin() + span.second);
      L.factor_masks.push_back(closure_mask(G.rs, fbase));
    }
    for (auto& f : L.type.factors)
      L.factor_tables.push_back(&unipotent::unipotent_table(f.family, f.rank));
    if (L.mask == (G.rs.n_pos ? ((Mask)1 << G.rs.n_pos) - 1 : 0))
      ctx.full_levi = L.id;
  }
  for (auto& [mask, info] : b.reg)
    ctx.registry[mask] = {newid[info.first], info.second};
  for (auto& L : ctx.levis) L.actions = stabilizer_actions(ctx, L);
  if (ctx.full_levi < 0) throw integrity_error("full system class missing");

  // Levi pairs
  ctx.pairs.resize(ncls);
  for (auto& L : ctx.levis) {
    Mask span_mask = 0;
    for (int p = 0; p < G.rs.n_pos; ++p)
      if (wmath::in_span(L.base.base, G.rs.roots[p])) span_mask |= (Mask)1 << p;
    // stabilizer elements of the mask for dedup
    std::vector<int> stab;
    for (int w = 0; w < (int)G.W.order(); ++w)
      if (act_mask(ctx.pos_act[w], L.mask) == L.mask) stab.push_back(w);
    for (auto& [mask, info] : ctx.registry) {
      if ((mask & L.mask) != L.mask) continue;
      if ((mask & span_mask) != L.mask) continue;
      Mask least = mask;
      for (int w : stab) least = std::min(least, act_mask(ctx.pos_act[w], mask));
      if (least != mask) continue;
      LeviPair pr;
      pr.levi = L.id;
      pr.target_mask = mask;
      pr.target = info.first;
      pr.transport = G.W.inv[info.second];
      ctx.pairs[L.id].push_back(pr);
    }
  }
  return ctx;
}

// ---------------------------------------------------------------------------
// induction along a Levi pair

namespace {

struct FactorResult {
  std::string label;
  int very_even = 0;       // resolved flag
  bool ambiguous = false;  // very-even result whose I/II depends on geometry
  i64 dim = 0;
};

// integer e-coordinates of a root of the factor spanned by `fbase`
IVec e_coords(const RootSystem& rs, const std::vector<IVec>& fbase,
              const std::vector<RVec>& std_e, const IVec& root, int dim) {
  RVec coeff;
  if (!wmath::solve_rational(fbase, root, coeff))
    throw integrity_error("root outside factor span");
  RVec acc(dim, Rat(0));
  for (size_t i = 0; i < coeff.size(); ++i) {
    if (coeff[i].num == 0) continue;
    for (int j = 0; j < dim; ++j)
      acc[j] = acc[j] + coeff[i] * std_e[i][j];
  }
  IVec out(dim);
  for (int j = 0; j < dim; ++j) {
    if (!acc[j].is_integer())
      throw integrity_error("non-integral orthogonal coordinates");
    out[j] = acc[j].num;
  }
  return out;
}

struct PairGeometry {
  const Context* ctx;
  const PseudoLevi* L;
  const LeviPair* pair;
  ClassifiedBase target_base;           // of the concrete target mask
  std::vector<Mask> target_factor_masks;
  std::vector<int> rep_factor_of;       // target factor -> factor of the rep
  std::vector<std::vector<int>> lfactors_in;  // per target factor: L factors

  PairGeometry(const Context& c, const LeviPair& p)
      : ctx(&c), L(&c.levis[p.levi]), pair(&p) {
    const WeylData& G = *c.G;
    target_base = rootsys::classify_base(G.rs, base_of_mask(G.rs, p.target_mask));
    int nf = (int)target_base.factor_spans.size();
    for (auto& span : target_base.factor_spans) {
      std::vector<IVec> fbase(target_base.base.begin() + span.first,
                              target_base.base.begin() + span.second);
      target_factor_masks.push_back(closure_mask(G.rs, fbase));
    }
    const PseudoLevi& R = c.levis[p.target];
    rep_factor_of.assign(nf, -1);
    for (int f = 0; f < nf; ++f) {
      IVec img = wmath::apply(G.W.elements[p.transport],
                              target_base.base[target_base.factor_spans[f].first]);
      int pidx = G.rs.pos_index(img);
      if (pidx < 0) throw integrity_error("transport does not permute roots");
      for (size_t f2 = 0; f2 < R.factor_masks.size(); ++f2)
        if (R.factor_masks[f2] & ((Mask)1 << pidx)) {
          rep_factor_of[f] = (int)f2;
          break;
        }
      if (rep_factor_of[f] < 0)
        throw integrity_error("transported factor not found in representative");
      if (!(target_base.type.factors[f] == R.type.factors[rep_factor_of[f]]))
        throw integrity_error("transport changes the factor type");
    }
    lfactors_in.assign(nf, {});
    for (size_t lf = 0; lf < L->factor_masks.size(); ++lf) {
      int home = -1;
      for (int f = 0; f < nf; ++f)
        if ((L->factor_masks[lf] & target_factor_masks[f]) == L->factor_masks[lf]) {
          home = f;
          break;
        }
      if (home < 0)
        throw integrity_error("Levi factor does not embed in a target factor");
      lfactors_in[home].push_back((int)lf);
    }
  }
};

FactorResult induce_into_factor(const Context& ctx, const PairGeometry& g,
                                int f, const std::vector<int>& tuple) {
  const WeylData& G = *ctx.G;
  const PseudoLevi& L = *g.L;
  auto sf = g.target_base.type.factors[f];
  auto [fb, fe] = g.target_base.factor_spans[f];
  std::vector<IVec> fbase(g.target_base.base.begin() + fb,
                          g.target_base.base.begin() + fe);
  i64 target_roots = root_count(sf);

  // sources inside this factor
  i64 src_roots = 0, src_dim = 0;
  for (int lf : g.lfactors_in[f]) {
    src_roots += root_count(L.type.factors[lf]);
    src_dim += L.factor_tables[lf]->classes[tuple[lf]].dim;
  }

  // identity case: the Levi fills the whole factor
  if (src_roots == target_roots) {
    if (g.lfactors_in[f].size() != 1)
      throw integrity_error("irreducible factor filled by several Levi factors");
    int lf = g.lfactors_in[f][0];
    if (!(L.type.factors[lf] == sf))
      throw integrity_error("identity induction with mismatched types");
    auto& cls = L.factor_tables[lf]->classes[tuple[lf]];
    return {cls.label, cls.very_even, false, cls.dim};
  }

  if (sf.family == Family::G) {
    // target G2: the induced class is pinned by its dimension
    i64 want = target_roots - src_roots + src_dim;
    const UnipotentTable& t = unipotent::unipotent_table(Family::G, 2);
    const unipotent::UnipotentClass* found = nullptr;
    for (auto& c : t.classes)
      if (c.dim == want) {
        if (found) throw integrity_error("ambiguous G2 induction target");
        found = &c;
      }
    if (!found) throw integrity_error("no G2 class of the induced dimension");
    return {found->label, 0, false, found->dim};
  }

  int dim_e = (sf.family == Family::A) ? sf.rank + 1 : sf.rank;
  auto std_e = rootsys::standard_e_coords(sf.family, sf.rank);
  unipotent::InductionDatum datum;
  datum.target_family = sf.family;
  datum.target_rank = sf.rank;

  // supports of the Levi factors in orthogonal coordinates
  std::vector<std::vector<int>> supports;
  std::vector<std::vector<IVec>> lf_eroots;
  for (int lf : g.lfactors_in[f]) {
    auto [lb, le] = L.base.factor_spans[lf];
    std::vector<int> supp;
    std::vector<IVec> er;
    std::set<int> coords;
    for (int i = lb; i < le; ++i) {
      IVec e = e_coords(G.rs, fbase, std_e, L.base.base[i], dim_e);
      er.push_back(e);
      for (int j = 0; j < dim_e; ++j)
        if (e[j]) coords.insert(j);
    }
    supports.push_back(std::vector<int>(coords.begin(), coords.end()));
    lf_eroots.push_back(er);
  }

  if (sf.family == Family::A) {
    std::vector<bool> used(dim_e, false);
    for (size_t k = 0; k < supports.size(); ++k) {
      int lf = g.lfactors_in[f][k];
      auto lsf = L.type.factors[lf];
      if (lsf.family != Family::A)
        throw integrity_error("non-A Levi factor inside a type A factor");
      if ((int)supports[k].size() != lsf.rank + 1)
        throw integrity_error("gl support size mismatch");
      for (int c : supports[k]) {
        if (used[c]) throw integrity_error("overlapping gl supports");
        used[c] = true;
      }
      datum.gl_parts.push_back(L.factor_tables[lf]->classes[tuple[lf]].lambda);
    }
    for (int c = 0; c < dim_e; ++c)
      if (!used[c]) datum.gl_parts.push_back({1});
  } else {
    // kernel of all Levi roots: coordinates forced to zero form the core
    std::vector<IVec> allroots;
    for (auto& er : lf_eroots)
      for (auto& v : er) allroots.push_back(v);
    std::vector<bool> in_core(dim_e, false);
    {
      // coordinates j with x_j = 0 for every x orthogonal to all roots:
      // compute the rational kernel via elimination on root rows
      std::vector<RVec> rows;
      for (auto& v : allroots) {
        RVec r(dim_e);
        for (int j = 0; j < dim_e; ++j) r[j] = Rat(v[j]);
        rows.push_back(r);
      }
      // free-variable kernel basis
      std::vector<int> pivots;
      size_t rr = 0;
      for (int c = 0; c < dim_e && rr < rows.size(); ++c) {
        size_t p = rr;
        while (p < rows.size() && rows[p][c].num == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rr]);
        Rat inv = Rat(1) / rows[rr][c];
        for (int j = 0; j < dim_e; ++j) rows[rr][j] = rows[rr][j] * inv;
        for (size_t i = 0; i < rows.size(); ++i) {
          if (i == rr || rows[i][c].num == 0) continue;
          Rat f2 = rows[i][c];
          for (int j = 0; j < dim_e; ++j)
            rows[i][j] = rows[i][j] - f2 * rows[rr][j];
        }
        pivots.push_back(c);
        ++rr;
      }
      std::vector<bool> is_piv(dim_e, false);
      for (int c : pivots) is_piv[c] = true;
      std::vector<IVec> kernel;  // rational entries cleared to a basis role
      for (int c = 0; c < dim_e; ++c) {
        if (is_piv[c]) continue;
        RVec v(dim_e, Rat(0));
        v[c] = Rat(1);
        for (size_t i = 0; i < pivots.size(); ++i)
          v[pivots[i]] = Rat(0) - rows[i][c];
        IVec marker(dim_e, 0);
        for (int j = 0; j < dim_e; ++j) marker[j] = (v[j].num != 0) ? 1 : 0;
        kernel.push_back(marker);
      }
      for (int j = 0; j < dim_e; ++j) {
        bool vanishes = true;
        for (auto& kv : kernel)
          if (kv[j]) {
            vanishes = false;
            break;
          }
        in_core[j] = vanishes;
      }
    }
    std::vector<int> core_lfs, gl_lfs;
    for (size_t k = 0; k < supports.size(); ++k) {
      bool inside = true, outside = true;
      for (int c : supports[k]) (in_core[c] ? outside : inside) = false;
      if (inside)
        core_lfs.push_back((int)k);
      else if (outside)
        gl_lfs.push_back((int)k);
      else
        throw integrity_error("Levi factor straddles the core");
    }
    // core partition
    Partition core;
    auto lf_of = [&](int k) { return g.lfactors_in[f][k]; };
    auto lam_of = [&](int k) {
      return L.factor_tables[lf_of(k)]->classes[tuple[lf_of(k)]].lambda;
    };
    auto type_of = [&](int k) { return L.type.factors[lf_of(k)]; };
    if (core_lfs.empty()) {
      if (sf.family == Family::B) core = {1};
    } else if (core_lfs.size() == 1) {
      auto t = type_of(core_lfs[0]);
      Partition lam = lam_of(core_lfs[0]);
      if (t.family == sf.family)
        core = lam;  // native B_k / C_k / D_k core
      else if (t.family == Family::A && t.rank == 1 && sf.family == Family::B)
        core = unipotent::b1_core_partition(lam);
      else if (t.family == Family::A && t.rank == 1 && sf.family == Family::C)
        core = lam;  // C1 core, already a partition of 2
      else if (t.family == Family::A && t.rank == 3 && sf.family == Family::D)
        core = unipotent::d3_core_partition(lam);
      else
        throw integrity_error("unrecognized core factor of type " + t.str());
    } else if (core_lfs.size() == 2 && sf.family == Family::D) {
      auto t0 = type_of(core_lfs[0]), t1 = type_of(core_lfs[1]);
      if (!(t0.family == Family::A && t0.rank == 1 && t1.family == Family::A &&
            t1.rank == 1))
        throw integrity_error("unrecognized two-factor core");
      int flag = 0;
      core = unipotent::d2_core_partition(lam_of(core_lfs[0]),
                                          lam_of(core_lfs[1]), flag);
    } else {
      throw integrity_error("unrecognized core shape");
    }
    // gl parts
    std::vector<bool> used(dim_e, false);
    for (int j = 0; j < dim_e; ++j) used[j] = in_core[j];
    for (int k : gl_lfs) {
      auto t = type_of(k);
      if (t.family != Family::A)
        throw integrity_error("non-A factor used as a gl part");
      if ((int)supports[k].size() != t.rank + 1)
        throw integrity_error("gl support size mismatch");
      for (int c : supports[k]) {
        if (used[c]) throw integrity_error("overlapping gl supports");
        used[c] = true;
      }
      datum.gl_parts.push_back(lam_of(k));
    }
    for (int c = 0; c < dim_e; ++c)
      if (!used[c]) datum.gl_parts.push_back({1});
    datum.core = core;
  }

  auto ind = unipotent::ls_induce(datum);
  i64 want_dim = target_roots - src_roots + src_dim;
  i64 got_dim = unipotent::class_dim(sf.family, sf.rank, ind.lambda);
  if (got_dim != want_dim)
    throw integrity_error(
        "induced class dimension " + std::to_string(got_dim) +
        " violates the induction dimension formula (expected " +
        std::to_string(want_dim) + ") in " + sf.str());
  FactorResult out;
  out.label = wmath::part_str(ind.lambda);
  out.dim = got_dim;
  if (ind.very_even_ambiguous) {
    out.ambiguous = true;
    out.very_even = 1;
  }
  return out;
}

struct MemberTuple {
  std::vector<int> tuple;               // per rep factor, table indices
  std::vector<int> ambiguous_factors;   // rep factor indices with I/II choice
  i64 total_dim = 0;
};

MemberTuple induce_member(const Context& ctx, const PairGeometry& g,
                          const std::vector<int>& tuple) {
  const PseudoLevi& R = ctx.levis[g.pair->target];
  int nf = (int)g.target_base.factor_spans.size();
  MemberTuple out;
  out.tuple.assign(nf, -1);
  for (int f = 0; f < nf; ++f) {
    FactorResult fr = induce_into_factor(ctx, g, f, tuple);
    int rf = g.rep_factor_of[f];
    const UnipotentTable& t = *R.factor_tables[rf];
    int idx = t.index_of(fr.label, fr.very_even);
    if (idx < 0)
      throw integrity_error("induced class " + fr.label +
                            " missing from the target table");
    out.tuple[rf] = idx;
    out.total_dim += fr.dim;
    if (fr.ambiguous) out.ambiguous_factors.push_back(rf);
  }
  return out;
}

std::vector<int> apply_action(const FactorAction& a,
                              const std::vector<int>& tuple,
                              const PseudoLevi& L) {
  std::vector<int> out(tuple.size());
  for (size_t f = 0; f < tuple.size(); ++f) {
    int idx = tuple[f];
    if (a.flip_ve[f]) {
      auto& cls = L.factor_tables[f]->classes[idx];
      if (cls.very_even) {
        int other = L.factor_tables[f]->index_of(cls.label,
                                                 cls.very_even == 1 ? 2 : 1);
        if (other < 0) throw integrity_error("missing very-even partner");
        idx = other;
      }
    }
    out[a.perm[f]] = idx;
  }
  return out;
}

std::vector<int> canonical_tuple(const PseudoLevi& L,
                                 const std::vector<int>& tuple) {
  std::vector<int> best = tuple;
  for (auto& a : L.actions) {
    auto t = apply_action(a, tuple, L);
    if (t < best) best = t;
  }
  return best;
}

std::string tuple_label_of(const PseudoLevi& L, const std::vector<int>& tuple) {
  if (tuple.empty()) return "1";
  std::string s;
  for (size_t f = 0; f < tuple.size(); ++f) {
    auto& cls = L.factor_tables[f]->classes[tuple[f]];
    if (f) s += "x";
    s += cls.label;
    if (cls.very_even == 1) s += "I";
    if (cls.very_even == 2) s += "II";
  }
  return s;
}

std::string springer_label_of(const PseudoLevi& L,
                              const std::vector<int>& tuple) {
  if (tuple.empty()) return "1";
  std::string s;
  for (size_t f = 0; f < tuple.size(); ++f) {
    if (f) s += "x";
    s += L.factor_tables[f]->classes[tuple[f]].springer;
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// decomposition

Decomposition decompose(const Context& ctx) {
  const WeylData& G = *ctx.G;
  i64 p = ctx.spec.characteristic;
  Decomposition d;
  d.ctx = &ctx;

  std::vector<bool> realizable(ctx.levis.size(), true);
  for (auto& L : ctx.levis) {
    if (p != 0 && L.excluded_primes.count(p)) {
      realizable[L.id] = false;
      d.excluded_levis.push_back(L.id);
    }
  }

  // atoms
  std::map<std::pair<int, std::vector<int>>, int> atom_index;
  for (auto& L : ctx.levis) {
    if (!realizable[L.id]) continue;
    std::vector<std::vector<int>> tuples{{}};
    for (auto* t : L.factor_tables) {
      std::vector<std::vector<int>> next;
      for (auto& partial : tuples)
        for (int c = 0; c < (int)t->classes.size(); ++c) {
          auto np = partial;
          np.push_back(c);
          next.push_back(np);
        }
      tuples = next;
    }
    std::set<std::vector<int>> canon;
    for (auto& t : tuples) canon.insert(canonical_tuple(L, t));
    for (auto& t : canon) {
      Atom a;
      a.levi = L.id;
      a.tuple = t;
      a.multiplicity =
          (L.id == ctx.full_levi)
              ? pprime_part(rootsys::center_order(ctx.spec.type), p)
              : 1;
      a.dim_class = 0;
      for (size_t f = 0; f < t.size(); ++f)
        a.dim_class += L.factor_tables[f]->classes[t[f]].dim;
      a.orbit_dim = 2 * G.rs.n_pos - L.n_roots() + a.dim_class;
      std::string sp = springer_label_of(L, t);
      int sub_idx = L.wd->table.index_of_label(sp);
      if (sub_idx < 0)
        throw integrity_error("springer label " + sp + " not in Irr(W_s) of " +
                              L.type.str());
      a.phi = repops::j_induce(L.emb, sub_idx);
      a.phi_label = G.table.labels[a.phi];
      a.tuple_label = tuple_label_of(L, t);
      d.atoms.push_back(a);
    }
  }
  std::sort(d.atoms.begin(), d.atoms.end(), [&](const Atom& x, const Atom& y) {
    if (x.orbit_dim != y.orbit_dim) return x.orbit_dim > y.orbit_dim;
    if (x.levi != y.levi) return x.levi < y.levi;
    return x.tuple_label < y.tuple_label;
  });
  for (int i = 0; i < (int)d.atoms.size(); ++i) {
    d.atoms[i].id = i;
    atom_index[{d.atoms[i].levi, d.atoms[i].tuple}] = i;
  }

  // regular closures
  d.closures.assign(d.atoms.size(), {});
  d.closure_ambiguous.assign(d.atoms.size(), false);
  std::map<std::pair<int, Mask>, PairGeometry> geom_cache;
  for (auto& a : d.atoms) {
    const PseudoLevi& L = ctx.levis[a.levi];
    std::set<int> members{a.id};
    for (auto& pr : ctx.pairs[a.levi]) {
      if (!realizable[pr.target]) continue;
      if (pr.target == a.levi && pr.target_mask == L.mask) continue;  // identity
      auto key = std::make_pair(pr.levi, pr.target_mask);
      auto git = geom_cache.find(key);
      if (git == geom_cache.end())
        git = geom_cache.emplace(key, PairGeometry(ctx, pr)).first;
      const PairGeometry& g = git->second;
      MemberTuple mt = induce_member(ctx, g, a.tuple);
      const PseudoLevi& R = ctx.levis[pr.target];
      i64 member_dim = 2 * G.rs.n_pos - R.n_roots() + mt.total_dim;
      if (member_dim != a.orbit_dim)
        throw integrity_error("regular closure member of " + L.type.str() +
                              " changes orbit dimension");
      if (mt.ambiguous_factors.empty()) {
        auto key2 = std::make_pair(pr.target, canonical_tuple(R, mt.tuple));
        auto ait = atom_index.find(key2);
        if (ait == atom_index.end())
          throw integrity_error("closure member atom not found");
        members.insert(ait->second);
      } else {
        // enumerate I/II choices; keep the atoms whose phi matches
        std::set<int> candidates;
        int nchoices = 1 << mt.ambiguous_factors.size();
        for (int bits = 0; bits < nchoices; ++bits) {
          auto t = mt.tuple;
          for (size_t k = 0; k < mt.ambiguous_factors.size(); ++k) {
            int rf = mt.ambiguous_factors[k];
            auto& tbl = *R.factor_tables[rf];
            auto& cls = tbl.classes[t[rf]];
            int want = (bits & (1 << k)) ? 2 : 1;
            int idx = tbl.index_of(cls.label, want);
            if (idx < 0) throw integrity_error("missing very-even partner");
            t[rf] = idx;
          }
          auto ait = atom_index.find({pr.target, canonical_tuple(R, t)});
          if (ait == atom_index.end())
            throw integrity_error("closure member atom not found");
          candidates.insert(ait->second);
        }
        if (candidates.size() == 1) {
          members.insert(*candidates.begin());
        } else {
          int matching = -1;
          for (int c : candidates)
            if (d.atoms[c].phi == a.phi) {
              if (matching >= 0)
                throw integrity_error("ambiguous very-even member matches twice");
              matching = c;
            }
          if (matching < 0)
            throw integrity_error(
                "no very-even member matches the source stratum map value");
          members.insert(matching);
          d.closure_ambiguous[a.id] = true;
        }
      }
    }
    d.closures[a.id].assign(members.begin(), members.end());
  }

  // sheets: maximal atoms in the regular-closure order
  std::vector<bool> covered(d.atoms.size(), false);
  for (auto& a : d.atoms)
    for (int m : d.closures[a.id])
      if (m != a.id) covered[m] = true;
  for (auto& a : d.atoms) {
    if (covered[a.id]) continue;
    Sheet s;
    s.generator = a.id;
    s.members = d.closures[a.id];
    s.orbit_dim = a.orbit_dim;
    s.multiplicity = a.multiplicity;
    s.ambiguous_pair = d.closure_ambiguous[a.id];
    d.sheets.push_back(s);
  }
  std::sort(d.sheets.begin(), d.sheets.end(), [](const Sheet& x, const Sheet& y) {
    if (x.orbit_dim != y.orbit_dim) return x.orbit_dim > y.orbit_dim;
    return x.generator < y.generator;
  });
  for (int i = 0; i < (int)d.sheets.size(); ++i) d.sheets[i].id = i;

  // every atom must lie in at least one sheet
  {
    std::vector<bool> in_sheet(d.atoms.size(), false);
    for (auto& s : d.sheets)
      for (int m : s.members) in_sheet[m] = true;
    for (auto& a : d.atoms)
      if (!in_sheet[a.id])
        throw integrity_error("Jordan class not covered by any sheet");
  }

  // strata: fibers of phi
  std::map<int, std::vector<int>> by_phi;
  for (auto& a : d.atoms) by_phi[a.phi].push_back(a.id);
  for (auto& [phi, atoms] : by_phi) {
    Stratum st;
    st.phi = phi;
    st.phi_label = G.table.labels[phi];
    st.atoms = atoms;
    st.orbit_dim = d.atoms[atoms[0]].orbit_dim;
    for (int aid : atoms)
      if (d.atoms[aid].orbit_dim != st.orbit_dim)
        throw integrity_error("stratum " + st.phi_label +
                              " mixes orbit dimensions");
    d.strata.push_back(st);
  }
  std::sort(d.strata.begin(), d.strata.end(),
            [](const Stratum& x, const Stratum& y) {
              if (x.orbit_dim != y.orbit_dim) return x.orbit_dim > y.orbit_dim;
              return x.phi_label < y.phi_label;
            });
  for (int i = 0; i < (int)d.strata.size(); ++i) d.strata[i].id = i;
  for (auto& st : d.strata) {
    std::set<int> atom_set(st.atoms.begin(), st.atoms.end());
    for (auto& s : d.sheets) {
      if (d.atoms[s.generator].phi != st.phi) continue;
      st.sheets.push_back(s.id);
      st.components += s.multiplicity;
      if (s.ambiguous_pair) st.ambiguous_pair = true;
      for (int m : s.members)
        if (!atom_set.count(m))
          throw integrity_error("sheet " + std::to_string(s.id) +
                                " straddles stratum " + st.phi_label);
    }
    for (int aid : st.atoms) {
      const PseudoLevi& L = ctx.levis[d.atoms[aid].levi];
      if (L.id != ctx.full_levi) {
        i64 c = 1;
        for (i64 inv : L.pi0_invariants) c *= pprime_part(inv, p);
        if (c > 1) st.coset_refinement_flag = true;
      }
    }
  }

  // theorem report
  TheoremReport& rep = d.report;
  rep.phi_constant_on_closures = true;
  rep.dim_constant_on_closures = true;
  rep.strata_are_unions_of_sheets = true;
  rep.components_are_the_sheets = true;
  for (auto& a : d.atoms)
    for (int m : d.closures[a.id]) {
      if (d.atoms[m].phi != a.phi) {
        rep.phi_constant_on_closures = false;
        rep.violations.push_back(
            "phi changes along the regular closure of (" +
            ctx.levis[a.levi].type.str() + ", " + a.tuple_label + "): " +
            a.phi_label + " vs " + d.atoms[m].phi_label + " at (" +
            ctx.levis[d.atoms[m].levi].type.str() + ", " +
            d.atoms[m].tuple_label + ")");
      }
      if (d.atoms[m].orbit_dim != a.orbit_dim) {
        rep.dim_constant_on_closures = false;
        rep.violations.push_back("orbit dimension changes along a closure");
      }
    }
  {
    std::map<int, std::set<int>> stratum_atoms;
    for (auto& st : d.strata)
      stratum_atoms[st.phi] = std::set<int>(st.atoms.begin(), st.atoms.end());
    for (auto& s : d.sheets) {
      int phi = d.atoms[s.generator].phi;
      for (int m : s.members)
        if (!stratum_atoms[phi].count(m)) {
          rep.strata_are_unions_of_sheets = false;
          rep.violations.push_back("sheet " + std::to_string(s.id) +
                                   " leaves its stratum");
        }
    }
    for (auto& st : d.strata) {
      std::set<int> maximal;
      for (int aid : st.atoms)
        if (!covered[aid]) maximal.insert(aid);
      std::set<int> gens;
      for (int sid : st.sheets) gens.insert(d.sheets[sid].generator);
      if (maximal != gens) {
        rep.components_are_the_sheets = false;
        rep.violations.push_back("components of stratum " + st.phi_label +
                                 " differ from its sheets");
      }
    }
  }
  return d;
}

i64 Decomposition::jordan_datum_count() const {
  i64 c = 0;
  for (auto& a : atoms) c += a.multiplicity;
  return c;
}

i64 Decomposition::sheet_count() const {
  i64 c = 0;
  for (auto& s : sheets) c += s.multiplicity;
  return c;
}

TheoremReport verify_theorem(const Context& ctx) {
  return decompose(ctx).report;
}

// ---------------------------------------------------------------------------
// induction compatibility / j-transitivity suite

std::vector<std::string> verify_induction_compatibility(const Context& ctx) {
  std::vector<std::string> violations;
  for (auto& L : ctx.levis) {
    // class tuples of L up to the stabilizer action
    std::vector<std::vector<int>> tuples{{}};
    for (auto* t : L.factor_tables) {
      std::vector<std::vector<int>> next;
      for (auto& partial : tuples)
        for (int c = 0; c < (int)t->classes.size(); ++c) {
          auto np = partial;
          np.push_back(c);
          next.push_back(np);
        }
      tuples = next;
    }
    std::set<std::vector<int>> canon;
    for (auto& t : tuples) canon.insert(canonical_tuple(L, t));

    for (auto& pr : ctx.pairs[L.id]) {
      const PseudoLevi& R = ctx.levis[pr.target];
      PairGeometry g(ctx, pr);
      // embedding of W_L into the abstract W of the target class
      std::vector<IVec> base_in_target;
      for (auto& v : L.base.base) {
        IVec img = wmath::apply(ctx.G->W.elements[pr.transport], v);
        RVec coeff;
        if (!wmath::solve_rational(R.base.base, img, coeff))
          throw integrity_error("transported base outside the target span");
        IVec abs(R.base.base.size());
        for (size_t i = 0; i < coeff.size(); ++i) {
          if (!coeff[i].is_integer())
            throw integrity_error("non-integral base expansion");
          abs[i] = coeff[i].num;
        }
        base_in_target.push_back(abs);
      }
      Embedding l_in_r = weylgrp::embed_subgroup(*L.wd, base_in_target, *R.wd);

      for (auto& t : canon) {
        // springer(Ind O) vs j(springer O) at the pair level
        MemberTuple mt = induce_member(ctx, g, t);
        std::set<std::string> left;
        {
          std::vector<std::vector<int>> variants{mt.tuple};
          for (int rf : mt.ambiguous_factors) {
            std::vector<std::vector<int>> next;
            for (auto& v : variants)
              for (int flag : {1, 2}) {
                auto nv = v;
                auto& tbl = *R.factor_tables[rf];
                int idx = tbl.index_of(tbl.classes[nv[rf]].label, flag);
                if (idx < 0) throw integrity_error("missing very-even partner");
                nv[rf] = idx;
                next.push_back(nv);
              }
            variants = next;
          }
          for (auto& v : variants) left.insert(springer_label_of(R, v));
        }
        std::string sp = springer_label_of(L, t);
        int sub_idx = L.wd->table.index_of_label(sp);
        int jr = repops::j_induce(l_in_r, sub_idx);
        std::string right = R.wd->table.labels[jr];
        if (!left.count(right))
          violations.push_back("springer(Ind) != j(springer) for (" +
                               L.type.str() + " -> " + R.type.str() +
                               ", class " + tuple_label_of(L, t) + ")");
      }
      // full j-transitivity L -> target -> G over every irreducible of W_L
      for (int e = 0; e < L.wd->table.n_chars(); ++e) {
        int direct = repops::j_induce(L.emb, e);
        int through = repops::j_induce(R.emb, repops::j_induce(l_in_r, e));
        if (direct != through)
          violations.push_back("j-transitivity fails for " + L.type.str() +
                               " in " + R.type.str() + " at " +
                               L.wd->table.labels[e]);
      }
    }
  }
  return violations;
}

// ---------------------------------------------------------------------------
// reports

namespace {

nlohmann::ordered_json atom_json(const Decomposition& d, const Atom& a) {
  const Context& ctx = *d.ctx;
  nlohmann::ordered_json j;
  j["id"] = a.id;
  j["levi"] = ctx.levis[a.levi].type.str();
  j["levi_id"] = a.levi;
  j["class"] = a.tuple_label;
  j["multiplicity"] = a.multiplicity;
  j["orbit_dim"] = a.orbit_dim;
  j["phi"] = a.phi_label;
  return j;
}

}  // namespace

std::string report_json(const Decomposition& d) {
  const Context& ctx = *d.ctx;
  const GroupSpec& spec = ctx.spec;
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["group"] = {{"type", spec.type.str()},
                {"total_rank", spec.total_rank},
                {"isogeny", "simply_connected"},
                {"characteristic", spec.characteristic},
                {"dim", 2 * ctx.G->rs.n_pos + spec.total_rank}};
  nlohmann::ordered_json levis = nlohmann::ordered_json::array();
  for (auto& L : ctx.levis) {
    nlohmann::ordered_json lj;
    lj["id"] = L.id;
    lj["type"] = L.type.str();
    lj["is_levi"] = L.is_levi;
    lj["central_torus_rank"] = L.central_torus_rank;
    lj["excluded_characteristics"] = L.excluded_primes;
    lj["pi0_center_invariants"] = L.pi0_invariants;
    bool excluded = std::find(d.excluded_levis.begin(), d.excluded_levis.end(),
                              L.id) != d.excluded_levis.end();
    lj["realizable"] = !excluded;
    levis.push_back(lj);
  }
  j["pseudo_levis"] = levis;
  nlohmann::ordered_json atoms = nlohmann::ordered_json::array();
  for (auto& a : d.atoms) atoms.push_back(atom_json(d, a));
  j["jordan_classes"] = atoms;
  j["jordan_datum_count"] = d.jordan_datum_count();
  nlohmann::ordered_json sheets = nlohmann::ordered_json::array();
  for (auto& s : d.sheets) {
    nlohmann::ordered_json sj;
    sj["id"] = s.id;
    sj["generator"] = s.generator;
    sj["orbit_dim"] = s.orbit_dim;
    sj["multiplicity"] = s.multiplicity;
    sj["members"] = s.members;
    sj["ambiguous_pair"] = s.ambiguous_pair;
    sheets.push_back(sj);
  }
  j["sheets"] = sheets;
  j["sheet_count"] = d.sheet_count();
  nlohmann::ordered_json strata = nlohmann::ordered_json::array();
  for (auto& st : d.strata) {
    nlohmann::ordered_json tj;
    tj["id"] = st.id;
    tj["phi"] = st.phi_label;
    tj["orbit_dim"] = st.orbit_dim;
    tj["atoms"] = st.atoms;
    tj["sheets"] = st.sheets;
    tj["components"] = st.components;
    tj["ambiguous_pair"] = st.ambiguous_pair;
    tj["coset_refinement_flag"] = st.coset_refinement_flag;
    strata.push_back(tj);
  }
  j["strata"] = strata;
  j["stratum_count"] = (i64)d.strata.size();
  nlohmann::ordered_json ver;
  ver["phi_constant_on_closures"] = d.report.phi_constant_on_closures;
  ver["dim_constant_on_closures"] = d.report.dim_constant_on_closures;
  ver["strata_are_unions_of_sheets"] = d.report.strata_are_unions_of_sheets;
  ver["components_are_the_sheets"] = d.report.components_are_the_sheets;
  ver["violations"] = d.report.violations;
  j["verification"] = ver;
  nlohmann::ordered_json prov = nlohmann::ordered_json::array();
  {
    std::set<std::string> seen;
    for (auto& L : ctx.levis)
      for (auto* t : L.factor_tables) {
        std::string key = family_str(t->family) + std::to_string(t->rank);
        if (!seen.insert(key).second) continue;
        prov.push_back({{"table", key}, {"provenance", t->provenance}});
      }
  }
  j["data_provenance"] = prov;
  return j.dump(2);
}

std::string report_markdown(const Decomposition& d) {
  const Context& ctx = *d.ctx;
  std::ostringstream os;
  os << "# Strata of " << ctx.spec.type.str() << " (characteristic "
     << ctx.spec.characteristic << ")\n\n";
  os << "- group dimension: " << 2 * ctx.G->rs.n_pos + ctx.spec.total_rank
     << "\n";
  os << "- Jordan class data: " << d.jordan_datum_count() << "\n";
  os << "- sheets: " << d.sheet_count() << "\n";
  os << "- strata: " << d.strata.size() << "\n\n";
  os << "| stratum | dim | classes | sheets | components | flags |\n";
  os << "|---|---|---|---|---|---|\n";
  for (auto& st : d.strata) {
    std::string flags;
    if (st.ambiguous_pair) flags += "ambiguous-pair ";
    if (st.coset_refinement_flag) flags += "coset-refinement-open";
    os << "| " << st.phi_label << " | " << st.orbit_dim << " | "
       << st.atoms.size() << " | " << st.sheets.size() << " | "
       << st.components << " | " << flags << " |\n";
  }
  os << "\n## Jordan classes\n\n";
  os << "| id | pseudo-Levi | class | mult | dim | phi |\n";
  os << "|---|---|---|---|---|---|\n";
  for (auto& a : d.atoms)
    os << "| " << a.id << " | " << ctx.levis[a.levi].type.str() << " | "
       << a.tuple_label << " | " << a.multiplicity << " | " << a.orbit_dim
       << " | " << a.phi_label << " |\n";
  os << "\n## Verification\n\n";
  os << "- phi constant on regular closures: "
     << (d.report.phi_constant_on_closures ? "pass" : "FAIL") << "\n";
  os << "- strata are unions of sheets: "
     << (d.report.strata_are_unions_of_sheets ? "pass" : "FAIL") << "\n";
  os << "- components are the sheets: "
     << (d.report.components_are_the_sheets ? "pass" : "FAIL") << "\n";
  for (auto& v : d.report.violations) os << "  - " << v << "\n";
  return os.str();
}

}  // namespace strata
