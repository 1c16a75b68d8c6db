#include "repops.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>

#include "errors.hpp"

namespace repops {

using weylgrp::CharTable;
using weylgrp::ConjClasses;
using weylgrp::WeylGroup;
using wmath::IMat;
using wmath::IVec;

namespace {

using Poly = std::vector<i64>;  // little-endian coefficients

Poly trunc_mul(const Poly& a, const Poly& b, int limit) {
  Poly r(limit + 1, 0);
  for (int i = 0; i <= limit && i < (int)a.size(); ++i) {
    if (!a[i]) continue;
    for (int j = 0; j + i <= limit && j < (int)b.size(); ++j)
      r[i + j] += a[i] * b[j];
  }
  return r;
}

// det(I - q M) from the characteristic polynomial of M
Poly det_one_minus_qm(const IMat& m) {
  int n = m.n;
  // Faddeev-LeVerrier for det(xI - M)
  std::vector<i64> c(n + 1, 0);
  c[0] = 1;
  IMat acc = m;
  for (int k = 1; k <= n; ++k) {
    i64 t = wmath::trace(acc);
    if (t % k != 0) throw integrity_error("charpoly division not exact");
    c[k] = -t / k;
    if (k < n) {
      IMat mc = acc;
      for (int i = 0; i < n; ++i) mc.at(i, i) += c[k];
      acc = wmath::mul(m, mc);
    }
  }
  // det(xI-M) = sum_k c[k] x^{n-k};  det(I-qM) = sum_k c[k] q^k
  Poly p(n + 1);
  for (int k = 0; k <= n; ++k) p[k] = c[k];
  return p;
}

// 1 / P as a power series (P[0] must be 1)
Poly invert_series(const Poly& p, int limit) {
  if (p.empty() || p[0] != 1) throw integrity_error("series inversion needs unit term");
  Poly inv(limit + 1, 0);
  inv[0] = 1;
  for (int m = 1; m <= limit; ++m) {
    i64 s = 0;
    for (int j = 1; j <= m && j < (int)p.size(); ++j) s += p[j] * inv[m - j];
    inv[m] = -s;
  }
  return inv;
}

}  // namespace

i64 inner_product(const WeylData& wd, const std::vector<i64>& f,
                  const std::vector<i64>& g) {
  i64 s = 0;
  for (int c = 0; c < wd.cc.num; ++c)
    s += wd.cc.size[c] * f[c] * g[wd.cc.inv_class[c]];
  i64 ord = wd.W.order();
  if (s % ord != 0) throw integrity_error("inner product is not integral");
  return s / ord;
}

std::vector<i64> induce(const Embedding& em, const std::vector<i64>& sub_values) {
  const WeylData& sub = *em.sub;
  const WeylData& parent = *em.parent;
  i64 g = parent.W.order(), h = sub.W.order();
  std::vector<i64> out(parent.cc.num, 0);
  std::vector<i64> acc(parent.cc.num, 0);
  for (int d = 0; d < sub.cc.num; ++d)
    acc[em.fusion[d]] += sub.cc.size[d] * sub_values[d];
  for (int c = 0; c < parent.cc.num; ++c) {
    i64 num = g * acc[c];
    i64 den = parent.cc.size[c] * h;
    if (num % den != 0) throw integrity_error("induced value is not integral");
    out[c] = num / den;
  }
  return out;
}

std::vector<i64> restrict_through(const Embedding& em,
                                  const std::vector<i64>& parent_values) {
  std::vector<i64> out(em.sub->cc.num);
  for (int d = 0; d < em.sub->cc.num; ++d) out[d] = parent_values[em.fusion[d]];
  return out;
}

std::vector<i64> decompose_character(const WeylData& wd,
                                     const std::vector<i64>& values) {
  std::vector<i64> mult(wd.table.n_chars());
  for (int i = 0; i < wd.table.n_chars(); ++i) {
    mult[i] = inner_product(wd, values, wd.table.values[i]);
    if (mult[i] < 0)
      throw integrity_error("negative multiplicity in decomposition");
  }
  return mult;
}

std::vector<i64> molien_multiplicities(const WeylData& wd, int char_idx,
                                       int limit) {
  std::vector<i64> series(limit + 1, 0);
  i64 ord = wd.W.order();
  for (int c = 0; c < wd.cc.num; ++c) {
    const IMat& m = wd.W.elements[wd.cc.rep[c]];
    Poly inv = invert_series(det_one_minus_qm(m), limit);
    i64 w = wd.cc.size[c] * wd.table.values[char_idx][wd.cc.inv_class[c]];
    for (int k = 0; k <= limit; ++k) series[k] += w * inv[k];
  }
  for (int k = 0; k <= limit; ++k) {
    if (series[k] % ord != 0)
      throw integrity_error("Molien coefficient is not integral");
    series[k] /= ord;
    if (series[k] < 0) throw integrity_error("negative Molien coefficient");
  }
  return series;
}

namespace {

void fill_b_and_fake_degrees(WeylData& wd) {
  int n = wd.table.n_chars();
  int limit = wd.rs.n_pos;
  // degrees sanity: product = |W|, sum (d-1) = number of positive roots
  i64 prod = 1, degsum = 0;
  for (i64 d : wd.degrees) {
    prod *= d;
    degsum += d - 1;
  }
  if (prod != wd.W.order() || degsum != limit)
    throw integrity_error("fundamental degrees inconsistent for " +
                          wd.type.str());
  Poly denom{1};
  for (i64 d : wd.degrees) {
    Poly f(std::min<i64>(d, limit) + 1, 0);
    f[0] = 1;
    if (d <= limit) f[(size_t)d] = -1;
    denom = trunc_mul(denom, f, limit);
  }
  wd.table.b.assign(n, -1);
  wd.table.fake_degrees.assign(n, {});
  for (int i = 0; i < n; ++i) {
    auto series = molien_multiplicities(wd, i, limit);
    int b = -1;
    for (int k = 0; k <= limit; ++k)
      if (series[k] != 0) {
        b = k;
        break;
      }
    if (b < 0)
      throw integrity_error("no Molien coefficient up to the bound for " +
                            wd.type.str());
    wd.table.b[i] = b;
    Poly fd = trunc_mul(series, denom, limit);
    for (int k = 0; k <= limit; ++k)
      if (fd[k] < 0) throw integrity_error("fake degree with negative term");
    int low = -1;
    for (int k = 0; k <= limit; ++k)
      if (fd[k]) {
        low = k;
        break;
      }
    if (low != b) throw integrity_error("fake degree valuation differs from b");
    wd.table.fake_degrees[i] = fd;
  }
  // coinvariant-algebra identity: sum dim(E) * fake_E(q) = prod [d_i]_q
  Poly want{1};
  for (i64 d : wd.degrees) {
    Poly f((size_t)d, 1);
    want = trunc_mul(want, f, limit);
  }
  Poly got(limit + 1, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= limit; ++k)
      got[k] += wd.table.dims[i] * wd.table.fake_degrees[i][k];
  if (got != want)
    throw integrity_error("Poincare polynomial identity fails for " +
                          wd.type.str());
}

void assign_phi_labels(WeylData& wd) {
  // D and G2 rows arrive unlabeled; name them phi{dim}_{b}, disambiguating
  // collisions alphabetically by character-value vector.
  int n = wd.table.n_chars();
  std::map<std::pair<i64, i64>, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) {
    if (!wd.table.labels[i].empty()) continue;
    groups[{wd.table.dims[i], wd.table.b[i]}].push_back(i);
  }
  for (auto& [key, idxs] : groups) {
    std::vector<int> sorted = idxs;
    std::sort(sorted.begin(), sorted.end(), [&](int a, int b2) {
      return wd.table.values[a] < wd.table.values[b2];
    });
    for (size_t k = 0; k < sorted.size(); ++k) {
      std::string label = "phi" + std::to_string(key.first) + "_" +
                          std::to_string(key.second);
      if (sorted.size() > 1) label += (char)('a' + (int)k);
      wd.table.labels[sorted[k]] = label;
    }
  }
}

void find_trivial_and_sign(WeylData& wd) {
  int triv = -1, sign = -1;
  for (int i = 0; i < wd.table.n_chars(); ++i) {
    if (wd.table.b[i] == 0) {
      if (triv >= 0) throw integrity_error("two characters with b = 0");
      triv = i;
    }
    if (wd.table.b[i] == wd.rs.n_pos) {
      if (sign >= 0) throw integrity_error("two characters with b = N");
      sign = i;
    }
  }
  if (triv < 0 || sign < 0)
    throw integrity_error("trivial or sign character not identified");
  if (wd.table.dims[triv] != 1 || wd.table.dims[sign] != 1)
    throw integrity_error("trivial/sign character has dim != 1");
  if (wd.table.trivial >= 0 && wd.table.trivial != triv)
    throw integrity_error("trivial character mismatch");
  if (wd.table.sign >= 0 && wd.table.sign != sign)
    throw integrity_error("sign character mismatch (label convention)");
  wd.table.trivial = triv;
  wd.table.sign = sign;
}

}  // namespace

void complete_table(WeylData& wd) {
  fill_b_and_fake_degrees(wd);
  assign_phi_labels(wd);
  find_trivial_and_sign(wd);
}

namespace {

std::unique_ptr<WeylData> build_torus_data() {
  auto wd = std::make_unique<WeylData>();
  wd->type = CartanType();
  wd->rs = rootsys::build_root_system(wd->type);
  wd->W = WeylGroup::enumerate(0, {}, 2);
  wd->cc = weylgrp::conjugacy_classes(wd->W);
  wd->table.labels = {"1"};
  wd->table.values = {{1}};
  wd->table.dims = {1};
  wd->table.b = {0};
  wd->table.fake_degrees = {{1}};
  wd->table.trivial = 0;
  wd->table.sign = 0;
  wd->degrees = {};
  return wd;
}

std::unique_ptr<WeylData> build_irreducible(const CartanType& t, i64 cap) {
  auto wd = std::make_unique<WeylData>();
  wd->type = t;
  wd->rs = rootsys::build_root_system(t);
  wd->W = weylgrp::enumerate_group(wd->rs, cap);
  wd->cc = weylgrp::conjugacy_classes(wd->W);
  wd->table = weylgrp::factor_char_table(wd->rs, wd->W, wd->cc);
  wd->degrees = rootsys::fundamental_degrees(t);
  complete_table(*wd);
  return wd;
}

std::unique_ptr<WeylData> build_product(const CartanType& t, i64 cap) {
  auto wd = std::make_unique<WeylData>();
  wd->type = t;
  wd->rs = rootsys::build_root_system(t);
  wd->W = weylgrp::enumerate_group(wd->rs, cap);
  wd->cc = weylgrp::conjugacy_classes(wd->W);
  wd->degrees = rootsys::fundamental_degrees(t);

  std::vector<const WeylData*> fds;
  for (auto& f : t.factors) fds.push_back(&weyl_data(CartanType::simple(f.family, f.rank), cap));
  wd->factor_data = fds;

  // factor class indices of each class of the product
  int nf = (int)t.factors.size();
  std::vector<std::pair<int, int>> spans;
  {
    int off = 0;
    for (auto& f : t.factors) {
      spans.push_back({off, off + f.rank});
      off += f.rank;
    }
  }
  wd->class_tuple.assign(wd->cc.num, std::vector<int>(nf));
  for (int c = 0; c < wd->cc.num; ++c) {
    const IMat& m = wd->W.elements[wd->cc.rep[c]];
    for (int f = 0; f < nf; ++f) {
      auto [lo, hi] = spans[f];
      IMat blk(hi - lo);
      for (int i = 0; i < wd->rs.rank; ++i)
        for (int j = 0; j < wd->rs.rank; ++j) {
          bool ii = i >= lo && i < hi, jj = j >= lo && j < hi;
          if (ii && jj)
            blk.at(i - lo, j - lo) = m.at(i, j);
          else if ((ii || jj) && m.at(i, j) != 0)
            throw integrity_error("product element not block diagonal");
        }
      int bidx = fds[f]->W.index_of(blk);
      if (bidx < 0) throw integrity_error("factor block not in factor group");
      wd->class_tuple[c][f] = fds[f]->cc.class_of[bidx];
    }
  }

  // tensor table: rows = tuples of factor rows, lexicographic
  std::vector<int> counts;
  for (auto* fd : fds) counts.push_back(fd->table.n_chars());
  std::vector<int> tup(nf, 0);
  bool done = false;
  while (!done) {
    std::string label;
    i64 dim = 1, b = 0;
    std::vector<i64> row(wd->cc.num, 1);
    Poly fd_poly{1};
    for (int f = 0; f < nf; ++f) {
      const CharTable& ft = fds[f]->table;
      if (f) label += "x";
      label += ft.labels[tup[f]];
      dim *= ft.dims[tup[f]];
      b += ft.b[tup[f]];
      fd_poly = trunc_mul(fd_poly, ft.fake_degrees[tup[f]], wd->rs.n_pos);
    }
    for (int c = 0; c < wd->cc.num; ++c) {
      i64 v = 1;
      for (int f = 0; f < nf; ++f)
        v *= fds[f]->table.values[tup[f]][wd->class_tuple[c][f]];
      row[c] = v;
    }
    wd->table.labels.push_back(label);
    wd->table.values.push_back(row);
    wd->table.dims.push_back(dim);
    wd->table.b.push_back(b);
    wd->table.fake_degrees.push_back(fd_poly);
    done = true;
    for (int f = nf - 1; f >= 0; --f) {
      if (++tup[f] < counts[f]) {
        done = false;
        break;
      }
      tup[f] = 0;
    }
  }
  weylgrp::check_orthogonality(wd->W, wd->cc, wd->table);
  find_trivial_and_sign(*wd);
  return wd;
}

}  // namespace

const WeylData& weyl_data(const CartanType& t, i64 order_cap) {
  i64 predicted = rootsys::weyl_order(t);
  if (predicted > order_cap)
    throw resource_error("Weyl group of " + t.str() + " has order " +
                         std::to_string(predicted) + " > cap " +
                         std::to_string(order_cap));
  static std::map<std::string, std::unique_ptr<WeylData>> cache;
  auto it = cache.find(t.str());
  if (it != cache.end()) return *it->second;

  std::unique_ptr<WeylData> wd;
  if (t.factors.empty())
    wd = build_torus_data();
  else if (t.irreducible())
    wd = build_irreducible(t, order_cap);
  else
    wd = build_product(t, order_cap);
  auto& slot = cache[t.str()];
  slot = std::move(wd);
  return *slot;
}

int j_induce(const Embedding& em, int sub_char_idx) {
  const WeylData& sub = *em.sub;
  const WeylData& parent = *em.parent;
  i64 b_src = sub.table.b[sub_char_idx];
  auto ind = induce(em, sub.table.values[sub_char_idx]);
  auto mult = decompose_character(parent, ind);
  auto context = [&]() {
    std::ostringstream os;
    os << "j-induction " << sub.type.str() << " -> " << parent.type.str()
       << " of " << sub.table.labels[sub_char_idx];
    return os.str();
  };
  i64 min_b = -1;
  for (int i = 0; i < parent.table.n_chars(); ++i)
    if (mult[i] > 0 && (min_b < 0 || parent.table.b[i] < min_b))
      min_b = parent.table.b[i];
  if (min_b != b_src)
    throw integrity_error(context() + ": minimal b " + std::to_string(min_b) +
                          " differs from source b " + std::to_string(b_src));
  int found = -1;
  for (int i = 0; i < parent.table.n_chars(); ++i) {
    if (mult[i] <= 0 || parent.table.b[i] != b_src) continue;
    if (found >= 0)
      throw integrity_error(context() + ": several constituents at minimal b");
    if (mult[i] != 1)
      throw integrity_error(context() + ": constituent at minimal b has multiplicity " +
                            std::to_string(mult[i]));
    found = i;
  }
  if (found < 0) throw integrity_error(context() + ": no constituent at minimal b");
  return found;
}

bool j_transitivity_check(const Embedding& sub_to_parent,
                          const Embedding& sub_to_mid,
                          const Embedding& mid_to_parent, int sub_char_idx) {
  int direct = j_induce(sub_to_parent, sub_char_idx);
  int through = j_induce(mid_to_parent, j_induce(sub_to_mid, sub_char_idx));
  return direct == through;
}

int reflection_char(const WeylData& wd) {
  if (!wd.type.irreducible())
    throw invalid_input("reflection character is defined per irreducible type");
  int found = -1;
  for (int i = 0; i < wd.table.n_chars(); ++i)
    if (wd.table.b[i] == 1) {
      if (found >= 0) throw integrity_error("several b = 1 characters");
      found = i;
    }
  if (found < 0) throw integrity_error("no b = 1 character");
  return found;
}

}  // namespace repops
