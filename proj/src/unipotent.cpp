#include "unipotent.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "errors.hpp"
#include "json.hpp"
#include "repops.hpp"
#include "weylgrp.hpp"

namespace unipotent {

using wmath::Bipartition;

int UnipotentTable::index_of(const std::string& label, int very_even) const {
  for (int i = 0; i < (int)classes.size(); ++i)
    if (classes[i].label == label && classes[i].very_even == very_even)
      return i;
  return -1;
}

const UnipotentClass& UnipotentTable::by_label(const std::string& label,
                                               int very_even) const {
  int i = index_of(label, very_even);
  if (i < 0)
    throw integrity_error("no unipotent class " + label + " in " +
                          std::string(1, (char)family) + std::to_string(rank));
  return classes[i];
}

i64 partition_size(Family f, int rank) {
  switch (f) {
    case Family::A: return rank + 1;
    case Family::B: return 2 * rank + 1;
    case Family::C:
    case Family::D: return 2 * rank;
    case Family::G: throw invalid_input("G2 classes are not partitions");
  }
  return 0;
}

i64 group_dim(Family f, int rank) {
  return rootsys::root_count({f, rank}) + rank;
}

i64 class_dim(Family f, int rank, const Partition& lambda) {
  i64 N = partition_size(f, rank);
  if (wmath::part_sum(lambda) != N)
    throw invalid_input("partition size mismatch in class_dim");
  Partition t = wmath::transpose(lambda);
  i64 sq = 0;
  for (i64 x : t) sq += x * x;
  i64 odd = 0;
  for (i64 x : lambda)
    if (x % 2) ++odd;
  i64 twice = 0;
  switch (f) {
    case Family::A:
      twice = 2 * (N * N - sq);
      break;
    case Family::B:
    case Family::D:
      twice = N * N - N - sq + odd;
      break;
    case Family::C:
      twice = N * N + N - sq - odd;
      break;
    case Family::G:
      throw invalid_input("class_dim: G2 dims are curated");
  }
  if (twice % 2 != 0) throw integrity_error("odd class dimension doubled");
  return twice / 2;
}

// ---------------------------------------------------------------------------
// Springer symbols

Bipartition springer_symbol(Family f, const Partition& lambda) {
  Partition lam = lambda;
  // pad with zeros: odd length for B, even length for C and D
  bool want_odd = (f == Family::B);
  if (((lam.size() % 2) == 1) != want_odd) lam.push_back(0);
  int len = (int)lam.size();
  std::vector<i64> star(len);
  for (int i = 0; i < len; ++i) star[i] = lam[i] + (len - 1 - i);
  std::vector<i64> xi_raw, eta_raw;
  for (i64 v : star)
    (v % 2 ? xi_raw : eta_raw).push_back((v % 2) ? (v - 1) / 2 : v / 2);
  std::sort(xi_raw.rbegin(), xi_raw.rend());
  std::sort(eta_raw.rbegin(), eta_raw.rend());
  auto strip = [](std::vector<i64>& v) {
    int n = (int)v.size();
    Partition out;
    for (int i = 0; i < n; ++i) {
      i64 part = v[i] - (n - 1 - i);
      if (part < 0) throw integrity_error("negative symbol entry");
      if (part > 0) out.push_back(part);
    }
    return out;
  };
  Bipartition bp{strip(xi_raw), strip(eta_raw)};
  return bp;
}

namespace {

std::vector<std::pair<Partition, int>> enumerate_classes(Family f, int rank) {
  i64 N = partition_size(f, rank);
  std::vector<std::pair<Partition, int>> out;
  for (auto& p : wmath::valid_partitions(f, N)) {
    if (f == Family::D && wmath::very_even(p)) {
      out.push_back({p, 1});
      out.push_back({p, 2});
    } else {
      out.push_back({p, 0});
    }
  }
  return out;
}

std::string springer_label_bc(Family f, const Partition& lam) {
  Bipartition bp = springer_symbol(f, lam);
  return wmath::bipart_str(bp);
}

// For D_n: match the restriction of the B_n character (xi; eta) into the
// type-D table by exact value vectors.  Split pairs (xi == eta) decompose
// into the two halves; the I/II attachment is conventional.
void springer_labels_d(int rank, const std::vector<std::pair<Partition, int>>& cls,
                       std::vector<std::string>& out) {
  const weylgrp::WeylData& wd =
      repops::weyl_data(CartanType::simple(Family::D, rank));
  out.assign(cls.size(), "");
  for (size_t i = 0; i < cls.size(); ++i) {
    if (!out[i].empty()) continue;
    Bipartition bp = springer_symbol(Family::D, cls[i].first);
    std::vector<i64> res(wd.cc.num);
    for (int c = 0; c < wd.cc.num; ++c)
      res[c] = weylgrp::bn_char_value_on(wd.rs, wd.W, wd.cc.rep[c], bp);
    if (bp.alpha == bp.beta) {
      if (!wmath::very_even(cls[i].first))
        throw integrity_error("split symbol for a class that is not very even");
      auto mult = repops::decompose_character(wd, res);
      std::vector<int> parts;
      for (int k = 0; k < wd.table.n_chars(); ++k) {
        if (mult[k] == 0) continue;
        if (mult[k] != 1) throw integrity_error("split restriction not multiplicity-free");
        parts.push_back(k);
      }
      if (parts.size() != 2) throw integrity_error("split restriction is not a pair");
      // table order is deterministic; attach I to the first row
      size_t j = i + 1;
      if (j >= cls.size() || cls[j].first != cls[i].first)
        throw integrity_error("very even classes not adjacent");
      out[i] = wd.table.labels[parts[0]];
      out[j] = wd.table.labels[parts[1]];
    } else {
      if (wmath::very_even(cls[i].first))
        throw integrity_error("very even class without split symbol");
      int found = -1;
      for (int k = 0; k < wd.table.n_chars(); ++k)
        if (wd.table.values[k] == res) {
          if (found >= 0) throw integrity_error("ambiguous D-restriction match");
          found = k;
        }
      if (found < 0)
        throw integrity_error("restricted symbol character not found in D-table");
      out[i] = wd.table.labels[found];
    }
  }
}

}  // namespace

UnipotentTable generate_table(Family f, int rank) {
  UnipotentTable t;
  t.family = f;
  t.rank = rank;
  if (f == Family::A) {
    t.provenance = "computed: partition classification of type A";
    for (auto& lam : wmath::partitions_of(rank + 1)) {
      UnipotentClass c;
      c.label = wmath::part_str(lam);
      c.lambda = lam;
      c.dim = class_dim(f, rank, lam);
      c.springer = wmath::part_str(lam);
      t.classes.push_back(c);
    }
    return t;
  }
  if (f == Family::G)
    throw invalid_input("the G2 table is curated, not generated");
  t.provenance =
      "generated by the symbol algorithm; validated by the b-identity, "
      "injectivity and anchor suite";
  auto cls = enumerate_classes(f, rank);
  std::vector<std::string> labels(cls.size());
  if (f == Family::D) {
    springer_labels_d(rank, cls, labels);
  } else {
    for (size_t i = 0; i < cls.size(); ++i)
      labels[i] = springer_label_bc(f, cls[i].first);
  }
  for (size_t i = 0; i < cls.size(); ++i) {
    UnipotentClass c;
    c.lambda = cls[i].first;
    c.very_even = cls[i].second;
    c.label = wmath::part_str(c.lambda);
    c.dim = class_dim(f, rank, c.lambda);
    c.springer = labels[i];
    t.classes.push_back(c);
  }
  return t;
}

std::string data_dir() {
  if (const char* env = std::getenv("WEYL_STRATA_DATA")) return env;
#ifdef WSTRATA_DEFAULT_DATA_DIR
  return WSTRATA_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

namespace {

UnipotentTable load_table(Family f, int rank) {
  std::string fname = data_dir() + "/springer_" +
                      std::string(1, (char)std::tolower((char)f)) +
                      std::to_string(rank) + ".json";
  std::ifstream in(fname);
  if (!in)
    throw integrity_error("cannot open curated data file " + fname);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw integrity_error("malformed data file " + fname + ": " + e.what());
  }
  UnipotentTable t;
  if (!j.contains("family") || !j.contains("rank") || !j.contains("classes") ||
      !j.contains("provenance"))
    throw integrity_error("data file " + fname + " misses required fields");
  std::string fam = j["family"].get<std::string>();
  if (fam.size() != 1 || fam[0] != (char)f || j["rank"].get<int>() != rank)
    throw integrity_error("data file " + fname + " labels the wrong type");
  t.family = f;
  t.rank = rank;
  t.provenance = j["provenance"].get<std::string>();
  for (auto& cj : j["classes"]) {
    UnipotentClass c;
    c.label = cj.at("label").get<std::string>();
    c.dim = cj.at("dim").get<i64>();
    c.springer = cj.at("springer").get<std::string>();
    if (cj.contains("very_even")) {
      std::string ve = cj["very_even"].get<std::string>();
      if (ve == "I")
        c.very_even = 1;
      else if (ve == "II")
        c.very_even = 2;
      else
        throw integrity_error("bad very_even flag in " + fname);
    }
    if (f != Family::G) c.lambda = wmath::parse_partition(c.label);
    t.classes.push_back(c);
  }
  return t;
}

void validate_g2(const UnipotentTable& t) {
  const weylgrp::WeylData& wd = repops::weyl_data(CartanType::simple(Family::G, 2));
  if (t.classes.size() != 5) throw integrity_error("G2 must have 5 classes");
  std::set<i64> dims;
  for (auto& c : t.classes) dims.insert(c.dim);
  if (dims != std::set<i64>{0, 6, 8, 10, 12})
    throw integrity_error("G2 class dimensions must be {0,6,8,10,12}");
  for (auto& c : t.classes) {
    int ci = wd.table.index_of_label(c.springer);
    if (ci < 0) throw integrity_error("unknown G2 springer label " + c.springer);
    i64 want_b = (group_dim(Family::G, 2) - c.dim - 2) / 2;
    if (wd.table.b[ci] != want_b)
      throw integrity_error("G2 b-identity fails for class " + c.label);
  }
  // semantic pins beyond the b-identity: the dim-6 class carries the linear
  // character that is -1 exactly on reflections in short roots (the pattern
  // the symbol algorithm produces for the minimal class in types B and C)
  wmath::IVec a1(2, 0), a2(2, 0);
  a1[0] = 1;
  a2[1] = 1;
  bool a1_short = wd.rs.norm(a1) < wd.rs.norm(a2);
  const wmath::IVec& short_root = a1_short ? a1 : a2;
  const wmath::IVec& long_root = a1_short ? a2 : a1;
  int short_cls = wd.cc.class_of[wd.W.index_of(wd.rs.reflection_matrix(short_root))];
  int long_cls = wd.cc.class_of[wd.W.index_of(wd.rs.reflection_matrix(long_root))];
  for (auto& c : t.classes) {
    int ci = wd.table.index_of_label(c.springer);
    if (c.dim == 6) {
      if (wd.table.dims[ci] != 1 ||
          wd.table.values[ci][short_cls] != -1 ||
          wd.table.values[ci][long_cls] != 1)
        throw integrity_error(
            "G2 minimal class must carry the short-reflection sign character");
    }
    if (c.dim == 8 && wd.table.dims[ci] != 2)
      throw integrity_error("G2 dim-8 class must carry a 2-dimensional character");
  }
}

}  // namespace

void validate_table(const UnipotentTable& t) {
  if (t.family == Family::G) {
    validate_g2(t);
    return;
  }
  const weylgrp::WeylData& wd =
      repops::weyl_data(CartanType::simple(t.family, t.rank));
  auto expected = enumerate_classes(t.family, t.rank);
  if (expected.size() != t.classes.size())
    throw integrity_error("class list incomplete for " +
                          std::string(1, (char)t.family) + std::to_string(t.rank));
  for (size_t i = 0; i < expected.size(); ++i) {
    int idx = t.index_of(wmath::part_str(expected[i].first), expected[i].second);
    if (idx < 0) throw integrity_error("missing class " +
                                       wmath::part_str(expected[i].first));
  }
  std::set<std::string> springer_seen;
  i64 dG = group_dim(t.family, t.rank);
  for (auto& c : t.classes) {
    if (c.dim != class_dim(t.family, t.rank, c.lambda))
      throw integrity_error("class dimension mismatch at " + c.label);
    if (c.dim % 2 != 0) throw integrity_error("odd class dimension at " + c.label);
    int ci = wd.table.index_of_label(c.springer);
    if (ci < 0) throw integrity_error("unknown springer label " + c.springer);
    i64 want_b = dG - c.dim - t.rank;
    if (want_b % 2 != 0) throw integrity_error("odd Springer-fiber dimension");
    if (wd.table.b[ci] != want_b / 2)
      throw integrity_error("b-identity fails at class " + c.label + " of " +
                            std::string(1, (char)t.family) +
                            std::to_string(t.rank));
    if (!springer_seen.insert(c.springer).second)
      throw integrity_error("springer map not injective at " + c.springer);
  }
  // anchors: trivial -> sign, regular -> trivial, subregular -> reflection
  i64 N = partition_size(t.family, t.rank);
  Partition triv_part(N, 1);
  const UnipotentClass& triv = t.by_label(wmath::part_str(triv_part));
  if (triv.springer != wd.table.labels[wd.table.sign])
    throw integrity_error("trivial class is not matched with the sign character");
  i64 reg_dim = dG - t.rank;
  int regs = 0, subregs = 0;
  for (auto& c : t.classes) {
    if (c.dim == reg_dim) {
      ++regs;
      if (c.springer != wd.table.labels[wd.table.trivial])
        throw integrity_error("regular class is not matched with the trivial character");
    }
    if (c.dim == reg_dim - 2) {
      ++subregs;
      if (c.springer != wd.table.labels[repops::reflection_char(wd)])
        throw integrity_error("subregular class is not matched with the reflection character");
    }
  }
  if (regs != 1 || subregs != 1)
    throw integrity_error("regular/subregular class not unique");
}

const UnipotentTable& unipotent_table(Family f, int rank) {
  static std::map<std::string, UnipotentTable> cache;
  std::string key = std::string(1, (char)f) + std::to_string(rank);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  UnipotentTable t;
  if (f == Family::A)
    t = generate_table(f, rank);
  else {
    t = load_table(f, rank);
    validate_table(t);
  }
  return cache.emplace(key, std::move(t)).first->second;
}

// ---------------------------------------------------------------------------
// induction

bool dominance_leq(const Partition& a, const Partition& b) {
  return wmath::dominance_leq(a, b);
}

namespace {

Partition padded_sum(const std::vector<Partition>& parts, size_t len) {
  Partition out(len, 0);
  for (auto& p : parts)
    for (size_t i = 0; i < p.size(); ++i) out[i] += p[i];
  while (!out.empty() && out.back() == 0) out.pop_back();
  for (size_t i = 0; i + 1 < out.size(); ++i)
    if (out[i] < out[i + 1])
      throw integrity_error("coordinatewise sum is not a partition");
  return out;
}

}  // namespace

InducedClass ls_induce(const InductionDatum& d) {
  i64 N = partition_size(d.target_family, d.target_rank);
  size_t width = (size_t)N + 1;
  if (d.target_family == Family::A) {
    if (!d.core.empty())
      throw invalid_input("type A Levis have no same-type core");
    i64 total = 0;
    for (auto& p : d.gl_parts) total += wmath::part_sum(p);
    if (total != N) throw invalid_input("type A Levi sizes do not sum to n");
    InducedClass out;
    out.lambda = padded_sum(d.gl_parts, width);
    return out;
  }
  i64 total = wmath::part_sum(d.core);
  for (auto& p : d.gl_parts) total += 2 * wmath::part_sum(p);
  if (total != N)
    throw invalid_input("Levi decomposition sizes do not match the target");
  std::vector<Partition> doubled;
  for (auto& p : d.gl_parts) {
    Partition q = p;
    for (auto& x : q) x *= 2;
    doubled.push_back(q);
  }
  doubled.push_back(d.core);
  Partition sum = padded_sum(doubled, width);
  InducedClass out;
  out.lambda = wmath::collapse(sum, d.target_family);
  out.very_even_ambiguous =
      d.target_family == Family::D && wmath::very_even(out.lambda);
  return out;
}

Partition b1_core_partition(const Partition& a1_class) {
  if (a1_class == Partition{2}) return {3};
  if (a1_class == Partition{1, 1}) return {1, 1, 1};
  throw invalid_input("not an A1 class: " + wmath::part_str(a1_class));
}

Partition d2_core_partition(const Partition& first, const Partition& second,
                            int& very_even_flag) {
  bool r1 = first == Partition{2}, r2 = second == Partition{2};
  bool t1 = first == Partition{1, 1}, t2 = second == Partition{1, 1};
  if ((!r1 && !t1) || (!r2 && !t2))
    throw invalid_input("not an A1 x A1 class pair");
  very_even_flag = 0;
  if (r1 && r2) return {3, 1};
  if (t1 && t2) return {1, 1, 1, 1};
  very_even_flag = r1 ? 1 : 2;  // conventional; flagged ambiguous downstream
  return {2, 2};
}

Partition d3_core_partition(const Partition& a3_class) {
  if (a3_class == Partition{4}) return {5, 1};
  if (a3_class == Partition{3, 1}) return {3, 3};
  if (a3_class == Partition{2, 2}) return {3, 1, 1, 1};
  if (a3_class == Partition{2, 1, 1}) return {2, 2, 1, 1};
  if (a3_class == Partition{1, 1, 1, 1}) return {1, 1, 1, 1, 1, 1};
  throw invalid_input("not an A3 class: " + wmath::part_str(a3_class));
}

Partition a3_class_from_d3_core(const Partition& d3_part) {
  for (auto& p : wmath::partitions_of(4))
    if (d3_core_partition(p) == d3_part) return p;
  throw invalid_input("not a D3 core partition: " + wmath::part_str(d3_part));
}

}  // namespace unipotent
