#include "partition.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "errors.hpp"

namespace wmath {

i64 part_sum(const Partition& p) {
  i64 s = 0;
  for (i64 x : p) s += x;
  return s;
}

Partition transpose(const Partition& p) {
  if (p.empty()) return {};
  Partition t((size_t)p[0], 0);
  for (i64 x : p)
    for (i64 j = 0; j < x; ++j) t[(size_t)j]++;
  return t;
}

i64 n_invariant(const Partition& p) {
  i64 s = 0;
  for (size_t i = 0; i < p.size(); ++i) s += (i64)i * p[i];
  return s;
}

std::string part_str(const Partition& p) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) os << ',';
    os << p[i];
  }
  os << ']';
  return os.str();
}

Partition parse_partition(const std::string& s) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw invalid_input("bad partition string: " + s);
  Partition p;
  std::string body = s.substr(1, s.size() - 2);
  if (body.empty()) return p;
  std::istringstream is(body);
  std::string tok;
  while (std::getline(is, tok, ',')) p.push_back(std::stoll(tok));
  for (size_t i = 0; i + 1 < p.size(); ++i)
    if (p[i] < p[i + 1]) throw invalid_input("partition not decreasing: " + s);
  return p;
}

bool dominance_leq(const Partition& lambda, const Partition& mu) {
  if (part_sum(lambda) != part_sum(mu))
    throw invalid_input("dominance comparison requires equal sizes");
  i64 a = 0, b = 0;
  size_t n = std::max(lambda.size(), mu.size());
  for (size_t i = 0; i < n; ++i) {
    a += i < lambda.size() ? lambda[i] : 0;
    b += i < mu.size() ? mu[i] : 0;
    if (a > b) return false;
  }
  return true;
}

std::vector<Partition> partitions_of(i64 n) {
  std::vector<Partition> out;
  Partition cur;
  // descending enumeration, largest part first
  struct Rec {
    std::vector<Partition>& out;
    Partition& cur;
    void go(i64 rest, i64 maxpart) {
      if (rest == 0) {
        out.push_back(cur);
        return;
      }
      for (i64 k = std::min(rest, maxpart); k >= 1; --k) {
        cur.push_back(k);
        go(rest - k, k);
        cur.pop_back();
      }
    }
  } rec{out, cur};
  rec.go(n, n);
  return out;
}

bool valid_partition(const Partition& p, Family f, i64 size) {
  if (part_sum(p) != size) return false;
  std::map<i64, i64> mult;
  for (i64 x : p) mult[x]++;
  switch (f) {
    case Family::A:
      return true;
    case Family::B:
    case Family::D:
      for (auto& [part, m] : mult)
        if (part % 2 == 0 && m % 2 != 0) return false;
      return true;
    case Family::C:
      for (auto& [part, m] : mult)
        if (part % 2 == 1 && m % 2 != 0) return false;
      return true;
    case Family::G:
      return false;  // G2 classes are not partition-labeled
  }
  return false;
}

std::vector<Partition> valid_partitions(Family f, i64 size) {
  std::vector<Partition> out;
  for (auto& p : partitions_of(size))
    if (valid_partition(p, f, size)) out.push_back(p);
  return out;
}

bool very_even(const Partition& p) {
  for (i64 x : p)
    if (x % 2) return false;
  return !p.empty();
}

Partition collapse(const Partition& lambda, Family f) {
  i64 size = part_sum(lambda);
  if (f == Family::B && size % 2 == 0)
    throw invalid_input("type B collapse needs odd size");
  if ((f == Family::C || f == Family::D) && size % 2 != 0)
    throw invalid_input("type C/D collapse needs even size");
  if (valid_partition(lambda, f, size)) return lambda;
  // Brute force at desk scale: the dominance-maximal valid partition below
  // lambda.  Uniqueness is a theorem; assert it.
  std::vector<Partition> cands;
  for (auto& p : valid_partitions(f, size))
    if (dominance_leq(p, lambda)) cands.push_back(p);
  if (cands.empty()) throw invalid_input("no valid collapse target");
  std::vector<Partition> maximal;
  for (auto& p : cands) {
    bool is_max = true;
    for (auto& q : cands)
      if (q != p && dominance_leq(p, q)) {
        is_max = false;
        break;
      }
    if (is_max) maximal.push_back(p);
  }
  if (maximal.size() != 1)
    throw integrity_error("collapse target not unique for " + part_str(lambda));
  return maximal[0];
}

std::vector<StripRemoval> remove_strips(const Partition& p, i64 k) {
  std::vector<StripRemoval> out;
  int len = (int)p.size();
  // beta-set: p_i + (len - 1 - i), strictly decreasing
  std::vector<i64> beta(len);
  for (int i = 0; i < len; ++i) beta[i] = p[i] + (len - 1 - i);
  for (int i = 0; i < len; ++i) {
    i64 b = beta[i];
    if (b - k < 0) continue;
    bool occupied = false;
    int leg = 0;
    for (int j = 0; j < len; ++j) {
      if (j == i) continue;
      if (beta[j] == b - k) occupied = true;
      if (beta[j] > b - k && beta[j] < b) ++leg;
    }
    if (occupied) continue;
    std::vector<i64> nb = beta;
    nb[i] = b - k;
    std::sort(nb.rbegin(), nb.rend());
    Partition rest;
    for (int j = 0; j < len; ++j) {
      i64 part = nb[j] - (len - 1 - j);
      if (part > 0) rest.push_back(part);
    }
    out.push_back({rest, leg});
  }
  return out;
}

namespace {

i64 mn_value(const Partition& lambda, const Partition& mu, size_t mi) {
  if (mi == mu.size()) return lambda.empty() ? 1 : 0;
  i64 k = mu[mi];
  i64 total = 0;
  for (auto& sr : remove_strips(lambda, k)) {
    i64 sign = (sr.height % 2) ? -1 : 1;
    total += sign * mn_value(sr.rest, mu, mi + 1);
  }
  return total;
}

i64 wreath_value(const Partition& alpha, const Partition& beta,
                 const std::vector<std::pair<i64, int>>& cycles, size_t ci) {
  if (ci == cycles.size()) return (alpha.empty() && beta.empty()) ? 1 : 0;
  auto [k, eps] = cycles[ci];
  i64 total = 0;
  for (auto& sr : remove_strips(alpha, k)) {
    i64 sign = (sr.height % 2) ? -1 : 1;
    total += sign * wreath_value(sr.rest, beta, cycles, ci + 1);
  }
  for (auto& sr : remove_strips(beta, k)) {
    i64 sign = (sr.height % 2) ? -1 : 1;
    total += eps * sign * wreath_value(alpha, sr.rest, cycles, ci + 1);
  }
  return total;
}

}  // namespace

i64 sn_char_value(const Partition& lambda, const Partition& mu) {
  if (part_sum(lambda) != part_sum(mu))
    throw invalid_input("character value needs |lambda| = |mu|");
  return mn_value(lambda, mu, 0);
}

i64 hyperoct_char_value(const Partition& alpha, const Partition& beta,
                        const Partition& mu, const Partition& nu) {
  if (part_sum(alpha) + part_sum(beta) != part_sum(mu) + part_sum(nu))
    throw invalid_input("hyperoctahedral character size mismatch");
  std::vector<std::pair<i64, int>> cycles;
  for (i64 k : mu) cycles.push_back({k, 1});
  for (i64 k : nu) cycles.push_back({k, -1});
  return wreath_value(alpha, beta, cycles, 0);
}

std::string bipart_str(const Bipartition& b) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < b.alpha.size(); ++i) {
    if (i) os << ',';
    os << b.alpha[i];
  }
  os << '|';
  for (size_t i = 0; i < b.beta.size(); ++i) {
    if (i) os << ',';
    os << b.beta[i];
  }
  os << ']';
  return os.str();
}

std::vector<Bipartition> bipartitions_of(i64 n) {
  std::vector<Bipartition> out;
  for (i64 a = n; a >= 0; --a)
    for (auto& pa : partitions_of(a))
      for (auto& pb : partitions_of(n - a)) out.push_back({pa, pb});
  return out;
}

i64 hyperoct_b(const Bipartition& bp) {
  return 2 * n_invariant(bp.alpha) + 2 * n_invariant(bp.beta) +
         part_sum(bp.beta);
}

}  // namespace wmath
