#include "shiftpow/gap.hpp"

#include <algorithm>
#include <cmath>

#include "shiftpow/parallel.hpp"
#include "shiftpow/power_graph.hpp"

namespace shiftpow {

Rational gap_lower_bound(const Int& a, const Int& c, const ShiftParams& p) {
  if (a < 1 || c < 1)
    throw std::invalid_argument("gap_lower_bound: a and c must be >= 1");
  const int k = p.k;
  Int num = pow_int(k, k) * pow_int(a * c, k - 1);
  Int den = pow_int(4, k - 1) * pow_int(p.abs_shift(), k);
  return Rational(std::move(num), std::move(den));
}

GapVerdict check_gap_instance(const Int& a, const Int& b, const Int& c,
                              const Int& d, const ShiftParams& p) {
  if (p.k < 3)
    throw std::invalid_argument("check_gap_instance: k must be >= 3");
  if (a < 1 || b < 1 || c < 1 || d < 1)
    throw std::invalid_argument("check_gap_instance: inputs must be >= 1");
  const int k = p.k;
  GapVerdict v;
  Int ac = a * c;
  v.bound_num = pow_int(k, k) * pow_int(ac, k - 1);
  v.bound_den = pow_int(4, k - 1) * pow_int(p.abs_shift(), k);
  v.actual = b * d;

  bool applicable = a < b && c < d && ac >= 2 * p.abs_shift() &&
                    shifted_power_witness(a, c, p) &&
                    shifted_power_witness(b, c, p) &&
                    shifted_power_witness(a, d, p) &&
                    shifted_power_witness(b, d, p);
  if (!applicable) return v;
  v.status = v.actual * v.bound_den >= v.bound_num ? GapStatus::holds
                                                   : GapStatus::violation;
  return v;
}

GapScanReport scan_gap_instances(const Int& ab_max, const Int& cd_max,
                                 const ShiftParams& p) {
  if (p.k < 3)
    throw std::invalid_argument("scan_gap_instances: k must be >= 3");
  if (ab_max < 1 || cd_max < 1)
    throw std::invalid_argument("scan_gap_instances: bounds must be >= 1");
  if (ab_max > 20000 || cd_max > 20000)
    throw std::invalid_argument("scan_gap_instances: bounds above 20000 exceed the bitmap guard");
  const uint64_t amax = to_u64(ab_max);
  const uint64_t cmax = to_u64(cd_max);

  // adjacency bitmap: row u -> bits over c in [1, cd_max]
  const size_t words = (cmax + 64) / 64;
  std::vector<uint64_t> bits((amax + 1) * words, 0);
  for (uint64_t u = 1; u <= amax; ++u) {
    for (const Int& c : right_neighbors(Int(u), p, Int(cmax))) {
      uint64_t cv = to_u64(c);
      bits[u * words + (cv >> 6)] |= uint64_t{1} << (cv & 63);
    }
  }

  GapScanReport rep;
  std::vector<uint64_t> common;
  for (uint64_t a = 1; a < amax; ++a) {
    const uint64_t* ra = &bits[a * words];
    for (uint64_t b = a + 1; b <= amax; ++b) {
      const uint64_t* rb = &bits[b * words];
      common.clear();
      for (size_t w = 0; w < words; ++w) {
        uint64_t x = ra[w] & rb[w];
        while (x) {
          int bit = __builtin_ctzll(x);
          x &= x - 1;
          common.push_back((w << 6) + static_cast<uint64_t>(bit));
        }
      }
      for (size_t i = 0; i < common.size(); ++i)
        for (size_t j = i + 1; j < common.size(); ++j) {
          ++rep.quadruples_checked;
          GapVerdict v =
              check_gap_instance(Int(a), Int(b), Int(common[i]), Int(common[j]), p);
          if (v.status == GapStatus::not_applicable) continue;
          if (v.status == GapStatus::violation) ++rep.violations;
          rep.applicable.push_back(
              {Int(a), Int(b), Int(common[i]), Int(common[j]), std::move(v)});
        }
    }
  }
  return rep;
}

std::vector<Int> common_shift_pairs(const Int& a1, const Int& a2,
                                    const ShiftParams& p, const Int& X) {
  if (a1 < 1) throw std::invalid_argument("common_shift_pairs: a1 must be >= 1");
  if (a1 >= a2) throw std::invalid_argument("common_shift_pairs: requires a1 < a2");
  if (X < 1) throw std::invalid_argument("common_shift_pairs: X must be >= 1");
  auto n1 = right_neighbors(a1, p, X);
  auto n2 = right_neighbors(a2, p, X);
  std::vector<Int> out;
  std::set_intersection(n1.begin(), n1.end(), n2.begin(), n2.end(),
                        std::back_inserter(out));
  return out;
}

PairCountReport audit_common_pairs(const Int& a1, const Int& a2,
                                   const ShiftParams& p, const Int& X) {
  if (p.k < 3)
    throw std::invalid_argument("audit_common_pairs: k must be >= 3");
  if (X < 16)
    throw std::invalid_argument("audit_common_pairs: X must be >= 16");
  PairCountReport rep;
  rep.pairs = common_shift_pairs(a1, a2, p, X);
  rep.threshold = 2.0 * std::log(std::log(X.get_d()));
  rep.flagged = static_cast<double>(rep.pairs.size()) > rep.threshold + 1.0;
  return rep;
}

SplitScanReport scan_split_quadruples(const ShiftParams& p, const Int& X,
                                      int workers) {
  if (p.k < 3)
    throw std::invalid_argument("scan_split_quadruples: k must be >= 3");
  if (X < 1)
    throw std::invalid_argument("scan_split_quadruples: X must be >= 1");
  SplitScanReport rep;
  rep.theorem_applicable =
      X > pow_int(4, 6UL * (p.k - 1)) * pow_int(p.abs_shift(), 6UL * p.k);

  // a in (X^{1/3}, X^{1/2}]:  a^3 > X  and  a^2 <= X
  // b in (X^{1/2}, X]:        b^2 > X
  const Int a_lo = integer_kth_root(X, 3) + 1;
  const Int a_hi = integer_kth_root(X, 2);
  const Int b_lo = a_hi + 1;
  if (a_lo > a_hi) return rep;
  if (!fits_u64(X))
    throw std::invalid_argument("scan_split_quadruples: X too large for exhaustive scan");

  struct Cand {
    Int a;
    std::vector<Int> bs;
  };
  const uint64_t lo = to_u64(a_lo), hi = to_u64(a_hi);
  const uint64_t n = hi - lo + 1;
  const uint64_t chunk = std::max<uint64_t>(64, n / (uint64_t)(workers * 16 + 1));
  const size_t nchunks = static_cast<size_t>((n + chunk - 1) / chunk);
  std::vector<std::vector<Cand>> slots(nchunks);
  parallel_chunks(lo, hi + 1, chunk, workers,
                  [&](uint64_t cb, uint64_t ce, size_t ci) {
                    for (uint64_t a = cb; a < ce; ++a) {
                      auto bs = right_neighbors_in(Int(a), p, b_lo, X);
                      if (bs.size() >= 2) slots[ci].push_back({Int(a), std::move(bs)});
                    }
                  });
  std::vector<Cand> cands;
  for (auto& s : slots)
    for (auto& c : s) cands.push_back(std::move(c));

  for (size_t i = 0; i + 1 < cands.size(); ++i)
    for (size_t j = i + 1; j < cands.size(); ++j) {
      std::vector<Int> common;
      std::set_intersection(cands[i].bs.begin(), cands[i].bs.end(),
                            cands[j].bs.begin(), cands[j].bs.end(),
                            std::back_inserter(common));
      for (size_t x = 0; x + 1 < common.size(); ++x)
        for (size_t y = x + 1; y < common.size(); ++y)
          rep.quadruples.push_back(
              {cands[i].a, cands[j].a, common[x], common[y]});
    }
  std::sort(rep.quadruples.begin(), rep.quadruples.end(),
            [](const SplitQuadruple& l, const SplitQuadruple& r) {
              if (l.a1 != r.a1) return l.a1 < r.a1;
              if (l.a2 != r.a2) return l.a2 < r.a2;
              if (l.b1 != r.b1) return l.b1 < r.b1;
              return l.b2 < r.b2;
            });
  return rep;
}

}  // namespace shiftpow
