#pragma once

// The gap principle and its two consequences: on a 2x2 grid a < b, c < d with
// ac >= 2|shift| and all four of ac, bc, ad, bd shifted into k-th powers, the
// product bd must reach k^k (ac)^{k-1} / (4^{k-1} |shift|^k).  The scanners
// here hunt for counterexamples; none can exist, so every hit is an
// implementation bug or a falsification worth shouting about.

#include <cstdint>
#include <vector>

#include "shiftpow/int_arith.hpp"

namespace shiftpow {

enum class GapStatus { not_applicable, holds, violation };

struct GapVerdict {
  GapStatus status = GapStatus::not_applicable;
  Int bound_num;  // k^k (ac)^{k-1}
  Int bound_den;  // 4^{k-1} |shift|^k
  Int actual;     // b*d
};

// k^k (ac)^{k-1} / (4^{k-1} |shift|^k), reduced
Rational gap_lower_bound(const Int& a, const Int& c, const ShiftParams& p);

// Preconditions are evaluated, not assumed: not_applicable unless a < b,
// c < d, ac >= 2|shift| and all four shifted products have power witnesses;
// otherwise holds/violation by exact comparison of bd * bound_den with
// bound_num.  k < 3 is rejected.
GapVerdict check_gap_instance(const Int& a, const Int& b, const Int& c,
                              const Int& d, const ShiftParams& p);

struct GapQuadruple {
  Int a, b, c, d;
  GapVerdict verdict;
};

struct GapScanReport {
  std::vector<GapQuadruple> applicable;  // quadruples whose preconditions held
  uint64_t quadruples_checked = 0;       // candidates with all four witnesses
  uint64_t violations = 0;
};

// Exhaustive over a < b <= ab_max, c < d <= cd_max.  Candidate quadruples are
// located through per-row adjacency bitmaps, so only pairs sharing two common
// columns are ever materialized.
GapScanReport scan_gap_instances(const Int& ab_max, const Int& cd_max,
                                 const ShiftParams& p);

// all b in [1, X] with a1*b + shift and a2*b + shift both k-th powers,
// computed by intersecting the two neighbor enumerations
std::vector<Int> common_shift_pairs(const Int& a1, const Int& a2,
                                    const ShiftParams& p, const Int& X);

// Count vs the 2 ln ln X ceiling.  The ceiling only binds for X large, so the
// audit flags only past a guard margin of one and records the raw comparison.
struct PairCountReport {
  std::vector<Int> pairs;
  double threshold = 0;  // 2 ln ln X
  bool flagged = false;  // |pairs| > threshold + 1
};
PairCountReport audit_common_pairs(const Int& a1, const Int& a2,
                                   const ShiftParams& p, const Int& X);

// 2x2 grids straddling the split ranges:
// X^{1/3} < a1 < a2 <= X^{1/2} < b1 < b2 <= X, all four products shifted
// k-th powers.  Range membership is decided by exact cube/square comparisons.
struct SplitQuadruple {
  Int a1, a2, b1, b2;
};
struct SplitScanReport {
  std::vector<SplitQuadruple> quadruples;  // sorted lexicographically
  bool theorem_applicable = false;         // X > 4^{6(k-1)} |shift|^{6k}
};
SplitScanReport scan_split_quadruples(const ShiftParams& p, const Int& X,
                                      int workers = 1);

}  // namespace shiftpow
