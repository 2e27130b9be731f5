#pragma once

// Extremal machinery: the Kővári–Sós–Turán edge ceiling for K_{s,t}-free
// bipartite graphs in exact arithmetic, grid-freeness checks, and the
// nine-term product-count audit that ties the power graphs back to counting.

#include <array>
#include <vector>

#include "shiftpow/int_arith.hpp"
#include "shiftpow/power_graph.hpp"

namespace shiftpow {

// Edge ceiling (s-1)^{1/t} (nv-t+1) m^{1-1/t} + (t-1) m for a bipartite graph
// with |U| = m, |V| = nv containing no s vertices of U and t of V that are
// fully joined.  float_value is rounded upward; the exact comparison clears
// the radical:  E <= (t-1) m  or  (E - (t-1) m)^t <= (s-1)(nv-t+1)^t m^{t-1}.
struct KstBound {
  Int m, nv;
  int s = 1, t = 1;
  double float_value = 0;
  bool degenerate = false;  // t > nv; only the (t-1)m branch is meaningful

  bool satisfied_by(const Int& edges) const;
};

KstBound kst_edge_bound(const Int& m, const Int& nv, int s, int t);

// No K_{s,t} with s rows from left and t columns from right; brute force via
// find_grid, guarded to |left| <= 1000.
bool is_kst_free(const PowerGraph& g, int s, int t);

enum class AuditStatus { not_applicable, holds, violation };

// Edge-count audit in the ceiling's native orientation: U is the RIGHT side
// (m = |right|) and V the LEFT side (nv = |left|), so the freeness
// precondition reads "no t left rows share s right columns".
struct KstAuditReport {
  AuditStatus status = AuditStatus::not_applicable;
  Int edges;
  KstBound bound;
};
KstAuditReport kst_audit(const PowerGraph& g, int s, int t);

// Nine-term ceiling on the number of products a*b <= X landing in a shifted
// k-th power set.  Counting-function cutoffs A(X^{1/2}), A(X^{1/3}) are exact
// (integer root comparisons); the fractional powers of counts are evaluated
// in floating point and rounded upward, so `holds` below is conservative and
// a violation is genuine.
struct ProductCountRhs {
  std::array<double, 9> terms{};
  double total = 0;
  static const std::array<const char*, 9>& term_names();
};
ProductCountRhs product_count_rhs(const FiniteSet& A, const FiniteSet& B,
                                  const Int& X);

struct ProductCountAudit {
  Int q_count;           // distinct v = a*b <= X with v - n a k-th power
  ProductCountRhs rhs;
  bool applicable = false;  // X >= scale_threshold(n, k)
  bool holds = false;       // q_count <= rhs.total
  double density_ratio = 0; // q_count / X^{1/k}, reported only
};

// Counts Q(X) = |{v = a*b <= X : v - n is a k-th power of a positive
// integer}| value-wise (distinct products) and compares against the
// nine-term ceiling.  n != 0 and k >= 3 required.  A violation together with
// applicable = true falsifies the derivation and deserves a loud report.
ProductCountAudit product_count_audit(const FiniteSet& A, const FiniteSet& B,
                                      const Int& n, int k, const Int& X,
                                      int workers = 1);

}  // namespace shiftpow
