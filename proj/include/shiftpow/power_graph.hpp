#pragma once

// Bipartite shifted-power graphs: edge (a, b) present iff a*b + shift is a
// k-th power of a positive integer.  Edges are enumerated from the power side
// (iterate y, keep b = (y^k - shift)/a when the division is exact), costing
// O((a X)^{1/k}) divisibility tests per left vertex instead of O(X) power
// tests.

#include <cstdint>
#include <optional>
#include <vector>

#include "shiftpow/int_arith.hpp"

namespace shiftpow {

struct PowerGraph {
  ShiftParams params;
  std::vector<Int> left;   // strictly increasing, >= 1
  std::vector<Int> right;  // strictly increasing, >= 1
  // per left vertex: ascending indices into right
  std::vector<std::vector<uint32_t>> adj;

  // right = union of neighbor enumerations over left, restricted to [1, X]
  static PowerGraph build(std::vector<Int> left_vertices, const ShiftParams& p,
                          const Int& X, int workers = 1);

  // Synthetic adjacency for tests and experiments; no predicate consistency
  // is implied, and grid witnesses found on such graphs carry zero roots.
  static PowerGraph from_adjacency(std::vector<Int> left_vertices,
                                   std::vector<Int> right_vertices,
                                   std::vector<std::vector<uint32_t>> adjacency,
                                   const ShiftParams& p);

  size_t edge_count() const;
};

// all b in [1, X] with a*b + shift a k-th power, ascending
std::vector<Int> right_neighbors(const Int& a, const ShiftParams& p, const Int& X);

// neighbors restricted to [bmin, bmax]
std::vector<Int> right_neighbors_in(const Int& a, const ShiftParams& p,
                                    const Int& bmin, const Int& bmax);

struct NeighborSweepRow {
  Int a;
  std::vector<Int> bs;
};

// neighbor lists for every a in [a_lo, a_hi] that has at least one neighbor
// in [1, X]; ascending in a and independent of the worker count
std::vector<NeighborSweepRow> neighbors_sweep(const Int& a_lo, const Int& a_hi,
                                              const ShiftParams& p, const Int& X,
                                              int workers = 1);

struct GridConstraints {
  std::optional<Int> min_col;   // keep columns >= this value
  bool rows_below_cols = false; // require max(rows) <= min(cols)
};

// s rows plus their maximal common column set (>= t columns) and the k-th
// roots of row*col + shift.  roots[i][j]^k == rows[i]*cols[j] + shift; zero
// when the graph was built from synthetic adjacency.
struct GridWitness {
  std::vector<Int> rows;
  std::vector<Int> cols;
  std::vector<std::vector<Int>> roots;
};

// All K_{s,t} bicliques with rows from left and columns from right, one
// witness per row subset carrying the maximal qualifying column set
// (sub-grids are implied).  Complete: rows of degree < t are pruned, the
// running column intersection is never an overestimate.
std::vector<GridWitness> find_grid(const PowerGraph& g, int s, int t,
                                   const GridConstraints& c = {});

// Scan for 3x7 grids a1 < a2 < a3 <= b1 < ... < b7 <= X with
// b1 >= 2|shift|^17 and all 21 products shifted k-th powers.  A theorem rules
// these out at every scale; any hit is a falsification and is re-validated
// before being reported.
struct Grid3x7Report {
  std::vector<GridWitness> grids;
  Int threshold;            // 2|shift|^17
  bool vacuous = false;     // threshold > X: the scan range is empty
  uint64_t rows_scanned = 0;
  uint64_t candidate_rows = 0;  // rows with >= 7 qualifying neighbors
};
Grid3x7Report scan_grids_3x7(const ShiftParams& p, const Int& X, int workers = 1);

enum class CheckStatus { not_applicable, holds, violation };

// Tail bound: when every a*b + shift is a k-th power and the side sizes and
// interleaving hypotheses hold (k = 3 needs |A| >= 3, |B| >= 7 and
// a_3 <= b_{|B|-6}; k > 3 needs |A| >= 2, |B| >= cap+1 and
// a_2 <= b_{|B|-cap}, indices 1-based), at most cap = large_count_cap(k)
// elements of B reach 2|shift|^{threshold_exponent(k)}.
struct TailBoundReport {
  CheckStatus status = CheckStatus::not_applicable;
  int large_count = 0;
  int cap = 0;
};
TailBoundReport tail_bound_check(const FiniteSet& A, const FiniteSet& B,
                                 const ShiftParams& p);

}  // namespace shiftpow
