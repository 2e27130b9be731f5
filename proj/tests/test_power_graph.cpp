#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "shiftpow/parallel.hpp"
#include "shiftpow/power_graph.hpp"

using namespace shiftpow;

TEST_CASE("parallel_chunks: covers the range once and rethrows worker errors") {
  std::vector<int> hits(1000, 0);
  parallel_chunks(0, 1000, 7, 4, [&](uint64_t lo, uint64_t hi, size_t) {
    for (uint64_t i = lo; i < hi; ++i) ++hits[i];
  });
  CHECK(std::count(hits.begin(), hits.end(), 1) == 1000);

  CHECK_THROWS_AS(
      parallel_chunks(0, 100, 5, 4,
                      [&](uint64_t lo, uint64_t, size_t) {
                        if (lo >= 50) throw std::runtime_error("boom");
                      }),
      std::runtime_error);
}

// oracle: filter every b by the witness predicate, one at a time
static std::vector<Int> naive_neighbors(const Int& a, const ShiftParams& p,
                                        const Int& X) {
  std::vector<Int> out;
  for (Int b = 1; b <= X; ++b)
    if (kth_power_witness(a * b + p.shift, p.k)) out.push_back(b);
  return out;
}

TEST_CASE("right_neighbors: pinned values") {
  CHECK(right_neighbors(1, ShiftParams(3, 1), 100) ==
        std::vector<Int>{7, 26, 63});
  CHECK(right_neighbors(2, ShiftParams(3, 1), 100) == std::vector<Int>{13, 62});
  CHECK(right_neighbors(1, ShiftParams(3, -1), 30) ==
        std::vector<Int>{2, 9, 28});
  CHECK(right_neighbors(5, ShiftParams(3, 1), 0).empty());
  CHECK_THROWS_AS(right_neighbors(0, ShiftParams(3, 1), 10),
                  std::invalid_argument);
}

TEST_CASE("right_neighbors: oracle equivalence on small ranges") {
  uint64_t mismatches = 0;
  for (int k : {3, 4}) {
    for (int m : {1, -1, 2, -2}) {
      ShiftParams p(k, m);
      for (long a = 1; a <= 20; ++a)
        if (right_neighbors(a, p, 2000) != naive_neighbors(a, p, 2000))
          ++mismatches;
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("right_neighbors: big-integer path agrees with the uint64 path") {
  // bmax just past the uint64 gate forces the mpz loop on the same instance
  // (shift -6 keeps y^3 ≡ 1 mod 7 solvable)
  ShiftParams p(3, -6);
  Int big = Int("400000000000000000");  // 4*10^17; 7 * big exceeds 2^61
  auto wide = right_neighbors_in(7, p, 1, big);
  auto narrow = right_neighbors(7, p, Int(1000000));
  CHECK(!narrow.empty());
  uint64_t missing = 0, invalid = 0;
  for (const Int& b : narrow)
    if (!std::binary_search(wide.begin(), wide.end(), b)) ++missing;
  for (const Int& b : wide)
    if (!shifted_power_witness(7, b, p)) ++invalid;
  CHECK(missing == 0);
  CHECK(invalid == 0);
  CHECK(wide.size() > narrow.size());
}

TEST_CASE("right_neighbors: symmetry of the predicate") {
  ShiftParams p(3, 1);
  uint64_t asymmetries = 0;
  for (long a = 1; a <= 12; ++a) {
    for (const Int& b : right_neighbors(a, p, 500)) {
      auto back = right_neighbors(b, p, Int(a));
      if (!std::binary_search(back.begin(), back.end(), Int(a))) ++asymmetries;
    }
  }
  CHECK(asymmetries == 0);
}

TEST_CASE("right_neighbors_in: window restriction") {
  ShiftParams p(3, 1);
  CHECK(right_neighbors_in(1, p, 8, 100) == std::vector<Int>{26, 63});
  CHECK(right_neighbors_in(1, p, 7, 7) == std::vector<Int>{7});
  CHECK(right_neighbors_in(1, p, 8, 7).empty());
}

TEST_CASE("build_graph: pinned examples") {
  ShiftParams p(3, 1);
  auto g1 = PowerGraph::build({1}, p, 100);
  CHECK(g1.right == std::vector<Int>{7, 26, 63});
  CHECK(g1.edge_count() == 3);

  auto g2 = PowerGraph::build({1, 2}, p, 100);
  CHECK(g2.right == std::vector<Int>{7, 13, 26, 62, 63});
  CHECK(g2.edge_count() == 5);

  auto g0 = PowerGraph::build({}, p, 100);
  CHECK(g0.right.empty());
  CHECK(g0.edge_count() == 0);

  CHECK_THROWS_AS(PowerGraph::build({2, 1}, p, 100), std::invalid_argument);
}

TEST_CASE("build_graph: adjacency is worker-count invariant") {
  ShiftParams p(3, -1);
  FiniteSet left;
  for (long a = 1; a <= 60; ++a) left.push_back(a);
  auto g1 = PowerGraph::build(left, p, 100000, 1);
  auto g4 = PowerGraph::build(left, p, 100000, 4);
  auto g8 = PowerGraph::build(left, p, 100000, 8);
  CHECK(g1.right == g4.right);
  CHECK(g1.adj == g4.adj);
  CHECK(g1.right == g8.right);
  CHECK(g1.adj == g8.adj);
  CHECK(g1.edge_count() > 0);
}

TEST_CASE("find_grid: single row, pinned") {
  auto g = PowerGraph::build({1}, ShiftParams(3, 1), 100);
  auto ws = find_grid(g, 1, 3);
  REQUIRE(ws.size() == 1);
  CHECK(ws[0].rows == std::vector<Int>{1});
  CHECK(ws[0].cols == std::vector<Int>{7, 26, 63});
  CHECK(ws[0].roots[0] == std::vector<Int>{2, 3, 4});
}

TEST_CASE("find_grid: complete synthetic 3x7 gives exactly one maximal witness") {
  std::vector<Int> left = {1, 2, 3};
  std::vector<Int> right;
  for (long v = 10; v < 17; ++v) right.push_back(v);
  std::vector<std::vector<uint32_t>> adj(3, {0, 1, 2, 3, 4, 5, 6});
  auto g = PowerGraph::from_adjacency(left, right, adj, ShiftParams(3, 1));
  auto ws = find_grid(g, 3, 7);
  REQUIRE(ws.size() == 1);
  CHECK(ws[0].rows == left);
  CHECK(ws[0].cols == right);
  auto sub = find_grid(g, 2, 4);
  CHECK(sub.size() == 3);  // one witness per row pair, maximal columns
  for (const auto& w : sub) CHECK(w.cols.size() == 7);
}

// brute-force oracle over explicit adjacency masks
struct OracleGrid {
  std::vector<uint32_t> rows;
  std::vector<uint32_t> cols;
  bool operator<(const OracleGrid& o) const {
    return rows != o.rows ? rows < o.rows : cols < o.cols;
  }
  bool operator==(const OracleGrid& o) const {
    return rows == o.rows && cols == o.cols;
  }
};

static std::set<OracleGrid> oracle_grids(const PowerGraph& g, int s, int t,
                                         const GridConstraints& c) {
  std::set<OracleGrid> out;
  const size_t nl = g.left.size();
  std::vector<uint32_t> pick;
  auto common_cols = [&](const std::vector<uint32_t>& rows) {
    std::vector<uint32_t> cols;
    for (uint32_t j = 0; j < g.right.size(); ++j) {
      if (c.min_col && g.right[j] < *c.min_col) continue;
      bool all = true;
      for (uint32_t i : rows) {
        const auto& l = g.adj[i];
        if (!std::binary_search(l.begin(), l.end(), j)) {
          all = false;
          break;
        }
      }
      if (all) cols.push_back(j);
    }
    if (c.rows_below_cols && !rows.empty()) {
      Int maxrow = g.left[rows.back()];
      std::erase_if(cols, [&](uint32_t j) { return g.right[j] < maxrow; });
    }
    return cols;
  };
  std::function<void(size_t)> rec = [&](size_t start) {
    if (pick.size() == static_cast<size_t>(s)) {
      auto cols = common_cols(pick);
      if (cols.size() >= static_cast<size_t>(t)) out.insert({pick, cols});
      return;
    }
    for (size_t i = start; i < nl; ++i) {
      pick.push_back(static_cast<uint32_t>(i));
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

TEST_CASE("find_grid: complete vs brute force on random synthetic graphs") {
  std::mt19937_64 rng(424242);
  uint64_t mismatches = 0;
  for (int iter = 0; iter < 60; ++iter) {
    const size_t nl = 3 + rng() % 10, nr = 3 + rng() % 10;
    std::vector<Int> left, right;
    long v = 1;
    for (size_t i = 0; i < nl; ++i) left.push_back(v += 1 + (long)(rng() % 3));
    for (size_t j = 0; j < nr; ++j) right.push_back(v += 1 + (long)(rng() % 3));
    // interleave some rows above columns to exercise rows_below_cols
    if (iter % 3 == 0) std::swap(left.back(), right.front());
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    std::vector<std::vector<uint32_t>> adj(nl);
    for (size_t i = 0; i < nl; ++i)
      for (uint32_t j = 0; j < nr; ++j)
        if (rng() % 100 < 55) adj[i].push_back(j);
    auto g = PowerGraph::from_adjacency(left, right, adj, ShiftParams(3, 1));

    const int s = 1 + static_cast<int>(rng() % 3);
    const int t = 1 + static_cast<int>(rng() % 3);
    GridConstraints c;
    if (rng() & 1) c.min_col = right[rng() % nr];
    c.rows_below_cols = (rng() & 2) != 0;

    auto found = find_grid(g, s, t, c);
    std::set<OracleGrid> got;
    for (const auto& w : found) {
      OracleGrid og;
      for (const Int& r : w.rows)
        og.rows.push_back(static_cast<uint32_t>(
            std::lower_bound(left.begin(), left.end(), r) - left.begin()));
      for (const Int& cvalue : w.cols)
        og.cols.push_back(static_cast<uint32_t>(
            std::lower_bound(right.begin(), right.end(), cvalue) - right.begin()));
      got.insert(og);
    }
    if (got != oracle_grids(g, s, t, c) || got.size() != found.size())
      ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("find_grid: real graph witnesses re-validate") {
  // k = 3, shift = -1 has a genuine 2x2 grid: {1,14} x {2,9}
  ShiftParams p(3, -1);
  FiniteSet left;
  for (long a = 1; a <= 20; ++a) left.push_back(a);
  auto g = PowerGraph::build(left, p, 100);
  GridConstraints c;
  c.rows_below_cols = false;
  auto ws = find_grid(g, 2, 2, c);
  bool found_14 = false;
  for (const auto& w : ws) {
    for (size_t i = 0; i < w.rows.size(); ++i)
      for (size_t j = 0; j < w.cols.size(); ++j) {
        REQUIRE(w.roots[i][j] >= 1);
        REQUIRE(pow_int(w.roots[i][j], 3) == w.rows[i] * w.cols[j] - 1);
      }
    if (w.rows == std::vector<Int>{1, 14}) {
      found_14 = true;
      CHECK(w.cols == std::vector<Int>{2, 9});
    }
  }
  CHECK(found_14);
}

TEST_CASE("find_grid: spec example left=[1..100], s=2, t=2, rows below cols") {
  ShiftParams p(3, 1);
  FiniteSet left;
  for (long a = 1; a <= 100; ++a) left.push_back(a);
  auto g = PowerGraph::build(left, p, 10000);
  GridConstraints c;
  c.rows_below_cols = true;
  auto ws = find_grid(g, 2, 2, c);
  for (const auto& w : ws) {
    CHECK(w.rows.back() <= w.cols.front());
    for (size_t i = 0; i < w.rows.size(); ++i)
      for (size_t j = 0; j < w.cols.size(); ++j) {
        REQUIRE(w.roots[i][j] >= 1);
        REQUIRE(shifted_power_witness(w.rows[i], w.cols[j], p) == w.roots[i][j]);
      }
  }
  // oracle agreement on the same graph
  auto oracle = oracle_grids(g, 2, 2, c);
  CHECK(oracle.size() == ws.size());
}

TEST_CASE("scan_grids_3x7: clean at small scale, vacuous when threshold exceeds X") {
  auto rep = scan_grids_3x7(ShiftParams(3, 1), 10000, 2);
  CHECK(rep.grids.empty());
  CHECK(!rep.vacuous);
  CHECK(rep.threshold == 2);
  CHECK(rep.rows_scanned == 10000);

  auto vac = scan_grids_3x7(ShiftParams(3, 3), 1000000, 2);
  CHECK(vac.vacuous);
  CHECK(vac.grids.empty());
  CHECK(vac.threshold == 2 * pow_int(3, 17));

  CHECK_THROWS_AS(scan_grids_3x7(ShiftParams(2, 1), 100),
                  std::invalid_argument);
}

TEST_CASE("scan_grids_3x7: summary invariant under worker count") {
  auto r1 = scan_grids_3x7(ShiftParams(3, -1), 20000, 1);
  auto r4 = scan_grids_3x7(ShiftParams(3, -1), 20000, 4);
  CHECK(r1.grids.size() == r4.grids.size());
  CHECK(r1.candidate_rows == r4.candidate_rows);
  CHECK(r1.rows_scanned == r4.rows_scanned);
}

TEST_CASE("tail_bound_check: hypothesis gates") {
  ShiftParams p(3, 1);
  // |A| too small
  CHECK(tail_bound_check({1}, {7, 26, 63, 124, 215, 342, 511}, p).status ==
        CheckStatus::not_applicable);
  // a non-power product disqualifies
  CHECK(tail_bound_check({1, 2, 3}, {5, 7, 26, 63, 124, 215, 342}, p).status ==
        CheckStatus::not_applicable);
  // k = 3 with only two rows is out of the theorem's reach
  CHECK(tail_bound_check({1, 2}, {7, 26, 63, 124, 215, 342, 511}, p).status ==
        CheckStatus::not_applicable);
  // k = 2 is never a theorem case
  CHECK(tail_bound_check({1, 3}, {1, 2, 3}, ShiftParams(2, 1)).status ==
        CheckStatus::not_applicable);
}

TEST_CASE("tail_bound_check: every applicable instance found by scanning holds") {
  // scan small graphs for K_{2, cap+1} grids at k in {4,5,6}; the theorem says
  // any instance that satisfies its hypotheses must satisfy its bound
  for (int k : {4, 5, 6}) {
    for (int m : {1, -1}) {
      ShiftParams p(k, m);
      FiniteSet left;
      for (long a = 1; a <= 30; ++a) left.push_back(a);
      auto g = PowerGraph::build(left, p, 50000);
      const int need = large_count_cap(k) + 1;
      for (const auto& w : find_grid(g, 2, need)) {
        FiniteSet A = w.rows, B = w.cols;
        auto rep = tail_bound_check(A, B, p);
        CHECK(rep.status != CheckStatus::violation);
      }
    }
  }
}
