#include "shiftpow/power_graph.hpp"

#include <algorithm>
#include <cassert>

#include "shiftpow/parallel.hpp"

namespace shiftpow {

namespace {

// Values a*bmax + |shift| below this run the all-uint64 loop.
constexpr uint64_t kFastGate = uint64_t{1} << 61;

// Emit every b in [bmin, bmax] with a*b + shift == y^k (y >= 1), ascending.
// Caller guarantees a*bmax + |shift| < 2^61 and |shift| < 2^61.
template <class Emit>
void neighbors_fast(uint64_t a, int k, int64_t shift, uint64_t bmin,
                    uint64_t bmax, Emit&& emit) {
  if (bmin < 1) bmin = 1;
  if (a == 0 || bmin > bmax) return;
  const __int128 lo = static_cast<__int128>(a) * bmin + shift;
  const __int128 hi = static_cast<__int128>(a) * bmax + shift;
  if (hi < 1) return;
  uint64_t y = 1;
  if (lo > 1) {
    const uint64_t lov = static_cast<uint64_t>(lo);
    const uint64_t r = kth_root_u64(lov, k);
    y = pow_sat_u64(r, k) == lov ? r : r + 1;
  }
  const uint64_t ymax = kth_root_u64(static_cast<uint64_t>(hi), k);
  for (; y <= ymax; ++y) {
    uint64_t yk = y;
    for (int i = 1; i < k; ++i) yk *= y;
    // y >= ceil((a*bmin+shift)^{1/k}) and y <= (a*bmax+shift)^{1/k} pin
    // t = y^k - shift inside [a*bmin, a*bmax], so b lands in range.
    const uint64_t t = static_cast<uint64_t>(static_cast<int64_t>(yk) - shift);
    if (t % a == 0) emit(t / a, y);
  }
}

template <class Emit>
void neighbors_big(const Int& a, const ShiftParams& p, Int bmin, const Int& bmax,
                   Emit&& emit) {
  if (bmin < 1) bmin = 1;
  if (bmin > bmax) return;
  const Int lo = a * bmin + p.shift;
  const Int hi = a * bmax + p.shift;
  if (hi < 1) return;
  Int y = lo <= 1 ? Int(1) : ceil_kth_root(lo, p.k);
  const Int ymax = integer_kth_root(hi, p.k);
  for (; y <= ymax; ++y) {
    Int t = pow_int(y, p.k) - p.shift;
    if (mpz_divisible_p(t.get_mpz_t(), a.get_mpz_t())) emit(t / a, y);
  }
}

bool fast_path_ok(const Int& a, const Int& shift, const Int& bmax) {
  if (!fits_u64(a) || !fits_u64(bmax) || !fits_i64(shift)) return false;
  Int top = a * bmax + abs(shift);
  return fits_u64(top) && to_u64(top) < kFastGate;
}

// sorted intersection
std::vector<Int> intersect(const std::vector<Int>& x, const std::vector<Int>& y) {
  std::vector<Int> out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(),
                        std::back_inserter(out));
  return out;
}

}  // namespace

std::vector<Int> right_neighbors_in(const Int& a, const ShiftParams& p,
                                    const Int& bmin, const Int& bmax) {
  if (a < 1) throw std::invalid_argument("right_neighbors: a must be >= 1");
  std::vector<Int> out;
  if (bmax < 1 || bmax < bmin) return out;
  if (fast_path_ok(a, p.shift, bmax)) {
    Int lo = bmin < 1 ? Int(1) : bmin;
    neighbors_fast(to_u64(a), p.k, to_i64(p.shift), to_u64(lo), to_u64(bmax),
                   [&](uint64_t b, uint64_t) { out.emplace_back(b); });
  } else {
    neighbors_big(a, p, bmin, bmax, [&](Int b, const Int&) {
      out.push_back(std::move(b));
    });
  }
  return out;
}

std::vector<Int> right_neighbors(const Int& a, const ShiftParams& p, const Int& X) {
  return right_neighbors_in(a, p, 1, X);
}

std::vector<NeighborSweepRow> neighbors_sweep(const Int& a_lo, const Int& a_hi,
                                              const ShiftParams& p, const Int& X,
                                              int workers) {
  if (a_lo < 1) throw std::invalid_argument("neighbors_sweep: a_lo must be >= 1");
  std::vector<NeighborSweepRow> rows;
  if (a_hi < a_lo) return rows;
  if (!fits_u64(a_hi))
    throw std::invalid_argument("neighbors_sweep: range too large");
  const uint64_t lo = to_u64(a_lo), hi = to_u64(a_hi);
  const uint64_t n = hi - lo + 1;
  uint64_t chunk = std::max<uint64_t>(64, n / (uint64_t)(workers * 16 + 1));
  size_t nchunks = static_cast<size_t>((n + chunk - 1) / chunk);
  std::vector<std::vector<NeighborSweepRow>> slots(nchunks);
  parallel_chunks(lo, hi + 1, chunk, workers,
                  [&](uint64_t b, uint64_t e, size_t ci) {
                    for (uint64_t a = b; a < e; ++a) {
                      auto bs = right_neighbors(Int(a), p, X);
                      if (!bs.empty())
                        slots[ci].push_back({Int(a), std::move(bs)});
                    }
                  });
  for (auto& s : slots)
    for (auto& r : s) rows.push_back(std::move(r));
  return rows;
}

PowerGraph PowerGraph::build(std::vector<Int> left_vertices, const ShiftParams& p,
                             const Int& X, int workers) {
  validate_finite_set(left_vertices);
  PowerGraph g{p, std::move(left_vertices), {}, {}};
  const size_t n = g.left.size();
  std::vector<std::vector<Int>> lists(n);
  parallel_chunks(0, n, 8, workers, [&](uint64_t b, uint64_t e, size_t) {
    for (uint64_t i = b; i < e; ++i)
      lists[i] = right_neighbors(g.left[i], p, X);
  });

  for (const auto& l : lists) g.right.insert(g.right.end(), l.begin(), l.end());
  std::sort(g.right.begin(), g.right.end());
  g.right.erase(std::unique(g.right.begin(), g.right.end()), g.right.end());

  g.adj.resize(n);
  for (size_t i = 0; i < n; ++i) {
    g.adj[i].reserve(lists[i].size());
    for (const Int& b : lists[i]) {
      auto it = std::lower_bound(g.right.begin(), g.right.end(), b);
      g.adj[i].push_back(static_cast<uint32_t>(it - g.right.begin()));
    }
  }
  return g;
}

PowerGraph PowerGraph::from_adjacency(std::vector<Int> left_vertices,
                                      std::vector<Int> right_vertices,
                                      std::vector<std::vector<uint32_t>> adjacency,
                                      const ShiftParams& p) {
  validate_finite_set(left_vertices);
  validate_finite_set(right_vertices);
  if (adjacency.size() != left_vertices.size())
    throw std::invalid_argument("from_adjacency: one adjacency list per left vertex");
  for (auto& l : adjacency) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    if (!l.empty() && l.back() >= right_vertices.size())
      throw std::invalid_argument("from_adjacency: column index out of range");
  }
  return PowerGraph{p, std::move(left_vertices), std::move(right_vertices),
                    std::move(adjacency)};
}

size_t PowerGraph::edge_count() const {
  size_t e = 0;
  for (const auto& l : adj) e += l.size();
  return e;
}

namespace {

GridWitness make_witness(const PowerGraph& g, const std::vector<uint32_t>& rows,
                         const std::vector<uint32_t>& cols) {
  GridWitness w;
  w.rows.reserve(rows.size());
  w.cols.reserve(cols.size());
  for (uint32_t i : rows) w.rows.push_back(g.left[i]);
  for (uint32_t j : cols) w.cols.push_back(g.right[j]);
  w.roots.resize(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    w.roots[i].reserve(cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
      auto y = shifted_power_witness(w.rows[i], w.cols[j], g.params);
      w.roots[i].push_back(y ? *y : Int(0));
    }
  }
  return w;
}

struct GridSearch {
  const PowerGraph& g;
  int s, t;
  bool rows_below_cols;
  std::vector<std::vector<uint32_t>> cand;  // min_col-filtered adjacency
  std::vector<GridWitness>& out;
  std::vector<uint32_t> rows;

  // cols >= value bound for rows_below_cols: drop leading indices whose right
  // value is below the newest row value
  void clip_below(std::vector<uint32_t>& cols, const Int& row_value) const {
    size_t drop = 0;
    while (drop < cols.size() && g.right[cols[drop]] < row_value) ++drop;
    if (drop) cols.erase(cols.begin(), cols.begin() + drop);
  }

  void rec(size_t start, const std::vector<uint32_t>& inter) {
    if (static_cast<int>(rows.size()) == s) {
      out.push_back(make_witness(g, rows, inter));
      return;
    }
    const size_t need = static_cast<size_t>(s) - rows.size();
    for (size_t i = start; i + need <= g.left.size(); ++i) {
      if (cand[i].size() < static_cast<size_t>(t)) continue;
      std::vector<uint32_t> next;
      if (rows.empty()) {
        next = cand[i];
      } else {
        std::set_intersection(inter.begin(), inter.end(), cand[i].begin(),
                              cand[i].end(), std::back_inserter(next));
      }
      if (rows_below_cols) clip_below(next, g.left[i]);
      if (next.size() < static_cast<size_t>(t)) continue;
      rows.push_back(static_cast<uint32_t>(i));
      rec(i + 1, next);
      rows.pop_back();
    }
  }
};

}  // namespace

std::vector<GridWitness> find_grid(const PowerGraph& g, int s, int t,
                                   const GridConstraints& c) {
  if (s < 1 || t < 1)
    throw std::invalid_argument("find_grid: s and t must be >= 1");
  std::vector<GridWitness> out;
  if (g.left.size() < static_cast<size_t>(s)) return out;

  uint32_t min_j = 0;
  if (c.min_col) {
    auto it = std::lower_bound(g.right.begin(), g.right.end(), *c.min_col);
    min_j = static_cast<uint32_t>(it - g.right.begin());
  }
  std::vector<std::vector<uint32_t>> cand(g.left.size());
  for (size_t i = 0; i < g.left.size(); ++i) {
    const auto& l = g.adj[i];
    auto it = std::lower_bound(l.begin(), l.end(), min_j);
    cand[i].assign(it, l.end());
  }

  GridSearch search{g, s, t, c.rows_below_cols, std::move(cand), out, {}};
  search.rec(0, {});
  return out;
}

Grid3x7Report scan_grids_3x7(const ShiftParams& p, const Int& X, int workers) {
  if (p.k < 3)
    throw std::invalid_argument("scan_grids_3x7: k must be >= 3");
  Grid3x7Report rep;
  rep.threshold = 2 * pow_int(p.abs_shift(), 17);
  if (X < 1 || rep.threshold > X) {
    rep.vacuous = rep.threshold > X;
    return rep;
  }
  if (!fits_u64(X) || to_u64(X) >= kFastGate)
    throw std::invalid_argument("scan_grids_3x7: X too large for exhaustive scan");
  const uint64_t xu = to_u64(X);
  const uint64_t tu = to_u64(rep.threshold);

  // Any grid row r sees all seven columns inside [max(r, threshold), X], so
  // rows with fewer than 7 neighbors there cannot participate.
  struct Cand {
    Int a;
    std::vector<Int> bs;
  };
  const uint64_t chunk = std::max<uint64_t>(1024, xu / (uint64_t)(workers * 32 + 1));
  const size_t nchunks = static_cast<size_t>((xu + chunk - 1) / chunk);
  std::vector<std::vector<Cand>> slots(nchunks);
  parallel_chunks(1, xu + 1, chunk, workers,
                  [&](uint64_t lo, uint64_t hi, size_t ci) {
                    for (uint64_t a = lo; a < hi; ++a) {
                      const uint64_t bmin = std::max(a, tu);
                      auto bs = right_neighbors_in(Int(a), p, Int(bmin), X);
                      if (bs.size() >= 7)
                        slots[ci].push_back({Int(a), std::move(bs)});
                    }
                  });
  std::vector<Cand> cands;
  for (auto& s : slots)
    for (auto& c : s) cands.push_back(std::move(c));
  rep.rows_scanned = xu;
  rep.candidate_rows = cands.size();

  for (size_t i = 0; i + 2 < cands.size(); ++i) {
    for (size_t j = i + 1; j + 1 < cands.size(); ++j) {
      auto common2 = intersect(cands[i].bs, cands[j].bs);
      if (common2.size() < 7) continue;
      for (size_t l = j + 1; l < cands.size(); ++l) {
        auto common = intersect(common2, cands[l].bs);
        // elements of cands[l].bs already sit at or above max(a_l, threshold)
        if (common.size() < 7) continue;
        GridWitness w;
        w.rows = {cands[i].a, cands[j].a, cands[l].a};
        w.cols = std::move(common);
        w.roots.resize(3);
        for (size_t r = 0; r < 3; ++r)
          for (const Int& col : w.cols) {
            auto y = shifted_power_witness(w.rows[r], col, p);
            w.roots[r].push_back(y ? *y : Int(0));
          }
        rep.grids.push_back(std::move(w));
      }
    }
  }
  return rep;
}

TailBoundReport tail_bound_check(const FiniteSet& A, const FiniteSet& B,
                                 const ShiftParams& p) {
  validate_finite_set(A);
  validate_finite_set(B);
  TailBoundReport rep;
  if (p.k < 3) return rep;
  rep.cap = large_count_cap(p.k);

  const size_t l = A.size(), m = B.size();
  if (p.k == 3) {
    if (m < 7 || l < 3 || A[2] > B[m - 7]) return rep;
  } else {
    const size_t cap = static_cast<size_t>(rep.cap);
    if (m < cap + 1 || l < 2 || A[1] > B[m - cap - 1]) return rep;
  }
  for (const Int& a : A)
    for (const Int& b : B)
      if (!shifted_power_witness(a, b, p)) return rep;

  const Rational t = threshold_exponent(p.k);
  int large = 0;
  for (const Int& b : B)
    if (ge_threshold(b, p.shift, t, 2)) ++large;
  rep.large_count = large;
  rep.status = large <= rep.cap ? CheckStatus::holds : CheckStatus::violation;
  return rep;
}

}  // namespace shiftpow
