#include "shiftpow/decomp.hpp"

#include <algorithm>
#include <bitset>
#include <istream>
#include <ostream>
#include <string>

namespace shiftpow {

FiniteSet product_set(const FiniteSet& A, const FiniteSet& B) {
  validate_finite_set(A);
  validate_finite_set(B);
  FiniteSet out;
  out.reserve(A.size() * B.size());
  for (const Int& a : A)
    for (const Int& b : B) out.push_back(a * b);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

constexpr size_t kMaxSetSize = 256;
using Mask = std::bitset<kMaxSetSize>;

// One positing of (alpha, beta) = (min A, min B) with alpha*beta = min(S).
// A-candidates are quotients s/beta, B-candidates quotients s/alpha; the
// include/exclude search walks the A-candidates ascending, carrying the
// maximal compatible column set, and tries to close each node into an exact
// cover of S.
struct Attempt {
  const FiniteSet& S;
  std::vector<Int> poolA, poolB;
  std::vector<Mask> row_cols;                      // per A-candidate: compatible B columns
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> row_pairs;  // (col, index into S)
  Mask full;
  long budget = 1'000'000;
  std::vector<uint32_t> chosen;  // indices into poolA, index 0 always included
  std::optional<Decomposition> result;

  explicit Attempt(const FiniteSet& s) : S(s) {}

  bool prepare(const Int& alpha, const Int& beta) {
    poolA.clear();
    poolB.clear();
    auto quotients = [&](const Int& q, const Int& at_least, std::vector<Int>& pool) {
      for (const Int& s : S)
        if (mpz_divisible_p(s.get_mpz_t(), q.get_mpz_t())) {
          Int v = s / q;
          if (v >= at_least) pool.push_back(std::move(v));
        }
      std::sort(pool.begin(), pool.end());
      pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    };
    quotients(beta, alpha, poolA);
    quotients(alpha, beta, poolB);
    if (poolA.size() < 2 || poolB.size() < 2) return false;

    row_cols.assign(poolA.size(), {});
    row_pairs.assign(poolA.size(), {});
    for (size_t i = 0; i < poolA.size(); ++i)
      for (size_t j = 0; j < poolB.size(); ++j) {
        Int v = poolA[i] * poolB[j];
        auto it = std::lower_bound(S.begin(), S.end(), v);
        if (it != S.end() && *it == v) {
          row_cols[i].set(j);
          row_pairs[i].push_back({static_cast<uint32_t>(j),
                                  static_cast<uint32_t>(it - S.begin())});
        }
      }
    full.reset();
    for (size_t i = 0; i < S.size(); ++i) full.set(i);
    chosen.assign(1, 0);
    result.reset();
    return true;
  }

  Mask cover_of(const std::vector<uint32_t>& rows, const Mask& cols) const {
    Mask cov;
    for (uint32_t i : rows)
      for (auto [j, sidx] : row_pairs[i])
        if (cols[j]) cov.set(sidx);
    return cov;
  }

  bool try_finish(const Mask& cols) {
    if (chosen.size() < 2 || !cols[0] || cols.count() < 2) return false;
    if (cover_of(chosen, cols) != full) return false;
    Decomposition d;
    for (uint32_t i : chosen) d.A.push_back(poolA[i]);
    for (size_t j = 0; j < poolB.size(); ++j)
      if (cols[j]) d.B.push_back(poolB[j]);
    result = std::move(d);
    return true;
  }

  // optimistic: even using every remaining row, can S still be covered?
  bool feasible(size_t idx, const Mask& cols) const {
    Mask cov = cover_of(chosen, cols);
    for (size_t i = idx; i < poolA.size() && cov != full; ++i)
      for (auto [j, sidx] : row_pairs[i])
        if (cols[j]) cov.set(sidx);
    return cov == full;
  }

  void rec(size_t idx, const Mask& cols) {
    if (result) return;
    if (--budget <= 0)
      throw std::runtime_error("find_decomposition: search budget exceeded");
    if (try_finish(cols)) return;
    if (idx == poolA.size()) return;
    if (!feasible(idx, cols)) return;

    Mask next = cols & row_cols[idx];
    if (next[0] && next.count() >= 2) {
      chosen.push_back(static_cast<uint32_t>(idx));
      rec(idx + 1, next);
      chosen.pop_back();
      if (result) return;
    }
    rec(idx + 1, cols);
  }

  std::optional<Decomposition> run() {
    Mask all;
    for (size_t j = 0; j < poolB.size(); ++j) all.set(j);
    rec(1, all);  // index 0 (alpha) is already chosen
    return result;
  }
};

}  // namespace

std::optional<Decomposition> find_decomposition(const FiniteSet& S) {
  validate_finite_set(S);
  if (S.size() > kMaxSetSize)
    throw std::invalid_argument("find_decomposition: |S| > 256 exceeds the completeness guard");
  // |A|, |B| >= 2 forces at least three distinct products
  if (S.size() < 3) return std::nullopt;
  const Int& s0 = S.front();
  if (s0 > Int("1000000000000"))
    throw std::invalid_argument("find_decomposition: min(S) > 10^12 exceeds the factorization guard");

  Attempt attempt(S);
  for (Int alpha = 1; alpha * alpha <= s0; ++alpha) {
    if (!mpz_divisible_p(s0.get_mpz_t(), alpha.get_mpz_t())) continue;
    Int beta = s0 / alpha;
    if (!attempt.prepare(alpha, beta)) continue;
    if (auto d = attempt.run()) return d;
  }
  return std::nullopt;
}

FiniteSet truncated_shifted_powers(int k, const Int& n, const Int& X) {
  if (k < 2)
    throw std::invalid_argument("truncated_shifted_powers: k must be >= 2");
  if (n == 0)
    throw std::invalid_argument("truncated_shifted_powers: n must be nonzero");
  FiniteSet out;
  for (Int x = 1;; ++x) {
    Int v = pow_int(x, k) + n;
    if (v > X) break;
    if (v >= 1) out.push_back(std::move(v));
  }
  return out;
}

FiniteSet shifted_powers_prefix(int k, const Int& n, size_t count) {
  if (k < 2)
    throw std::invalid_argument("shifted_powers_prefix: k must be >= 2");
  if (n == 0)
    throw std::invalid_argument("shifted_powers_prefix: n must be nonzero");
  FiniteSet out;
  out.reserve(count);
  for (Int x = 1; out.size() < count; ++x) {
    Int v = pow_int(x, k) + n;
    if (v >= 1) out.push_back(std::move(v));
  }
  return out;
}

FiniteSet rm_example(const Int& m, int k, const Int& n, const Int& X) {
  if (m < 2) throw std::invalid_argument("rm_example: m must be >= 2");
  FiniteSet base = truncated_shifted_powers(k, n, X);
  FiniteSet out;
  out.reserve(2 * base.size());
  for (const Int& b : base) {
    out.push_back(b);
    Int mb = m * b;
    if (mb <= X) out.push_back(std::move(mb));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PerturbationDistance perturbation_distance(const FiniteSet& R, int k,
                                           const Int& n, const Int& X) {
  validate_finite_set(R);
  FiniteSet M = truncated_shifted_powers(k, n, X);
  PerturbationDistance d{0, 0};
  size_t i = 0, j = 0;
  while (i < R.size() && R[i] <= X && j < M.size()) {
    if (R[i] == M[j]) {
      ++i;
      ++j;
    } else if (R[i] < M[j]) {
      ++d.added;
      ++i;
    } else {
      ++d.removed;
      ++j;
    }
  }
  while (i < R.size() && R[i] <= X) {
    ++d.added;
    ++i;
  }
  d.removed += Int(static_cast<unsigned long>(M.size() - j));
  return d;
}

FiniteSet read_finite_set(std::istream& in) {
  FiniteSet out;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    Int v;
    if (v.set_str(line.substr(b, e - b + 1), 10) != 0)
      throw std::invalid_argument("FiniteSet: malformed integer line: " + line);
    out.push_back(std::move(v));
  }
  validate_finite_set(out);
  return out;
}

void write_finite_set(std::ostream& out, const FiniteSet& s) {
  for (const Int& v : s) out << v.get_str() << '\n';
}

}  // namespace shiftpow
