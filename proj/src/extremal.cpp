#include "shiftpow/extremal.hpp"

#include <algorithm>
#include <cmath>

#include "shiftpow/parallel.hpp"

namespace shiftpow {

namespace {

// one-sided guard so float ceilings never round below the exact value
double round_up(double v) { return v <= 0 ? v : v * (1.0 + 1e-12); }

}  // namespace

bool KstBound::satisfied_by(const Int& edges) const {
  Int slack = edges - Int(t - 1) * m;
  if (slack <= 0) return true;
  if (degenerate) return false;
  return pow_int(slack, t) <=
         Int(s - 1) * pow_int(nv - t + 1, t) * pow_int(m, t - 1);
}

KstBound kst_edge_bound(const Int& m, const Int& nv, int s, int t) {
  if (s < 1 || t < 1)
    throw std::invalid_argument("kst_edge_bound: s and t must be >= 1");
  if (m < 0 || nv < 0)
    throw std::invalid_argument("kst_edge_bound: sizes must be >= 0");
  KstBound b{m, nv, s, t, 0.0, nv < t};
  const double md = m.get_d();
  double val;
  if (b.degenerate) {
    val = (t - 1) * md;
  } else {
    const double nvd = nv.get_d();
    val = std::pow(static_cast<double>(s - 1), 1.0 / t) * (nvd - t + 1) *
              std::pow(md, 1.0 - 1.0 / t) +
          (t - 1) * md;
  }
  b.float_value = round_up(val);
  return b;
}

bool is_kst_free(const PowerGraph& g, int s, int t) {
  if (s < 1 || t < 1)
    throw std::invalid_argument("is_kst_free: s and t must be >= 1");
  if (g.left.size() > 1000)
    throw std::invalid_argument("is_kst_free: size guard exceeded (|left| > 1000)");
  return find_grid(g, s, t).empty();
}

KstAuditReport kst_audit(const PowerGraph& g, int s, int t) {
  KstAuditReport rep;
  rep.edges = Int(static_cast<unsigned long>(g.edge_count()));
  rep.bound = kst_edge_bound(Int(static_cast<unsigned long>(g.right.size())),
                             Int(static_cast<unsigned long>(g.left.size())), s, t);
  // freeness in the ceiling's orientation: t left rows, s right columns
  if (!is_kst_free(g, t, s)) return rep;
  rep.status = rep.bound.satisfied_by(rep.edges) ? AuditStatus::holds
                                                 : AuditStatus::violation;
  return rep;
}

const std::array<const char*, 9>& ProductCountRhs::term_names() {
  static const std::array<const char*, 9> names = {
      "A(X^1/2)*B(X^1/2)", "2*A(X^1/3)*B(X)^2/3", "2*B(X)",
      "2*A(X^1/2)*B(X)^1/2", "B(X)", "2*B(X^1/3)*A(X)^2/3",
      "2*A(X)", "2*B(X^1/2)*A(X)^1/2", "A(X)"};
  return names;
}

ProductCountRhs product_count_rhs(const FiniteSet& A, const FiniteSet& B,
                                  const Int& X) {
  validate_finite_set(A);
  validate_finite_set(B);
  ProductCountRhs r;
  if (X < 1) return r;
  // a <= X^{1/r} for integer a is exactly a <= floor(X^{1/r})
  const Int sq = integer_kth_root(X, 2);
  const Int cb = integer_kth_root(X, 3);
  const double ax = count_up_to(A, X).get_d();
  const double a2 = count_up_to(A, sq).get_d();
  const double a3 = count_up_to(A, cb).get_d();
  const double bx = count_up_to(B, X).get_d();
  const double b2 = count_up_to(B, sq).get_d();
  const double b3 = count_up_to(B, cb).get_d();

  r.terms[0] = round_up(a2 * b2);
  r.terms[1] = round_up(2.0 * a3 * std::pow(bx, 2.0 / 3.0));
  r.terms[2] = round_up(2.0 * bx);
  r.terms[3] = round_up(2.0 * a2 * std::sqrt(bx));
  r.terms[4] = round_up(bx);
  r.terms[5] = round_up(2.0 * b3 * std::pow(ax, 2.0 / 3.0));
  r.terms[6] = round_up(2.0 * ax);
  r.terms[7] = round_up(2.0 * b2 * std::sqrt(ax));
  r.terms[8] = round_up(ax);
  double total = 0;
  for (double t : r.terms) total += t;
  r.total = round_up(total);
  return r;
}

ProductCountAudit product_count_audit(const FiniteSet& A, const FiniteSet& B,
                                      const Int& n, int k, const Int& X,
                                      int workers) {
  if (n == 0)
    throw std::invalid_argument("product_count_audit: n must be nonzero");
  if (k < 3) throw std::invalid_argument("product_count_audit: k must be >= 3");
  validate_finite_set(A);
  validate_finite_set(B);

  ProductCountAudit audit;
  std::vector<std::vector<Int>> slots(A.size());
  parallel_chunks(0, A.size(), 1, workers, [&](uint64_t lo, uint64_t hi, size_t) {
    for (uint64_t i = lo; i < hi; ++i) {
      const Int& a = A[i];
      for (const Int& b : B) {
        Int v = a * b;
        if (v > X) break;  // B ascending
        if (kth_power_witness(v - n, k)) slots[i].push_back(std::move(v));
      }
    }
  });
  std::vector<Int> hits;
  for (auto& s : slots) hits.insert(hits.end(), s.begin(), s.end());
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  audit.q_count = Int(static_cast<unsigned long>(hits.size()));

  audit.rhs = product_count_rhs(A, B, X);
  audit.applicable = X >= scale_threshold(n, k);
  audit.holds = mpz_cmp_d(audit.q_count.get_mpz_t(), audit.rhs.total) <= 0;
  audit.density_ratio =
      audit.q_count.get_d() / std::pow(X.get_d(), 1.0 / static_cast<double>(k));
  return audit;
}

}  // namespace shiftpow
