#include "shiftpow/int_arith.hpp"

#include <bit>
#include <ostream>
#include <utility>

namespace shiftpow {

void validate_finite_set(const FiniteSet& s) {
  Int prev = 0;
  for (const Int& v : s) {
    if (v < 1)
      throw std::invalid_argument("FiniteSet: elements must be positive");
    if (v <= prev)
      throw std::invalid_argument("FiniteSet: elements must be strictly increasing");
    prev = v;
  }
}

ShiftParams::ShiftParams(int k_, Int shift_) : k(k_), shift(std::move(shift_)) {
  if (k < 2) throw std::invalid_argument("ShiftParams: exponent k must be >= 2");
  if (shift == 0) throw std::invalid_argument("ShiftParams: shift must be nonzero");
}

Rational::Rational(Int n, Int d) : num(std::move(n)), den(std::move(d)) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Int g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

double Rational::to_double() const { return num.get_d() / den.get_d(); }

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  os << r.num.get_str();
  if (r.den != 1) os << "/" << r.den.get_str();
  return os;
}

Int pow_int(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

bool fits_u64(const Int& v) { return v >= 0 && mpz_fits_ulong_p(v.get_mpz_t()); }
uint64_t to_u64(const Int& v) { return mpz_get_ui(v.get_mpz_t()); }
bool fits_i64(const Int& v) { return mpz_fits_slong_p(v.get_mpz_t()); }
int64_t to_i64(const Int& v) { return mpz_get_si(v.get_mpz_t()); }

uint64_t pow_sat_u64(uint64_t b, int k) {
  unsigned __int128 r = 1;
  for (int i = 0; i < k; ++i) {
    r *= b;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<uint64_t>(r);
}

namespace {

// b^k > limit, immune to overflow (saturation alone cannot distinguish
// "== UINT64_MAX" from "wrapped past it")
bool pow_exceeds_u64(uint64_t b, int k, uint64_t limit) {
  unsigned __int128 r = 1;
  for (int i = 0; i < k; ++i) {
    r *= b;
    if (r > limit) return true;
  }
  return false;
}

}  // namespace

uint64_t kth_root_u64(uint64_t x, int k) {
  if (k <= 0) throw std::invalid_argument("kth_root_u64: k must be >= 1");
  if (x < 2 || k == 1) return x;
  if (k >= 64) return 1;  // 2^k > x for any x < 2^64
  const int bits = std::bit_width(x);
  uint64_t r = uint64_t{1} << ((bits + k - 1) / k);  // r^k >= 2^bits > x
  for (;;) {
    uint64_t rk1 = pow_sat_u64(r, k - 1);
    uint64_t next = ((uint64_t)(k - 1) * r + x / rk1) / (uint64_t)k;
    if (next >= r) break;
    r = next;
  }
  while (pow_exceeds_u64(r, k, x)) --r;
  while (!pow_exceeds_u64(r + 1, k, x)) ++r;
  return r;
}

std::optional<uint64_t> kth_power_witness_u64(uint64_t x, int k) {
  if (x == 0) return std::nullopt;
  uint64_t r = kth_root_u64(x, k);
  if (r >= 1 && pow_sat_u64(r, k) == x) return r;
  return std::nullopt;
}

Int integer_kth_root(const Int& x, int k) {
  if (k <= 0) throw std::invalid_argument("integer_kth_root: k must be >= 1");
  if (sgn(x) < 0)
    throw std::invalid_argument("integer_kth_root: x must be >= 0");
  if (k == 1 || x <= 1) return x;
  if (fits_u64(x)) return Int(kth_root_u64(to_u64(x), k));

  const size_t bits = mpz_sizeinbase(x.get_mpz_t(), 2);
  Int r = Int(1) << ((bits + k - 1) / k);  // r^k >= 2^bits > x
  for (;;) {
    Int rk1 = pow_int(r, k - 1);
    Int next = ((k - 1) * r + x / rk1) / k;
    if (next >= r) break;
    r = next;
  }
  while (pow_int(r, k) > x) --r;
  while (pow_int(r + 1, k) <= x) ++r;
  return r;
}

Int ceil_kth_root(const Int& v, int k) {
  if (v <= 1) return 1;
  Int r = integer_kth_root(v, k);
  return pow_int(r, k) == v ? r : r + 1;
}

std::optional<Int> kth_power_witness(const Int& x, int k) {
  if (k <= 0) throw std::invalid_argument("kth_power_witness: k must be >= 1");
  if (x <= 0) return std::nullopt;
  if (fits_u64(x)) {
    auto r = kth_power_witness_u64(to_u64(x), k);
    if (r) return Int(*r);
    return std::nullopt;
  }
  Int r = integer_kth_root(x, k);
  if (r >= 1 && pow_int(r, k) == x) return r;
  return std::nullopt;
}

std::optional<Int> shifted_power_witness(const Int& a, const Int& b,
                                         const ShiftParams& p) {
  if (a < 1 || b < 1)
    throw std::invalid_argument("shifted_power_witness: a and b must be >= 1");
  return kth_power_witness(a * b + p.shift, p.k);
}

Int count_up_to(const FiniteSet& a, const Int& bound) {
  auto it = std::upper_bound(a.begin(), a.end(), bound);
  return Int(static_cast<unsigned long>(it - a.begin()));
}

int large_count_cap(int k) {
  if (k < 3) throw std::invalid_argument("large_count_cap: k must be >= 3");
  switch (k) {
    case 3: return 6;
    case 4: return 4;
    case 5: return 3;
    default: return 2;
  }
}

Rational threshold_exponent(int k) {
  if (k < 3) throw std::invalid_argument("threshold_exponent: k must be >= 3");
  switch (k) {
    case 3: return Rational(15399, 938);
    case 4: return Rational(34, 3);
    case 5: return Rational(97, 23);
    case 6: return Rational(29, 4);
    default: {
      long kk = k;
      return Rational(kk * kk + kk - 4, kk * kk - 6 * kk + 6);
    }
  }
}

bool ge_threshold(const Int& b, const Int& n, const Rational& t,
                  const Int& factor) {
  if (n == 0) throw std::invalid_argument("ge_threshold: n must be nonzero");
  if (b < 0 || factor < 0)
    throw std::invalid_argument("ge_threshold: b and factor must be >= 0");
  if (!mpz_fits_ulong_p(t.den.get_mpz_t()))
    throw std::invalid_argument("ge_threshold: exponent denominator too large");
  const unsigned long q = mpz_get_ui(t.den.get_mpz_t());
  Int pabs = abs(t.num);
  if (!mpz_fits_ulong_p(pabs.get_mpz_t()))
    throw std::invalid_argument("ge_threshold: exponent numerator too large");
  const unsigned long p = mpz_get_ui(pabs.get_mpz_t());
  // b >= factor * |n|^{p/q}  <=>  b^q * |n|^{-p} >= factor^q when p < 0
  if (t.num >= 0)
    return pow_int(b, q) >= pow_int(factor, q) * pow_int(abs(n), p);
  return pow_int(b, q) * pow_int(abs(n), p) >= pow_int(factor, q);
}

Int scale_threshold(const Int& n, int k) {
  if (n == 0) throw std::invalid_argument("scale_threshold: n must be nonzero");
  if (k < 3) throw std::invalid_argument("scale_threshold: k must be >= 3");
  Int an = abs(n);
  Int first = 4 * pow_int(an, 34);
  Int second = pow_int(4, 6UL * (k - 1)) * pow_int(an, 6UL * k);
  return first >= second ? first : second;
}

}  // namespace shiftpow
