#pragma once

// Exact integer primitives shared by every scanner: arbitrary-precision k-th
// roots and power witnesses, the tail constants, and the threshold predicates.
// All comparisons against fractional-exponent quantities (|n|^{p/q}, X^{1/2},
// X^{1/3}, ...) are decided by clearing denominators into plain integer
// comparisons, so no verdict ever depends on floating-point rounding.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

namespace shiftpow {

using Int = mpz_class;

// Sorted, duplicate-free list of positive integers.
using FiniteSet = std::vector<Int>;

// Throws std::invalid_argument unless s is strictly increasing with all
// elements >= 1.
void validate_finite_set(const FiniteSet& s);

// Parameters of the predicate "a*b + shift is a k-th power of a positive
// integer".  The shift is always ADDED; callers modeling a set {x^k + n} on
// the product side pass shift = -n.
struct ShiftParams {
  int k;      // exponent, >= 2
  Int shift;  // nonzero

  ShiftParams(int k_, Int shift_);
  Int abs_shift() const { return abs(shift); }
};

// Reduced fraction num/den with den >= 1.
struct Rational {
  Int num;
  Int den;

  Rational() : num(0), den(1) {}
  Rational(Int n, Int d);

  double to_double() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// base^exp, exact
Int pow_int(const Int& base, unsigned long exp);

// floor(x^{1/k}) for x >= 0, k >= 1.  Integer Newton iteration seeded from the
// bit length, finished by a two-sided correction loop, so the result is exact
// at any magnitude.
Int integer_kth_root(const Int& x, int k);

// smallest y >= 1 with y^k >= v
Int ceil_kth_root(const Int& v, int k);

// y >= 1 with y^k == x, if one exists.  x <= 0 never qualifies: 0 is not a
// k-th power of a positive integer.
std::optional<Int> kth_power_witness(const Int& x, int k);

// y >= 1 with a*b + shift == y^k.  Requires a, b >= 1.
std::optional<Int> shifted_power_witness(const Int& a, const Int& b,
                                         const ShiftParams& p);

// |{x in a : x <= bound}| for sorted a
Int count_up_to(const FiniteSet& a, const Int& bound);

// Cap on the number of elements of the b-side that can reach the largeness
// threshold: 6, 4, 3 for k = 3, 4, 5 and 2 for every k >= 6.
int large_count_cap(int k);

// Exponent t of the largeness threshold 2|n|^t: 15399/938, 34/3, 97/23, 29/4
// for k = 3..6 and (k^2 + k - 4)/(k^2 - 6k + 6) for k >= 7, reduced.
Rational threshold_exponent(int k);

// b >= factor * |n|^t for t = p/q, decided exactly via
// b^q >= factor^q * |n|^p (n != 0 required).
bool ge_threshold(const Int& b, const Int& n, const Rational& t,
                  const Int& factor);

// max{4|n|^34, 4^{6(k-1)} |n|^{6k}}: the scale above which the split-range
// scan and the product-count audit carry theorem force (k >= 3, n != 0).
Int scale_threshold(const Int& n, int k);

// ---- uint64 fast paths (exact; the scanning hot loops live on these) ----

// min(b^k, UINT64_MAX), saturating instead of wrapping
uint64_t pow_sat_u64(uint64_t b, int k);
uint64_t kth_root_u64(uint64_t x, int k);
std::optional<uint64_t> kth_power_witness_u64(uint64_t x, int k);

bool fits_u64(const Int& v);
uint64_t to_u64(const Int& v);
bool fits_i64(const Int& v);
int64_t to_i64(const Int& v);

}  // namespace shiftpow
