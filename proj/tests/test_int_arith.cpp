#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "shiftpow/int_arith.hpp"

using namespace shiftpow;

// independent oracle: GMP's own root routine
static Int gmp_root(const Int& x, int k) {
  Int r;
  mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
  return r;
}

TEST_CASE("integer_kth_root: pinned values") {
  CHECK(integer_kth_root(8, 3) == 2);
  CHECK(integer_kth_root(63, 3) == 3);  // 27 <= 63 < 64
  CHECK(integer_kth_root(0, 5) == 0);
  CHECK(integer_kth_root(1, 7) == 1);
  CHECK(integer_kth_root(Int("1000000000000000000000000"), 1) ==
        Int("1000000000000000000000000"));
  CHECK_THROWS_AS(integer_kth_root(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(integer_kth_root(-1, 2), std::invalid_argument);
}

TEST_CASE("integer_kth_root: exhaustive bracket property, x <= 10^6, k in 2..10") {
  uint64_t failures = 0;
  for (int k = 2; k <= 10; ++k) {
    for (uint64_t x = 0; x <= 1'000'000; ++x) {
      uint64_t r = kth_root_u64(x, k);
      if (!(pow_sat_u64(r, k) <= x && pow_sat_u64(r + 1, k) > x)) ++failures;
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("integer_kth_root: matches GMP on large random inputs") {
  std::mt19937_64 rng(20240811);
  for (int iter = 0; iter < 500; ++iter) {
    const int bits = 65 + static_cast<int>(rng() % 512);
    Int x = 0;
    for (int b = 0; b < bits; b += 32)
      x = (x << 32) + Int(static_cast<unsigned long>(rng() & 0xffffffffu));
    x |= Int(1) << (bits - 1);
    const int k = 2 + static_cast<int>(rng() % 12);
    Int mine = integer_kth_root(x, k);
    CHECK(mine == gmp_root(x, k));
    CHECK(pow_int(mine, k) <= x);
    CHECK(pow_int(mine + 1, k) > x);
  }
}

TEST_CASE("integer_kth_root: exact powers of large bases round-trip") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    Int base = Int(static_cast<unsigned long>(rng() % 1000000 + 2));
    base = base * base + Int(static_cast<unsigned long>(rng() % 997));
    const int k = 2 + static_cast<int>(rng() % 9);
    Int x = pow_int(base, k);
    CHECK(integer_kth_root(x, k) == base);
    CHECK(integer_kth_root(x - 1, k) == base - 1);
    CHECK(integer_kth_root(x + 1, k) == base);
  }
}

TEST_CASE("integer_kth_root: saturation edge at 2^64 - 1") {
  CHECK(kth_root_u64(UINT64_MAX, 8) == 255);  // 255^8 <= 2^64-1 < 256^8
  CHECK(kth_root_u64(UINT64_MAX, 2) == 4294967295ULL);
  CHECK(kth_root_u64(UINT64_MAX, 64) == 1);
  CHECK(!kth_power_witness_u64(UINT64_MAX, 8));
  CHECK(integer_kth_root(Int(pow_int(2, 64) - 1), 8) == 255);
}

TEST_CASE("ceil_kth_root") {
  CHECK(ceil_kth_root(1, 3) == 1);
  CHECK(ceil_kth_root(8, 3) == 2);
  CHECK(ceil_kth_root(9, 3) == 3);
  CHECK(ceil_kth_root(0, 4) == 1);
}

TEST_CASE("kth_power_witness: pinned values") {
  CHECK(kth_power_witness(64, 3) == Int(4));
  CHECK(!kth_power_witness(63, 3));
  CHECK(!kth_power_witness(0, 3));  // y must be >= 1
  CHECK(!kth_power_witness(-8, 3));
  CHECK(kth_power_witness(1, 9) == Int(1));
  CHECK(kth_power_witness(7, 1) == Int(7));
}

TEST_CASE("kth_power_witness: y^k recognized, y^k +- 1 rejected") {
  uint64_t failures = 0;
  for (int k = 2; k <= 8; ++k) {
    for (long y = 1; y <= 1000; ++y) {
      Int p = pow_int(y, k);
      auto w = kth_power_witness(p, k);
      if (!w || *w != y) ++failures;
      if (kth_power_witness(p - 1, k)) ++failures;
      if (kth_power_witness(p + 1, k)) ++failures;
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("shifted_power_witness") {
  CHECK(shifted_power_witness(1, 7, ShiftParams(3, 1)) == Int(2));   // 8 = 2^3
  CHECK(shifted_power_witness(2, 13, ShiftParams(3, 1)) == Int(3));  // 27 = 3^3
  CHECK(!shifted_power_witness(1, 1, ShiftParams(3, -1)));           // 0 excluded
  CHECK_THROWS_AS(shifted_power_witness(0, 1, ShiftParams(3, 1)),
                  std::invalid_argument);
}

TEST_CASE("ShiftParams validation") {
  CHECK_THROWS_AS(ShiftParams(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(ShiftParams(3, 0), std::invalid_argument);
  CHECK(ShiftParams(2, -5).abs_shift() == 5);
}

TEST_CASE("count_up_to") {
  FiniteSet a = {2, 9, 28, 65};
  CHECK(count_up_to(a, 30) == 3);
  CHECK(count_up_to({}, 100) == 0);
  CHECK(count_up_to({5}, 4) == 0);
  SUBCASE("monotone in the bound") {
    Int prev = 0;
    for (long x = 0; x <= 70; ++x) {
      Int c = count_up_to(a, x);
      CHECK(c >= prev);
      prev = c;
    }
    CHECK(prev == 4);
  }
}

TEST_CASE("tail constants") {
  CHECK(large_count_cap(3) == 6);
  CHECK(large_count_cap(4) == 4);
  CHECK(large_count_cap(5) == 3);
  CHECK(large_count_cap(6) == 2);
  CHECK(large_count_cap(9) == 2);
  CHECK_THROWS_AS(large_count_cap(2), std::invalid_argument);

  CHECK(threshold_exponent(3) == Rational(15399, 938));
  CHECK(threshold_exponent(4) == Rational(34, 3));
  CHECK(threshold_exponent(5) == Rational(97, 23));
  CHECK(threshold_exponent(6) == Rational(29, 4));
  // (k^2+k-4)/(k^2-6k+6) at k = 7 reduces to 52/13 = 4
  CHECK(threshold_exponent(7) == Rational(4, 1));
  CHECK(threshold_exponent(8) == Rational(68, 22));  // reduces to 34/11
  CHECK(threshold_exponent(8).den == 11);
  CHECK_THROWS_AS(threshold_exponent(2), std::invalid_argument);
}

TEST_CASE("Rational normalization") {
  Rational r(4, -6);
  CHECK(r.num == -2);
  CHECK(r.den == 3);
  CHECK(Rational(0, 7) == Rational(0, 3));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("ge_threshold: pinned values") {
  CHECK(ge_threshold(2, 1, Rational(17, 1), 2));   // 2|1|^17 = 2
  CHECK(!ge_threshold(1, 1, Rational(17, 1), 2));
  // boundary of 2*|2|^{34/3} = 2^{37/3}: 5160^3 < 2^37 <= 5161^3
  CHECK(ge_threshold(5162, 2, Rational(34, 3), 2));
  CHECK(ge_threshold(5161, 2, Rational(34, 3), 2));
  CHECK(!ge_threshold(5160, 2, Rational(34, 3), 2));
  CHECK_THROWS_AS(ge_threshold(5, 0, Rational(1, 1), 2), std::invalid_argument);
}

TEST_CASE("ge_threshold: monotone in b and agrees with floating except near the boundary") {
  std::mt19937_64 rng(99);
  uint64_t monotone_failures = 0, float_disagreements = 0;
  for (int iter = 0; iter < 300; ++iter) {
    Int n = Int(static_cast<unsigned long>(rng() % 9 + 1));
    if (rng() & 1) n = -n;
    Rational t(static_cast<long>(rng() % 40 + 1), static_cast<long>(rng() % 6 + 1));
    Int factor = static_cast<unsigned long>(rng() % 3 + 1);
    const double exact =
        factor.get_d() * std::pow(Int(abs(n)).get_d(), t.to_double());
    if (!std::isfinite(exact) || exact > 1e15) continue;
    bool prev = false;
    for (Int b = 0; b <= Int(static_cast<unsigned long>(exact * 1.5) + 4);
         b += std::max<unsigned long>(1, static_cast<unsigned long>(exact / 37) + 1)) {
      bool now = ge_threshold(b, n, t, factor);
      if (prev && !now) ++monotone_failures;  // once true, must stay true
      prev = now;
      const double bd = b.get_d();
      if (std::abs(bd - exact) > 1.0 && now != (bd >= exact))
        ++float_disagreements;  // only the boundary may disagree
    }
  }
  CHECK(monotone_failures == 0);
  CHECK(float_disagreements == 0);
}

TEST_CASE("scale_threshold") {
  CHECK(scale_threshold(1, 3) == 16777216);  // max{4, 4^12}
  CHECK(scale_threshold(1, 7) == pow_int(4, 36));
  // n = 2, k = 3: max{4*2^34, 4^12*2^18} = max{2^36, 2^42} = 2^42
  CHECK(scale_threshold(2, 3) == pow_int(2, 42));
  CHECK(scale_threshold(-2, 3) == pow_int(2, 42));
  CHECK_THROWS_AS(scale_threshold(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(scale_threshold(1, 2), std::invalid_argument);
}

TEST_CASE("validate_finite_set") {
  CHECK_NOTHROW(validate_finite_set({1, 2, 100}));
  CHECK_NOTHROW(validate_finite_set({}));
  CHECK_THROWS_AS(validate_finite_set({2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(validate_finite_set({3, 2}), std::invalid_argument);
  CHECK_THROWS_AS(validate_finite_set({0, 2}), std::invalid_argument);
}
