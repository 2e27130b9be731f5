#pragma once

// Finite-set multiplicative structure: product sets, an exact reducibility
// decider, truncations of shifted k-th power sets, the {1, m}-dilation
// examples, and perturbation distance between a set and the truncated powers.

#include <iosfwd>
#include <optional>

#include "shiftpow/int_arith.hpp"

namespace shiftpow {

// {a*b : a in A, b in B}, sorted, duplicates collapsed
FiniteSet product_set(const FiniteSet& A, const FiniteSet& B);

struct Decomposition {
  FiniteSet A, B;  // both of size >= 2 with product_set(A, B) == S
};

// Exact decision: a witness S = A*B with |A|, |B| >= 2, or empty when none
// exists.  Complete search: posits min(A)*min(B) = min(S) over the
// factorizations of min(S), restricts candidates to quotients of elements of
// S, and runs a pruned include/exclude search over the A-candidates with the
// maximal compatible B.  Guards: |S| <= 256 and min(S) <= 10^12; beyond that
// an explicit error is thrown rather than risking a silent incomplete answer.
std::optional<Decomposition> find_decomposition(const FiniteSet& S);

// {x^k + n : x >= 1} ∩ [1, X]
FiniteSet truncated_shifted_powers(int k, const Int& n, const Int& X);

// first `count` positive values of x^k + n, x = 1, 2, ...
FiniteSet shifted_powers_prefix(int k, const Int& n, size_t count);

// ({1, m} * {x^k + n : x >= 1}) ∩ [1, X]: every b <= X and every m*b <= X.
// The product set is truncated at X; the factor sets are not.
FiniteSet rm_example(const Int& m, int k, const Int& n, const Int& X);

struct PerturbationDistance {
  Int added;    // |R \ M| within [1, X]
  Int removed;  // |M \ R|
};
// M = truncated_shifted_powers(k, n, X); elements of R above X are ignored.
PerturbationDistance perturbation_distance(const FiniteSet& R, int k,
                                           const Int& n, const Int& X);

// FiniteSet stream format: one decimal integer per line, strictly increasing.
FiniteSet read_finite_set(std::istream& in);
void write_finite_set(std::ostream& out, const FiniteSet& s);

}  // namespace shiftpow
