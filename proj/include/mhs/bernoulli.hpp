#pragma once

// Exact Bernoulli numbers (B_1 = -1/2), Bernoulli polynomials, and the
// multiplication / half-argument identities built on them.

#include <cstdint>
#include <utility>
#include <vector>

#include "mhs/arith.hpp"

namespace mhs {

// Exact B_0..B_N from sum_{j<=k} C(k+1, j) B_j = 0.
class BernoulliTable {
public:
    explicit BernoulliTable(int max_index);

    int max_index() const noexcept { return static_cast<int>(values_.size()) - 1; }
    const Rational& operator[](int k) const { return values_.at(static_cast<std::size_t>(k)); }
    const std::vector<Rational>& values() const noexcept { return values_; }

private:
    std::vector<Rational> values_;
};

BernoulliTable bernoulli_numbers(int max_index);

// Largest index served by bernoulli(); beyond it ResourceLimit is thrown.
inline constexpr int kBernoulliIndexLimit = 2000;

// B_k from a process-wide table that grows on demand under a lock.
Rational bernoulli(int k);

Rational bernoulli_poly_eval(int k, const Rational& x);

// Product of the primes q with (q - 1) | k; k must be even and positive.
std::int64_t staudt_clausen_denominator(int k);

// B_k mod m; NotInvertible names every prime of m dividing the denominator.
Residue bernoulli_mod(int k, std::int64_t m);

struct IdentitySides {
    Rational lhs;
    Rational rhs;
};

// m^(k-1) * sum_{r<m} B_k(x + r/m)  vs  B_k(m x)
IdentitySides raabe_multiplication(int m, int k, const Rational& x);

// B_{2n}(1/2)  vs  (1 - 2^(2n-1)) / 2^(2n-1) * B_{2n}
IdentitySides half_value_identity(int n);

}  // namespace mhs
