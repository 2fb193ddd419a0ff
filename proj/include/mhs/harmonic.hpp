#pragma once

/**
 * @file harmonic.hpp
 * @brief Evaluators for restricted multiple harmonic sums.
 *
 * Two families live here:
 *  - brute-force oracles that enumerate compositions directly
 *    (triple_sum_naive, kfold_sum_naive) and the small building-block sums
 *    over residue classes used by the congruence checks;
 *  - fast evaluators for the triple sum at N = n over indices coprime to n.
 *    Both reduce the O(n^2) enumeration to an inclusion-exclusion over
 *    subsets T of the primes of n, where each subset contributes a sum of
 *    products of class sums over residues x mod prod(T). Cost is
 *    O(2^s * n). The fast paths never use a closed form in Bernoulli numbers.
 */

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mhs/arith.hpp"

namespace mhs {

enum class SignPattern {
    Uniform,           // every term weighted by 1
    AlternatingFirst,  // term (i, j, k) weighted by (-1)^i
};

std::string to_string(SignPattern s);

// Admits i iff gcd(i, p) = 1 for every listed prime.
class CoprimalityFilter {
public:
    CoprimalityFilter() = default;
    explicit CoprimalityFilter(std::vector<std::int64_t> primes);
    static CoprimalityFilter of(const Factorization& f) { return CoprimalityFilter(f.primes()); }

    bool admits(std::int64_t i) const noexcept {
        for (auto p : primes_) {
            if (i % p == 0) return false;
        }
        return true;
    }
    std::span<const std::int64_t> primes() const noexcept { return primes_; }
    bool empty() const noexcept { return primes_.empty(); }
    std::string to_string() const;

private:
    std::vector<std::int64_t> primes_;
};

// sum over admitted ordered (i, j, k), i + j + k = N, of sign(i) / (ijk) mod m.
// Throws NonInvertibleTerm for an admitted index in [1, N-2] that is not a unit mod m.
Residue triple_sum_naive(std::int64_t N, SignPattern sign, const CoprimalityFilter& filter, std::int64_t m);

// sum over admitted l_1 + ... + l_k = N of prod 1/l_t mod m, by O(k N^2) dynamic programming.
Residue kfold_sum_naive(int k, std::int64_t N, const CoprimalityFilter& filter, std::int64_t m);

// sum of 1/i over i = x (mod P), 1 <= i <= mult*n - 1, where P = rad(n).
// The result is taken modulo n unless a modulus is supplied.
Residue progression_reciprocal_sum(std::int64_t x, std::int64_t mult, const Factorization& f);
Residue progression_reciprocal_sum(std::int64_t x, std::int64_t mult, const Factorization& f, std::int64_t modulus);

// sum over units x mod P of S(x)^2, each S(x) = progression_reciprocal_sum(x, 1, f) taken mod prod p^(2r).
Residue progression_square_sum(const Factorization& f);

// sum_{0 <= x <= p-1, x = r (mod m)} x^k, with 0^0 = 1.
Rational ap_power_sum_direct(std::int64_t p, std::int64_t m, std::int64_t r, int k);
// The same sum through Bernoulli polynomials at fractional-part arguments.
Rational ap_power_sum_bernoulli(std::int64_t p, std::int64_t m, std::int64_t r, int k);

// sum_{x < P, gcd(x,P)=1} (-1)^x / x^3 mod P for squarefree odd P.
// DegenerateDenominator when phi(P) = 2, where the matching closed form has no value.
Residue signed_cube_sum(const Factorization& f);

// sum_{x <= (P-1)/2, gcd(x,P)=1} 1 / x^3 mod P for squarefree odd P.
Residue half_cube_sum(const Factorization& f);

struct ResiduePair {
    Residue lhs;
    Residue rhs;
};

// lhs: triple sum at 2N; rhs: twice the triple sum at N; both mod m.
ResiduePair doubling_check(std::int64_t N, SignPattern sign, const CoprimalityFilter& filter, std::int64_t m);

// sum_{1 <= j < n admitted} 1/j mod n.
Residue unit_harmonic_sum(std::int64_t n, const CoprimalityFilter& filter);

// One inclusion-exclusion term of a fast evaluator, sign already applied.
struct ClassTerm {
    std::vector<std::int64_t> subset;  // primes of T, ascending; empty for T = {}
    Residue value;
};

// Alternating triple sum at n split by subset; the values sum to the triple sum mod n.
std::vector<ClassTerm> alternating_class_terms(const Factorization& f);
Residue triple_sum_fast_alternating(const Factorization& f);

// Pair sum sum_{i+j<n; i,j,i+j admitted} 1/(ij) split by subset, each mod n^2.
std::vector<ClassTerm> uniform_pair_terms(const Factorization& f);
// 3/n times the pair sum, after asserting n | 3 * (pair sum mod n^2).
Residue triple_sum_fast_uniform(const Factorization& f);

// Every subset of {0, ..., s-1} in a fixed order: by size, then lexicographic.
std::vector<std::vector<std::size_t>> subsets_by_size(std::size_t s, bool include_empty);

}  // namespace mhs
