#include <doctest.h>

#include "mhs/bernoulli.hpp"
#include "mhs/harmonic.hpp"
#include "oracles.hpp"

using namespace mhs;

namespace {

const CoprimalityFilter kNone;

std::int64_t triple_ref(std::int64_t N, SignPattern s, const std::vector<std::int64_t>& primes, std::int64_t m) {
    return oracle::reduce(oracle::triple(N, s == SignPattern::AlternatingFirst, primes), m);
}

}  // namespace

TEST_CASE("triple sum examples") {
    CHECK(triple_sum_naive(3, SignPattern::Uniform, kNone, 3).value() == 1);
    CHECK(triple_sum_naive(5, SignPattern::Uniform, kNone, 5).value() == 3);
    CHECK(triple_sum_naive(5, SignPattern::AlternatingFirst, kNone, 5).value() == 3);
    CHECK(triple_sum_naive(10, SignPattern::Uniform, CoprimalityFilter({5}), 5).value() == 1);
    CHECK(oracle::triple(5, false, {}) == mpq_class(7, 4));
    CHECK(oracle::triple(5, true, {}) == mpq_class(-3, 4));
}

TEST_CASE("triple sum names the non-invertible index") {
    try {
        triple_sum_naive(4, SignPattern::Uniform, kNone, 4);
        FAIL("expected NonInvertibleTerm");
    } catch (const NonInvertibleTerm& e) {
        CHECK(e.index() == 2);
    }
}

TEST_CASE("triple sum matches the exact oracle") {
    for (std::int64_t N = 3; N <= 40; ++N) {
        for (auto s : {SignPattern::Uniform, SignPattern::AlternatingFirst}) {
            for (std::int64_t m : {5, 7, 11, 35, 49, 97}) {
                const auto primes = factorize(m).primes();
                const CoprimalityFilter filter(primes);
                CHECK(triple_sum_naive(N, s, filter, m).value() == triple_ref(N, s, primes, m));
            }
        }
    }
}

TEST_CASE("k-fold sum examples") {
    CHECK(kfold_sum_naive(1, 3, kNone, 7).value() == 5);
    CHECK(kfold_sum_naive(2, 5, kNone, 5).value() == 0);
    // five parts summing to 7: 5 * 1/3 + 10 * 1/4 = 25/6, and 25/6 = 3 mod 7
    CHECK(oracle::kfold(5, 7, {}) == mpq_class(25, 6));
    CHECK(kfold_sum_naive(5, 7, kNone, 7).value() == 3);
}

TEST_CASE("k-fold sum matches the exact oracle") {
    for (int k = 1; k <= 5; ++k) {
        for (std::int64_t N = k; N <= 16; ++N) {
            for (std::int64_t m : {17, 19, 23}) {
                const auto expected = oracle::reduce(oracle::kfold(k, N, {}), m);
                CHECK(kfold_sum_naive(k, N, kNone, m).value() == expected);
            }
            const auto filtered = oracle::reduce(oracle::kfold(k, N, {3}), 9);
            CHECK(kfold_sum_naive(k, N, CoprimalityFilter({3}), 9).value() == filtered);
        }
    }
    // three unfiltered parts is the uniform triple sum
    CHECK(kfold_sum_naive(3, 11, kNone, 13) == triple_sum_naive(11, SignPattern::Uniform, kNone, 13));
}

TEST_CASE("progression reciprocal sums") {
    CHECK(progression_reciprocal_sum(1, 1, factorize(5)) == Residue(1, 5));
    CHECK(progression_reciprocal_sum(2, 1, factorize(25)) == Residue(15, 25));
    CHECK(progression_reciprocal_sum(1, 1, factorize(15)) == Residue(1, 15));
    CHECK_THROWS_AS(progression_reciprocal_sum(5, 1, factorize(35)), NonCoprimeResidue);
    // against a direct loop with mult = 2
    const auto f = factorize(175);
    for (std::int64_t x = 1; x < 35; ++x) {
        if (oracle::gcd(x, 35) != 1) continue;
        mpq_class s = 0;
        for (std::int64_t i = x; i <= 2 * 175 - 1; i += 35) s += mpq_class(1, static_cast<unsigned long>(i));
        s.canonicalize();
        CHECK(progression_reciprocal_sum(x, 2, f).value() == oracle::reduce(s, 175));
    }
}

TEST_CASE("progression square sums") {
    CHECK(progression_square_sum(factorize(5)) == Residue(20, 25));
    CHECK(progression_square_sum(factorize(25)) == Residue(500, 625));
    // direct: sum of (x^-1 mod 25)^2 over x in 1..4
    std::int64_t s = 0;
    for (std::int64_t x = 1; x <= 4; ++x) {
        const auto inv = oracle::inverse_scan(x, 25);
        s = (s + inv * inv) % 25;
    }
    CHECK(s == 20);
}

TEST_CASE("power sums over progressions") {
    CHECK(ap_power_sum_direct(3, 2, 1, 1) == Rational(1));
    CHECK(ap_power_sum_bernoulli(3, 2, 1, 1) == Rational(1));
    CHECK(ap_power_sum_direct(1, 1, 0, 3) == Rational(0));
    CHECK(ap_power_sum_direct(5, 1, 0, 2) == Rational(30));
    CHECK(ap_power_sum_bernoulli(5, 1, 0, 2) == Rational(30));
    CHECK(ap_power_sum_bernoulli(7, 1, 0, 0) == Rational(7));
    for (std::int64_t p = 1; p <= 12; ++p) {
        for (std::int64_t m = 1; m <= 4; ++m) {
            for (std::int64_t r = 0; r < m; ++r) {
                for (int k = 0; k <= 6; ++k) {
                    mpz_class s = 0;
                    for (std::int64_t x = 0; x < p; ++x) {
                        if (x % m == r) s += oracle::ipow(x, k);  // 0^0 = 1
                    }
                    CHECK(ap_power_sum_direct(p, m, r, k) == Rational(s));
                    CHECK(ap_power_sum_bernoulli(p, m, r, k) == Rational(s));
                }
            }
        }
    }
}

TEST_CASE("cube sums") {
    CHECK(signed_cube_sum(factorize(5)).value() == 2);
    // -1 + 1 - 6 + 1 - 6 + 6 = -5 = 2 mod 7; the closed form 3/8 B_4 = -1/80 also gives 2
    CHECK(signed_cube_sum(factorize(7)).value() == 2);
    CHECK(rational_mod(Rational(3, 8) * bernoulli(4), 7).value() == 2);
    CHECK_THROWS_AS(signed_cube_sum(factorize(3)), DegenerateDenominator);
    CHECK(half_cube_sum(factorize(5)).value() == 3);
    CHECK(half_cube_sum(factorize(7)).value() == 1);
    CHECK_THROWS_AS(half_cube_sum(factorize(3)), DegenerateDenominator);
    CHECK_THROWS_AS(half_cube_sum(factorize(25)), std::invalid_argument);
    for (std::int64_t P : {11, 13, 35, 55, 77, 143}) {
        mpq_class alt = 0, half = 0;
        for (std::int64_t x = 1; x < P; ++x) {
            if (oracle::gcd(x, P) != 1) continue;
            mpq_class t(1, static_cast<unsigned long>(x * x * x));
            t.canonicalize();
            alt += x % 2 ? mpq_class(-t) : t;
            if (2 * x < P) half += t;
        }
        CHECK(signed_cube_sum(factorize(P)).value() == oracle::reduce(alt, P));
        CHECK(half_cube_sum(factorize(P)).value() == oracle::reduce(half, P));
    }
}

TEST_CASE("doubling check") {
    const auto u = doubling_check(5, SignPattern::Uniform, CoprimalityFilter({5}), 5);
    CHECK(u.lhs.value() == 1);
    CHECK(u.rhs.value() == 1);
    const auto a = doubling_check(5, SignPattern::AlternatingFirst, CoprimalityFilter({5}), 5);
    CHECK(a.lhs.value() == 1);
    CHECK(a.rhs.value() == 1);
    const auto b = doubling_check(7, SignPattern::Uniform, CoprimalityFilter({7}), 7);
    CHECK(b.lhs == b.rhs);
    const auto c = doubling_check(9, SignPattern::Uniform, CoprimalityFilter({3}), 9);
    CHECK(c.lhs == c.rhs);
}

TEST_CASE("unit harmonic sum") {
    for (std::int64_t n : {5, 7, 25, 35, 121}) {
        const auto filter = CoprimalityFilter::of(factorize(n));
        mpq_class s = 0;
        for (std::int64_t i = 1; i < n; ++i) {
            if (filter.admits(i)) s += mpq_class(1, static_cast<unsigned long>(i));
        }
        s.canonicalize();
        CHECK(unit_harmonic_sum(n, filter).value() == oracle::reduce(s, n));
    }
}

TEST_CASE("subsets are ordered by size then lexicographically") {
    const auto s = subsets_by_size(3, true);
    const std::vector<std::vector<std::size_t>> expected = {{}, {0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
    CHECK(s == expected);
    CHECK(subsets_by_size(3, false).size() == 7);
}

TEST_CASE("fast evaluators equal the naive oracle") {
    CHECK(triple_sum_fast_alternating(factorize(5)).value() == 3);
    CHECK(triple_sum_fast_uniform(factorize(5)).value() == 3);
    CHECK(triple_sum_fast_uniform(factorize(25)).value() == 15);
    for (std::int64_t n : {5, 7, 11, 25, 35, 49, 55, 77, 121, 125, 175, 245, 385, 455}) {
        const auto f = factorize(n);
        const auto filter = CoprimalityFilter::of(f);
        CHECK(triple_sum_fast_alternating(f) == triple_sum_naive(n, SignPattern::AlternatingFirst, filter, n));
        CHECK(triple_sum_fast_uniform(f) == triple_sum_naive(n, SignPattern::Uniform, filter, n));
    }
    CHECK_THROWS_AS(triple_sum_fast_uniform(factorize(15)), std::invalid_argument);
}

TEST_CASE("fast evaluators match the exact rational oracle") {
    for (std::int64_t n : {25, 35}) {
        const auto primes = factorize(n).primes();
        CHECK(triple_sum_fast_alternating(factorize(n)).value() == oracle::reduce(oracle::triple(n, true, primes), n));
        CHECK(triple_sum_fast_uniform(factorize(n)).value() == oracle::reduce(oracle::triple(n, false, primes), n));
    }
}

TEST_CASE("class terms add up to the fast value") {
    for (std::int64_t n : {35, 175, 385}) {
        const auto f = factorize(n);
        const auto terms = alternating_class_terms(f);
        CHECK(terms.size() == std::size_t{1} << f.size());
        CHECK(terms.front().subset.empty());
        Residue total(0, n);
        for (const auto& t : terms) total += t.value;
        CHECK(total == triple_sum_fast_alternating(f));
        for (const auto& t : uniform_pair_terms(f)) CHECK(t.value.modulus() == n * n);
    }
}
