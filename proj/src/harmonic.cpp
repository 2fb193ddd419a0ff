#include "mhs/harmonic.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "mhs/bernoulli.hpp"

namespace mhs {

namespace {

void require_fast_domain(const Factorization& f) {
    if (f.empty()) throw std::invalid_argument("fast evaluator needs n >= 5");
    for (auto p : f.primes()) {
        if (p < 5) {
            throw std::invalid_argument(
                fmt::format("fast evaluators need every prime factor >= 5; {} has {}", f.to_string(), p));
        }
    }
}

void require_odd_squarefree(const Factorization& f) {
    if (f.empty() || !f.squarefree() || f.value() % 2 == 0) {
        throw std::invalid_argument(fmt::format("expected an odd squarefree modulus, got {}", f.to_string()));
    }
}

// a[i] = i^{-1} mod m for admitted i in [1, bound], 0 elsewhere.
std::vector<std::int64_t> admitted_inverses(std::int64_t bound, const CoprimalityFilter& filter, std::int64_t m) {
    std::vector<std::int64_t> a(static_cast<std::size_t>(bound) + 1, 0);
    if (bound < 1) return a;
    InverseTable inv(m, bound);
    for (std::int64_t i = 1; i <= bound; ++i) {
        if (!filter.admits(i)) continue;
        if (!inv.contains(i)) throw NonInvertibleTerm(i, m);
        a[static_cast<std::size_t>(i)] = inv[i];
    }
    return a;
}

std::int64_t addmod(std::int64_t a, std::int64_t b, std::int64_t m) {
    std::int64_t s = a + b;
    return s >= m ? s - m : s;
}

std::int64_t product_of(std::span<const std::int64_t> ps) {
    return std::accumulate(ps.begin(), ps.end(), std::int64_t{1}, std::multiplies<>());
}

std::vector<std::int64_t> pick(std::span<const std::int64_t> ps, std::span<const std::size_t> idx) {
    std::vector<std::int64_t> out;
    for (auto i : idx) out.push_back(ps[i]);
    return out;
}

}  // namespace

std::string to_string(SignPattern s) { return s == SignPattern::Uniform ? "uniform" : "alternating"; }

CoprimalityFilter::CoprimalityFilter(std::vector<std::int64_t> primes) : primes_(std::move(primes)) {
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
    for (auto p : primes_) {
        if (!is_prime(p)) throw std::invalid_argument(fmt::format("filter entry {} is not prime", p));
    }
}

std::string CoprimalityFilter::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < primes_.size(); ++i) s += (i ? "," : "") + std::to_string(primes_[i]);
    return s + "}";
}

std::vector<std::vector<std::size_t>> subsets_by_size(std::size_t s, bool include_empty) {
    std::vector<std::vector<std::size_t>> out;
    if (include_empty) out.emplace_back();
    for (std::size_t size = 1; size <= s; ++size) {
        std::vector<bool> chosen(s, false);
        std::fill(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(size), true);
        do {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < s; ++i) {
                if (chosen[i]) idx.push_back(i);
            }
            out.push_back(std::move(idx));
        } while (std::prev_permutation(chosen.begin(), chosen.end()));
    }
    return out;
}

Residue triple_sum_naive(std::int64_t N, SignPattern sign, const CoprimalityFilter& filter, std::int64_t m) {
    if (N < 3) throw std::invalid_argument(fmt::format("triple sum needs N >= 3, got {}", N));
    const auto a = admitted_inverses(N - 2, filter, m);
    // pair[v] = sum_{j + k = v} a[j] a[k]
    std::vector<std::int64_t> pair(static_cast<std::size_t>(N), 0);
    for (std::int64_t v = 2; v <= N - 1; ++v) {
        std::int64_t acc = 0;
        for (std::int64_t j = 1; j < v; ++j) {
            const auto aj = a[static_cast<std::size_t>(j)];
            if (aj == 0) continue;
            acc = addmod(acc, mulmod(aj, a[static_cast<std::size_t>(v - j)], m), m);
        }
        pair[static_cast<std::size_t>(v)] = acc;
    }
    std::int64_t total = 0;
    for (std::int64_t i = 1; i <= N - 2; ++i) {
        std::int64_t t = mulmod(a[static_cast<std::size_t>(i)], pair[static_cast<std::size_t>(N - i)], m);
        if (sign == SignPattern::AlternatingFirst && i % 2 == 1) t = t == 0 ? 0 : m - t;
        total = addmod(total, t, m);
    }
    return Residue(total, m);
}

Residue kfold_sum_naive(int k, std::int64_t N, const CoprimalityFilter& filter, std::int64_t m) {
    if (k < 1 || N < k) throw std::invalid_argument(fmt::format("k-fold sum needs 1 <= k <= N, got k={}, N={}", k, N));
    // No part can exceed N - (k - 1).
    const auto a = admitted_inverses(N - k + 1, filter, m);
    const auto max_part = static_cast<std::int64_t>(a.size()) - 1;
    std::vector<std::int64_t> prev(static_cast<std::size_t>(N) + 1, 0), next(prev.size(), 0);
    prev[0] = 1;
    for (int t = 1; t <= k; ++t) {
        std::fill(next.begin(), next.end(), 0);
        for (std::int64_t v = t; v <= N; ++v) {
            std::int64_t acc = 0;
            for (std::int64_t i = 1; i <= std::min(v, max_part); ++i) {
                const auto ai = a[static_cast<std::size_t>(i)];
                const auto h = prev[static_cast<std::size_t>(v - i)];
                if (ai != 0 && h != 0) acc = addmod(acc, mulmod(ai, h, m), m);
            }
            next[static_cast<std::size_t>(v)] = acc;
        }
        std::swap(prev, next);
    }
    return Residue(prev[static_cast<std::size_t>(N)], m);
}

Residue progression_reciprocal_sum(std::int64_t x, std::int64_t mult, const Factorization& f) {
    return progression_reciprocal_sum(x, mult, f, f.value());
}

Residue progression_reciprocal_sum(std::int64_t x, std::int64_t mult, const Factorization& f, std::int64_t modulus) {
    if (f.empty()) throw std::invalid_argument("progression sum needs a nonempty factorization");
    if (mult < 1) throw std::invalid_argument("progression multiplier must be >= 1");
    const std::int64_t P = f.radical();
    if (x < 1 || x > P - 1) throw std::invalid_argument(fmt::format("residue {} outside [1, {}]", x, P - 1));
    if (gcd64(x, P) != 1) throw NonCoprimeResidue(fmt::format("{} shares a factor with {}", x, P));
    const std::int64_t last = mult * f.value() - 1;
    std::int64_t acc = 0;
    for (std::int64_t i = x; i <= last; i += P) acc = addmod(acc, mod_inverse(i, modulus).value(), modulus);
    return Residue(acc, modulus);
}

Residue progression_square_sum(const Factorization& f) {
    if (f.empty()) throw std::invalid_argument("progression square sum needs a nonempty factorization");
    const std::int64_t P = f.radical(), n = f.value(), n2 = f.power(2);
    InverseTable inv(n2, std::max<std::int64_t>(n - 1, 1));
    std::int64_t total = 0;
    for (std::int64_t x = 1; x < P; ++x) {
        if (gcd64(x, P) != 1) continue;
        std::int64_t s = 0;
        for (std::int64_t i = x; i < n; i += P) s = addmod(s, inv[i], n2);
        total = addmod(total, mulmod(s, s, n2), n2);
    }
    return Residue(total, n2);
}

Rational ap_power_sum_direct(std::int64_t p, std::int64_t m, std::int64_t r, int k) {
    if (p < 1 || m < 1 || k < 0) throw std::invalid_argument("power sum needs p >= 1, m >= 1, k >= 0");
    BigInt total = 0;
    for (std::int64_t x = mod_normalize(r, m); x <= p - 1; x += m) {
        BigInt term;
        mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(x), static_cast<unsigned long>(k));
        total += term;
    }
    return Rational(total);
}

Rational ap_power_sum_bernoulli(std::int64_t p, std::int64_t m, std::int64_t r, int k) {
    if (p < 1 || m < 1 || k < 0) throw std::invalid_argument("power sum needs p >= 1, m >= 1, k >= 0");
    const Rational upper = Rational(p, m) + Rational(r - p, m).frac();
    const Rational lower = Rational(r, m).frac();
    const Rational scale = Rational(m).pow(static_cast<unsigned>(k)) / Rational(k + 1);
    return scale * (bernoulli_poly_eval(k + 1, upper) - bernoulli_poly_eval(k + 1, lower));
}

Residue signed_cube_sum(const Factorization& f) {
    require_odd_squarefree(f);
    const std::int64_t P = f.value();
    if (euler_phi(f) == 2) throw DegenerateDenominator(fmt::format("phi({}) - 2 = 0", P));
    std::int64_t acc = 0;
    for (std::int64_t x = 1; x < P; ++x) {
        if (gcd64(x, P) != 1) continue;
        std::int64_t t = mod_inverse(powmod(x, 3, P), P).value();
        acc = x % 2 == 1 ? addmod(acc, P - t, P) : addmod(acc, t, P);
    }
    return Residue(acc, P);
}

Residue half_cube_sum(const Factorization& f) {
    require_odd_squarefree(f);
    const std::int64_t P = f.value();
    if (euler_phi(f) == 2) throw DegenerateDenominator(fmt::format("phi({}) - 2 = 0", P));
    std::int64_t acc = 0;
    for (std::int64_t x = 1; x <= (P - 1) / 2; ++x) {
        if (gcd64(x, P) != 1) continue;
        acc = addmod(acc, mod_inverse(powmod(x, 3, P), P).value(), P);
    }
    return Residue(acc, P);
}

ResiduePair doubling_check(std::int64_t N, SignPattern sign, const CoprimalityFilter& filter, std::int64_t m) {
    return {triple_sum_naive(2 * N, sign, filter, m), triple_sum_naive(N, sign, filter, m).scaled(2)};
}

Residue unit_harmonic_sum(std::int64_t n, const CoprimalityFilter& filter) {
    const auto a = admitted_inverses(n - 1, filter, n);
    std::int64_t acc = 0;
    for (auto v : a) acc = addmod(acc, v, n);
    return Residue(acc, n);
}

std::vector<ClassTerm> alternating_class_terms(const Factorization& f) {
    require_fast_domain(f);
    const std::int64_t n = f.value();
    const auto primes = f.primes();
    const CoprimalityFilter filter(primes);
    const auto inv = admitted_inverses(n - 1, filter, n);
    // Sum over j != m with j, m, |m - j| admitted of (-1)^m / (j m^2); the
    // condition on m - j is removed by inclusion-exclusion, leaving for each T
    // a product of class sums over j = m = x (mod prod T).
    std::vector<ClassTerm> terms;
    for (const auto& idx : subsets_by_size(primes.size(), true)) {
        auto subset = pick(primes, idx);
        const std::int64_t P = product_of(subset);
        std::vector<std::int64_t> recip(static_cast<std::size_t>(P), 0), signed_sq(static_cast<std::size_t>(P), 0);
        for (std::int64_t j = 1; j < n; ++j) {
            const auto a = inv[static_cast<std::size_t>(j)];
            if (a == 0) continue;
            const auto cls = static_cast<std::size_t>(j % P);
            recip[cls] = addmod(recip[cls], a, n);
            std::int64_t sq = mulmod(a, a, n);
            signed_sq[cls] = addmod(signed_sq[cls], j % 2 == 1 ? (sq == 0 ? 0 : n - sq) : sq, n);
        }
        std::int64_t acc = 0;
        for (std::size_t x = 0; x < recip.size(); ++x) acc = addmod(acc, mulmod(recip[x], signed_sq[x], n), n);
        terms.push_back({std::move(subset), Residue(idx.size() % 2 == 0 ? acc : -acc, n)});
    }
    return terms;
}

Residue triple_sum_fast_alternating(const Factorization& f) {
    Residue total(0, f.value());
    for (const auto& t : alternating_class_terms(f)) total += t.value;
    return total;
}

std::vector<ClassTerm> uniform_pair_terms(const Factorization& f) {
    require_fast_domain(f);
    const std::int64_t n = f.value(), n2 = f.power(2);
    const auto primes = f.primes();
    const auto inv = admitted_inverses(n - 1, CoprimalityFilter(primes), n2);
    // sum_{i+j<n} 1/(ij) = 2 sum_{j<m, m-j admitted} 1/(jm); after inclusion-exclusion
    // each T contributes sum_x (S_T(x)^2 - Q_T(x)) over classes x mod prod T.
    std::vector<ClassTerm> terms;
    for (const auto& idx : subsets_by_size(primes.size(), true)) {
        auto subset = pick(primes, idx);
        const std::int64_t P = product_of(subset);
        std::vector<std::int64_t> s(static_cast<std::size_t>(P), 0), q(static_cast<std::size_t>(P), 0);
        for (std::int64_t k = 1; k < n; ++k) {
            const auto a = inv[static_cast<std::size_t>(k)];
            if (a == 0) continue;
            const auto cls = static_cast<std::size_t>(k % P);
            s[cls] = addmod(s[cls], a, n2);
            q[cls] = addmod(q[cls], mulmod(a, a, n2), n2);
        }
        std::int64_t acc = 0;
        for (std::size_t x = 0; x < s.size(); ++x) {
            acc = addmod(acc, mulmod(s[x], s[x], n2), n2);
            acc = addmod(acc, q[x] == 0 ? 0 : n2 - q[x], n2);
        }
        terms.push_back({std::move(subset), Residue(idx.size() % 2 == 0 ? acc : -acc, n2)});
    }
    return terms;
}

Residue triple_sum_fast_uniform(const Factorization& f) {
    const std::int64_t n = f.value(), n2 = f.power(2);
    Residue pair_sum(0, n2);
    for (const auto& t : uniform_pair_terms(f)) pair_sum += t.value;
    const Residue lifted = pair_sum.scaled(3);
    if (lifted.value() % n != 0) {
        throw LiftDivisibilityFailure(
            fmt::format("3 * pair sum = {} mod {} is not divisible by {}", lifted.value(), n2, n));
    }
    return Residue(lifted.value() / n, n);
}

}  // namespace mhs
