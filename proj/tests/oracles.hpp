#pragma once

// Brute-force reference values built straight on GMP rationals. Nothing here
// touches the library's arithmetic, so agreement is an independent check.

#include <cstdint>
#include <functional>
#include <vector>

#include <gmpxx.h>

namespace oracle {

inline bool admitted(std::int64_t i, const std::vector<std::int64_t>& primes) {
    for (auto p : primes) {
        if (i % p == 0) return false;
    }
    return true;
}

// q mod m via mpz_invert; returns -1 when the denominator is not a unit.
inline std::int64_t reduce(const mpq_class& q, std::int64_t m) {
    mpz_class inv;
    const mpz_class mod(static_cast<long>(m));
    if (mpz_invert(inv.get_mpz_t(), q.get_den().get_mpz_t(), mod.get_mpz_t()) == 0) return -1;
    mpz_class r = q.get_num() * inv;
    mpz_class out;
    mpz_fdiv_r(out.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
    return out.get_si();
}

// sum over i+j+k = N of w(i)/(ijk), w(i) = (-1)^i or 1
inline mpq_class triple(std::int64_t N, bool alternating, const std::vector<std::int64_t>& primes) {
    mpq_class s = 0;
    for (std::int64_t i = 1; i <= N - 2; ++i) {
        if (!admitted(i, primes)) continue;
        for (std::int64_t j = 1; i + j <= N - 1; ++j) {
            const std::int64_t k = N - i - j;
            if (!admitted(j, primes) || !admitted(k, primes)) continue;
            mpq_class t(1, static_cast<unsigned long>(i * j * k));
            t.canonicalize();
            s += (alternating && i % 2 == 1) ? mpq_class(-t) : t;
        }
    }
    return s;
}

// sum over compositions of N into k admitted parts of prod 1/l
inline mpq_class kfold(int k, std::int64_t N, const std::vector<std::int64_t>& primes) {
    std::function<mpq_class(int, std::int64_t)> go = [&](int parts, std::int64_t rest) -> mpq_class {
        if (parts == 0) return rest == 0 ? mpq_class(1) : mpq_class(0);
        mpq_class s = 0;
        for (std::int64_t l = 1; l <= rest - (parts - 1); ++l) {
            if (!admitted(l, primes)) continue;
            mpq_class t(1, static_cast<unsigned long>(l));
            t.canonicalize();
            s += t * go(parts - 1, rest - l);
        }
        return s;
    };
    return go(k, N);
}

// Akiyama-Tanigawa; gives B_1 = +1/2, flipped to the library's -1/2.
inline std::vector<mpq_class> bernoulli(int n) {
    std::vector<mpq_class> out, a(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        a[m] = mpq_class(1, m + 1);
        for (int j = m; j >= 1; --j) {
            a[j - 1] = j * (a[j - 1] - a[j]);
            a[j - 1].canonicalize();
        }
        out.push_back(m == 1 ? mpq_class(-a[0]) : a[0]);
    }
    return out;
}

inline mpz_class ipow(std::int64_t b, int e) {
    mpz_class r = 1;
    for (int i = 0; i < e; ++i) r *= static_cast<long>(b);
    return r;
}

inline std::int64_t gcd(std::int64_t a, std::int64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a < 0 ? -a : a;
}

// modular inverse by exhaustive search; tiny moduli only
inline std::int64_t inverse_scan(std::int64_t a, std::int64_t m) {
    a = ((a % m) + m) % m;
    for (std::int64_t y = 1; y < m; ++y) {
        if (a * y % m == 1) return y;
    }
    return m == 1 ? 0 : -1;
}

}  // namespace oracle
