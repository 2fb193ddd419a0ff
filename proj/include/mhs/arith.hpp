#pragma once

/**
 * @file arith.hpp
 * @brief Exact rationals, canonical residues and the small modular toolkit
 *        (inverses, CRT, factorization, totient) the evaluators build on.
 *
 * Residues carry their modulus at runtime and keep their value in [0, m).
 * Moduli are bounded by 2^62 so that products fit in unsigned __int128.
 */

#include <compare>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "mhs/errors.hpp"

namespace mhs {

using BigInt = mpz_class;

// Reduced fraction with positive denominator; zero is 0/1.
class Rational {
public:
    Rational() = default;
    Rational(long num) : q_(num) {}  // NOLINT(implicit)
    Rational(long num, long den);
    Rational(const BigInt& num, const BigInt& den = 1);

    static Rational parse(const std::string& text);

    BigInt numerator() const { return q_.get_num(); }
    BigInt denominator() const { return q_.get_den(); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    BigInt floor() const;
    // x - floor(x), always in [0, 1).
    Rational frac() const;
    Rational pow(unsigned e) const;

    std::string to_string() const { return q_.get_str(); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.q_ = -a.q_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    mpq_class q_{0};
};

// Integer paired with its modulus, value kept canonical in [0, modulus).
class Residue {
public:
    Residue(std::int64_t value, std::int64_t modulus);
    Residue(const BigInt& value, std::int64_t modulus);

    std::int64_t value() const noexcept { return value_; }
    std::int64_t modulus() const noexcept { return modulus_; }

    Residue& operator+=(const Residue& o);
    Residue& operator-=(const Residue& o);
    Residue& operator*=(const Residue& o);
    Residue scaled(std::int64_t k) const;

    friend Residue operator+(Residue a, const Residue& b) { return a += b; }
    friend Residue operator-(Residue a, const Residue& b) { return a -= b; }
    friend Residue operator*(Residue a, const Residue& b) { return a *= b; }
    friend Residue operator-(const Residue& a) { return Residue(-a.value_, a.modulus_); }

    friend bool operator==(const Residue&, const Residue&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Residue& r) {
        return os << r.value_ << " mod " << r.modulus_;
    }

private:
    void check_same(const Residue& o) const;

    std::int64_t value_;
    std::int64_t modulus_;
};

struct PrimePower {
    std::int64_t prime;
    int exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// n = prod p^e, ordered by exponent descending then prime ascending.
class Factorization {
public:
    // Validates distinct primes and positive exponents, then canonicalizes.
    static Factorization from_factors(std::vector<PrimePower> factors);

    std::span<const PrimePower> factors() const noexcept { return factors_; }
    std::size_t size() const noexcept { return factors_.size(); }
    bool empty() const noexcept { return factors_.empty(); }

    std::int64_t value() const;
    // Product of the distinct primes.
    std::int64_t radical() const;
    std::vector<std::int64_t> primes() const;
    bool squarefree() const;
    // prod p^(scale * e)
    std::int64_t power(int scale) const;
    Factorization restricted(std::span<const std::size_t> indices) const;

    std::string to_string() const;

    friend bool operator==(const Factorization&, const Factorization&) = default;

private:
    std::vector<PrimePower> factors_;
};

// Modular primitives on machine integers. All moduli must be >= 2.
std::int64_t mod_normalize(std::int64_t a, std::int64_t m);
std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t powmod(std::int64_t a, std::uint64_t e, std::int64_t m);
std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t ipow(std::int64_t base, int exp);

Residue mod_inverse(std::int64_t a, std::int64_t m);
Residue rational_mod(const Rational& q, std::int64_t m);
Factorization factorize(std::int64_t n);
std::int64_t euler_phi(const Factorization& f);
Residue crt_combine(std::span<const Residue> parts);

// Prime divisors by trial division, ascending.
std::vector<std::int64_t> prime_divisors(const BigInt& n);
bool is_prime(std::int64_t n);

// Inverses of the units k in [1, bound] modulo m; non-units are absent.
class InverseTable {
public:
    InverseTable(std::int64_t modulus, std::int64_t bound);

    std::int64_t modulus() const noexcept { return modulus_; }
    std::int64_t bound() const noexcept { return static_cast<std::int64_t>(inv_.size()) - 1; }
    bool contains(std::int64_t k) const noexcept {
        return k >= 1 && k <= bound() && inv_[static_cast<std::size_t>(k)] != 0;
    }
    // Precondition: contains(k).
    std::int64_t operator[](std::int64_t k) const noexcept { return inv_[static_cast<std::size_t>(k)]; }
    std::int64_t at(std::int64_t k) const;
    std::size_t size() const;

private:
    std::int64_t modulus_;
    std::vector<std::int64_t> inv_;  // 0 marks a non-unit
};

}  // namespace mhs
