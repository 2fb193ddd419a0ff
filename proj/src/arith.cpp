#include "mhs/arith.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <fmt/format.h>

namespace mhs {

namespace {

constexpr std::int64_t kMaxModulus = std::int64_t{1} << 62;

void require_modulus(std::int64_t m) {
    if (m < 2 || m >= kMaxModulus) {
        throw std::invalid_argument(fmt::format("modulus {} outside [2, 2^62)", m));
    }
}

// Extended Euclid on non-negative inputs; returns g and x with a*x = g (mod b).
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x) {
    __int128 old_r = a, r = b, old_s = 1, s = 0;
    while (r != 0) {
        __int128 q = old_r / r;
        __int128 t = old_r - q * r; old_r = r; r = t;
        t = old_s - q * s; old_s = s; s = t;
    }
    x = static_cast<std::int64_t>(old_s % b);
    return static_cast<std::int64_t>(old_r);
}

std::vector<std::int64_t> common_primes(const BigInt& a, std::int64_t m) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), BigInt(m).get_mpz_t());
    return prime_divisors(g);
}

}  // namespace

NonInvertibleTerm::NonInvertibleTerm(std::int64_t index, std::int64_t modulus)
    : MathError(fmt::format("term index {} is not invertible modulo {}", index, modulus)), index_(index) {}

// ---------------------------------------------------------------- Rational

Rational::Rational(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    q_ = mpq_class(num, 1) / mpq_class(den, 1);
}

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    Rational r;
    if (r.q_.set_str(text, 10) != 0 || r.q_.get_den() == 0) {
        throw std::invalid_argument(fmt::format("not a rational: '{}'", text));
    }
    r.q_.canonicalize();
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
}

BigInt Rational::floor() const {
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return out;
}

Rational Rational::frac() const { return *this - Rational(floor()); }

Rational Rational::pow(unsigned e) const {
    Rational r;
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), q_.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), q_.get_den_mpz_t(), e);
    r.q_ = mpq_class(num, den);
    return r;
}

// ---------------------------------------------------------------- Residue

Residue::Residue(std::int64_t value, std::int64_t modulus) : modulus_(modulus) {
    require_modulus(modulus);
    value_ = mod_normalize(value, modulus);
}

Residue::Residue(const BigInt& value, std::int64_t modulus) : modulus_(modulus) {
    require_modulus(modulus);
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), value.get_mpz_t(), BigInt(modulus).get_mpz_t());
    value_ = r.get_si();
}

void Residue::check_same(const Residue& o) const {
    if (modulus_ != o.modulus_) {
        throw ModulusMismatch(fmt::format("residues modulo {} and {} cannot be combined", modulus_, o.modulus_));
    }
}

Residue& Residue::operator+=(const Residue& o) {
    check_same(o);
    value_ += o.value_;
    if (value_ >= modulus_) value_ -= modulus_;
    return *this;
}

Residue& Residue::operator-=(const Residue& o) {
    check_same(o);
    value_ -= o.value_;
    if (value_ < 0) value_ += modulus_;
    return *this;
}

Residue& Residue::operator*=(const Residue& o) {
    check_same(o);
    value_ = mulmod(value_, o.value_, modulus_);
    return *this;
}

Residue Residue::scaled(std::int64_t k) const {
    return Residue(mulmod(value_, mod_normalize(k, modulus_), modulus_), modulus_);
}

// ---------------------------------------------------------------- machine modular helpers

std::int64_t mod_normalize(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
    if (m <= std::int64_t{1} << 31) {
        return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b) %
                                         static_cast<std::uint64_t>(m));
    }
    return static_cast<std::int64_t>(static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b) %
                                     static_cast<unsigned __int128>(m));
}

std::int64_t powmod(std::int64_t a, std::uint64_t e, std::int64_t m) {
    std::int64_t base = mod_normalize(a, m), acc = 1 % m;
    for (; e != 0; e >>= 1) {
        if (e & 1) acc = mulmod(acc, base, m);
        base = mulmod(base, base, m);
    }
    return acc;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && std::abs(r) > std::numeric_limits<std::int64_t>::max() / std::abs(base)) {
            throw std::overflow_error(fmt::format("{}^{} overflows int64", base, exp));
        }
        r *= base;
    }
    return r;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::vector<std::int64_t> prime_divisors(const BigInt& n) {
    std::vector<std::int64_t> out;
    BigInt rest = abs(n);
    for (std::int64_t d = 2; rest > 1; ++d) {
        if (BigInt(d) * d > rest) {
            out.push_back(rest.get_si());
            break;
        }
        if (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(d))) {
            out.push_back(d);
            while (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(d))) rest /= d;
        }
    }
    return out;
}

// ---------------------------------------------------------------- operations

Residue mod_inverse(std::int64_t a, std::int64_t m) {
    require_modulus(m);
    std::int64_t x = 0;
    std::int64_t g = ext_gcd(mod_normalize(a, m), m, x);
    if (g != 1) {
        throw NotInvertible(fmt::format("{} is not invertible modulo {} (gcd {})", a, m, g),
                            prime_divisors(BigInt(g)));
    }
    return Residue(x, m);
}

Residue rational_mod(const Rational& q, std::int64_t m) {
    require_modulus(m);
    const BigInt den = q.denominator();
    auto shared = common_primes(den, m);
    if (!shared.empty()) {
        std::string ps;
        for (auto p : shared) ps += (ps.empty() ? "" : ", ") + std::to_string(p);
        throw NotInvertible(fmt::format("denominator of {} shares prime(s) {} with modulus {}", q.to_string(), ps, m),
                            std::move(shared));
    }
    Residue num(q.numerator(), m);
    Residue d(den, m);
    return num * mod_inverse(d.value(), m);
}

Factorization Factorization::from_factors(std::vector<PrimePower> factors) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].exponent < 1 || !is_prime(factors[i].prime)) {
            throw std::invalid_argument(fmt::format("invalid prime power {}^{}", factors[i].prime, factors[i].exponent));
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (factors[j].prime == factors[i].prime) {
                throw std::invalid_argument(fmt::format("prime {} repeated", factors[i].prime));
            }
        }
    }
    std::sort(factors.begin(), factors.end(), [](const PrimePower& a, const PrimePower& b) {
        return a.exponent != b.exponent ? a.exponent > b.exponent : a.prime < b.prime;
    });
    Factorization f;
    f.factors_ = std::move(factors);
    return f;
}

std::int64_t Factorization::value() const { return power(1); }

std::int64_t Factorization::power(int scale) const {
    std::int64_t n = 1;
    for (const auto& pp : factors_) {
        std::int64_t part = ipow(pp.prime, pp.exponent * scale);
        if (n > std::numeric_limits<std::int64_t>::max() / part) throw std::overflow_error("factorization product overflows int64");
        n *= part;
    }
    return n;
}

std::int64_t Factorization::radical() const {
    std::int64_t r = 1;
    for (const auto& pp : factors_) r *= pp.prime;
    return r;
}

std::vector<std::int64_t> Factorization::primes() const {
    std::vector<std::int64_t> ps;
    for (const auto& pp : factors_) ps.push_back(pp.prime);
    std::sort(ps.begin(), ps.end());
    return ps;
}

bool Factorization::squarefree() const {
    return std::all_of(factors_.begin(), factors_.end(), [](const PrimePower& pp) { return pp.exponent == 1; });
}

Factorization Factorization::restricted(std::span<const std::size_t> indices) const {
    std::vector<PrimePower> sub;
    for (auto i : indices) sub.push_back(factors_.at(i));
    return from_factors(std::move(sub));
}

std::string Factorization::to_string() const {
    std::string s;
    for (const auto& pp : factors_) {
        if (!s.empty()) s += "*";
        s += pp.exponent == 1 ? std::to_string(pp.prime) : fmt::format("{}^{}", pp.prime, pp.exponent);
    }
    return s.empty() ? "1" : s;
}

Factorization factorize(std::int64_t n) {
    if (n < 2) throw std::invalid_argument(fmt::format("cannot factorize {} (< 2)", n));
    std::vector<PrimePower> fs;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        int e = 0;
        while (n % d == 0) { n /= d; ++e; }
        fs.push_back({d, e});
    }
    if (n > 1) fs.push_back({n, 1});
    return Factorization::from_factors(std::move(fs));
}

std::int64_t euler_phi(const Factorization& f) {
    std::int64_t phi = 1;
    for (const auto& pp : f.factors()) phi *= ipow(pp.prime, pp.exponent - 1) * (pp.prime - 1);
    return phi;
}

Residue crt_combine(std::span<const Residue> parts) {
    if (parts.empty()) throw std::invalid_argument("crt_combine needs at least one part");
    std::int64_t value = parts[0].value(), modulus = parts[0].modulus();
    for (const auto& part : parts.subspan(1)) {
        if (gcd64(modulus, part.modulus()) != 1) {
            throw NonCoprimeModuli(fmt::format("moduli {} and {} are not coprime", modulus, part.modulus()));
        }
        if (modulus > kMaxModulus / part.modulus()) throw std::overflow_error("CRT modulus exceeds 2^62");
        // value + modulus * t with t = (r - value) * modulus^{-1} mod m_i
        std::int64_t inv = mod_inverse(modulus, part.modulus()).value();
        std::int64_t t = mulmod(mod_normalize(part.value() - value, part.modulus()), inv, part.modulus());
        value += modulus * t;
        modulus *= part.modulus();
    }
    return Residue(value, modulus);
}

// ---------------------------------------------------------------- InverseTable

InverseTable::InverseTable(std::int64_t modulus, std::int64_t bound) : modulus_(modulus) {
    require_modulus(modulus);
    if (bound < 1) throw std::invalid_argument("inverse table bound must be >= 1");
    inv_.assign(static_cast<std::size_t>(bound) + 1, 0);
    const std::int64_t period = std::min(bound, modulus - 1);
    for (std::int64_t k = 1; k <= period; ++k) {
        std::int64_t x = 0;
        if (ext_gcd(k, modulus, x) == 1) inv_[static_cast<std::size_t>(k)] = mod_normalize(x, modulus);
    }
    // k and k mod m share their inverse; multiples of m stay absent.
    for (std::int64_t k = modulus; k <= bound; ++k) {
        inv_[static_cast<std::size_t>(k)] = inv_[static_cast<std::size_t>(k % modulus)];
    }
}

std::int64_t InverseTable::at(std::int64_t k) const {
    if (!contains(k)) throw NonInvertibleTerm(k, modulus_);
    return inv_[static_cast<std::size_t>(k)];
}

std::size_t InverseTable::size() const {
    return static_cast<std::size_t>(std::count_if(inv_.begin() + 1, inv_.end(), [](std::int64_t v) { return v != 0; }));
}

}  // namespace mhs
