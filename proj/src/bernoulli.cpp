#include "mhs/bernoulli.hpp"

#include <mutex>
#include <stdexcept>

#include <fmt/format.h>

namespace mhs {

namespace {

void extend(std::vector<Rational>& values, int max_index) {
    if (values.empty()) values.emplace_back(1);
    for (int k = static_cast<int>(values.size()); k <= max_index; ++k) {
        if (k == 1) {
            values.emplace_back(-1, 2);
            continue;
        }
        if (k % 2 == 1) {
            values.emplace_back(0);
            continue;
        }
        // B_k = -1/(k+1) * sum_{j<k} C(k+1, j) B_j; odd j >= 3 vanish.
        BigInt binom = 1;  // C(k+1, j)
        Rational sum;
        for (int j = 0; j < k; ++j) {
            if (j < 2 || j % 2 == 0) sum += Rational(binom) * values[static_cast<std::size_t>(j)];
            binom = binom * (k + 1 - j) / (j + 1);
        }
        values.push_back(-sum / Rational(k + 1));
    }
}

struct SharedTable {
    std::mutex mutex;
    std::vector<Rational> values;
};

SharedTable& shared_table() {
    static SharedTable table;
    return table;
}

}  // namespace

BernoulliTable::BernoulliTable(int max_index) {
    if (max_index < 0) throw std::invalid_argument("Bernoulli table size must be >= 0");
    extend(values_, max_index);
}

BernoulliTable bernoulli_numbers(int max_index) { return BernoulliTable(max_index); }

Rational bernoulli(int k) {
    if (k < 0) throw std::invalid_argument(fmt::format("Bernoulli index {} < 0", k));
    if (k > kBernoulliIndexLimit) {
        throw ResourceLimit(fmt::format("B_{} exceeds the exact-table limit {}", k, kBernoulliIndexLimit));
    }
    auto& table = shared_table();
    std::lock_guard lock(table.mutex);
    if (static_cast<int>(table.values.size()) <= k) extend(table.values, k);
    return table.values[static_cast<std::size_t>(k)];
}

Rational bernoulli_poly_eval(int k, const Rational& x) {
    if (k < 0) throw std::invalid_argument(fmt::format("Bernoulli polynomial degree {} < 0", k));
    // Horner over descending powers: B_k(x) = sum_j C(k, j) B_j x^(k-j)
    Rational acc;
    BigInt binom = 1;
    std::vector<Rational> coeffs;
    coeffs.reserve(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) {
        coeffs.push_back(Rational(binom) * bernoulli(j));
        binom = binom * (k - j) / (j + 1);
    }
    for (const auto& c : coeffs) acc = acc * x + c;
    return acc;
}

std::int64_t staudt_clausen_denominator(int k) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument(fmt::format("von Staudt-Clausen needs even k >= 2, got {}", k));
    std::int64_t den = 1;
    for (std::int64_t d = 1; d <= k; ++d) {
        if (k % d == 0 && is_prime(d + 1)) den *= d + 1;
    }
    return den;
}

Residue bernoulli_mod(int k, std::int64_t m) {
    const Rational b = bernoulli(k);
    try {
        return rational_mod(b, m);
    } catch (const NotInvertible& e) {
        std::string ps;
        for (auto p : e.primes()) ps += (ps.empty() ? "" : ", ") + std::to_string(p);
        throw NotInvertible(fmt::format("B_{} is not reducible modulo {}: denominator {} contains prime(s) {}", k, m,
                                        b.denominator().get_str(), ps),
                            e.primes());
    }
}

IdentitySides raabe_multiplication(int m, int k, const Rational& x) {
    if (m < 1 || k < 0) throw std::invalid_argument("Raabe identity needs m >= 1, k >= 0");
    Rational sum;
    for (int r = 0; r < m; ++r) sum += bernoulli_poly_eval(k, x + Rational(r, m));
    // m^(k-1), which is 1/m when k = 0
    Rational scale = k == 0 ? Rational(1, m) : Rational(m).pow(static_cast<unsigned>(k - 1));
    return {scale * sum, bernoulli_poly_eval(k, Rational(m) * x)};
}

IdentitySides half_value_identity(int n) {
    if (n < 1) throw std::invalid_argument("half-value identity needs n >= 1");
    const Rational two_pow = Rational(2).pow(static_cast<unsigned>(2 * n - 1));
    return {bernoulli_poly_eval(2 * n, Rational(1, 2)), (Rational(1) - two_pow) / two_pow * bernoulli(2 * n)};
}

}  // namespace mhs
