#pragma once

/**
 * @file congruence.hpp
 * @brief Closed-form right-hand sides and LHS-vs-RHS verification reports.
 *
 * Verifiers never throw on a mathematical mismatch or a guard error (a
 * Bernoulli denominator that is not a unit, a zero denominator): they return
 * a report with pass = false and the reason in `notes`. Missing or malformed
 * parameters are usage errors and raise std::invalid_argument.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mhs/arith.hpp"
#include "mhs/harmonic.hpp"

namespace mhs {

enum class Method { Naive, Fast, Both };

std::string to_string(Method m);
Method parse_method(const std::string& text);

// Residue for modular statements; Rational for exact identities (modulus 0).
using ReportValue = std::variant<Residue, Rational>;

std::string value_string(const ReportValue& v);

struct CongruenceReport {
    std::string id;
    std::string params;
    std::int64_t modulus = 0;
    std::optional<ReportValue> lhs;
    std::optional<ReportValue> rhs;
    bool pass = false;
    Method method = Method::Naive;
    double elapsed_ms = 0.0;
    std::string notes;

    void add_note(const std::string& note);
    // pass = both sides present and equal, and no recorded inconsistency.
    void settle(bool consistent = true);
};

// (-1)^|subset| * integer_multiplier * rational_coefficient * B_{bernoulli_index}
struct SubsetTerm {
    std::vector<std::int64_t> subset;
    BigInt integer_multiplier;
    Rational rational_coefficient;
    int bernoulli_index = 0;

    int sign() const { return subset.size() % 2 == 0 ? 1 : -1; }
    Rational value() const;
    std::string label() const;
};

// Terms (n / prod S) * 3 / (2 (phi(prod S) - 2)) * B_{phi(prod S) - 2}.
// DegenerateDenominator when some phi(prod S) = 2.
std::vector<SubsetTerm> theorem1_terms(const Factorization& f);
// Terms prod_{p in S} p^(r_p - 1) * 3 * B_{phi(prod_{p in S} p^2) - 2}.
std::vector<SubsetTerm> theorem2_terms(const Factorization& f);

// Reduces every term as one exact rational; NotInvertible names the subset.
Residue reduce_terms(const std::vector<SubsetTerm>& terms, std::int64_t modulus);
Residue theorem1_rhs(const Factorization& f);
Residue theorem2_rhs(const Factorization& f);

// Both for N <= 2000, fast above.
Method default_method(std::int64_t N);

CongruenceReport verify_theorem1(const Factorization& f, int r0, std::optional<Method> method = std::nullopt);
CongruenceReport verify_theorem2(const Factorization& f, int r0, std::optional<Method> method = std::nullopt);

// Parameter bag shared by the corollary, literature and lemma verifiers.
struct Params {
    std::optional<std::int64_t> n{}, p{}, r{}, k{}, x{}, m{}, p1{}, r1{}, p2{}, r2{};
    std::optional<Rational> point{};  // Raabe argument
    std::optional<SignPattern> sign{};
    std::optional<Method> method{};

    std::string describe() const;
};

enum class CorollaryId { C1_1, C1_2, C1_3, C1_4, C1_5 };
enum class LiteratureId { Eq1_1, Eq1_2, Eq1_3, Eq1_4, Eq1_5, Eq1_6 };
enum class LemmaId { L2_1, L2_2, L2_3, L2_4, L2_5, L2_6, L2_7 };

std::string to_string(CorollaryId id);
std::string to_string(LiteratureId id);
std::string to_string(LemmaId id);
CorollaryId parse_corollary(const std::string& text);
LiteratureId parse_literature(const std::string& text);
LemmaId parse_lemma(const std::string& text);

CongruenceReport verify_corollary(CorollaryId id, const Params& params);
CongruenceReport verify_literature(LiteratureId id, const Params& params);
CongruenceReport verify_lemma(LemmaId id, const Params& params);

// Parameter grids in a fixed order; used by `verify all` and the acceptance run.
struct GridOptions {
    std::int64_t max_n = 500;
};

std::vector<CongruenceReport> theorem_grid(int which, const GridOptions& opts);
std::vector<CongruenceReport> corollary_grid(CorollaryId id, const GridOptions& opts);
std::vector<CongruenceReport> literature_grid(LiteratureId id, const GridOptions& opts);
std::vector<CongruenceReport> lemma_grid(LemmaId id, const GridOptions& opts);
std::vector<CongruenceReport> full_suite(const GridOptions& opts);

// Odd n in [lo, hi] whose prime factors are all >= 5.
std::vector<std::int64_t> theorem_moduli(std::int64_t lo, std::int64_t hi);

}  // namespace mhs
