#include <doctest.h>

#include "mhs/bernoulli.hpp"
#include "mhs/congruence.hpp"
#include "mhs/report_io.hpp"
#include "oracles.hpp"

using namespace mhs;

namespace {

std::int64_t lhs_of(const CongruenceReport& r) { return std::get<Residue>(*r.lhs).value(); }
std::int64_t rhs_of(const CongruenceReport& r) { return std::get<Residue>(*r.rhs).value(); }

Factorization pp(std::int64_t p, int r) { return Factorization::from_factors({{p, r}}); }

}  // namespace

TEST_CASE("theorem1 closed form examples") {
    CHECK(theorem1_rhs(factorize(5)) == Residue(3, 5));
    CHECK(theorem1_rhs(factorize(25)) == Residue(15, 25));
    // the {13} term carries a 5 in its raw denominator that the multiplier 5 cancels
    CHECK_NOTHROW(theorem1_rhs(factorize(65)));
    CHECK_THROWS_AS(theorem1_terms(factorize(3)), DegenerateDenominator);
}

TEST_CASE("theorem1 terms") {
    const auto terms = theorem1_terms(factorize(35));
    REQUIRE(terms.size() == 3);
    CHECK(terms[0].label() == "{5}");
    CHECK(terms[0].integer_multiplier == 7);
    CHECK(terms[0].rational_coefficient == Rational(3, 4));
    CHECK(terms[0].bernoulli_index == 2);
    CHECK(terms[0].sign() == -1);
    CHECK(terms[2].label() == "{5,7}");
    CHECK(terms[2].bernoulli_index == 22);
    CHECK(terms[2].value() == Rational(3, 44) * bernoulli(22));
}

TEST_CASE("theorem1 prime case agrees with the half B_{p-3} form") {
    for (std::int64_t p = 5; p <= 50; ++p) {
        if (!is_prime(p)) continue;
        CHECK(theorem1_rhs(factorize(p)) == rational_mod(Rational(1, 2) * bernoulli(static_cast<int>(p - 3)), p));
    }
    for (std::int64_t p : {5, 7, 11}) {
        for (int r = 1; r <= 3; ++r) {
            const auto n = ipow(p, r);
            CHECK(theorem1_rhs(pp(p, r)) ==
                  rational_mod(Rational(BigInt(ipow(p, r - 1)), 2) * bernoulli(static_cast<int>(p - 3)), n));
        }
    }
}

TEST_CASE("theorem2 prime-power case agrees with both printed forms") {
    CHECK(theorem2_rhs(factorize(25)) == Residue(15, 25));
    CHECK(theorem2_rhs(factorize(5)) == Residue(3, 5));
    for (std::int64_t p : {5, 7, 11}) {
        for (int r = 1; r <= 3; ++r) {
            const auto n = ipow(p, r);
            CHECK(theorem2_rhs(pp(p, r)) ==
                  rational_mod(Rational(-2) * Rational(BigInt(ipow(p, r - 1))) * bernoulli(static_cast<int>(p - 3)), n));
        }
    }
}

TEST_CASE("theorem2 at 35 is undefined: B_18 carries 7, B_40 carries 5") {
    CHECK(bernoulli(18).denominator() % 7 == 0);
    CHECK(bernoulli(40).denominator() % 5 == 0);
    try {
        theorem2_rhs(factorize(35));
        FAIL("expected NotInvertible");
    } catch (const NotInvertible& e) {
        CHECK(e.primes() == std::vector<std::int64_t>{5, 7});
        const std::string what = e.what();
        CHECK(what.find("{5}") != std::string::npos);
        CHECK(what.find("{7}") != std::string::npos);
    }
}

TEST_CASE("verify_theorem1 reports") {
    const auto a = verify_theorem1(factorize(5), 0);
    CHECK(a.pass);
    CHECK(lhs_of(a) == 3);
    CHECK(a.method == Method::Both);
    const auto b = verify_theorem1(factorize(5), 1);
    CHECK(b.pass);
    CHECK(lhs_of(b) == 1);
    CHECK(rhs_of(b) == 1);
    CHECK(b.modulus == 5);
}

TEST_CASE("verify_theorem1 at 35 fails against the oracle and localizes") {
    const auto r = verify_theorem1(factorize(35), 0);
    const auto oracle_value = oracle::reduce(oracle::triple(35, true, {5, 7}), 35);
    CHECK(lhs_of(r) == oracle_value);
    CHECK(lhs_of(r) == 30);
    CHECK(rhs_of(r) == 34);
    CHECK_FALSE(r.pass);
    CHECK(r.notes.find("mismatch localized") != std::string::npos);
    CHECK(r.notes.find("T={5,7}") != std::string::npos);
    CHECK(r.notes.find("!= fast") == std::string::npos);
}

TEST_CASE("verify_theorem2 reports") {
    const auto a = verify_theorem2(factorize(25), 0);
    CHECK(a.pass);
    CHECK(lhs_of(a) == 15);
    const auto b = verify_theorem2(factorize(5), 1);
    CHECK(b.pass);
    CHECK(lhs_of(b) == 1);
    const auto c = verify_theorem2(factorize(35), 0);
    CHECK_FALSE(c.pass);
    CHECK(c.lhs.has_value());
    CHECK_FALSE(c.rhs.has_value());
    CHECK(c.notes.find("RHS") != std::string::npos);
}

TEST_CASE("usage errors raise, mismatches do not") {
    CHECK_THROWS_AS(verify_theorem1(factorize(10), 0), std::invalid_argument);
    CHECK_THROWS_AS(verify_theorem1(factorize(15), 0, Method::Fast), std::invalid_argument);
    CHECK_NOTHROW(verify_theorem1(factorize(15), 0, Method::Naive));
    CHECK_THROWS_AS(verify_corollary(CorollaryId::C1_1, {}), std::invalid_argument);
    CHECK_THROWS_AS(verify_corollary(CorollaryId::C1_1, {.p = 9}), std::invalid_argument);
    CHECK_NOTHROW(verify_lemma(LemmaId::L2_6, {.n = 35}));
}

TEST_CASE("corollary reports") {
    const auto c11 = verify_corollary(CorollaryId::C1_1, {.p = 5});
    CHECK(c11.pass);
    CHECK(lhs_of(c11) == 3);
    const auto c11_3 = verify_corollary(CorollaryId::C1_1, {.p = 3});
    CHECK(c11_3.pass);
    CHECK(lhs_of(c11_3) == 2);
    const auto c14 = verify_corollary(CorollaryId::C1_4, {.p = 5, .r = 2});
    CHECK(c14.pass);
    CHECK(lhs_of(c14) == 15);
    CHECK(c14.notes.find("agree") != std::string::npos);
    for (auto [p, r, expected] : {std::tuple{5, 2, 15}, {5, 3, 75}, {7, 2, 35}, {11, 2, 22}}) {
        const auto c12 = verify_corollary(CorollaryId::C1_2, {.p = p, .r = r});
        CHECK(c12.pass);
        CHECK(lhs_of(c12) == expected);
    }
}

TEST_CASE("corollary1.3 records both readings") {
    const auto r = verify_corollary(CorollaryId::C1_3, {.p1 = 5, .r1 = 1, .p2 = 7, .r2 = 1});
    CHECK(lhs_of(r) == 30);
    CHECK(r.notes.find("(a) literal undefined") != std::string::npos);
    CHECK(r.notes.find("(b) theorem1 = 34 (differs from oracle)") != std::string::npos);
    CHECK_FALSE(r.pass);
}

TEST_CASE("literature reports") {
    for (auto [p, v] : {std::pair{5, 3}, {7, 1}, {11, 3}, {13, 3}}) {
        const auto r = verify_literature(LiteratureId::Eq1_1, {.p = p});
        CHECK(r.pass);
        CHECK(lhs_of(r) == v);
    }
    const auto e15 = verify_literature(LiteratureId::Eq1_5, {.p = 5});
    CHECK(e15.pass);
    CHECK(lhs_of(e15) == 18);
    CHECK(e15.notes.find("733/56") != std::string::npos);
    for (std::int64_t p : {7, 11, 13}) {
        for (std::int64_t k : {3, 4, 5}) CHECK(verify_literature(LiteratureId::Eq1_2, {.p = p, .k = k}).pass);
    }
    // the five-fold sum at p = 7 is 25/6 = 3 mod 7, not 6
    const auto e14 = verify_literature(LiteratureId::Eq1_4, {.p = 7, .r = 1});
    CHECK(lhs_of(e14) == oracle::reduce(oracle::kfold(5, 7, {7}), 7));
    CHECK(lhs_of(e14) == 3);
    CHECK(rhs_of(e14) == 6);
    CHECK_FALSE(e14.pass);
}

TEST_CASE("lemma reports") {
    CHECK(verify_lemma(LemmaId::L2_1, {.p = 7}).pass);
    CHECK(verify_lemma(LemmaId::L2_2, {.n = 175}).pass);
    for (std::int64_t n : {5, 25, 7}) CHECK(verify_lemma(LemmaId::L2_3, {.n = n}).pass);
    // 3 * B_4 = -1/10: the multiplier cancels the 3, and 1 + 5^2 = 26 = 8 mod 9 agrees
    const auto l23 = verify_lemma(LemmaId::L2_3, {.n = 3});
    CHECK(l23.pass);
    CHECK(lhs_of(l23) == 8);
    const auto l24 = verify_lemma(LemmaId::L2_4, {.k = 4, .m = 3, .point = Rational(1, 2)});
    CHECK(l24.pass);
    CHECK(l24.modulus == 0);
    CHECK(std::holds_alternative<Rational>(*l24.lhs));
    CHECK(verify_lemma(LemmaId::L2_5, {.n = 6}).pass);
    CHECK(verify_lemma(LemmaId::L2_6, {.n = 5}).pass);
    CHECK(verify_lemma(LemmaId::L2_6, {.n = 7}).pass);
    const auto l26 = verify_lemma(LemmaId::L2_6, {.n = 35});
    CHECK_FALSE(l26.pass);
    CHECK(lhs_of(l26) == 2);
    CHECK(rhs_of(l26) == rational_mod(Rational(6, 22) * bernoulli(22), 35).value());
    CHECK(verify_lemma(LemmaId::L2_7, {.n = 9}).pass);
}

TEST_CASE("method both always agrees across a grid") {
    for (auto n : theorem_moduli(5, 400)) {
        for (const auto& r : {verify_theorem1(factorize(n), 0), verify_theorem2(factorize(n), 0)}) {
            CHECK(r.method == Method::Both);
            CHECK(r.notes.find("!= fast") == std::string::npos);
        }
    }
}

TEST_CASE("grids are deterministic") {
    const auto a = full_suite({.max_n = 60});
    const auto b = full_suite({.max_n = 60});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == b[i].id);
        CHECK(a[i].params == b[i].params);
        CHECK(a[i].pass == b[i].pass);
        CHECK(a[i].notes == b[i].notes);
    }
    CHECK(render_table(a) == render_table(b));
    CHECK(a.front().id.rfind("eq", 0) == 0);
    CHECK(a.back().id == "theorem2");
}

TEST_CASE("report JSON round-trips") {
    std::vector<CongruenceReport> reps = {verify_theorem1(factorize(35), 0), verify_theorem2(factorize(35), 0),
                                          verify_lemma(LemmaId::L2_4, {.m = 2}), verify_corollary(CorollaryId::C1_1, {.p = 5})};
    const auto doc = render_json(reps);
    const auto back = parse_reports(doc);
    REQUIRE(back.size() == reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
        CHECK(back[i].id == reps[i].id);
        CHECK(back[i].modulus == reps[i].modulus);
        CHECK(back[i].lhs == reps[i].lhs);
        CHECK(back[i].rhs == reps[i].rhs);
        CHECK(back[i].pass == reps[i].pass);
        CHECK(back[i].method == reps[i].method);
        CHECK(back[i].notes == reps[i].notes);
    }
    const auto j = nlohmann::json::parse(doc);
    CHECK(j["reports"][0]["modulus"] == "35");
    CHECK(j["reports"][0]["lhs"] == "30");
    CHECK(j["reports"][1]["rhs"].is_null());
    CHECK(j["summary"]["failed"] == 2);
}
