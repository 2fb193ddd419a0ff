#include "mhs/acceptance.hpp"

#include <array>
#include <chrono>
#include <functional>
#include <stdexcept>

#include <fmt/format.h>

#include "mhs/bernoulli.hpp"
#include "mhs/congruence.hpp"
#include "mhs/report_io.hpp"

namespace mhs {

namespace {

using Clock = std::chrono::steady_clock;

// Collects reports and ad hoc checks for one criterion.
struct Ledger {
    bool ok = true;
    std::vector<std::string> failures;

    void check(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            failures.push_back(what);
        }
    }
    void report(const CongruenceReport& r) { check(r.pass, table_line(r)); }
    // lhs and rhs both equal the given residue value
    void anchor(const CongruenceReport& r, std::int64_t expected) {
        auto is = [&](const std::optional<ReportValue>& v) {
            return v && std::holds_alternative<Residue>(*v) && std::get<Residue>(*v).value() == expected;
        };
        check(is(r.lhs) && is(r.rhs), fmt::format("anchor {} [{}]: expected {} on both sides", r.id, r.params, expected));
    }
};

struct Criterion {
    std::string title;
    double limit_ms;
    std::function<void(Ledger&)> body;
};

Factorization n_of(std::int64_t n) { return factorize(n); }

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {"eq1.1 uniform triple sum mod p", 1'000,
         [](Ledger& l) {
             for (std::int64_t p : {5, 7, 11, 13}) {
                 auto r = verify_literature(LiteratureId::Eq1_1, {.p = p});
                 l.report(r);
                 if (p == 5) l.anchor(r, 3);
             }
         }},
        {"corollary1.1 alternating triple sum mod p", 1'000,
         [](Ledger& l) {
             for (std::int64_t p : {3, 5, 7, 11, 13}) {
                 auto r = verify_corollary(CorollaryId::C1_1, {.p = p, .method = Method::Naive});
                 l.report(r);
                 if (p == 3) l.anchor(r, 2);
                 if (p == 5) l.anchor(r, 3);
             }
         }},
        {"corollary1.2 alternating sum mod p^r", 5'000,
         [](Ledger& l) {
             for (auto [p, r] : {std::pair{5, 2}, {5, 3}, {7, 2}, {11, 2}}) {
                 auto rep = verify_corollary(CorollaryId::C1_2, {.p = p, .r = r, .method = Method::Naive});
                 l.report(rep);
                 if (p == 5 && r == 2) l.anchor(rep, 15);
             }
         }},
        {"corollary1.4 and eq1.3 uniform sum mod p^r, both printed forms", 5'000,
         [](Ledger& l) {
             for (auto [p, r] : {std::pair{5, 2}, {5, 3}, {7, 2}}) {
                 auto rep = verify_corollary(CorollaryId::C1_4, {.p = p, .r = r});
                 l.report(rep);
                 l.report(verify_literature(LiteratureId::Eq1_3, {.p = p, .r = r}));
                 if (p == 5 && r == 2) l.anchor(rep, 15);
             }
         }},
        {"eq1.2 k-fold sums by parity", 10'000,
         [](Ledger& l) {
             for (std::int64_t p : {7, 11, 13}) {
                 for (std::int64_t k : {3, 4, 5}) {
                     if (k <= p - 2) l.report(verify_literature(LiteratureId::Eq1_2, {.p = p, .k = k}));
                 }
             }
         }},
        {"eq1.4 five-fold sum mod p, anchor p=7 -> 6", 30'000,
         [](Ledger& l) {
             for (std::int64_t p : {7, 11, 13}) {
                 auto r = verify_literature(LiteratureId::Eq1_4, {.p = p, .r = 1});
                 l.report(r);
                 if (p == 7) l.anchor(r, 6);
             }
         }},
        {"eq1.5 alternating sum mod p^2", 5'000,
         [](Ledger& l) {
             for (std::int64_t p : {5, 7}) {
                 auto r = verify_literature(LiteratureId::Eq1_5, {.p = p});
                 l.report(r);
                 if (p == 5) l.anchor(r, 18);
             }
         }},
        {"theorem1 composite moduli, naive and fast", 120'000,
         [](Ledger& l) {
             for (std::int64_t n : {35, 175, 245, 385}) l.report(verify_theorem1(n_of(n), 0, Method::Both));
             l.report(verify_theorem1(n_of(1225), 0, Method::Fast));
         }},
        {"theorem1 doubling 2^r0 n", 10'000,
         [](Ledger& l) {
             for (std::int64_t n : {5, 35}) {
                 for (int r0 : {1, 2}) {
                     auto r = verify_theorem1(n_of(n), r0);
                     l.report(r);
                     if (n == 5 && r0 == 1) l.anchor(r, 1);
                 }
             }
         }},
        {"theorem2 with mod n^2 lift, B_838 build", 120'000,
         [](Ledger& l) {
             const auto start = Clock::now();
             const BernoulliTable table(838);
             const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
             l.check(ms < 60'000, fmt::format("B_0..B_838 took {:.0f} ms (budget 60000)", ms));
             for (std::int64_t n : {25, 35, 175}) {
                 auto r = verify_theorem2(n_of(n), 0, Method::Both);
                 l.report(r);
                 l.check(r.notes.find("divisib") == std::string::npos, fmt::format("lift assertion fired at n={}", n));
             }
         }},
        {"lemma suites 2.1 to 2.7", 120'000,
         [](Ledger& l) {
             auto all = [&](std::vector<CongruenceReport> reps) {
                 for (const auto& r : reps) l.report(r);
             };
             all(lemma_grid(LemmaId::L2_1, {.max_n = 30}));
             all(lemma_grid(LemmaId::L2_2, {.max_n = 3000}));
             for (std::int64_t n : {5, 25, 7}) l.report(verify_lemma(LemmaId::L2_3, {.n = n}));
             all(lemma_grid(LemmaId::L2_4, {}));
             all(lemma_grid(LemmaId::L2_5, {}));
             for (std::int64_t n : {5, 7, 35, 55, 77}) l.report(verify_lemma(LemmaId::L2_6, {.n = n}));
             all(lemma_grid(LemmaId::L2_7, {.max_n = 500}));
         }},
        {"fast evaluators equal the naive oracle, odd n <= 2000", 300'000,
         [](Ledger& l) {
             for (auto n : theorem_moduli(5, 2000)) {
                 const auto f = factorize(n);
                 const auto filter = CoprimalityFilter::of(f);
                 const auto alt = triple_sum_naive(n, SignPattern::AlternatingFirst, filter, n);
                 const auto uni = triple_sum_naive(n, SignPattern::Uniform, filter, n);
                 l.check(alt == triple_sum_fast_alternating(f), fmt::format("alternating n={}", n));
                 l.check(uni == triple_sum_fast_uniform(f), fmt::format("uniform n={}", n));
             }
         }},
        {"corollary1.3 adjudication report", 10'000,
         [](Ledger& l) {
             for (auto [p1, r1, p2, r2] : {std::array<std::int64_t, 4>{5, 1, 7, 1}, {7, 2, 5, 1}}) {
                 const auto r = verify_corollary(CorollaryId::C1_3, {.p1 = p1, .r1 = r1, .p2 = p2, .r2 = r2,
                                                                     .method = Method::Both});
                 const auto f = Factorization::from_factors({{p1, static_cast<int>(r1)}, {p2, static_cast<int>(r2)}});
                 const auto oracle = triple_sum_naive(f.value(), SignPattern::AlternatingFirst, CoprimalityFilter::of(f), f.value());
                 l.check(oracle == triple_sum_fast_alternating(f), fmt::format("oracle != fast at {}", f.to_string()));
                 l.check(r.lhs && std::get<Residue>(*r.lhs) == oracle, "report LHS differs from the oracle");
                 l.check(r.notes.find("(a)") != std::string::npos && r.notes.find("(b)") != std::string::npos,
                         "report does not record both readings");
                 l.check(r.notes.find("!= fast") == std::string::npos, "naive and fast LHS disagree");
             }
         }},
    };
    return all;
}

}  // namespace

std::string CriterionResult::line() const {
    std::string out = fmt::format("criterion {:2}: {} ({:.0f} ms, limit {:.0f} ms) {}", id, pass() ? "PASS" : "FAIL",
                                  elapsed_ms, limit_ms, title);
    if (!detail.empty()) out += "\n    " + detail;
    return out;
}

CriterionResult run_criterion(int id) {
    if (id < 1 || id > kCriterionCount) throw std::invalid_argument(fmt::format("no criterion {}", id));
    const auto& c = criteria()[static_cast<std::size_t>(id - 1)];
    CriterionResult res;
    res.id = id;
    res.title = c.title;
    res.limit_ms = c.limit_ms;
    Ledger ledger;
    const auto start = Clock::now();
    try {
        c.body(ledger);
    } catch (const std::exception& e) {
        ledger.check(false, fmt::format("unexpected exception: {}", e.what()));
    }
    res.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    res.checks_pass = ledger.ok;
    if (res.elapsed_ms >= res.limit_ms) ledger.failures.push_back("runtime budget exceeded");
    std::string sep;
    for (const auto& f : ledger.failures) {
        res.detail += sep + f;
        sep = "\n    ";
    }
    return res;
}

std::vector<CriterionResult> run_acceptance() {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id));
    return out;
}

}  // namespace mhs
