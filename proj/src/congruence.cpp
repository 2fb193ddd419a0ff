#include "mhs/congruence.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

#include <fmt/format.h>

#include "mhs/bernoulli.hpp"

namespace mhs {

namespace {

using Clock = std::chrono::steady_clock;

template <class Body>
CongruenceReport timed(Body&& body) {
    const auto start = Clock::now();
    CongruenceReport rep = body();
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return rep;
}

std::int64_t need(const std::optional<std::int64_t>& v, const char* name) {
    if (!v) throw std::invalid_argument(fmt::format("missing parameter --{}", name));
    return *v;
}

std::int64_t need_prime(const std::optional<std::int64_t>& v, const char* name, std::int64_t min = 3) {
    const auto p = need(v, name);
    if (!is_prime(p) || p < min) throw std::invalid_argument(fmt::format("--{} must be a prime >= {}, got {}", name, min, p));
    return p;
}

int need_exponent(const std::optional<std::int64_t>& v, const char* name) {
    const auto r = v.value_or(1);
    if (r < 1 || r > 40) throw std::invalid_argument(fmt::format("--{} must be in [1, 40], got {}", name, r));
    return static_cast<int>(r);
}

std::string subset_label(const std::vector<std::int64_t>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

bool fast_applicable(const Factorization& f) {
    const auto ps = f.primes();
    return !ps.empty() && std::all_of(ps.begin(), ps.end(), [](std::int64_t p) { return p >= 5; });
}

// Runs the requested LHS routes. The naive value wins when both run; a
// disagreement is recorded and makes the report inconsistent.
struct LhsResult {
    std::optional<Residue> value;
    bool consistent = true;
};

LhsResult evaluate_lhs(CongruenceReport& rep, Method method, const std::function<Residue()>& naive,
                       const std::function<Residue()>& fast) {
    LhsResult out;
    std::optional<Residue> naive_value, fast_value;
    if (method != Method::Fast) {
        try {
            naive_value = naive();
        } catch (const MathError& e) {
            rep.add_note(fmt::format("naive LHS: {}", e.what()));
        }
    }
    if (method != Method::Naive) {
        try {
            fast_value = fast();
        } catch (const MathError& e) {
            rep.add_note(fmt::format("fast LHS: {}", e.what()));
        }
    }
    if (method == Method::Both) {
        if (naive_value && fast_value && *naive_value != *fast_value) {
            rep.add_note(fmt::format("naive LHS {} != fast LHS {}", naive_value->value(), fast_value->value()));
            out.consistent = false;
        } else if (naive_value.has_value() != fast_value.has_value()) {
            out.consistent = false;
        }
    }
    out.value = naive_value ? naive_value : fast_value;
    return out;
}

template <class F>
auto guarded(CongruenceReport& rep, const std::string& label, F&& f) -> std::optional<decltype(f())> {
    try {
        return f();
    } catch (const MathError& e) {
        rep.add_note(fmt::format("{}: {}", label, e.what()));
        return std::nullopt;
    }
}

Method resolve_method(std::optional<Method> requested, std::int64_t N, bool fast_ok) {
    if (!requested) return fast_ok ? default_method(N) : Method::Naive;
    if (*requested != Method::Naive && !fast_ok) {
        throw std::invalid_argument("no fast evaluator for these parameters (needs prime factors >= 5)");
    }
    return *requested;
}

std::optional<ReportValue> as_value(const std::optional<Residue>& r) {
    if (!r) return std::nullopt;
    return ReportValue{*r};
}

BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

std::vector<std::int64_t> primes_in(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> ps;
    for (std::int64_t p = std::max<std::int64_t>(lo, 2); p <= hi; ++p) {
        if (is_prime(p)) ps.push_back(p);
    }
    return ps;
}

// Prime powers p^r <= hi with p >= min_prime, ordered by value.
std::vector<std::pair<std::int64_t, int>> prime_powers(std::int64_t min_prime, std::int64_t hi) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t n = 2; n <= hi; ++n) {
        auto f = factorize(n);
        if (f.size() == 1 && f.factors()[0].prime >= min_prime) out.emplace_back(f.factors()[0].prime, f.factors()[0].exponent);
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------- reports

std::string to_string(Method m) {
    switch (m) {
        case Method::Naive: return "naive";
        case Method::Fast: return "fast";
        case Method::Both: return "both";
    }
    return "naive";
}

Method parse_method(const std::string& text) {
    if (text == "naive") return Method::Naive;
    if (text == "fast") return Method::Fast;
    if (text == "both") return Method::Both;
    throw std::invalid_argument(fmt::format("unknown method '{}'", text));
}

std::string value_string(const ReportValue& v) {
    if (const auto* r = std::get_if<Residue>(&v)) return std::to_string(r->value());
    return std::get<Rational>(v).to_string();
}

void CongruenceReport::add_note(const std::string& note) {
    notes += notes.empty() ? note : "; " + note;
}

void CongruenceReport::settle(bool consistent) {
    pass = consistent && lhs.has_value() && rhs.has_value() && *lhs == *rhs;
    if (pass) {
        if (const auto* r = std::get_if<Residue>(&*lhs)) pass = r->modulus() == modulus;
    }
}

// ---------------------------------------------------------------- closed forms

Rational SubsetTerm::value() const {
    return Rational(sign()) * Rational(integer_multiplier) * rational_coefficient * bernoulli(bernoulli_index);
}

std::string SubsetTerm::label() const { return subset_label(subset); }

std::vector<SubsetTerm> theorem1_terms(const Factorization& f) {
    const std::int64_t n = f.value();
    const auto primes = f.primes();
    std::vector<SubsetTerm> terms;
    for (const auto& idx : subsets_by_size(primes.size(), false)) {
        SubsetTerm t;
        std::int64_t P = 1, phi = 1;
        for (auto i : idx) {
            t.subset.push_back(primes[i]);
            P *= primes[i];
            phi *= primes[i] - 1;
        }
        if (phi == 2) throw DegenerateDenominator(fmt::format("subset {}: phi({}) - 2 = 0", t.label(), P));
        t.integer_multiplier = big(n / P);
        t.rational_coefficient = Rational(3, 2 * (phi - 2));
        t.bernoulli_index = static_cast<int>(phi - 2);
        terms.push_back(std::move(t));
    }
    return terms;
}

std::vector<SubsetTerm> theorem2_terms(const Factorization& f) {
    std::map<std::int64_t, int> exponent;
    for (const auto& pp : f.factors()) exponent[pp.prime] = pp.exponent;
    const auto primes = f.primes();
    std::vector<SubsetTerm> terms;
    for (const auto& idx : subsets_by_size(primes.size(), false)) {
        SubsetTerm t;
        BigInt mult = 1;
        std::int64_t phi = 1;  // phi(prod p^2) = prod p (p - 1)
        for (auto i : idx) {
            const auto p = primes[i];
            t.subset.push_back(p);
            mult *= big(ipow(p, exponent[p] - 1));
            phi *= p * (p - 1);
        }
        t.integer_multiplier = mult;
        t.rational_coefficient = Rational(3);
        t.bernoulli_index = static_cast<int>(phi - 2);
        terms.push_back(std::move(t));
    }
    return terms;
}

Residue reduce_terms(const std::vector<SubsetTerm>& terms, std::int64_t modulus) {
    Residue total(0, modulus);
    std::vector<std::string> failures;
    std::vector<std::int64_t> obstructing;
    for (const auto& t : terms) {
        try {
            total += rational_mod(t.value(), modulus);
        } catch (const NotInvertible& e) {
            failures.push_back(fmt::format("subset {} term has denominator {} sharing prime(s) {} with {}", t.label(),
                                           t.value().denominator().get_str(), fmt::join(e.primes(), ","), modulus));
            obstructing.insert(obstructing.end(), e.primes().begin(), e.primes().end());
        } catch (const ResourceLimit& e) {
            throw ResourceLimit(fmt::format("subset {}: {}", t.label(), e.what()));
        }
    }
    if (!failures.empty()) {
        std::sort(obstructing.begin(), obstructing.end());
        obstructing.erase(std::unique(obstructing.begin(), obstructing.end()), obstructing.end());
        throw NotInvertible(fmt::format("{}", fmt::join(failures, "; ")), obstructing);
    }
    return total;
}

Residue theorem1_rhs(const Factorization& f) { return reduce_terms(theorem1_terms(f), f.value()); }
Residue theorem2_rhs(const Factorization& f) { return reduce_terms(theorem2_terms(f), f.value()); }

Method default_method(std::int64_t N) { return N <= 2000 ? Method::Both : Method::Fast; }

// ---------------------------------------------------------------- theorems

namespace {

void require_odd(const Factorization& f) {
    if (f.empty() || f.value() % 2 == 0) throw std::invalid_argument(fmt::format("n must be odd and > 1, got {}", f.to_string()));
}

void localize_theorem1(CongruenceReport& rep, const Factorization& f) {
    if (!fast_applicable(f)) return;
    try {
        const auto classes = alternating_class_terms(f);
        const auto closed = theorem1_terms(f);
        std::vector<std::string> diffs;
        for (const auto& c : classes) {
            if (c.subset.empty()) {
                if (c.value.value() != 0) diffs.push_back(fmt::format("T={{}} class term {} != 0", c.value.value()));
                continue;
            }
            auto it = std::find_if(closed.begin(), closed.end(), [&](const SubsetTerm& t) { return t.subset == c.subset; });
            const auto expected = rational_mod(it->value(), f.value());
            if (expected != c.value) {
                diffs.push_back(fmt::format("T={} class term {} vs closed-form term {}", subset_label(c.subset),
                                            c.value.value(), expected.value()));
            }
        }
        if (!diffs.empty()) rep.add_note(fmt::format("mismatch localized: {}", fmt::join(diffs, ", ")));
    } catch (const MathError&) {
        // localization is best effort; the RHS failure is already noted
    }
}

void localize_theorem2(CongruenceReport& rep, const Factorization& f) {
    if (!fast_applicable(f)) return;
    try {
        std::vector<std::string> parts;
        for (const auto& t : uniform_pair_terms(f)) parts.push_back(fmt::format("T={} {}", subset_label(t.subset), t.value.value()));
        rep.add_note(fmt::format("pair-sum terms mod {}: {}", f.power(2), fmt::join(parts, ", ")));
    } catch (const MathError&) {
    }
}

CongruenceReport verify_theorem(int which, const Factorization& f, int r0, std::optional<Method> requested) {
    return timed([&] {
        require_odd(f);
        if (r0 < 0 || r0 > 20) throw std::invalid_argument("r0 must be in [0, 20]");
        const std::int64_t n = f.value();
        const std::int64_t scale = std::int64_t{1} << r0;
        const std::int64_t N = scale * n;
        const auto sign = which == 1 ? SignPattern::AlternatingFirst : SignPattern::Uniform;
        CongruenceReport rep;
        rep.id = which == 1 ? "theorem1" : "theorem2";
        rep.params = fmt::format("n={} ({}) r0={}", n, f.to_string(), r0);
        rep.modulus = n;
        rep.method = resolve_method(requested, N, fast_applicable(f));

        const auto filter = CoprimalityFilter::of(f);
        auto lhs = evaluate_lhs(
            rep, rep.method, [&] { return triple_sum_naive(N, sign, filter, n); },
            [&] {
                return (which == 1 ? triple_sum_fast_alternating(f) : triple_sum_fast_uniform(f)).scaled(scale);
            });
        if (r0 > 0 && rep.method != Method::Naive) rep.add_note(fmt::format("fast LHS scaled by 2^{} (doubling law)", r0));
        rep.lhs = as_value(lhs.value);

        auto rhs = guarded(rep, "RHS", [&] { return (which == 1 ? theorem1_rhs(f) : theorem2_rhs(f)).scaled(scale); });
        rep.rhs = as_value(rhs);
        rep.settle(lhs.consistent);
        if (lhs.value && rhs && *lhs.value != *rhs) {
            if (which == 1) localize_theorem1(rep, f);
            else localize_theorem2(rep, f);
        }
        return rep;
    });
}

}  // namespace

CongruenceReport verify_theorem1(const Factorization& f, int r0, std::optional<Method> method) {
    return verify_theorem(1, f, r0, method);
}

CongruenceReport verify_theorem2(const Factorization& f, int r0, std::optional<Method> method) {
    return verify_theorem(2, f, r0, method);
}

// ---------------------------------------------------------------- params and ids

std::string Params::describe() const {
    std::vector<std::string> parts;
    auto add = [&](const char* name, const std::optional<std::int64_t>& v) {
        if (v) parts.push_back(fmt::format("{}={}", name, *v));
    };
    add("n", n);
    add("p", p);
    add("r", r);
    add("k", k);
    add("x", x);
    add("m", m);
    add("p1", p1);
    add("r1", r1);
    add("p2", p2);
    add("r2", r2);
    if (point) parts.push_back("point=" + point->to_string());
    if (sign) parts.push_back("sign=" + to_string(*sign));
    return fmt::format("{}", fmt::join(parts, " "));
}

std::string to_string(CorollaryId id) {
    static const char* names[] = {"c1_1", "c1_2", "c1_3", "c1_4", "c1_5"};
    return names[static_cast<int>(id)];
}

std::string to_string(LiteratureId id) {
    static const char* names[] = {"eq1_1", "eq1_2", "eq1_3", "eq1_4", "eq1_5", "eq1_6"};
    return names[static_cast<int>(id)];
}

std::string to_string(LemmaId id) {
    static const char* names[] = {"l2_1", "l2_2", "l2_3", "l2_4", "l2_5", "l2_6", "l2_7"};
    return names[static_cast<int>(id)];
}

CorollaryId parse_corollary(const std::string& text) {
    for (int i = 0; i < 5; ++i) {
        if (to_string(static_cast<CorollaryId>(i)) == text) return static_cast<CorollaryId>(i);
    }
    throw std::invalid_argument(fmt::format("unknown corollary '{}'", text));
}

LiteratureId parse_literature(const std::string& text) {
    for (int i = 0; i < 6; ++i) {
        if (to_string(static_cast<LiteratureId>(i)) == text) return static_cast<LiteratureId>(i);
    }
    throw std::invalid_argument(fmt::format("unknown literature statement '{}'", text));
}

LemmaId parse_lemma(const std::string& text) {
    for (int i = 0; i < 7; ++i) {
        if (to_string(static_cast<LemmaId>(i)) == text) return static_cast<LemmaId>(i);
    }
    throw std::invalid_argument(fmt::format("unknown lemma '{}'", text));
}

// ---------------------------------------------------------------- corollaries

namespace {

// Triple-sum LHS at N = n over indices coprime to the primes of f, modulo n.
LhsResult triple_lhs(CongruenceReport& rep, const Factorization& f, SignPattern sign, const CoprimalityFilter& filter,
                     std::optional<Method> requested) {
    const std::int64_t n = f.value();
    rep.method = resolve_method(requested, n, fast_applicable(f));
    return evaluate_lhs(
        rep, rep.method, [&] { return triple_sum_naive(n, sign, filter, n); },
        [&] {
            return sign == SignPattern::Uniform ? triple_sum_fast_uniform(f) : triple_sum_fast_alternating(f);
        });
}

Residue reduce(const Rational& q, std::int64_t m) { return rational_mod(q, m); }

}  // namespace

CongruenceReport verify_corollary(CorollaryId id, const Params& params) {
    return timed([&] {
        CongruenceReport rep;
        rep.id = "corollary" + to_string(id).substr(1, 1) + "." + to_string(id).substr(3);
        bool consistent = true;
        switch (id) {
            case CorollaryId::C1_1: {
                const auto p = need_prime(params.p, "p");
                const auto f = factorize(p);
                rep.params = fmt::format("p={}", p);
                rep.modulus = p;
                auto lhs = triple_lhs(rep, f, SignPattern::AlternatingFirst, CoprimalityFilter(), params.method);
                consistent = lhs.consistent;
                rep.lhs = as_value(lhs.value);
                rep.rhs = as_value(guarded(rep, "RHS", [&] { return reduce(Rational(1, 2) * bernoulli(static_cast<int>(p - 3)), p); }));
                break;
            }
            case CorollaryId::C1_2:
            case CorollaryId::C1_4: {
                const auto p = need_prime(params.p, "p");
                const int r = need_exponent(params.r, "r");
                const auto f = Factorization::from_factors({{p, r}});
                const std::int64_t n = f.value();
                const BigInt pr1 = big(ipow(p, r - 1));
                rep.params = fmt::format("p={} r={}", p, r);
                rep.modulus = n;
                const auto sign = id == CorollaryId::C1_2 ? SignPattern::AlternatingFirst : SignPattern::Uniform;
                auto lhs = triple_lhs(rep, f, sign, CoprimalityFilter::of(f), params.method);
                consistent = lhs.consistent;
                rep.lhs = as_value(lhs.value);
                if (id == CorollaryId::C1_2) {
                    rep.rhs = as_value(guarded(rep, "RHS", [&] { return reduce(Rational(pr1, 2) * bernoulli(static_cast<int>(p - 3)), n); }));
                } else {
                    auto first = guarded(rep, "RHS -3p^(r-1)B_{p(p-1)-2}", [&] {
                        return reduce(Rational(-3) * Rational(pr1) * bernoulli(static_cast<int>(p * (p - 1) - 2)), n);
                    });
                    auto second = guarded(rep, "RHS -2p^(r-1)B_{p-3}", [&] {
                        return reduce(Rational(-2) * Rational(pr1) * bernoulli(static_cast<int>(p - 3)), n);
                    });
                    if (first && second) {
                        rep.add_note(*first == *second ? "printed RHS forms agree"
                                                       : fmt::format("printed RHS forms disagree: {} vs {}", first->value(), second->value()));
                        consistent = consistent && *first == *second;
                    } else {
                        consistent = false;
                    }
                    rep.rhs = as_value(first);
                }
                break;
            }
            case CorollaryId::C1_3:
            case CorollaryId::C1_5: {
                const auto p1 = need_prime(params.p1, "p1");
                const auto p2 = need_prime(params.p2, "p2");
                if (p1 == p2) throw std::invalid_argument("--p1 and --p2 must differ");
                const int r1 = need_exponent(params.r1, "r1");
                const int r2 = need_exponent(params.r2, "r2");
                const auto f = Factorization::from_factors({{p1, r1}, {p2, r2}});
                const std::int64_t n = f.value();
                rep.params = fmt::format("p1={} r1={} p2={} r2={}", p1, r1, p2, r2);
                rep.modulus = n;
                const auto sign = id == CorollaryId::C1_3 ? SignPattern::AlternatingFirst : SignPattern::Uniform;
                auto lhs = triple_lhs(rep, f, sign, CoprimalityFilter::of(f), params.method);
                consistent = lhs.consistent;
                rep.lhs = as_value(lhs.value);
                const BigInt a1 = big(ipow(p1, r1 - 1)), a2 = big(ipow(p2, r2 - 1));
                const BigInt b1 = big(ipow(p1, r1)), b2 = big(ipow(p2, r2));
                if (id == CorollaryId::C1_3) {
                    // literal printed form, including its subscript and denominator
                    std::vector<SubsetTerm> literal(3);
                    literal[0] = {{p1}, a1 * b2, Rational(3, 2 * (p1 - 3)), static_cast<int>(p1 - 3)};
                    literal[1] = {{p2}, b1 * a2, Rational(3, 2 * (p2 - 3)), static_cast<int>(p2 - 3)};
                    literal[2] = {{p1, p2}, a1 * a2, Rational(-3, 2 * (p1 + p2 - 3)), static_cast<int>(p1 * p2 - p1 - p2 - 3)};
                    auto lit = guarded(rep, "(a) literal form", [&] {
                        if (p1 == 3 || p2 == 3) throw DegenerateDenominator("p - 3 = 0 in the literal denominator");
                        return reduce_terms(literal, n);
                    });
                    auto thm = guarded(rep, "(b) theorem1 form", [&] { return theorem1_rhs(f); });
                    rep.rhs = as_value(lit);
                    auto describe = [&](const char* name, const std::optional<Residue>& v) {
                        if (!v) return fmt::format("{} undefined", name);
                        return fmt::format("{} = {} ({})", name, v->value(),
                                           lhs.value && *lhs.value == *v ? "matches oracle" : "differs from oracle");
                    };
                    rep.add_note(describe("(a) literal", lit));
                    rep.add_note(describe("(b) theorem1", thm));
                } else {
                    std::vector<SubsetTerm> printed(3);
                    printed[0] = {{p1}, a1, Rational(3), static_cast<int>(p1 * (p1 - 1) - 2)};
                    printed[1] = {{p2}, a2, Rational(3), static_cast<int>(p2 * (p2 - 1) - 2)};
                    printed[2] = {{p1, p2}, a1 * a2, Rational(3), static_cast<int>(p1 * (p1 - 1) * p2 * (p2 - 1) - 2)};
                    rep.rhs = as_value(guarded(rep, "RHS", [&] { return reduce_terms(printed, n); }));
                }
                break;
            }
        }
        rep.settle(consistent);
        return rep;
    });
}

// ---------------------------------------------------------------- literature

CongruenceReport verify_literature(LiteratureId id, const Params& params) {
    return timed([&] {
        CongruenceReport rep;
        rep.id = "eq" + to_string(id).substr(2, 1) + "." + to_string(id).substr(4);
        bool consistent = true;
        auto naive_only = [&](const std::function<Residue()>& f) {
            if (params.method && *params.method != Method::Naive) throw std::invalid_argument("this statement has only a naive evaluator");
            rep.method = Method::Naive;
            return evaluate_lhs(rep, Method::Naive, f, {});
        };
        switch (id) {
            case LiteratureId::Eq1_1: {
                const auto p = need_prime(params.p, "p", 5);
                rep.params = fmt::format("p={}", p);
                rep.modulus = p;
                auto lhs = triple_lhs(rep, factorize(p), SignPattern::Uniform, CoprimalityFilter(), params.method);
                consistent = lhs.consistent;
                rep.lhs = as_value(lhs.value);
                rep.rhs = as_value(guarded(rep, "RHS", [&] { return reduce(Rational(-2) * bernoulli(static_cast<int>(p - 3)), p); }));
                break;
            }
            case LiteratureId::Eq1_2: {
                const auto p = need_prime(params.p, "p", 5);
                const auto k = need(params.k, "k");
                if (k < 2 || k > p - 2) throw std::invalid_argument(fmt::format("--k must be in [2, p-2], got {}", k));
                const bool odd = k % 2 == 1;
                const std::int64_t modulus = odd ? p : p * p;
                rep.params = fmt::format("p={} k={}", p, k);
                rep.modulus = modulus;
                auto lhs = naive_only([&] { return kfold_sum_naive(static_cast<int>(k), p, CoprimalityFilter(), modulus); });
                rep.lhs = as_value(lhs.value);
                BigInt fact = 1;
                for (std::int64_t i = 2; i <= k; ++i) fact *= big(i);  // k!
                rep.rhs = as_value(guarded(rep, "RHS", [&] {
                    if (odd) return reduce(Rational(-1) * Rational(BigInt(fact / big(k))) * bernoulli(static_cast<int>(p - k)), modulus);
                    return reduce(Rational(-k, 2 * (k + 1)) * Rational(fact) * bernoulli(static_cast<int>(p - k - 1)) * Rational(p), modulus);
                }));
                break;
            }
            case LiteratureId::Eq1_3:
            case LiteratureId::Eq1_6: {
                const auto p = need_prime(params.p, "p", 5);
                const int r = need_exponent(params.r, "r");
                const auto f = Factorization::from_factors({{p, r}});
                const std::int64_t n = f.value();
                const BigInt pr1 = big(ipow(p, r - 1));
                rep.params = fmt::format("p={} r={}", p, r);
                rep.modulus = n;
                const bool uniform = id == LiteratureId::Eq1_3;
                auto lhs = triple_lhs(rep, f, uniform ? SignPattern::Uniform : SignPattern::AlternatingFirst,
                                      CoprimalityFilter::of(f), params.method);
                consistent = lhs.consistent;
                rep.lhs = as_value(lhs.value);
                rep.rhs = as_value(guarded(rep, "RHS", [&] {
                    const Rational coeff = uniform ? Rational(-2) * Rational(pr1) : Rational(pr1, 2);
                    return reduce(coeff * bernoulli(static_cast<int>(p - 3)), n);
                }));
                break;
            }
            case LiteratureId::Eq1_4: {
                const auto p = need_prime(params.p, "p", 7);
                const int r = need_exponent(params.r, "r");
                const std::int64_t n = ipow(p, r);
                rep.params = fmt::format("p={} r={}", p, r);
                rep.modulus = n;
                auto lhs = naive_only([&] { return kfold_sum_naive(5, n, CoprimalityFilter({p}), n); });
                rep.lhs = as_value(lhs.value);
                rep.rhs = as_value(guarded(rep, "RHS", [&] {
                    return reduce(Rational(-120, 6) * Rational(big(ipow(p, r - 1))) * bernoulli(static_cast<int>(p - 5)), n);
                }));
                break;
            }
            case LiteratureId::Eq1_5: {
                const auto p = need_prime(params.p, "p", 5);
                const std::int64_t modulus = p * p;
                rep.params = fmt::format("p={}", p);
                rep.modulus = modulus;
                auto lhs = naive_only([&] { return triple_sum_naive(p, SignPattern::AlternatingFirst, CoprimalityFilter(), modulus); });
                rep.lhs = as_value(lhs.value);
                rep.rhs = as_value(guarded(rep, "RHS", [&] {
                    const int pi = static_cast<int>(p);
                    Rational rhs = Rational(-3) * (bernoulli(pi - 3) / Rational(p - 3) - bernoulli(2 * pi - 4) / Rational(4 * p - 8));
                    Rational conv;
                    for (int k = 0; k <= pi - 3; ++k) conv += Rational(2).pow(static_cast<unsigned>(k + 1)) * bernoulli(k) * bernoulli(pi - 3 - k);
                    rhs += Rational(p) * conv;
                    rep.add_note("exact RHS = " + rhs.to_string());
                    return reduce(rhs, modulus);
                }));
                break;
            }
        }
        rep.settle(consistent);
        return rep;
    });
}

// ---------------------------------------------------------------- lemmas

namespace {

CongruenceReport exact_report(const std::string& id, const std::string& params) {
    CongruenceReport rep;
    rep.id = id;
    rep.params = params;
    rep.modulus = 0;
    rep.method = Method::Naive;
    return rep;
}

// Records the first mismatching point of an exact grid, or the last point.
void record_exact(CongruenceReport& rep, const std::vector<std::pair<std::string, IdentitySides>>& points) {
    std::size_t shown = points.size() - 1;
    std::size_t bad = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].second.lhs != points[i].second.rhs) {
            if (bad++ == 0) shown = i;
        }
    }
    rep.lhs = ReportValue{points[shown].second.lhs};
    rep.rhs = ReportValue{points[shown].second.rhs};
    if (points.size() > 1) {
        rep.add_note(fmt::format("{} point(s) checked, {} mismatch(es); shown: {}", points.size(), bad, points[shown].first));
    }
    rep.settle(bad == 0);
}

template <class T>
std::vector<T> values_or(const std::optional<T>& v, std::vector<T> grid) {
    if (v) return {*v};
    return grid;
}

std::vector<std::int64_t> range(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out;
    for (std::int64_t i = lo; i <= hi; ++i) out.push_back(i);
    return out;
}

}  // namespace

CongruenceReport verify_lemma(LemmaId id, const Params& params) {
    return timed([&]() -> CongruenceReport {
        const std::string name = "lemma" + to_string(id).substr(1, 1) + "." + to_string(id).substr(3);
        switch (id) {
            case LemmaId::L2_1: {
                const auto p = need(params.p, "p");
                if (p < 1) throw std::invalid_argument("--p must be >= 1");
                auto rep = exact_report(name, params.describe());
                std::vector<std::pair<std::string, IdentitySides>> points;
                for (auto m : values_or(params.m, range(1, 6))) {
                    if (m < 1) throw std::invalid_argument("--m must be >= 1");
                    for (auto r : values_or(params.r, range(0, m - 1))) {
                        for (auto k : values_or(params.k, range(0, 8))) {
                            if (k < 0) throw std::invalid_argument("--k must be >= 0");
                            points.push_back({fmt::format("p={} m={} r={} k={}", p, m, r, k),
                                              {ap_power_sum_direct(p, m, r, static_cast<int>(k)),
                                               ap_power_sum_bernoulli(p, m, r, static_cast<int>(k))}});
                        }
                    }
                }
                record_exact(rep, points);
                return rep;
            }
            case LemmaId::L2_4: {
                const auto m = need(params.m, "m");
                if (m < 1) throw std::invalid_argument("--m must be >= 1");
                auto rep = exact_report(name, params.describe());
                const std::vector<Rational> xs = {Rational(0), Rational(1, 2), Rational(1, 3), Rational(2), Rational(-1)};
                std::vector<std::pair<std::string, IdentitySides>> points;
                for (auto k : values_or(params.k, range(0, 10))) {
                    for (const auto& x : params.point ? std::vector<Rational>{*params.point} : xs) {
                        points.push_back({fmt::format("m={} k={} x={}", m, k, x.to_string()),
                                          raabe_multiplication(static_cast<int>(m), static_cast<int>(k), x)});
                    }
                }
                record_exact(rep, points);
                return rep;
            }
            case LemmaId::L2_5: {
                const auto n = need(params.n, "n");
                if (n < 1) throw std::invalid_argument("--n must be >= 1");
                auto rep = exact_report(name, params.describe());
                record_exact(rep, {{fmt::format("n={}", n), half_value_identity(static_cast<int>(n))}});
                return rep;
            }
            case LemmaId::L2_2: {
                const auto n = need(params.n, "n");
                const auto f = factorize(n);
                if (n % 2 == 0) throw std::invalid_argument("Lemma 2.2 needs odd n");
                CongruenceReport rep;
                rep.id = name;
                rep.params = params.describe();
                rep.modulus = n;
                const std::int64_t P = f.radical();
                std::int64_t mult = 1;
                for (const auto& pp : f.factors()) mult *= ipow(pp.prime, pp.exponent - 1);
                std::vector<std::int64_t> xs;
                if (params.x) {
                    xs = {*params.x};
                } else {
                    for (std::int64_t x = 1; x < P; ++x) {
                        if (gcd64(x, P) == 1) xs.push_back(x);
                    }
                }
                std::size_t bad = 0;
                for (auto x : xs) {
                    auto lhs = guarded(rep, fmt::format("S({})", x), [&] { return progression_reciprocal_sum(x, 1, f); });
                    auto rhs = guarded(rep, "RHS", [&] { return mod_inverse(x, n).scaled(mult); });
                    const bool ok = lhs && rhs && *lhs == *rhs;
                    if ((!ok && bad++ == 0) || (bad == 0 && x == xs.back())) {
                        rep.lhs = as_value(lhs);
                        rep.rhs = as_value(rhs);
                        if (xs.size() > 1) rep.add_note(fmt::format("shown: x={}", x));
                    }
                }
                if (xs.size() > 1) rep.add_note(fmt::format("{} residue(s) checked, {} mismatch(es)", xs.size(), bad));
                rep.settle(bad == 0);
                return rep;
            }
            case LemmaId::L2_3: {
                const auto n = need(params.n, "n");
                const auto f = factorize(n);
                if (n % 2 == 0) throw std::invalid_argument("Lemma 2.3 needs odd n");
                CongruenceReport rep;
                rep.id = name;
                rep.params = params.describe();
                rep.modulus = f.power(2);
                rep.lhs = as_value(guarded(rep, "LHS", [&] { return progression_square_sum(f); }));
                rep.rhs = as_value(guarded(rep, "RHS", [&] {
                    BigInt mult = 1;
                    std::int64_t phi = 1;
                    for (const auto& pp : f.factors()) {
                        mult *= big(ipow(pp.prime, 2 * pp.exponent - 1));
                        phi *= pp.prime * (pp.prime - 1);
                    }
                    return rational_mod(Rational(mult) * bernoulli(static_cast<int>(phi - 2)), rep.modulus);
                }));
                if (f.size() > 1) rep.add_note("units-only reading of the outer sum");
                rep.settle();
                return rep;
            }
            case LemmaId::L2_6: {
                const auto n = need(params.n, "n");
                const auto f = factorize(n);
                CongruenceReport rep;
                rep.id = name;
                rep.params = params.describe();
                rep.modulus = n;
                rep.lhs = as_value(guarded(rep, "LHS", [&] { return half_cube_sum(f); }));
                rep.rhs = as_value(guarded(rep, "RHS", [&] {
                    const std::int64_t d = euler_phi(f) - 2;
                    if (d == 0) throw DegenerateDenominator(fmt::format("phi({}) - 2 = 0", n));
                    return rational_mod(Rational(6, d) * bernoulli(static_cast<int>(d)), n);
                }));
                rep.settle();
                return rep;
            }
            case LemmaId::L2_7: {
                const auto N = need(params.n, "n");
                if (N < 3) throw std::invalid_argument("--n must be >= 3");
                CongruenceReport rep;
                rep.id = name;
                rep.params = params.describe();
                const std::int64_t m = params.m.value_or(N);
                rep.modulus = m;
                const auto filter = N >= 2 ? CoprimalityFilter::of(factorize(N)) : CoprimalityFilter();
                std::vector<SignPattern> signs = params.sign ? std::vector<SignPattern>{*params.sign}
                                                             : std::vector<SignPattern>{SignPattern::AlternatingFirst, SignPattern::Uniform};
                bool ok_all = true, shown = false;
                for (auto s : signs) {
                    auto pair = guarded(rep, to_string(s), [&] { return doubling_check(N, s, filter, m); });
                    const bool ok = pair && pair->lhs == pair->rhs;
                    if (pair && signs.size() > 1) rep.add_note(fmt::format("{}: {} vs {}", to_string(s), pair->lhs.value(), pair->rhs.value()));
                    if (!shown && (!ok || s == signs.back())) {
                        rep.lhs = pair ? std::optional<ReportValue>(pair->lhs) : std::nullopt;
                        rep.rhs = pair ? std::optional<ReportValue>(pair->rhs) : std::nullopt;
                        shown = true;
                    }
                    ok_all = ok_all && ok;
                }
                rep.settle(ok_all);
                return rep;
            }
        }
        throw std::logic_error("unreachable");
    });
}

// ---------------------------------------------------------------- grids

std::vector<std::int64_t> theorem_moduli(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out;
    for (std::int64_t n = std::max<std::int64_t>(lo, 5); n <= hi; ++n) {
        if (n % 2 == 0 || n % 3 == 0) continue;
        out.push_back(n);
    }
    return out;
}

std::vector<CongruenceReport> theorem_grid(int which, const GridOptions& opts) {
    std::vector<CongruenceReport> out;
    for (auto n : theorem_moduli(5, opts.max_n)) {
        const auto f = factorize(n);
        if (which == 2) {
            // skip points whose Bernoulli indices exceed the exact-table limit
            bool feasible = true;
            for (const auto& t : theorem2_terms(f)) feasible = feasible && t.bernoulli_index <= kBernoulliIndexLimit;
            if (!feasible) continue;
        }
        out.push_back(which == 1 ? verify_theorem1(f, 0) : verify_theorem2(f, 0));
    }
    return out;
}

std::vector<CongruenceReport> corollary_grid(CorollaryId id, const GridOptions& opts) {
    std::vector<CongruenceReport> out;
    const std::int64_t hi = opts.max_n;
    switch (id) {
        case CorollaryId::C1_1:
            for (auto p : primes_in(3, std::min<std::int64_t>(hi, 50))) out.push_back(verify_corollary(id, {.p = p}));
            break;
        case CorollaryId::C1_2:
        case CorollaryId::C1_4:
            for (auto [p, r] : prime_powers(5, hi)) {
                if (id == CorollaryId::C1_4 && p * (p - 1) - 2 > kBernoulliIndexLimit) continue;
                out.push_back(verify_corollary(id, {.p = p, .r = r}));
            }
            break;
        case CorollaryId::C1_3:
        case CorollaryId::C1_5:
            for (auto n : theorem_moduli(5, hi)) {
                const auto f = factorize(n);
                if (f.size() != 2) continue;
                const auto a = f.factors()[0], b = f.factors()[1];
                Params ps{.p1 = a.prime, .r1 = a.exponent, .p2 = b.prime, .r2 = b.exponent};
                if (id == CorollaryId::C1_5 &&
                    a.prime * (a.prime - 1) * b.prime * (b.prime - 1) - 2 > kBernoulliIndexLimit) {
                    continue;
                }
                out.push_back(verify_corollary(id, ps));
            }
            break;
    }
    return out;
}

std::vector<CongruenceReport> literature_grid(LiteratureId id, const GridOptions& opts) {
    std::vector<CongruenceReport> out;
    const std::int64_t hi = opts.max_n;
    switch (id) {
        case LiteratureId::Eq1_1:
        case LiteratureId::Eq1_5:
            for (auto p : primes_in(5, std::min<std::int64_t>(hi, 50))) out.push_back(verify_literature(id, {.p = p}));
            break;
        case LiteratureId::Eq1_2:
            for (auto p : primes_in(5, std::min<std::int64_t>(hi, 31))) {
                for (std::int64_t k = 2; k <= std::min<std::int64_t>(p - 2, 6); ++k) {
                    out.push_back(verify_literature(id, {.p = p, .k = k}));
                }
            }
            break;
        case LiteratureId::Eq1_3:
        case LiteratureId::Eq1_6:
            for (auto [p, r] : prime_powers(5, hi)) out.push_back(verify_literature(id, {.p = p, .r = r}));
            break;
        case LiteratureId::Eq1_4:
            for (auto [p, r] : prime_powers(7, hi)) out.push_back(verify_literature(id, {.p = p, .r = r}));
            break;
    }
    return out;
}

std::vector<CongruenceReport> lemma_grid(LemmaId id, const GridOptions& opts) {
    std::vector<CongruenceReport> out;
    const std::int64_t hi = opts.max_n;
    switch (id) {
        case LemmaId::L2_1:
            for (std::int64_t p = 1; p <= std::min<std::int64_t>(hi, 30); ++p) out.push_back(verify_lemma(id, {.p = p}));
            break;
        case LemmaId::L2_2:
            for (std::int64_t n = 3; n <= std::min<std::int64_t>(hi, 3000); n += 2) {
                if (factorize(n).size() <= 2) out.push_back(verify_lemma(id, {.n = n}));
            }
            break;
        case LemmaId::L2_3:
            for (std::int64_t n = 3; n <= hi; n += 2) {
                const auto f = factorize(n);
                std::int64_t phi = 1;
                for (const auto& pp : f.factors()) phi *= pp.prime * (pp.prime - 1);
                if (phi - 2 <= kBernoulliIndexLimit) out.push_back(verify_lemma(id, {.n = n}));
            }
            break;
        case LemmaId::L2_4:
            for (std::int64_t m = 1; m <= 5; ++m) out.push_back(verify_lemma(id, {.m = m}));
            break;
        case LemmaId::L2_5:
            for (std::int64_t n = 1; n <= 20; ++n) out.push_back(verify_lemma(id, {.n = n}));
            break;
        case LemmaId::L2_6:
            for (std::int64_t n = 5; n <= hi; n += 2) {
                const auto f = factorize(n);
                if (f.squarefree() && euler_phi(f) - 2 <= kBernoulliIndexLimit) out.push_back(verify_lemma(id, {.n = n}));
            }
            break;
        case LemmaId::L2_7:
            for (std::int64_t n = 3; n <= hi; n += 2) out.push_back(verify_lemma(id, {.n = n}));
            break;
    }
    return out;
}

std::vector<CongruenceReport> full_suite(const GridOptions& opts) {
    std::vector<CongruenceReport> out;
    auto append = [&](std::vector<CongruenceReport> part) {
        for (auto& r : part) out.push_back(std::move(r));
    };
    for (int i = 0; i < 6; ++i) append(literature_grid(static_cast<LiteratureId>(i), opts));
    for (int i = 0; i < 5; ++i) append(corollary_grid(static_cast<CorollaryId>(i), opts));
    for (int i = 0; i < 7; ++i) append(lemma_grid(static_cast<LemmaId>(i), opts));
    append(theorem_grid(1, opts));
    append(theorem_grid(2, opts));
    return out;
}

}  // namespace mhs
