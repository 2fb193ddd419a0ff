#include "mhs/cli.hpp"

#include <algorithm>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "mhs/acceptance.hpp"
#include "mhs/bernoulli.hpp"
#include "mhs/congruence.hpp"
#include "mhs/report_io.hpp"

namespace mhs {

namespace {

struct Flags {
    std::optional<std::int64_t> n, p, r, r0, p1, r1, p2, r2, k, x, m, mod, target, mult, only;
    std::int64_t max_n = 500;
    std::optional<std::string> method, sign, filter, point;
    std::string format = "table";
    std::string target_name, kind;
    std::int64_t bernoulli_index = 0;
};

SignPattern parse_sign(const std::string& s) {
    if (s == "alt" || s == "alternating") return SignPattern::AlternatingFirst;
    if (s == "uniform") return SignPattern::Uniform;
    throw std::invalid_argument(fmt::format("unknown sign '{}' (alt|uniform)", s));
}

std::optional<Method> method_of(const Flags& fl) {
    if (!fl.method) return std::nullopt;
    return parse_method(*fl.method);
}

// "5,7" -> {5, 7}; "auto" -> primes of `n`; empty when unset.
CoprimalityFilter parse_filter(const std::optional<std::string>& text, std::int64_t n) {
    if (!text || text->empty()) return {};
    if (*text == "auto") return CoprimalityFilter::of(factorize(n));
    std::vector<std::int64_t> primes;
    for (const auto& part : CLI::detail::split(*text, ',')) primes.push_back(std::stoll(part));
    return CoprimalityFilter(std::move(primes));
}

Params params_of(const Flags& fl) {
    Params ps;
    ps.n = fl.n;
    ps.p = fl.p;
    ps.r = fl.r;
    ps.k = fl.k;
    ps.x = fl.x;
    ps.m = fl.m;
    ps.p1 = fl.p1;
    ps.r1 = fl.r1;
    ps.p2 = fl.p2;
    ps.r2 = fl.r2;
    if (fl.point) ps.point = Rational::parse(*fl.point);
    if (fl.sign) ps.sign = parse_sign(*fl.sign);
    ps.method = method_of(fl);
    return ps;
}

bool has_point(const Flags& fl) {
    return fl.n || fl.p || fl.r || fl.k || fl.x || fl.m || fl.p1 || fl.r1 || fl.p2 || fl.r2 || fl.point;
}

int emit(const std::vector<CongruenceReport>& reports, const std::string& format, std::ostream& out) {
    out << (format == "json" ? render_json(reports) : render_table(reports));
    return std::all_of(reports.begin(), reports.end(), [](const CongruenceReport& r) { return r.pass; }) ? 0 : 1;
}

int cmd_verify(const Flags& fl, std::ostream& out) {
    const auto& t = fl.target_name;
    const GridOptions grid{.max_n = fl.max_n};
    std::vector<CongruenceReport> reports;
    if (t == "theorem1" || t == "theorem2") {
        const int which = t == "theorem1" ? 1 : 2;
        std::optional<Factorization> f;
        if (fl.n) f = factorize(*fl.n);
        else if (fl.p) f = Factorization::from_factors({{*fl.p, static_cast<int>(fl.r.value_or(1))}});
        if (f) {
            const int r0 = static_cast<int>(fl.r0.value_or(0));
            reports.push_back(which == 1 ? verify_theorem1(*f, r0, method_of(fl)) : verify_theorem2(*f, r0, method_of(fl)));
        } else {
            reports = theorem_grid(which, grid);
        }
    } else if (t == "all") {
        reports = full_suite(grid);
    } else {
        const auto colon = t.find(':');
        if (colon == std::string::npos) throw std::invalid_argument(fmt::format("unknown verify target '{}'", t));
        const auto family = t.substr(0, colon), id = t.substr(colon + 1);
        const bool single = has_point(fl);
        const auto ps = params_of(fl);
        if (family == "corollary") {
            const auto c = parse_corollary(id);
            if (single) reports.push_back(verify_corollary(c, ps));
            else reports = corollary_grid(c, grid);
        } else if (family == "lemma") {
            const auto l = parse_lemma(id);
            if (single) reports.push_back(verify_lemma(l, ps));
            else reports = lemma_grid(l, grid);
        } else if (family == "literature") {
            const auto l = parse_literature(id);
            if (single) reports.push_back(verify_literature(l, ps));
            else reports = literature_grid(l, grid);
        } else {
            throw std::invalid_argument(fmt::format("unknown verify target '{}'", t));
        }
    }
    return emit(reports, fl.format, out);
}

std::int64_t need(const std::optional<std::int64_t>& v, const char* name) {
    if (!v) throw std::invalid_argument(fmt::format("missing parameter --{}", name));
    return *v;
}

int cmd_sum(const Flags& fl, std::ostream& out) {
    const Method method = fl.method ? parse_method(*fl.method) : Method::Naive;
    std::optional<Residue> naive, fast;
    auto fast_triple = [&](std::int64_t N, std::int64_t m, const CoprimalityFilter& filter, SignPattern sign) {
        const auto f = factorize(N);
        const auto primes = f.primes();
        if (m != N || !std::equal(primes.begin(), primes.end(), filter.primes().begin(), filter.primes().end())) {
            throw std::invalid_argument("the fast path needs --mod equal to --n and --filter auto");
        }
        return sign == SignPattern::Uniform ? triple_sum_fast_uniform(f) : triple_sum_fast_alternating(f);
    };
    if (fl.kind == "triple") {
        const auto N = need(fl.n, "n");
        const auto m = fl.mod.value_or(N);
        const auto filter = parse_filter(fl.filter, N);
        const auto sign = parse_sign(fl.sign.value_or("uniform"));
        if (method != Method::Fast) naive = triple_sum_naive(N, sign, filter, m);
        if (method != Method::Naive) fast = fast_triple(N, m, filter, sign);
    } else {
        if (method != Method::Naive) throw std::invalid_argument(fmt::format("sum {} has only a naive evaluator", fl.kind));
        if (fl.kind == "kfold") {
            const auto N = need(fl.target, "target");
            naive = kfold_sum_naive(static_cast<int>(need(fl.k, "k")), N, parse_filter(fl.filter, N), fl.mod.value_or(N));
        } else if (fl.kind == "progression") {
            naive = progression_reciprocal_sum(need(fl.x, "x"), fl.mult.value_or(1), factorize(need(fl.n, "n")));
        } else if (fl.kind == "cube") {
            naive = signed_cube_sum(factorize(need(fl.n, "n")));
        } else {
            naive = half_cube_sum(factorize(need(fl.n, "n")));
        }
    }
    const Residue value = naive ? *naive : *fast;
    const bool agree = !(naive && fast) || *naive == *fast;
    if (fl.format == "json") {
        nlohmann::ordered_json j;
        j["kind"] = fl.kind;
        j["value"] = std::to_string(value.value());
        j["modulus"] = std::to_string(value.modulus());
        j["method"] = to_string(method);
        if (naive && fast) {
            j["naive"] = std::to_string(naive->value());
            j["fast"] = std::to_string(fast->value());
            j["agree"] = agree;
        }
        out << j.dump(2) << "\n";
    } else {
        out << value.value() << "\n";
        if (naive && fast) {
            out << fmt::format("naive={} fast={} {}\n", naive->value(), fast->value(), agree ? "agree" : "DISAGREE");
        }
    }
    return agree ? 0 : 1;
}

int cmd_bernoulli(const Flags& fl, std::ostream& out) {
    if (fl.bernoulli_index < 0 || fl.bernoulli_index > kBernoulliIndexLimit) {
        throw std::invalid_argument(fmt::format("K must be in [0, {}]", kBernoulliIndexLimit));
    }
    const int k = static_cast<int>(fl.bernoulli_index);
    std::string value = fl.mod ? std::to_string(bernoulli_mod(k, *fl.mod).value()) : bernoulli(k).to_string();
    if (fl.format == "json") {
        nlohmann::ordered_json j;
        j["k"] = std::to_string(k);
        j["modulus"] = fl.mod ? nlohmann::ordered_json(std::to_string(*fl.mod)) : nlohmann::ordered_json(nullptr);
        j["value"] = value;
        out << j.dump(2) << "\n";
    } else {
        out << value << "\n";
    }
    return 0;
}

int cmd_selftest(const Flags& fl, std::ostream& out) {
    std::vector<CriterionResult> results;
    if (fl.only) results.push_back(run_criterion(static_cast<int>(*fl.only)));
    else results = run_acceptance();
    std::size_t passed = 0;
    for (const auto& r : results) {
        out << r.line() << "\n" << std::flush;
        passed += r.pass();
    }
    out << fmt::format("{} of {} criteria passed\n", passed, results.size());
    return passed == results.size() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Verifier for congruences of restricted multiple harmonic sums", "mhsum"};
    app.require_subcommand(1);
    Flags fl;

    auto format_opt = [&](CLI::App* sub) {
        sub->add_option("--format", fl.format, "table or json")->check(CLI::IsMember({"table", "json"}));
    };

    auto* verify = app.add_subcommand("verify", "Check a statement against the brute-force oracle");
    verify->add_option("target", fl.target_name, "theorem1|theorem2|corollary:<id>|lemma:<id>|literature:<id>|all")
        ->required();
    verify->add_option("--n", fl.n, "modulus n (or N for lemma 2.7)");
    verify->add_option("--p", fl.p, "prime p");
    verify->add_option("--r", fl.r, "exponent r");
    verify->add_option("--r0", fl.r0, "power of two for the doubling form");
    verify->add_option("--p1", fl.p1);
    verify->add_option("--r1", fl.r1);
    verify->add_option("--p2", fl.p2);
    verify->add_option("--r2", fl.r2);
    verify->add_option("--k", fl.k);
    verify->add_option("--x", fl.x);
    verify->add_option("--m", fl.m);
    verify->add_option("--point", fl.point, "rational argument for lemma 2.4");
    verify->add_option("--sign", fl.sign, "alt or uniform (lemma 2.7)");
    verify->add_option("--max-n", fl.max_n, "grid bound when no point is given");
    verify->add_option("--method", fl.method, "naive, fast or both");
    format_opt(verify);

    auto* sum = app.add_subcommand("sum", "Evaluate a sum directly");
    sum->add_option("kind", fl.kind, "triple|kfold|progression|cube|halfcube")
        ->required()
        ->check(CLI::IsMember({"triple", "kfold", "progression", "cube", "halfcube"}));
    sum->add_option("--n", fl.n, "upper bound N (triple) or modulus n");
    sum->add_option("--sign", fl.sign, "alt or uniform");
    sum->add_option("--mod", fl.mod, "modulus (defaults to N)");
    sum->add_option("--filter", fl.filter, "comma-separated primes, or auto for the primes of N");
    sum->add_option("--k", fl.k, "number of parts (kfold)");
    sum->add_option("--target", fl.target, "sum of the parts (kfold)");
    sum->add_option("--x", fl.x, "residue class (progression)");
    sum->add_option("--mult", fl.mult, "range multiplier (progression)");
    sum->add_option("--method", fl.method, "naive, fast or both");
    format_opt(sum);

    auto* bern = app.add_subcommand("bernoulli", "Exact B_K or B_K mod M");
    bern->add_option("K", fl.bernoulli_index)->required();
    bern->add_option("--mod", fl.mod);
    format_opt(bern);

    auto* self = app.add_subcommand("selftest", "Run the acceptance criteria");
    self->add_option("--only", fl.only, "run a single criterion");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(fl, out);
        if (sum->parsed()) return cmd_sum(fl, out);
        if (bern->parsed()) return cmd_bernoulli(fl, out);
        return cmd_selftest(fl, out);
    } catch (const MathError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range&) {
        err << "usage error: value out of range\n";
        return 2;
    }
}

}  // namespace mhs
