#include "zerolab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "zerolab/distribution.hpp"
#include "zerolab/errors.hpp"
#include "zerolab/sample_space.hpp"
#include "zerolab/serialize.hpp"
#include "zerolab/zero_lab.hpp"

namespace zerolab::cli {

namespace {

enum class Mode { Check, Exact, MonteCarlo, Theory, Compare, Density, Poisson };

struct CommandConfig {
    Mode mode = Mode::Check;
    std::string ring;
    std::vector<std::string> space;
    std::size_t n = 1;
    std::size_t m = 1;
    std::uint64_t q = 0;
    std::vector<std::uint64_t> q_list;
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 0;
    std::uint64_t budget = kDefaultBudget;
    unsigned workers = 0;
    double tol = 1e-9;
    std::uint32_t t_min = 1;
    std::uint32_t t_max = 6;
    bool all_t = false;
    std::string point;
    std::string against = "exact";
    std::string format = "json";
    std::string output;
};

std::uint64_t default_budget() {
    const char* env = std::getenv("ZEROLAB_BUDGET");
    if (env == nullptr || *env == '\0') return kDefaultBudget;
    const std::string text(env);
    if (!std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }) || text.size() > 19) {
        throw ValidationError("ZEROLAB_BUDGET must be a positive integer, got \"" + text + "\"");
    }
    const std::uint64_t v = std::stoull(text);
    if (v == 0) throw ValidationError("ZEROLAB_BUDGET must be positive");
    return v;
}

SampleSpace build_space(const CommandConfig& cfg, const RingSpec& ring) {
    if (cfg.space.size() == 1) return SampleSpace::parse(ring, cfg.n, cfg.space[0]);
    if (cfg.space.size() == 2 && cfg.space[0] == "custom-basis") {
        return SampleSpace::parse(ring, cfg.n, "custom:basis=" + cfg.space[1]);
    }
    if (cfg.space.size() == 2 && cfg.space[0] == "custom-file") {
        return SampleSpace::parse(ring, cfg.n, "custom:file=" + cfg.space[1]);
    }
    throw ValidationError("--space takes a spec string or 'custom-basis <polys>' / 'custom-file <path>'");
}

Point parse_point(const RingSpec& ring, std::size_t n, const std::string& text) {
    std::vector<ElementIndex> coords;
    std::size_t pos = 0;
    for (;;) {
        coords.push_back(ring.parse_element(text, pos));
        while (pos < text.size() && text[pos] == ' ') ++pos;
        if (pos == text.size()) break;
        if (text[pos] != ',') throw ParseError(text, pos, "',' or end of point");
        ++pos;
    }
    if (coords.size() != n) throw ValidationError("--point needs " + std::to_string(n) + " coordinates");
    return Point(ring, std::move(coords));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string format_double(double v) {
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

void require_format(const CommandConfig& cfg, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed) {
        if (cfg.format == f) return;
    }
    throw ValidationError("--format " + cfg.format + " is not supported by this command");
}

std::string emit_distribution(const CommandConfig& cfg, const ZeroCountDistribution& dist) {
    if (cfg.format == "csv") return to_csv(dist);
    if (cfg.format == "table") return to_table(dist);
    return dump(to_json(dist));
}

RunOptions run_options(const CommandConfig& cfg) { return RunOptions{cfg.budget, cfg.workers}; }

std::string cmd_space_check(const CommandConfig& cfg) {
    const RingSpec ring = RingSpec::parse(cfg.ring);
    const SampleSpace space = build_space(cfg, ring);
    const RunOptions opts = run_options(cfg);

    auto budgeted = [](auto&& fn) -> Json {
        try {
            return Json(fn());
        } catch (const BudgetExceededError&) {
            return Json(nullptr);
        }
    };
    Json j;
    j["ring"] = ring.to_string();
    j["space"] = space.id();
    j["n"] = cfg.n;
    j["rank"] = space.rank();
    j["is_field"] = ring.is_field();
    j["extends_ring"] = budgeted([&] { return extends_ring(space, opts); });
    j["contains_functions"] =
        ring.is_field() ? budgeted([&] { return contains_functions(space, opts); }) : Json(nullptr);
    j["coverage_count"] = budgeted([&] { return function_coverage_count(space, opts); });
    if (!j["coverage_count"].is_null()) {
        const mpz_class all = ipow(ring.order(), to_u64(ipow(ring.order(), cfg.n)));
        j["all_functions"] = all.get_str();
        // off fields the rank test does not apply; coverage decides it
        if (j["contains_functions"].is_null()) {
            j["contains_functions"] = mpz_class(j["coverage_count"].get<std::uint64_t>()) == all;
        }
    }

    if (cfg.format == "json") return dump(j);
    std::string out;
    const bool csv = cfg.format == "csv";
    if (csv) out = "key,value\n";
    for (const auto& [key, value] : j.items()) {
        const std::string v = value.is_string() ? value.get<std::string>() : value.dump();
        out += csv ? key + "," + v + "\n" : key + ": " + v + "\n";
    }
    return out;
}

std::string cmd_compare(const CommandConfig& cfg) {
    require_format(cfg, {"json", "table"});
    const RingSpec ring = RingSpec::parse(cfg.ring);
    if (!ring.is_field()) throw ValidationError("dist compare needs a field; " + ring.to_string() + " is not one");
    const SampleSpace space = build_space(cfg, ring);
    const RunOptions opts = run_options(cfg);
    const ZeroCountDistribution theory = theoretical_distribution(ring.order(), cfg.n, cfg.m);

    Json j;
    j["against"] = cfg.against;
    j["contains_functions"] = contains_functions(space, opts);
    if (cfg.against == "exact") {
        const ZeroCountDistribution exact = exact_distribution(space, cfg.m, opts);
        const auto diff = first_difference(exact, theory);
        j["observed"] = to_json(exact);
        j["theory"] = to_json(theory);
        j["tv"] = rational_json(tv_distance_exact(exact, theory));
        j["equal"] = !diff.has_value();
        if (diff) {
            j["first_difference"] = Json{{"count", *diff},
                                         {"observed", rational_json(exact.exact_probs()[*diff])},
                                         {"theory", rational_json(theory.exact_probs()[*diff])}};
        } else {
            j["first_difference"] = nullptr;
        }
    } else if (cfg.against == "mc") {
        const ZeroCountDistribution mc = monte_carlo_distribution(space, cfg.m, cfg.samples, cfg.seed, opts);
        const GofReport gof = gof_test(mc, theory);
        j["observed"] = to_json(mc);
        j["theory"] = to_json(theory);
        j["tv"] = tv_distance(mc, theory);
        j["gof"] = to_json(gof);
        j["rejects"] = gof.rejects(kDefaultRejectLevel);
    } else {
        throw ValidationError("--against must be 'exact' or 'mc'");
    }
    if (cfg.format == "json") return dump(j);

    std::ostringstream out;
    out << "space " << space.id() << " over " << ring.to_string() << ", n=" << cfg.n << ", m=" << cfg.m << "\n";
    out << "contains functions: " << j["contains_functions"].dump() << "\n";
    out << std::left << std::setw(8) << "count" << std::setw(24) << "observed" << "theory\n";
    const auto& obs = j["observed"]["pmf"];
    for (std::size_t r = 0; r < obs.size(); ++r) {
        const double o = obs[r].contains("p") ? obs[r]["p"].get<double>()
                                               : mpq_class(obs[r]["num"].get<std::string>() + "/" +
                                                           obs[r]["den"].get<std::string>())
                                                     .get_d();
        out << std::left << std::setw(8) << r << std::setw(24) << format_double(o)
            << format_double(theory.probability(r)) << "\n";
    }
    if (j.contains("gof")) {
        out << "chi-square " << format_double(j["gof"]["statistic"].get<double>()) << " dof "
            << j["gof"]["dof"].get<std::size_t>() << " p-value " << format_double(j["gof"]["p_value"].get<double>())
            << "\n";
    } else {
        out << "equal: " << j["equal"].dump() << "\n";
    }
    return out.str();
}

std::string cmd_density(const CommandConfig& cfg) {
    const RingSpec ring = RingSpec::parse(cfg.ring);
    const Filtration filtration = Filtration::full(ring, cfg.n, cfg.t_max);
    DensityOptions d;
    d.tol = cfg.tol;
    d.t_min = cfg.t_min;
    d.stop_on_convergence = !cfg.all_t;
    if (!cfg.point.empty()) d.event_point = parse_point(ring, cfg.n, cfg.point);
    const FiltrationEstimate est = density_estimate(filtration, cfg.m, d, run_options(cfg));
    if (est.per_t.empty() && est.budget_stop) {
        throw BudgetExceededError(*est.budget_stop, "?", cfg.budget);
    }
    if (cfg.format == "json") return dump(to_json(est));
    std::ostringstream out;
    const bool csv = cfg.format == "csv";
    out << (csv ? "t,rank,vanishing_probability,tv_to_previous,contains_functions,mean\n"
                : "t  rank  vanish  tv_prev  contains_functions  mean\n");
    const char* sep = csv ? "," : "  ";
    for (const auto& s : est.per_t) {
        out << s.t << sep << s.rank << sep << s.vanishing_probability.get_str() << sep
            << (s.tv_to_previous ? s.tv_to_previous->get_str() : "") << sep
            << (s.contains_functions ? (*s.contains_functions ? "true" : "false") : "") << sep
            << mean_to_string(expectation(s.dist)) << "\n";
    }
    if (!csv) out << "converged: " << (est.converged ? "true" : "false") << "\n";
    return out.str();
}

std::string cmd_poisson(const CommandConfig& cfg) {
    const auto rows = poisson_limit_report(cfg.n, cfg.q_list);
    if (cfg.format == "json") return dump(to_json(std::span<const PoissonRow>(rows)));
    std::ostringstream out;
    const bool csv = cfg.format == "csv";
    out << (csv ? "q,n,tv,p_zero\n" : "q  n  tv  p_zero\n");
    const char* sep = csv ? "," : "  ";
    for (const auto& r : rows) {
        out << r.q << sep << r.n << sep << format_double(r.tv) << sep << format_double(r.p_zero) << "\n";
    }
    return out.str();
}

std::string dispatch(const CommandConfig& cfg) {
    switch (cfg.mode) {
        case Mode::Check: return cmd_space_check(cfg);
        case Mode::Exact: {
            const RingSpec ring = RingSpec::parse(cfg.ring);
            return emit_distribution(cfg, exact_distribution(build_space(cfg, ring), cfg.m, run_options(cfg)));
        }
        case Mode::MonteCarlo: {
            const RingSpec ring = RingSpec::parse(cfg.ring);
            return emit_distribution(cfg, monte_carlo_distribution(build_space(cfg, ring), cfg.m, cfg.samples,
                                                                   cfg.seed, run_options(cfg)));
        }
        case Mode::Theory: return emit_distribution(cfg, theoretical_distribution(cfg.q, cfg.n, cfg.m));
        case Mode::Compare: return cmd_compare(cfg);
        case Mode::Density: return cmd_density(cfg);
        case Mode::Poisson: return cmd_poisson(cfg);
    }
    return {};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CommandConfig cfg;
    try {
        cfg.budget = default_budget();
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    CLI::App app{"Distribution of common zeros of random polynomial systems over finite rings", "zerolab"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* cmd) {
        cmd->add_option("--budget", cfg.budget, "Cap on estimated evaluations (default $ZEROLAB_BUDGET or 1e8)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--workers", cfg.workers, "Worker threads (default: available parallelism)");
        cmd->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
        cmd->add_option("--output,-o", cfg.output, "Write the result to this file instead of stdout");
    };
    auto ring_space = [&](CLI::App* cmd) {
        cmd->add_option("--ring", cfg.ring, "Ring: Z4, GF(9), GF(8;mod=x^3+x+1), Z2xZ2")->required();
        cmd->add_option("--space", cfg.space, "total:d=2 | pervar:d=1 | custom:file=F | custom-basis \"1,x\"")
            ->required()
            ->expected(1, 2);
        cmd->add_option("--n", cfg.n, "Number of variables")->required()->check(CLI::PositiveNumber);
    };

    auto* space = app.add_subcommand("space", "Sample space queries");
    space->require_subcommand(1);
    auto* check = space->add_subcommand("check", "Structural predicates of a sample space");
    ring_space(check);
    common(check);
    check->callback([&] { cfg.mode = Mode::Check; });

    auto* dist = app.add_subcommand("dist", "Zero-count distributions");
    dist->require_subcommand(1);

    auto* exact = dist->add_subcommand("exact", "Exhaustive distribution");
    ring_space(exact);
    exact->add_option("--m", cfg.m, "Polynomials per system")->required()->check(CLI::PositiveNumber);
    common(exact);
    exact->callback([&] { cfg.mode = Mode::Exact; });

    auto* mc = dist->add_subcommand("mc", "Monte Carlo distribution");
    ring_space(mc);
    mc->add_option("--m", cfg.m, "Polynomials per system")->required()->check(CLI::PositiveNumber);
    mc->add_option("--samples", cfg.samples, "Number of sampled systems")->check(CLI::PositiveNumber);
    mc->add_option("--seed", cfg.seed, "RNG seed");
    common(mc);
    mc->callback([&] { cfg.mode = Mode::MonteCarlo; });

    auto* theory = dist->add_subcommand("theory", "Binomial law Bin(q^n, 1/q^m)");
    theory->add_option("--q", cfg.q, "Field order")->required();
    theory->add_option("--n", cfg.n, "Number of variables")->required()->check(CLI::PositiveNumber);
    theory->add_option("--m", cfg.m, "Polynomials per system")->required()->check(CLI::PositiveNumber);
    common(theory);
    theory->callback([&] { cfg.mode = Mode::Theory; });

    auto* compare = dist->add_subcommand("compare", "Exact or Monte Carlo distribution against the binomial law");
    ring_space(compare);
    compare->add_option("--m", cfg.m, "Polynomials per system")->required()->check(CLI::PositiveNumber);
    compare->add_option("--against", cfg.against, "exact | mc")->check(CLI::IsMember({"exact", "mc"}));
    compare->add_option("--samples", cfg.samples, "Number of sampled systems (mc)")->check(CLI::PositiveNumber);
    compare->add_option("--seed", cfg.seed, "RNG seed (mc)");
    common(compare);
    compare->callback([&] { cfg.mode = Mode::Compare; });

    auto* density = app.add_subcommand("density", "Exact distributions along the total-degree filtration");
    density->add_option("--ring", cfg.ring, "Ring")->required();
    density->add_option("--n", cfg.n, "Number of variables")->required()->check(CLI::PositiveNumber);
    density->add_option("--m", cfg.m, "Polynomials per system")->check(CLI::PositiveNumber);
    density->add_option("--t-min", cfg.t_min, "First truncation degree");
    density->add_option("--t-max", cfg.t_max, "Last truncation degree");
    density->add_option("--tol", cfg.tol, "Convergence tolerance on successive TV distance")
        ->check(CLI::NonNegativeNumber);
    density->add_option("--point", cfg.point, "Event point for the vanishing probability, e.g. \"0,1\"");
    density->add_flag("--all", cfg.all_t, "Compute every truncation up to --t-max");
    common(density);
    density->callback([&] { cfg.mode = Mode::Density; });

    auto* poisson = app.add_subcommand("poisson", "TV distance of Bin(q^n, q^-n) to Poisson(1)");
    poisson->add_option("--n", cfg.n, "Number of variables (m = n)")->check(CLI::PositiveNumber);
    poisson->add_option("--q-list", cfg.q_list, "Prime powers, comma separated")->required()->delimiter(',');
    common(poisson);
    poisson->callback([&] { cfg.mode = Mode::Poisson; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return kExitValidation;
    }

    try {
        const std::string result = dispatch(cfg);
        if (cfg.output.empty()) {
            out << result;
        } else {
            std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
            if (!file) throw ValidationError("cannot open " + cfg.output + " for writing");
            file << result;
            if (!file) throw ValidationError("failed writing " + cfg.output);
        }
        return kExitOk;
    } catch (const BudgetExceededError& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

}  // namespace zerolab::cli
