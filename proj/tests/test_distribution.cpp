#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "zerolab/distribution.hpp"
#include "zerolab/errors.hpp"

using namespace zerolab;

namespace {

mpq_class sum(const std::vector<mpq_class>& v) {
    mpq_class s = 0;
    for (const auto& x : v) s += x;
    return s;
}

mpq_class ratio(const mpz_class& num, const mpz_class& den) {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

mpq_class exact_mean(const ZeroCountDistribution& d) { return std::get<mpq_class>(expectation(d)); }

SampleSpace constants_only(const RingSpec& r, std::size_t n) {
    return make_custom_space(r, n, {Polynomial::constant(r.one(), n)});
}

// Spaces over F_q with q in {2,3}, n in {1,2} that contain functions.
std::vector<SampleSpace> function_spaces(std::uint64_t q, std::size_t n) {
    const RingSpec f = RingSpec::zmod(q);
    const auto d = static_cast<std::uint32_t>(q - 1);
    std::vector<SampleSpace> out = {make_per_variable_degree_space(f, n, d),
                                    make_total_degree_space(f, n, static_cast<std::uint32_t>(n) * d)};
    if (n == 1) out.push_back(make_total_degree_space(f, 1, d + 1));
    return out;
}

}  // namespace

TEST_CASE("exact distribution examples") {
    const RingSpec f2 = RingSpec::zmod(2);
    const auto d = exact_distribution(make_per_variable_degree_space(f2, 1, 1), 1);
    CHECK(d.exact_probs() == std::vector<mpq_class>{mpq_class(1, 4), mpq_class(1, 2), mpq_class(1, 4)});
    CHECK(d.provenance().to_string() == "exhaustive");
    CHECK(d.params().n == 1);
    CHECK(d.params().m == 1);

    const RingSpec z4 = RingSpec::zmod(4);
    const SampleSpace lin4 = make_custom_space(z4, 1, {Polynomial::parse(z4, 1, "1"), Polynomial::parse(z4, 1, "x")});
    CHECK(exact_mean(exact_distribution(lin4, 1)) == 1);
    CHECK(exact_mean(exact_distribution(lin4, 2)) == mpq_class(1, 4));

    const auto c = exact_distribution(constants_only(f2, 1), 1);
    CHECK(c.exact_probs() == std::vector<mpq_class>{mpq_class(1, 2), 0, mpq_class(1, 2)});

    const RingSpec z6 = RingSpec::zmod(6);
    CHECK(exact_mean(exact_distribution(make_total_degree_space(z6, 1, 1), 1)) == 1);
}

TEST_CASE("exact distribution matches the brute-force oracle") {
    const char* rings[] = {"Z2", "Z3", "Z4", "Z6", "GF(4)", "Z2xZ2"};
    for (const char* spec : rings) {
        const RingSpec r = RingSpec::parse(spec);
        for (const SampleSpace& s : {make_total_degree_space(r, 1, 1), make_custom_space(r, 2, {
                                         Polynomial::parse(r, 2, "1"), Polynomial::parse(r, 2, "x1*x2")})}) {
            for (std::size_t m : {1u, 2u}) {
                CAPTURE(spec);
                CAPTURE(m);
                CHECK(exact_distribution(s, m).exact_probs() == oracle::zero_count_pmf(s, m));
            }
        }
    }
}

TEST_CASE("exact distribution does not depend on the worker count") {
    const SampleSpace s = make_total_degree_space(RingSpec::zmod(5), 2, 1);
    CHECK(exact_distribution(s, 2, RunOptions{kDefaultBudget, 1}).exact_probs() ==
          exact_distribution(s, 2, RunOptions{kDefaultBudget, 3}).exact_probs());
}

TEST_CASE("exact distribution budget") {
    const SampleSpace s = make_per_variable_degree_space(RingSpec::zmod(3), 2, 2);
    try {
        exact_distribution(s, 2);
        FAIL("expected a budget error");
    } catch (const BudgetExceededError& e) {
        // 3^18 * 3^2
        CHECK(std::string(e.what()).find("3486784401") != std::string::npos);
    }
}

TEST_CASE("theoretical distribution") {
    const auto d = theoretical_distribution(2, 1, 1);
    CHECK(d.exact_probs() == std::vector<mpq_class>{mpq_class(1, 4), mpq_class(1, 2), mpq_class(1, 4)});
    mpq_class eight_ninths(8, 9);
    mpq_class p0 = 1;
    for (int i = 0; i < 9; ++i) p0 *= eight_ninths;
    CHECK(theoretical_distribution(3, 2, 2).exact_probs()[0] == p0);
    CHECK(exact_mean(theoretical_distribution(3, 2, 1)) == 3);
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
        for (std::size_t n : {1u, 2u}) {
            for (std::size_t m : {1u, 2u, 3u}) {
                const auto t = theoretical_distribution(q, n, m);
                CHECK(sum(t.exact_probs()) == 1);
                CHECK(exact_mean(t) == ratio(ipow(q, n), ipow(q, m)));
                if (n == 1) {
                    CHECK(t.exact_probs() == oracle::binomial_pmf(q, mpq_class(1, to_u64(ipow(q, m)))));
                }
            }
        }
    }
    CHECK_THROWS_AS(theoretical_distribution(6, 1, 1), ValidationError);
    CHECK_THROWS_AS(theoretical_distribution(2, 1, 0), ValidationError);
}

TEST_CASE("exhaustive equals theoretical on spaces containing functions") {
    int checked = 0;
    for (std::uint64_t q : {2, 3}) {
        for (std::size_t n : {1u, 2u}) {
            for (const SampleSpace& s : function_spaces(q, n)) {
                REQUIRE(contains_functions(s));
                for (std::size_t m : {1u, 2u}) {
                    const mpz_class work = ipow(q, s.rank() * m + 0) * ipow(q, n);
                    if (work > kDefaultBudget) continue;
                    CAPTURE(s.id());
                    CAPTURE(m);
                    CHECK(exact_distribution(s, m).exact_probs() == theoretical_distribution(q, n, m).exact_probs());
                    ++checked;
                }
            }
        }
    }
    CHECK(checked >= 10);
}

TEST_CASE("expected zero count is |R|^(n-m) on spaces extending R") {
    const char* rings[] = {"Z2", "Z3", "Z4", "Z6", "GF(4)"};
    for (const char* spec : rings) {
        const RingSpec r = RingSpec::parse(spec);
        for (std::size_t n : {1u, 2u}) {
            std::vector<SampleSpace> spaces = {make_total_degree_space(r, n, 1), constants_only(r, n)};
            if (n == 1) spaces.push_back(make_total_degree_space(r, 1, 2));
            if (n == 2) {
                spaces.push_back(make_custom_space(r, 2, {Polynomial::parse(r, 2, "1"), Polynomial::parse(r, 2, "x1*x2")}));
            }
            for (const auto& s : spaces) {
                for (std::size_t m : {1u, 2u}) {
                    CAPTURE(spec);
                    CAPTURE(s.id());
                    CAPTURE(m);
                    const auto d = exact_distribution(s, m);
                    CHECK(sum(d.exact_probs()) == 1);
                    if (!extends_ring(s)) continue;
                    CHECK(exact_mean(d) == ratio(ipow(r.order(), n), ipow(r.order(), m)));
                }
            }
        }
    }
}

TEST_CASE("binomial law fails without contains-functions but the mean holds") {
    const RingSpec f3 = RingSpec::zmod(3);
    const SampleSpace lin = make_total_degree_space(f3, 1, 1);
    REQUIRE(extends_ring(lin));
    REQUIRE_FALSE(contains_functions(lin));
    const auto exact = exact_distribution(lin, 1);
    const auto theory = theoretical_distribution(3, 1, 1);
    const auto r = first_difference(exact, theory);
    REQUIRE(r.has_value());
    CHECK(exact.exact_probs()[*r] != theory.exact_probs()[*r]);
    // a+bx has 3 zeros only when a=b=0: 1/9, versus the binomial 1/27
    CHECK(exact.exact_probs()[3] == mpq_class(1, 9));
    CHECK(theory.exact_probs()[3] == mpq_class(1, 27));
    CHECK(tv_distance_exact(exact, theory) > 0);
    CHECK(exact_mean(exact) == 1);
}

TEST_CASE("tv distance") {
    const auto a = theoretical_distribution(2, 1, 1);
    const auto c = exact_distribution(constants_only(RingSpec::zmod(2), 1), 1);
    CHECK(tv_distance_exact(a, a) == 0);
    CHECK(tv_distance_exact(a, c) == mpq_class(1, 2));
    CHECK(tv_distance(a, c) == doctest::Approx(0.5));
    // different supports are padded with zeros
    const auto wide = theoretical_distribution(2, 2, 1);
    CHECK(tv_distance_exact(a, wide) == tv_distance_exact(wide, a));
    CHECK_FALSE(first_difference(a, a).has_value());
}

TEST_CASE("distribution validation") {
    DistributionParams params{"Z2", "x", 1, 1};
    CHECK_THROWS_AS(ZeroCountDistribution::exact(params, Provenance{}, {mpq_class(1, 2), mpq_class(1, 3)}),
                    ValidationError);
    CHECK_THROWS_AS(ZeroCountDistribution::exact(params, Provenance{}, {}), ValidationError);
    const auto d = ZeroCountDistribution::exact(params, Provenance{}, {mpq_class(1, 2), mpq_class(1, 2)});
    CHECK_THROWS(d.counts());
}

TEST_CASE("monte carlo distribution") {
    const RingSpec f2 = RingSpec::zmod(2);
    const SampleSpace s = make_per_variable_degree_space(f2, 1, 1);
    const auto theory = theoretical_distribution(2, 1, 1);

    const auto one = monte_carlo_distribution(s, 1, 1, 5);
    int nonzero = 0;
    for (auto c : one.counts()) nonzero += c != 0;
    CHECK(nonzero == 1);
    CHECK(one.samples() == 1);

    const auto big = monte_carlo_distribution(s, 1, 100'000, 0);
    CHECK(tv_distance(big, theory) < 0.01);
    CHECK(big.provenance().to_string() == "monte_carlo(samples=100000,seed=0)");
    double total = 0;
    for (double p : big.probabilities()) total += p;
    CHECK(std::fabs(total - 1) < 1e-12);

    // mean within 3 standard errors; Bin(2,1/2) has variance 1/2
    const double se = std::sqrt(0.5 / 100'000);
    CHECK(std::fabs(mean_value(expectation(big)) - 1.0) < 3 * se);

    CHECK_THROWS_AS(monte_carlo_distribution(s, 1, 0, 0), ValidationError);
    CHECK_THROWS(big.exact_probs());
}

TEST_CASE("monte carlo is reproducible and independent of the worker count") {
    const SampleSpace s = make_total_degree_space(RingSpec::zmod(3), 2, 2);
    const auto a = monte_carlo_distribution(s, 2, 5000, 17, RunOptions{kDefaultBudget, 1});
    const auto b = monte_carlo_distribution(s, 2, 5000, 17, RunOptions{kDefaultBudget, 4});
    const auto c = monte_carlo_distribution(s, 2, 5000, 18, RunOptions{kDefaultBudget, 1});
    CHECK(a.counts() == b.counts());
    CHECK(a.counts() != c.counts());
}

TEST_CASE("monte carlo approaches the exhaustive law") {
    const char* rings[] = {"Z4", "Z6", "GF(4)", "Z3"};
    for (const char* spec : rings) {
        const RingSpec r = RingSpec::parse(spec);
        const SampleSpace s = make_total_degree_space(r, 1, 1);
        const auto exact = exact_distribution(s, 1);
        const auto mc = monte_carlo_distribution(s, 1, 100'000, 0);
        CAPTURE(spec);
        CHECK(tv_distance(mc, exact) < 0.02);
    }
}

TEST_CASE("goodness of fit") {
    const RingSpec f2 = RingSpec::zmod(2);
    const SampleSpace s = make_per_variable_degree_space(f2, 1, 1);
    const auto theory = theoretical_distribution(2, 1, 1);

    int low = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto report = gof_test(monte_carlo_distribution(s, 1, 2000, seed), theory);
        CHECK(report.dof + 1 == report.bins.size());
        low += report.p_value < 0.01;
    }
    CHECK(low < 20);
    CHECK(low <= 3);

    const auto bad = gof_test(monte_carlo_distribution(constants_only(f2, 1), 1, 10'000, 0), theory);
    CHECK(bad.p_value < 1e-6);
    CHECK(bad.rejects(kDefaultRejectLevel));

    const auto small = gof_test(monte_carlo_distribution(s, 1, 40, 1), theory);
    CHECK(small.bins.size() == 3);
    CHECK(small.dof == 2);
    CHECK_THROWS_AS(gof_test(theory, theory), PreconditionError);
    // 3 samples: expected counts of 0.75/1.5/0.75 merge into a single bin
    CHECK_THROWS_AS(gof_test(monte_carlo_distribution(s, 1, 3, 1), theory), ValidationError);
}

TEST_CASE("gof bins merge the sparse tail") {
    const SampleSpace s = make_per_variable_degree_space(RingSpec::zmod(2), 2, 1);
    const auto theory = theoretical_distribution(2, 2, 1);
    const auto report = gof_test(monte_carlo_distribution(s, 1, 200, 3), theory);
    double observed = 0;
    std::uint64_t next = 0;
    for (const auto& bin : report.bins) {
        CHECK(bin.expected >= 5);
        CHECK(bin.lo == next);
        next = bin.hi + 1;
        observed += bin.observed;
    }
    CHECK(next == 5);
    CHECK(observed == 200);
}

TEST_CASE("density along the total degree filtration") {
    const RingSpec f2 = RingSpec::zmod(2);
    const Filtration filt = Filtration::full(f2, 1, 4);

    DensityOptions keep_going;
    keep_going.stop_on_convergence = false;
    const auto est = density_estimate(filt, 1, keep_going);
    REQUIRE(est.per_t.size() == 4);
    const auto binomial = theoretical_distribution(2, 1, 1);
    for (const auto& step : est.per_t) {
        CAPTURE(step.t);
        CHECK(step.vanishing_probability == mpq_class(1, 2));
        CHECK(step.dist.exact_probs() == binomial.exact_probs());
        CHECK(step.contains_functions == std::optional<bool>(true));
        CHECK(step.extends_ring);
    }
    CHECK(est.converged);

    const auto fast = density_estimate(filt, 1, DensityOptions{});
    CHECK(fast.converged);
    CHECK(fast.per_t.size() == 2);
    CHECK(*fast.per_t.back().tv_to_previous == 0);

    // tol = 0 accepts only exactly equal pmfs
    DensityOptions exact_only;
    exact_only.tol = 0;
    const auto zero_tol = density_estimate(Filtration::full(f2, 1, 3), 1, exact_only);
    CHECK(zero_tol.converged);

    const RingSpec f3 = RingSpec::zmod(3);
    const auto differ = density_estimate(Filtration::full(f3, 1, 2), 1, exact_only);
    REQUIRE(differ.per_t.size() == 2);
    CHECK_FALSE(differ.converged);
    CHECK(*differ.per_t[1].tv_to_previous > 0);
    CHECK(differ.per_t[0].contains_functions == std::optional<bool>(false));
    CHECK(differ.per_t[1].contains_functions == std::optional<bool>(true));
}

TEST_CASE("density stops at the budget with partial results") {
    const Filtration filt = Filtration::full(RingSpec::zmod(3), 2, 6);
    DensityOptions opts;
    opts.tol = 0;
    opts.stop_on_convergence = false;
    const auto est = density_estimate(filt, 1, opts, RunOptions{100'000, 1});
    CHECK(est.budget_stop.has_value());
    CHECK_FALSE(est.converged);
    CHECK_FALSE(est.per_t.empty());
    CHECK(est.per_t.size() < 6);
}

TEST_CASE("poisson limit") {
    CHECK(poisson_pmf(1, 0) == doctest::Approx(std::exp(-1.0)));
    CHECK(poisson_pmf(1, 0) == doctest::Approx(0.3679).epsilon(1e-4));
    CHECK(poisson_pmf(1, 3) == doctest::Approx(std::exp(-1.0) / 6));

    const std::vector<std::uint64_t> qs = {2, 3, 4, 5, 7, 8, 9};
    const auto rows = poisson_limit_report(1, qs);
    REQUIRE(rows.size() == qs.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CAPTURE(rows[i].q);
        CHECK(rows[i].tv == doctest::Approx(oracle::binomial_poisson_tv(rows[i].q)).epsilon(1e-9));
        CHECK(rows[i].tail_bound < kPoissonTailTolerance);
        if (i > 0) CHECK(rows[i].tv < rows[i - 1].tv);
    }

    const std::vector<std::uint64_t> big = {101};
    CHECK(std::fabs(poisson_limit_report(1, big)[0].p_zero - std::exp(-1.0)) < 0.01);

    const std::vector<std::uint64_t> two = {2, 3};
    const auto rows2 = poisson_limit_report(2, two);
    CHECK(rows2[0].tv == doctest::Approx(oracle::binomial_poisson_tv(4)).epsilon(1e-9));
    CHECK(rows2[1].tv == doctest::Approx(oracle::binomial_poisson_tv(9)).epsilon(1e-9));

    const std::vector<std::uint64_t> bad = {2, 6};
    CHECK_THROWS_AS(poisson_limit_report(1, bad), ValidationError);
}
