#include <doctest.h>

#include <sstream>

#include "zerolab/errors.hpp"
#include "zerolab/serialize.hpp"

using namespace zerolab;

TEST_CASE("exact distribution schema") {
    const SampleSpace s = make_per_variable_degree_space(RingSpec::zmod(2), 1, 1);
    const Json j = to_json(exact_distribution(s, 1));
    CHECK(j["params"]["ring"] == "Z2");
    CHECK(j["params"]["space"] == "pervar:d=1");
    CHECK(j["params"]["n"] == 1);
    CHECK(j["params"]["m"] == 1);
    CHECK(j["provenance"] == "exhaustive");
    REQUIRE(j["pmf"].size() == 3);
    CHECK(j["pmf"][1] == Json{{"count", 1}, {"num", "1"}, {"den", "2"}});
    CHECK(j["mean"] == Json{{"num", "1"}, {"den", "1"}});
    // key order is stable
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"params", "provenance", "pmf", "mean"});
}

TEST_CASE("wide rationals are decimal strings") {
    const Json j = to_json(theoretical_distribution(3, 2, 2));
    CHECK(j["pmf"][0]["num"] == "134217728");   // 8^9
    CHECK(j["pmf"][0]["den"] == "387420489");   // 9^9
    CHECK(j["provenance"] == "theoretical(binomial(N=9,p=1/9))");
    CHECK(j["params"]["ring"] == "GF(3)");
    const Json big = to_json(theoretical_distribution(5, 2, 2));
    CHECK(big["pmf"][0]["den"].get<std::string>().size() > 20);
}

TEST_CASE("monte carlo schema") {
    const SampleSpace s = make_per_variable_degree_space(RingSpec::zmod(2), 1, 1);
    const Json j = to_json(monte_carlo_distribution(s, 1, 1000, 4));
    CHECK(j["provenance"] == "monte_carlo(samples=1000,seed=4)");
    double total = 0;
    for (const auto& e : j["pmf"]) {
        CHECK(e.contains("p"));
        CHECK_FALSE(e.contains("num"));
        total += e["p"].get<double>();
    }
    CHECK(total == doctest::Approx(1.0));
    CHECK(j["mean"].is_number_float());
}

TEST_CASE("json round-trip") {
    const RingSpec r = RingSpec::parse("GF(4)");
    std::vector<ZeroCountDistribution> dists = {
        exact_distribution(make_total_degree_space(r, 1, 1), 2),
        theoretical_distribution(7, 2, 1),
        monte_carlo_distribution(make_total_degree_space(r, 2, 1), 1, 777, 9),
        monte_carlo_distribution(make_total_degree_space(RingSpec::zmod(3), 1, 2), 2, 1, 0),
    };
    for (const auto& d : dists) {
        const Json j = to_json(d);
        const auto back = distribution_from_json(Json::parse(j.dump()));
        CHECK(to_json(back) == j);
        CHECK(to_json(back).dump() == j.dump());
        CHECK(back.is_exact() == d.is_exact());
        CHECK(back.provenance().to_string() == d.provenance().to_string());
        if (d.is_exact()) {
            CHECK(back.exact_probs() == d.exact_probs());
        } else {
            CHECK(back.counts() == d.counts());
        }
    }
    CHECK_THROWS_AS(distribution_from_json(Json::parse(R"({"params": 3})")), ValidationError);
    CHECK_THROWS_AS(distribution_from_json(Json::parse(
                        R"({"params": {"ring": "Z2", "space": "s", "n": 1, "m": 1}, "provenance": "exhaustive",
                            "pmf": [{"count": 0, "num": "1", "den": "3"}, {"count": 1, "num": "1", "den": "3"}],
                            "mean": {"num": "1", "den": "3"}})")),
                    ValidationError);
}

TEST_CASE("csv") {
    const SampleSpace s = make_per_variable_degree_space(RingSpec::zmod(2), 1, 1);
    const std::string csv = to_csv(exact_distribution(s, 1));
    CHECK(csv == "count,probability\n0,0.25\n1,0.5\n2,0.25\n");

    const std::string third = to_csv(exact_distribution(make_total_degree_space(RingSpec::zmod(3), 1, 0), 1));
    std::istringstream in(third);
    std::string line;
    std::getline(in, line);
    CHECK(line == "count,probability");
    std::getline(in, line);
    CHECK(line == "0,0.66666666666666663");
}

TEST_CASE("table") {
    const SampleSpace s = make_per_variable_degree_space(RingSpec::zmod(2), 1, 1);
    const std::string t = to_table(exact_distribution(s, 1));
    CHECK(t.find("ring Z2") != std::string::npos);
    CHECK(t.find("1/4") != std::string::npos);
    CHECK(t.find("mean 1") != std::string::npos);
}

TEST_CASE("report schemas") {
    const SampleSpace s = make_per_variable_degree_space(RingSpec::zmod(2), 1, 1);
    const Json g = to_json(gof_test(monte_carlo_distribution(s, 1, 500, 1), theoretical_distribution(2, 1, 1)));
    CHECK(g["dof"] == 2);
    CHECK(g["bins"].size() == 3);
    CHECK(g.contains("p_value"));

    DensityOptions opts;
    const Json d = to_json(density_estimate(Filtration::full(RingSpec::zmod(2), 1, 3), 1, opts));
    CHECK(d["converged"] == true);
    CHECK(d["per_t"][0]["t"] == 1);
    CHECK(d["per_t"][0]["tv_to_previous"].is_null());
    CHECK(d["per_t"][1]["tv_to_previous"] == Json{{"num", "0"}, {"den", "1"}});
    CHECK(d["per_t"][0]["vanishing_probability"] == Json{{"num", "1"}, {"den", "2"}});
    CHECK(d["budget_stop"].is_null());

    const std::vector<std::uint64_t> qs = {2, 3};
    const Json p = to_json(poisson_limit_report(1, qs));
    REQUIRE(p.size() == 2);
    CHECK(p[0]["q"] == 2);
    CHECK(p[0]["p_zero"].get<double>() == doctest::Approx(0.25));
}
