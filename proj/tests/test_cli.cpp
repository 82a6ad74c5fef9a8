#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zerolab/cli.hpp"
#include "zerolab/serialize.hpp"

using namespace zerolab;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("dist exact") {
    const auto r = run({"dist", "exact", "--ring", "Z4", "--space", "custom-basis", "1,x", "--n", "1", "--m", "2",
                        "--format", "json", "--workers", "1"});
    REQUIRE(r.code == cli::kExitOk);
    const Json j = Json::parse(r.out);
    CHECK(j["mean"] == Json{{"num", "1"}, {"den", "4"}});
    CHECK(j["params"]["ring"] == "Z4");
    CHECK(j["pmf"].size() == 5);
    CHECK(r.err.empty());

    const auto same = run({"dist", "exact", "--ring", "Z4", "--space", "custom:basis=1,x", "--n", "1", "--m", "2"});
    CHECK(Json::parse(same.out)["pmf"] == j["pmf"]);
}

TEST_CASE("dist theory") {
    const auto r = run({"dist", "theory", "--q", "2", "--n", "1", "--m", "1"});
    REQUIRE(r.code == cli::kExitOk);
    const Json j = Json::parse(r.out);
    REQUIRE(j["pmf"].size() == 3);
    CHECK(j["pmf"][0]["num"] == "1");
    CHECK(j["pmf"][0]["den"] == "4");
    CHECK(j["pmf"][1]["den"] == "2");
    CHECK(j["pmf"][2]["den"] == "4");

    const auto csv = run({"dist", "theory", "--q", "2", "--n", "1", "--m", "1", "--format", "csv"});
    CHECK(csv.out == "count,probability\n0,0.25\n1,0.5\n2,0.25\n");
    const auto table = run({"dist", "theory", "--q", "2", "--n", "1", "--m", "1", "--format", "table"});
    CHECK(table.out.find("mean 1") != std::string::npos);
}

TEST_CASE("space check") {
    const auto r = run({"space", "check", "--ring", "GF(3)", "--space", "total:d=1", "--n", "1"});
    REQUIRE(r.code == cli::kExitOk);
    const Json j = Json::parse(r.out);
    CHECK(j["extends_ring"] == true);
    CHECK(j["contains_functions"] == false);
    CHECK(j["rank"] == 2);
    CHECK(j["coverage_count"] == 9);
    CHECK(j["all_functions"] == "27");

    const auto nonfield = run({"space", "check", "--ring", "Z4", "--space", "pervar:d=3", "--n", "1"});
    REQUIRE(nonfield.code == cli::kExitOk);
    const Json k = Json::parse(nonfield.out);
    CHECK(k["contains_functions"] == false);
    CHECK(k["coverage_count"].get<int>() < 256);
}

TEST_CASE("dist mc and compare") {
    const auto mc = run({"dist", "mc", "--ring", "GF(2)", "--space", "pervar:d=1", "--n", "1", "--m", "1",
                         "--samples", "100000", "--seed", "0"});
    REQUIRE(mc.code == cli::kExitOk);
    CHECK(Json::parse(mc.out)["provenance"] == "monte_carlo(samples=100000,seed=0)");

    const auto cmp = run({"dist", "compare", "--ring", "GF(3)", "--space", "pervar:d=2", "--n", "1", "--m", "1"});
    REQUIRE(cmp.code == cli::kExitOk);
    const Json c = Json::parse(cmp.out);
    CHECK(c["equal"] == true);
    CHECK(c["tv"] == Json{{"num", "0"}, {"den", "1"}});

    const auto neg = run({"dist", "compare", "--ring", "GF(3)", "--space", "total:d=1", "--n", "1", "--m", "1"});
    REQUIRE(neg.code == cli::kExitOk);
    const Json d = Json::parse(neg.out);
    CHECK(d["equal"] == false);
    CHECK(d.contains("first_difference"));

    const auto gof = run({"dist", "compare", "--ring", "GF(2)", "--space", "pervar:d=1", "--n", "1", "--m", "1",
                          "--against", "mc", "--samples", "5000", "--seed", "1"});
    REQUIRE(gof.code == cli::kExitOk);
    const Json g = Json::parse(gof.out);
    CHECK(g.contains("gof"));
    CHECK(g["tv"].get<double>() < 0.05);

    const auto nonfield = run({"dist", "compare", "--ring", "Z4", "--space", "total:d=1", "--n", "1", "--m", "1"});
    CHECK(nonfield.code == cli::kExitValidation);
    CHECK(nonfield.out.empty());
}

TEST_CASE("density and poisson") {
    const auto d = run({"density", "--ring", "GF(2)", "--n", "1", "--m", "1", "--t-max", "4", "--tol", "0"});
    REQUIRE(d.code == cli::kExitOk);
    CHECK(Json::parse(d.out)["converged"] == true);

    const auto p = run({"poisson", "--n", "1", "--q-list", "2,3,4,5,7,8,9"});
    REQUIRE(p.code == cli::kExitOk);
    const Json rows = Json::parse(p.out);
    REQUIRE(rows.size() == 7);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i]["tv"] < rows[i - 1]["tv"]);
}

TEST_CASE("error paths exit nonzero with empty stdout") {
    const std::vector<std::vector<std::string>> validation = {
        {"dist", "exact", "--ring", "Q4", "--space", "total:d=1", "--n", "1", "--m", "1"},
        {"dist", "exact", "--ring", "Z4", "--space", "total:d=x", "--n", "1", "--m", "1"},
        {"dist", "exact", "--ring", "Z4", "--space", "custom-basis", "1,x3", "--n", "1", "--m", "1"},
        {"dist", "exact", "--ring", "Z4", "--space", "total:d=1", "--n", "1"},
        {"dist", "exact", "--ring", "Z4", "--space", "total:d=1", "--n", "1", "--m", "1", "--bogus"},
        {"dist", "theory", "--q", "6", "--n", "1", "--m", "1"},
        {"dist", "exact", "--ring", "Z4", "--space", "total:d=1", "--n", "1", "--m", "1", "--budget", "0"},
        {"dist", "exact", "--ring", "Z4", "--space", "total:d=1", "--n", "1", "--m", "1", "--format", "xml"},
        {"space", "check", "--ring", "Z4", "--space", "custom-basis", "x+1", "--n", "1"},
        {"poisson", "--q-list", "2,6"},
        {"frobnicate"},
        {},
    };
    for (const auto& args : validation) {
        std::string joined;
        for (const auto& a : args) joined += a + " ";
        CAPTURE(joined);
        const auto r = run(args);
        CHECK(r.code == cli::kExitValidation);
        CHECK(r.out.empty());
        CHECK_FALSE(r.err.empty());
    }

    const auto parse = run({"dist", "exact", "--ring", "GF(6)", "--space", "total:d=1", "--n", "1", "--m", "1"});
    CHECK(parse.err.find("position 3") != std::string::npos);

    const auto budget = run({"dist", "exact", "--ring", "GF(3)", "--space", "pervar:d=2", "--n", "2", "--m", "2"});
    CHECK(budget.code == cli::kExitBudget);
    CHECK(budget.out.empty());
    CHECK(budget.err.find("3486784401") != std::string::npos);

    const auto small = run({"dist", "exact", "--ring", "Z4", "--space", "total:d=1", "--n", "1", "--m", "1",
                            "--budget", "10"});
    CHECK(small.code == cli::kExitBudget);
    CHECK(small.out.empty());

    const auto help = run({"--help"});
    CHECK(help.code == cli::kExitOk);
}

TEST_CASE("ZEROLAB_BUDGET sets the default budget") {
    const std::vector<std::string> args = {"dist", "exact", "--ring", "Z4", "--space", "total:d=1",
                                           "--n", "1", "--m", "1"};
    ::setenv("ZEROLAB_BUDGET", "10", 1);
    const auto limited = run(args);
    std::vector<std::string> override_args = args;
    override_args.insert(override_args.end(), {"--budget", "1000"});
    const auto overridden = run(override_args);
    ::setenv("ZEROLAB_BUDGET", "many", 1);
    const auto bad = run(args);
    ::unsetenv("ZEROLAB_BUDGET");
    CHECK(limited.code == cli::kExitBudget);
    CHECK(overridden.code == cli::kExitOk);
    CHECK(bad.code == cli::kExitValidation);
    CHECK(run(args).code == cli::kExitOk);
}

TEST_CASE("output files are byte-identical across worker counts") {
    const auto dir = std::filesystem::temp_directory_path() / "zerolab_cli_test";
    std::filesystem::create_directories(dir);
    const std::vector<std::vector<std::string>> commands = {
        {"dist", "mc", "--ring", "GF(4)", "--space", "total:d=1", "--n", "2", "--m", "1", "--samples", "20000",
         "--seed", "5"},
        {"dist", "exact", "--ring", "Z6", "--space", "total:d=1", "--n", "1", "--m", "2"},
        {"dist", "compare", "--ring", "GF(2)", "--space", "pervar:d=1", "--n", "2", "--m", "1", "--against", "mc",
         "--samples", "3000", "--seed", "2"},
    };
    for (const auto& base : commands) {
        std::vector<std::string> contents;
        for (const char* workers : {"1", "4"}) {
            auto args = base;
            const auto file = dir / (std::string("out") + workers + ".json");
            args.insert(args.end(), {"--workers", workers, "--output", file.string()});
            const auto r = run(args);
            REQUIRE(r.code == cli::kExitOk);
            CHECK(r.out.empty());
            contents.push_back(slurp(file));
        }
        CHECK_FALSE(contents[0].empty());
        CHECK(contents[0] == contents[1]);
    }

    // a failing command does not create or clobber the output file
    const auto file = dir / "fail.json";
    std::filesystem::remove(file);
    const auto r = run({"dist", "exact", "--ring", "Z4", "--space", "total:d=1", "--n", "1", "--m", "1", "--budget",
                        "10", "--output", file.string()});
    CHECK(r.code == cli::kExitBudget);
    CHECK_FALSE(std::filesystem::exists(file));
    std::filesystem::remove_all(dir);
}
