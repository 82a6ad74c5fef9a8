#include "zerolab/serialize.hpp"

#include <iomanip>
#include <sstream>

#include "zerolab/errors.hpp"

namespace zerolab {

namespace {

std::string format_double(double v) {
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

Provenance parse_provenance(const std::string& text) {
    Provenance prov;
    if (text == "exhaustive") return prov;
    if (text.starts_with("theoretical(") && text.ends_with(")")) {
        prov.kind = ProvenanceKind::Theoretical;
        prov.model = text.substr(12, text.size() - 13);
        return prov;
    }
    unsigned long long samples = 0, seed = 0;
    if (std::sscanf(text.c_str(), "monte_carlo(samples=%llu,seed=%llu)", &samples, &seed) == 2) {
        prov.kind = ProvenanceKind::MonteCarlo;
        prov.samples = samples;
        prov.seed = seed;
        return prov;
    }
    throw ValidationError("unknown provenance \"" + text + "\"");
}

}  // namespace

Json rational_json(const mpq_class& q) {
    Json j;
    j["num"] = q.get_num().get_str();
    j["den"] = q.get_den().get_str();
    return j;
}

Json to_json(const ZeroCountDistribution& dist) {
    Json j;
    const auto& p = dist.params();
    j["params"] = Json{{"ring", p.ring}, {"space", p.space}, {"n", p.n}, {"m", p.m}};
    j["provenance"] = dist.provenance().to_string();
    Json pmf = Json::array();
    for (std::uint64_t r = 0; r <= dist.max_count(); ++r) {
        Json entry;
        entry["count"] = r;
        if (dist.is_exact()) {
            const mpq_class& q = dist.exact_probs()[r];
            entry["num"] = q.get_num().get_str();
            entry["den"] = q.get_den().get_str();
        } else {
            entry["p"] = dist.probability(r);
        }
        pmf.push_back(std::move(entry));
    }
    j["pmf"] = std::move(pmf);
    const Mean mean = expectation(dist);
    if (const auto* q = std::get_if<mpq_class>(&mean)) {
        j["mean"] = rational_json(*q);
    } else {
        j["mean"] = std::get<double>(mean);
    }
    return j;
}

ZeroCountDistribution distribution_from_json(const Json& json) {
    try {
        DistributionParams params;
        params.ring = json.at("params").at("ring").get<std::string>();
        params.space = json.at("params").at("space").get<std::string>();
        params.n = json.at("params").at("n").get<std::size_t>();
        params.m = json.at("params").at("m").get<std::size_t>();
        Provenance prov = parse_provenance(json.at("provenance").get<std::string>());
        const auto& pmf = json.at("pmf");
        if (prov.kind == ProvenanceKind::MonteCarlo) {
            std::vector<std::uint64_t> counts(pmf.size(), 0);
            for (const auto& e : pmf) {
                const auto r = e.at("count").get<std::uint64_t>();
                if (r >= counts.size()) throw ValidationError("pmf count out of range");
                counts[r] = static_cast<std::uint64_t>(std::llround(e.at("p").get<double>() * prov.samples));
            }
            return ZeroCountDistribution::empirical(std::move(params), std::move(prov), std::move(counts));
        }
        std::vector<mpq_class> probs(pmf.size(), 0);
        for (const auto& e : pmf) {
            const auto r = e.at("count").get<std::uint64_t>();
            if (r >= probs.size()) throw ValidationError("pmf count out of range");
            mpq_class q(mpz_class(e.at("num").get<std::string>()), mpz_class(e.at("den").get<std::string>()));
            q.canonicalize();
            probs[r] = q;
        }
        return ZeroCountDistribution::exact(std::move(params), std::move(prov), std::move(probs));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed distribution JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("malformed rational in distribution JSON: ") + e.what());
    }
}

Json to_json(const GofReport& report) {
    Json bins = Json::array();
    for (const auto& b : report.bins) {
        bins.push_back(Json{{"lo", b.lo}, {"hi", b.hi}, {"observed", b.observed}, {"expected", b.expected}});
    }
    return Json{{"statistic", report.statistic},
                {"dof", report.dof},
                {"p_value", report.p_value},
                {"bins", std::move(bins)}};
}

Json to_json(const FiltrationEstimate& estimate) {
    Json steps = Json::array();
    for (const auto& s : estimate.per_t) {
        Json step;
        step["t"] = s.t;
        step["rank"] = s.rank;
        step["extends_ring"] = s.extends_ring;
        step["contains_functions"] = s.contains_functions ? Json(*s.contains_functions) : Json(nullptr);
        step["vanishing_probability"] = rational_json(s.vanishing_probability);
        step["tv_to_previous"] = s.tv_to_previous ? rational_json(*s.tv_to_previous) : Json(nullptr);
        step["distribution"] = to_json(s.dist);
        steps.push_back(std::move(step));
    }
    Json j;
    j["tol"] = estimate.tol;
    j["converged"] = estimate.converged;
    j["budget_stop"] = estimate.budget_stop ? Json(*estimate.budget_stop) : Json(nullptr);
    j["per_t"] = std::move(steps);
    return j;
}

Json to_json(std::span<const PoissonRow> rows) {
    Json out = Json::array();
    for (const auto& r : rows) {
        out.push_back(Json{{"q", r.q},
                           {"n", r.n},
                           {"tv", r.tv},
                           {"p_zero", r.p_zero},
                           {"poisson_p_zero", poisson_pmf(1.0, 0)},
                           {"truncation", r.truncation},
                           {"tail_bound", r.tail_bound}});
    }
    return out;
}

std::string to_csv(const ZeroCountDistribution& dist) {
    std::string out = "count,probability\n";
    for (std::uint64_t r = 0; r <= dist.max_count(); ++r) {
        out += std::to_string(r) + "," + format_double(dist.probability(r)) + "\n";
    }
    return out;
}

std::string to_table(const ZeroCountDistribution& dist) {
    std::ostringstream out;
    const auto& p = dist.params();
    out << "ring " << p.ring << "  space " << p.space << "  n=" << p.n << "  m=" << p.m << "\n";
    out << "provenance " << dist.provenance().to_string() << "\n";
    out << std::left << std::setw(8) << "count" << std::setw(24) << "probability" << "exact\n";
    for (std::uint64_t r = 0; r <= dist.max_count(); ++r) {
        out << std::left << std::setw(8) << r << std::setw(24) << format_double(dist.probability(r));
        out << (dist.is_exact() ? dist.exact_probs()[r].get_str() : std::string("-")) << "\n";
    }
    out << "mean " << mean_to_string(expectation(dist)) << "\n";
    return out.str();
}

}  // namespace zerolab
