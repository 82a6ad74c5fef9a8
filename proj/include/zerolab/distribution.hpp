#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "zerolab/options.hpp"
#include "zerolab/polynomial.hpp"
#include "zerolab/sample_space.hpp"

namespace zerolab {

enum class ProvenanceKind { Exhaustive, MonteCarlo, Theoretical };

struct Provenance {
    ProvenanceKind kind = ProvenanceKind::Exhaustive;
    std::uint64_t samples = 0;  // MonteCarlo
    std::uint64_t seed = 0;     // MonteCarlo
    std::string model;          // Theoretical

    /// `exhaustive`, `monte_carlo(samples=..,seed=..)`, `theoretical(..)`.
    std::string to_string() const;
};

struct DistributionParams {
    std::string ring;
    std::string space;
    std::size_t n = 0;
    std::size_t m = 0;
};

/// Law of the number of common zeros on the support {0, ..., |R|^n}.
/// Exact variants hold rationals summing to exactly 1; Monte Carlo
/// variants hold raw histogram counts.
class ZeroCountDistribution {
public:
    static ZeroCountDistribution exact(DistributionParams params, Provenance provenance,
                                       std::vector<mpq_class> probs);
    static ZeroCountDistribution empirical(DistributionParams params, Provenance provenance,
                                           std::vector<std::uint64_t> counts);

    const DistributionParams& params() const { return params_; }
    const Provenance& provenance() const { return provenance_; }
    bool is_exact() const { return exact_; }
    /// Largest count in the support, |R|^n.
    std::uint64_t max_count() const { return size_ - 1; }

    /// Exact probabilities; throws for Monte Carlo distributions.
    const std::vector<mpq_class>& exact_probs() const;
    /// Histogram; throws for exact distributions.
    const std::vector<std::uint64_t>& counts() const;
    std::uint64_t samples() const { return provenance_.samples; }

    double probability(std::uint64_t r) const;
    std::vector<double> probabilities() const;

private:
    ZeroCountDistribution() = default;
    DistributionParams params_;
    Provenance provenance_;
    bool exact_ = true;
    std::uint64_t size_ = 0;
    std::vector<mpq_class> probs_;
    std::vector<std::uint64_t> counts_;
};

using Mean = std::variant<mpq_class, double>;

/// Enumerates every m-tuple of space elements. Work estimate
/// |R|^(k m) |R|^n is checked against the budget first.
ZeroCountDistribution exact_distribution(const SampleSpace& space, std::size_t m, const RunOptions& options = {});

/// Bin(q^n, q^-m) with exact rational terms.
ZeroCountDistribution theoretical_distribution(std::uint64_t q, std::size_t n, std::size_t m);

/// Empirical law from `samples` iid uniform m-tuples. Samples are drawn in
/// fixed chunks, each with its own (seed, chunk) stream.
ZeroCountDistribution monte_carlo_distribution(const SampleSpace& space, std::size_t m, std::uint64_t samples,
                                               std::uint64_t seed, const RunOptions& options = {});

Mean expectation(const ZeroCountDistribution& dist);
double mean_value(const Mean& mean);
std::string mean_to_string(const Mean& mean);

/// Half the L1 distance over the union of supports.
double tv_distance(const ZeroCountDistribution& a, const ZeroCountDistribution& b);
/// Exact TV distance between two exact distributions.
mpq_class tv_distance_exact(const ZeroCountDistribution& a, const ZeroCountDistribution& b);

/// First count r where two exact pmfs differ, if any.
std::optional<std::uint64_t> first_difference(const ZeroCountDistribution& a, const ZeroCountDistribution& b);

struct GofBin {
    std::uint64_t lo = 0;  // inclusive count range
    std::uint64_t hi = 0;
    double observed = 0;
    double expected = 0;
};

struct GofReport {
    double statistic = 0;
    std::size_t dof = 0;
    double p_value = 1;
    std::vector<GofBin> bins;

    bool rejects(double alpha) const { return p_value < alpha; }
};

inline constexpr double kDefaultRejectLevel = 1e-3;

/// Pearson chi-square of a Monte Carlo histogram against a model pmf.
/// Adjacent count bins are merged until every expected count is >= 5.
GofReport gof_test(const ZeroCountDistribution& empirical, const ZeroCountDistribution& model);

struct FiltrationStep {
    std::uint32_t t = 0;
    std::size_t rank = 0;
    ZeroCountDistribution dist;
    bool extends_ring = false;
    /// Only decided over fields within budget.
    std::optional<bool> contains_functions;
    /// Probability that one uniform element of M_t vanishes at the event point.
    mpq_class vanishing_probability;
    /// Exact TV distance to the previous truncation's pmf.
    std::optional<mpq_class> tv_to_previous;
};

struct FiltrationEstimate {
    std::vector<FiltrationStep> per_t;
    bool converged = false;
    double tol = 0;
    /// Set when some truncation exceeded the budget; per_t holds the prefix.
    std::optional<std::string> budget_stop;
};

struct DensityOptions {
    double tol = 1e-9;
    std::uint32_t t_min = 1;
    /// Stop at the first truncation whose pmf is within tol of the last one.
    bool stop_on_convergence = true;
    /// Event point for the per-t vanishing probability; origin by default.
    std::optional<Point> event_point;
};

/// Exact distributions along the truncations M_t. Successive pmfs count as
/// converged when their TV distance is < tol, or exactly 0.
FiltrationEstimate density_estimate(const Filtration& filtration, std::size_t m, const DensityOptions& density,
                                    const RunOptions& options = {});

double poisson_pmf(double lambda, std::uint64_t k);

struct PoissonRow {
    std::uint64_t q = 0;
    std::size_t n = 0;
    double tv = 0;
    double p_zero = 0;        // Bin(q^n, q^-n) at 0
    double tail_bound = 0;    // Poisson mass beyond the truncation index
    std::uint64_t truncation = 0;
};

inline constexpr double kPoissonTailTolerance = 1e-12;

/// TV(Bin(q^n, q^-n), Poisson(1)) for each q.
std::vector<PoissonRow> poisson_limit_report(std::size_t n, std::span<const std::uint64_t> q_list);

}  // namespace zerolab
