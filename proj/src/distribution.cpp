#include "zerolab/distribution.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "zerolab/detail/parallel.hpp"
#include "zerolab/errors.hpp"
#include "zerolab/random.hpp"
#include "zerolab/zero_lab.hpp"

namespace zerolab {

namespace {

constexpr std::uint64_t kPolyChunk = 1024;
constexpr std::uint64_t kSampleChunk = 1024;
constexpr std::uint64_t kMaxTheorySupport = 65536;

mpq_class ratio(const mpz_class& num, const mpz_class& den) {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

mpz_class mpz_of(std::uint64_t v) { return mpz_class(std::to_string(v)); }

DistributionParams space_params(const SampleSpace& space, std::size_t m) {
    return {space.ring().to_string(), space.id(), space.nvars(), m};
}

using Bits = std::vector<std::uint64_t>;

}  // namespace

// ---------------------------------------------------------------------------
// ZeroCountDistribution

std::string Provenance::to_string() const {
    switch (kind) {
        case ProvenanceKind::Exhaustive: return "exhaustive";
        case ProvenanceKind::MonteCarlo:
            return "monte_carlo(samples=" + std::to_string(samples) + ",seed=" + std::to_string(seed) + ")";
        case ProvenanceKind::Theoretical: return "theoretical(" + model + ")";
    }
    return {};
}

ZeroCountDistribution ZeroCountDistribution::exact(DistributionParams params, Provenance provenance,
                                                   std::vector<mpq_class> probs) {
    if (probs.empty()) throw ValidationError("a distribution needs a nonempty support");
    mpq_class total = 0;
    for (const auto& p : probs) {
        if (p < 0) throw ValidationError("negative probability");
        total += p;
    }
    if (total != 1) throw ValidationError("exact probabilities sum to " + total.get_str() + ", not 1");
    ZeroCountDistribution d;
    d.params_ = std::move(params);
    d.provenance_ = std::move(provenance);
    d.exact_ = true;
    d.size_ = probs.size();
    d.probs_ = std::move(probs);
    return d;
}

ZeroCountDistribution ZeroCountDistribution::empirical(DistributionParams params, Provenance provenance,
                                                       std::vector<std::uint64_t> counts) {
    if (counts.empty()) throw ValidationError("a distribution needs a nonempty support");
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    if (total != provenance.samples || total == 0) throw ValidationError("histogram total does not match samples");
    ZeroCountDistribution d;
    d.params_ = std::move(params);
    d.provenance_ = std::move(provenance);
    d.exact_ = false;
    d.size_ = counts.size();
    d.counts_ = std::move(counts);
    return d;
}

const std::vector<mpq_class>& ZeroCountDistribution::exact_probs() const {
    if (!exact_) throw Error("Monte Carlo distributions have no exact probabilities");
    return probs_;
}

const std::vector<std::uint64_t>& ZeroCountDistribution::counts() const {
    if (exact_) throw Error("exact distributions have no sample histogram");
    return counts_;
}

double ZeroCountDistribution::probability(std::uint64_t r) const {
    if (r >= size_) return 0.0;
    if (exact_) return probs_[r].get_d();
    return static_cast<double>(counts_[r]) / static_cast<double>(provenance_.samples);
}

std::vector<double> ZeroCountDistribution::probabilities() const {
    std::vector<double> out(size_);
    for (std::uint64_t r = 0; r < size_; ++r) out[r] = probability(r);
    return out;
}

// ---------------------------------------------------------------------------
// Exhaustive

ZeroCountDistribution exact_distribution(const SampleSpace& space, std::size_t m, const RunOptions& options) {
    if (m == 0) throw ValidationError("m must be at least 1");
    const RingSpec& ring = space.ring();
    const mpz_class polys = space.cardinality();
    mpz_class tuples;
    mpz_pow_ui(tuples.get_mpz_t(), polys.get_mpz_t(), m);
    const mpz_class npoints_big = ipow(ring.order(), space.nvars());
    require_budget(tuples * npoints_big, options.budget,
                   "exact distribution over " + space.id() + " with m=" + std::to_string(m));

    const unsigned workers = resolve_workers(options.workers);
    const std::uint64_t total = to_u64(polys);
    const std::uint64_t npoints = to_u64(npoints_big);
    const std::size_t words = (npoints + 63) / 64;

    // Zero set of every space element.
    const SpaceEvaluator eval = SpaceEvaluator::all_points(space);
    const std::uint64_t chunks = (total + kPolyChunk - 1) / kPolyChunk;
    std::vector<std::map<Bits, std::uint64_t>> partial(chunks);
    detail::parallel_chunks(chunks, workers, [&](std::size_t c) {
        const std::uint64_t hi = std::min(total, (c + 1) * kPolyChunk);
        Bits bits(words);
        eval.for_each_values(c * kPolyChunk, hi, [&](std::uint64_t, std::span<const ElementIndex> values) {
            std::fill(bits.begin(), bits.end(), 0);
            for (std::size_t i = 0; i < values.size(); ++i) {
                if (values[i] == 0) bits[i / 64] |= std::uint64_t{1} << (i % 64);
            }
            ++partial[c][bits];
        });
    });
    // Elements with identical zero sets are interchangeable; keep one
    // representative per zero set with its multiplicity.
    std::map<Bits, std::uint64_t> merged;
    for (auto& part : partial) {
        for (auto& [bits, mult] : part) merged[bits] += mult;
    }
    std::vector<Bits> sets;
    std::vector<std::uint64_t> mults;
    for (auto& [bits, mult] : merged) {
        sets.push_back(bits);
        mults.push_back(mult);
    }

    // tail_weight[d] = total^(m - d): number of completions of a prefix of length d.
    std::vector<std::uint64_t> tail_weight(m + 1, 1);
    for (std::size_t d = m; d-- > 0;) tail_weight[d] = tail_weight[d + 1] * total;

    const std::size_t groups = sets.size();
    std::vector<std::vector<std::uint64_t>> hist(groups, std::vector<std::uint64_t>(npoints + 1, 0));
    detail::parallel_chunks(groups, workers, [&](std::size_t g) {
        auto& h = hist[g];
        std::vector<Bits> stack(m, Bits(words));
        auto popcount = [&](const Bits& b) {
            std::uint64_t n = 0;
            for (auto w : b) n += static_cast<std::uint64_t>(std::popcount(w));
            return n;
        };
        std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t depth, std::uint64_t weight) {
            const Bits& cur = stack[depth - 1];
            if (depth == m) {
                h[popcount(cur)] += weight;
                return;
            }
            if (std::all_of(cur.begin(), cur.end(), [](std::uint64_t w) { return w == 0; })) {
                h[0] += weight * tail_weight[depth];
                return;
            }
            for (std::size_t next = 0; next < groups; ++next) {
                Bits& dst = stack[depth];
                for (std::size_t w = 0; w < words; ++w) dst[w] = cur[w] & sets[next][w];
                rec(depth + 1, weight * mults[next]);
            }
        };
        stack[0] = sets[g];
        rec(1, mults[g]);
    });

    std::vector<mpq_class> probs(npoints + 1);
    for (std::uint64_t r = 0; r <= npoints; ++r) {
        std::uint64_t count = 0;
        for (std::size_t g = 0; g < groups; ++g) count += hist[g][r];
        probs[r] = ratio(mpz_of(count), tuples);
    }
    return ZeroCountDistribution::exact(space_params(space, m), Provenance{},
                                        std::move(probs));
}

// ---------------------------------------------------------------------------
// Theoretical

ZeroCountDistribution theoretical_distribution(std::uint64_t q, std::size_t n, std::size_t m) {
    if (!prime_power(q)) throw ValidationError(std::to_string(q) + " is not a prime power");
    if (n == 0 || m == 0) throw ValidationError("n and m must be at least 1");
    const mpz_class trials_big = ipow(q, n);
    if (trials_big > mpz_of(kMaxTheorySupport)) {
        throw ValidationError("q^n = " + trials_big.get_str() + " exceeds the exact binomial support limit");
    }
    const std::uint64_t trials = to_u64(trials_big);
    const mpz_class big_q = ipow(q, m);  // success probability 1/big_q
    mpz_class denominator;
    mpz_pow_ui(denominator.get_mpz_t(), big_q.get_mpz_t(), trials);

    // numerator_r = C(N, r) * (Q - 1)^(N - r), walking r downward from N.
    std::vector<mpq_class> probs(trials + 1);
    mpz_class binom = 1;
    mpz_class fail_power = 1;
    const mpz_class fail = big_q - 1;
    for (std::uint64_t r = trials + 1; r-- > 0;) {
        probs[r] = ratio(binom * fail_power, denominator);
        if (r == 0) break;
        binom = binom * mpz_of(r) / mpz_of(trials - r + 1);
        fail_power *= fail;
    }
    std::ostringstream model;
    model << "binomial(N=" << trials << ",p=1/" << big_q.get_str() << ")";
    Provenance prov;
    prov.kind = ProvenanceKind::Theoretical;
    prov.model = model.str();
    return ZeroCountDistribution::exact(
        {"GF(" + std::to_string(q) + ")", "contains-functions", n, m}, std::move(prov), std::move(probs));
}

// ---------------------------------------------------------------------------
// Monte Carlo

ZeroCountDistribution monte_carlo_distribution(const SampleSpace& space, std::size_t m, std::uint64_t samples,
                                               std::uint64_t seed, const RunOptions& options) {
    if (samples == 0) throw ValidationError("samples must be at least 1");
    if (m == 0) throw ValidationError("m must be at least 1");
    const RingSpec& ring = space.ring();
    const mpz_class npoints_big = ipow(ring.order(), space.nvars());
    require_budget(mpz_of(samples) * m * npoints_big, options.budget, "Monte Carlo over " + space.id());
    // The evaluator's scaled-value table holds k * |R| * |R|^n entries.
    require_budget(npoints_big * space.rank() * ring.order(), options.budget, "evaluation table of " + space.id());
    const std::uint64_t npoints = to_u64(npoints_big);
    const SpaceEvaluator eval = SpaceEvaluator::all_points(space);
    const std::size_t k = space.rank();
    const std::uint64_t q = ring.order();

    const std::uint64_t chunks = (samples + kSampleChunk - 1) / kSampleChunk;
    std::vector<std::vector<std::uint64_t>> hist(chunks);
    detail::parallel_chunks(chunks, resolve_workers(options.workers), [&](std::size_t c) {
        auto& h = hist[c];
        h.assign(npoints + 1, 0);
        Rng rng = make_stream(seed, c);
        std::vector<ElementIndex> coeffs(k * m);
        const std::uint64_t n_here = std::min(kSampleChunk, samples - c * kSampleChunk);
        for (std::uint64_t s = 0; s < n_here; ++s) {
            for (auto& v : coeffs) v = uniform_below(rng, q);
            std::uint64_t zeros = 0;
            for (std::uint64_t p = 0; p < npoints; ++p) {
                bool common = true;
                for (std::size_t i = 0; i < m && common; ++i) {
                    common = eval.value_at(std::span<const ElementIndex>(coeffs.data() + i * k, k), p) == 0;
                }
                if (common) ++zeros;
            }
            ++h[zeros];
        }
    });
    std::vector<std::uint64_t> counts(npoints + 1, 0);
    for (const auto& h : hist) {
        for (std::uint64_t r = 0; r <= npoints; ++r) counts[r] += h[r];
    }
    Provenance prov;
    prov.kind = ProvenanceKind::MonteCarlo;
    prov.samples = samples;
    prov.seed = seed;
    return ZeroCountDistribution::empirical(space_params(space, m), std::move(prov), std::move(counts));
}

// ---------------------------------------------------------------------------
// Summaries

Mean expectation(const ZeroCountDistribution& dist) {
    if (dist.is_exact()) {
        mpq_class mean = 0;
        const auto& probs = dist.exact_probs();
        for (std::uint64_t r = 0; r < probs.size(); ++r) mean += probs[r] * mpz_of(r);
        return mean;
    }
    long double sum = 0;
    const auto& counts = dist.counts();
    for (std::uint64_t r = 0; r < counts.size(); ++r) sum += static_cast<long double>(r) * counts[r];
    return static_cast<double>(sum / static_cast<long double>(dist.samples()));
}

double mean_value(const Mean& mean) {
    if (const auto* q = std::get_if<mpq_class>(&mean)) return q->get_d();
    return std::get<double>(mean);
}

std::string mean_to_string(const Mean& mean) {
    if (const auto* q = std::get_if<mpq_class>(&mean)) return q->get_str();
    std::ostringstream out;
    out.precision(17);
    out << std::get<double>(mean);
    return out.str();
}

double tv_distance(const ZeroCountDistribution& a, const ZeroCountDistribution& b) {
    if (a.is_exact() && b.is_exact()) return tv_distance_exact(a, b).get_d();
    const std::uint64_t top = std::max(a.max_count(), b.max_count());
    long double sum = 0;
    for (std::uint64_t r = 0; r <= top; ++r) sum += std::fabs(static_cast<long double>(a.probability(r)) - b.probability(r));
    return static_cast<double>(sum / 2);
}

mpq_class tv_distance_exact(const ZeroCountDistribution& a, const ZeroCountDistribution& b) {
    const auto& pa = a.exact_probs();
    const auto& pb = b.exact_probs();
    const std::size_t top = std::max(pa.size(), pb.size());
    mpq_class sum = 0;
    for (std::size_t r = 0; r < top; ++r) {
        const mpq_class x = r < pa.size() ? pa[r] : mpq_class(0);
        const mpq_class y = r < pb.size() ? pb[r] : mpq_class(0);
        sum += abs(x - y);
    }
    return sum / 2;
}

std::optional<std::uint64_t> first_difference(const ZeroCountDistribution& a, const ZeroCountDistribution& b) {
    const auto& pa = a.exact_probs();
    const auto& pb = b.exact_probs();
    const std::size_t top = std::max(pa.size(), pb.size());
    for (std::size_t r = 0; r < top; ++r) {
        const mpq_class x = r < pa.size() ? pa[r] : mpq_class(0);
        const mpq_class y = r < pb.size() ? pb[r] : mpq_class(0);
        if (x != y) return r;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Goodness of fit

GofReport gof_test(const ZeroCountDistribution& empirical, const ZeroCountDistribution& model) {
    if (empirical.provenance().kind != ProvenanceKind::MonteCarlo) {
        throw PreconditionError("goodness of fit needs a Monte Carlo histogram");
    }
    const double n = static_cast<double>(empirical.samples());
    const std::uint64_t top = std::max(empirical.max_count(), model.max_count());

    GofReport report;
    GofBin open{0, 0, 0, 0};
    bool have_open = false;
    for (std::uint64_t r = 0; r <= top; ++r) {
        if (!have_open) {
            open = GofBin{r, r, 0, 0};
            have_open = true;
        }
        open.hi = r;
        open.observed += r <= empirical.max_count() ? static_cast<double>(empirical.counts()[r]) : 0.0;
        open.expected += n * model.probability(r);
        if (open.expected >= 5.0) {
            report.bins.push_back(open);
            have_open = false;
        }
    }
    if (have_open) {
        if (report.bins.empty()) {
            report.bins.push_back(open);
        } else {
            auto& last = report.bins.back();
            last.hi = open.hi;
            last.observed += open.observed;
            last.expected += open.expected;
        }
    }
    if (report.bins.size() < 2) {
        throw ValidationError("goodness of fit needs at least 2 bins after merging, got " +
                              std::to_string(report.bins.size()));
    }
    for (const auto& b : report.bins) {
        const double diff = b.observed - b.expected;
        report.statistic += diff * diff / b.expected;
    }
    report.dof = report.bins.size() - 1;
    report.p_value = boost::math::gamma_q(static_cast<double>(report.dof) / 2.0, report.statistic / 2.0);
    return report;
}

// ---------------------------------------------------------------------------
// Density along a filtration

FiltrationEstimate density_estimate(const Filtration& filtration, std::size_t m, const DensityOptions& density,
                                    const RunOptions& options) {
    if (density.tol < 0) throw ValidationError("tol must be nonnegative");
    if (density.t_min > filtration.t_max()) throw ValidationError("t_min exceeds t_max");
    const RingSpec& ring = filtration.ring();
    const Point event = density.event_point.value_or(
        Point(ring, std::vector<ElementIndex>(filtration.nvars(), 0)));
    if (event.size() != filtration.nvars() || event.ring() != ring) {
        throw ValidationError("event point does not match the filtration");
    }

    FiltrationEstimate est;
    est.tol = density.tol;
    for (std::uint32_t t = density.t_min; t <= filtration.t_max(); ++t) {
        const SampleSpace space = filtration.at(t);
        std::optional<ZeroCountDistribution> dist;
        mpq_class vanish;
        try {
            dist = exact_distribution(space, m, options);
            vanish = vanishing_probability(space, event, options);
        } catch (const BudgetExceededError& e) {
            est.budget_stop = e.what();
            est.converged = false;
            return est;
        }
        std::optional<bool> contains;
        if (ring.is_field()) {
            try {
                contains = contains_functions(space, options);
            } catch (const BudgetExceededError&) {
            }
        }
        std::optional<mpq_class> tv;
        if (!est.per_t.empty()) tv = tv_distance_exact(est.per_t.back().dist, *dist);
        est.per_t.push_back(FiltrationStep{t, space.rank(), std::move(*dist), extends_ring(space, options), contains,
                                           vanish, tv});
        if (tv) {
            est.converged = *tv == 0 || tv->get_d() < density.tol;
            if (est.converged && density.stop_on_convergence) break;
        }
    }
    return est;
}

// ---------------------------------------------------------------------------
// Poisson limit

double poisson_pmf(double lambda, std::uint64_t k) {
    return std::exp(-lambda + static_cast<double>(k) * std::log(lambda) - std::lgamma(static_cast<double>(k) + 1));
}

std::vector<PoissonRow> poisson_limit_report(std::size_t n, std::span<const std::uint64_t> q_list) {
    if (n == 0) throw ValidationError("n must be at least 1");
    std::vector<PoissonRow> rows;
    for (std::uint64_t q : q_list) {
        if (!prime_power(q)) throw ValidationError(std::to_string(q) + " is not a prime power");
        const mpz_class trials_big = ipow(q, n);
        if (trials_big > mpz_of(100'000'000)) throw ValidationError("q^n too large for the Poisson report");
        const std::uint64_t trials = to_u64(trials_big);
        const long double p = 1.0L / static_cast<long double>(trials);

        // Smallest K with Poisson(1) tail beyond K below the tolerance. For
        // k > K the pmf ratio is 1/(k+1) <= 1/(K+2), so the tail is at most
        // pi(K+1) / (1 - 1/(K+2)).
        std::uint64_t cutoff = 0;
        long double pi_next = std::exp(-1.0L);  // pi(cutoff + 1) once advanced
        long double bound = 0;
        for (;;) {
            pi_next /= static_cast<long double>(cutoff + 1);
            bound = pi_next / (1.0L - 1.0L / static_cast<long double>(cutoff + 2));
            if (bound < kPoissonTailTolerance) break;
            ++cutoff;
        }

        const std::uint64_t top = std::max(trials, cutoff);
        long double binom = std::exp(static_cast<long double>(trials) * std::log1p(-p));
        long double pois = std::exp(-1.0L);
        long double sum = 0;
        const long double odds = p / (1.0L - p);
        PoissonRow row;
        row.q = q;
        row.n = n;
        row.p_zero = static_cast<double>(binom);
        for (std::uint64_t k = 0; k <= top; ++k) {
            const long double b = k <= trials ? binom : 0.0L;
            sum += std::fabs(b - pois);
            if (k < trials) binom *= static_cast<long double>(trials - k) / static_cast<long double>(k + 1) * odds;
            pois /= static_cast<long double>(k + 1);
        }
        row.tv = static_cast<double>(sum / 2);
        row.tail_bound = static_cast<double>(bound);
        row.truncation = cutoff;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace zerolab
