#include "zerolab/zero_lab.hpp"

#include <algorithm>
#include <bit>

#include "zerolab/detail/parallel.hpp"
#include "zerolab/errors.hpp"

namespace zerolab {

namespace {
constexpr std::uint64_t kChunk = 4096;

std::uint64_t chunk_count(std::uint64_t total) { return (total + kChunk - 1) / kChunk; }
}  // namespace

PolySystem::PolySystem(std::vector<Polynomial> polys) : polys_(std::move(polys)) {
    if (polys_.empty()) throw ValidationError("a polynomial system needs at least one polynomial");
    for (const auto& f : polys_) {
        if (f.ring() != polys_.front().ring()) throw MismatchedRingError("system polynomials use different rings");
        if (f.nvars() != polys_.front().nvars()) throw ValidationError("system polynomials have different arities");
    }
}

VanishingQuery::VanishingQuery(SampleSpace space, std::vector<Point> points)
    : space_(std::move(space)), points_(std::move(points)) {
    if (points_.empty()) throw ValidationError("a vanishing query needs at least one point");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].ring() != space_.ring()) throw MismatchedRingError("query point has the wrong ring");
        if (points_[i].size() != space_.nvars()) throw ValidationError("query point has the wrong arity");
        for (std::size_t j = 0; j < i; ++j) {
            if (points_[j] == points_[i]) throw ValidationError("query points must be distinct");
        }
    }
}

std::uint64_t count_common_zeros(const PolySystem& system, const RunOptions& options) {
    const RingSpec& ring = system.ring();
    const mpz_class work = ipow(ring.order(), system.nvars()) * system.size();
    require_budget(work, options.budget, "common-zero count");
    const std::uint64_t total = point_count(ring, system.nvars());
    const std::uint64_t chunks = chunk_count(total);
    std::vector<std::uint64_t> partial(chunks, 0);
    detail::parallel_chunks(chunks, resolve_workers(options.workers), [&](std::size_t c) {
        const std::uint64_t hi = std::min(total, (c + 1) * kChunk);
        for (std::uint64_t idx = c * kChunk; idx < hi; ++idx) {
            const Point p = point_at(ring, system.nvars(), idx);
            const bool common = std::all_of(system.polys().begin(), system.polys().end(),
                                            [&](const Polynomial& f) { return f.evaluate(p.indices()) == 0; });
            if (common) ++partial[c];
        }
    });
    std::uint64_t sum = 0;
    for (auto v : partial) sum += v;
    return sum;
}

std::uint64_t vanishing_count(const VanishingQuery& query, const RunOptions& options) {
    const SampleSpace& space = query.space();
    require_budget(space.cardinality() * query.points().size(), options.budget,
                   "vanishing count over " + space.id());
    const SpaceEvaluator eval(space, query.points());
    const std::uint64_t total = to_u64(space.cardinality());
    const std::uint64_t chunks = chunk_count(total);
    std::vector<std::uint64_t> partial(chunks, 0);
    detail::parallel_chunks(chunks, resolve_workers(options.workers), [&](std::size_t c) {
        const std::uint64_t hi = std::min(total, (c + 1) * kChunk);
        eval.for_each_values(c * kChunk, hi, [&](std::uint64_t, std::span<const ElementIndex> values) {
            if (std::all_of(values.begin(), values.end(), [](ElementIndex v) { return v == 0; })) ++partial[c];
        });
    });
    std::uint64_t sum = 0;
    for (auto v : partial) sum += v;
    return sum;
}

mpq_class vanishing_probability(const SampleSpace& space, const Point& point, const RunOptions& options) {
    return vanishing_probability(space, std::span<const Point>(&point, 1), options);
}

mpq_class vanishing_probability(const SampleSpace& space, std::span<const Point> points, const RunOptions& options) {
    const VanishingQuery query(space, std::vector<Point>(points.begin(), points.end()));
    mpq_class p(mpz_class(std::to_string(vanishing_count(query, options))), space.cardinality());
    p.canonicalize();
    return p;
}

mpq_class joint_vanishing_probability(const SampleSpace& space, std::span<const Point> points,
                                      const RunOptions& options) {
    if (!space.ring().is_field()) {
        throw PreconditionError("joint vanishing probability needs a field, got " + space.ring().to_string());
    }
    if (!contains_functions(space, options)) {
        throw PreconditionError("space " + space.id() + " does not contain functions");
    }
    return vanishing_probability(space, points, options);
}

std::optional<FactorizationWitness> find_factorization_failure(const SampleSpace& space, const RunOptions& options) {
    const RingSpec& ring = space.ring();
    const std::uint64_t npoints = point_count(ring, space.nvars());
    if (npoints > 20) throw ValidationError("factorization search supports at most 20 points");
    const mpz_class subsets = mpz_class(1) << static_cast<mp_bitcnt_t>(npoints);
    require_budget(space.cardinality() * npoints + subsets * space.cardinality(), options.budget,
                   "factorization search over " + space.id());

    // Zero set of every space element as a bitmask over R^n.
    const SpaceEvaluator eval = SpaceEvaluator::all_points(space);
    const std::uint64_t total = to_u64(space.cardinality());
    std::vector<std::uint32_t> zero_masks;
    zero_masks.reserve(total);
    eval.for_each_values(0, total, [&](std::uint64_t, std::span<const ElementIndex> values) {
        std::uint32_t mask = 0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] == 0) mask |= std::uint32_t{1} << i;
        }
        zero_masks.push_back(mask);
    });
    auto probability = [&](std::uint32_t set) {
        const auto hits = std::count_if(zero_masks.begin(), zero_masks.end(),
                                        [&](std::uint32_t z) { return (z & set) == set; });
        mpq_class p(mpz_class(std::to_string(hits)), space.cardinality());
        p.canonicalize();
        return p;
    };
    std::vector<mpq_class> marginal(npoints);
    for (std::uint64_t i = 0; i < npoints; ++i) marginal[i] = probability(std::uint32_t{1} << i);

    std::vector<std::uint32_t> order;
    for (std::uint32_t set = 1; set < (std::uint32_t{1} << npoints); ++set) {
        if (std::popcount(set) >= 2) order.push_back(set);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
    for (std::uint32_t set : order) {
        mpq_class product = 1;
        std::vector<Point> pts;
        for (std::uint64_t i = 0; i < npoints; ++i) {
            if (set & (std::uint32_t{1} << i)) {
                product *= marginal[i];
                pts.push_back(point_at(ring, space.nvars(), i));
            }
        }
        const mpq_class joint = probability(set);
        if (joint != product) return FactorizationWitness{std::move(pts), joint, product};
    }
    return std::nullopt;
}

}  // namespace zerolab
