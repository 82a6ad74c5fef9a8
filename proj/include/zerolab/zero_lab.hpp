#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "zerolab/options.hpp"
#include "zerolab/polynomial.hpp"
#include "zerolab/sample_space.hpp"

namespace zerolab {

/// m >= 1 polynomials over one ring and arity; repetitions allowed.
class PolySystem {
public:
    explicit PolySystem(std::vector<Polynomial> polys);

    const RingSpec& ring() const { return polys_.front().ring(); }
    std::size_t nvars() const { return polys_.front().nvars(); }
    std::size_t size() const { return polys_.size(); }
    const std::vector<Polynomial>& polys() const { return polys_; }

private:
    std::vector<Polynomial> polys_;
};

/// r >= 1 pairwise distinct points of R^n paired with a sample space.
class VanishingQuery {
public:
    VanishingQuery(SampleSpace space, std::vector<Point> points);

    const SampleSpace& space() const { return space_; }
    const std::vector<Point>& points() const { return points_; }

private:
    SampleSpace space_;
    std::vector<Point> points_;
};

/// |{p in R^n : f_i(p) = 0 for all i}| by enumerating R^n.
std::uint64_t count_common_zeros(const PolySystem& system, const RunOptions& options = {});

/// Number of space elements vanishing at every query point.
std::uint64_t vanishing_count(const VanishingQuery& query, const RunOptions& options = {});

/// Probability that a uniform element of the space vanishes at `point`.
mpq_class vanishing_probability(const SampleSpace& space, const Point& point, const RunOptions& options = {});
/// Probability of vanishing at all of `points`; no precondition on the space.
mpq_class vanishing_probability(const SampleSpace& space, std::span<const Point> points,
                                const RunOptions& options = {});

/// Joint vanishing probability over a field for a space that contains
/// functions. Throws PreconditionError otherwise.
mpq_class joint_vanishing_probability(const SampleSpace& space, std::span<const Point> points,
                                      const RunOptions& options = {});

struct FactorizationWitness {
    std::vector<Point> points;
    mpq_class joint;
    mpq_class product_of_marginals;
};

/// First point subset (by size, then lexicographic point indices) whose
/// joint vanishing probability differs from the product of its marginals.
std::optional<FactorizationWitness> find_factorization_failure(const SampleSpace& space,
                                                               const RunOptions& options = {});

}  // namespace zerolab
