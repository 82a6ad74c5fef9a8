#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "zerolab/options.hpp"
#include "zerolab/polynomial.hpp"
#include "zerolab/random.hpp"
#include "zerolab/ring.hpp"

namespace zerolab {

/// Free module (vector space over fields) spanned by an ordered basis of
/// polynomials. Elements are addressed by mixed-radix coefficient index:
/// the coefficient of basis[0] varies fastest.
class SampleSpace {
public:
    /// Validates the basis: distinct and nonzero; over non-fields every
    /// element must be a monomial; over fields the basis must be linearly
    /// independent.
    SampleSpace(RingSpec ring, std::size_t nvars, std::vector<Polynomial> basis, std::string id);

    /// Spec strings: `total:d=2`, `pervar:d=1`, `custom:file=basis.txt`,
    /// `custom:basis=1,x` (comma separated polynomials).
    static SampleSpace parse(const RingSpec& ring, std::size_t nvars, std::string_view spec);

    const RingSpec& ring() const { return ring_; }
    std::size_t nvars() const { return nvars_; }
    const std::vector<Polynomial>& basis() const { return basis_; }
    std::size_t rank() const { return basis_.size(); }
    const std::string& id() const { return id_; }
    bool monomial_basis() const { return monomial_basis_; }

    /// |R|^rank.
    mpz_class cardinality() const;
    /// Mixed-radix digits of `index`; requires index < cardinality().
    std::vector<ElementIndex> coefficients_at(std::uint64_t index) const;
    Polynomial combine(std::span<const ElementIndex> coeffs) const;
    Polynomial at(std::uint64_t index) const { return combine(coefficients_at(index)); }

    /// This basis is a prefix of `other`'s (same ring and arity).
    bool is_prefix_of(const SampleSpace& other) const;

private:
    RingSpec ring_;
    std::size_t nvars_;
    std::vector<Polynomial> basis_;
    std::string id_;
    bool monomial_basis_ = true;
};

SampleSpace make_total_degree_space(const RingSpec& ring, std::size_t nvars, std::uint32_t d);
SampleSpace make_per_variable_degree_space(const RingSpec& ring, std::size_t nvars, std::uint32_t d);
SampleSpace make_custom_space(const RingSpec& ring, std::size_t nvars, std::vector<Polynomial> basis);

/// Values of basis polynomials at a fixed list of points, with precomputed
/// scalar multiples, for enumerating value vectors of all space elements.
class SpaceEvaluator {
public:
    SpaceEvaluator(const SampleSpace& space, std::span<const Point> points);
    /// Evaluator over every point of R^n in point_at() order.
    static SpaceEvaluator all_points(const SampleSpace& space);

    std::size_t point_count() const { return points_; }
    std::size_t rank() const { return rank_; }
    const RingSpec& ring() const { return ring_; }
    /// basis_j(point_i)
    ElementIndex basis_value(std::size_t point, std::size_t j) const { return table_[point * rank_ + j]; }
    /// c * basis_j(point_i)
    ElementIndex scaled(std::size_t j, ElementIndex c, std::size_t point) const {
        return scaled_[(j * ring_.order() + c) * points_ + point];
    }

    /// Value of sum_j coeffs[j] * basis_j at `point`.
    ElementIndex value_at(std::span<const ElementIndex> coeffs, std::size_t point) const;

    /// Calls fn(index, values) for every space element with mixed-radix
    /// index in [lo, hi); `values` holds the element's value at each point.
    void for_each_values(std::uint64_t lo, std::uint64_t hi,
                         const std::function<void(std::uint64_t, std::span<const ElementIndex>)>& fn) const;

private:
    RingSpec ring_;
    std::size_t points_;
    std::size_t rank_;
    std::vector<ElementIndex> table_;
    std::vector<ElementIndex> scaled_;
};

/// Rank of a matrix over a field by Gaussian elimination.
std::size_t field_rank(const RingSpec& field, std::vector<std::vector<ElementIndex>> rows);

/// 1_R lies in the span and the space is strictly larger than R.
bool extends_ring(const SampleSpace& space, const RunOptions& options = {});
/// Evaluation matrix over all of F_q^n has full row rank q^n.
bool contains_functions(const SampleSpace& space, const RunOptions& options = {});
/// Number of distinct functions R^n -> R induced by the space's elements.
std::uint64_t function_coverage_count(const SampleSpace& space, const RunOptions& options = {});

Polynomial sample_uniform(const SampleSpace& space, Rng& rng);
std::vector<Polynomial> enumerate_all(const SampleSpace& space, const RunOptions& options = {});
std::vector<Polynomial> enumerate_range(const SampleSpace& space, std::uint64_t lo, std::uint64_t hi);

/// Infinite monomial-spanned module truncated by total degree. The basis
/// of each truncation is a prefix of the next one.
class Filtration {
public:
    using MonomialFilter = std::function<bool(const Monomial&)>;

    /// The whole polynomial ring R[x1..xn].
    static Filtration full(const RingSpec& ring, std::size_t nvars, std::uint32_t t_max);
    /// Span of the monomials accepted by `filter`.
    Filtration(RingSpec ring, std::size_t nvars, std::string family, MonomialFilter filter, std::uint32_t t_max);

    const RingSpec& ring() const { return ring_; }
    std::size_t nvars() const { return nvars_; }
    const std::string& family() const { return family_; }
    std::uint32_t t_max() const { return t_max_; }
    /// M_t: accepted monomials of total degree <= t.
    SampleSpace at(std::uint32_t t) const;

private:
    RingSpec ring_;
    std::size_t nvars_;
    std::string family_;
    MonomialFilter filter_;
    std::uint32_t t_max_;
};

}  // namespace zerolab
