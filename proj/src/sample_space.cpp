#include "zerolab/sample_space.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "zerolab/errors.hpp"

namespace zerolab {

namespace {

// Every exponent vector of length n with total degree <= t (and each
// exponent <= cap), sorted in GradedLex order.
std::vector<Monomial> monomials_up_to(std::size_t nvars, std::uint64_t t, std::uint32_t cap) {
    std::vector<Monomial> out;
    Monomial m(nvars);
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t var, std::uint64_t left) {
        if (var == nvars) {
            out.push_back(m);
            return;
        }
        const std::uint64_t top = std::min<std::uint64_t>(left, cap);
        for (std::uint64_t e = 0; e <= top; ++e) {
            m[var] = static_cast<std::uint32_t>(e);
            rec(var + 1, left - e);
        }
        m[var] = 0;
    };
    rec(0, t);
    std::sort(out.begin(), out.end(), GradedLex{});
    return out;
}

std::vector<Polynomial> monomial_basis(const RingSpec& ring, const std::vector<Monomial>& monomials) {
    std::vector<Polynomial> basis;
    basis.reserve(monomials.size());
    for (const auto& m : monomials) basis.push_back(Polynomial::monomial(ring, m));
    return basis;
}

// Splits on commas outside brackets so `[0,1]*x, (1,0)` stays intact.
std::vector<std::string> split_top_level(std::string_view text) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : text) {
        if (ch == '[' || ch == '(') ++depth;
        if (ch == ']' || ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::uint32_t parse_degree(std::string_view spec, std::size_t at) {
    const std::string_view digits = spec.substr(at);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw ParseError(std::string(spec), at, "a nonnegative integer degree");
    }
    if (digits.size() > 9) throw ParseError(std::string(spec), at, "a degree below 10^9");
    return static_cast<std::uint32_t>(std::stoul(std::string(digits)));
}

}  // namespace

// ---------------------------------------------------------------------------
// SampleSpace

SampleSpace::SampleSpace(RingSpec ring, std::size_t nvars, std::vector<Polynomial> basis, std::string id)
    : ring_(std::move(ring)), nvars_(nvars), basis_(std::move(basis)), id_(std::move(id)) {
    if (nvars_ == 0) throw ValidationError("a sample space needs at least one variable");
    if (basis_.empty()) throw ValidationError("a sample space needs a nonempty basis");
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const auto& b = basis_[i];
        if (b.ring() != ring_) throw MismatchedRingError("basis polynomial " + b.to_string() + " has the wrong ring");
        if (b.nvars() != nvars_) throw ValidationError("basis polynomial " + b.to_string() + " has the wrong arity");
        if (b.is_zero()) throw ValidationError("basis contains the zero polynomial");
        for (std::size_t j = 0; j < i; ++j) {
            if (basis_[j] == b) throw ValidationError("basis contains " + b.to_string() + " twice");
        }
        monomial_basis_ = monomial_basis_ && b.is_monomial();
    }
    if (monomial_basis_) return;
    if (!ring_.is_field()) {
        throw ValidationError("over the non-field " + ring_.to_string() + " a custom basis must consist of monomials");
    }
    // Over a field: the coefficient matrix must have rank k.
    std::set<Monomial, GradedLex> support;
    for (const auto& b : basis_) {
        for (const auto& [m, c] : b.terms()) support.insert(m);
    }
    std::vector<std::vector<ElementIndex>> rows;
    for (const auto& b : basis_) {
        std::vector<ElementIndex> row;
        row.reserve(support.size());
        for (const auto& m : support) row.push_back(b.coefficient(m).index());
        rows.push_back(std::move(row));
    }
    if (field_rank(ring_, std::move(rows)) != basis_.size()) {
        throw ValidationError("basis polynomials are linearly dependent over " + ring_.to_string());
    }
}

SampleSpace SampleSpace::parse(const RingSpec& ring, std::size_t nvars, std::string_view spec) {
    const std::string text(spec);
    if (spec.starts_with("total:d=")) return make_total_degree_space(ring, nvars, parse_degree(spec, 8));
    if (spec.starts_with("pervar:d=")) return make_per_variable_degree_space(ring, nvars, parse_degree(spec, 9));

    std::vector<std::string> sources;
    if (spec.starts_with("custom:basis=")) {
        sources = split_top_level(spec.substr(13));
    } else if (spec.starts_with("custom:file=")) {
        const std::string path(spec.substr(12));
        std::ifstream in(path);
        if (!in) throw ValidationError("cannot read basis file " + path);
        std::string line;
        while (std::getline(in, line)) {
            if (blank(line) || line.front() == '#') continue;
            sources.push_back(line);
        }
    } else {
        throw ParseError(text, 0, "'total:d=<d>', 'pervar:d=<d>', 'custom:basis=<polys>' or 'custom:file=<path>'");
    }
    std::vector<Polynomial> basis;
    for (const auto& s : sources) {
        if (blank(s)) throw ParseError(text, text.size(), "a nonempty basis polynomial");
        basis.push_back(Polynomial::parse(ring, nvars, s));
    }
    return SampleSpace(ring, nvars, std::move(basis), text);
}

mpz_class SampleSpace::cardinality() const { return ipow(ring_.order(), rank()); }

std::vector<ElementIndex> SampleSpace::coefficients_at(std::uint64_t index) const {
    std::vector<ElementIndex> coeffs(rank());
    for (auto& c : coeffs) {
        c = index % ring_.order();
        index /= ring_.order();
    }
    if (index != 0) throw ValidationError("polynomial index out of range for space " + id_);
    return coeffs;
}

Polynomial SampleSpace::combine(std::span<const ElementIndex> coeffs) const {
    if (coeffs.size() != rank()) throw ValidationError("coefficient count does not match the space rank");
    Polynomial out(ring_, nvars_);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] == 0) continue;
        for (const auto& [m, c] : basis_[j].terms()) out.add_term(m, ring_.mul(coeffs[j], c));
    }
    return out;
}

bool SampleSpace::is_prefix_of(const SampleSpace& other) const {
    if (ring_ != other.ring_ || nvars_ != other.nvars_ || rank() > other.rank()) return false;
    return std::equal(basis_.begin(), basis_.end(), other.basis_.begin());
}

SampleSpace make_total_degree_space(const RingSpec& ring, std::size_t nvars, std::uint32_t d) {
    return SampleSpace(ring, nvars, monomial_basis(ring, monomials_up_to(nvars, d, d)),
                       "total:d=" + std::to_string(d));
}

SampleSpace make_per_variable_degree_space(const RingSpec& ring, std::size_t nvars, std::uint32_t d) {
    return SampleSpace(ring, nvars, monomial_basis(ring, monomials_up_to(nvars, std::uint64_t{d} * nvars, d)),
                       "pervar:d=" + std::to_string(d));
}

SampleSpace make_custom_space(const RingSpec& ring, std::size_t nvars, std::vector<Polynomial> basis) {
    std::string id = "custom:basis=";
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (i) id += ',';
        id += basis[i].to_string();
    }
    return SampleSpace(ring, nvars, std::move(basis), id);
}

// ---------------------------------------------------------------------------
// SpaceEvaluator

SpaceEvaluator::SpaceEvaluator(const SampleSpace& space, std::span<const Point> points)
    : ring_(space.ring()), points_(points.size()), rank_(space.rank()) {
    table_.resize(points_ * rank_);
    for (std::size_t i = 0; i < points_; ++i) {
        if (points[i].ring() != ring_) throw MismatchedRingError("point belongs to a different ring");
        for (std::size_t j = 0; j < rank_; ++j) table_[i * rank_ + j] = space.basis()[j].evaluate(points[i].indices());
    }
    const std::uint64_t q = ring_.order();
    scaled_.resize(rank_ * q * points_);
    for (std::size_t j = 0; j < rank_; ++j) {
        for (ElementIndex c = 0; c < q; ++c) {
            for (std::size_t i = 0; i < points_; ++i) {
                scaled_[(j * q + c) * points_ + i] = ring_.mul(c, table_[i * rank_ + j]);
            }
        }
    }
}

SpaceEvaluator SpaceEvaluator::all_points(const SampleSpace& space) {
    const auto points = enumerate_points(space.ring(), space.nvars());
    return SpaceEvaluator(space, points);
}

ElementIndex SpaceEvaluator::value_at(std::span<const ElementIndex> coeffs, std::size_t point) const {
    ElementIndex acc = 0;
    for (std::size_t j = 0; j < rank_; ++j) acc = ring_.add(acc, scaled(j, coeffs[j], point));
    return acc;
}

void SpaceEvaluator::for_each_values(
    std::uint64_t lo, std::uint64_t hi,
    const std::function<void(std::uint64_t, std::span<const ElementIndex>)>& fn) const {
    if (lo >= hi) return;
    const std::uint64_t q = ring_.order();
    std::vector<ElementIndex> digits(rank_);
    {
        std::uint64_t v = lo;
        for (auto& d : digits) {
            d = v % q;
            v /= q;
        }
    }
    // suffix[l] = sum_{j >= l} digits[j] * basis_j, one row per level.
    std::vector<ElementIndex> suffix((rank_ + 1) * points_, 0);
    auto refresh = [&](std::size_t top) {
        for (std::size_t l = top + 1; l-- > 0;) {
            const ElementIndex* above = &suffix[(l + 1) * points_];
            const ElementIndex* add = &scaled_[(l * q + digits[l]) * points_];
            ElementIndex* row = &suffix[l * points_];
            for (std::size_t i = 0; i < points_; ++i) row[i] = ring_.add(above[i], add[i]);
        }
    };
    refresh(rank_ - 1);
    for (std::uint64_t idx = lo;;) {
        fn(idx, std::span<const ElementIndex>(suffix.data(), points_));
        if (++idx >= hi) break;
        std::size_t pos = 0;
        while (digits[pos] == q - 1) digits[pos++] = 0;
        ++digits[pos];
        refresh(pos);
    }
}

// ---------------------------------------------------------------------------
// Linear algebra

std::size_t field_rank(const RingSpec& field, std::vector<std::vector<ElementIndex>> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        const auto inv = field.inverse(rows[rank][col]);
        if (!inv) throw NotAFieldError("pivot is not invertible in " + field.to_string());
        for (auto& v : rows[rank]) v = field.mul(v, *inv);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const ElementIndex factor = rows[r][col];
            for (std::size_t c = col; c < cols; ++c) {
                rows[r][c] = field.sub(rows[r][c], field.mul(factor, rows[rank][c]));
            }
        }
        ++rank;
    }
    return rank;
}

// ---------------------------------------------------------------------------
// Predicates

bool extends_ring(const SampleSpace& space, const RunOptions& options) {
    const RingSpec& ring = space.ring();
    const Monomial constant(space.nvars());
    const bool rank_ok = space.rank() >= 2;

    if (space.cardinality() <= mpz_class(std::to_string(options.budget))) {
        // Exhaustive: look for coefficients with sum_j c_j basis_j == 1.
        std::set<Monomial, GradedLex> support;
        for (const auto& b : space.basis()) {
            for (const auto& [m, c] : b.terms()) support.insert(m);
        }
        if (!support.contains(constant)) return false;
        // Rows are support monomials with the constant first; the target
        // value vector is (1, 0, ..., 0).
        std::vector<std::vector<ElementIndex>> rows;
        for (const auto& m : support) {
            std::vector<ElementIndex> row;
            for (const auto& b : space.basis()) row.push_back(b.coefficient(m).index());
            rows.push_back(std::move(row));
        }
        const std::uint64_t q = ring.order();
        const ElementIndex one = ring.one_index();
        const std::uint64_t total = to_u64(space.cardinality());
        std::vector<ElementIndex> coeffs(space.rank(), 0);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            bool hit = true;
            for (std::size_t r = 0; r < rows.size() && hit; ++r) {
                ElementIndex acc = 0;
                for (std::size_t j = 0; j < coeffs.size(); ++j) acc = ring.add(acc, ring.mul(coeffs[j], rows[r][j]));
                hit = acc == (r == 0 ? one : 0);
            }
            if (hit) return rank_ok;
            std::size_t pos = 0;
            while (pos < coeffs.size() && coeffs[pos] == q - 1) coeffs[pos++] = 0;
            if (pos < coeffs.size()) ++coeffs[pos];
        }
        return false;
    }
    if (space.monomial_basis()) {
        const bool has_one = std::any_of(space.basis().begin(), space.basis().end(),
                                         [&](const Polynomial& b) { return b.terms().begin()->first == constant; });
        return has_one && rank_ok;
    }
    require_budget(space.cardinality(), options.budget, "extends-R search over " + space.id());
    return false;
}

bool contains_functions(const SampleSpace& space, const RunOptions& options) {
    const RingSpec& ring = space.ring();
    if (!ring.is_field()) throw NotAFieldError(ring.to_string() + " is not a field");
    const mpz_class points = ipow(ring.order(), space.nvars());
    require_budget(points * space.rank(), options.budget, "evaluation matrix of " + space.id());
    if (points > space.rank()) return false;
    const SpaceEvaluator eval = SpaceEvaluator::all_points(space);
    std::vector<std::vector<ElementIndex>> rows(eval.point_count());
    for (std::size_t i = 0; i < eval.point_count(); ++i) {
        rows[i].resize(eval.rank());
        for (std::size_t j = 0; j < eval.rank(); ++j) rows[i][j] = eval.basis_value(i, j);
    }
    return field_rank(ring, std::move(rows)) == eval.point_count();
}

std::uint64_t function_coverage_count(const SampleSpace& space, const RunOptions& options) {
    const RingSpec& ring = space.ring();
    require_budget(space.cardinality() * ipow(ring.order(), space.nvars()), options.budget,
                   "function coverage of " + space.id());
    const SpaceEvaluator eval = SpaceEvaluator::all_points(space);
    std::set<std::vector<ElementIndex>> seen;
    eval.for_each_values(0, to_u64(space.cardinality()), [&](std::uint64_t, std::span<const ElementIndex> values) {
        seen.emplace(values.begin(), values.end());
    });
    return seen.size();
}

// ---------------------------------------------------------------------------
// Sampling and enumeration

Polynomial sample_uniform(const SampleSpace& space, Rng& rng) {
    std::vector<ElementIndex> coeffs(space.rank());
    for (auto& c : coeffs) c = uniform_below(rng, space.ring().order());
    return space.combine(coeffs);
}

std::vector<Polynomial> enumerate_all(const SampleSpace& space, const RunOptions& options) {
    require_budget(space.cardinality(), options.budget, "enumeration of " + space.id());
    return enumerate_range(space, 0, to_u64(space.cardinality()));
}

std::vector<Polynomial> enumerate_range(const SampleSpace& space, std::uint64_t lo, std::uint64_t hi) {
    if (mpz_class(std::to_string(hi)) > space.cardinality() || lo > hi) {
        throw ValidationError("enumeration range out of bounds for space " + space.id());
    }
    std::vector<Polynomial> out;
    out.reserve(hi - lo);
    for (std::uint64_t i = lo; i < hi; ++i) out.push_back(space.at(i));
    return out;
}

// ---------------------------------------------------------------------------
// Filtration

Filtration::Filtration(RingSpec ring, std::size_t nvars, std::string family, MonomialFilter filter,
                       std::uint32_t t_max)
    : ring_(std::move(ring)), nvars_(nvars), family_(std::move(family)), filter_(std::move(filter)), t_max_(t_max) {
    if (nvars_ == 0) throw ValidationError("a filtration needs at least one variable");
}

Filtration Filtration::full(const RingSpec& ring, std::size_t nvars, std::uint32_t t_max) {
    return Filtration(ring, nvars, "full", [](const Monomial&) { return true; }, t_max);
}

SampleSpace Filtration::at(std::uint32_t t) const {
    if (t > t_max_) {
        throw ValidationError("truncation t=" + std::to_string(t) + " exceeds t_max=" + std::to_string(t_max_));
    }
    std::vector<Monomial> kept;
    for (auto& m : monomials_up_to(nvars_, t, t)) {
        if (filter_(m)) kept.push_back(std::move(m));
    }
    if (kept.empty()) throw ValidationError("truncation t=" + std::to_string(t) + " of " + family_ + " is empty");
    return SampleSpace(ring_, nvars_, monomial_basis(ring_, kept), family_ + ":t=" + std::to_string(t));
}

}  // namespace zerolab
