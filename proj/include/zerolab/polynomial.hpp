#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zerolab/ring.hpp"

namespace zerolab {

/// Exponent vector of length n.
class Monomial {
public:
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

    std::size_t nvars() const { return exps_.size(); }
    std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
    std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
    const std::vector<std::uint32_t>& exponents() const { return exps_; }

    std::uint64_t total_degree() const;
    std::uint32_t max_exponent() const;
    bool is_constant() const { return total_degree() == 0; }

    /// `x1^3*x2`, or `1` for the constant monomial.
    std::string to_string() const;

    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<std::uint32_t> exps_;
};

/// Graded lexicographic order: total degree first, then exponent vectors
/// compared from x1 up. With n = 2 the order starts 1, x2, x1, x2^2, ...
struct GradedLex {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Degree of a polynomial; the zero polynomial has degree -infinity.
class Degree {
public:
    static Degree minus_infinity() { return Degree(); }
    static Degree of(std::uint64_t d) { return Degree(d); }

    bool is_minus_infinity() const { return minus_inf_; }
    /// Finite value; throws for -infinity.
    std::uint64_t value() const;
    std::string to_string() const { return minus_inf_ ? "-inf" : std::to_string(value_); }

    friend bool operator==(const Degree&, const Degree&) = default;
    friend std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
        if (a.minus_inf_ || b.minus_inf_) return b.minus_inf_ <=> a.minus_inf_;
        return a.value_ <=> b.value_;
    }

private:
    Degree() = default;
    explicit Degree(std::uint64_t v) : minus_inf_(false), value_(v) {}
    bool minus_inf_ = true;
    std::uint64_t value_ = 0;
};

/// A point of R^n.
class Point {
public:
    Point(RingSpec ring, std::vector<ElementIndex> coords);
    explicit Point(const std::vector<RingElement>& coords);

    const RingSpec& ring() const { return ring_; }
    std::size_t size() const { return coords_.size(); }
    RingElement operator[](std::size_t i) const { return RingElement(ring_, coords_[i]); }
    std::span<const ElementIndex> indices() const { return coords_; }
    std::vector<RingElement> coords() const;
    std::string to_string() const;

    friend bool operator==(const Point& a, const Point& b) { return a.ring_ == b.ring_ && a.coords_ == b.coords_; }

private:
    RingSpec ring_;
    std::vector<ElementIndex> coords_;
};

/// Number of points |R|^n; throws ValidationError above 2^64.
std::uint64_t point_count(const RingSpec& ring, std::size_t nvars);
/// Point with the given mixed-radix index; coordinate x1 varies fastest.
Point point_at(const RingSpec& ring, std::size_t nvars, std::uint64_t index);
std::vector<Point> enumerate_points(const RingSpec& ring, std::size_t nvars);

/// Sparse polynomial in x1..xn over a RingSpec. No stored coefficient is
/// zero; terms are kept in GradedLex order.
class Polynomial {
public:
    using Terms = std::map<Monomial, ElementIndex, GradedLex>;

    /// The zero polynomial.
    Polynomial(RingSpec ring, std::size_t nvars);

    static Polynomial constant(const RingElement& c, std::size_t nvars);
    static Polynomial monomial(const RingSpec& ring, const Monomial& m);
    static Polynomial variable(const RingSpec& ring, std::size_t nvars, std::size_t i);

    /// Grammar: `2*x1^3*x2 + x2 + 1`. Coefficients are integers (mapped
    /// through Z -> R), `[c0,c1,...]` for GF(p^r), `(a,b)` for products.
    /// A bare `x` means x1 when nvars == 1. Errors carry the position.
    static Polynomial parse(const RingSpec& ring, std::size_t nvars, std::string_view text);

    const RingSpec& ring() const { return ring_; }
    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Single term with coefficient 1.
    bool is_monomial() const;
    RingElement coefficient(const Monomial& m) const;

    /// Adds c * m to this polynomial, dropping a zero result.
    void add_term(const Monomial& m, ElementIndex c);

    ElementIndex evaluate(std::span<const ElementIndex> point) const;

    std::string to_string() const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_ && a.ring_ == b.ring_;
    }

private:
    RingSpec ring_;
    std::size_t nvars_;
    Terms terms_;
};

RingElement evaluate(const Polynomial& f, const Point& p);
Polynomial add(const Polynomial& f, const Polynomial& g);
Polynomial sub(const Polynomial& f, const Polynomial& g);
Polynomial neg(const Polynomial& f);
Polynomial scale(const RingElement& c, const Polynomial& f);
Polynomial mul(const Polynomial& f, const Polynomial& g);

inline Polynomial operator+(const Polynomial& f, const Polynomial& g) { return add(f, g); }
inline Polynomial operator-(const Polynomial& f, const Polynomial& g) { return sub(f, g); }
inline Polynomial operator*(const Polynomial& f, const Polynomial& g) { return mul(f, g); }

Degree total_degree(const Polynomial& f);
/// Degree in x_{i+1} (i is 0-based).
Degree per_variable_degree(const Polynomial& f, std::size_t i);

/// Unique representative of per-variable degree <= q-1 modulo
/// (x1^q - x1, ..., xn^q - xn). Throws NotAFieldError off fields.
Polynomial reduce_per_variable(const Polynomial& f);

}  // namespace zerolab
