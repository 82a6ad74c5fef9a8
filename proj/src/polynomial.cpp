#include "zerolab/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>

#include "zerolab/errors.hpp"

namespace zerolab {

// ---------------------------------------------------------------------------
// Monomial / Degree

std::uint64_t Monomial::total_degree() const {
    return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
}

std::uint32_t Monomial::max_exponent() const {
    return exps_.empty() ? 0 : *std::max_element(exps_.begin(), exps_.end());
}

std::string Monomial::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += 'x' + std::to_string(i + 1);
        if (exps_[i] != 1) out += '^' + std::to_string(exps_[i]);
    }
    return out.empty() ? "1" : out;
}

bool GradedLex::operator()(const Monomial& a, const Monomial& b) const {
    const std::uint64_t da = a.total_degree();
    const std::uint64_t db = b.total_degree();
    if (da != db) return da < db;
    return a.exponents() < b.exponents();
}

std::uint64_t Degree::value() const {
    if (minus_inf_) throw Error("degree of the zero polynomial is -infinity");
    return value_;
}

// ---------------------------------------------------------------------------
// Points

Point::Point(RingSpec ring, std::vector<ElementIndex> coords) : ring_(std::move(ring)), coords_(std::move(coords)) {
    for (ElementIndex c : coords_) {
        if (c >= ring_.order()) throw ValidationError("point coordinate out of range");
    }
}

namespace {
RingSpec ring_of(const std::vector<RingElement>& coords) {
    if (coords.empty()) throw ValidationError("a point needs at least one coordinate");
    return coords.front().ring();
}
}  // namespace

Point::Point(const std::vector<RingElement>& coords) : ring_(ring_of(coords)) {
    coords_.reserve(coords.size());
    for (const auto& c : coords) {
        if (c.ring() != ring_) throw MismatchedRingError("point coordinates belong to different rings");
        coords_.push_back(c.index());
    }
}

std::vector<RingElement> Point::coords() const {
    std::vector<RingElement> out;
    out.reserve(coords_.size());
    for (ElementIndex c : coords_) out.emplace_back(ring_, c);
    return out;
}

std::string Point::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) out += ", ";
        out += ring_.format(coords_[i]);
    }
    return out + ")";
}

std::uint64_t point_count(const RingSpec& ring, std::size_t nvars) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < nvars; ++i) {
        if (count > std::numeric_limits<std::uint64_t>::max() / ring.order()) {
            throw ValidationError("|R|^n does not fit in 64 bits");
        }
        count *= ring.order();
    }
    return count;
}

Point point_at(const RingSpec& ring, std::size_t nvars, std::uint64_t index) {
    std::vector<ElementIndex> coords(nvars);
    for (std::size_t i = 0; i < nvars; ++i) {
        coords[i] = index % ring.order();
        index /= ring.order();
    }
    return Point(ring, std::move(coords));
}

std::vector<Point> enumerate_points(const RingSpec& ring, std::size_t nvars) {
    const std::uint64_t count = point_count(ring, nvars);
    std::vector<Point> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(point_at(ring, nvars, i));
    return out;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(RingSpec ring, std::size_t nvars) : ring_(std::move(ring)), nvars_(nvars) {
    if (nvars_ == 0) throw ValidationError("polynomials need at least one variable");
}

Polynomial Polynomial::constant(const RingElement& c, std::size_t nvars) {
    Polynomial f(c.ring(), nvars);
    f.add_term(Monomial(nvars), c.index());
    return f;
}

Polynomial Polynomial::monomial(const RingSpec& ring, const Monomial& m) {
    Polynomial f(ring, m.nvars());
    f.add_term(m, ring.one_index());
    return f;
}

Polynomial Polynomial::variable(const RingSpec& ring, std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw ValidationError("variable index out of range");
    Monomial m(nvars);
    m[i] = 1;
    return monomial(ring, m);
}

bool Polynomial::is_monomial() const {
    return terms_.size() == 1 && terms_.begin()->second == ring_.one_index();
}

RingElement Polynomial::coefficient(const Monomial& m) const {
    const auto it = terms_.find(m);
    return RingElement(ring_, it == terms_.end() ? 0 : it->second);
}

void Polynomial::add_term(const Monomial& m, ElementIndex c) {
    if (m.nvars() != nvars_) throw ValidationError("monomial arity does not match the polynomial");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second = ring_.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
}

ElementIndex Polynomial::evaluate(std::span<const ElementIndex> point) const {
    if (point.size() != nvars_) throw ValidationError("point arity does not match the polynomial");
    ElementIndex acc = 0;
    for (const auto& [m, c] : terms_) {
        ElementIndex term = c;
        for (std::size_t i = 0; i < nvars_ && term != 0; ++i) {
            if (m[i] != 0) term = ring_.mul(term, ring_.pow(point[i], m[i]));
        }
        acc = ring_.add(acc, term);
    }
    return acc;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    const ElementIndex one = ring_.one_index();
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        if (!out.empty()) out += " + ";
        if (m.is_constant()) {
            out += ring_.format(c);
        } else if (c == one) {
            out += m.to_string();
        } else {
            out += ring_.format(c) + "*" + m.to_string();
        }
    }
    return out;
}

namespace {

class PolynomialParser {
public:
    PolynomialParser(const RingSpec& ring, std::size_t nvars, std::string_view text)
        : ring_(ring), nvars_(nvars), text_(text) {}

    Polynomial parse() {
        Polynomial f(ring_, nvars_);
        skip_ws();
        bool negate = consume('-');
        for (;;) {
            auto [m, c] = term();
            f.add_term(m, negate ? ring_.neg(c) : c);
            skip_ws();
            if (pos_ == text_.size()) break;
            if (consume('+')) {
                negate = false;
            } else if (consume('-')) {
                negate = true;
            } else {
                fail("'+', '-', '*' or end of input");
            }
        }
        return f;
    }

private:
    std::pair<Monomial, ElementIndex> term() {
        Monomial m(nvars_);
        ElementIndex c = ring_.one_index();
        for (;;) {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == 'x') {
                const std::size_t at = pos_;
                ++pos_;
                std::size_t var = 0;
                if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    const std::uint64_t v = integer();
                    if (v < 1 || v > nvars_) {
                        pos_ = at;
                        fail("a variable x1..x" + std::to_string(nvars_));
                    }
                    var = static_cast<std::size_t>(v - 1);
                } else if (nvars_ != 1) {
                    fail("a variable index 1.." + std::to_string(nvars_));
                }
                std::uint64_t e = 1;
                skip_ws();
                if (consume('^')) {
                    skip_ws();
                    e = integer();
                }
                if (e + m[var] > std::numeric_limits<std::uint32_t>::max()) {
                    pos_ = at;
                    fail("an exponent below 2^32");
                }
                m[var] += static_cast<std::uint32_t>(e);
            } else if (pos_ < text_.size() &&
                       (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '[' ||
                        text_[pos_] == '(')) {
                c = ring_.mul(c, ring_.parse_element(text_, pos_));
            } else {
                fail("a coefficient or variable");
            }
            skip_ws();
            if (!consume('*')) break;
        }
        return {std::move(m), c};
    }

    std::uint64_t integer() {
        const std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            if (v > (std::numeric_limits<std::uint64_t>::max() - 9) / 10) {
                pos_ = start;
                fail("an integer that fits in 64 bits");
            }
            v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
            ++pos_;
        }
        if (pos_ == start) fail("an integer");
        return v;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume(char ch) {
        if (pos_ < text_.size() && text_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError(std::string(text_), pos_, expected);
    }

    const RingSpec& ring_;
    std::size_t nvars_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

void check_compatible(const Polynomial& f, const Polynomial& g) {
    if (f.ring() != g.ring()) {
        throw MismatchedRingError("polynomials over " + f.ring().to_string() + " and " + g.ring().to_string());
    }
    if (f.nvars() != g.nvars()) throw ValidationError("polynomials have different variable counts");
}

}  // namespace

Polynomial Polynomial::parse(const RingSpec& ring, std::size_t nvars, std::string_view text) {
    return PolynomialParser(ring, nvars, text).parse();
}

RingElement evaluate(const Polynomial& f, const Point& p) {
    if (f.ring() != p.ring()) throw MismatchedRingError("point and polynomial belong to different rings");
    return RingElement(f.ring(), f.evaluate(p.indices()));
}

Polynomial add(const Polynomial& f, const Polynomial& g) {
    check_compatible(f, g);
    Polynomial out = f;
    for (const auto& [m, c] : g.terms()) out.add_term(m, c);
    return out;
}

Polynomial neg(const Polynomial& f) {
    Polynomial out(f.ring(), f.nvars());
    for (const auto& [m, c] : f.terms()) out.add_term(m, f.ring().neg(c));
    return out;
}

Polynomial sub(const Polynomial& f, const Polynomial& g) { return add(f, neg(g)); }

Polynomial scale(const RingElement& c, const Polynomial& f) {
    if (c.ring() != f.ring()) throw MismatchedRingError("scalar and polynomial belong to different rings");
    Polynomial out(f.ring(), f.nvars());
    for (const auto& [m, a] : f.terms()) out.add_term(m, f.ring().mul(c.index(), a));
    return out;
}

Polynomial mul(const Polynomial& f, const Polynomial& g) {
    check_compatible(f, g);
    Polynomial out(f.ring(), f.nvars());
    for (const auto& [mf, cf] : f.terms()) {
        for (const auto& [mg, cg] : g.terms()) {
            Monomial m(f.nvars());
            for (std::size_t i = 0; i < f.nvars(); ++i) m[i] = mf[i] + mg[i];
            out.add_term(m, f.ring().mul(cf, cg));
        }
    }
    return out;
}

Degree total_degree(const Polynomial& f) {
    if (f.is_zero()) return Degree::minus_infinity();
    // GradedLex puts the highest total degree last.
    return Degree::of(f.terms().rbegin()->first.total_degree());
}

Degree per_variable_degree(const Polynomial& f, std::size_t i) {
    if (i >= f.nvars()) throw ValidationError("variable index out of range");
    if (f.is_zero()) return Degree::minus_infinity();
    std::uint64_t best = 0;
    for (const auto& [m, c] : f.terms()) best = std::max<std::uint64_t>(best, m[i]);
    return Degree::of(best);
}

Polynomial reduce_per_variable(const Polynomial& f) {
    if (!f.ring().is_field()) throw NotAFieldError(f.ring().to_string() + " is not a field");
    const std::uint64_t q = f.ring().order();
    Polynomial out(f.ring(), f.nvars());
    for (const auto& [m, c] : f.terms()) {
        Monomial reduced = m;
        for (std::size_t i = 0; i < m.nvars(); ++i) {
            const std::uint64_t e = m[i];
            if (e > q - 1) reduced[i] = static_cast<std::uint32_t>((e - 1) % (q - 1) + 1);
        }
        out.add_term(reduced, c);
    }
    return out;
}

}  // namespace zerolab
