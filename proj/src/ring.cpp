#include "zerolab/ring.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>

#include "zerolab/errors.hpp"

namespace zerolab {

namespace {

constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 32;
constexpr std::uint64_t kTableOrder = 256;
constexpr std::uint64_t kExhaustiveFieldCheckOrder = 4096;

using Coeffs = std::vector<std::uint64_t>;

// Remainder of the monic `f` (full coefficient list, low degree first)
// modulo the monic `g`, over Z/p.
Coeffs poly_mod(Coeffs f, const Coeffs& g, std::uint64_t p) {
    const std::size_t dg = g.size() - 1;
    for (std::size_t d = f.size(); d-- > dg;) {
        const std::uint64_t c = f[d] % p;
        if (c == 0) continue;
        for (std::size_t i = 0; i <= dg; ++i) {
            const std::uint64_t sub = (c * g[i]) % p;
            std::uint64_t& slot = f[d - dg + i];
            slot = (slot + p - sub) % p;
        }
    }
    f.resize(std::min(f.size(), dg));
    return f;
}

bool all_zero(const Coeffs& c) {
    return std::all_of(c.begin(), c.end(), [](std::uint64_t v) { return v == 0; });
}

std::uint64_t checked_pow(std::uint64_t p, unsigned r) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < r; ++i) {
        if (q > kMaxOrder / p) throw ValidationError("ring order exceeds 2^32");
        q *= p;
    }
    return q;
}

std::string format_modulus(const Coeffs& lower) {
    const std::size_t r = lower.size();
    std::string out = r == 1 ? "x" : "x^" + std::to_string(r);
    for (std::size_t d = r; d-- > 0;) {
        const std::uint64_t c = lower[d];
        if (c == 0) continue;
        out += '+';
        if (d == 0) {
            out += std::to_string(c);
            continue;
        }
        if (c != 1) out += std::to_string(c) + '*';
        out += d == 1 ? "x" : "x^" + std::to_string(d);
    }
    return out;
}

Coeffs default_modulus(std::uint64_t p, unsigned r) {
    const std::uint64_t count = checked_pow(p, r);
    Coeffs c(r);
    for (std::uint64_t t = 0; t < count; ++t) {
        // c_0 is the most significant digit so candidates are visited in
        // lexicographic order compared from the constant term up.
        std::uint64_t v = t;
        for (unsigned i = r; i-- > 0;) {
            c[i] = v % p;
            v /= p;
        }
        if (is_irreducible_mod_p(p, c)) return c;
    }
    throw Error("no irreducible polynomial found");  // unreachable for prime p
}

}  // namespace

namespace detail {

struct RingData {
    RingKind kind{};
    std::uint64_t order = 0;
    std::uint64_t n = 0;  // ZmodN modulus
    std::uint64_t p = 0;
    unsigned r = 0;
    Coeffs modulus;
    bool default_modulus = true;
    std::optional<RingSpec> left;
    std::optional<RingSpec> right;

    std::vector<std::uint32_t> add_table;
    std::vector<std::uint32_t> mul_table;

    mutable std::once_flag field_once;
    mutable bool field = false;
};

}  // namespace detail

namespace {

ElementIndex slow_add(const detail::RingData& d, ElementIndex a, ElementIndex b);
ElementIndex slow_mul(const detail::RingData& d, ElementIndex a, ElementIndex b);

ElementIndex slow_add(const detail::RingData& d, ElementIndex a, ElementIndex b) {
    switch (d.kind) {
        case RingKind::ZmodN:
            return (a + b) % d.n;
        case RingKind::GaloisField: {
            ElementIndex out = 0, scale = 1;
            for (unsigned i = 0; i < d.r; ++i) {
                out += ((a % d.p + b % d.p) % d.p) * scale;
                a /= d.p;
                b /= d.p;
                scale *= d.p;
            }
            return out;
        }
        case RingKind::Product: {
            const std::uint64_t ro = d.right->order();
            return d.left->add(a / ro, b / ro) * ro + d.right->add(a % ro, b % ro);
        }
    }
    return 0;
}

ElementIndex slow_mul(const detail::RingData& d, ElementIndex a, ElementIndex b) {
    switch (d.kind) {
        case RingKind::ZmodN:
            return (a * b) % d.n;
        case RingKind::GaloisField: {
            const unsigned r = d.r;
            const std::uint64_t p = d.p;
            Coeffs x(r), y(r), prod(2 * r - 1, 0);
            for (unsigned i = 0; i < r; ++i) {
                x[i] = a % p;
                y[i] = b % p;
                a /= p;
                b /= p;
            }
            for (unsigned i = 0; i < r; ++i) {
                if (x[i] == 0) continue;
                for (unsigned j = 0; j < r; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
            // x^r = -(c_0 + ... + c_{r-1} x^{r-1})
            for (std::size_t deg = prod.size(); deg-- > r;) {
                const std::uint64_t c = prod[deg];
                if (c == 0) continue;
                prod[deg] = 0;
                for (unsigned i = 0; i < r; ++i) {
                    std::uint64_t& slot = prod[deg - r + i];
                    slot = (slot + p - (c * d.modulus[i]) % p) % p;
                }
            }
            ElementIndex out = 0;
            for (unsigned i = r; i-- > 0;) out = out * p + prod[i];
            return out;
        }
        case RingKind::Product: {
            const std::uint64_t ro = d.right->order();
            return d.left->mul(a / ro, b / ro) * ro + d.right->mul(a % ro, b % ro);
        }
    }
    return 0;
}

void build_tables(detail::RingData& d) {
    if (d.order > kTableOrder) return;
    const std::uint64_t q = d.order;
    d.add_table.resize(q * q);
    d.mul_table.resize(q * q);
    for (std::uint64_t a = 0; a < q; ++a) {
        for (std::uint64_t b = 0; b < q; ++b) {
            d.add_table[a * q + b] = static_cast<std::uint32_t>(slow_add(d, a, b));
            d.mul_table[a * q + b] = static_cast<std::uint32_t>(slow_mul(d, a, b));
        }
    }
}

// Recursive-descent parser for ring spec strings.
class RingParser {
public:
    explicit RingParser(std::string_view text) : text_(text) {}

    RingSpec parse() {
        RingSpec ring = product();
        skip_ws();
        if (pos_ != text_.size()) fail("'x' or end of input");
        return ring;
    }

private:
    RingSpec product() {
        RingSpec ring = atom();
        for (;;) {
            skip_ws();
            if (pos_ < text_.size() && (text_[pos_] == 'x' || text_[pos_] == 'X')) {
                ++pos_;
                ring = RingSpec::product(ring, atom());
            } else {
                return ring;
            }
        }
    }

    RingSpec atom() {
        skip_ws();
        if (consume("(")) {
            RingSpec inner = product();
            skip_ws();
            expect(")");
            return inner;
        }
        if (consume("GF(") || consume("F(")) {
            skip_ws();
            const std::size_t q_pos = pos_;
            const std::uint64_t q = integer();
            const auto pr = prime_power(q);
            if (!pr) {
                pos_ = q_pos;
                fail("a prime power");
            }
            std::optional<Coeffs> modulus;
            skip_ws();
            if (consume(";")) {
                skip_ws();
                expect("mod=");
                modulus = modulus_poly(pr->first, pr->second);
                skip_ws();
            }
            expect(")");
            try {
                return RingSpec::galois(pr->first, pr->second, modulus);
            } catch (const ValidationError& e) {
                throw ParseError(std::string(text_), q_pos, std::string("a valid field: ") + e.what());
            }
        }
        if (consume("Z")) {
            const std::size_t n_pos = pos_;
            const std::uint64_t n = integer();
            if (n < 2) {
                pos_ = n_pos;
                fail("a modulus >= 2");
            }
            return RingSpec::zmod(n);
        }
        fail("'Z<n>', 'GF(<q>)' or '('");
    }

    // Monic univariate polynomial in x over Z/p of degree r.
    Coeffs modulus_poly(std::uint64_t p, unsigned r) {
        std::map<std::uint64_t, std::uint64_t> terms;
        const std::size_t start = pos_;
        for (bool first = true;; first = false) {
            skip_ws();
            if (!first) {
                if (!consume("+")) break;
                skip_ws();
            }
            std::uint64_t coeff = 1;
            std::uint64_t deg = 0;
            bool have_coeff = false;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                coeff = integer();
                have_coeff = true;
                skip_ws();
                if (!consume("*")) {
                    terms[0] = (terms[0] + coeff) % p;
                    continue;
                }
                skip_ws();
            }
            if (!consume("x")) fail(have_coeff ? "'x'" : "a coefficient or 'x'");
            deg = 1;
            skip_ws();
            if (consume("^")) {
                skip_ws();
                deg = integer();
            }
            terms[deg] = (terms[deg] + coeff) % p;
        }
        Coeffs lower(r, 0);
        for (auto [deg, c] : terms) {
            if (c == 0) continue;
            if (deg > r || (deg == r && c != 1)) {
                throw ParseError(std::string(text_), start, "a monic modulus of degree " + std::to_string(r));
            }
            if (deg < r) lower[deg] = c;
        }
        if (terms.count(r) == 0 || terms[r] != 1) {
            throw ParseError(std::string(text_), start, "a monic modulus of degree " + std::to_string(r));
        }
        return lower;
    }

    std::uint64_t integer() {
        const std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            const std::uint64_t digit = static_cast<std::uint64_t>(text_[pos_] - '0');
            if (v > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
                pos_ = start;
                fail("an integer that fits in 64 bits");
            }
            v = v * 10 + digit;
            ++pos_;
        }
        if (pos_ == start) fail("an integer");
        return v;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume(std::string_view token) {
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view token) {
        if (!consume(token)) fail("'" + std::string(token) + "'");
    }

    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError(std::string(text_), pos_, expected);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------
// Construction

RingSpec RingSpec::zmod(std::uint64_t n) {
    if (n < 2) throw ValidationError("Z/nZ requires n >= 2");
    if (n > kMaxOrder) throw ValidationError("ring order exceeds 2^32");
    auto d = std::make_shared<detail::RingData>();
    d->kind = RingKind::ZmodN;
    d->order = n;
    d->n = n;
    build_tables(*d);
    return RingSpec(std::move(d));
}

RingSpec RingSpec::galois(std::uint64_t p, unsigned r, std::optional<std::vector<std::uint64_t>> modulus) {
    if (!is_prime(p)) throw ValidationError("GF(p^r) requires prime p, got " + std::to_string(p));
    if (r < 1) throw ValidationError("GF(p^r) requires r >= 1");
    auto d = std::make_shared<detail::RingData>();
    d->kind = RingKind::GaloisField;
    d->p = p;
    d->r = r;
    d->order = checked_pow(p, r);
    Coeffs fallback = default_modulus(p, r);
    if (modulus) {
        if (modulus->size() != r) {
            throw ValidationError("GF modulus must have degree " + std::to_string(r));
        }
        for (std::uint64_t c : *modulus) {
            if (c >= p) throw ValidationError("GF modulus coefficients must lie in [0, p)");
        }
        if (!is_irreducible_mod_p(p, *modulus)) {
            throw ValidationError("modulus " + format_modulus(*modulus) + " is reducible over Z/" + std::to_string(p));
        }
        d->modulus = *modulus;
    } else {
        d->modulus = fallback;
    }
    d->default_modulus = d->modulus == fallback;
    build_tables(*d);
    return RingSpec(std::move(d));
}

RingSpec RingSpec::galois_of_order(std::uint64_t q) {
    const auto pr = prime_power(q);
    if (!pr) throw ValidationError(std::to_string(q) + " is not a prime power");
    return galois(pr->first, pr->second);
}

RingSpec RingSpec::product(const RingSpec& left, const RingSpec& right) {
    if (left.order() > kMaxOrder / right.order()) throw ValidationError("ring order exceeds 2^32");
    auto d = std::make_shared<detail::RingData>();
    d->kind = RingKind::Product;
    d->order = left.order() * right.order();
    d->left = left;
    d->right = right;
    build_tables(*d);
    return RingSpec(std::move(d));
}

RingSpec RingSpec::parse(std::string_view text) { return RingParser(text).parse(); }

// ---------------------------------------------------------------------------
// Queries

RingKind RingSpec::kind() const { return data_->kind; }
std::uint64_t RingSpec::order() const { return data_->order; }

std::uint64_t RingSpec::modulus_n() const {
    return data_->kind == RingKind::ZmodN ? data_->n : data_->p;
}
std::uint64_t RingSpec::characteristic_p() const { return data_->p; }
unsigned RingSpec::degree_r() const { return data_->r; }
const std::vector<std::uint64_t>& RingSpec::modulus() const { return data_->modulus; }

const RingSpec& RingSpec::left() const {
    if (!data_->left) throw Error("left() on a non-product ring");
    return *data_->left;
}
const RingSpec& RingSpec::right() const {
    if (!data_->right) throw Error("right() on a non-product ring");
    return *data_->right;
}

std::string RingSpec::to_string() const {
    const auto& d = *data_;
    switch (d.kind) {
        case RingKind::ZmodN:
            return "Z" + std::to_string(d.n);
        case RingKind::GaloisField:
            if (d.default_modulus) return "GF(" + std::to_string(d.order) + ")";
            return "GF(" + std::to_string(d.order) + ";mod=" + format_modulus(d.modulus) + ")";
        case RingKind::Product: {
            std::string rhs = d.right->to_string();
            if (d.right->kind() == RingKind::Product) rhs = "(" + rhs + ")";
            return d.left->to_string() + "x" + rhs;
        }
    }
    return {};
}

bool RingSpec::is_field() const {
    const auto& d = *data_;
    std::call_once(d.field_once, [&] {
        if (d.order <= kExhaustiveFieldCheckOrder) {
            const ElementIndex one = one_index();
            bool all_units = true;
            for (ElementIndex a = 1; a < d.order && all_units; ++a) {
                bool unit = false;
                for (ElementIndex b = 1; b < d.order; ++b) {
                    if (mul(a, b) == one) {
                        unit = true;
                        break;
                    }
                }
                all_units = unit;
            }
            d.field = all_units;
            return;
        }
        switch (d.kind) {
            case RingKind::ZmodN: d.field = is_prime(d.n); break;
            case RingKind::GaloisField: d.field = true; break;
            case RingKind::Product: d.field = false; break;
        }
    });
    return d.field;
}

bool operator==(const RingSpec& a, const RingSpec& b) {
    if (a.data_ == b.data_) return true;
    const auto& x = *a.data_;
    const auto& y = *b.data_;
    if (x.kind != y.kind || x.order != y.order) return false;
    switch (x.kind) {
        case RingKind::ZmodN: return x.n == y.n;
        case RingKind::GaloisField: return x.p == y.p && x.r == y.r && x.modulus == y.modulus;
        case RingKind::Product: return *x.left == *y.left && *x.right == *y.right;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Index arithmetic

ElementIndex RingSpec::add(ElementIndex a, ElementIndex b) const {
    const auto& d = *data_;
    if (!d.add_table.empty()) return d.add_table[a * d.order + b];
    return slow_add(d, a, b);
}

ElementIndex RingSpec::mul(ElementIndex a, ElementIndex b) const {
    const auto& d = *data_;
    if (!d.mul_table.empty()) return d.mul_table[a * d.order + b];
    return slow_mul(d, a, b);
}

ElementIndex RingSpec::neg(ElementIndex a) const {
    const auto& d = *data_;
    switch (d.kind) {
        case RingKind::ZmodN:
            return a == 0 ? 0 : d.n - a;
        case RingKind::GaloisField: {
            ElementIndex out = 0, scale = 1;
            for (unsigned i = 0; i < d.r; ++i) {
                const std::uint64_t c = a % d.p;
                out += (c == 0 ? 0 : d.p - c) * scale;
                a /= d.p;
                scale *= d.p;
            }
            return out;
        }
        case RingKind::Product: {
            const std::uint64_t ro = d.right->order();
            return d.left->neg(a / ro) * ro + d.right->neg(a % ro);
        }
    }
    return 0;
}

ElementIndex RingSpec::sub(ElementIndex a, ElementIndex b) const { return add(a, neg(b)); }

ElementIndex RingSpec::pow(ElementIndex a, std::uint64_t e) const {
    ElementIndex result = one_index();
    while (e > 0) {
        if (e & 1) result = mul(result, a);
        e >>= 1;
        if (e) a = mul(a, a);
    }
    return result;
}

ElementIndex RingSpec::one_index() const { return integer_index(1); }

ElementIndex RingSpec::integer_index(std::int64_t value) const {
    const auto& d = *data_;
    auto reduce = [](std::int64_t v, std::uint64_t m) -> std::uint64_t {
        const auto sm = static_cast<std::int64_t>(m);
        const std::int64_t r = v % sm;
        return static_cast<std::uint64_t>(r < 0 ? r + sm : r);
    };
    switch (d.kind) {
        case RingKind::ZmodN: return reduce(value, d.n);
        case RingKind::GaloisField: return reduce(value, d.p);
        case RingKind::Product:
            return d.left->integer_index(value) * d.right->order() + d.right->integer_index(value);
    }
    return 0;
}

std::optional<ElementIndex> RingSpec::inverse(ElementIndex a) const {
    const auto& d = *data_;
    switch (d.kind) {
        case RingKind::ZmodN: {
            // extended Euclid on (a, n)
            std::int64_t old_r = static_cast<std::int64_t>(a), r = static_cast<std::int64_t>(d.n);
            std::int64_t old_s = 1, s = 0;
            while (r != 0) {
                const std::int64_t quot = old_r / r;
                std::tie(old_r, r) = std::make_pair(r, old_r - quot * r);
                std::tie(old_s, s) = std::make_pair(s, old_s - quot * s);
            }
            if (old_r != 1) return std::nullopt;
            const auto n = static_cast<std::int64_t>(d.n);
            return static_cast<ElementIndex>(((old_s % n) + n) % n);
        }
        case RingKind::GaloisField:
            if (a == 0) return std::nullopt;
            return pow(a, d.order - 2);
        case RingKind::Product: {
            const std::uint64_t ro = d.right->order();
            const auto l = d.left->inverse(a / ro);
            const auto r = d.right->inverse(a % ro);
            if (!l || !r) return std::nullopt;
            return *l * ro + *r;
        }
    }
    return std::nullopt;
}

std::vector<std::uint64_t> RingSpec::gf_coefficients(ElementIndex a) const {
    const auto& d = *data_;
    if (d.kind != RingKind::GaloisField) throw Error("gf_coefficients() on a non-GF ring");
    Coeffs c(d.r);
    for (unsigned i = 0; i < d.r; ++i) {
        c[i] = a % d.p;
        a /= d.p;
    }
    return c;
}

ElementIndex RingSpec::gf_from_coefficients(const std::vector<std::uint64_t>& coeffs) const {
    const auto& d = *data_;
    if (d.kind != RingKind::GaloisField) throw Error("gf_from_coefficients() on a non-GF ring");
    if (coeffs.size() > d.r) throw ValidationError("too many GF coefficients");
    ElementIndex out = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] >= d.p) throw ValidationError("GF coefficient out of range");
        out = out * d.p + coeffs[i];
    }
    return out;
}

std::pair<ElementIndex, ElementIndex> RingSpec::split(ElementIndex a) const {
    const auto& d = *data_;
    if (d.kind != RingKind::Product) throw Error("split() on a non-product ring");
    return {a / d.right->order(), a % d.right->order()};
}

ElementIndex RingSpec::join(ElementIndex left, ElementIndex right) const {
    const auto& d = *data_;
    if (d.kind != RingKind::Product) throw Error("join() on a non-product ring");
    return left * d.right->order() + right;
}

// ---------------------------------------------------------------------------
// Element text

std::string RingSpec::format(ElementIndex a) const {
    const auto& d = *data_;
    switch (d.kind) {
        case RingKind::ZmodN:
            return std::to_string(a);
        case RingKind::GaloisField: {
            if (d.r == 1) return std::to_string(a);
            std::string out = "[";
            const Coeffs c = gf_coefficients(a);
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(c[i]);
            }
            return out + "]";
        }
        case RingKind::Product: {
            const auto [l, r] = split(a);
            return "(" + d.left->format(l) + "," + d.right->format(r) + ")";
        }
    }
    return {};
}

ElementIndex RingSpec::parse_element(std::string_view text, std::size_t& pos) const {
    const auto& d = *data_;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& expected) -> ElementIndex {
        throw ParseError(std::string(text), pos, expected);
    };
    auto integer = [&]() -> std::uint64_t {
        const std::size_t start = pos;
        std::uint64_t v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            if (v > (std::numeric_limits<std::uint64_t>::max() - 9) / 10) {
                pos = start;
                fail("an integer that fits in 64 bits");
            }
            v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
            ++pos;
        }
        if (pos == start) fail("an integer");
        return v;
    };

    skip_ws();
    if (pos < text.size() && text[pos] == '[') {
        if (d.kind != RingKind::GaloisField) return fail("a coefficient of " + to_string());
        ++pos;
        Coeffs coeffs;
        for (;;) {
            skip_ws();
            const std::size_t at = pos;
            const std::uint64_t c = integer();
            if (c >= d.p) {
                pos = at;
                return fail("a residue below " + std::to_string(d.p));
            }
            coeffs.push_back(c);
            skip_ws();
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                continue;
            }
            if (pos < text.size() && text[pos] == ']') {
                ++pos;
                break;
            }
            return fail("',' or ']'");
        }
        if (coeffs.size() > d.r) return fail("at most " + std::to_string(d.r) + " coefficients");
        return gf_from_coefficients(coeffs);
    }
    if (pos < text.size() && text[pos] == '(') {
        if (d.kind != RingKind::Product) return fail("a coefficient of " + to_string());
        ++pos;
        const ElementIndex l = d.left->parse_element(text, pos);
        skip_ws();
        if (pos >= text.size() || text[pos] != ',') return fail("','");
        ++pos;
        const ElementIndex r = d.right->parse_element(text, pos);
        skip_ws();
        if (pos >= text.size() || text[pos] != ')') return fail("')'");
        ++pos;
        return join(l, r);
    }
    const std::uint64_t v = integer();
    switch (d.kind) {
        case RingKind::ZmodN: return v % d.n;
        case RingKind::GaloisField: return v % d.p;
        case RingKind::Product:
            return join(d.left->integer_index(static_cast<std::int64_t>(v % d.left->order())),
                        d.right->integer_index(static_cast<std::int64_t>(v % d.right->order())));
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Elements

RingElement RingSpec::zero() const { return RingElement(*this, 0); }
RingElement RingSpec::one() const { return RingElement(*this, one_index()); }

RingElement RingSpec::element(ElementIndex index) const {
    if (index >= order()) throw ValidationError("element index out of range");
    return RingElement(*this, index);
}

RingElement RingSpec::from_integer(std::int64_t value) const { return RingElement(*this, integer_index(value)); }

std::vector<RingElement> RingSpec::elements() const {
    std::vector<RingElement> out;
    out.reserve(order());
    for (ElementIndex i = 0; i < order(); ++i) out.emplace_back(*this, i);
    return out;
}

RingElement::RingElement(RingSpec ring, ElementIndex index) : ring_(std::move(ring)), index_(index) {}

std::uint64_t RingElement::residue() const {
    if (ring_.kind() != RingKind::ZmodN) throw Error("residue() on a non Z/nZ element");
    return index_;
}

std::vector<std::uint64_t> RingElement::coefficients() const { return ring_.gf_coefficients(index_); }

std::pair<RingElement, RingElement> RingElement::components() const {
    const auto [l, r] = ring_.split(index_);
    return {RingElement(ring_.left(), l), RingElement(ring_.right(), r)};
}

namespace {
void check_same(const RingElement& a, const RingElement& b) {
    if (a.ring() != b.ring()) {
        throw MismatchedRingError("operands belong to " + a.ring().to_string() + " and " + b.ring().to_string());
    }
}
}  // namespace

RingElement add(const RingElement& a, const RingElement& b) {
    check_same(a, b);
    return RingElement(a.ring(), a.ring().add(a.index(), b.index()));
}

RingElement sub(const RingElement& a, const RingElement& b) {
    check_same(a, b);
    return RingElement(a.ring(), a.ring().sub(a.index(), b.index()));
}

RingElement mul(const RingElement& a, const RingElement& b) {
    check_same(a, b);
    return RingElement(a.ring(), a.ring().mul(a.index(), b.index()));
}

RingElement neg(const RingElement& a) { return RingElement(a.ring(), a.ring().neg(a.index())); }

std::vector<RingElement> enumerate_elements(const RingSpec& ring) { return ring.elements(); }
bool is_field(const RingSpec& ring) { return ring.is_field(); }

// ---------------------------------------------------------------------------
// Number theory helpers

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    std::uint64_t p = q;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    unsigned r = 0;
    while (q % p == 0) {
        q /= p;
        ++r;
    }
    if (q != 1) return std::nullopt;
    return std::make_pair(p, r);
}

bool is_irreducible_mod_p(std::uint64_t p, const std::vector<std::uint64_t>& lower_coeffs) {
    const std::size_t r = lower_coeffs.size();
    if (r == 0) return false;
    if (r == 1) return true;
    Coeffs f(lower_coeffs);
    f.push_back(1);
    for (std::size_t deg = 1; deg <= r / 2; ++deg) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < deg; ++i) count *= p;
        Coeffs g(deg + 1);
        g[deg] = 1;
        for (std::uint64_t t = 0; t < count; ++t) {
            std::uint64_t v = t;
            for (std::size_t i = 0; i < deg; ++i) {
                g[i] = v % p;
                v /= p;
            }
            if (all_zero(poly_mod(f, g, p))) return false;
        }
    }
    return true;
}

}  // namespace zerolab
