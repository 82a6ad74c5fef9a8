#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zerolab {

/// Dense index of a ring element in [0, order). Index 0 is always zero.
using ElementIndex = std::uint64_t;

namespace detail {
struct RingData;
}

class RingElement;

enum class RingKind { ZmodN, GaloisField, Product };

/// A finite commutative ring with unity: Z/nZ, GF(p^r) or a binary product.
///
/// Instances are cheap immutable handles; copies share the underlying
/// arithmetic tables. Elements are encoded as dense indices:
///   - Z/nZ: the least nonnegative residue;
///   - GF(p^r): sum of c_i p^i over the coefficient vector (c_0..c_{r-1})
///     of the element's polynomial representative modulo `modulus()`;
///   - L x R: left_index * |R| + right_index.
class RingSpec {
public:
    static RingSpec zmod(std::uint64_t n);
    /// GF(p^r). Without `modulus` the lexicographically smallest monic
    /// irreducible of degree r is used (coefficients compared from c_0 up).
    /// `modulus` lists c_0..c_{r-1}; the leading 1 is implied.
    static RingSpec galois(std::uint64_t p, unsigned r,
                           std::optional<std::vector<std::uint64_t>> modulus = std::nullopt);
    /// GF(q) for a prime power q, default modulus.
    static RingSpec galois_of_order(std::uint64_t q);
    static RingSpec product(const RingSpec& left, const RingSpec& right);

    /// Grammar: `Z4`, `GF(9)`, `GF(8;mod=x^3+x+1)`, `Z2xZ2`, `(Z2xZ2)xZ3`.
    /// Products associate to the left.
    static RingSpec parse(std::string_view text);

    RingKind kind() const;
    std::uint64_t order() const;
    /// Canonical spec string; parse(to_string()) reproduces the ring.
    std::string to_string() const;

    /// ZmodN modulus, or p for GaloisField.
    std::uint64_t modulus_n() const;
    std::uint64_t characteristic_p() const;
    unsigned degree_r() const;
    /// GaloisField modulus coefficients c_0..c_{r-1} (leading 1 implied).
    const std::vector<std::uint64_t>& modulus() const;
    const RingSpec& left() const;
    const RingSpec& right() const;

    /// Every nonzero element has a multiplicative inverse. Decided by
    /// exhaustive search for rings of order <= 4096.
    bool is_field() const;

    RingElement zero() const;
    RingElement one() const;
    RingElement element(ElementIndex index) const;
    /// Image of the integer `value` under Z -> R.
    RingElement from_integer(std::int64_t value) const;
    /// All elements in index order; the first is zero.
    std::vector<RingElement> elements() const;

    // Index-level arithmetic for hot loops. Arguments must be < order().
    ElementIndex add(ElementIndex a, ElementIndex b) const;
    ElementIndex sub(ElementIndex a, ElementIndex b) const;
    ElementIndex neg(ElementIndex a) const;
    ElementIndex mul(ElementIndex a, ElementIndex b) const;
    ElementIndex pow(ElementIndex a, std::uint64_t e) const;
    ElementIndex one_index() const;
    ElementIndex integer_index(std::int64_t value) const;
    std::optional<ElementIndex> inverse(ElementIndex a) const;

    /// GF coefficient vector of length r.
    std::vector<std::uint64_t> gf_coefficients(ElementIndex a) const;
    ElementIndex gf_from_coefficients(const std::vector<std::uint64_t>& coeffs) const;
    /// Product components (left index, right index).
    std::pair<ElementIndex, ElementIndex> split(ElementIndex a) const;
    ElementIndex join(ElementIndex left, ElementIndex right) const;

    /// Canonical text of an element: `3`, `[0,1]` (GF with r >= 2), `(1,0)`.
    std::string format(ElementIndex a) const;
    /// Parses a coefficient literal at `pos` in `text`, advancing `pos`.
    ElementIndex parse_element(std::string_view text, std::size_t& pos) const;

    friend bool operator==(const RingSpec& a, const RingSpec& b);
    friend bool operator!=(const RingSpec& a, const RingSpec& b) { return !(a == b); }

private:
    explicit RingSpec(std::shared_ptr<const detail::RingData> data) : data_(std::move(data)) {}
    std::shared_ptr<const detail::RingData> data_;
};

/// An element of a RingSpec. Equality is structural on (ring, index).
class RingElement {
public:
    RingElement(RingSpec ring, ElementIndex index);

    const RingSpec& ring() const { return ring_; }
    ElementIndex index() const { return index_; }
    bool is_zero() const { return index_ == 0; }

    /// Z/nZ residue.
    std::uint64_t residue() const;
    /// GF(p^r) coefficient vector.
    std::vector<std::uint64_t> coefficients() const;
    /// Product components.
    std::pair<RingElement, RingElement> components() const;

    std::string to_string() const { return ring_.format(index_); }

    friend bool operator==(const RingElement& a, const RingElement& b) {
        return a.index_ == b.index_ && a.ring_ == b.ring_;
    }
    friend bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }

private:
    RingSpec ring_;
    ElementIndex index_;
};

RingElement add(const RingElement& a, const RingElement& b);
RingElement sub(const RingElement& a, const RingElement& b);
RingElement mul(const RingElement& a, const RingElement& b);
RingElement neg(const RingElement& a);

inline RingElement operator+(const RingElement& a, const RingElement& b) { return add(a, b); }
inline RingElement operator-(const RingElement& a, const RingElement& b) { return sub(a, b); }
inline RingElement operator*(const RingElement& a, const RingElement& b) { return mul(a, b); }
inline RingElement operator-(const RingElement& a) { return neg(a); }

std::vector<RingElement> enumerate_elements(const RingSpec& ring);
bool is_field(const RingSpec& ring);

/// Monic polynomial over Z/p given as c_0..c_{r-1} (leading 1 implied) is
/// irreducible; trial division by every monic polynomial of degree <= r/2.
bool is_irreducible_mod_p(std::uint64_t p, const std::vector<std::uint64_t>& lower_coeffs);
bool is_prime(std::uint64_t n);
/// (p, r) with q = p^r, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q);

}  // namespace zerolab
