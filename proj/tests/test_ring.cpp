#include <doctest.h>

#include <set>

#include "zerolab/errors.hpp"
#include "zerolab/ring.hpp"

using namespace zerolab;

namespace {

std::vector<RingSpec> small_rings() {
    std::vector<RingSpec> rings;
    for (std::uint64_t n = 2; n <= 16; ++n) rings.push_back(RingSpec::zmod(n));
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) rings.push_back(RingSpec::galois_of_order(q));
    rings.push_back(RingSpec::parse("Z2xZ2"));
    rings.push_back(RingSpec::parse("Z2xZ3"));
    rings.push_back(RingSpec::parse("Z2xZ4"));
    rings.push_back(RingSpec::parse("GF(4)xZ2"));
    rings.push_back(RingSpec::parse("(Z2xZ2)xZ2"));
    rings.push_back(RingSpec::parse("Z2xZ2xZ2xZ2"));
    return rings;
}

}  // namespace

TEST_CASE("modular add and mul") {
    const RingSpec z6 = RingSpec::zmod(6);
    CHECK(add(z6.element(4), z6.element(5)) == z6.element(3));
    const RingSpec z4 = RingSpec::zmod(4);
    CHECK(mul(z4.element(2), z4.element(2)) == z4.zero());
    for (const auto& x : z6.elements()) {
        CHECK(x + z6.zero() == x);
        CHECK(x * z6.one() == x);
    }
}

TEST_CASE("GF(4) with modulus x^2+x+1") {
    const RingSpec gf4 = RingSpec::parse("GF(4)");
    CHECK(gf4.modulus() == std::vector<std::uint64_t>{1, 1});
    const RingElement alpha(gf4, gf4.gf_from_coefficients({0, 1}));
    CHECK(alpha + alpha == gf4.zero());
    const RingElement alpha_plus_one(gf4, gf4.gf_from_coefficients({1, 1}));
    CHECK(alpha * alpha == alpha_plus_one);
    CHECK(alpha.to_string() == "[0,1]");
}

TEST_CASE("mismatched rings are rejected") {
    const RingSpec z4 = RingSpec::zmod(4);
    const RingSpec z5 = RingSpec::zmod(5);
    CHECK_THROWS_AS(add(z4.one(), z5.one()), MismatchedRingError);
    CHECK_THROWS_AS(mul(z4.one(), z5.one()), MismatchedRingError);
    // structurally equal rings built separately are the same ring
    CHECK_NOTHROW(add(z4.one(), RingSpec::parse("Z4").one()));
}

TEST_CASE("enumerate_elements") {
    const auto z3 = enumerate_elements(RingSpec::zmod(3));
    REQUIRE(z3.size() == 3);
    CHECK(z3[0].residue() == 0);
    CHECK(z3[1].residue() == 1);
    CHECK(z3[2].residue() == 2);

    for (const auto& ring : small_rings()) {
        const auto elems = enumerate_elements(ring);
        CHECK(elems.size() == ring.order());
        CHECK(elems.front().is_zero());
        std::set<std::string> text;
        for (const auto& e : elems) text.insert(e.to_string());
        CHECK(text.size() == ring.order());
        // stable across calls
        const auto again = enumerate_elements(ring);
        CHECK(std::equal(elems.begin(), elems.end(), again.begin()));
    }

    const auto pairs = enumerate_elements(RingSpec::parse("Z2xZ2"));
    REQUIRE(pairs.size() == 4);
    CHECK(pairs[3].to_string() == "(1,1)");
}

TEST_CASE("is_field") {
    CHECK(is_field(RingSpec::zmod(5)));
    CHECK_FALSE(is_field(RingSpec::zmod(4)));
    CHECK(is_field(RingSpec::parse("GF(9)")));
    CHECK_FALSE(is_field(RingSpec::parse("Z2xZ2")));
    for (std::uint64_t n = 2; n <= 50; ++n) {
        CAPTURE(n);
        CHECK(is_field(RingSpec::zmod(n)) == is_prime(n));
    }
    for (std::uint64_t q : {4, 8, 9, 16, 25, 27, 32}) CHECK(is_field(RingSpec::galois_of_order(q)));
}

TEST_CASE("ring axioms hold exhaustively for rings of order <= 16") {
    for (const auto& ring : small_rings()) {
        CAPTURE(ring.to_string());
        const std::uint64_t q = ring.order();
        const ElementIndex one = ring.one_index();
        bool ok = true;
        for (ElementIndex a = 0; a < q && ok; ++a) {
            ok = ok && ring.add(a, 0) == a && ring.mul(a, one) == a && ring.add(a, ring.neg(a)) == 0;
            for (ElementIndex b = 0; b < q && ok; ++b) {
                ok = ok && ring.add(a, b) == ring.add(b, a) && ring.mul(a, b) == ring.mul(b, a);
                for (ElementIndex c = 0; c < q && ok; ++c) {
                    ok = ok && ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c));
                    ok = ok && ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c));
                    ok = ok && ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c));
                }
            }
        }
        CHECK(ok);
    }
}

TEST_CASE("inverse agrees with exhaustive search") {
    for (const auto& ring : small_rings()) {
        CAPTURE(ring.to_string());
        for (ElementIndex a = 0; a < ring.order(); ++a) {
            std::optional<ElementIndex> expected;
            for (ElementIndex b = 0; b < ring.order(); ++b) {
                if (ring.mul(a, b) == ring.one_index()) expected = b;
            }
            CHECK(ring.inverse(a) == expected);
        }
    }
}

TEST_CASE("default GF modulus is the smallest irreducible compared from c0") {
    // x^3 + x^2 + 1 = (1,0,1) precedes x^3 + x + 1 = (1,1,0)
    CHECK(RingSpec::galois(2, 3).modulus() == std::vector<std::uint64_t>{1, 0, 1});
    CHECK(RingSpec::galois(3, 2).modulus() == std::vector<std::uint64_t>{1, 0});  // x^2 + 1
    CHECK(RingSpec::galois(2, 4).modulus() == std::vector<std::uint64_t>{1, 0, 0, 1});
}

TEST_CASE("irreducibility by trial division") {
    CHECK(is_irreducible_mod_p(2, {1, 1}));         // x^2+x+1
    CHECK_FALSE(is_irreducible_mod_p(2, {1, 0}));   // x^2+1 = (x+1)^2
    CHECK_FALSE(is_irreducible_mod_p(3, {2, 0}));   // x^2+2 = (x+1)(x+2)
    CHECK(is_irreducible_mod_p(2, {1, 1, 0}));      // x^3+x+1
    CHECK_FALSE(is_irreducible_mod_p(2, {1, 0, 1, 0}));  // x^4+x^2+1 = (x^2+x+1)^2
    // count of monic irreducible quartics over F_2 is 3
    int count = 0;
    for (int t = 0; t < 16; ++t) {
        count += is_irreducible_mod_p(2, {std::uint64_t(t & 1), std::uint64_t((t >> 1) & 1),
                                          std::uint64_t((t >> 2) & 1), std::uint64_t((t >> 3) & 1)});
    }
    CHECK(count == 3);
}

TEST_CASE("ring spec grammar") {
    CHECK(RingSpec::parse("Z4").order() == 4);
    CHECK(RingSpec::parse("GF(9)").order() == 9);
    const RingSpec gf8 = RingSpec::parse("GF(8;mod=x^3+x+1)");
    CHECK(gf8.modulus() == std::vector<std::uint64_t>{1, 1, 0});
    CHECK(gf8.to_string() == "GF(8;mod=x^3+x+1)");
    CHECK(gf8 != RingSpec::parse("GF(8)"));
    CHECK(RingSpec::parse("GF(8;mod=x^3+x^2+1)").to_string() == "GF(8)");
    CHECK(RingSpec::parse("Z2xZ2").to_string() == "Z2xZ2");
    CHECK(RingSpec::parse("Z2x(Z3xZ5)").to_string() == "Z2x(Z3xZ5)");
    CHECK(RingSpec::parse("Z2xZ3xZ5").left().to_string() == "Z2xZ3");

    for (const auto& ring : small_rings()) CHECK(RingSpec::parse(ring.to_string()) == ring);

    auto position_of = [](const char* text) -> std::size_t {
        try {
            RingSpec::parse(text);
        } catch (const ParseError& e) {
            return e.position();
        }
        return 9999;
    };
    CHECK(position_of("Q4") == 0);
    CHECK(position_of("Z") == 1);
    CHECK(position_of("Z1") == 1);
    CHECK(position_of("GF(6)") == 3);
    CHECK(position_of("GF(4") == 4);
    CHECK(position_of("Z2xZ2 y") == 6);
    CHECK(position_of("GF(8;mod=x^2+1)") == 9);
    CHECK_THROWS_AS(RingSpec::parse("GF(4;mod=x^2+1)"), ParseError);  // reducible
}

TEST_CASE("element literals round-trip") {
    for (const auto& ring : small_rings()) {
        for (ElementIndex a = 0; a < ring.order(); ++a) {
            const std::string text = ring.format(a);
            std::size_t pos = 0;
            CHECK(ring.parse_element(text, pos) == a);
            CHECK(pos == text.size());
        }
    }
    const RingSpec z5 = RingSpec::zmod(5);
    std::size_t pos = 0;
    CHECK(z5.parse_element("7", pos) == 2);
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(RingSpec::zmod(1), ValidationError);
    CHECK_THROWS_AS(RingSpec::galois(4, 1), ValidationError);
    CHECK_THROWS_AS(RingSpec::galois(2, 2, std::vector<std::uint64_t>{1, 0}), ValidationError);
    CHECK_THROWS_AS(RingSpec::galois_of_order(12), ValidationError);
    CHECK(prime_power(27) == std::make_pair(std::uint64_t{3}, 3u));
    CHECK_FALSE(prime_power(12).has_value());
}
