#include <catch2/catch_amalgamated.hpp>

#include "ffint/field.hpp"
#include "ffint/rng.hpp"

using namespace ffint;

TEST_CASE("prime field construction") {
    auto F5 = Field::make(5, 1);
    CHECK(F5->characteristic() == 5);
    CHECK(F5->size() == 5);
    CHECK_THROWS_AS(Field::make(4, 1), Error);
    CHECK_THROWS_AS(Field::make(1, 1), Error);
    try {
        Field::make(4, 1);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotPrime);
    }
}

TEST_CASE("extension field with explicit modulus") {
    // u^2+1 has no root in F_3 (0^2+1=1, 1^2+1=2, 2^2+1=2), hence irreducible
    for (std::int64_t r = 0; r < 3; ++r) CHECK((r * r + 1) % 3 != 0);
    auto F9 = Field::make(3, 2, std::vector<std::int64_t>{1, 0, 1});
    CHECK(F9->size() == 9);

    // u^2-1 = (u-1)(u+1) is rejected
    CHECK_THROWS_AS(Field::make(3, 2, std::vector<std::int64_t>{-1, 0, 1}), Error);
    // wrong degree
    CHECK_THROWS_AS(Field::make(3, 2, std::vector<std::int64_t>{1, 1}), Error);
    // non-monic
    CHECK_THROWS_AS(Field::make(3, 2, std::vector<std::int64_t>{1, 0, 2}), Error);
    // modulus forbidden on prime fields
    CHECK_THROWS_AS(Field::make(3, 1, std::vector<std::int64_t>{1, 0, 1}), Error);
}

TEST_CASE("default modulus is the least irreducible, low-degree-first") {
    // over F_3: (1,0) -> u^2+1 is the first irreducible candidate
    auto F9 = Field::make(3, 2);
    CHECK(F9->modulus() == zp::Vec{1, 0, 1});
    // over F_5: u^2+1 has root 2, u^2+u+1 has no root -> modulus u^2+u+1
    auto F25 = Field::make(5, 2);
    CHECK(F25->modulus() == zp::Vec{1, 1, 1});
    // over F_7: -1 is a nonsquare -> u^2+1
    auto F49 = Field::make(7, 2);
    CHECK(F49->modulus() == zp::Vec{1, 0, 1});
}

TEST_CASE("basic arithmetic facts") {
    auto F5 = Field::make(5, 1);
    CHECK(inv(F5->from_int(2)) == F5->from_int(3)); // 2*3 = 6 = 1

    auto F9 = Field::make(3, 2); // F_3[u]/(u^2+1)
    FieldElem u = F9->elem({0, 1});
    CHECK(u * u == F9->from_int(2)); // u^2 = -1 = 2

    CHECK_THROWS_AS(inv(F5->zero()), Error);
    CHECK_THROWS_AS(F5->from_int(1) + F9->from_int(1), Error);
}

TEST_CASE("field axioms on random triples") {
    for (auto [p, e] : {std::pair<std::uint64_t, std::uint32_t>{5, 1}, {2, 1}, {3, 2}, {7, 2}}) {
        auto F = Field::make(p, e);
        Rng rng(12345);
        for (int iter = 0; iter < 10000; ++iter) {
            FieldElem a = F->from_index(rng.below(F->size()));
            FieldElem b = F->from_index(rng.below(F->size()));
            FieldElem c = F->from_index(rng.below(F->size()));
            REQUIRE((a + b) + c == a + (b + c));
            REQUIRE(a * (b + c) == a * b + a * c);
            REQUIRE((a * b) * c == a * (b * c));
            if (!a.is_zero()) REQUIRE(a * inv(a) == F->one());
        }
    }
}

TEST_CASE("Fermat, Frobenius and enumeration") {
    for (auto [p, e] : {std::pair<std::uint64_t, std::uint32_t>{5, 1}, {3, 2}, {7, 2}, {2, 3}}) {
        auto F = Field::make(p, e);
        const std::uint64_t q = F->size();
        std::uint64_t seen = 0;
        FieldElem prev = F->zero();
        for (std::uint64_t i = 0; i < q; ++i) {
            FieldElem a = F->from_index(i);
            ++seen;
            CHECK(F->index_of(a) == i);
            if (!a.is_zero()) CHECK(pow(a, static_cast<std::int64_t>(q) - 1) == F->one());
            CHECK(pow(a, static_cast<std::int64_t>(q)) == a);
            CHECK(pow(a, static_cast<std::int64_t>(p)) == F->frobenius(a));
            if (i > 0) CHECK(!(a == prev));
            prev = a;
        }
        CHECK(seen == q);
    }
}

TEST_CASE("enumeration order is lexicographic on high-to-low coordinates") {
    auto F9 = Field::make(3, 2);
    auto elems = F9->enumerate();
    REQUIRE(elems.size() == 9);
    CHECK(elems[0] == F9->from_int(0));
    CHECK(elems[1] == F9->from_int(1));
    CHECK(elems[2] == F9->from_int(2));
    CHECK(elems[3] == F9->elem({0, 1})); // u
    CHECK(elems[4] == F9->elem({1, 1})); // u+1

    auto F49 = Field::make(7, 2);
    CHECK(F49->enumerate().size() == 49);
}

TEST_CASE("negative exponents and pow edge cases") {
    auto F7 = Field::make(7, 1);
    FieldElem three = F7->from_int(3);
    CHECK(pow(three, -1) == inv(three));
    CHECK(pow(three, 0) == F7->one());
    CHECK(pow(three, -6) == F7->one()); // 3^6 = 1 mod 7
}
