#include <doctest.h>

#include <limits>

#include "pimsim/int_matrix.hpp"

using namespace pimsim;

TEST_CASE("gaussian integer arithmetic") {
    const GaussInt a(3, -2), b(-1, 5);
    CHECK(a + b == GaussInt(2, 3));
    CHECK(a - b == GaussInt(4, -7));
    CHECK(a * b == GaussInt(7, 17));
    CHECK(a.times_i() == GaussInt(2, 3));
    CHECK(a.conj() == GaussInt(3, 2));
    CHECK(a.norm() == 13);
    CHECK(GaussInt(6, -4).shr(1) == GaussInt(3, -2));
    CHECK(GaussInt(3, -2).shl(2) == GaussInt(12, -8));
    CHECK(GaussInt(2, 4).is_even());
    CHECK_FALSE(GaussInt(2, 3).is_even());
}

TEST_CASE("overflow is reported, never wrapped") {
    constexpr auto big = std::numeric_limits<std::int64_t>::max();
    CHECK_THROWS_AS(GaussInt(big) + GaussInt(1), OverflowError);
    CHECK_THROWS_AS(GaussInt(std::numeric_limits<std::int64_t>::min()) - GaussInt(1), OverflowError);
    CHECK_THROWS_AS(GaussInt(big / 2 + 1) * GaussInt(2), OverflowError);
    CHECK_THROWS_AS((void)GaussInt(big / 2 + 1).shl(1), OverflowError);
    CHECK_THROWS_AS(-GaussInt(std::numeric_limits<std::int64_t>::min()), OverflowError);
    // overflow is also a contract violation for callers that only catch that
    CHECK_THROWS_AS(GaussInt(big) + GaussInt(1), ContractViolation);
}

TEST_CASE("norm does not overflow at the extremes") {
    constexpr auto big = std::numeric_limits<std::int64_t>::max();
    const unsigned __int128 expected = static_cast<unsigned __int128>(big) * big * 2;
    CHECK(GaussInt(big, big).norm() == expected);
}

TEST_CASE("dyadic rationals reduce and print") {
    CHECK(DyadicRational::make(2, 2).to_string() == "1/2");
    CHECK(DyadicRational::make(0, 7).to_string() == "0/1");
    CHECK(DyadicRational::make(4, 2).to_string() == "1/1");
    CHECK(DyadicRational::make(3, 4).to_double() == doctest::Approx(3.0 / 16));
    CHECK(DyadicRational::make(1, 100).to_string() == "1/1267650600228229401496703205376");
}

TEST_CASE("int matrix product, kron and reduction") {
    const IntGateMatrix h(2, {1, 1, 1, -1}, 1, {0});
    const IntGateMatrix hh = multiply(h, h);
    // H*H = 2I / 2 reduces to I with no denominator
    CHECK(hh.half_shift == 0);
    CHECK(hh.entries == std::vector<GaussInt>{1, 0, 0, 1});

    const IntGateMatrix ry(2, {1, -1, 1, 1}, 1, {1});
    const IntGateMatrix k = kron(h, ry);
    CHECK(k.half_shift == 2);
    CHECK(k.operands == std::vector<Qubit>{0, 1});
    CHECK(k.entries == std::vector<GaussInt>{1, -1, 1, -1, 1, 1, 1, 1, 1, -1, -1, 1, 1, 1, -1, -1});
    CHECK(k.is_unitary_exact());
}

TEST_CASE("int_form_of finds the minimal denominator") {
    const double r = 1 / std::sqrt(2.0);
    auto form = int_form_of(ComplexMatrix(2, {r, r, r, -r}));
    REQUIRE(form);
    CHECK(form->half_shift == 1);
    CHECK(form->entries == std::vector<GaussInt>{1, 1, 1, -1});

    form = int_form_of(ComplexMatrix(2, {0.5, 0.5, 0.5, -0.5}));
    REQUIRE(form);
    CHECK(form->half_shift == 2);

    const Complex t{r, r};
    CHECK_FALSE(int_form_of(ComplexMatrix(2, {1, 0, 0, t})).has_value());
}

TEST_CASE("permutation detection") {
    const IntGateMatrix x(2, {0, 1, 1, 0}, 0, {0});
    CHECK(x.is_permutation());
    CHECK(x.permutation_image() == std::vector<std::uint8_t>{1, 0});
    const IntGateMatrix z(2, {1, 0, 0, -1}, 0, {0});
    CHECK_FALSE(z.is_permutation());
    const IntGateMatrix h(2, {1, 1, 1, -1}, 1, {0});
    CHECK_FALSE(h.is_permutation());
}
