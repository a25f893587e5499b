#include "doctest.h"

#include "helpers.hpp"
#include "onepoint/textio.hpp"

using namespace onepoint;
using onepoint::testing::TestRng;
using onepoint::testing::random_poly;

TEST_CASE("field spec round trip") {
    CHECK(parse_field_spec("2")->order() == 2);
    CHECK(parse_field_spec("2^4")->order() == 16);
    auto f = parse_field_spec("2^2;mod=t^2+t+1");
    CHECK(f->modulus() == std::vector<int64_t>{1, 1, 1});
    CHECK(field_spec_string(*f) == "2^2;mod=t^2+t+1");
    CHECK(field_spec_string(*parse_field_spec("5")) == "5");
    CHECK(parse_field_spec(field_spec_string(*FieldConfig::make(2, 4)))->same(*FieldConfig::make(2, 4)));
    CHECK_THROWS_AS(parse_field_spec("x^2"), ParseError);
    CHECK_THROWS_AS(parse_field_spec("2^2;mod=t^2+t"), ReducibleModulusError);
}

TEST_CASE("element strings") {
    auto f4 = FieldConfig::make(2, 2);
    CHECK(element_string(element_at(f4, 3)) == "a+1");
    CHECK(element_string(Fq::zero(f4)) == "0");
    auto f9 = FieldConfig::make(3, 2);
    for (int64_t i = 0; i < 9; ++i) {
        const Fq x = element_at(f9, i);
        CHECK(parse_element(element_string(x), f9) == x);
    }
    auto f27 = FieldConfig::make(3, 3);
    CHECK(element_string(element_at(f27, 19)) == "2*a^2+1");
}

TEST_CASE("polynomial print uses descending grlex with spec syntax") {
    auto f4 = FieldConfig::make(2, 2);
    const MPoly f = parse_poly("z0^3 + (a+1)*z0*z1^2", f4, 2);
    CHECK(poly_string(f) == "z0^3 + (a+1)*z0*z1^2");
    CHECK(poly_string(MPoly::zero(f4, 2)) == "0");
    auto f3 = FieldConfig::make(3, 1);
    CHECK(poly_string(parse_poly("t^3 - t", f3, 1, VarMode::T), VarMode::T) == "t^3 + 2*t");
}

TEST_CASE("parser handles subtraction, parens, and rejects junk") {
    auto f3 = FieldConfig::make(3, 1);
    CHECK(parse_poly("-z0", f3, 1) == parse_poly("2*z0", f3, 1));
    CHECK(parse_poly("(z0+1)^3", f3, 1) == parse_poly("z0^3+1", f3, 1));
    CHECK_THROWS_AS(parse_poly("z0 + + z1", f3, 2), ParseError);
    CHECK_THROWS_AS(parse_poly("z5", f3, 2), ParseError);
    CHECK_THROWS_AS(parse_poly("w0", f3, 2), ParseError);
    CHECK_THROWS_AS(parse_poly("a", f3, 1), ParseError);  // no generator in a prime field
}

TEST_CASE("property: polynomial text round trips") {
    TestRng rng(5150);
    for (auto [p, k] : {std::pair<int64_t, int>{2, 1}, {2, 2}, {3, 2}, {5, 1}}) {
        auto f = FieldConfig::make(p, k);
        for (int rep = 0; rep < 30; ++rep) {
            const MPoly g = random_poly(rng, f, 3, 7, 5);
            CHECK(parse_poly(poly_string(g), f, 3) == g);
        }
    }
}

TEST_CASE("points and matrices") {
    auto f4 = FieldConfig::make(2, 2);
    const std::vector<Fq> pt = {Fq::zero(f4), element_at(f4, 2), Fq::one(f4)};
    CHECK(point_string(pt) == "(0 : a : 1)");
    CHECK(parse_point(point_string(pt), f4) == pt);

    const std::vector<std::vector<Fq>> m = {{Fq::one(f4), element_at(f4, 3)}, {Fq::zero(f4), Fq::one(f4)}};
    CHECK(matrix_string(m) == "[[1, a+1], [0, 1]]");
    CHECK(parse_matrix(matrix_string(m), f4) == m);
    CHECK_THROWS_AS(parse_point("0 : 1", f4), ParseError);
}
