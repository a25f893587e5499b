#include "doctest.h"

#include <array>

#include "helpers.hpp"
#include "onepoint/poly.hpp"
#include "onepoint/textio.hpp"

using namespace onepoint;
using onepoint::testing::TestRng;
using onepoint::testing::random_element;
using onepoint::testing::random_poly;

namespace {
MPoly P(const char* s, const FieldPtr& f, int nvars) { return parse_poly(s, f, nvars); }
}

TEST_CASE("ring arithmetic") {
    auto f2 = FieldConfig::make(2, 1);
    auto f3 = FieldConfig::make(3, 1);

    CHECK((P("z0+z1", f2, 2) + P("z0+z1", f2, 2)).is_zero());
    CHECK(P("z0+z1", f2, 2).pow(2) == P("z0^2+z1^2", f2, 2));
    CHECK(P("z0+z1", f3, 2) * P("z0+2*z1", f3, 2) == P("z0^2+2*z1^2", f3, 2));

    CHECK_THROWS_AS(P("z0", f2, 2) + P("z0", f2, 3), MixedRingsError);
    CHECK_THROWS_AS(P("z0", f2, 2) * P("z0", f3, 2), MixedRingsError);
}

TEST_CASE("evaluation") {
    auto f2 = FieldConfig::make(2, 1);
    const Fq z = Fq::zero(f2), o = Fq::one(f2);
    CHECK(P("z0*z1", f2, 2).eval(std::array{o, z}).is_zero());
    CHECK(P("z0^2+z0*z1+z1^2", f2, 2).eval(std::array{z, o}).is_one());
    CHECK(P("z0^3+z1^3", f2, 2).eval(std::array{o, o}).is_zero());
}

TEST_CASE("evaluation embeds the point into an extension") {
    auto f2 = FieldConfig::make(2, 1);
    auto f4 = FieldConfig::make(2, 2);
    const Fq w = element_at(f4, 2);
    // z0^2+z0+1 at the primitive cube root of unity vanishes
    CHECK(P("z0^2+z0+1", f2, 1).eval(std::array{w}).is_zero());
}

TEST_CASE("exact division") {
    auto f2 = FieldConfig::make(2, 1);
    const MPoly f = parse_poly("t^4+t", f2, 1, VarMode::T);
    const MPoly g = parse_poly("t^2+t+1", f2, 1, VarMode::T);
    auto q = exact_div(f, g);
    REQUIRE(q.has_value());
    CHECK(*q == parse_poly("t^2+t", f2, 1, VarMode::T));

    CHECK(*exact_div(f, MPoly::one(f2, 1)) == f);
    CHECK(!exact_div(P("z0", f2, 2), P("z1", f2, 2)).has_value());
    CHECK_THROWS_AS(exact_div(f, MPoly::zero(f2, 1)), DivisorZeroError);
}

TEST_CASE("derivatives") {
    auto f2 = FieldConfig::make(2, 1);
    auto f3 = FieldConfig::make(3, 1);
    CHECK(P("z0^2", f2, 2).derivative(0).is_zero());
    CHECK(P("z0^3", f3, 1).derivative(0).is_zero());
    CHECK(P("z0^3+z1^3", f2, 2).derivative(0) == P("z0^2", f2, 2));
    CHECK(P("z0*z1^2", f2, 2).derivative(1).is_zero());
}

TEST_CASE("substitution") {
    auto f2 = FieldConfig::make(2, 1);
    const MPoly f = P("z0^2+z0*z1+z1^2", f2, 2);
    const std::vector<MPoly> id = {P("z0", f2, 2), P("z1", f2, 2)};
    CHECK(f.substitute(id) == f);
    CHECK(P("z0*z1", f2, 2).substitute({P("z1", f2, 2), P("z0", f2, 2)}) == P("z0*z1", f2, 2));
    CHECK(P("z0^2+z1^2", f2, 2).substitute({P("z0+z1", f2, 2), P("z1", f2, 2)}) == P("z0^2", f2, 2));
}

TEST_CASE("homogeneous degree") {
    auto f2 = FieldConfig::make(2, 1);
    CHECK(*P("z0*z1^2*z2^4", f2, 3).homogeneous_degree() == 7);  // 1 + p + p^2 at p = 2
    CHECK(!P("z0+z1^2", f2, 2).homogeneous_degree().has_value());
    CHECK(*P("1", f2, 2).homogeneous_degree() == 0);
    CHECK_THROWS_AS(MPoly::zero(f2, 2).homogeneous_degree(), ZeroPolynomialError);
}

TEST_CASE("univariate view") {
    auto f2 = FieldConfig::make(2, 1);
    const auto v = up_view(P("z0^2+z1*z0+z1^2", f2, 2), 0);
    REQUIRE(v.degree() == 2);
    CHECK(v.coeffs[0] == P("z1^2", f2, 2));
    CHECK(v.coeffs[1] == P("z1", f2, 2));
    CHECK(v.coeffs[2] == P("1", f2, 2));

    const auto w = up_view(P("z1^3", f2, 2), 0);
    REQUIRE(w.degree() == 0);
    CHECK(w.coeffs[0] == P("z1^3", f2, 2));

    CHECK(up_view(MPoly::zero(f2, 2), 0).coeffs.empty());
}

TEST_CASE("jacobian determinant") {
    auto f2 = FieldConfig::make(2, 1);
    const std::vector<MPoly> fs = {P("z0^3+z1^3", f2, 2), P("z0*z1^2", f2, 2)};
    const std::vector<int> vars = {0, 1};
    CHECK(jacobian_det(fs, vars) == P("z1^4", f2, 2));

    const std::vector<MPoly> id = {P("z0", f2, 2), P("z1", f2, 2)};
    CHECK(jacobian_det(id, vars) == MPoly::one(f2, 2));

    const std::vector<MPoly> frob = {P("z0^2", f2, 1)};
    const std::vector<int> v0 = {0};
    CHECK(jacobian_det(frob, v0).is_zero());
}

TEST_CASE("p-th power part") {
    auto f2 = FieldConfig::make(2, 1);
    auto [ok, root] = pth_power_part(P("z0^2+z1^2", f2, 2));
    CHECK(ok);
    CHECK(*root == P("z0+z1", f2, 2));

    CHECK(!pth_power_part(P("z0+z1", f2, 2)).first);

    auto f4 = FieldConfig::make(2, 2);
    auto [ok4, root4] = pth_power_part(P("a*z0^2", f4, 1));
    CHECK(ok4);
    CHECK(*root4 == P("(a+1)*z0", f4, 1));  // (a+1)^2 = a in F_4
}

TEST_CASE("degree cap rejects blowups") {
    auto f2 = FieldConfig::make(2, 1);
    CHECK_THROWS_AS(P("z0^9+1", f2, 1).pow(600), DegreeTooLargeError);
}

TEST_CASE("property: exact_div inverts multiplication") {
    TestRng rng(411);
    for (auto [p, k] : {std::pair<int64_t, int>{2, 1}, {3, 1}, {2, 2}, {3, 2}}) {
        auto f = FieldConfig::make(p, k);
        for (int rep = 0; rep < 40; ++rep) {
            MPoly a = random_poly(rng, f, 2, 6, 3);
            MPoly b = random_poly(rng, f, 2, 6, 3);
            if (b.is_zero()) continue;
            auto q = exact_div(a * b, b);
            REQUIRE(q.has_value());
            CHECK(*q == a);
        }
    }
}

TEST_CASE("property: substitution commutes with evaluation") {
    TestRng rng(2025);
    auto f3 = FieldConfig::make(3, 1);
    for (int rep = 0; rep < 50; ++rep) {
        MPoly f = random_poly(rng, f3, 2, 5, 3);
        std::vector<MPoly> imgs = {random_poly(rng, f3, 2, 4, 2), random_poly(rng, f3, 2, 4, 2)};
        std::array<Fq, 2> x = {random_element(rng, f3), random_element(rng, f3)};
        std::array<Fq, 2> inner = {imgs[0].eval(x), imgs[1].eval(x)};
        CHECK(f.substitute(imgs).eval(x) == f.eval(inner));
    }
}

TEST_CASE("property: Leibniz rule") {
    TestRng rng(77);
    auto f5 = FieldConfig::make(5, 1);
    for (int rep = 0; rep < 40; ++rep) {
        MPoly f = random_poly(rng, f5, 2, 5, 3);
        MPoly g = random_poly(rng, f5, 2, 5, 3);
        for (int v = 0; v < 2; ++v)
            CHECK((f * g).derivative(v) == f.derivative(v) * g + f * g.derivative(v));
    }
}

TEST_CASE("property: univariate view reassembles") {
    TestRng rng(8);
    auto f4 = FieldConfig::make(2, 2);
    for (int rep = 0; rep < 40; ++rep) {
        MPoly f = random_poly(rng, f4, 3, 6, 4);
        for (int v = 0; v < 3; ++v) CHECK(up_view(f, v).reassemble(f4, 3) == f);
    }
}

TEST_CASE("property: jacobian chain rule for affine maps") {
    TestRng rng(99);
    auto f3 = FieldConfig::make(3, 1);
    const std::vector<int> vars = {0, 1};
    for (int rep = 0; rep < 30; ++rep) {
        // affine maps x -> Ax + b in two variables
        auto affine = [&]() {
            std::vector<MPoly> m;
            for (int i = 0; i < 2; ++i) {
                MPoly row(f3, 2);
                for (int j = 0; j < 2; ++j)
                    row = row + MPoly::variable(f3, 2, j).scaled(random_element(rng, f3));
                row = row + MPoly::constant(f3, 2, random_element(rng, f3));
                m.push_back(row);
            }
            return m;
        };
        const std::vector<MPoly> outer = affine(), inner = affine();
        std::vector<MPoly> comp;
        for (const MPoly& c : outer) comp.push_back(c.substitute(inner));
        const MPoly lhs = jacobian_det(comp, vars);
        const MPoly rhs = jacobian_det(outer, vars).substitute(inner) * jacobian_det(inner, vars);
        CHECK(lhs == rhs);
    }
}
