#include "doctest.h"

#include <array>

#include "helpers.hpp"
#include "onepoint/maps.hpp"
#include "onepoint/textio.hpp"

using namespace onepoint;
using onepoint::testing::TestRng;
using onepoint::testing::random_element;

namespace {
MPoly P(const char* s, const FieldPtr& f, int nvars) { return parse_poly(s, f, nvars); }

int64_t binom(int n, int k) {
    int64_t r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}
}  // namespace

TEST_CASE("abhyankar map reproduces the n = 2 displays") {
    auto f2 = FieldConfig::make(2, 1);
    const ProjMap g2 = abhyankar_map(2, 2, f2);
    CHECK(poly_string(g2.coords[0]) == "z0^7 + z1^7 + z2^7");
    CHECK(poly_string(g2.coords[1]) == "z0^3*z1^4 + z0^3*z2^4 + z1^3*z2^4");
    CHECK(poly_string(g2.coords[2]) == "z0*z1^2*z2^4");

    auto f3 = FieldConfig::make(3, 1);
    const ProjMap g3 = abhyankar_map(2, 3, f3);
    CHECK(poly_string(g3.coords[0]) == "z0^13 + z1^13 + z2^13");
    CHECK(poly_string(g3.coords[1]) == "z0^4*z1^9 + z0^4*z2^9 + z1^4*z2^9");
    CHECK(poly_string(g3.coords[2]) == "z0*z1^3*z2^9");
}

TEST_CASE("abhyankar map for n = 1") {
    auto f2 = FieldConfig::make(2, 1);
    const ProjMap g = abhyankar_map(1, 2, f2);
    CHECK(g.coords[0] == P("z0^3+z1^3", f2, 2));
    CHECK(g.coords[1] == P("z0*z1^2", f2, 2));
    const std::vector<int> vars = {0, 1};
    CHECK(jacobian_det(g.coords, vars) == P("z1^4", f2, 2));
    CHECK_THROWS_AS(abhyankar_map(0, 2, f2), FormatError);
}

TEST_CASE("abhyankar invariants for n <= 3, p in {2,3}") {
    for (int64_t p : {int64_t(2), int64_t(3)}) {
        auto f = FieldConfig::make(p, 1);
        for (int n = 1; n <= 3; ++n) {
            const ProjMap g = abhyankar_map(n, p, f);
            int64_t expected_degree = 1, ppow = 1;
            for (int i = 0; i < n; ++i) {
                ppow *= p;
                expected_degree += ppow;
            }
            CHECK(g.degree == expected_degree);
            for (int i = 0; i <= n; ++i) {
                CHECK(*g.coords[size_t(i)].homogeneous_degree() == int(expected_degree));
                CHECK(int64_t(g.coords[size_t(i)].num_terms()) == binom(n + 1, i + 1));
            }
            // no common zero over F_{p^2} except the origin
            CHECK(!find_base_point(g, 2).has_value());
            // the jacobian determinant is a nonzero constant times a monomial
            std::vector<int> vars;
            for (int v = 0; v <= n; ++v) vars.push_back(v);
            const MPoly jac = jacobian_det(g.coords, vars);
            CHECK(jac.num_terms() == 1);
        }
    }
}

TEST_CASE("apply") {
    auto f2 = FieldConfig::make(2, 1);
    const ProjMap g = abhyankar_map(1, 2, f2);
    const Fq o = Fq::one(f2), z = Fq::zero(f2);
    CHECK(apply_map(g, {o, o}) == std::vector<Fq>{z, o});
    CHECK(apply_map(g, {o, z}) == std::vector<Fq>{o, z});  // lands in the hyperplane at infinity
    const ProjMap id = ProjMap::identity(f2, 1);
    CHECK(apply_map(id, {o, o}) == std::vector<Fq>{o, o});
}

TEST_CASE("compose") {
    auto f2 = FieldConfig::make(2, 1);
    const ProjMap id = ProjMap::identity(f2, 1);
    const ProjMap sq = ProjMap::make(f2, {P("z0^2", f2, 2), P("z1^2", f2, 2)}, false);
    CHECK(compose(sq, id).coords == sq.coords);
    const ProjMap quad = compose(sq, sq);
    CHECK(quad.coords[0] == P("z0^4", f2, 2));
    CHECK(quad.degree == 4);
    const ProjMap ab = abhyankar_map(1, 2, f2);
    CHECK(compose(sq, ab).degree == 6);
    CHECK(compose(ab, compose(sq, sq)).degree == 12);
}

TEST_CASE("base point search finds genuine base points") {
    auto f2 = FieldConfig::make(2, 1);
    // (z0^2 : z0 z1) vanishes at (0 : 1)
    CHECK_THROWS_AS(ProjMap::make(f2, {P("z0^2", f2, 2), P("z0*z1", f2, 2)}, true), BasePointHitError);
    const ProjMap bad{1, f2, {P("z0^2", f2, 2), P("z0*z1", f2, 2)}, 2};
    auto witness = find_base_point(bad, 1);
    REQUIRE(witness.has_value());
    CHECK((*witness)[0].is_zero());
}

TEST_CASE("coordinate changes") {
    auto f4 = FieldConfig::make(2, 2);
    const Fq a = element_at(f4, 2);
    auto cc = CoordChange::from_matrix(f4, {{Fq::one(f4), a}, {Fq::zero(f4), Fq::one(f4)}});
    REQUIRE(cc.has_value());
    // transform of z0 is z0 + a z1
    CHECK(cc->transform(P("z0", f4, 2)) == P("z0 + a*z1", f4, 2));
    // pullback then evaluation agrees with evaluating the original
    const std::vector<Fq> x = {a, Fq::one(f4)};
    const MPoly cone = P("z0^2+z0*z1+z1^2", f4, 2);
    CHECK(cc->transform(cone).eval(cc->pullback_point(x)) == cone.eval(x));
    CHECK(!CoordChange::from_matrix(f4, {{a, a}, {a, a}}).has_value());
    CHECK(CoordChange::identity(f4, 1).is_identity());
}

TEST_CASE("normalize hyperplanes") {
    auto f2 = FieldConfig::make(2, 1);
    const CoordChange id = normalize_hyperplanes({P("z0", f2, 2), P("z1", f2, 2)});
    CHECK(id.is_identity());

    const CoordChange c = normalize_hyperplanes({P("z0+z1", f2, 2), P("z1", f2, 2)});
    CHECK(c.transform(P("z0+z1", f2, 2)) == P("z0", f2, 2));
    CHECK(c.transform(P("z1", f2, 2)) == P("z1", f2, 2));

    CHECK_THROWS_AS(normalize_hyperplanes({P("z0", f2, 2), P("z0", f2, 2)}), NotInGeneralPositionError);
    CHECK_THROWS_AS(normalize_hyperplanes({P("z0^2", f2, 2), P("z1", f2, 2)}), FormatError);
}

TEST_CASE("good triple validation") {
    auto f2 = FieldConfig::make(2, 1);
    auto f4 = FieldConfig::make(2, 2);
    const MPoly cone = P("z0^2+z0*z1+z1^2", f2, 2);
    const GoodTriple t = GoodTriple::make(1, f2, 0, cone, {Fq::zero(f2), Fq::one(f2)});
    CHECK(!t.cone_is_hyperplane_power());

    // point on the divisor: a primitive cube root of unity
    const Fq w = element_at(f4, 2);
    CHECK_THROWS_AS(GoodTriple::make(1, f4, 0, cone.embedded(f4), {Fq::one(f4), w}), PointOnDivisorError);
    // point on the hyperplane at infinity
    CHECK_THROWS_AS(GoodTriple::make(1, f2, 0, cone, {Fq::one(f2), Fq::zero(f2)}), PointOnDivisorError);
    CHECK_THROWS_AS(GoodTriple::make(1, f2, 0, P("z0^2+z1", f2, 2), {Fq::zero(f2), Fq::one(f2)}), NotHomogeneousError);
    CHECK(GoodTriple::make(1, f2, 0, P("z1^3", f2, 2), {Fq::one(f2), Fq::one(f2)}).cone_is_hyperplane_power());
}

TEST_CASE("step2 conditions (d) and (a) fail as expected") {
    auto f2 = FieldConfig::make(2, 1);
    const GoodTriple t =
        GoodTriple::make(1, f2, 0, P("z0^2+z0*z1+z1^2", f2, 2), {Fq::zero(f2), Fq::one(f2)});
    try {
        step2_map(t);
        FAIL("expected ConditionFailedError");
    } catch (const ConditionFailedError& e) {
        CHECK(e.condition == 'd');
    }

    // degenerate in z0: degree 1 in z0 versus total degree 2
    const GoodTriple ta = GoodTriple::make(1, f2, 0, P("z0*z1+z1^2", f2, 2), {Fq::zero(f2), Fq::one(f2)});
    try {
        step2_map(ta);
        FAIL("expected ConditionFailedError");
    } catch (const ConditionFailedError& e) {
        CHECK(e.condition == 'a');
    }
}

TEST_CASE("step2 succeeds over F_16 after a coordinate change") {
    auto f16 = FieldConfig::make(2, 4);
    const MPoly cone = P("z0^2+z0*z1+z1^2", f16, 2);
    const GoodTriple t = GoodTriple::make(1, f16, 0, cone, {Fq::zero(f16), Fq::one(f16)});

    bool found = false;
    for (int64_t i = 0; i < f16->order() && !found; ++i) {
        for (int64_t j = 0; j < f16->order() && !found; ++j) {
            auto cc = CoordChange::from_matrix(
                f16, {{element_at(f16, i), element_at(f16, j)}, {Fq::zero(f16), Fq::one(f16)}});
            if (!cc) continue;
            try {
                const Step2Result r = step2_map(t, *cc);
                found = true;
                CHECK(r.step_degree == 4);  // p^(deg P)
                CHECK(r.next.index == 1);
                CHECK(*r.map.coords[0].homogeneous_degree() == 4);
                // the transformed cone divides w_0
                const MPoly moved = cc->transform(cone);
                CHECK(exact_div(r.map.coords[0], moved).has_value());
            } catch (const ConditionFailedError&) {
            }
        }
    }
    CHECK(found);
}

TEST_CASE("step2 output shape on a linear cone, n = 2") {
    auto f16 = FieldConfig::make(2, 4);
    const Fq g = element_at(f16, 2);
    const GoodTriple t = GoodTriple::make(2, f16, 0, P("z0+z1+z2", f16, 3), {Fq::one(f16), g, Fq::one(f16)});
    const Step2Result r = step2_map(t);
    CHECK(r.step_degree == 2);
    // w_0 = Q(z0,z1,z2) = z0^2 + (z1+z2) z0, w_1 = z1^2 - z1 z2, w_2 = z2^2
    CHECK(r.map.coords[0] == P("z0^2 + z0*z1 + z0*z2", f16, 3));
    CHECK(r.map.coords[1] == P("z1^2 + z1*z2", f16, 3));
    CHECK(r.map.coords[2] == P("z2^2", f16, 3));
    CHECK(r.r0 == P("z1+z2", f16, 3));
    // containment facts: the cone divides w_0 and z_j divides w_j
    CHECK(exact_div(r.map.coords[0], t.cone).has_value());
    CHECK(exact_div(r.map.coords[1], P("z1", f16, 3)).has_value());
    // next point is the image of the marked point
    CHECK(proj_equal(r.next.point, apply_map(r.map, t.point)));
}

TEST_CASE("property: composition commutes with application") {
    TestRng rng(31337);
    auto f5 = FieldConfig::make(5, 1);
    const ProjMap ab = abhyankar_map(1, 5, f5);
    const ProjMap sq = ProjMap::make(f5, {P("z0^5", f5, 2), P("z1^5", f5, 2)}, false);
    const ProjMap comp = compose(ab, sq);
    for (int rep = 0; rep < 40; ++rep) {
        std::vector<Fq> x = {random_element(rng, f5), random_element(rng, f5)};
        bool zero = x[0].is_zero() && x[1].is_zero();
        if (zero) continue;
        CHECK(proj_equal(apply_map(comp, x), apply_map(ab, apply_map(sq, x))));
    }
}
