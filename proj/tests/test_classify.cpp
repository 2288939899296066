#include <doctest.h>

#include "koenigs/classify.hpp"
#include "koenigs/models.hpp"

using namespace koenigs;

TEST_CASE("Mobius classification") {
    SUBCASE("hyperbolic w -> 2w") {
        const Classification c = classify_type(cayley_conjugate_affine(2.0, 0.0));
        CHECK(c.type == MapType::Hyperbolic);
        CHECK(std::abs(c.tau - 1.0) < 1e-12);
        CHECK(std::abs(c.multiplier - 0.5) < 1e-12);
        CHECK(c.method == ClassMethod::MobiusExact);
    }
    SUBCASE("elliptic z -> z/2") {
        Mat2 m;
        m << 0.5, 0, 0, 1;
        const Classification c = mobius_classify(m);
        CHECK(c.type == MapType::Elliptic);
        CHECK(std::abs(c.tau) < 1e-12);
        CHECK(std::abs(c.multiplier - 0.5) < 1e-12);
    }
    SUBCASE("elliptic automorphism") {
        Mat2 m;
        m << std::polar(1.0, 0.7), 0, 0, 1;
        CHECK(mobius_classify(m).type == MapType::EllipticAutomorphism);
    }
    SUBCASE("parabolic automorphism w -> w + 1") {
        const Classification c = classify_type(cayley_conjugate_affine(1.0, 1.0));
        CHECK(c.type == MapType::ParabolicPositiveStep);
        CHECK(c.automorphism);
        CHECK(std::abs(c.tau - 1.0) < 1e-12);
    }
    SUBCASE("parabolic non-automorphism w -> w + 1 + i has zero step") {
        const Classification c = classify_type(cayley_conjugate_affine(1.0, cplx(1, 1)));
        CHECK(c.type == MapType::ParabolicZeroStep);
        CHECK_FALSE(c.automorphism);
    }
    SUBCASE("identity") {
        CHECK(mobius_classify(Mat2::Identity()).type == MapType::Identity);
    }
}

TEST_CASE("hyperbolic step from orbits agrees with the exact answer") {
    const StepEstimate pos = hyperbolic_step(cayley_conjugate_affine(1.0, 1.0), 0.0, 2000);
    CHECK(pos.verdict == StepVerdict::PositiveStep);
    const StepEstimate zero = hyperbolic_step(cayley_conjugate_affine(1.0, cplx(0, 1)), 0.0, 10000);
    CHECK(zero.verdict == StepVerdict::ZeroStep);
    CHECK(zero.decreasing);
}

TEST_CASE("Denjoy-Wolff point from orbits") {
    const DWEstimate dw = denjoy_wolff(cayley_conjugate_affine(3.0, 0.5), 0.2);
    CHECK(dw.boundary);
    CHECK(std::abs(dw.tau - 1.0) < 1e-6);
}

TEST_CASE("pseudo-hyperbolic distance is symmetric and Mobius invariant") {
    const Cx<long double> a(0.3L, 0.1L), b(-0.2L, 0.5L);
    CHECK(std::abs(pseudo_hyperbolic(a, b) - pseudo_hyperbolic(b, a)) < 1e-15L);
    const HoloMap T = cayley_conjugate_affine(2.0, 0.3);
    const long double d2 = pseudo_hyperbolic(eval_ld(T, a), eval_ld(T, b));
    CHECK(std::abs(d2 - pseudo_hyperbolic(a, b)) < 1e-12L);
}

TEST_CASE("model maps classify from their base") {
    CHECK(classify_type(ex_non_non().phi).type == MapType::ParabolicZeroStep);
    const Classification z = classify_type(ex_z_non_abelian().phi);
    CHECK(z.type == MapType::ParabolicPositiveStep);
    CHECK_FALSE(z.lowerBase);
    const Classification s = classify_type(strip_model(2.0).phi);
    CHECK(s.type == MapType::Hyperbolic);
    CHECK(std::abs(s.multiplier - std::exp(-kPi / 2)) < 1e-12);
    CHECK(std::abs(s.tau - 1.0) < 1e-6);
}
