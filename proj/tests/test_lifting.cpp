#include <doctest.h>

#include "koenigs/lifting.hpp"

using namespace koenigs;

TEST_CASE("non-periodic maps are rejected") {
    CHECK_THROWS_AS(make_periodic(affine(2.0, 0.0)), Error);
    CHECK_NOTHROW(make_periodic(affine(1.0, cplx(0.3, 1))));
}

TEST_CASE("push of a translation is a rotation-dilation") {
    const PushedMap f = push_commuting(make_periodic(affine(1.0, cplx(0.25, 1))));
    const cplx expect = std::exp(cplx(0, 2 * kPi) * cplx(0.25, 1));
    CHECK(std::abs(f.fprime0 - expect) < 1e-12);
    const cplx zeta(0.3, -0.2);
    CHECK(std::abs(eval(f.f, zeta) - expect * zeta) < 1e-12);
}

TEST_CASE("lift of push reproduces g") {
    const HoloMap g = identity() + constant(cplx(0, 0.5)) + cplx(0.05) * exp_periodic();
    const PushedMap f = push_commuting(make_periodic(g));
    const LiftedMap F = lift_univalent(f.f);
    for (cplx w : halfplane_grid(30)) {
        CHECK(std::abs(eval(F.F, w) - eval(g, w)) < 1e-8);
        CHECK(std::abs(eval(F.F, w + 1.0) - eval(F.F, w) - 1.0) < 1e-9);
    }
    CHECK(conjugacy_residual(f.f, F.F, halfplane_grid(30)) < 1e-8);
}

TEST_CASE("winding number detects non-univalent maps") {
    CHECK(std::abs(winding_number(power(2.0), 0.5) - 2.0) < 1e-9);
    CHECK(std::abs(winding_number(affine(0.3, 0.0), 0.5) - 1.0) < 1e-9);
    CHECK_THROWS_AS(lift_univalent(power(2.0)), Error);
}

TEST_CASE("projection of a periodic map to the punctured disc") {
    const HoloMap F = cplx(0.1) * compose(exp_periodic(), identity()) + constant(2.0);
    const HoloMap f = project_periodic(F, cplx(0, 1));
    const cplx w(0.2, 0.7);
    CHECK(std::abs(eval(f, exp2pi(w)) - eval(F, w)) < 1e-12);
}
