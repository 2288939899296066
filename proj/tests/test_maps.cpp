#include <doctest.h>

#include "koenigs/maps.hpp"
#include "koenigs/models.hpp"

using namespace koenigs;

namespace {

cplx finite_difference(const HoloMap& m, cplx z) {
    const double h = 1e-6;
    return (eval(m, z + h) - eval(m, z - h)) / (2 * h);
}

}  // namespace

TEST_CASE("Cayley transform and its inverse") {
    CHECK(std::abs(eval(cayley(), 0.0) - cplx(0, 1)) < 1e-15);
    const HoloMap round = compose(inverse_cayley(), cayley());
    for (cplx z : disc_grid(20, 0.95, 3)) CHECK(std::abs(eval(round, z) - z) < 1e-12);
}

TEST_CASE("closed-form derivatives agree with finite differences") {
    const std::pair<HoloMap, cplx> cases[] = {
        {two_log_cos(), {0.3, 0.7}},  {cot_generator(), {-0.2, 0.4}}, {comb_slits(), {0.1, 0.8}},
        {step_corner(), {-0.4, 0.6}}, {cayley(), {0.2, -0.3}},        {exp_periodic(), {0.4, 0.2}},
        {power(0.5), {0.3, 0.9}},     {compose(comb_slits(), cayley()), {0.1, 0.2}},
    };
    for (const auto& [m, z] : cases) {
        const cplx d = deriv(m, z), fd = finite_difference(m, z);
        CHECK(std::abs(d - fd) < 1e-6 * std::max(1.0, std::abs(d)));
    }
}

TEST_CASE("2 log cos satisfies exp h = cos^2") {
    for (cplx w : {cplx(0.3, 0.5), cplx(-0.45, 0.1), cplx(0.9, 2.0)}) {
        const cplx c = std::cos(kPi * w);
        CHECK(std::abs(std::exp(eval(two_log_cos(), w)) - c * c) < 1e-12 * std::max(1.0, std::norm(c)));
    }
}

TEST_CASE("Newton inversion") {
    const HoloMap F = comb_slits();
    for (cplx w : {cplx(0.2, 0.3), cplx(-1.3, 1.1), cplx(2.2, 0.05)}) {
        BranchContext ctx;
        ctx.seed = widen<long double>(w + cplx(0.05, 0.02));
        const cplx back = invert<double>(F, eval(F, w), ctx);
        CHECK(std::abs(back - w) < 1e-10);
    }
}

TEST_CASE("model maps satisfy Abel's equation") {
    const auto grid = disc_grid(40, 0.9, 9);
    for (const ModelExample& ex : {ex_parab_autom(), ex_non_non(), ex_z_non_abelian(), strip_model(1.0)}) {
        double r = 0;
        for (cplx z : grid) r = std::max(r, std::abs(eval(ex.h, eval(ex.phi, z)) - eval(ex.h, z) - 1.0));
        CHECK_MESSAGE(r < 1e-9, ex.id << " residual " << r);
    }
    CHECK(std::abs(eval(ex_non_non().h, 0.0)) < 1e-12);
}

TEST_CASE("model map rejects shifts outside the semigroup") {
    const ModelExample ex = ex_non_non();
    CHECK_THROWS_AS(ex.t_map(0.5), Error);
    CHECK_NOTHROW(ex.t_map(cplx(2, -1)));
}

TEST_CASE("angular derivative of a hyperbolic Mobius map") {
    const HoloMap phi = cayley_conjugate_affine(2.0, 0.0);  // w -> 2w: multiplier 1/2 at tau = 1
    const Extrapolated a = angular_derivative(phi, 1.0);
    CHECK(std::abs(a.value - 0.5) < 1e-8);
    CHECK(a.error < 1e-6);
}

TEST_CASE("arithmetic nodes") {
    const HoloMap g = identity() + constant(cplx(0, 1)) + cplx(0.05) * exp_periodic();
    const cplx w(0.3, 0.4);
    CHECK(std::abs(eval(g, w) - (w + cplx(0, 1) + 0.05 * exp2pi(w))) < 1e-15);
    CHECK(std::abs(deriv(g, w) - (1.0 + 0.05 * cplx(0, 2 * kPi) * exp2pi(w))) < 1e-13);
}

TEST_CASE("points outside the domain are rejected") {
    CHECK_THROWS_AS(eval(cayley(), 1.5), Error);
    CHECK(as_mobius(cayley_conjugate_affine(1.0, 1.0)).has_value());
    CHECK_FALSE(as_mobius(two_log_cos()).has_value());
}
