#include <doctest.h>

#include <sstream>

#include "koenigs/models.hpp"
#include "koenigs/semiflow.hpp"

using namespace koenigs;

namespace {

SemigroupSpec psi_star() {
    return generator_semigroup(cot_generator(), {Region::Kind::UpperHalfPlane}, two_log_cos());
}

}  // namespace

TEST_CASE("flow of G_* satisfies the Abel identity of h_*") {
    const HoloMap hs = two_log_cos();
    const cplx w0(0.2, 0.8);
    for (double t : {0.25, 1.0}) {
        const cplx w = flow(psi_star(), w0, t);
        CHECK(std::abs(eval(hs, w) - eval(hs, w0) - t) < 1e-6);
    }
    CHECK(std::abs(flow(psi_star(), flow(psi_star(), w0, 0.4), 0.6) - flow(psi_star(), w0, 1.0)) < 1e-7);
}

TEST_CASE("flow map derivative from the variational equation") {
    const HoloMap m = flow_map(psi_star(), 0.5);
    const cplx w(0.1, 0.6);
    const double h = 1e-5;
    const cplx fd = (eval(m, w + h) - eval(m, w - h)) / (2 * h);
    CHECK(std::abs(deriv(m, w) - fd) < 1e-5);
}

TEST_CASE("trajectories leaving the domain are reported") {
    const SemigroupSpec s = generator_semigroup(constant(1.0), {Region::Kind::Disc});
    CHECK_THROWS_AS(flow(s, 0.5, 1.0), Error);
    CHECK(std::abs(flow(s, 0.5, 0.3) - 0.8) < 1e-10);
}

TEST_CASE("semigroups given by a Koenigs map") {
    const ModelExample ex = ex_non_non();
    const SemigroupSpec s = koenigs_semigroup(make_abel_solution(ex.h, ex.omega));
    const cplx z(0.3, -0.2);
    CHECK(std::abs(eval(ex.h, flow(s, z, 0.7)) - eval(ex.h, z) - 0.7) < 1e-9);
}

TEST_CASE("lifted generators") {
    Mat2 m;
    m << 1, 1, -1, 1;  // p = (1 + z)/(1 - z)
    const HoloMap p = mobius(m, {Region::Kind::Disc});
    const LiftedGenerators g = lift_semigroup(p);
    for (cplx w : {cplx(0.3, 0.5), cplx(-0.1, 1.2)}) CHECK(std::abs(eval(g.half, w) - eval(cot_generator(), w)) < 1e-12);
    const PeriodicityReport pr = periodicity_constant(p);
    CHECK(std::abs(pr.constant - cplx(0, -2 * kPi)) < 1e-12);
    CHECK(pr.discrepancy < 1e-9);
    CHECK_THROWS_AS(lift_semigroup(constant(-1.0)), Error);
}

TEST_CASE("S value of a lifted semigroup") {
    const CentralizerConstant c = flow_s_value(cot_generator(), 2.0, ex_z_non_abelian_domain());
    CHECK(std::abs(c.value - cplx(0, 1 / kPi)) < 1e-8);
    CHECK_THROWS_AS(flow_s_value(identity(), 1.0, ex_z_non_abelian_domain()), Error);
}

TEST_CASE("trajectory CSV") {
    std::ostringstream os;
    write_trajectory_csv(os, flow_trajectory(psi_star(), cplx(0, 1), 0.5));
    CHECK(os.str().rfind("t,re_z,im_z\n", 0) == 0);
}
