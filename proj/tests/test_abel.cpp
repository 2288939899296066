#include <doctest.h>

#include <sstream>

#include "koenigs/abel.hpp"
#include "koenigs/models.hpp"

using namespace koenigs;

TEST_CASE("parabolic ratio recovers the translation length") {
    const ModelExample ex = ex_non_non();
    const Classification cls = classify_type(ex.phi);
    for (cplx b : {cplx(0, 1), cplx(2, 1)}) {
        const CentralizerConstant c = c_constant(ex.phi, ex.t_map(b), 1.0, cls);
        CHECK(c.method == ConstantMethod::ParabolicRatio);
        CHECK(std::abs(c.value - b) <= 3 * c.errorEstimate);
        CHECK(std::abs(c.value - b) < 1e-2);
    }
}

TEST_CASE("hyperbolic log ratio on a strip") {
    const ModelExample ex = strip_model(1.0);
    const Classification cls = classify_type(ex.phi);
    const CentralizerConstant c = c_constant(ex.phi, ex.t_map(2.0), cls.tau, cls);
    CHECK(c.method == ConstantMethod::HyperbolicLogRatio);
    CHECK(std::abs(c.value - 2.0) < 1e-5);
}

TEST_CASE("elliptic input is rejected") {
    Mat2 m;
    m << 0.5, 0, 0, 1;
    const HoloMap f = mobius(m, {Region::Kind::Disc});
    CHECK_THROWS_AS(c_constant(f, f, 0.0, mobius_classify(m)), Error);
}

TEST_CASE("Valiron ratio tends to 1") {
    const ModelExample ex = ex_z_non_abelian();
    const auto r = valiron_ratio(ex.h, ex.phi, 1.0);
    REQUIRE(r.size() == 5);
    CHECK(std::abs(r.back() - 1.0) < 1e-4);
}

TEST_CASE("Schroder solution of a Mobius map with fixed points 0 and 5/3") {
    Mat2 m;
    m << 0.5, 0, -0.3, 1;  // z / 2 / (1 - 0.3 z)
    const HoloMap f = mobius(m, {Region::Kind::Disc});
    const SchroderSolution s = koenigs_elliptic(f);
    CHECK(std::abs(s.lambda - 0.5) < 1e-15);
    // z -> z / (1 - 0.6 z) sends 5/3 to infinity and conjugates f to z / 2
    for (cplx z : disc_grid(10, 0.9, 2)) CHECK(std::abs(eval(s.h0, z) - z / (1.0 - 0.6 * z)) < 1e-9);
    CHECK(std::abs(deriv(s.h0, 0.0) - 1.0) < 1e-9);
    Mat2 rot;
    rot << std::polar(1.0, 0.3), 0, 0, 1;
    CHECK_THROWS_AS(koenigs_elliptic(mobius(rot, {Region::Kind::Disc})), Error);
}

TEST_CASE("simultaneous linearization of translations") {
    const ModelExample ex = ex_parab_autom();
    // real shift: |f'(0)| = 1
    const SimultaneousResult r = simultaneous_abel_phs(ex.phi, ex.t_map(0.5));
    CHECK(r.translation);
    CHECK(std::abs(r.c.value - 0.5) < 1e-6);
    CHECK(r.residualPsi < 1e-8);
    // shift 2i: f(zeta) = e^{-4 pi} zeta
    const SimultaneousResult s = simultaneous_abel_phs(ex.phi, ex.t_map(cplx(0, 2)));
    CHECK_FALSE(s.translation);
    CHECK(std::abs(s.fprime0 - std::exp(-4 * kPi)) < 1e-12);
    CHECK(std::abs(s.c.value - cplx(0, 2)) < 1e-6);
    CHECK(s.residualPhi < 1e-8);
    CHECK(s.residualPsi < 1e-8);
}

TEST_CASE("classification from an Abel solution") {
    const ModelExample s = strip_model(0.5);
    const Classification c = classify_from_abel_solution(make_abel_solution(s.h, s.omega));
    CHECK(c.type == MapType::Hyperbolic);
    CHECK(std::abs(c.multiplier - std::exp(-2 * kPi)) < 1e-12);
    const ModelExample z = ex_z_non_abelian();
    CHECK(classify_from_abel_solution(make_abel_solution(z.h, z.omega)).type == MapType::ParabolicPositiveStep);
}

TEST_CASE("Abel table CSV") {
    const ModelExample ex = ex_parab_autom();
    std::ostringstream os;
    write_table_csv(os, make_abel_solution(ex.h, ex.omega), {0.0, cplx(0.5, 0)});
    CHECK(os.str().rfind("re_z,im_z,re_h,im_h\n", 0) == 0);
    CHECK(abel_residual(ex.h, ex.phi, disc_grid(20, 0.9, 1)) < 1e-12);
}
