#include <doctest.h>

#include "koenigs/centralizer.hpp"
#include "koenigs/models.hpp"

using namespace koenigs;

TEST_CASE("commutation check") {
    const ModelExample ex = ex_non_non();
    CHECK(commutes(ex.phi, ex.t_map(cplx(0, 1)), 30).commute);
    const HoloMap a = cayley_conjugate_affine(2.0, 0.0), b = cayley_conjugate_affine(1.0, 1.0);
    const CommuteReport r = commutes(a, b, 30);
    CHECK_FALSE(r.commute);
    CHECK(r.residual > 1e-3);
}

TEST_CASE("t_map") {
    const ModelExample ex = ex_non_non();
    const AbelSolution h = make_abel_solution(ex.h, ex.omega);
    const cplx z(0.2, 0.1);
    CHECK(eval(t_map(h, 0.0), z) == z);
    CHECK(std::abs(eval(ex.h, eval(t_map(h, cplx(1, 1)), z)) - eval(ex.h, z) - cplx(1, 1)) < 1e-10);
    CHECK_THROWS_AS(t_map(h, 0.5), Error);
}

TEST_CASE("s_map cross-checks the constructed constant") {
    const ModelExample ex = ex_non_non();
    const CentralizerConstant c = s_map(ex.phi, ex.t_map(cplx(2, 1)), classify_type(ex.phi));
    REQUIRE(c.crossCheckSpread.has_value());
    CHECK(std::abs(c.value - cplx(2, 1)) < 1e-2);
}

TEST_CASE("representation on the punctured disc for positive step") {
    const ModelExample ex = ex_parab_autom();
    const HoloMap g = identity() + constant(cplx(0, 1)) + cplx(0.05) * exp_periodic();
    const PHSRepresentation rep = phs_representation(ex.phi, conjugate(ex.h, g));
    CHECK(std::abs(rep.F0 - cplx(0, 1)) < 1e-10);
    CHECK(rep.minImag >= -1e-8);
}

TEST_CASE("embeddability verdicts") {
    const EmbeddabilityVerdict nn = embeddable_verdict(ex_non_non().phi, 0.5, 0.3);
    CHECK(nn.verdict == Verdict::NotEmbeddable);
    CHECK(nn.gapFound);
    CHECK(embeddable_verdict(ex_z_non_abelian().phi, 0.5, 0.3).verdict == Verdict::Embeddable);
    // a sector wide enough to contain the members it leaves the question open
    const EmbeddabilityVerdict wide = embeddable_verdict(ex_non_non().phi, 0.5, 1.6);
    CHECK(wide.verdict == Verdict::Inconclusive);
    CHECK_FALSE(wide.gapFound);
    const EmbeddabilityVerdict hyp = embeddable_verdict(build_reciprocal_domain({}), 0.5, 0.3);
    CHECK(hyp.verdict == Verdict::NotEmbeddable);
    CHECK(hyp.method == EmbedMethod::HyperbolicDichotomy);
}

TEST_CASE("second angular derivative of a parabolic Mobius map") {
    // w -> w + 1 + i on H; second angular derivative at tau = 1 is known in closed form via s = 2
    const HoloMap phi = cayley_conjugate_affine(1.0, cplx(1, 1));
    const HoloMap psi = compose(phi, phi);
    const SecondDerivRelation r = second_deriv_relation(phi, psi, 1.0);
    CHECK(std::abs(r.s - 2.0) < 1e-4);
    CHECK(r.relationResidual < 1e-4);
}
