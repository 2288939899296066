#include "koenigs/models.hpp"

namespace koenigs {

namespace {

ModelExample finish(std::string id, HoloMap h, KoenigsDomain omega) {
    ModelExample ex;
    ex.id = std::move(id);
    ex.h = std::move(h);
    omega.validate();
    ex.omega = std::make_shared<const KoenigsDomain>(std::move(omega));
    ex.phi = model_map(ex.h, ex.omega, 1.0);
    ex.tau = 1.0;
    return ex;
}

}  // namespace

KoenigsDomain ex_non_non_domain() {
    KoenigsDomain d;
    d.base = BaseSpace::plane();
    d.blockers.push_back(SlitFamily{0, 1, AffineForm::constant(-kInf), AffineForm{-1, -1}, IndexSet::integers()});
    return d;
}

KoenigsDomain ex_z_non_abelian_domain() {
    KoenigsDomain d;
    d.base = BaseSpace::upper();
    d.blockers.push_back(LeftHalfStrip{0, 0, 1});
    return d;
}

KoenigsDomain ex_again_domain() {
    KoenigsDomain d;
    d.base = BaseSpace::upper();
    d.blockers.push_back(SlitFamily{0, -1, AffineForm::constant(0), AffineForm::constant(1), IndexSet::naturals()});
    return d;
}

KoenigsDomain ex_a_neq_astar_domain(int samples) {
    if (samples < 2) throw Error(ErrorCode::UnsupportedInput, "need at least two curve samples");
    const HoloMap hs = two_log_cos();
    const cplx level(0, 2 * kPi / 3);
    SampledCurve g;
    g.shift = -1.0;
    g.copies = IndexSet::naturals();
    g.tailRule = "x -> -inf: tends to the boundary zero of cos(pi w) at Re w = -1/2";
    BranchContext ctx;
    // for Im w large h_*(w) ~ -2 pi i w - 2 ln 2, which locates the x = 0 endpoint
    ctx.seed = Cx<long double>(-1.0L / 3, std::log(2.0L) / pi_v<long double>);
    // x = -X u^2 spreads samples along the curve; at x = -36 it sits within 1e-8 of the real axis
    constexpr double X = 36;
    for (int j = 0; j < samples; ++j) {
        const double u = static_cast<double>(j) / (samples - 1);
        const double x = -X * u * u;
        const cplx w = invert<double>(hs, level + x, ctx);
        ctx.seed = widen<long double>(w);
        g.points.push_back(w);
    }
    KoenigsDomain d;
    d.base = BaseSpace::upper();
    d.blockers.push_back(std::move(g));
    return d;
}

ModelExample ex_parab_autom() { return finish("ex-parab-autom", cayley(), KoenigsDomain{BaseSpace::upper(), {}}); }

ModelExample ex_non_non() {
    const HoloMap F = comb_slits();
    const cplx wstar = invert(F, cplx(0, 0));
    // A maps i to wstar and fixes infinity, so h(0) = 0 and the Denjoy-Wolff point stays at 1
    const HoloMap h = compose(F, compose(affine(wstar.imag(), wstar.real()), cayley()));
    return finish("ex-non-non", h, ex_non_non_domain());
}

ModelExample ex_z_non_abelian() {
    return finish("ex-z-non-abelian", compose(step_corner(), cayley()), ex_z_non_abelian_domain());
}

ModelExample strip_model(double width) {
    if (!(width > 0)) throw Error(ErrorCode::InvalidDomain, "strip width must be positive");
    const HoloMap h = compose(affine(width / kPi, 0.0), compose(atom(AtomKind::Log), cayley()));
    return finish("strip", h, KoenigsDomain{BaseSpace::strip(0, width), {}});
}

HoloMap conjugate(const HoloMap& h, const HoloMap& g) { return compose(inverse(h), compose(g, h)); }

}  // namespace koenigs
