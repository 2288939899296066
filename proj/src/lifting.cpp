#include "koenigs/lifting.hpp"

namespace koenigs {

std::vector<cplx> halfplane_grid(int n, double imMin, double imMax) {
    std::vector<cplx> out;
    for (int k = 0; k < n; ++k) {
        // deterministic quasi-random points in [-0.5, 0.5] x [imMin, imMax]
        const double a = std::fmod(0.5 + k * 0.6180339887498949, 1.0) - 0.5;
        const double b = std::fmod(0.5 + k * 0.7548776662466927, 1.0);
        out.emplace_back(a, imMin + (imMax - imMin) * b);
    }
    return out;
}

PeriodicMap make_periodic(const HoloMap& g, double tol) {
    PeriodicMap p{g, 0};
    for (cplx w : halfplane_grid(32, 0.2, 2.0)) {
        const double r = std::abs(eval(g, w + 1.0) - eval(g, w) - 1.0);
        p.verifiedShiftResidual = std::max(p.verifiedShiftResidual, r);
    }
    if (!(p.verifiedShiftResidual < tol))
        throw Error(ErrorCode::NotPeriodic, "g(w+1) - g(w) - 1 = " + std::to_string(p.verifiedShiftResidual));
    return p;
}

namespace {

template <class S>
Cx<S> log_over_2pii(Cx<S> zeta) {
    return std::log(zeta) / Cx<S>(0, 2 * pi_v<S>);
}

class Projected final : public Evaluator {
public:
    Projected(HoloMap F, cplx ref) : F_(std::move(F)), ref_(ref) {}
    std::string name() const override { return "project(" + F_.describe() + ")"; }
    Cx<double> value(Cx<double> z, BranchContext& c) const override { return val<double>(z, c); }
    Cx<long double> value(Cx<long double> z, BranchContext& c) const override { return val<long double>(z, c); }
    Cx<double> derivative(Cx<double> z, BranchContext& c) const override { return der<double>(z, c); }
    Cx<long double> derivative(Cx<long double> z, BranchContext& c) const override { return der<long double>(z, c); }

private:
    template <class S>
    Cx<S> lift(Cx<S> zeta) const {
        const Cx<S> w = log_over_2pii(zeta);
        return w + std::round(static_cast<S>(ref_.real()) - w.real());
    }
    template <class S>
    Cx<S> val(Cx<S> zeta, BranchContext& c) const {
        return eval<S>(F_, lift(zeta), c);
    }
    template <class S>
    Cx<S> der(Cx<S> zeta, BranchContext& c) const {
        return deriv<S>(F_, lift(zeta), c) / (Cx<S>(0, 2 * pi_v<S>) * zeta);
    }
    HoloMap F_;
    cplx ref_;
};

class Pushed final : public Evaluator {
public:
    Pushed(HoloMap g, cplx fp0) : g_(std::move(g)), fp0_(fp0) {}
    std::string name() const override { return "push(" + g_.describe() + ")"; }
    Cx<double> value(Cx<double> z, BranchContext& c) const override { return val<double>(z, c); }
    Cx<long double> value(Cx<long double> z, BranchContext& c) const override { return val<long double>(z, c); }
    Cx<double> derivative(Cx<double> z, BranchContext& c) const override { return der<double>(z, c); }
    Cx<long double> derivative(Cx<long double> z, BranchContext& c) const override { return der<long double>(z, c); }

private:
    template <class S>
    Cx<S> val(Cx<S> zeta, BranchContext&) const {
        if (zeta == Cx<S>(0)) return {};
        BranchContext c;
        return exp2pi(eval<S>(g_, log_over_2pii(zeta), c));
    }
    template <class S>
    Cx<S> der(Cx<S> zeta, BranchContext&) const {
        if (zeta == Cx<S>(0)) return widen<S>(fp0_);
        BranchContext c1, c2;
        const Cx<S> w = log_over_2pii(zeta);
        return exp2pi(eval<S>(g_, w, c1)) * deriv<S>(g_, w, c2) / zeta;
    }
    HoloMap g_;
    cplx fp0_;
};

class Lifted final : public Evaluator {
public:
    Lifted(HoloMap f, cplx w0, cplx Fw0, double tol) : f_(std::move(f)), w0_(w0), Fw0_(Fw0), tol_(tol) {}
    std::string name() const override { return "lift(" + f_.describe() + ")"; }
    Cx<double> value(Cx<double> z, BranchContext&) const override { return val<double>(z); }
    Cx<long double> value(Cx<long double> z, BranchContext&) const override { return val<long double>(z); }
    Cx<double> derivative(Cx<double> z, BranchContext&) const override { return q<double>(z); }
    Cx<long double> derivative(Cx<long double> z, BranchContext&) const override { return q<long double>(z); }

    template <class S>
    Cx<S> q(Cx<S> w) const {
        const Cx<S> zeta = exp2pi(w);
        BranchContext c1, c2;
        const Cx<S> fz = eval<S>(f_, zeta, c1);
        if (fz == Cx<S>(0)) throw Error(ErrorCode::QuadratureFailed, "f vanishes off the origin");
        return zeta * deriv<S>(f_, zeta, c2) / fz;
    }

private:
    template <class S>
    Cx<S> val(Cx<S> w) const {
        const Cx<S> w0 = widen<S>(w0_);
        const S k = std::round(w.real() - w0.real());
        const Cx<S> ws = w - k;
        const Cx<S> corner(ws.real(), w0.imag());
        const std::function<Cx<S>(Cx<S>)> integrand = [this](Cx<S> u) { return q<S>(u); };
        const Cx<S> horizontal = integrate_segment<S>(integrand, w0, corner, tol_ / 2);
        const Cx<S> vertical = integrate_segment<S>(integrand, corner, ws, tol_ / 2);
        return widen<S>(Fw0_) + horizontal + vertical + k;
    }
    HoloMap f_;
    cplx w0_, Fw0_;
    double tol_;
};

}  // namespace

HoloMap project_periodic(const HoloMap& F, cplx samplePoint) {
    for (cplx w : halfplane_grid(16, 0.2, 2.0)) {
        const cplx a = eval(F, w), b = eval(F, w + 1.0);
        if (std::abs(a - b) > 1e-8 * std::max(1.0, std::abs(a)))
            throw Error(ErrorCode::NotPeriodic, "F(w+1) differs from F(w)");
    }
    return custom(std::make_shared<Projected>(F, samplePoint), {Region::Kind::PuncturedDisc});
}

PushedMap push_commuting(const PeriodicMap& g) {
    auto limit = [&](cplx w) { return std::exp(cplx(0, 2 * kPi) * (eval(g.g, w) - w)); };
    PushedMap out;
    try {
        out.fprime0 = limit({0, 6});
        out.tailBound = std::abs(limit({0.37, 6}) - out.fprime0);
    } catch (const Error& e) {
        throw Error(ErrorCode::NoConvergence, std::string("f'(0) sampling failed: ") + e.what());
    }
    out.f = custom(std::make_shared<Pushed>(g.g, out.fprime0), {Region::Kind::Disc});
    return out;
}

cplx winding_number(const HoloMap& f, double radius, int nodes) {
    cplx acc = 0;
    for (int k = 0; k < nodes; ++k) {
        const cplx z = std::polar(radius, 2 * kPi * k / nodes);
        acc += z * deriv(f, z) / eval(f, z);
    }
    return acc / static_cast<double>(nodes);
}

LiftedMap lift_univalent(const HoloMap& f, cplx w0, double absTol) {
    if (!(w0.imag() > 0)) throw Error(ErrorCode::UnsupportedInput, "normalization point must lie in H");
    if (std::abs(eval(f, 0.0)) > 1e-12) throw Error(ErrorCode::WindingNotOne, "f(0) != 0");
    for (double r : {std::exp(-2 * kPi * 1.0), 0.5}) {
        const cplx wn = winding_number(f, r);
        if (std::abs(wn - 1.0) > 1e-6)
            throw Error(ErrorCode::WindingNotOne, "winding number " + std::to_string(wn.real()) + " on |z| = " +
                                                      std::to_string(r));
    }
    const cplx z0 = std::exp(cplx(0, 2 * kPi) * w0);
    const cplx ratio = eval(f, z0) / z0;
    const cplx Fw0 = w0 + std::log(ratio) / cplx(0, 2 * kPi);
    LiftedMap out;
    out.w0 = w0;
    out.Fw0 = Fw0;
    out.F = custom(std::make_shared<Lifted>(f, w0, Fw0, absTol), {Region::Kind::UpperHalfPlane});
    return out;
}

double conjugacy_residual(const HoloMap& f, const HoloMap& F, const std::vector<cplx>& grid) {
    double r = 0;
    for (cplx w : grid)
        r = std::max(r, std::abs(eval(f, std::exp(cplx(0, 2 * kPi) * w)) - std::exp(cplx(0, 2 * kPi) * eval(F, w))));
    return r;
}

}  // namespace koenigs
