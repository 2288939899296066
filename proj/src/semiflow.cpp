#include "koenigs/semiflow.hpp"

#include <Eigen/Core>
#include <sstream>

#include "koenigs/lifting.hpp"

namespace koenigs {

namespace {

using State = Eigen::Vector2cd;  // (z, dz/dz0)

double boundary_distance(const Region& r, cplx z) {
    switch (r.kind) {
        case Region::Kind::Disc: return 1 - std::abs(z);
        case Region::Kind::PuncturedDisc: return std::min(1 - std::abs(z), std::abs(z));
        case Region::Kind::UpperHalfPlane: return z.imag();
        case Region::Kind::SlitPlane:
            return z.real() > 0 ? kInf : std::abs(z.imag());
        case Region::Kind::Plane: return kInf;
    }
    return kInf;
}

struct Integration {
    State y;
    Trajectory path;
};

// Dormand-Prince 5(4) with step rejection near the domain boundary.
Integration dormand_prince(const GeneratorSource& g, const IntegratorOptions& o, cplx z0, double T, bool variational,
                           bool record) {
    static constexpr double a[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
    };
    static constexpr double e[7] = {71.0 / 57600, 0, -71.0 / 16695, 71.0 / 1920, -17253.0 / 339200, 22.0 / 525,
                                    -1.0 / 40};
    constexpr double kBoundary = 1e-8;

    const auto rhs = [&](const State& y) {
        State d;
        d(0) = eval(g.G, y(0));
        d(1) = variational ? deriv(g.G, y(0)) * y(1) : cplx(0);
        return d;
    };
    const auto admissible = [&](const State& y) {
        return is_finite(y(0)) && is_finite(y(1)) && g.domain.contains(y(0)) &&
               boundary_distance(g.domain, y(0)) > kBoundary;
    };

    Integration out;
    out.y << z0, cplx(1);
    if (!admissible(out.y)) throw Error(ErrorCode::OutsideDomain, "flow start point outside the generator domain");
    if (record) {
        out.path.t.push_back(0);
        out.path.z.push_back(z0);
    }
    if (T == 0) return out;

    double t = 0;
    double h = std::min(T, o.maxStep > 0 ? o.maxStep : T) / 8;
    bool lastRejectDomain = false;
    State k[7];
    k[0] = rhs(out.y);
    while (t < T) {
        if (t + h > T) h = T - t;
        if (o.maxStep > 0) h = std::min(h, o.maxStep);
        bool ok = true;
        State y5;
        try {
            for (int s = 1; s < 7; ++s) {
                State ys = out.y;
                for (int j = 0; j < s; ++j) ys += h * a[s][j] * k[j];
                if (!admissible(ys)) {
                    ok = false;
                    break;
                }
                k[s] = rhs(ys);
                if (s == 6) y5 = ys;
            }
        } catch (const Error&) {
            ok = false;
        }
        double err = kInf;
        if (ok) {
            State de = State::Zero();
            for (int j = 0; j < 7; ++j) de += h * e[j] * k[j];
            err = 0;
            for (int i = 0; i < (variational ? 2 : 1); ++i) {
                const double scale = o.absTol + o.relTol * std::max(std::abs(out.y(i)), std::abs(y5(i)));
                err = std::max(err, std::abs(de(i)) / scale);
            }
        }
        lastRejectDomain = !ok;
        if (ok && err <= 1) {
            t += h;
            out.y = y5;
            k[0] = k[6];
            if (record) {
                out.path.t.push_back(t);
                out.path.z.push_back(y5(0));
            }
            h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-16), -0.2)));
        } else {
            h *= ok ? std::max(0.1, 0.9 * std::pow(err, -0.2)) : 0.25;
        }
        if (h < 1e-14 * std::max(1.0, T)) {
            std::ostringstream os;
            os << "step size collapsed at t = " << t;
            throw Error(lastRejectDomain ? ErrorCode::LeftDomain : ErrorCode::IntegrationFailed, os.str());
        }
    }
    if (g.koenigs) {
        const double r = std::abs(eval(*g.koenigs, out.y(0)) - eval(*g.koenigs, z0) - T);
        if (r > 1e-6 * std::max(1.0, T)) {
            std::ostringstream os;
            os << "Abel identity off by " << r;
            throw Error(ErrorCode::IntegrationFailed, os.str());
        }
    }
    return out;
}

cplx koenigs_flow(const KoenigsSource& k, cplx z0, double t) {
    if (t == 0) return z0;
    BranchContext ctx;
    ctx.seed = widen<long double>(z0);
    const cplx target = eval(k.h.h, z0) + t;
    const cplx z = narrow(invert<long double>(k.h.h, widen<long double>(target), ctx));
    const double r = std::abs(eval(k.h.h, z) - target);
    if (r > 1e-6 * std::max(1.0, t)) throw Error(ErrorCode::IntegrationFailed, "Abel identity not met");
    return z;
}

class FlowMap final : public Evaluator {
public:
    FlowMap(SemigroupSpec s, double t) : s_(std::move(s)), t_(t) {}
    std::string name() const override {
        std::ostringstream os;
        os << "flow(t=" << t_ << ")";
        return os.str();
    }
    Cx<double> value(Cx<double> z, BranchContext&) const override { return flow(s_, z, t_); }
    Cx<long double> value(Cx<long double> z, BranchContext&) const override {
        return widen<long double>(flow(s_, narrow(z), t_));
    }
    Cx<double> derivative(Cx<double> z, BranchContext&) const override { return der(z); }
    Cx<long double> derivative(Cx<long double> z, BranchContext&) const override {
        return widen<long double>(der(narrow(z)));
    }

private:
    cplx der(cplx z) const {
        if (const auto* g = std::get_if<GeneratorSource>(&s_.source))
            return dormand_prince(*g, s_.integrator, z, t_, true, false).y(1);
        const auto& k = std::get<KoenigsSource>(s_.source);
        const cplx w = koenigs_flow(k, z, t_);
        return deriv(k.h.h, z) / deriv(k.h.h, w);
    }
    SemigroupSpec s_;
    double t_;
};

}  // namespace

SemigroupSpec generator_semigroup(const HoloMap& G, Region domain, std::optional<HoloMap> koenigs,
                                  IntegratorOptions opts) {
    return SemigroupSpec{GeneratorSource{G, domain, std::move(koenigs)}, opts};
}

SemigroupSpec koenigs_semigroup(const AbelSolution& h) { return SemigroupSpec{KoenigsSource{h}, {}}; }

cplx flow(const SemigroupSpec& s, cplx z0, double t) {
    if (!(t >= 0)) throw Error(ErrorCode::UnsupportedInput, "flow time must be non-negative");
    if (const auto* g = std::get_if<GeneratorSource>(&s.source))
        return dormand_prince(*g, s.integrator, z0, t, false, false).y(0);
    return koenigs_flow(std::get<KoenigsSource>(s.source), z0, t);
}

Trajectory flow_trajectory(const SemigroupSpec& s, cplx z0, double t) {
    if (const auto* g = std::get_if<GeneratorSource>(&s.source))
        return dormand_prince(*g, s.integrator, z0, t, false, true).path;
    Trajectory tr;
    const auto& k = std::get<KoenigsSource>(s.source);
    constexpr int kSamples = 64;
    for (int j = 0; j <= kSamples; ++j) {
        const double tj = t * j / kSamples;
        tr.t.push_back(tj);
        tr.z.push_back(koenigs_flow(k, z0, tj));
    }
    return tr;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
    os << "t,re_z,im_z\n";
    os.precision(17);
    for (std::size_t j = 0; j < tr.t.size(); ++j) os << tr.t[j] << ',' << tr.z[j].real() << ',' << tr.z[j].imag() << '\n';
}

HoloMap flow_map(const SemigroupSpec& s, double t) {
    Region dom{Region::Kind::Plane};
    if (const auto* g = std::get_if<GeneratorSource>(&s.source)) dom = g->domain;
    else dom = std::get<KoenigsSource>(s.source).h.h.domain();
    return custom(std::make_shared<FlowMap>(s, t), dom);
}

LiftedGenerators lift_semigroup(const HoloMap& p) {
    double maxAbs = 0;
    for (cplx z : disc_grid(200, 0.95, 3)) {
        const cplx v = eval(p, z);
        if (v.real() < -1e-10) {
            std::ostringstream os;
            os << "Re p(" << z << ") = " << v.real();
            throw Error(ErrorCode::NotHerglotz, os.str());
        }
        maxAbs = std::max(maxAbs, std::abs(v));
    }
    if (maxAbs == 0) throw Error(ErrorCode::UnsupportedInput, "p vanishes identically");
    LiftedGenerators out;
    out.disc = cplx(-1) * (identity() * p);
    out.half = cplx(0, 1 / (2 * kPi)) * compose(p, exp_periodic());
    return out;
}

PeriodicityReport periodicity_constant(const HoloMap& p, cplx w0) {
    const cplx p0 = eval(p, 0.0);
    if (std::abs(p0) < 1e-14) throw Error(ErrorCode::ZeroAtOrigin, "p(0) = 0");
    PeriodicityReport r;
    r.constant = 2 * kPi / (cplx(0, 1) * p0);
    const HoloMap G = lift_semigroup(p).half;
    const std::function<Cx<double>(Cx<double>)> inv = [&](Cx<double> w) { return 1.0 / eval(G, w); };
    r.integral = integrate_segment<double>(inv, w0, w0 + 1.0, 1e-12);
    r.discrepancy = std::abs(r.integral - r.constant);
    return r;
}

CentralizerConstant flow_s_value(const HoloMap& GHalf, double t, const KoenigsDomain& omega) {
    for (cplx w : halfplane_grid(16, 0.2, 2.0))
        if (std::abs(eval(GHalf, w + 1.0) - eval(GHalf, w)) > 1e-8)
            throw Error(ErrorCode::NotPeriodic, "generator does not commute with w + 1");
    const cplx top(0, 6);
    const cplx ginf = eval(GHalf, top);
    const double tail = std::max(std::abs(eval(GHalf, top + 0.37) - ginf), std::abs(eval(GHalf, top + cplx(0, 1)) - ginf));
    if (tail > 1e-8) throw Error(ErrorCode::NoLimit, "generator has no limit at i infinity");

    CentralizerConstant out;
    out.method = ConstantMethod::RepresentationF0;
    out.value = t * ginf;
    out.errorEstimate = t * tail;
    if (t == 0) return out;

    const SemigroupSpec spec = generator_semigroup(GHalf, {Region::Kind::UpperHalfPlane});
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 8; ++j) {
            const cplx w(-2.5 + 4.0 * (i + 0.5) / 12, 0.1 + 2.4 * (j + 0.5) / 8);
            if (!omega.contains(w) || omega.distance_to_blockers(w) < 1e-3) continue;
            const Trajectory tr = flow_trajectory(spec, w, t);
            for (std::size_t k = 1; k < tr.z.size(); ++k)
                if (omega.segment_blocked(tr.z[k - 1], tr.z[k])) {
                    std::ostringstream os;
                    os << "trajectory from " << w << " leaves Omega";
                    throw Error(ErrorCode::NotInvariant, os.str());
                }
        }
    return out;
}

CentralizerConstant flow_s_value(const HoloMap& GHalf, double t, const HoloMap& phi) {
    const auto* mm = std::get_if<ModelNode>(&phi.node().data);
    if (!mm || !mm->image) throw Error(ErrorCode::UnsupportedInput, "flow_s_value needs a ModelMap");
    return flow_s_value(GHalf, t, *mm->image);
}

}  // namespace koenigs
