#include "koenigs/abel.hpp"

#include "koenigs/centralizer.hpp"
#include "koenigs/lifting.hpp"

namespace koenigs {

std::string_view to_string(ConstantMethod m) {
    switch (m) {
        case ConstantMethod::ParabolicRatio: return "ParabolicRatio";
        case ConstantMethod::HyperbolicLogRatio: return "HyperbolicLogRatio";
        case ConstantMethod::RepresentationF0: return "RepresentationF0";
        case ConstantMethod::Constructed: return "Constructed";
    }
    return "Unknown";
}

AbelSolution make_abel_solution(const HoloMap& h, std::shared_ptr<const KoenigsDomain> image) {
    return AbelSolution{h, std::move(image), eval(h, 0.0)};
}

double abel_residual(const HoloMap& h, const HoloMap& phi, const std::vector<cplx>& grid, cplx shift) {
    double r = 0;
    for (cplx z : grid) r = std::max(r, std::abs(eval(h, eval(phi, z)) - eval(h, z) - shift));
    return r;
}

namespace {

bool is_parabolic(MapType t) { return t == MapType::ParabolicZeroStep || t == MapType::ParabolicPositiveStep; }

const ModelNode* as_model(const HoloMap& m) { return std::get_if<ModelNode>(&m.node().data); }

// sum of |Lagrange weights| for extrapolation to 1 - r = 0
double lebesgue_at_zero(const std::vector<double>& ladder) {
    double total = 0;
    for (std::size_t j = 0; j < ladder.size(); ++j) {
        double w = 1;
        for (std::size_t i = 0; i < ladder.size(); ++i)
            if (i != j) w *= (1 - ladder[i]) / ((1 - ladder[i]) - (1 - ladder[j]));
        total += std::abs(w);
    }
    return total;
}

}  // namespace

CentralizerConstant c_constant(const HoloMap& phi, const HoloMap& psi, cplx tau, const Classification& cls,
                               const std::vector<double>& ladder) {
    CentralizerConstant out;
    if (is_parabolic(cls.type)) {
        // rounding in psi(z) and phi(z) is amplified by 1/|phi(z) - z| near tau
        long double noise = 0;
        const auto ratio = [&](Cx<long double> z) {
            const Cx<long double> pz = eval_ld(psi, z), fz = eval_ld(phi, z);
            const Cx<long double> q = (pz - z) / (fz - z);
            noise = std::max(noise, std::numeric_limits<long double>::epsilon() *
                                        (std::abs(pz) + std::abs(z) + std::abs(q) * (std::abs(fz) + std::abs(z))) /
                                        std::abs(fz - z));
            return q;
        };
        const auto ex = radial_limit(ratio, tau, ladder);
        out.value = ex.value;
        out.errorEstimate = ex.error + static_cast<double>(noise) * lebesgue_at_zero(ladder);
        out.method = ConstantMethod::ParabolicRatio;
        return out;
    }
    if (cls.type == MapType::Hyperbolic) {
        const auto dpsi = angular_derivative(psi, tau, ladder);
        const auto dphi = angular_derivative(phi, tau, ladder);
        const cplx lpsi = std::log(dpsi.value), lphi = std::log(dphi.value);
        out.value = lpsi / lphi;
        out.errorEstimate = (dpsi.error / std::abs(dpsi.value) + std::abs(out.value) * dphi.error / std::abs(dphi.value)) /
                            std::abs(lphi);
        out.method = ConstantMethod::HyperbolicLogRatio;
        return out;
    }
    throw Error(ErrorCode::EllipticInput, "c_constant needs a non-elliptic map");
}

std::vector<cplx> valiron_ratio(const HoloMap& h, const HoloMap& phi, cplx tau, const std::vector<double>& ladder) {
    const auto cls = classify_type(phi);
    if (!is_parabolic(cls.type)) throw Error(ErrorCode::EllipticInput, "valiron_ratio needs a parabolic map");
    std::vector<cplx> out;
    for (double r : ladder) {
        const Cx<long double> z = widen<long double>(tau) * static_cast<long double>(r);
        const Cx<long double> pz = eval_ld(phi, z);
        const Cx<long double> num = eval_ld(h, pz) - eval_ld(h, z);
        out.push_back(narrow(num / (deriv_ld(h, z) * (pz - z))));
    }
    return out;
}

namespace {

class SchroderLimit final : public Evaluator {
public:
    SchroderLimit(HoloMap f, cplx lambda, long cap, double tol) : f_(std::move(f)), lambda_(lambda), cap_(cap), tol_(tol) {}
    std::string name() const override { return "schroder(" + f_.describe() + ")"; }
    Cx<double> value(Cx<double> z, BranchContext&) const override { return run<double>(z).first; }
    Cx<long double> value(Cx<long double> z, BranchContext&) const override { return run<long double>(z).first; }
    Cx<double> derivative(Cx<double> z, BranchContext&) const override { return run<double>(z).second; }
    Cx<long double> derivative(Cx<long double> z, BranchContext&) const override { return run<long double>(z).second; }

private:
    template <class S>
    std::pair<Cx<S>, Cx<S>> run(Cx<S> zeta) const {
        if (zeta == Cx<S>(0)) return {Cx<S>(0), Cx<S>(1)};
        const Cx<S> lam = widen<S>(lambda_);
        const S tol = std::max(static_cast<S>(tol_) * std::numeric_limits<S>::epsilon() /
                                   static_cast<S>(std::numeric_limits<double>::epsilon()),
                               16 * std::numeric_limits<S>::epsilon());
        Cx<S> z = zeta, scale = 1, dprod = 1;
        Cx<S> prev = zeta, prevD = 1;
        for (long k = 1; k <= cap_; ++k) {
            BranchContext c1, c2;
            dprod *= deriv<S>(f_, z, c2);
            z = eval<S>(f_, z, c1);
            scale *= lam;
            const Cx<S> cur = z / scale, curD = dprod / scale;
            if (!is_finite(cur) || !is_finite(curD))
                throw Error(ErrorCode::NoConvergence, "Schroder iteration overflowed");
            if (std::abs(cur - prev) < tol * std::max(S(1), std::abs(cur)) &&
                std::abs(curD - prevD) < tol * std::max(S(1), std::abs(curD)))
                return {cur, curD};
            prev = cur;
            prevD = curD;
        }
        throw Error(ErrorCode::NoConvergence, "Schroder iteration hit its cap");
    }
    HoloMap f_;
    cplx lambda_;
    long cap_;
    double tol_;
};

}  // namespace

SchroderSolution koenigs_elliptic(const HoloMap& f, long maxIter, double tol) {
    if (std::abs(eval(f, 0.0)) > 1e-12) throw Error(ErrorCode::UnsupportedInput, "f(0) != 0");
    const cplx lambda = deriv(f, 0.0);
    if (!(std::abs(lambda) > 0 && std::abs(lambda) < 1))
        throw Error(ErrorCode::MultiplierOutOfRange, "|f'(0)| must lie in (0, 1)");
    return {custom(std::make_shared<SchroderLimit>(f, lambda, maxIter, tol), {Region::Kind::Disc}), lambda};
}

SimultaneousResult simultaneous_abel_phs(const HoloMap& phi, const HoloMap& psi, std::uint64_t seed) {
    const ModelNode* mm = as_model(phi);
    if (!mm || !mm->image || mm->image->base.kind != BaseKind::UpperHalfPlane || std::abs(mm->shift - 1.0) > 1e-14)
        throw Error(ErrorCode::UnsupportedInput, "needs phi = ModelMap{h, +1} over the upper half-plane");
    SimultaneousResult out;
    const auto comm = commutes(phi, psi, 200, 1e-8, seed);
    out.commuteResidual = comm.residual;
    if (!comm.commute) throw Error(ErrorCode::NotCommuting, "residual " + std::to_string(comm.residual));

    const Classification cls = classify_type(phi);
    const CentralizerConstant ref = s_map(phi, psi, cls);

    const HoloMap g = compose(mm->h, compose(psi, inverse(mm->h)));
    const PushedMap pushed = push_commuting(make_periodic(g));
    out.fprime0 = pushed.fprime0;
    const cplx c0 = std::log(pushed.fprime0) / cplx(0, 2 * kPi);
    const double k = std::round((ref.value - c0).real());
    out.c.value = c0 + k;
    out.c.method = ConstantMethod::RepresentationF0;
    out.c.errorEstimate = pushed.tailBound;
    out.c.crossCheckSpread = std::abs(out.c.value - ref.value);
    if (*out.c.crossCheckSpread > 0.1)
        throw Error(ErrorCode::BranchUnresolved, "no branch of log f'(0)/(2 pi i) within 0.1 of the S-value");

    if (std::abs(std::abs(pushed.fprime0) - 1.0) < 1e-9) {
        out.translation = true;
        out.c.value = out.c.value.real();
        out.solution = make_abel_solution(mm->h, mm->image);
    } else {
        const SchroderSolution sch = koenigs_elliptic(pushed.f);
        const LiftedMap lifted = lift_univalent(sch.h0);
        out.solution = make_abel_solution(compose(lifted.F, mm->h), nullptr);
    }
    const auto grid = disc_grid(100, 0.9, seed);
    out.residualPhi = abel_residual(out.solution.h, phi, grid, 1.0);
    out.residualPsi = abel_residual(out.solution.h, psi, grid, out.c.value);
    return out;
}

Classification classify_from_abel_solution(const AbelSolution& h) {
    if (!h.image) throw Error(ErrorCode::InvalidDomain, "Abel solution without an image domain");
    if (h.image->exactness() != Exactness::Exact)
        throw Error(ErrorCode::InvalidDomain, "classification needs an exact image domain");
    Classification c;
    c.method = ClassMethod::AbelSolution;
    switch (base_of_union(*h.image)) {
        case UnionClass::FullPlane: c.type = MapType::ParabolicZeroStep; break;
        case UnionClass::ContainsUpperHalfPlane: c.type = MapType::ParabolicPositiveStep; break;
        case UnionClass::ContainsLowerHalfPlane:
            c.type = MapType::ParabolicPositiveStep;
            c.lowerBase = true;
            break;
        case UnionClass::StripLike:
            c.type = MapType::Hyperbolic;
            if (h.image->base.kind == BaseKind::Strip)
                c.multiplier = std::exp(-kPi / (h.image->base.b - h.image->base.a));
            break;
    }
    if (h.h.valid()) {
        try {
            c.tau = denjoy_wolff(model_map(h.h, h.image, 1.0, false), 0.0).tau;
        } catch (const Error&) {
            // tau stays unset when the orbit cannot be followed
        }
    }
    return c;
}

void write_table_csv(std::ostream& os, const AbelSolution& h, const std::vector<cplx>& grid) {
    os << "re_z,im_z,re_h,im_h\n";
    os.precision(17);
    for (cplx z : grid) {
        const cplx v = eval(h.h, z);
        os << z.real() << ',' << z.imag() << ',' << v.real() << ',' << v.imag() << '\n';
    }
}

}  // namespace koenigs
