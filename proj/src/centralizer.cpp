#include "koenigs/centralizer.hpp"

#include <sstream>

#include "koenigs/lifting.hpp"

namespace koenigs {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Embeddable: return "Embeddable";
        case Verdict::NotEmbeddable: return "NotEmbeddable";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Unknown";
}

std::string_view to_string(EmbedMethod m) {
    switch (m) {
        case EmbedMethod::StarlikeTest: return "StarlikeTest";
        case EmbedMethod::SectorScan: return "SectorScan";
        case EmbedMethod::HyperbolicDichotomy: return "HyperbolicDichotomy";
    }
    return "Unknown";
}

namespace {

const ModelNode* as_model(const HoloMap& m) { return std::get_if<ModelNode>(&m.node().data); }

}  // namespace

CommuteReport commutes(const HoloMap& phi, const HoloMap& psi, int gridSize, double tol, std::uint64_t seed) {
    CommuteReport r;
    for (cplx z : disc_grid(gridSize, 0.9, seed))
        r.residual = std::max(r.residual, std::abs(eval(phi, eval(psi, z)) - eval(psi, eval(phi, z))));
    r.commute = r.residual < tol;
    return r;
}

HoloMap t_map(const AbelSolution& h, cplx b) {
    if (b == cplx(0)) return identity();
    if (!h.image) throw Error(ErrorCode::UnsupportedInput, "t_map needs the image domain");
    if (!contains_translate(*h.image, b)) {
        std::ostringstream os;
        os << "Omega + " << b << " is not inside Omega";
        throw Error(ErrorCode::NotInSemigroup, os.str());
    }
    return model_map(h.h, h.image, b);
}

PHSRepresentation phs_representation(const HoloMap& phi, const HoloMap& psi) {
    const ModelNode* mm = as_model(phi);
    if (!mm || !mm->image || mm->image->base.kind != BaseKind::UpperHalfPlane)
        throw Error(ErrorCode::UnsupportedInput, "needs phi = ModelMap over the upper half-plane");
    const HoloMap g = compose(mm->h, compose(psi, inverse(mm->h)));
    PHSRepresentation rep;
    rep.F = project_periodic(g - identity(), cplx(0, 1));
    const cplx top(0, 6);
    rep.F0 = eval(g, top) - top;
    rep.minImag = rep.F0.imag();
    for (cplx zeta : disc_grid(64, 0.9, 11)) {
        if (zeta == cplx(0)) continue;
        try {
            rep.minImag = std::min(rep.minImag, eval(rep.F, zeta).imag());
        } catch (const Error& e) {
            if (e.code() != ErrorCode::OutsideDomain && e.code() != ErrorCode::NewtonDiverged) throw;
        }
    }
    if (rep.minImag < -1e-8)
        throw Error(ErrorCode::NegativeImaginaryPart, "Im F = " + std::to_string(rep.minImag));
    return rep;
}

CentralizerConstant s_map(const HoloMap& phi, const HoloMap& psi, const Classification& cls) {
    CentralizerConstant c = c_constant(phi, psi, cls.tau, cls);
    std::optional<double> spread;
    const auto note = [&](cplx other) { spread = std::max(spread.value_or(0.0), std::abs(other - c.value)); };

    const ModelNode* mphi = as_model(phi);
    const ModelNode* mpsi = as_model(psi);
    if (mphi && mpsi && &mphi->h.node() == &mpsi->h.node() && mphi->shift != cplx(0)) note(mpsi->shift / mphi->shift);
    if (mphi && mphi->image && mphi->image->base.kind == BaseKind::UpperHalfPlane &&
        cls.type == MapType::ParabolicPositiveStep && std::abs(mphi->shift - 1.0) < 1e-14)
        note(phs_representation(phi, psi).F0);

    if (spread) {
        c.crossCheckSpread = spread;
        if (*spread > std::max(3 * c.errorEstimate, 1e-2)) {
            std::ostringstream os;
            os << "routes disagree by " << *spread << " (estimate " << c.errorEstimate << ")";
            throw Error(ErrorCode::MismatchedMethods, os.str());
        }
    }
    return c;
}

EmbeddabilityVerdict embeddable_verdict(const HoloMap& phi, double rho, double delta, int samples) {
    const ModelNode* mm = as_model(phi);
    if (!mm || !mm->image) throw Error(ErrorCode::UnsupportedInput, "embeddable_verdict needs a ModelMap");
    if (std::abs(mm->shift - 1.0) > 1e-14) throw Error(ErrorCode::UnsupportedInput, "embeddable_verdict needs shift 1");
    return embeddable_verdict(*mm->image, rho, delta, samples);
}

EmbeddabilityVerdict embeddable_verdict(const KoenigsDomain& omega, double rho, double delta, int samples) {
    if (!(rho > 0 && delta > 0)) throw Error(ErrorCode::UnsupportedInput, "sector radius and angle must be positive");
    EmbeddabilityVerdict v;
    v.rho = rho;
    v.delta = delta;
    if (starlike_at_infinity(omega)) {
        v.verdict = Verdict::Embeddable;
        v.method = EmbedMethod::StarlikeTest;
        v.evidence = "Omega + t inside Omega for every t >= 0";
        return v;
    }
    v.method = omega.base.kind == BaseKind::Strip ? EmbedMethod::HyperbolicDichotomy : EmbedMethod::SectorScan;
    v.gapFound = sector_gap(omega, rho, delta, samples);
    std::ostringstream os;
    if (v.gapFound) {
        v.verdict = Verdict::NotEmbeddable;
        os << "no c with 0 < |c| < " << rho << ", |Arg c| < " << delta << " satisfies Omega + c inside Omega";
    } else {
        v.verdict = Verdict::Inconclusive;
        os << "Omega is not starlike at infinity but the sector of radius " << rho << " meets A_phi";
    }
    v.evidence = os.str();
    return v;
}

Extrapolated second_angular_derivative(const HoloMap& m, cplx tau, const std::vector<double>& ladder) {
    const Cx<long double> t = widen<long double>(tau);
    return radial_limit(
        [&](Cx<long double> z) {
            const Cx<long double> d = z - t;
            return 2.0L * (eval_ld(m, z) - z) / (d * d);
        },
        tau, ladder);
}

SecondDerivRelation second_deriv_relation(const HoloMap& phi, const HoloMap& psi, cplx tau) {
    const Classification cls = classify_type(phi);
    if (cls.type != MapType::ParabolicZeroStep && cls.type != MapType::ParabolicPositiveStep)
        throw Error(ErrorCode::EllipticInput, "second_deriv_relation needs a parabolic map");
    const auto a = second_angular_derivative(psi, tau);
    const auto b = second_angular_derivative(phi, tau);
    const CentralizerConstant s = s_map(phi, psi, cls);
    SecondDerivRelation r;
    r.psi2 = a.value;
    r.phi2 = b.value;
    r.s = s.value;
    r.relationResidual = std::abs(r.psi2 - r.phi2 * r.s);
    r.errorEstimate = a.error + std::abs(r.s) * b.error + std::abs(r.phi2) * s.errorEstimate;
    return r;
}

}  // namespace koenigs
