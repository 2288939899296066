#include "koenigs/classify.hpp"

#include <Eigen/LU>
#include <algorithm>

namespace koenigs {

std::string_view to_string(MapType t) {
    switch (t) {
        case MapType::Elliptic: return "Elliptic";
        case MapType::EllipticAutomorphism: return "EllipticAutomorphism";
        case MapType::Hyperbolic: return "Hyperbolic";
        case MapType::ParabolicZeroStep: return "ParabolicZeroStep";
        case MapType::ParabolicPositiveStep: return "ParabolicPositiveStep";
        case MapType::Identity: return "Identity";
    }
    return "Unknown";
}

std::string_view to_string(ClassMethod m) {
    switch (m) {
        case ClassMethod::Orbit: return "Orbit";
        case ClassMethod::MobiusExact: return "MobiusExact";
        case ClassMethod::ModelBase: return "ModelBase";
        case ClassMethod::AbelSolution: return "AbelSolution";
    }
    return "Unknown";
}

std::string_view to_string(StepVerdict v) {
    switch (v) {
        case StepVerdict::ZeroStep: return "ZeroStep";
        case StepVerdict::PositiveStep: return "PositiveStep";
        case StepVerdict::Inconclusive: return "Inconclusive";
    }
    return "Unknown";
}

namespace {

constexpr double kSnap = 1e-6;

const ModelNode* as_model(const HoloMap& m) { return std::get_if<ModelNode>(&m.node().data); }

// z_k = h^{-1}(h(z0) + k * shift), or nothing once the point is numerically on the circle
std::optional<Cx<long double>> model_jump(const ModelNode& mm, Cx<long double> z0, long double k) {
    try {
        BranchContext c1;
        const Cx<long double> target = eval<long double>(mm.h, z0, c1) + k * widen<long double>(mm.shift);
        BranchContext c2;
        const Cx<long double> z = invert<long double>(mm.h, target, c2);
        if (!(std::norm(z) < 1.0L) || 1.0L - std::norm(z) < 1e-17L) return std::nullopt;
        return z;
    } catch (const Error&) {
        return std::nullopt;
    }
}

bool looks_identity(const HoloMap& phi) {
    for (cplx z : {cplx(0.1, 0.2), cplx(-0.3, 0.1), cplx(0.2, -0.5)}) {
        try {
            if (std::abs(eval(phi, z) - z) > 1e-14) return false;
        } catch (const Error&) {
            return false;
        }
    }
    return true;
}

}  // namespace

long double pseudo_hyperbolic(Cx<long double> z, Cx<long double> w) {
    return std::abs(z - w) / std::abs(1.0L - std::conj(w) * z);
}

DWEstimate denjoy_wolff(const HoloMap& phi, cplx z0, long maxIter) {
    DWEstimate out;
    if (looks_identity(phi)) {
        out.identity = true;
        return out;
    }
    std::vector<long double> h;
    std::vector<Cx<long double>> vals;
    if (const auto* mm = as_model(phi)) {
        const Cx<long double> s = widen<long double>(mm->shift);
        if (std::abs(s) == 0) {
            out.identity = true;
            return out;
        }
        for (long double k = 1e2L; k <= 1e8L; k *= 10) {
            auto z = model_jump(*mm, widen<long double>(z0), k);
            if (!z) break;
            h.push_back(1.0L / k);
            vals.push_back(*z);
        }
        if (vals.size() < 2) {
            // geometric approach: keep only the deepest representable iterate
            h.clear();
            vals.clear();
            std::optional<Cx<long double>> last;
            for (long double k = 1; k <= 1e8L; k *= 2) {
                auto z = model_jump(*mm, widen<long double>(z0), k);
                if (!z) break;
                last = z;
            }
            if (!last) throw Error(ErrorCode::NotConverged, "model orbit left the disc immediately");
            h.push_back(1);
            vals.push_back(*last);
        }
    } else {
        if (maxIter < 16) throw Error(ErrorCode::UnsupportedInput, "denjoy_wolff needs at least 16 iterations");
        Cx<long double> z = widen<long double>(z0);
        std::vector<long> marks;
        for (long k = maxIter; k >= 1 && marks.size() < 5; k /= 2) marks.push_back(k);
        std::reverse(marks.begin(), marks.end());
        std::size_t next = 0;
        for (long k = 1; k <= maxIter; ++k) {
            BranchContext ctx;
            const Cx<long double> zn = eval<long double>(phi, z, ctx);
            if (!(std::norm(zn) < 1.0L) || 1.0L - std::norm(zn) < 1e-17L) break;
            z = zn;
            if (next < marks.size() && k == marks[next]) {
                h.push_back(1.0L / static_cast<long double>(k));
                vals.push_back(z);
                ++next;
            }
        }
        if (vals.empty() || std::abs(vals.back() - z) > 0) {
            h.push_back(h.empty() ? 1.0L : h.back() / 2);
            vals.push_back(z);
        }
    }
    // Samples that already agree carry no trend; drop them to keep the tableau well-conditioned.
    while (vals.size() >= 3 && std::abs(vals[vals.size() - 1] - vals[vals.size() - 2]) < 1e-15L) {
        vals.pop_back();
        h.pop_back();
    }
    const auto ex = extrapolate_to_zero(h, vals);
    out.tau = ex.value;
    out.confidence = ex.error;
    if (vals.size() >= 2 && std::abs(vals.back() - vals[vals.size() - 2]) > 1e-2L)
        throw Error(ErrorCode::NotConverged, "orbit still moving after the iteration budget");
    if (std::abs(out.tau) > 1 - kSnap) {
        out.boundary = true;
        out.tau /= std::abs(out.tau);
    }
    return out;
}

Classification mobius_classify(const Mat2& Min) {
    const cplx det = Min.determinant();
    if (std::abs(det) == 0) throw Error(ErrorCode::NotASelfMap, "degenerate matrix");
    const Mat2 M = Min / std::sqrt(det);
    const cplx a = M(0, 0), b = M(0, 1), c = M(1, 0), d = M(1, 1);
    auto apply = [&](cplx z) { return (a * z + b) / (c * z + d); };

    if (std::abs(c) > 0 && std::abs(d / c) <= 1 + 1e-12) throw Error(ErrorCode::NotASelfMap, "pole in the closed disc");
    bool boundaryToBoundary = true;
    for (int k = 0; k < 256; ++k) {
        const double r = std::abs(apply(std::polar(1.0, 2 * kPi * k / 256)));
        if (r > 1 + 1e-10) throw Error(ErrorCode::NotASelfMap, "boundary point mapped outside the disc");
        if (std::abs(r - 1) > 1e-10) boundaryToBoundary = false;
    }

    Classification cls;
    cls.method = ClassMethod::MobiusExact;
    cls.automorphism = boundaryToBoundary;
    if (std::abs(b) < 1e-15 && std::abs(c) < 1e-15 && std::abs(a - d) < 1e-15) {
        cls.type = MapType::Identity;
        return cls;
    }

    std::vector<cplx> fixed;
    if (std::abs(c) < 1e-15) {
        if (std::abs(d - a) > 1e-15) fixed.push_back(b / (d - a));
    } else {
        const cplx disc = std::sqrt((d - a) * (d - a) + 4.0 * b * c);
        fixed.push_back(((a - d) + disc) / (2.0 * c));
        fixed.push_back(((a - d) - disc) / (2.0 * c));
    }
    auto mult = [&](cplx z) { return 1.0 / ((c * z + d) * (c * z + d)); };

    for (cplx f : fixed) {
        if (std::abs(f) < 1 - 1e-9) {
            cls.tau = f;
            cls.multiplier = mult(f);
            cls.type = std::abs(std::abs(cls.multiplier) - 1) < 1e-12 ? MapType::EllipticAutomorphism : MapType::Elliptic;
            return cls;
        }
    }
    const cplx tr = a + d;
    const bool parabolic = std::abs(tr * tr - 4.0) < 1e-10;
    std::optional<cplx> best;
    for (cplx f : fixed) {
        if (std::abs(std::abs(f) - 1) > 1e-9) continue;
        const cplx m = mult(f);
        if (!best || m.real() < mult(*best).real()) best = f;
    }
    if (!best) throw Error(ErrorCode::NotASelfMap, "no fixed point in the closed disc");
    cls.tau = *best / std::abs(*best);
    if (parabolic) {
        // conjugate to w + b on H: Im b > 0 gives a non-horizontal half-plane model, hence zero step
        cls.type = boundaryToBoundary ? MapType::ParabolicPositiveStep : MapType::ParabolicZeroStep;
        cls.multiplier = 1.0;
    } else {
        cls.type = MapType::Hyperbolic;
        cls.multiplier = mult(*best);
    }
    return cls;
}

StepEstimate hyperbolic_step(const HoloMap& phi, cplx z0, long n) {
    if (n < 10) throw Error(ErrorCode::UnsupportedInput, "hyperbolic_step needs n >= 10");
    StepEstimate out;
    const Cx<long double> start = widen<long double>(z0);
    if (const auto* mm = as_model(phi)) {
        std::vector<long> ks;
        for (long k = 1; k <= std::min<long>(n, 32); ++k) ks.push_back(k);
        for (int j = 1; j <= 10; ++j) ks.push_back(std::max<long>(33, n * j / 10));
        std::sort(ks.begin(), ks.end());
        ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
        for (long k : ks) {
            auto a = model_jump(*mm, start, static_cast<long double>(k));
            auto b = model_jump(*mm, start, static_cast<long double>(k + 1));
            if (!a || !b) break;
            out.samples.push_back(static_cast<double>(pseudo_hyperbolic(*a, *b)));
        }
    } else {
        Cx<long double> z = start;
        const long stride = std::max<long>(1, n / 40);
        for (long k = 0; k < n; ++k) {
            BranchContext ctx;
            const Cx<long double> zn = eval<long double>(phi, z, ctx);
            if (!(std::norm(zn) < 1.0L) || 1.0L - std::norm(zn) < 1e-17L) break;
            if (k < 32 || (k + 1) % stride == 0) out.samples.push_back(static_cast<double>(pseudo_hyperbolic(z, zn)));
            z = zn;
        }
    }
    if (out.samples.size() < 2) throw Error(ErrorCode::NotConverged, "orbit reached the boundary immediately");
    const std::size_t m = out.samples.size();
    out.estimate = out.samples.back();
    out.decreasing = true;
    for (std::size_t i = m / 2 + 1; i < m; ++i)
        if (out.samples[i] > out.samples[i - 1] * (1 + 1e-12)) out.decreasing = false;
    const double prev = out.samples[m - 2];
    const bool stable = std::abs(out.estimate - prev) <= 1e-2 * std::max(prev, 1e-300);
    if (out.estimate < 1e-4 && out.decreasing) out.verdict = StepVerdict::ZeroStep;
    else if (out.estimate > 1e-3 && stable) out.verdict = StepVerdict::PositiveStep;
    else out.verdict = StepVerdict::Inconclusive;
    return out;
}

Classification classify_type(const HoloMap& phi, cplx z0) {
    if (auto M = as_mobius(phi)) return mobius_classify(*M);

    if (const auto* mm = as_model(phi)) {
        Classification cls;
        cls.method = ClassMethod::ModelBase;
        const cplx s = mm->shift;
        if (std::abs(s) == 0) {
            cls.type = MapType::Identity;
            return cls;
        }
        const auto dw = denjoy_wolff(phi, z0);
        cls.tau = dw.tau;
        cls.tauError = dw.confidence;
        const KoenigsDomain& om = *mm->image;
        const bool realShift = std::abs(s.imag()) <= 1e-12 * std::abs(s);
        auto orbitStep = [&] { return hyperbolic_step(phi, z0, 10000); };
        if (om.base.kind == BaseKind::Strip) {
            if (!realShift) throw Error(ErrorCode::InvalidDomain, "strip models need a real shift");
            cls.type = MapType::Hyperbolic;
            cls.multiplier = std::exp(-kPi * std::abs(s.real()) / (om.base.b - om.base.a));
            const auto ad = angular_derivative(phi, cls.tau);
            cls.multiplierError = ad.error;
            if (std::abs(ad.value - cls.multiplier) > 1e-4 + 10 * ad.error)
                throw Error(ErrorCode::InconsistentModel, "angular derivative disagrees with the strip width");
            cls.automorphism = om.blockers.empty();
            return cls;
        }
        cls.multiplier = 1.0;
        if (realShift) {
            cls.type = om.base.kind == BaseKind::Plane ? MapType::ParabolicZeroStep : MapType::ParabolicPositiveStep;
            cls.lowerBase = (om.base.kind == BaseKind::LowerHalfPlane) != (s.real() < 0);
            cls.automorphism = om.base.kind != BaseKind::Plane && om.blockers.empty();
        }
        const auto st = orbitStep();
        cls.stepEstimate = st.estimate;
        if (!realShift) {
            if (st.verdict == StepVerdict::Inconclusive)
                throw Error(ErrorCode::NotConverged, "step of a non-real shift model is inconclusive");
            cls.type = st.verdict == StepVerdict::ZeroStep ? MapType::ParabolicZeroStep : MapType::ParabolicPositiveStep;
            cls.method = ClassMethod::Orbit;
            return cls;
        }
        const bool zero = cls.type == MapType::ParabolicZeroStep;
        if ((zero && st.verdict == StepVerdict::PositiveStep) || (!zero && st.verdict == StepVerdict::ZeroStep))
            throw Error(ErrorCode::InconsistentModel, "base space and orbit step disagree");
        return cls;
    }

    Classification cls;
    cls.method = ClassMethod::Orbit;
    const auto dw = denjoy_wolff(phi, z0, 4096);
    if (dw.identity) {
        cls.type = MapType::Identity;
        return cls;
    }
    cls.tau = dw.tau;
    cls.tauError = dw.confidence;
    if (!dw.boundary) {
        cls.multiplier = deriv(phi, dw.tau);
        cls.type = std::abs(std::abs(cls.multiplier) - 1) < 1e-9 ? MapType::EllipticAutomorphism : MapType::Elliptic;
        return cls;
    }
    const auto ad = angular_derivative(phi, cls.tau);
    cls.multiplier = ad.value;
    cls.multiplierError = ad.error;
    if (std::abs(ad.value - 1.0) < 1e-6) {
        const auto st = hyperbolic_step(phi, z0, 10000);
        cls.stepEstimate = st.estimate;
        if (st.verdict == StepVerdict::Inconclusive)
            throw Error(ErrorCode::NotConverged, "hyperbolic step inside the dead band");
        cls.multiplier = 1.0;
        cls.type = st.verdict == StepVerdict::ZeroStep ? MapType::ParabolicZeroStep : MapType::ParabolicPositiveStep;
    } else {
        cls.type = MapType::Hyperbolic;
    }
    return cls;
}

}  // namespace koenigs
