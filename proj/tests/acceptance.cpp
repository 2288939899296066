// One line per acceptance criterion: PASS/FAIL, measured numbers, runtime.
#include <Eigen/LU>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "koenigs/lifting.hpp"
#include "koenigs/models.hpp"
#include "koenigs/replicate.hpp"

using namespace koenigs;

namespace {

int failures = 0;

void criterion(int id, const std::string& title, double budgetSeconds,
               const std::function<bool(std::ostringstream&)>& body) {
    std::ostringstream os;
    os.precision(3);
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    try {
        pass = body(os);
    } catch (const std::exception& e) {
        os << "raised " << e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > budgetSeconds) {
        pass = false;
        os << "; over budget " << budgetSeconds << " s";
    }
    if (!pass) ++failures;
    std::cout << (pass ? "PASS" : "FAIL") << "  C" << id << "  " << title << "  [" << os.str() << "; " << dt << " s]"
              << std::endl;
}

Mat2 diag(cplx a, cplx d) {
    Mat2 m;
    m << a, 0, 0, d;
    return m;
}

// w -> a w + b on H, conjugated to the disc and rotated so that tau = e^{i theta}
Mat2 half_plane_affine(cplx a, cplx b, double theta) {
    const Mat2 m = *as_mobius(cayley_conjugate_affine(a, b));
    const Mat2 r = diag(std::polar(1.0, theta), 1.0);
    return r * m * r.inverse();
}

// elliptic with fixed point p and multiplier lambda
Mat2 elliptic_at(cplx p, cplx lambda) {
    Mat2 to0;
    to0 << 1.0, -p, -std::conj(p), 1.0;
    return to0.inverse() * diag(lambda, 1.0) * to0;
}

struct MobiusCase {
    Mat2 m;
    MapType type;
    cplx tau, multiplier;
};

}  // namespace

int main() {
    criterion(1, "Mobius classification suite (12 maps)", 1.0, [](std::ostringstream& os) {
        const double th = 0.9;
        const std::vector<MobiusCase> cases = {
            {elliptic_at(0.0, 0.5), MapType::Elliptic, 0.0, 0.5},
            {elliptic_at(cplx(0.2, 0.1), cplx(0, 0.3)), MapType::Elliptic, cplx(0.2, 0.1), cplx(0, 0.3)},
            {elliptic_at(-0.4, -0.25), MapType::Elliptic, -0.4, -0.25},
            {half_plane_affine(2.0, 0.0, 0), MapType::Hyperbolic, 1.0, 0.5},
            {half_plane_affine(2.0, 3.0, th), MapType::Hyperbolic, std::polar(1.0, th), 0.5},
            {half_plane_affine(2.0, cplx(0, 1), 0), MapType::Hyperbolic, 1.0, 0.5},
            {half_plane_affine(3.0, 0.0, 0), MapType::Hyperbolic, 1.0, 1.0 / 3},
            {half_plane_affine(3.0, cplx(1, 1), -th), MapType::Hyperbolic, std::polar(1.0, -th), 1.0 / 3},
            {half_plane_affine(1.0, 1.0, 0), MapType::ParabolicPositiveStep, 1.0, 1.0},
            {half_plane_affine(1.0, -2.0, th), MapType::ParabolicPositiveStep, std::polar(1.0, th), 1.0},
            {half_plane_affine(1.0, cplx(1, 1), 0), MapType::ParabolicZeroStep, 1.0, 1.0},
            {half_plane_affine(1.0, cplx(0, 2), 2 * th), MapType::ParabolicZeroStep, std::polar(1.0, 2 * th), 1.0},
        };
        int ok = 0;
        double worst = 0;
        for (const auto& c : cases) {
            const Classification r = mobius_classify(c.m);
            const double err = std::max(std::abs(r.multiplier - c.multiplier), std::abs(r.tau - c.tau));
            worst = std::max(worst, err);
            if (r.type == c.type && err < 1e-8) ++ok;
            else os << "mismatch " << to_string(r.type) << " tau " << r.tau << "; ";
        }
        os << ok << "/12 exact, worst tau/multiplier error " << worst;
        return ok == 12;
    });

    criterion(2, "S o T = id on the comb model", 10.0, [](std::ostringstream& os) {
        const ModelExample ex = ex_non_non();
        const Classification cls = classify_type(ex.phi);
        bool ok = true;
        for (cplx b : {cplx(1), cplx(0, 1), cplx(2, 1), cplx(1, 5)}) {
            const CentralizerConstant c = c_constant(ex.phi, ex.t_map(b), ex.tau, cls);
            const double d = std::abs(c.value - b);
            os << "b=" << b << " |err| " << d << " est " << c.errorEstimate << "; ";
            ok = ok && d <= 3 * c.errorEstimate && d < 1e-2;
        }
        return ok;
    });

    criterion(3, "hyperbolic log-multiplier ratio on a strip", 5.0, [](std::ostringstream& os) {
        const ModelExample ex = strip_model(kPi / std::log(2.0));  // multiplier 1/2
        const Classification cls = classify_type(ex.phi);
        double worst = 0;
        for (double b : {0.5, 2.0, 3.0})
            worst = std::max(worst, std::abs(c_constant(ex.phi, ex.t_map(b), cls.tau, cls).value - b));
        os << "worst |ratio - b| " << worst;
        return worst < 1e-5;
    });

    criterion(4, "simultaneous pipeline, positive step", 30.0, [](std::ostringstream& os) {
        const ModelExample ex = ex_parab_autom();
        const HoloMap g = identity() + constant(cplx(0, 1)) + cplx(0.05) * exp_periodic();
        const SimultaneousResult r = simultaneous_abel_phs(ex.phi, conjugate(ex.h, g));
        os << "c = " << r.c.value << ", residuals " << r.residualPhi << ", " << r.residualPsi;
        return std::abs(r.c.value - cplx(0, 1)) < 1e-6 && r.residualPhi < 1e-6 && r.residualPsi < 1e-6;
    });

    criterion(5, "lifting round trips", 30.0, [](std::ostringstream& os) {
        const auto grid = halfplane_grid(40);
        const auto disc = disc_grid(40, 0.9, 5);
        double liftPush = 0, pushLift = 0, shift = 0;
        const auto g_round = [&](const HoloMap& g) {
            const LiftedMap F = lift_univalent(push_commuting(make_periodic(g)).f);
            for (cplx w : grid) {
                liftPush = std::max(liftPush, std::abs(eval(F.F, w) - eval(g, w)));
                shift = std::max(shift, std::abs(eval(F.F, w + 1.0) - eval(F.F, w) - 1.0));
            }
        };
        const auto f_round = [&](const HoloMap& f) {
            const LiftedMap F = lift_univalent(f);
            const PushedMap back = push_commuting(make_periodic(F.F));
            for (cplx z : disc)
                if (z != cplx(0)) pushLift = std::max(pushLift, std::abs(eval(back.f, z) - eval(f, z)));
            for (cplx w : grid) shift = std::max(shift, std::abs(eval(F.F, w + 1.0) - eval(F.F, w) - 1.0));
        };
        const HoloMap gExp = identity() + constant(cplx(0, 1)) + cplx(0.05) * exp_periodic();
        Mat2 m;
        m << 0.5, 0, -0.3, 1;
        g_round(affine(1.0, cplx(0.3, 0.5)));                              // linear
        g_round(gExp);                                                     // exponential perturbation
        f_round(affine(std::exp(cplx(0, 2 * kPi) * cplx(0.3, 0.5)), 0.0)); // linear
        f_round(push_commuting(make_periodic(gExp)).f);                    // exponential perturbation
        f_round(mobius(m, {Region::Kind::Disc}));                          // Mobius in the disc
        os << "lift(push g) - g " << liftPush << ", push(lift f) - f " << pushLift << ", shift law " << shift;
        return liftPush < 1e-8 && pushLift < 1e-8 && shift < 1e-9;
    });

    criterion(6, "flow/Abel consistency for G_*", 30.0, [](std::ostringstream& os) {
        const SemigroupSpec s = generator_semigroup(cot_generator(), {Region::Kind::UpperHalfPlane}, two_log_cos());
        const HoloMap hs = two_log_cos();
        double abel = 0, law = 0;
        for (cplx w0 : {cplx(0.2, 0.8), cplx(-0.35, 0.3), cplx(0.05, 1.5)}) {
            for (double t : {0.25, 1.0, 2.0}) abel = std::max(abel, std::abs(eval(hs, flow(s, w0, t)) - eval(hs, w0) - t));
            for (auto [a, b] : {std::pair{0.25, 1.0}, {1.0, 1.0}, {0.5, 1.5}})
                law = std::max(law, std::abs(flow(s, flow(s, w0, a), b) - flow(s, w0, a + b)));
        }
        os << "Abel residual " << abel << ", semigroup law " << law;
        return abel < 1e-6 && law < 1e-7;
    });

    criterion(7, "Valiron ratio at ladder depth 6", 10.0, [](std::ostringstream& os) {
        bool ok = true;
        for (const ModelExample& ex : {ex_non_non(), ex_z_non_abelian()}) {
            const auto r = valiron_ratio(ex.h, ex.phi, ex.tau);
            const double d = std::abs(r.back() - 1.0);
            os << ex.id << " |ratio - 1| " << d << "; ";
            ok = ok && r.size() == 5 && d < 1e-4;
        }
        return ok;
    });

    criterion(8, "embeddability dichotomies", 4.0, [](std::ostringstream& os) {
        const auto timed = [&](auto f) {
            const auto t0 = std::chrono::steady_clock::now();
            const EmbeddabilityVerdict v = f();
            const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            os << to_string(v.verdict) << (v.gapFound ? "+Gap" : "") << " (" << dt << " s); ";
            return std::pair{v, dt < 1.0};
        };
        const auto [nn, t1] = timed([] { return embeddable_verdict(ex_non_non().phi, 0.5, 0.3); });
        const auto [z, t2] = timed([] { return embeddable_verdict(ex_z_non_abelian().phi, 0.5, 0.3); });
        const auto [n0, t3] = timed([] { return embeddable_verdict(build_reciprocal_domain({}), 0.5, 0.3); });
        const auto [ray, t4] = timed([] { return embeddable_verdict(build_reciprocal_domain({{}, {0}}), 0.5, 0.3); });
        return nn.verdict == Verdict::NotEmbeddable && nn.gapFound && z.verdict == Verdict::Embeddable &&
               n0.verdict == Verdict::NotEmbeddable && ray.verdict == Verdict::Embeddable && t1 && t2 && t3 && t4;
    });

    criterion(9, "second-derivative relation for iterates", 10.0, [](std::ostringstream& os) {
        const HoloMap phi = cayley_conjugate_affine(1.0, cplx(1, 1));
        bool ok = true;
        HoloMap psi = phi;
        for (int k = 2; k <= 3; ++k) {
            psi = compose(phi, psi);
            const SecondDerivRelation r = second_deriv_relation(phi, psi, 1.0);
            os << "k=" << k << " s " << r.s << " residual " << r.relationResidual << "; ";
            ok = ok && r.relationResidual < 1e-4;
        }
        return ok;
    });

    criterion(10, "replication suite", 120.0, [](std::ostringstream& os) {
        int claims = 0, passed = 0;
        std::string first;
        for (const auto& id : example_ids()) {
            const ReplicationReport r = replicate(id, 1);
            for (const auto& c : r.claims) {
                ++claims;
                if (c.pass) ++passed;
                else if (first.empty()) first = id + ": " + c.name + " (" + c.detail + ")";
            }
        }
        os << passed << "/" << claims << " claims";
        if (!first.empty()) os << ", first failure " << first;
        return claims > 0 && passed == claims;
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAIL") << std::endl;
    return failures == 0 ? 0 : 1;
}
