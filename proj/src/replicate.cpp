#include "koenigs/replicate.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "koenigs/lifting.hpp"
#include "koenigs/models.hpp"

namespace koenigs {

namespace {

struct Checklist {
    std::vector<Claim>& out;

    void check(std::string name, const std::function<bool(std::ostringstream&)>& body) {
        Claim c{std::move(name), false, {}};
        std::ostringstream os;
        os.precision(6);
        try {
            c.pass = body(os);
        } catch (const std::exception& e) {
            os << "raised " << e.what();
        }
        c.detail = os.str();
        out.push_back(std::move(c));
    }
};

std::string membership_name(Membership m) {
    switch (m) {
        case Membership::Member: return "member";
        case Membership::NonMember: return "non-member";
        case Membership::Undecidable: return "undecidable";
    }
    return "?";
}

// Points of omega on a lattice, at least `margin` away from the blockers.
std::vector<cplx> interior_points(const KoenigsDomain& omega, double xLo, double xHi, double yLo, double yHi, int n,
                                  double margin) {
    std::vector<cplx> pts;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cplx w(xLo + (xHi - xLo) * (i + 0.5) / n, yLo + (yHi - yLo) * (j + 0.5) / n);
            if (omega.contains(w) && omega.distance_to_blockers(w) > margin) pts.push_back(w);
        }
    return pts;
}

const SemigroupSpec& psi_star() {
    static const SemigroupSpec s = generator_semigroup(cot_generator(), {Region::Kind::UpperHalfPlane}, two_log_cos());
    return s;
}

// Claim shared by the examples built on Psi*: trajectories stay in omega and G_*(i inf) = i / 2 pi.
void psi_star_invariance(Checklist& cl, const KoenigsDomain& omega) {
    cl.check("Psi*_t(Omega) inside Omega and S(psi*_1) = i/(2 pi)", [&](std::ostringstream& os) {
        const CentralizerConstant s = flow_s_value(cot_generator(), 1.0, omega);
        const cplx expect(0, 1 / (2 * kPi));
        os << "S = " << s.value << " (expected " << expect << ", error " << s.errorEstimate << ")";
        return std::abs(s.value - expect) < 1e-8;
    });
}

void parab_autom(Checklist& cl, std::uint64_t seed) {
    const ModelExample ex = ex_parab_autom();
    cl.check("phi is a parabolic automorphism of positive step", [&](std::ostringstream& os) {
        const Classification c = classify_type(ex.phi);
        os << to_string(c.type) << ", tau = " << c.tau << ", automorphism " << c.automorphism;
        return c.type == MapType::ParabolicPositiveStep && std::abs(c.tau - 1.0) < 1e-6;
    });
    cl.check("h^{-1}(h + i) is of zero hyperbolic step", [&](std::ostringstream& os) {
        const Classification c = mobius_classify(*as_mobius(cayley_conjugate_affine(1.0, cplx(0, 1))));
        os << to_string(c.type);
        return c.type == MapType::ParabolicZeroStep;
    });
    cl.check("A_phi = H u R", [&](std::ostringstream& os) {
        bool ok = true;
        for (cplx c : {cplx(0, 1), cplx(-3, 0), cplx(2, 0.5), cplx(-0.7, 4)}) {
            const bool m = contains_translate(*ex.omega, c);
            os << c << ": " << (m ? "member" : "non-member") << "; ";
            ok = ok && m;
        }
        for (cplx c : {cplx(0, -1), cplx(1, -0.01)}) {
            const bool m = contains_translate(*ex.omega, c);
            os << c << ": " << (m ? "member" : "non-member") << "; ";
            ok = ok && !m;
        }
        return ok;
    });
    cl.check("phi commutes with h^{-1}(h + i)", [&](std::ostringstream& os) {
        const CommuteReport r = commutes(ex.phi, ex.t_map(cplx(0, 1)), 50, 1e-8, seed);
        os << "residual " << r.residual;
        return r.commute;
    });
    cl.check("Z(phi) is non-abelian", [&](std::ostringstream& os) {
        // both conjugates commute with phi since their half-plane maps commute with w + 1
        const HoloMap g = identity() + constant(cplx(0, 1)) + cplx(0.05) * exp_periodic();
        const HoloMap psi = conjugate(ex.h, g);
        const CommuteReport withPhi = commutes(ex.phi, psi, 50, 1e-8, seed);
        const CommuteReport r = commutes(ex.t_map(cplx(0, 1)), psi, 50, 1e-8, seed);
        os << "[phi, psi] residual " << withPhi.residual << ", [h^{-1}(h + i), psi] residual " << r.residual;
        return withPhi.commute && r.residual > 1e-3;
    });
}

void non_non(Checklist& cl, std::uint64_t) {
    const ModelExample ex = ex_non_non();
    cl.check("phi is parabolic of zero hyperbolic step", [&](std::ostringstream& os) {
        const Classification c = classify_type(ex.phi);
        os << to_string(c.type) << " via " << to_string(c.method);
        return c.type == MapType::ParabolicZeroStep;
    });
    cl.check("Abel-solution classification gives zero step", [&](std::ostringstream& os) {
        const Classification c = classify_from_abel_solution(make_abel_solution(ex.h, ex.omega));
        os << to_string(c.type) << ", tau = " << c.tau;
        return c.type == MapType::ParabolicZeroStep && std::abs(c.tau - 1.0) < 1e-6;
    });
    cl.check("A_phi = {k + it : t >= -k}", [&](std::ostringstream& os) {
        int wrong = 0, total = 0;
        for (int k = -3; k <= 3; ++k)
            for (double dt : {-0.5, -0.01, 0.0, 0.3, 2.0}) {
                const double t = -k + dt;
                const bool expect = dt >= 0;
                const bool got = contains_translate(*ex.omega, cplx(k, t));
                ++total;
                if (got != expect) {
                    ++wrong;
                    os << "mismatch at " << cplx(k, t) << "; ";
                }
            }
        for (double x : {0.5, -0.5, 1.25}) {
            ++total;
            if (contains_translate(*ex.omega, cplx(x, 3))) {
                ++wrong;
                os << "non-integer real part " << x << " accepted; ";
            }
        }
        os << total - wrong << "/" << total << " table entries agree";
        return wrong == 0;
    });
    cl.check("Omega + it inside Omega for t >= 0", [&](std::ostringstream& os) {
        bool ok = true;
        for (double t : {1e-3, 0.25, 1.0, 7.5}) ok = ok && contains_translate(*ex.omega, cplx(0, t));
        os << (ok ? "all members" : "some t rejected");
        return ok;
    });
    cl.check("Omega+0.5 not inside Omega", [&](std::ostringstream& os) {
        const auto rep = translate_report(*ex.omega, 0.5);
        os << membership_name(rep.membership);
        return rep.membership == Membership::NonMember;
    });
    cl.check("id is not isolated: h^{-1}(h + 0.001i) is close to id", [&](std::ostringstream& os) {
        const HoloMap phiT = ex.t_map(cplx(0, 1e-3));
        double dev = 0;
        for (cplx z : disc_grid(20, 0.5, 5)) dev = std::max(dev, std::abs(eval(phiT, z) - z));
        os << "max |phi_t(z) - z| = " << dev << " on |z| <= 0.5";
        return dev > 0 && dev < 1e-2;
    });
    cl.check("not embeddable, sector gap found", [&](std::ostringstream& os) {
        const EmbeddabilityVerdict v = embeddable_verdict(ex.phi, 0.5, 0.3);
        os << to_string(v.verdict) << (v.gapFound ? " + GapFound" : "") << " (" << v.evidence << ")";
        return v.verdict == Verdict::NotEmbeddable && v.gapFound;
    });
}

void z_non_abelian(Checklist& cl, std::uint64_t seed) {
    const ModelExample ex = ex_z_non_abelian();
    cl.check("phi_1 is parabolic of positive step", [&](std::ostringstream& os) {
        const Classification c = classify_type(ex.phi);
        os << to_string(c.type) << " via " << to_string(c.method);
        return c.type == MapType::ParabolicPositiveStep;
    });
    cl.check("phi_1 is embeddable", [&](std::ostringstream& os) {
        const EmbeddabilityVerdict v = embeddable_verdict(ex.phi, 0.5, 0.3);
        os << to_string(v.verdict) << " (" << v.evidence << ")";
        return v.verdict == Verdict::Embeddable;
    });
    psi_star_invariance(cl, *ex.omega);
    const HoloMap psi1 = conjugate(ex.h, flow_map(psi_star(), 1.0));
    cl.check("psi*_1 commutes with phi_1", [&](std::ostringstream& os) {
        const CommuteReport r = commutes(psi1, ex.phi, 20, 1e-8, seed);
        os << "residual " << r.residual;
        return r.commute;
    });
    cl.check("psi*_t and phi_s do not commute", [&](std::ostringstream& os) {
        double best = 0;
        std::pair<double, double> at{0, 0};
        for (double t : {1.0, 0.5})
            for (double s : {0.5, 0.25}) {
                const HoloMap pt = t == 1.0 ? psi1 : conjugate(ex.h, flow_map(psi_star(), t));
                const double r = commutes(pt, ex.t_map(s), 20, 1e-8, seed).residual;
                if (r > best) best = r, at = {t, s};
                if (best > 1e-3) break;
            }
        os << "residual " << best << " at (t, s) = (" << at.first << ", " << at.second << ")";
        return best > 1e-3;
    });
}

void again_non_abelian(Checklist& cl, std::uint64_t seed) {
    const auto omega = std::make_shared<const KoenigsDomain>(ex_again_domain());
    cl.check("phi is parabolic of positive step with upper base", [&](std::ostringstream& os) {
        const Classification c = classify_from_abel_solution(AbelSolution{HoloMap{}, omega, 0.0});
        os << to_string(c.type) << (c.lowerBase ? " (lower)" : " (upper)");
        return c.type == MapType::ParabolicPositiveStep && !c.lowerBase;
    });
    cl.check("phi is not embeddable", [&](std::ostringstream& os) {
        const EmbeddabilityVerdict v = embeddable_verdict(*omega, 0.5, 0.3);
        os << to_string(v.verdict) << (v.gapFound ? " + GapFound" : "");
        return v.verdict == Verdict::NotEmbeddable;
    });
    cl.check("Omega + it inside Omega, Omega + 0.5 not", [&](std::ostringstream& os) {
        const bool a = contains_translate(*omega, cplx(0, 0.5)), b = contains_translate(*omega, cplx(0, 2));
        const bool c = contains_translate(*omega, 0.5);
        os << "0.5i " << a << ", 2i " << b << ", 0.5 " << c;
        return a && b && !c;
    });
    psi_star_invariance(cl, *omega);
    cl.check("w + it does not commute with Psi*_s", [&](std::ostringstream& os) {
        const auto pts = interior_points(*omega, -2.5, 1.5, 0.2, 2.0, 6, 0.05);
        double r = 0;
        for (cplx w : pts) {
            const cplx lhs = flow(psi_star(), w + cplx(0, 0.5), 1.0);
            const cplx rhs = flow(psi_star(), w, 1.0) + cplx(0, 0.5);
            r = std::max(r, std::abs(lhs - rhs));
        }
        os << "residual " << r << " over " << pts.size() << " points (s = 1, t = 0.5, seed " << seed << ")";
        return r > 1e-3;
    });
}

void a_neq_astar(Checklist& cl, std::uint64_t) {
    const KoenigsDomain omega = ex_a_neq_astar_domain();
    const HoloMap hs = two_log_cos();
    // Im h_* = 2 arg cos(pi w), so the criterion holds for the half angle
    cl.check("curve criterion tan(Im h_*(a+it) / 2) = -tan(pi a) tanh(pi t)", [&](std::ostringstream& os) {
        double r = 0;
        for (double a : {-0.4, -0.2, 0.1, 0.3})
            for (double t : {0.1, 0.5, 1.5}) {
                const double lhs = std::tan(eval(hs, cplx(a, t)).imag() / 2);
                r = std::max(r, std::abs(lhs + std::tan(kPi * a) * std::tanh(kPi * t)));
            }
        os << "max deviation " << r;
        return r < 1e-10;
    });
    cl.check("slits are not vertical", [&](std::ostringstream& os) {
        const auto& g = std::get<SampledCurve>(omega.blockers.front());
        double lo = kInf, hi = -kInf, dev = 0;
        for (cplx w : g.points) {
            lo = std::min(lo, w.real());
            hi = std::max(hi, w.real());
            if (w.imag() > 1e-3)
                dev = std::max(dev, std::abs(std::tan(kPi * w.real()) * std::tanh(kPi * w.imag()) + std::sqrt(3.0)));
        }
        os << "Re spread " << hi - lo << ", criterion deviation on samples " << dev;
        return hi - lo > 0.1 && dev < 1e-6;
    });
    cl.check("it not in A_phi for small t", [&](std::ostringstream& os) {
        bool ok = true;
        for (double t : {0.01, 0.05, 0.1}) {
            const auto rep = translate_report(omega, cplx(0, t));
            os << "it = " << t << "i: " << membership_name(rep.membership) << "; ";
            ok = ok && rep.membership == Membership::NonMember;
        }
        return ok;
    });
    cl.check("it in A*_phi via tG_*(i inf) = it/(2 pi)", [&](std::ostringstream& os) {
        bool ok = true;
        for (double t : {0.05, 0.5}) {
            const CentralizerConstant s = flow_s_value(cot_generator(), t, omega);
            const cplx expect(0, t / (2 * kPi));
            os << "t = " << t << ": S = " << s.value << "; ";
            ok = ok && std::abs(s.value - expect) < 1e-8;
        }
        return ok;
    });
    cl.check("A_phi differs from A*_phi", [&](std::ostringstream& os) {
        const double t = 2 * kPi * 0.01;
        const cplx c = flow_s_value(cot_generator(), t, omega).value;
        const auto rep = translate_report(omega, c);
        os << "S(psi*_t) = " << c << " is a " << membership_name(rep.membership) << " of A_phi";
        return rep.membership == Membership::NonMember;
    });
}

void reciprocal(Checklist& cl, std::uint64_t) {
    struct Case {
        const char* label;
        ReciprocalSet A;
        std::vector<double> members, others;
        Verdict verdict;
    };
    const std::vector<Case> cases = {
        {"N0", {}, {0, 1, 2, 5}, {0.5, 1.5, -1, 2.25}, Verdict::NotEmbeddable},
        {"N0 + [2.5, inf)", {{}, {2.5}}, {1, 2.5, 3.7}, {0.5, 1.5, 2.25}, Verdict::NotEmbeddable},
        {"[0, inf)", {{}, {0}}, {0.25, 1, 3.3}, {-0.5}, Verdict::Embeddable},
    };
    for (const auto& k : cases) {
        const auto omega = std::make_shared<const KoenigsDomain>(build_reciprocal_domain(k.A));
        cl.check(std::string("A = ") + k.label + ": real scan reproduces A", [&](std::ostringstream& os) {
            bool ok = true;
            for (double x : k.members) ok = ok && contains_translate(*omega, x);
            for (double x : k.others) ok = ok && !contains_translate(*omega, x);
            os << (ok ? "all probes agree" : "probe mismatch");
            return ok;
        });
        cl.check(std::string("A = ") + k.label + ": " + std::string(to_string(k.verdict)), [&](std::ostringstream& os) {
            const EmbeddabilityVerdict v = embeddable_verdict(*omega, 0.5, 0.3);
            os << to_string(v.verdict) << (v.gapFound ? " + GapFound" : "");
            return v.verdict == k.verdict;
        });
        cl.check(std::string("A = ") + k.label + ": hyperbolic", [&](std::ostringstream& os) {
            const Classification c = classify_from_abel_solution(AbelSolution{HoloMap{}, omega, 0.0});
            os << to_string(c.type) << ", multiplier " << c.multiplier;
            return c.type == MapType::Hyperbolic && std::abs(c.multiplier - std::exp(-kPi)) < 1e-12;
        });
    }
}

}  // namespace

bool ReplicationReport::all_pass() const {
    for (const auto& c : claims)
        if (!c.pass) return false;
    return !claims.empty();
}

void ReplicationReport::require_all() const {
    for (const auto& c : claims)
        if (!c.pass) throw Error(ErrorCode::ClaimFailed, example + ": " + c.name + ": " + c.detail);
}

const std::vector<std::string>& example_ids() {
    static const std::vector<std::string> ids = {"ex-parab-autom",       "ex-non-non",     "ex-z-non-abelian",
                                                 "ex-again-non-abelian", "ex-a-neq-astar", "prop-reciprocal"};
    return ids;
}

ReplicationReport replicate(std::string_view exampleId, std::uint64_t seed) {
    using Fn = void (*)(Checklist&, std::uint64_t);
    static const std::pair<std::string_view, Fn> table[] = {
        {"ex-parab-autom", parab_autom},     {"ex-non-non", non_non},
        {"ex-z-non-abelian", z_non_abelian}, {"ex-again-non-abelian", again_non_abelian},
        {"ex-a-neq-astar", a_neq_astar},     {"prop-reciprocal", reciprocal},
    };
    for (const auto& [id, fn] : table) {
        if (id != exampleId) continue;
        ReplicationReport r;
        r.example = std::string(id);
        r.seed = seed;
        const auto t0 = std::chrono::steady_clock::now();
        Checklist cl{r.claims};
        fn(cl, seed);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    }
    throw Error(ErrorCode::UnsupportedInput, "unknown example \"" + std::string(exampleId) + "\"");
}

json to_json(const ReplicationReport& r) {
    json claims = json::array();
    for (const auto& c : r.claims) claims.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"example", r.example}, {"seed", r.seed}, {"allPass", r.all_pass()}, {"seconds", r.seconds},
            {"claims", claims}};
}

}  // namespace koenigs
