#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "koenigs/abel.hpp"

namespace koenigs {

struct CommuteReport {
    bool commute = false;
    double residual = 0;
};

CommuteReport commutes(const HoloMap& phi, const HoloMap& psi, int gridSize = 200, double tol = 1e-8,
                       std::uint64_t seed = 1);

// psi_b = h^{-1}(h + b)
HoloMap t_map(const AbelSolution& h, cplx b);

CentralizerConstant s_map(const HoloMap& phi, const HoloMap& psi, const Classification& cls);

struct PHSRepresentation {
    HoloMap F;  // on the punctured disc, psi = h^{-1}(w + F(e^{2 pi i w}))h
    cplx F0;
    double minImag = 0;  // smallest Im F seen on the check grid
};

PHSRepresentation phs_representation(const HoloMap& phi, const HoloMap& psi);

enum class Verdict { Embeddable, NotEmbeddable, Inconclusive };
enum class EmbedMethod { StarlikeTest, SectorScan, HyperbolicDichotomy };
std::string_view to_string(Verdict v);
std::string_view to_string(EmbedMethod m);

struct EmbeddabilityVerdict {
    Verdict verdict = Verdict::Inconclusive;
    bool gapFound = false;  // no element of A_phi in {0 < |c| < rho, |Arg c| < delta}
    double rho = 0, delta = 0;
    EmbedMethod method = EmbedMethod::StarlikeTest;
    std::string evidence;
};

EmbeddabilityVerdict embeddable_verdict(const HoloMap& phi, double rho, double delta, int samples = 40);
// Verdict for the model map h^{-1}(h + 1) whose Koenigs domain is omega.
EmbeddabilityVerdict embeddable_verdict(const KoenigsDomain& omega, double rho, double delta, int samples = 40);

struct SecondDerivRelation {
    cplx psi2, phi2, s;
    double relationResidual = 0;
    double errorEstimate = 0;
};

// lim 2(m(z) - z)/(z - tau)^2 along the radius
Extrapolated second_angular_derivative(const HoloMap& m, cplx tau, const std::vector<double>& ladder = default_ladder());

SecondDerivRelation second_deriv_relation(const HoloMap& phi, const HoloMap& psi, cplx tau);

}  // namespace koenigs
