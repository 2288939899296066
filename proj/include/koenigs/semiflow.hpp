#pragma once

#include <optional>
#include <ostream>
#include <variant>
#include <vector>

#include "koenigs/abel.hpp"

namespace koenigs {

struct IntegratorOptions {
    double relTol = 1e-9;
    double absTol = 1e-12;
    double maxStep = 0;  // 0: unbounded
};

struct GeneratorSource {
    HoloMap G;
    Region domain;
    std::optional<HoloMap> koenigs;  // h with h' = 1/G, used to certify trajectories
};

struct KoenigsSource {
    AbelSolution h;
};

struct SemigroupSpec {
    std::variant<GeneratorSource, KoenigsSource> source;
    IntegratorOptions integrator;
};

SemigroupSpec generator_semigroup(const HoloMap& G, Region domain, std::optional<HoloMap> koenigs = std::nullopt,
                                  IntegratorOptions opts = {});
SemigroupSpec koenigs_semigroup(const AbelSolution& h);

cplx flow(const SemigroupSpec& s, cplx z0, double t);

struct Trajectory {
    std::vector<double> t;
    std::vector<cplx> z;
};

// Accepted integration steps from z0 to time t.
Trajectory flow_trajectory(const SemigroupSpec& s, cplx z0, double t);
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);

// phi_t as a map; the derivative comes from the variational equation.
HoloMap flow_map(const SemigroupSpec& s, double t);

struct LiftedGenerators {
    HoloMap disc;  // -z p(z)
    HoloMap half;  // (i / 2 pi) p(e^{2 pi i w})
};

LiftedGenerators lift_semigroup(const HoloMap& p);

struct PeriodicityReport {
    cplx constant;   // 2 pi / (i p(0))
    cplx integral;   // integral of 1/G_half over [w0, w0 + 1]
    double discrepancy = 0;
};

PeriodicityReport periodicity_constant(const HoloMap& p, cplx w0 = {0, 1});

CentralizerConstant flow_s_value(const HoloMap& GHalf, double t, const KoenigsDomain& omega);
CentralizerConstant flow_s_value(const HoloMap& GHalf, double t, const HoloMap& phi);

}  // namespace koenigs
