#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "koenigs/maps.hpp"

namespace koenigs {

enum class MapType { Elliptic, EllipticAutomorphism, Hyperbolic, ParabolicZeroStep, ParabolicPositiveStep, Identity };
enum class ClassMethod { Orbit, MobiusExact, ModelBase, AbelSolution };

std::string_view to_string(MapType t);
std::string_view to_string(ClassMethod m);

struct Classification {
    MapType type = MapType::Identity;
    cplx tau{0, 0};
    cplx multiplier{1, 0};
    std::optional<double> stepEstimate;
    ClassMethod method = ClassMethod::Orbit;
    bool automorphism = false;
    bool lowerBase = false;  // positive step with a lower half-plane canonical base
    double tauError = 0;
    double multiplierError = 0;
};

struct DWEstimate {
    cplx tau;
    double confidence = 0;  // estimated distance to the limit
    bool boundary = false;
    bool identity = false;
};

DWEstimate denjoy_wolff(const HoloMap& phi, cplx z0, long maxIter = 1000);

Classification mobius_classify(const Mat2& M);

Classification classify_type(const HoloMap& phi, cplx z0 = 0);

enum class StepVerdict { ZeroStep, PositiveStep, Inconclusive };
std::string_view to_string(StepVerdict v);

struct StepEstimate {
    double estimate = 0;
    bool decreasing = false;
    StepVerdict verdict = StepVerdict::Inconclusive;
    std::vector<double> samples;  // rho(z_k, z_{k+1}) at increasing k
};

// Pseudo-hyperbolic distance |z - w| / |1 - conj(w) z|.
long double pseudo_hyperbolic(Cx<long double> z, Cx<long double> w);

StepEstimate hyperbolic_step(const HoloMap& phi, cplx z0, long n = 10000);

}  // namespace koenigs
