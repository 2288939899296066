#pragma once

#include <memory>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "koenigs/classify.hpp"
#include "koenigs/geometry.hpp"
#include "koenigs/maps.hpp"

namespace koenigs {

enum class ConstantMethod { ParabolicRatio, HyperbolicLogRatio, RepresentationF0, Constructed };
std::string_view to_string(ConstantMethod m);

struct CentralizerConstant {
    cplx value{0, 0};
    double errorEstimate = 0;
    ConstantMethod method = ConstantMethod::Constructed;
    std::optional<double> crossCheckSpread;  // largest disagreement with an independent route
};

struct AbelSolution {
    HoloMap h;
    std::shared_ptr<const KoenigsDomain> image;  // null when the image is not known in closed form
    cplx normalization{0, 0};                    // h(0)
};

AbelSolution make_abel_solution(const HoloMap& h, std::shared_ptr<const KoenigsDomain> image);

// max |h(phi(z)) - h(z) - shift| over the grid
double abel_residual(const HoloMap& h, const HoloMap& phi, const std::vector<cplx>& grid, cplx shift = 1);

CentralizerConstant c_constant(const HoloMap& phi, const HoloMap& psi, cplx tau, const Classification& cls,
                               const std::vector<double>& ladder = default_ladder());

// (h(phi(z)) - h(z)) / (h'(z) (phi(z) - z)) along z = tau r
std::vector<cplx> valiron_ratio(const HoloMap& h, const HoloMap& phi, cplx tau,
                                const std::vector<double>& ladder = default_ladder());

struct SchroderSolution {
    HoloMap h0;  // h0 o f = lambda h0, h0(0) = 0, h0'(0) = 1
    cplx lambda;
};

SchroderSolution koenigs_elliptic(const HoloMap& f, long maxIter = 10000, double tol = 1e-10);

struct SimultaneousResult {
    AbelSolution solution;  // h_* with h_* o phi = h_* + 1 and h_* o psi = h_* + c
    CentralizerConstant c;
    cplx fprime0;
    bool translation = false;
    double commuteResidual = 0;
    double residualPhi = 0;
    double residualPsi = 0;
};

SimultaneousResult simultaneous_abel_phs(const HoloMap& phi, const HoloMap& psi, std::uint64_t seed = 7);

Classification classify_from_abel_solution(const AbelSolution& h);

// CSV rows "re_z,im_z,re_h,im_h"
void write_table_csv(std::ostream& os, const AbelSolution& h, const std::vector<cplx>& grid);

}  // namespace koenigs
