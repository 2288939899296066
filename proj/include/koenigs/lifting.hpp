#pragma once

#include "koenigs/maps.hpp"

namespace koenigs {

// A self-map g of H with g(w + 1) = g(w) + 1, checked on a grid.
struct PeriodicMap {
    HoloMap g;
    double verifiedShiftResidual = 0;
};

PeriodicMap make_periodic(const HoloMap& g, double tol = 1e-8);

// f(zeta) := F(w) for e^{2 pi i w} = zeta, with F of period 1.
HoloMap project_periodic(const HoloMap& F, cplx samplePoint);

struct PushedMap {
    HoloMap f;        // e^{2 pi i g(w)} = f(e^{2 pi i w}), f(0) = 0
    cplx fprime0;     // lim e^{2 pi i (g(w) - w)} as Im w -> inf, sampled at Im w = 6
    double tailBound = 0;
};

PushedMap push_commuting(const PeriodicMap& g);

struct LiftedMap {
    HoloMap F;    // F(w + 1) = F(w) + 1, exp(2 pi i F(w)) = f(e^{2 pi i w})
    cplx w0;      // normalization point
    cplx Fw0;     // F(w0)
};

// Winding number of f around 0 along |zeta| = radius (trapezoidal rule).
cplx winding_number(const HoloMap& f, double radius, int nodes = 512);

LiftedMap lift_univalent(const HoloMap& f, cplx w0 = {0, 3}, double absTol = 1e-10);

struct LiftedPair {
    HoloMap f, F;
    double conjugacyResidual = 0;
};

// max |f(e^{2 pi i w}) - exp(2 pi i F(w))| over grid points of H
double conjugacy_residual(const HoloMap& f, const HoloMap& F, const std::vector<cplx>& grid);

std::vector<cplx> halfplane_grid(int n, double imMin = 0.1, double imMax = 1.5);

}  // namespace koenigs
