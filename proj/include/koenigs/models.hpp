#pragma once

#include <memory>
#include <string>

#include "koenigs/maps.hpp"

namespace koenigs {

// A map given by its Koenigs model: phi = h^{-1} o (w + 1) o h with image omega.
struct ModelExample {
    std::string id;
    HoloMap h;
    std::shared_ptr<const KoenigsDomain> omega;
    HoloMap phi;
    cplx tau{1, 0};

    HoloMap t_map(cplx b) const { return model_map(h, omega, b); }
};

// h = Cayley, omega = H: phi is the parabolic automorphism C^{-1}(w + 1)C.
ModelExample ex_parab_autom();
// omega = C minus {n + iy : y <= -(n+1)}, normalized by h(0) = 0.
ModelExample ex_non_non();
// omega = H minus {Re <= 0, Im <= 1}.
ModelExample ex_z_non_abelian();
// omega = strip {0 < Im < width}; multiplier exp(-pi / width).
ModelExample strip_model(double width);

KoenigsDomain ex_non_non_domain();
KoenigsDomain ex_z_non_abelian_domain();
// H minus the slits -k + i[0, 1], k in N0.
KoenigsDomain ex_again_domain();
// H minus the curves h_*^{-1}({x + 2 pi i (k + 1/3) : x <= 0}), k in N0, sampled.
KoenigsDomain ex_a_neq_astar_domain(int samples = 1000);

// h^{-1} o g o h
HoloMap conjugate(const HoloMap& h, const HoloMap& g);

}  // namespace koenigs
