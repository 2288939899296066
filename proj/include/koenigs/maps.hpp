#pragma once

#include <Eigen/Core>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "koenigs/geometry.hpp"

namespace koenigs {

using Mat2 = Eigen::Matrix2cd;

struct Region {
    enum class Kind { Plane, Disc, UpperHalfPlane, SlitPlane, PuncturedDisc };
    Kind kind = Kind::Plane;

    template <class S>
    bool contains(Cx<S> z) const {
        switch (kind) {
            case Kind::Plane: return is_finite(z);
            case Kind::Disc: return std::norm(z) < S(1);
            case Kind::UpperHalfPlane: return z.imag() > S(0) && is_finite(z);
            case Kind::SlitPlane: return is_finite(z) && !(z.imag() == S(0) && z.real() <= S(0));
            case Kind::PuncturedDisc: return std::norm(z) < S(1) && z != Cx<S>(0);
        }
        return false;
    }
};

std::string_view to_string(Region::Kind k);

// Per-call inversion state. The seed is the previous inversion result or an orbit point.
struct BranchContext {
    std::optional<Cx<long double>> seed;
    double toleranceAbs = 1e-12;
    int maxNewtonSteps = 60;
};

enum class AtomKind {
    Cayley,         // i(1+z)/(1-z)
    InverseCayley,  // (w-i)/(w+i)
    Log,
    Exp,
    Power,          // params[0] = exponent, principal branch
    Affine,         // params[0] * z + params[1]
    Constant,       // params[0]
    TwoLogCos,      // 2 log cos(pi w), continued through the upper half-plane
    CotGenerator,   // -cot(pi w)/(2 pi)
    ExpPeriodic,    // e^{2 pi i w}
    CombSlits,      // upper half-plane onto C minus the slits {n + iy : y <= -(n+1)}
    StepCorner,     // upper half-plane onto H minus {Re <= 0, Im <= 1}
    UserClosedForm,
};

std::string_view to_string(AtomKind k);

class HoloMap;

// Evaluator for maps without a closed-form node (user closed forms, lifted and limit maps).
class Evaluator {
public:
    virtual ~Evaluator() = default;
    virtual std::string name() const = 0;
    virtual Cx<double> value(Cx<double> z, BranchContext& ctx) const = 0;
    virtual Cx<long double> value(Cx<long double> z, BranchContext& ctx) const = 0;
    virtual Cx<double> derivative(Cx<double> z, BranchContext& ctx) const = 0;
    virtual Cx<long double> derivative(Cx<long double> z, BranchContext& ctx) const = 0;
};

enum class ArithOp { Add, Sub, Mul };

struct MobiusNode {
    Mat2 m;
};
struct AtomNode {
    AtomKind kind;
    std::vector<cplx> params;
};
struct ComposeNode;
struct ModelNode;
struct InverseNode;
struct ArithNode;
struct CustomNode {
    std::shared_ptr<const Evaluator> impl;
};

struct MapNode;

class HoloMap {
public:
    HoloMap() = default;
    explicit HoloMap(std::shared_ptr<const MapNode> node) : node_(std::move(node)) {}
    const MapNode& node() const { return *node_; }
    bool valid() const { return static_cast<bool>(node_); }
    const Region& domain() const;
    std::string describe() const;

private:
    std::shared_ptr<const MapNode> node_;
};

struct ComposeNode {
    HoloMap outer, inner;
};
struct ModelNode {
    HoloMap h;
    std::shared_ptr<const KoenigsDomain> image;
    cplx shift;
};
struct InverseNode {
    HoloMap of;
    std::optional<cplx> branchRef;
};
struct ArithNode {
    ArithOp op;
    HoloMap lhs, rhs;
};

struct MapNode {
    std::variant<MobiusNode, AtomNode, ComposeNode, ModelNode, InverseNode, ArithNode, CustomNode> data;
    Region domain;
};

// Builders
HoloMap mobius(const Mat2& m, Region domain = {Region::Kind::Plane});
HoloMap atom(AtomKind kind, std::vector<cplx> params = {});
HoloMap identity();
HoloMap cayley();
HoloMap inverse_cayley();
HoloMap affine(cplx a, cplx b);
HoloMap constant(cplx c);
HoloMap power(cplx exponent);
HoloMap exp_periodic();
HoloMap two_log_cos();
HoloMap cot_generator();
HoloMap comb_slits();
HoloMap step_corner();
HoloMap user_closed_form(std::string name, std::function<cplx(cplx)> f, std::function<cplx(cplx)> df,
                         Region domain = {Region::Kind::Plane});
HoloMap custom(std::shared_ptr<const Evaluator> impl, Region domain);
HoloMap compose(const HoloMap& outer, const HoloMap& inner);
HoloMap inverse(const HoloMap& of, std::optional<cplx> branchRef = std::nullopt);
// h^{-1} o (w + shift) o h; checks that Omega + shift lies in Omega unless checkImage is false
HoloMap model_map(const HoloMap& h, std::shared_ptr<const KoenigsDomain> image, cplx shift,
                  bool checkImage = true);
HoloMap operator+(const HoloMap& a, const HoloMap& b);
HoloMap operator-(const HoloMap& a, const HoloMap& b);
HoloMap operator*(const HoloMap& a, const HoloMap& b);
HoloMap operator*(cplx s, const HoloMap& a);

// C^{-1} o (w -> (a w + b)/(c w + d)) o C as a disc Mobius map
HoloMap cayley_conjugate(const Mat2& halfPlaneMap);
HoloMap cayley_conjugate_affine(cplx a, cplx b);

// Matrix of the map if it is linear fractional.
std::optional<Mat2> as_mobius(const HoloMap& m);

template <class S>
Cx<S> eval(const HoloMap& m, Cx<S> z, BranchContext& ctx);
template <class S>
Cx<S> deriv(const HoloMap& m, Cx<S> z, BranchContext& ctx);
// Solves m(result) = w.
template <class S>
Cx<S> invert(const HoloMap& m, Cx<S> w, BranchContext& ctx);

inline cplx eval(const HoloMap& m, cplx z) {
    BranchContext ctx;
    return eval<double>(m, z, ctx);
}
inline cplx deriv(const HoloMap& m, cplx z) {
    BranchContext ctx;
    return deriv<double>(m, z, ctx);
}
inline cplx invert(const HoloMap& m, cplx w) {
    BranchContext ctx;
    return invert<double>(m, w, ctx);
}
inline Cx<long double> eval_ld(const HoloMap& m, Cx<long double> z) {
    BranchContext ctx;
    return eval<long double>(m, z, ctx);
}
inline Cx<long double> deriv_ld(const HoloMap& m, Cx<long double> z) {
    BranchContext ctx;
    return deriv<long double>(m, z, ctx);
}

struct Orbit {
    cplx value;
    std::vector<cplx> points;  // z_0, ..., z_n
};
Orbit iterate(const HoloMap& m, cplx z, long n, BranchContext& ctx);

// Limit of f along z = tau * r, r in the ladder, extrapolated in 1 - r.
Extrapolated radial_limit(const std::function<Cx<long double>(Cx<long double>)>& f, cplx tau,
                          const std::vector<double>& ladder = default_ladder());

// Angular derivative (m(z) - tau)/(z - tau) at a boundary fixed point tau.
Extrapolated angular_derivative(const HoloMap& m, cplx tau, const std::vector<double>& ladder = default_ladder());

}  // namespace koenigs
