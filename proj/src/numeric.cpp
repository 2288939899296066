#include "koenigs/numeric.hpp"

#include <array>

namespace koenigs {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::OutsideDomain: return "OutsideDomain";
        case ErrorCode::NewtonDiverged: return "NewtonDiverged";
        case ErrorCode::BranchAmbiguous: return "BranchAmbiguous";
        case ErrorCode::DerivativeSingular: return "DerivativeSingular";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::NotConverged: return "NotConverged";
        case ErrorCode::InvalidDomain: return "InvalidDomain";
        case ErrorCode::UndecidableSampled: return "UndecidableSampled";
        case ErrorCode::UnsupportedSampled: return "UnsupportedSampled";
        case ErrorCode::NotASemigroup: return "NotASemigroup";
        case ErrorCode::NotASelfMap: return "NotASelfMap";
        case ErrorCode::InconsistentModel: return "InconsistentModel";
        case ErrorCode::EllipticInput: return "EllipticInput";
        case ErrorCode::MultiplierOutOfRange: return "MultiplierOutOfRange";
        case ErrorCode::NotCommuting: return "NotCommuting";
        case ErrorCode::BranchUnresolved: return "BranchUnresolved";
        case ErrorCode::NotPeriodic: return "NotPeriodic";
        case ErrorCode::WindingNotOne: return "WindingNotOne";
        case ErrorCode::QuadratureFailed: return "QuadratureFailed";
        case ErrorCode::NotInSemigroup: return "NotInSemigroup";
        case ErrorCode::MismatchedMethods: return "MismatchedMethods";
        case ErrorCode::NegativeImaginaryPart: return "NegativeImaginaryPart";
        case ErrorCode::UnsupportedInput: return "UnsupportedInput";
        case ErrorCode::IntegrationFailed: return "IntegrationFailed";
        case ErrorCode::LeftDomain: return "LeftDomain";
        case ErrorCode::NotHerglotz: return "NotHerglotz";
        case ErrorCode::ZeroAtOrigin: return "ZeroAtOrigin";
        case ErrorCode::NoLimit: return "NoLimit";
        case ErrorCode::NotInvariant: return "NotInvariant";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ClaimFailed: return "ClaimFailed";
    }
    return "Unknown";
}

namespace {

constexpr std::array<long double, 8> kXk = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
constexpr std::array<long double, 8> kWk = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
constexpr std::array<long double, 4> kWg = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

template <class S>
Cx<S> gk15(const std::function<Cx<S>(Cx<S>)>& f, Cx<S> a, Cx<S> b, S& err) {
    const Cx<S> mid = (a + b) / S(2);
    const Cx<S> half = (b - a) / S(2);
    const Cx<S> fc = f(mid);
    Cx<S> kron = fc * static_cast<S>(kWk[7]);
    Cx<S> gauss = fc * static_cast<S>(kWg[3]);
    for (int j = 0; j < 7; ++j) {
        const Cx<S> dx = half * static_cast<S>(kXk[j]);
        const Cx<S> s = f(mid - dx) + f(mid + dx);
        kron += s * static_cast<S>(kWk[j]);
        if (j % 2 == 1) gauss += s * static_cast<S>(kWg[j / 2]);
    }
    err = std::abs((kron - gauss) * half);
    return kron * half;
}

template <class S>
Cx<S> adapt(const std::function<Cx<S>(Cx<S>)>& f, Cx<S> a, Cx<S> b, double tol, int depth) {
    S err{};
    const Cx<S> whole = gk15(f, a, b, err);
    if (!is_finite(whole)) throw Error(ErrorCode::QuadratureFailed, "non-finite integrand");
    if (err <= static_cast<S>(tol)) return whole;
    if (depth <= 0) throw Error(ErrorCode::QuadratureFailed, "maximum subdivision depth reached");
    const Cx<S> mid = (a + b) / S(2);
    return adapt(f, a, mid, tol / 2, depth - 1) + adapt(f, mid, b, tol / 2, depth - 1);
}

}  // namespace

template <class S>
Cx<S> integrate_segment(const std::function<Cx<S>(Cx<S>)>& f, Cx<S> a, Cx<S> b, double absTol,
                        int maxDepth) {
    if (a == b) return {};
    return adapt(f, a, b, absTol, maxDepth);
}

template Cx<double> integrate_segment<double>(const std::function<Cx<double>(Cx<double>)>&, Cx<double>,
                                              Cx<double>, double, int);
template Cx<long double> integrate_segment<long double>(
    const std::function<Cx<long double>(Cx<long double>)>&, Cx<long double>, Cx<long double>, double, int);

}  // namespace koenigs
