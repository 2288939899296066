#pragma once

#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "koenigs/numeric.hpp"

namespace koenigs {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class BaseKind { Plane, UpperHalfPlane, LowerHalfPlane, Strip };

struct BaseSpace {
    BaseKind kind = BaseKind::Plane;
    double a = 0, b = 0;  // strip a < Im w < b

    static BaseSpace plane() { return {BaseKind::Plane}; }
    static BaseSpace upper() { return {BaseKind::UpperHalfPlane}; }
    static BaseSpace lower() { return {BaseKind::LowerHalfPlane}; }
    static BaseSpace strip(double a, double b) { return {BaseKind::Strip, a, b}; }

    double y_min() const;  // lower bound of the open Im-range
    double y_max() const;
    bool contains(cplx w) const { return w.imag() > y_min() && w.imag() < y_max(); }
};

// alpha + slope * n; alpha may be +-inf.
struct AffineForm {
    double alpha = 0, slope = 0;
    double operator()(double n) const { return std::isinf(alpha) ? alpha : alpha + slope * n; }
    static AffineForm constant(double v) { return {v, 0}; }
};

enum class IndexKind { Range, Naturals, Integers };

struct IndexSet {
    IndexKind kind = IndexKind::Range;
    long lo = 0, hi = 0;  // inclusive, Range only

    static IndexSet range(long lo, long hi) { return {IndexKind::Range, lo, hi}; }
    static IndexSet single(long n) { return {IndexKind::Range, n, n}; }
    static IndexSet naturals() { return {IndexKind::Naturals}; }
    static IndexSet integers() { return {IndexKind::Integers}; }

    bool contains(long n) const;
    bool finite() const { return kind == IndexKind::Range; }
};

// Vertical segments {x0 + n dx + iy : yLow(n) <= y <= yHigh(n)}, n in indices.
struct SlitFamily {
    double x0 = 0, dx = 0;
    AffineForm yLow, yHigh;
    IndexSet indices;
    double x(long n) const { return x0 + static_cast<double>(n) * dx; }
};

// {Re w <= xMax, yLow <= Im w <= yHigh}
struct LeftHalfStrip {
    double xMax = 0, yLow = -kInf, yHigh = 0;
};

// Polyline samples with copies points + n * shift for n in copies.
struct SampledCurve {
    std::vector<cplx> points;
    std::string tailRule;
    cplx shift{0, 0};
    IndexSet copies = IndexSet::single(0);
};

using Blocker = std::variant<SlitFamily, LeftHalfStrip, SampledCurve>;

enum class Exactness { Exact, Sampled };

struct GeometryTolerance {
    double exact = 1e-12;       // coordinate comparisons for affine data
    double sampledCover = 1e-7;  // a shifted sample counts as covered below this distance
    double sampledMiss = 1e-4;   // and as certainly uncovered above this one
};

struct KoenigsDomain {
    BaseSpace base;
    std::vector<Blocker> blockers;

    Exactness exactness() const;
    void validate() const;  // throws InvalidDomain
    bool contains(cplx w) const { return base.contains(w) && distance_to_blockers(w) > 0; }
    double distance_to_blockers(cplx w) const;
    // true when the closed segment [p, q] meets a blocker or leaves the base
    bool segment_blocked(cplx p, cplx q) const;
};

enum class Membership { Member, NonMember, Undecidable };

struct TranslateReport {
    Membership membership = Membership::NonMember;
    bool approximate = false;
    double maxDeviation = 0;  // sampled curves: worst distance of a shifted sample to the complement
};

TranslateReport translate_report(const KoenigsDomain& omega, cplx c, const GeometryTolerance& tol = {});
bool contains_translate(const KoenigsDomain& omega, cplx c, const GeometryTolerance& tol = {});

struct ScanPoint {
    cplx c;
    Membership membership;
};
std::vector<ScanPoint> semigroup_membership_scan(const KoenigsDomain& omega, const std::vector<cplx>& grid,
                                                 const GeometryTolerance& tol = {});

bool starlike_at_infinity(const KoenigsDomain& omega);

bool sector_gap(const KoenigsDomain& omega, double rho, double delta, int samples,
                const GeometryTolerance& tol = {});

enum class UnionClass { FullPlane, ContainsUpperHalfPlane, ContainsLowerHalfPlane, StripLike };
std::string_view to_string(UnionClass u);

UnionClass base_of_union(const KoenigsDomain& omega);

// Closed additive semigroup N0 + points + rays [r, inf).
struct ReciprocalSet {
    std::vector<double> points;
    std::vector<double> rays;
    bool contains(double x, double tol = 1e-12) const;
};

KoenigsDomain build_reciprocal_domain(const ReciprocalSet& A);

// Sector grid used by sector_gap and the CLI scan: samples^2 points with 0 < |c| < rho, |Arg c| < delta.
std::vector<cplx> sector_grid(double rho, double delta, int samples);

}  // namespace koenigs
