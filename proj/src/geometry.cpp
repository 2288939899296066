#include "koenigs/geometry.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace koenigs {

double BaseSpace::y_min() const {
    switch (kind) {
        case BaseKind::Plane: return -kInf;
        case BaseKind::UpperHalfPlane: return 0;
        case BaseKind::LowerHalfPlane: return -kInf;
        case BaseKind::Strip: return a;
    }
    return -kInf;
}

double BaseSpace::y_max() const {
    switch (kind) {
        case BaseKind::Plane: return kInf;
        case BaseKind::UpperHalfPlane: return kInf;
        case BaseKind::LowerHalfPlane: return 0;
        case BaseKind::Strip: return b;
    }
    return kInf;
}

bool IndexSet::contains(long n) const {
    switch (kind) {
        case IndexKind::Range: return n >= lo && n <= hi;
        case IndexKind::Naturals: return n >= 0;
        case IndexKind::Integers: return true;
    }
    return false;
}

std::string_view to_string(UnionClass u) {
    switch (u) {
        case UnionClass::FullPlane: return "FullPlane";
        case UnionClass::ContainsUpperHalfPlane: return "ContainsUpperHalfPlane";
        case UnionClass::ContainsLowerHalfPlane: return "ContainsLowerHalfPlane";
        case UnionClass::StripLike: return "StripLike";
    }
    return "Unknown";
}

namespace {

using Interval = std::pair<double, double>;

double finite_or_zero(double v) { return std::isfinite(v) ? std::abs(v) : 0.0; }

// Half-width of the index window outside of which every coverage predicate is constant.
// Each predicate compares affine functions of the index; two such functions cross at most once,
// at |n| <= (spread of intercepts + |c|) / (smallest nonzero slope difference).
long window_radius(const KoenigsDomain& d, cplx c) {
    double scale = std::abs(c);
    std::vector<double> slopes{0.0};
    for (const auto& b : d.blockers) {
        if (const auto* f = std::get_if<SlitFamily>(&b)) {
            scale += std::abs(f->x0) + finite_or_zero(f->yLow.alpha) + finite_or_zero(f->yHigh.alpha);
            slopes.push_back(f->dx);
            slopes.push_back(f->yLow.slope);
            slopes.push_back(f->yHigh.slope);
        } else if (const auto* s = std::get_if<LeftHalfStrip>(&b)) {
            scale += finite_or_zero(s->xMax) + finite_or_zero(s->yLow) + finite_or_zero(s->yHigh);
        } else if (const auto* g = std::get_if<SampledCurve>(&b)) {
            double ext = 0;
            for (auto p : g->points) ext = std::max(ext, std::abs(p));
            scale += ext;
            slopes.push_back(std::abs(g->shift));
        }
    }
    double minStep = kInf;
    for (std::size_t i = 0; i < slopes.size(); ++i)
        for (std::size_t j = i + 1; j < slopes.size(); ++j) {
            const double diff = std::abs(std::abs(slopes[i]) - std::abs(slopes[j]));
            if (diff > 1e-12) minStep = std::min(minStep, diff);
        }
    if (!std::isfinite(minStep)) minStep = 1.0;
    minStep = std::max(minStep, 1e-3);
    const double w = 4.0 + std::ceil(2.0 * scale / minStep);
    return static_cast<long>(std::min(w, 1e5));
}

std::vector<long> enumerate(const IndexSet& idx, long w) {
    std::vector<long> out;
    const long far = 4 * w + 1000;
    switch (idx.kind) {
        case IndexKind::Range:
            for (long n = idx.lo; n <= idx.hi; ++n) out.push_back(n);
            break;
        case IndexKind::Naturals:
            for (long n = 0; n <= w; ++n) out.push_back(n);
            out.push_back(far);
            break;
        case IndexKind::Integers:
            for (long n = -w; n <= w; ++n) out.push_back(n);
            out.push_back(-far);
            out.push_back(far);
            break;
    }
    return out;
}

bool cover(std::vector<Interval> iv, double lo, double hi, double tol) {
    std::sort(iv.begin(), iv.end());
    double reach = lo;
    for (const auto& [a, b] : iv) {
        if (a > reach + tol) break;
        reach = std::max(reach, b);
        if (reach >= hi - tol) return true;
    }
    return reach >= hi - tol;
}

class Coverage {
public:
    Coverage(const KoenigsDomain& d, double tol) : d_(d), tol_(tol) {}

    // {x} x [lo, hi] lies in the complement of the domain
    bool vertical(double x, double lo, double hi) const {
        const double L = std::max(lo, d_.base.y_min());
        const double H = std::min(hi, d_.base.y_max());
        if (H < L - tol_) return true;
        if (H <= L + tol_ && (std::abs(L - d_.base.y_min()) <= tol_ || std::abs(L - d_.base.y_max()) <= tol_))
            return true;
        std::vector<Interval> iv;
        for (const auto& b : d_.blockers) {
            if (const auto* f = std::get_if<SlitFamily>(&b)) {
                if (f->dx == 0) {
                    if (std::abs(f->x0 - x) <= tol_ * (1 + std::abs(x)) && f->indices.finite())
                        for (long n = f->indices.lo; n <= f->indices.hi; ++n)
                            iv.emplace_back(f->yLow(static_cast<double>(n)), f->yHigh(static_cast<double>(n)));
                    continue;
                }
                const double m = std::round((x - f->x0) / f->dx);
                const long mi = static_cast<long>(m);
                if (std::abs(f->x(mi) - x) <= tol_ * (1 + std::abs(x)) && f->indices.contains(mi))
                    iv.emplace_back(f->yLow(m), f->yHigh(m));
            } else if (const auto* s = std::get_if<LeftHalfStrip>(&b)) {
                if (s->xMax >= x - tol_) iv.emplace_back(s->yLow, s->yHigh);
            }
        }
        return cover(std::move(iv), L, H, tol_);
    }

    // {Re w <= x} x [lo, hi] lies in the complement of the domain
    bool region(double x, double lo, double hi) const {
        const double L = std::max(lo, d_.base.y_min());
        const double H = std::min(hi, d_.base.y_max());
        if (H < L - tol_) return true;
        if (H <= L + tol_ && (std::abs(L - d_.base.y_min()) <= tol_ || std::abs(L - d_.base.y_max()) <= tol_))
            return true;
        std::vector<Interval> iv;
        for (const auto& b : d_.blockers)
            if (const auto* s = std::get_if<LeftHalfStrip>(&b))
                if (s->xMax >= x - tol_) iv.emplace_back(s->yLow, s->yHigh);
        return cover(std::move(iv), L, H, tol_);
    }

private:
    const KoenigsDomain& d_;
    double tol_;
};

double segment_point_distance(cplx p, cplx a, cplx b) {
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0) return std::abs(p - a);
    const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_intersect(cplx p, cplx q, cplx a, cplx b) {
    const double d1 = cross(q - p, a - p), d2 = cross(q - p, b - p);
    const double d3 = cross(b - a, p - a), d4 = cross(b - a, q - a);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
    constexpr double eps = 1e-15;
    if (std::abs(d1) <= eps && segment_point_distance(a, p, q) <= eps) return true;
    if (std::abs(d2) <= eps && segment_point_distance(b, p, q) <= eps) return true;
    if (std::abs(d3) <= eps && segment_point_distance(p, a, b) <= eps) return true;
    if (std::abs(d4) <= eps && segment_point_distance(q, a, b) <= eps) return true;
    return false;
}

double clampbig(double v) { return std::clamp(v, -1e12, 1e12); }

struct CurveBox {
    double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
};

CurveBox box_of(const SampledCurve& g) {
    CurveBox b;
    for (auto p : g.points) {
        b.xmin = std::min(b.xmin, p.real());
        b.xmax = std::max(b.xmax, p.real());
        b.ymin = std::min(b.ymin, p.imag());
        b.ymax = std::max(b.ymax, p.imag());
    }
    return b;
}

// copies of g whose bounding box, enlarged by margin, can contain w
std::vector<long> candidate_copies(const SampledCurve& g, cplx w, double margin) {
    std::vector<long> out;
    const CurveBox b = box_of(g);
    auto near = [&](long n) {
        const cplx s = static_cast<double>(n) * g.shift;
        return w.real() >= b.xmin + s.real() - margin && w.real() <= b.xmax + s.real() + margin &&
               w.imag() >= b.ymin + s.imag() - margin && w.imag() <= b.ymax + s.imag() + margin;
    };
    if (g.copies.finite() || std::abs(g.shift) == 0) {
        if (g.copies.finite())
            for (long n = g.copies.lo; n <= g.copies.hi; ++n)
                if (near(n)) out.push_back(n);
        return out;
    }
    const cplx center((b.xmin + b.xmax) / 2, (b.ymin + b.ymax) / 2);
    const double t = ((w - center) * std::conj(g.shift)).real() / std::norm(g.shift);
    const double ext = std::hypot(b.xmax - b.xmin, b.ymax - b.ymin) / std::abs(g.shift) + 2 +
                       margin / std::abs(g.shift);
    for (long n = static_cast<long>(std::floor(t - ext)); n <= static_cast<long>(std::ceil(t + ext)); ++n)
        if (g.copies.contains(n) && near(n)) out.push_back(n);
    return out;
}

double curve_distance(const SampledCurve& g, long n, cplx w) {
    const cplx s = static_cast<double>(n) * g.shift;
    double best = kInf;
    for (std::size_t i = 0; i + 1 < g.points.size(); ++i)
        best = std::min(best, segment_point_distance(w, g.points[i] + s, g.points[i + 1] + s));
    return best;
}

}  // namespace

Exactness KoenigsDomain::exactness() const {
    for (const auto& b : blockers)
        if (std::holds_alternative<SampledCurve>(b)) return Exactness::Sampled;
    return Exactness::Exact;
}

void KoenigsDomain::validate() const {
    if (base.kind == BaseKind::Strip && !(std::isfinite(base.a) && std::isfinite(base.b) && base.a < base.b))
        throw Error(ErrorCode::InvalidDomain, "strip base needs finite a < b");
    const double ya = base.y_min(), yb = base.y_max();
    const long w = window_radius(*this, 0);
    for (const auto& b : blockers) {
        if (const auto* f = std::get_if<SlitFamily>(&b)) {
            if (!f->indices.finite() && f->dx == 0)
                throw Error(ErrorCode::InvalidDomain, "infinite slit family needs dx != 0");
            if (f->indices.finite() && f->indices.lo > f->indices.hi)
                throw Error(ErrorCode::InvalidDomain, "empty index range");
            for (long n : enumerate(f->indices, w)) {
                const double lo = f->yLow(static_cast<double>(n)), hi = f->yHigh(static_cast<double>(n));
                if (lo > hi) throw Error(ErrorCode::InvalidDomain, "slit with yLow > yHigh");
                if (hi < ya || lo > yb) throw Error(ErrorCode::InvalidDomain, "slit outside the base");
                if (!(lo <= ya || hi >= yb))
                    throw Error(ErrorCode::InvalidDomain, "slit does not reach the base boundary");
            }
        } else if (const auto* s = std::get_if<LeftHalfStrip>(&b)) {
            if (s->yLow > s->yHigh) throw Error(ErrorCode::InvalidDomain, "half-strip with yLow > yHigh");
            if (s->yHigh < ya || s->yLow > yb) throw Error(ErrorCode::InvalidDomain, "half-strip outside the base");
        } else if (const auto* g = std::get_if<SampledCurve>(&b)) {
            if (g->points.size() < 2) throw Error(ErrorCode::InvalidDomain, "sampled curve needs two points");
            if (!g->copies.finite() && std::abs(g->shift) == 0)
                throw Error(ErrorCode::InvalidDomain, "infinite curve family needs a nonzero shift");
            const double ylo = box_of(*g).ymin, yhi = box_of(*g).ymax;
            if (g->tailRule.empty() && !(ylo <= ya + 1e-9 || yhi >= yb - 1e-9))
                throw Error(ErrorCode::InvalidDomain, "sampled curve does not reach the boundary");
        }
    }
}

double KoenigsDomain::distance_to_blockers(cplx w) const {
    double best = kInf;
    for (const auto& b : blockers) {
        if (const auto* f = std::get_if<SlitFamily>(&b)) {
            std::vector<long> cand;
            if (f->dx == 0) {
                if (f->indices.finite())
                    for (long n = f->indices.lo; n <= f->indices.hi; ++n) cand.push_back(n);
            } else {
                const long m = static_cast<long>(std::round((w.real() - f->x0) / f->dx));
                for (long k = m - 2; k <= m + 2; ++k)
                    if (f->indices.contains(k)) cand.push_back(k);
                if (f->indices.kind == IndexKind::Range) {
                    cand.push_back(f->indices.lo);
                    cand.push_back(f->indices.hi);
                } else if (f->indices.kind == IndexKind::Naturals) {
                    cand.push_back(0);
                }
            }
            for (long n : cand) {
                const double lo = f->yLow(static_cast<double>(n)), hi = f->yHigh(static_cast<double>(n));
                const double dy = std::max({0.0, lo - w.imag(), w.imag() - hi});
                best = std::min(best, std::hypot(w.real() - f->x(n), dy));
            }
        } else if (const auto* s = std::get_if<LeftHalfStrip>(&b)) {
            const double dxp = std::max(0.0, w.real() - s->xMax);
            const double dy = std::max({0.0, s->yLow - w.imag(), w.imag() - s->yHigh});
            best = std::min(best, std::hypot(dxp, dy));
        } else if (const auto* g = std::get_if<SampledCurve>(&b)) {
            for (long n : candidate_copies(*g, w, std::min(best, 1.0)))
                best = std::min(best, curve_distance(*g, n, w));
        }
    }
    return best;
}

bool KoenigsDomain::segment_blocked(cplx p, cplx q) const {
    if (!base.contains(p) || !base.contains(q)) return true;
    const double xlo = std::min(p.real(), q.real()), xhi = std::max(p.real(), q.real());
    for (const auto& b : blockers) {
        if (const auto* f = std::get_if<SlitFamily>(&b)) {
            std::vector<long> cand;
            if (f->dx == 0) {
                if (f->indices.finite())
                    for (long n = f->indices.lo; n <= f->indices.hi; ++n) cand.push_back(n);
            } else {
                long m1 = static_cast<long>(std::floor((xlo - f->x0) / f->dx));
                long m2 = static_cast<long>(std::ceil((xhi - f->x0) / f->dx));
                if (m1 > m2) std::swap(m1, m2);
                m1 -= 1;
                m2 += 1;
                if (m2 - m1 > 100000) throw Error(ErrorCode::UnsupportedInput, "segment crosses too many slits");
                for (long n = m1; n <= m2; ++n)
                    if (f->indices.contains(n)) cand.push_back(n);
            }
            for (long n : cand) {
                const double x = f->x(n);
                if (x < xlo || x > xhi) continue;
                const double lo = f->yLow(static_cast<double>(n)), hi = f->yHigh(static_cast<double>(n));
                if (xhi == xlo) {
                    const double ylo = std::min(p.imag(), q.imag()), yhi = std::max(p.imag(), q.imag());
                    if (yhi >= lo && ylo <= hi) return true;
                    continue;
                }
                const double y = p.imag() + (q.imag() - p.imag()) * (x - p.real()) / (q.real() - p.real());
                if (y >= lo && y <= hi) return true;
            }
        } else if (const auto* s = std::get_if<LeftHalfStrip>(&b)) {
            auto inside = [&](cplx z) {
                return z.real() <= s->xMax && z.imag() >= s->yLow && z.imag() <= s->yHigh;
            };
            if (inside(p) || inside(q)) return true;
            const cplx c1(clampbig(s->xMax), clampbig(s->yLow)), c2(clampbig(s->xMax), clampbig(s->yHigh));
            const cplx l1(-1e12, clampbig(s->yLow)), l2(-1e12, clampbig(s->yHigh));
            if (segments_intersect(p, q, c1, c2) || segments_intersect(p, q, l1, c1) ||
                segments_intersect(p, q, l2, c2))
                return true;
        } else if (const auto* g = std::get_if<SampledCurve>(&b)) {
            const double margin = std::abs(q - p);
            for (long n : candidate_copies(*g, (p + q) / 2.0, margin)) {
                const cplx sh = static_cast<double>(n) * g->shift;
                for (std::size_t i = 0; i + 1 < g->points.size(); ++i)
                    if (segments_intersect(p, q, g->points[i] + sh, g->points[i + 1] + sh)) return true;
            }
        }
    }
    return false;
}

TranslateReport translate_report(const KoenigsDomain& omega, cplx c, const GeometryTolerance& tol) {
    TranslateReport rep;
    rep.membership = Membership::NonMember;
    const double t = tol.exact;
    switch (omega.base.kind) {
        case BaseKind::Plane: break;
        case BaseKind::UpperHalfPlane:
            if (c.imag() < -t) return rep;
            break;
        case BaseKind::LowerHalfPlane:
            if (c.imag() > t) return rep;
            break;
        case BaseKind::Strip:
            if (std::abs(c.imag()) > t) return rep;
            break;
    }
    const Coverage cov(omega, t);
    const long w = window_radius(omega, c);
    bool undecided = false;
    for (const auto& b : omega.blockers) {
        if (const auto* f = std::get_if<SlitFamily>(&b)) {
            for (long n : enumerate(f->indices, w)) {
                const double nd = static_cast<double>(n);
                if (!cov.vertical(f->x(n) - c.real(), f->yLow(nd) - c.imag(), f->yHigh(nd) - c.imag()))
                    return rep;
            }
        } else if (const auto* s = std::get_if<LeftHalfStrip>(&b)) {
            if (!cov.region(s->xMax - c.real(), s->yLow - c.imag(), s->yHigh - c.imag())) return rep;
        } else if (const auto* g = std::get_if<SampledCurve>(&b)) {
            // The family is invariant under its own shift, so copies beyond the window repeat
            // the coverage pattern of copies inside it.
            std::vector<long> copies;
            if (g->copies.finite()) {
                for (long n = g->copies.lo; n <= g->copies.hi; ++n) copies.push_back(n);
            } else {
                for (long n : enumerate(g->copies, std::min<long>(w, 64)))
                    if (n < 4 * w + 1000 && n > -4 * w - 1000) copies.push_back(n);
            }
            rep.approximate = true;
            for (long n : copies) {
                const cplx sh = static_cast<double>(n) * g->shift;
                for (auto p : g->points) {
                    const cplx z = p + sh - c;
                    if (!omega.base.contains(z)) continue;
                    const double dist = omega.distance_to_blockers(z);
                    rep.maxDeviation = std::max(rep.maxDeviation, dist);
                    if (dist > tol.sampledMiss) return rep;
                    if (dist > tol.sampledCover) undecided = true;
                }
            }
        }
    }
    rep.membership = undecided ? Membership::Undecidable : Membership::Member;
    return rep;
}

bool contains_translate(const KoenigsDomain& omega, cplx c, const GeometryTolerance& tol) {
    const auto rep = translate_report(omega, c, tol);
    if (rep.membership == Membership::Undecidable)
        throw Error(ErrorCode::UndecidableSampled,
                    "sampled coverage deviation " + std::to_string(rep.maxDeviation) + " is inside the dead band");
    return rep.membership == Membership::Member;
}

std::vector<ScanPoint> semigroup_membership_scan(const KoenigsDomain& omega, const std::vector<cplx>& grid,
                                                 const GeometryTolerance& tol) {
    if (grid.empty()) throw Error(ErrorCode::UnsupportedInput, "empty scan grid");
    std::vector<ScanPoint> out;
    out.reserve(grid.size());
    for (auto c : grid) out.push_back({c, translate_report(omega, c, tol).membership});
    return out;
}

bool starlike_at_infinity(const KoenigsDomain& omega) {
    if (omega.exactness() == Exactness::Sampled)
        throw Error(ErrorCode::UnsupportedSampled, "starlike test needs exact blockers");
    const Coverage cov(omega, 1e-12);
    const long w = window_radius(omega, 0);
    for (const auto& b : omega.blockers) {
        if (const auto* f = std::get_if<SlitFamily>(&b)) {
            for (long n : enumerate(f->indices, w)) {
                const double nd = static_cast<double>(n);
                if (!cov.region(f->x(n), f->yLow(nd), f->yHigh(nd))) return false;
            }
        }
    }
    return true;
}

std::vector<cplx> sector_grid(double rho, double delta, int samples) {
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(samples) * static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double r = rho * (i + 1) / (samples + 1);
        for (int j = 0; j < samples; ++j) {
            const double th = -delta + 2 * delta * (j + 0.5) / samples;
            out.push_back(std::polar(r, th));
        }
    }
    return out;
}

bool sector_gap(const KoenigsDomain& omega, double rho, double delta, int samples, const GeometryTolerance& tol) {
    if (!(rho > 0) || !(delta > 0) || samples < 1)
        throw Error(ErrorCode::UnsupportedInput, "sector_gap needs rho, delta > 0 and samples >= 1");
    auto probe = [&](cplx c) {
        const auto m = translate_report(omega, c, tol).membership;
        if (m == Membership::Undecidable)
            throw Error(ErrorCode::UndecidableSampled, "sector probe undecidable");
        return m == Membership::Member;
    };
    for (auto c : sector_grid(rho, delta, samples))
        if (probe(c)) return false;

    // A member must carry each slit onto the complement, so its real part is a difference of slit
    // abscissae unless half-strips absorb the slit; probe those candidate lines as well.
    std::set<double> lines;
    const long w = window_radius(omega, rho);
    std::vector<double> xs;
    for (const auto& b : omega.blockers)
        if (const auto* f = std::get_if<SlitFamily>(&b))
            for (long n : enumerate(f->indices, std::min<long>(w, 200))) xs.push_back(f->x(n));
    for (double x1 : xs)
        for (double x2 : xs) {
            const double r = x1 - x2;
            if (std::abs(r) < rho) lines.insert(r);
            if (lines.size() > 256) break;
        }
    for (double r : lines) {
        const double ymax = std::sqrt(std::max(0.0, rho * rho - r * r));
        for (int k = 0; k < 64; ++k) {
            const cplx c(r, -ymax + 2 * ymax * (k + 0.5) / 64);
            if (std::abs(c) == 0 || std::abs(std::arg(c)) >= delta) continue;
            if (probe(c)) return false;
        }
    }
    return true;
}

UnionClass base_of_union(const KoenigsDomain& omega) {
    if (!contains_translate(omega, 1.0))
        throw Error(ErrorCode::InvalidDomain, "base_of_union needs Omega + 1 inside Omega");
    if (omega.base.kind == BaseKind::Strip) return UnionClass::StripLike;

    // Bands of heights whose points stay in the complement under every rightward unit shift.
    std::vector<Interval> bands;
    auto divides_one = [](double step) {
        const double k = 1.0 / std::abs(step);
        return std::abs(k - std::round(k)) < 1e-9;
    };
    auto limit = [](const AffineForm& f, int dir) {
        if (std::isinf(f.alpha)) return f.alpha;
        const double s = f.slope * dir;
        return s > 0 ? kInf : (s < 0 ? -kInf : f.alpha);
    };
    for (const auto& b : omega.blockers) {
        if (const auto* f = std::get_if<SlitFamily>(&b)) {
            if (f->indices.finite() || f->dx == 0 || !divides_one(f->dx)) continue;
            int dir = 0;
            if (f->dx > 0) dir = 1;
            else if (f->indices.kind == IndexKind::Integers) dir = -1;
            if (dir == 0) continue;
            const double lo = limit(f->yLow, dir), hi = limit(f->yHigh, dir);
            if (lo < hi && lo < kInf && hi > -kInf) bands.emplace_back(lo, hi);
        } else if (const auto* g = std::get_if<SampledCurve>(&b)) {
            if (g->copies.finite() || g->shift.real() == 0 || std::abs(g->shift.imag()) > 1e-12 ||
                !divides_one(g->shift.real()))
                continue;
            const bool rightward = g->shift.real() > 0 || g->copies.kind == IndexKind::Integers;
            if (rightward) bands.emplace_back(box_of(*g).ymin, box_of(*g).ymax);
        }
    }
    const bool topBounded = std::all_of(bands.begin(), bands.end(), [](auto& iv) { return iv.second < kInf; });
    const bool bottomBounded = std::all_of(bands.begin(), bands.end(), [](auto& iv) { return iv.first > -kInf; });
    switch (omega.base.kind) {
        case BaseKind::Plane:
            if (bands.empty()) return UnionClass::FullPlane;
            if (topBounded) return UnionClass::ContainsUpperHalfPlane;
            if (bottomBounded) return UnionClass::ContainsLowerHalfPlane;
            return UnionClass::StripLike;
        case BaseKind::UpperHalfPlane:
            return topBounded ? UnionClass::ContainsUpperHalfPlane : UnionClass::StripLike;
        case BaseKind::LowerHalfPlane:
            return bottomBounded ? UnionClass::ContainsLowerHalfPlane : UnionClass::StripLike;
        case BaseKind::Strip: break;
    }
    return UnionClass::StripLike;
}

bool ReciprocalSet::contains(double x, double tol) const {
    if (x < -tol) return false;
    if (std::abs(x - std::round(x)) <= tol) return true;
    for (double p : points)
        if (std::abs(x - p) <= tol) return true;
    for (double r : rays)
        if (x >= r - tol) return true;
    return false;
}

KoenigsDomain build_reciprocal_domain(const ReciprocalSet& A) {
    for (double p : A.points)
        if (!(p >= 0) || !std::isfinite(p)) throw Error(ErrorCode::NotASemigroup, "points must lie in [0, inf)");
    for (double r : A.rays)
        if (!(r >= 0) || !std::isfinite(r)) throw Error(ErrorCode::NotASemigroup, "rays must start in [0, inf)");

    double top = 2;
    for (double p : A.points) top = std::max(top, p + 2);
    for (double r : A.rays) top = std::max(top, r + 2);
    std::vector<double> probe;
    for (int n = 0; n <= static_cast<int>(top); ++n) probe.push_back(n);
    for (double p : A.points) probe.push_back(p);
    for (double r : A.rays)
        for (double x = r; x <= top; x += 0.25) probe.push_back(x);
    for (double a : probe)
        for (double b : probe)
            if (!A.contains(a + b))
                throw Error(ErrorCode::NotASemigroup,
                            "sum " + std::to_string(a) + " + " + std::to_string(b) + " leaves the set");

    KoenigsDomain d;
    d.base = BaseSpace::strip(0, 1);
    d.blockers.push_back(SlitFamily{0, -1, AffineForm::constant(0), AffineForm::constant(0.5), IndexSet::naturals()});
    for (double p : A.points)
        if (std::abs(p - std::round(p)) > 1e-12)
            d.blockers.push_back(
                SlitFamily{-p, -1, AffineForm::constant(0), AffineForm::constant(0.5), IndexSet::single(0)});
    for (double r : A.rays) d.blockers.push_back(LeftHalfStrip{-r, 0, 0.5});
    d.validate();
    return d;
}

}  // namespace koenigs
