#include "koenigs/maps.hpp"

#include <Eigen/LU>
#include <sstream>

namespace koenigs {

std::string_view to_string(Region::Kind k) {
    switch (k) {
        case Region::Kind::Plane: return "plane";
        case Region::Kind::Disc: return "disc";
        case Region::Kind::UpperHalfPlane: return "upperHalfPlane";
        case Region::Kind::SlitPlane: return "slitPlane";
        case Region::Kind::PuncturedDisc: return "puncturedDisc";
    }
    return "plane";
}

std::string_view to_string(AtomKind k) {
    switch (k) {
        case AtomKind::Cayley: return "cayley";
        case AtomKind::InverseCayley: return "inverseCayley";
        case AtomKind::Log: return "log";
        case AtomKind::Exp: return "exp";
        case AtomKind::Power: return "power";
        case AtomKind::Affine: return "affine";
        case AtomKind::Constant: return "constant";
        case AtomKind::TwoLogCos: return "twoLogCos";
        case AtomKind::CotGenerator: return "cotGenerator";
        case AtomKind::ExpPeriodic: return "expPeriodic";
        case AtomKind::CombSlits: return "combSlits";
        case AtomKind::StepCorner: return "stepCorner";
        case AtomKind::UserClosedForm: return "userClosedForm";
    }
    return "unknown";
}

const Region& HoloMap::domain() const { return node_->domain; }

namespace {

template <class... F>
struct overloaded : F... {
    using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

HoloMap make(std::variant<MobiusNode, AtomNode, ComposeNode, ModelNode, InverseNode, ArithNode, CustomNode> data,
             Region domain) {
    return HoloMap(std::make_shared<const MapNode>(MapNode{std::move(data), domain}));
}

Region atom_domain(AtomKind k) {
    switch (k) {
        case AtomKind::Cayley: return {Region::Kind::Disc};
        case AtomKind::InverseCayley:
        case AtomKind::TwoLogCos:
        case AtomKind::CotGenerator:
        case AtomKind::CombSlits:
        case AtomKind::StepCorner: return {Region::Kind::UpperHalfPlane};
        case AtomKind::Log:
        case AtomKind::Power: return {Region::Kind::SlitPlane};
        default: return {Region::Kind::Plane};
    }
}

template <class S>
constexpr Cx<S> I{0, 1};

// additive constant of the comb map: places the slit tips at n - (n+1) i
template <class S>
Cx<S> comb_gamma() {
    return {S(-0.5), -(S(0.75) + std::log(S(2)) / (2 * pi_v<S>))};
}

template <class S>
S newton_tol(const BranchContext& ctx, Cx<S> target) {
    const S scale = std::max<S>(S(1), std::abs(target));
    const S rel = static_cast<S>(ctx.toleranceAbs) *
                  (std::numeric_limits<S>::epsilon() / static_cast<S>(std::numeric_limits<double>::epsilon()));
    return std::max<S>(rel, 16 * std::numeric_limits<S>::epsilon()) * scale;
}

template <class S>
Cx<S> atom_eval(const AtomNode& a, Cx<S> z) {
    const auto p = [&](std::size_t i) { return widen<S>(a.params.at(i)); };
    switch (a.kind) {
        case AtomKind::Cayley: return I<S> * (S(1) + z) / (S(1) - z);
        case AtomKind::InverseCayley: return (z - I<S>) / (z + I<S>);
        case AtomKind::Log: return std::log(z);
        case AtomKind::Exp: return std::exp(z);
        case AtomKind::Power: return std::exp(p(0) * std::log(z));
        case AtomKind::Affine: return p(0) * z + p(1);
        case AtomKind::Constant: return p(0);
        case AtomKind::TwoLogCos: {
            const Cx<S> q = exp2pi(z);
            return Cx<S>(0, -2 * pi_v<S>) * z + S(2) * std::log(S(1) + q) - S(2) * std::log(S(2));
        }
        case AtomKind::CotGenerator: {
            const Cx<S> q = exp2pi(z);
            return I<S> / (2 * pi_v<S>) * (S(1) + q) / (S(1) - q);
        }
        case AtomKind::ExpPeriodic: return exp2pi(z);
        case AtomKind::CombSlits: {
            const Cx<S> q = exp2pi(z);
            return Cx<S>(1, -1) * z + I<S> / pi_v<S> * std::log(S(1) - q) + comb_gamma<S>();
        }
        case AtomKind::StepCorner: {
            const Cx<S> s = std::sqrt(z - S(1)) * std::sqrt(z + S(1));
            return (s + std::log(z + s)) / pi_v<S>;
        }
        case AtomKind::UserClosedForm: break;
    }
    throw Error(ErrorCode::UnsupportedInput, "atom without closed form");
}

template <class S>
Cx<S> atom_deriv(const AtomNode& a, Cx<S> z) {
    const auto p = [&](std::size_t i) { return widen<S>(a.params.at(i)); };
    switch (a.kind) {
        case AtomKind::Cayley: return S(2) * I<S> / ((S(1) - z) * (S(1) - z));
        case AtomKind::InverseCayley: return S(2) * I<S> / ((z + I<S>) * (z + I<S>));
        case AtomKind::Log: return S(1) / z;
        case AtomKind::Exp: return std::exp(z);
        case AtomKind::Power: return p(0) * std::exp((p(0) - S(1)) * std::log(z));
        case AtomKind::Affine: return p(0);
        case AtomKind::Constant: return Cx<S>(0);
        case AtomKind::TwoLogCos: {
            const Cx<S> q = exp2pi(z);
            const Cx<S> tpi(0, 2 * pi_v<S>);
            return -tpi + S(2) * tpi * q / (S(1) + q);
        }
        case AtomKind::CotGenerator: {
            const Cx<S> q = exp2pi(z);
            return S(-2) * q / ((S(1) - q) * (S(1) - q));
        }
        case AtomKind::ExpPeriodic: return Cx<S>(0, 2 * pi_v<S>) * exp2pi(z);
        case AtomKind::CombSlits: {
            const Cx<S> q = exp2pi(z);
            return Cx<S>(1, -1) + S(2) * q / (S(1) - q);
        }
        case AtomKind::StepCorner: {
            const Cx<S> s = std::sqrt(z - S(1)) * std::sqrt(z + S(1));
            if (s == Cx<S>(0)) throw Error(ErrorCode::DerivativeSingular, "stepCorner at +-1");
            return (z + S(1)) / (pi_v<S> * s);
        }
        case AtomKind::UserClosedForm: break;
    }
    throw Error(ErrorCode::UnsupportedInput, "atom without closed form");
}

template <class S>
Cx<S> mobius_apply(const Mat2& m, Cx<S> z) {
    const auto a = widen<S>(m(0, 0)), b = widen<S>(m(0, 1)), c = widen<S>(m(1, 0)), d = widen<S>(m(1, 1));
    return (a * z + b) / (c * z + d);
}

template <class S>
Cx<S> mobius_deriv(const Mat2& m, Cx<S> z) {
    const auto a = widen<S>(m(0, 0)), b = widen<S>(m(0, 1)), c = widen<S>(m(1, 0)), d = widen<S>(m(1, 1));
    const Cx<S> den = c * z + d;
    return (a * d - b * c) / (den * den);
}

Mat2 adjugate(const Mat2& m) {
    Mat2 r;
    r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return r;
}

template <class S>
void check_domain(const HoloMap& m, Cx<S> z) {
    if (!m.domain().contains(z)) {
        std::ostringstream os;
        os << "point (" << static_cast<double>(z.real()) << ", " << static_cast<double>(z.imag())
           << ") outside " << to_string(m.domain().kind) << " for " << m.describe();
        throw Error(ErrorCode::OutsideDomain, os.str());
    }
}

template <class S>
BranchContext child(const BranchContext& ctx) {
    BranchContext c;
    c.toleranceAbs = ctx.toleranceAbs;
    c.maxNewtonSteps = ctx.maxNewtonSteps;
    return c;
}

template <class S>
Cx<S> newton(const HoloMap& m, Cx<S> target, Cx<S> guess, const BranchContext& ctx) {
    BranchContext local = child<S>(ctx);
    const S tol = newton_tol<S>(ctx, target);
    Cx<S> z = guess;
    if (!m.domain().contains(z)) throw Error(ErrorCode::NewtonDiverged, "initial guess outside the domain");
    S res = std::abs(eval<S>(m, z, local) - target);
    // near a singularity the attainable residual is |m'(z)| times the rounding error of z
    S reach = tol;
    for (int it = 0; it < ctx.maxNewtonSteps && res > reach; ++it) {
        const Cx<S> d = deriv<S>(m, z, local);
        if (d == Cx<S>(0) || !is_finite(d)) throw Error(ErrorCode::DerivativeSingular, "zero derivative in Newton");
        reach = std::max(tol, 16 * std::numeric_limits<S>::epsilon() * std::abs(d) * std::max(S(1), std::abs(z)));
        const Cx<S> step = (eval<S>(m, z, local) - target) / d;
        S lam = 1;
        bool moved = false;
        for (int h = 0; h < 60; ++h, lam /= 2) {
            const Cx<S> zn = z - lam * step;
            if (!m.domain().contains(zn)) continue;
            Cx<S> fn;
            try {
                fn = eval<S>(m, zn, local);
            } catch (const Error&) {
                continue;
            }
            const S rn = std::abs(fn - target);
            if (rn < res) {
                z = zn;
                res = rn;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    // one polishing step: quadratic convergence takes the residual to rounding level
    if (res <= reach && res > 0) {
        try {
            const Cx<S> d = deriv<S>(m, z, local);
            const Cx<S> zn = z - (eval<S>(m, z, local) - target) / d;
            if (is_finite(zn) && m.domain().contains(zn)) {
                const S rn = std::abs(eval<S>(m, zn, local) - target);
                if (rn < res) z = zn;
            }
        } catch (const Error&) {
        }
    }
    if (!(res <= reach)) {
        std::ostringstream os;
        os << "residual " << static_cast<double>(res) << " above " << static_cast<double>(tol) << " inverting "
           << m.describe();
        throw Error(ErrorCode::NewtonDiverged, os.str());
    }
    return z;
}

template <class S>
Cx<S> newton_multi(const HoloMap& m, Cx<S> target, const std::vector<Cx<S>>& guesses, const BranchContext& ctx) {
    std::string last = "no admissible initial guess";
    for (const auto& g : guesses) {
        if (!is_finite(g) || !m.domain().contains(g)) continue;
        try {
            return newton<S>(m, target, g, ctx);
        } catch (const Error& e) {
            last = e.what();
        }
    }
    throw Error(ErrorCode::NewtonDiverged, last);
}

template <class S>
std::optional<Cx<S>> seed_of(const BranchContext& ctx) {
    if (!ctx.seed) return std::nullopt;
    return Cx<S>(static_cast<S>(ctx.seed->real()), static_cast<S>(ctx.seed->imag()));
}

// nearest representative of base + period * k to the reference
template <class S>
Cx<S> nearest_branch(Cx<S> base, Cx<S> period, Cx<S> ref) {
    const S k = std::round(((ref - base) * std::conj(period)).real() / std::norm(period));
    return base + k * period;
}

template <class S>
Cx<S> branch_reference(const BranchContext& ctx, const std::optional<cplx>& fixedRef, const HoloMap& m) {
    if (auto s = seed_of<S>(ctx)) return *s;
    if (fixedRef) return widen<S>(*fixedRef);
    throw Error(ErrorCode::BranchAmbiguous, "inverting " + m.describe() + " needs a seed or branch reference");
}

template <class S>
Cx<S> atom_invert(const HoloMap& m, const AtomNode& a, Cx<S> w, const BranchContext& ctx,
                  const std::optional<cplx>& fixedRef) {
    const auto p = [&](std::size_t i) { return widen<S>(a.params.at(i)); };
    switch (a.kind) {
        case AtomKind::Cayley: return (w - I<S>) / (w + I<S>);
        case AtomKind::InverseCayley: return I<S> * (S(1) + w) / (S(1) - w);
        case AtomKind::Log: return std::exp(w);
        case AtomKind::Exp:
            return nearest_branch<S>(std::log(w), Cx<S>(0, 2 * pi_v<S>), branch_reference<S>(ctx, fixedRef, m));
        case AtomKind::Power: {
            const Cx<S> base = std::exp(std::log(w) / p(0));
            if (!ctx.seed && !fixedRef) return base;
            const Cx<S> ref = branch_reference<S>(ctx, fixedRef, m);
            Cx<S> best = base;
            for (int k = -3; k <= 3; ++k) {
                const Cx<S> cand = std::exp((std::log(w) + Cx<S>(0, 2 * pi_v<S> * k)) / p(0));
                if (!Region{Region::Kind::SlitPlane}.contains(cand)) continue;
                if (std::abs(atom_eval<S>(a, cand) - w) > newton_tol<S>(ctx, w) * 1e3) continue;
                if (std::abs(cand - ref) < std::abs(best - ref)) best = cand;
            }
            return best;
        }
        case AtomKind::Affine: return (w - p(1)) / p(0);
        case AtomKind::Constant: throw Error(ErrorCode::DerivativeSingular, "constant map is not invertible");
        case AtomKind::ExpPeriodic:
            return nearest_branch<S>(std::log(w) / Cx<S>(0, 2 * pi_v<S>), Cx<S>(1),
                                     branch_reference<S>(ctx, fixedRef, m));
        case AtomKind::CotGenerator: {
            const Cx<S> u = Cx<S>(0, -2 * pi_v<S>) * w;
            const Cx<S> q = (u - S(1)) / (u + S(1));
            return nearest_branch<S>(std::log(q) / Cx<S>(0, 2 * pi_v<S>), Cx<S>(1),
                                     branch_reference<S>(ctx, fixedRef, m));
        }
        case AtomKind::TwoLogCos: {
            // cos(pi w) = e^{W/2}; Im of the value is about -2 pi Re w
            const Cx<S> c = std::exp(w / S(2));
            const Cx<S> a0 = std::acos(c) / pi_v<S>;
            const S target = -w.imag() / (2 * pi_v<S>);
            std::vector<Cx<S>> guesses;
            if (auto s = seed_of<S>(ctx)) guesses.push_back(*s);
            for (Cx<S> b : {a0, -a0}) {
                const S k0 = std::round((target - b.real()) / 2);
                for (int dk = -1; dk <= 1; ++dk) {
                    const Cx<S> cand = b + S(2) * (k0 + dk);
                    if (cand.imag() > 0) guesses.push_back(cand);
                }
            }
            std::sort(guesses.begin() + (ctx.seed ? 1 : 0), guesses.end(), [&](Cx<S> x, Cx<S> y) {
                return std::abs(atom_eval<S>(a, x) - w) < std::abs(atom_eval<S>(a, y) - w);
            });
            return newton_multi<S>(m, w, guesses, ctx);
        }
        case AtomKind::CombSlits: {
            std::vector<Cx<S>> guesses;
            if (auto s = seed_of<S>(ctx)) guesses.push_back(*s);
            Cx<S> g = (w - comb_gamma<S>()) / Cx<S>(1, -1);
            if (g.imag() <= S(0.05)) g.imag(S(0.5));
            guesses.push_back(g);
            guesses.push_back({g.real(), S(2)});
            return newton_multi<S>(m, w, guesses, ctx);
        }
        case AtomKind::StepCorner: {
            std::vector<Cx<S>> guesses;
            if (auto s = seed_of<S>(ctx)) guesses.push_back(*s);
            Cx<S> g = pi_v<S> * w;
            for (int k = 0; k < 8 && std::abs(g) > S(2); ++k) g = pi_v<S> * w - std::log(S(2) * g);
            if (g.imag() <= S(0.05)) g.imag(S(0.5));
            guesses.push_back(g);
            for (Cx<S> extra : {Cx<S>(0, 1), Cx<S>(0, 3), Cx<S>(-0.5, 0.5), Cx<S>(0.5, 0.5), Cx<S>(2, 1)})
                guesses.push_back(extra);
            return newton_multi<S>(m, w, guesses, ctx);
        }
        case AtomKind::UserClosedForm: break;
    }
    throw Error(ErrorCode::UnsupportedInput, "atom without inverse");
}

class UserForm final : public Evaluator {
public:
    UserForm(std::string n, std::function<cplx(cplx)> f, std::function<cplx(cplx)> df)
        : name_(std::move(n)), f_(std::move(f)), df_(std::move(df)) {}
    std::string name() const override { return name_; }
    Cx<double> value(Cx<double> z, BranchContext&) const override { return f_(z); }
    Cx<long double> value(Cx<long double> z, BranchContext&) const override { return widen<long double>(f_(narrow(z))); }
    Cx<double> derivative(Cx<double> z, BranchContext&) const override { return df_(z); }
    Cx<long double> derivative(Cx<long double> z, BranchContext&) const override {
        return widen<long double>(df_(narrow(z)));
    }

private:
    std::string name_;
    std::function<cplx(cplx)> f_, df_;
};

}  // namespace

std::string HoloMap::describe() const {
    if (!node_) return "<empty>";
    return std::visit(
        overloaded{
            [](const MobiusNode&) -> std::string { return "mobius"; },
            [](const AtomNode& a) -> std::string { return std::string(to_string(a.kind)); },
            [](const ComposeNode& c) -> std::string { return c.outer.describe() + " o " + c.inner.describe(); },
            [](const ModelNode& mm) -> std::string {
                std::ostringstream os;
                os << "model[" << mm.h.describe() << ", shift " << mm.shift << "]";
                return os.str();
            },
            [](const InverseNode& i) -> std::string { return "inverse(" + i.of.describe() + ")"; },
            [](const ArithNode& a) -> std::string {
                const char* op = a.op == ArithOp::Add ? " + " : (a.op == ArithOp::Sub ? " - " : " * ");
                return "(" + a.lhs.describe() + op + a.rhs.describe() + ")";
            },
            [](const CustomNode& c) -> std::string { return c.impl->name(); },
        },
        node_->data);
}

HoloMap mobius(const Mat2& m, Region domain) {
    if (std::abs(m.determinant()) == 0) throw Error(ErrorCode::UnsupportedInput, "degenerate Mobius matrix");
    return make(MobiusNode{m}, domain);
}
HoloMap atom(AtomKind kind, std::vector<cplx> params) {
    if (kind == AtomKind::UserClosedForm) throw Error(ErrorCode::UnsupportedInput, "use user_closed_form");
    return make(AtomNode{kind, std::move(params)}, atom_domain(kind));
}
HoloMap identity() { return affine(1.0, 0.0); }
HoloMap cayley() { return atom(AtomKind::Cayley); }
HoloMap inverse_cayley() { return atom(AtomKind::InverseCayley); }
HoloMap affine(cplx a, cplx b) {
    if (a == cplx(0)) throw Error(ErrorCode::UnsupportedInput, "affine map with zero slope");
    return atom(AtomKind::Affine, {a, b});
}
HoloMap constant(cplx c) { return atom(AtomKind::Constant, {c}); }
HoloMap power(cplx exponent) { return atom(AtomKind::Power, {exponent}); }
HoloMap exp_periodic() { return atom(AtomKind::ExpPeriodic); }
HoloMap two_log_cos() { return atom(AtomKind::TwoLogCos); }
HoloMap cot_generator() { return atom(AtomKind::CotGenerator); }
HoloMap comb_slits() { return atom(AtomKind::CombSlits); }
HoloMap step_corner() { return atom(AtomKind::StepCorner); }

HoloMap user_closed_form(std::string name, std::function<cplx(cplx)> f, std::function<cplx(cplx)> df,
                         Region domain) {
    return custom(std::make_shared<UserForm>(std::move(name), std::move(f), std::move(df)), domain);
}
HoloMap custom(std::shared_ptr<const Evaluator> impl, Region domain) { return make(CustomNode{std::move(impl)}, domain); }

HoloMap compose(const HoloMap& outer, const HoloMap& inner) {
    return make(ComposeNode{outer, inner}, inner.domain());
}

HoloMap inverse(const HoloMap& of, std::optional<cplx> branchRef) {
    return make(InverseNode{of, branchRef}, {Region::Kind::Plane});
}

HoloMap model_map(const HoloMap& h, std::shared_ptr<const KoenigsDomain> image, cplx shift, bool checkImage) {
    if (!image) throw Error(ErrorCode::InvalidDomain, "model map needs an image domain");
    if (checkImage) {
        const auto rep = translate_report(*image, shift);
        if (rep.membership == Membership::NonMember)
            throw Error(ErrorCode::NotInSemigroup, "Omega + shift is not contained in Omega");
    }
    return make(ModelNode{h, std::move(image), shift}, h.domain());
}

HoloMap operator+(const HoloMap& a, const HoloMap& b) { return make(ArithNode{ArithOp::Add, a, b}, a.domain()); }
HoloMap operator-(const HoloMap& a, const HoloMap& b) { return make(ArithNode{ArithOp::Sub, a, b}, a.domain()); }
HoloMap operator*(const HoloMap& a, const HoloMap& b) { return make(ArithNode{ArithOp::Mul, a, b}, a.domain()); }
HoloMap operator*(cplx s, const HoloMap& a) { return constant(s) * a; }

namespace {
Mat2 cayley_matrix() {
    Mat2 m;
    m << cplx(0, 1), cplx(0, 1), -1.0, 1.0;
    return m;
}
Mat2 inverse_cayley_matrix() {
    Mat2 m;
    m << 1.0, cplx(0, -1), 1.0, cplx(0, 1);
    return m;
}
}  // namespace

HoloMap cayley_conjugate(const Mat2& L) {
    return mobius(inverse_cayley_matrix() * L * cayley_matrix(), {Region::Kind::Disc});
}

HoloMap cayley_conjugate_affine(cplx a, cplx b) {
    Mat2 L;
    L << a, b, 0.0, 1.0;
    return cayley_conjugate(L);
}

std::optional<Mat2> as_mobius(const HoloMap& m) {
    return std::visit(
        overloaded{
            [](const MobiusNode& n) -> std::optional<Mat2> { return n.m; },
            [](const AtomNode& a) -> std::optional<Mat2> {
                Mat2 r;
                switch (a.kind) {
                    case AtomKind::Cayley: return cayley_matrix();
                    case AtomKind::InverseCayley: return inverse_cayley_matrix();
                    case AtomKind::Affine: r << a.params[0], a.params[1], 0.0, 1.0; return r;
                    default: return std::nullopt;
                }
            },
            [](const ComposeNode& c) -> std::optional<Mat2> {
                auto o = as_mobius(c.outer), i = as_mobius(c.inner);
                if (o && i) return Mat2((*o) * (*i));
                return std::nullopt;
            },
            [](const ModelNode& mm) -> std::optional<Mat2> {
                auto h = as_mobius(mm.h);
                if (!h) return std::nullopt;
                Mat2 t;
                t << 1.0, mm.shift, 0.0, 1.0;
                return Mat2(adjugate(*h) * t * (*h));
            },
            [](const InverseNode& i) -> std::optional<Mat2> {
                auto o = as_mobius(i.of);
                if (o) return adjugate(*o);
                return std::nullopt;
            },
            [](const ArithNode&) -> std::optional<Mat2> { return std::nullopt; },
            [](const CustomNode&) -> std::optional<Mat2> { return std::nullopt; },
        },
        m.node().data);
}

template <class S>
Cx<S> eval(const HoloMap& m, Cx<S> z, BranchContext& ctx) {
    check_domain(m, z);
    return std::visit(
        overloaded{
            [&](const MobiusNode& n) { return mobius_apply<S>(n.m, z); },
            [&](const AtomNode& a) { return atom_eval<S>(a, z); },
            [&](const ComposeNode& c) {
                BranchContext sub = child<S>(ctx);
                const Cx<S> u = eval<S>(c.inner, z, sub);
                BranchContext sub2 = child<S>(ctx);
                return eval<S>(c.outer, u, sub2);
            },
            [&](const ModelNode& mm) {
                BranchContext sub = child<S>(ctx);
                const Cx<S> target = eval<S>(mm.h, z, sub) + widen<S>(mm.shift);
                BranchContext inv = child<S>(ctx);
                inv.seed = ctx.seed ? *ctx.seed : Cx<long double>(z.real(), z.imag());
                const Cx<S> r = invert<S>(mm.h, target, inv);
                ctx.seed = Cx<long double>(r.real(), r.imag());
                return r;
            },
            [&](const InverseNode& i) {
                BranchContext sub = child<S>(ctx);
                sub.seed = ctx.seed;
                if (!sub.seed && i.branchRef) sub.seed = widen<long double>(*i.branchRef);
                return invert<S>(i.of, z, sub);
            },
            [&](const ArithNode& a) {
                BranchContext s1 = child<S>(ctx), s2 = child<S>(ctx);
                const Cx<S> l = eval<S>(a.lhs, z, s1), r = eval<S>(a.rhs, z, s2);
                switch (a.op) {
                    case ArithOp::Add: return l + r;
                    case ArithOp::Sub: return l - r;
                    case ArithOp::Mul: return l * r;
                }
                return l;
            },
            [&](const CustomNode& c) { return c.impl->value(z, ctx); },
        },
        m.node().data);
}

template <class S>
Cx<S> deriv(const HoloMap& m, Cx<S> z, BranchContext& ctx) {
    check_domain(m, z);
    return std::visit(
        overloaded{
            [&](const MobiusNode& n) { return mobius_deriv<S>(n.m, z); },
            [&](const AtomNode& a) { return atom_deriv<S>(a, z); },
            [&](const ComposeNode& c) {
                BranchContext s1 = child<S>(ctx), s2 = child<S>(ctx), s3 = child<S>(ctx);
                const Cx<S> u = eval<S>(c.inner, z, s1);
                return deriv<S>(c.outer, u, s2) * deriv<S>(c.inner, z, s3);
            },
            [&](const ModelNode&) {
                BranchContext s1 = child<S>(ctx), s2 = child<S>(ctx), s3 = child<S>(ctx);
                s1.seed = ctx.seed;
                const Cx<S> fz = eval<S>(m, z, s1);
                const auto& mm = std::get<ModelNode>(m.node().data);
                const Cx<S> d = deriv<S>(mm.h, fz, s3);
                if (d == Cx<S>(0)) throw Error(ErrorCode::DerivativeSingular, "h' vanishes at the image point");
                return deriv<S>(mm.h, z, s2) / d;
            },
            [&](const InverseNode& i) {
                BranchContext s1 = child<S>(ctx), s2 = child<S>(ctx);
                s1.seed = ctx.seed;
                if (!s1.seed && i.branchRef) s1.seed = widen<long double>(*i.branchRef);
                const Cx<S> u = invert<S>(i.of, z, s1);
                const Cx<S> d = deriv<S>(i.of, u, s2);
                if (d == Cx<S>(0)) throw Error(ErrorCode::DerivativeSingular, "inverse of a critical point");
                return S(1) / d;
            },
            [&](const ArithNode& a) {
                BranchContext s1 = child<S>(ctx), s2 = child<S>(ctx);
                const Cx<S> dl = deriv<S>(a.lhs, z, s1), dr = deriv<S>(a.rhs, z, s2);
                switch (a.op) {
                    case ArithOp::Add: return dl + dr;
                    case ArithOp::Sub: return dl - dr;
                    case ArithOp::Mul: {
                        BranchContext s3 = child<S>(ctx), s4 = child<S>(ctx);
                        return dl * eval<S>(a.rhs, z, s3) + eval<S>(a.lhs, z, s4) * dr;
                    }
                }
                return dl;
            },
            [&](const CustomNode& c) { return c.impl->derivative(z, ctx); },
        },
        m.node().data);
}

template <class S>
Cx<S> invert(const HoloMap& m, Cx<S> w, BranchContext& ctx) {
    if (!is_finite(w)) throw Error(ErrorCode::OutsideDomain, "non-finite inversion target");
    Cx<S> r = std::visit(
        overloaded{
            [&](const MobiusNode& n) { return mobius_apply<S>(adjugate(n.m), w); },
            [&](const AtomNode& a) { return atom_invert<S>(m, a, w, ctx, std::nullopt); },
            [&](const ComposeNode& c) {
                BranchContext outerCtx = child<S>(ctx);
                if (auto s = seed_of<S>(ctx)) {
                    try {
                        BranchContext e = child<S>(ctx);
                        const Cx<S> u = eval<S>(c.inner, *s, e);
                        outerCtx.seed = Cx<long double>(u.real(), u.imag());
                    } catch (const Error&) {
                    }
                }
                const Cx<S> u = invert<S>(c.outer, w, outerCtx);
                BranchContext innerCtx = child<S>(ctx);
                innerCtx.seed = ctx.seed;
                return invert<S>(c.inner, u, innerCtx);
            },
            [&](const ModelNode& mm) {
                BranchContext s1 = child<S>(ctx);
                const Cx<S> target = eval<S>(mm.h, w, s1) - widen<S>(mm.shift);
                BranchContext s2 = child<S>(ctx);
                s2.seed = ctx.seed ? *ctx.seed : Cx<long double>(w.real(), w.imag());
                return invert<S>(mm.h, target, s2);
            },
            [&](const InverseNode& i) {
                BranchContext s1 = child<S>(ctx);
                return eval<S>(i.of, w, s1);
            },
            [&](const ArithNode&) {
                auto s = seed_of<S>(ctx);
                if (!s) throw Error(ErrorCode::BranchAmbiguous, "inverting " + m.describe() + " needs a seed");
                return newton<S>(m, w, *s, ctx);
            },
            [&](const CustomNode&) {
                auto s = seed_of<S>(ctx);
                if (!s) throw Error(ErrorCode::BranchAmbiguous, "inverting " + m.describe() + " needs a seed");
                return newton<S>(m, w, *s, ctx);
            },
        },
        m.node().data);
    return r;
}

template Cx<double> eval<double>(const HoloMap&, Cx<double>, BranchContext&);
template Cx<long double> eval<long double>(const HoloMap&, Cx<long double>, BranchContext&);
template Cx<double> deriv<double>(const HoloMap&, Cx<double>, BranchContext&);
template Cx<long double> deriv<long double>(const HoloMap&, Cx<long double>, BranchContext&);
template Cx<double> invert<double>(const HoloMap&, Cx<double>, BranchContext&);
template Cx<long double> invert<long double>(const HoloMap&, Cx<long double>, BranchContext&);

Orbit iterate(const HoloMap& m, cplx z, long n, BranchContext& ctx) {
    if (n < 0) throw Error(ErrorCode::UnsupportedInput, "negative iteration count");
    Orbit o;
    o.points.reserve(static_cast<std::size_t>(n) + 1);
    o.points.push_back(z);
    for (long k = 0; k < n; ++k) {
        z = eval<double>(m, z, ctx);
        o.points.push_back(z);
    }
    o.value = z;
    return o;
}

Extrapolated radial_limit(const std::function<Cx<long double>(Cx<long double>)>& f, cplx tau,
                          const std::vector<double>& ladder) {
    if (ladder.empty()) throw Error(ErrorCode::NoConvergence, "empty ladder");
    for (std::size_t i = 1; i < ladder.size(); ++i)
        if (!(ladder[i] > ladder[i - 1])) throw Error(ErrorCode::UnsupportedInput, "ladder must increase");
    const Cx<long double> t = widen<long double>(tau / std::abs(tau));
    std::vector<long double> h;
    std::vector<Cx<long double>> vals;
    for (double r : ladder) {
        // 1 - r carried separately so that the radius keeps full long double precision
        const long double eps = static_cast<long double>(1.0 - r);
        const long double e = std::pow(10.0L, std::round(std::log10(eps)));
        const long double step = std::abs(e - eps) < 1e-3L * eps ? e : eps;
        h.push_back(step);
        vals.push_back(f(t * (1.0L - step)));
    }
    return extrapolate_to_zero(h, vals);
}

Extrapolated angular_derivative(const HoloMap& m, cplx tau, const std::vector<double>& ladder) {
    const Cx<long double> t = widen<long double>(tau / std::abs(tau));
    return radial_limit(
        [&](Cx<long double> z) {
            BranchContext ctx;
            return (eval<long double>(m, z, ctx) - t) / (z - t);
        },
        tau, ladder);
}

}  // namespace koenigs
