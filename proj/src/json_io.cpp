#include "koenigs/json_io.hpp"

#include <fstream>
#include <sstream>

#include "koenigs/models.hpp"

namespace koenigs {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

Region region_from_json(const json& j) {
    const std::string s = j.get<std::string>();
    for (auto k : {Region::Kind::Plane, Region::Kind::Disc, Region::Kind::UpperHalfPlane, Region::Kind::SlitPlane,
                   Region::Kind::PuncturedDisc})
        if (to_string(k) == s) return {k};
    fail("unknown region \"" + s + "\"");
}

AtomKind atom_from_name(const std::string& s) {
    for (int k = 0; k <= static_cast<int>(AtomKind::UserClosedForm); ++k)
        if (to_string(static_cast<AtomKind>(k)) == s) return static_cast<AtomKind>(k);
    fail("unknown atom \"" + s + "\"");
}

AffineForm affine_from_json(const json& j) {
    if (j.is_number() || j.is_string()) return AffineForm::constant(real_from_json(j));
    AffineForm f;
    f.alpha = real_from_json(need(j, "const"));
    if (j.contains("slope")) f.slope = real_from_json(j.at("slope"));
    return f;
}

json to_json(const AffineForm& f) {
    json j{{"const", real_to_json(f.alpha)}};
    if (f.slope != 0) j["slope"] = f.slope;
    return j;
}

IndexSet indices_from_json(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "naturals") return IndexSet::naturals();
        if (s == "integers") return IndexSet::integers();
        fail("unknown index set \"" + s + "\"");
    }
    if (j.is_number_integer()) return IndexSet::single(j.get<long>());
    const json& r = need(j, "range");
    if (!r.is_array() || r.size() != 2) fail("range must be [lo, hi]");
    return IndexSet::range(r[0].get<long>(), r[1].get<long>());
}

json to_json(const IndexSet& s) {
    switch (s.kind) {
        case IndexKind::Naturals: return "naturals";
        case IndexKind::Integers: return "integers";
        case IndexKind::Range: return json{{"range", {s.lo, s.hi}}};
    }
    return nullptr;
}

BaseSpace base_from_json(const json& j) {
    const std::string kind = need(j, "kind").get<std::string>();
    if (kind == "plane") return BaseSpace::plane();
    if (kind == "upper") return BaseSpace::upper();
    if (kind == "lower") return BaseSpace::lower();
    if (kind == "strip") {
        const double a = real_from_json(need(j, "a")), b = real_from_json(need(j, "b"));
        if (!(a < b)) fail("strip needs a < b");
        return BaseSpace::strip(a, b);
    }
    fail("unknown base kind \"" + kind + "\"");
}

Blocker blocker_from_json(const json& j) {
    const std::string type = need(j, "type").get<std::string>();
    if (type == "slitFamily") {
        SlitFamily s;
        s.x0 = real_from_json(need(j, "x0"));
        s.dx = j.contains("dx") ? real_from_json(j.at("dx")) : 0.0;
        s.yLow = affine_from_json(need(j, "yLow"));
        s.yHigh = affine_from_json(need(j, "yHigh"));
        s.indices = j.contains("indices") ? indices_from_json(j.at("indices")) : IndexSet::single(0);
        return s;
    }
    if (type == "leftHalfStrip") {
        LeftHalfStrip l;
        l.xMax = real_from_json(need(j, "xMax"));
        l.yLow = real_from_json(need(j, "yLow"));
        l.yHigh = real_from_json(need(j, "yHigh"));
        return l;
    }
    if (type == "sampledCurve") {
        SampledCurve c;
        for (const auto& p : need(j, "points")) c.points.push_back(complex_from_json(p));
        if (j.contains("tailRule")) c.tailRule = j.at("tailRule").get<std::string>();
        if (j.contains("shift")) c.shift = complex_from_json(j.at("shift"));
        if (j.contains("copies")) c.copies = indices_from_json(j.at("copies"));
        return c;
    }
    fail("unknown blocker type \"" + type + "\"");
}

KoenigsDomain named_domain(const std::string& id) {
    if (id == "ex-parab-autom") return {BaseSpace::upper(), {}};
    if (id == "ex-non-non") return ex_non_non_domain();
    if (id == "ex-z-non-abelian") return ex_z_non_abelian_domain();
    if (id == "ex-again-non-abelian") return ex_again_domain();
    if (id == "ex-a-neq-astar") return ex_a_neq_astar_domain();
    fail("unknown named domain \"" + id + "\"");
}

ModelExample named_example(const json& j) {
    const std::string id = need(j, "example").get<std::string>();
    if (id == "ex-parab-autom") return ex_parab_autom();
    if (id == "ex-non-non") return ex_non_non();
    if (id == "ex-z-non-abelian") return ex_z_non_abelian();
    if (id == "strip") return strip_model(real_from_json(need(j, "width")));
    fail("unknown example map \"" + id + "\"");
}

}  // namespace

cplx complex_from_json(const json& j) {
    try {
        if (j.is_number() || j.is_string()) return {real_from_json(j), 0.0};
        if (j.is_array() && j.size() == 2) return {real_from_json(j[0]), real_from_json(j[1])};
    } catch (const json::exception& e) {
        fail(e.what());
    }
    fail("complex number must be [re, im] or a number, got " + j.dump());
}

json to_json(cplx z) { return json::array({real_to_json(z.real()), real_to_json(z.imag())}); }

double real_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
    }
    fail("expected a real number, got " + j.dump());
}

json real_to_json(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return nullptr;
    return x;
}

KoenigsDomain domain_from_json(const json& j) {
    try {
        if (j.is_string()) return named_domain(j.get<std::string>());
        if (j.contains("reciprocal")) {
            const json& r = j.at("reciprocal");
            ReciprocalSet A;
            if (r.contains("points")) A.points = r.at("points").get<std::vector<double>>();
            if (r.contains("rays")) A.rays = r.at("rays").get<std::vector<double>>();
            return build_reciprocal_domain(A);
        }
        KoenigsDomain d;
        d.base = base_from_json(need(j, "base"));
        if (j.contains("blockers"))
            for (const auto& b : j.at("blockers")) d.blockers.push_back(blocker_from_json(b));
        d.validate();
        return d;
    } catch (const json::exception& e) {
        fail(e.what());
    }
}

json to_json(const KoenigsDomain& omega) {
    json base;
    switch (omega.base.kind) {
        case BaseKind::Plane: base = {{"kind", "plane"}}; break;
        case BaseKind::UpperHalfPlane: base = {{"kind", "upper"}}; break;
        case BaseKind::LowerHalfPlane: base = {{"kind", "lower"}}; break;
        case BaseKind::Strip: base = {{"kind", "strip"}, {"a", omega.base.a}, {"b", omega.base.b}}; break;
    }
    json blockers = json::array();
    for (const auto& b : omega.blockers) {
        if (const auto* s = std::get_if<SlitFamily>(&b)) {
            blockers.push_back({{"type", "slitFamily"},
                                {"x0", s->x0},
                                {"dx", s->dx},
                                {"yLow", to_json(s->yLow)},
                                {"yHigh", to_json(s->yHigh)},
                                {"indices", to_json(s->indices)}});
        } else if (const auto* l = std::get_if<LeftHalfStrip>(&b)) {
            blockers.push_back({{"type", "leftHalfStrip"},
                                {"xMax", real_to_json(l->xMax)},
                                {"yLow", real_to_json(l->yLow)},
                                {"yHigh", real_to_json(l->yHigh)}});
        } else {
            const auto& c = std::get<SampledCurve>(b);
            json pts = json::array();
            for (cplx p : c.points) pts.push_back(to_json(p));
            blockers.push_back({{"type", "sampledCurve"},
                                {"points", pts},
                                {"tailRule", c.tailRule},
                                {"shift", to_json(c.shift)},
                                {"copies", to_json(c.copies)}});
        }
    }
    return {{"base", base}, {"blockers", blockers}};
}

HoloMap map_from_json(const json& j) {
    try {
        if (j.is_string()) {
            if (j.get<std::string>() == "identity") return identity();
            return atom(atom_from_name(j.get<std::string>()));
        }
        if (j.contains("mobius")) {
            const json& e = j.at("mobius");
            if (!e.is_array() || e.size() != 4) fail("mobius needs 4 complex entries");
            Mat2 m;
            m << complex_from_json(e[0]), complex_from_json(e[1]), complex_from_json(e[2]), complex_from_json(e[3]);
            return mobius(m, j.contains("domain") ? region_from_json(j.at("domain")) : Region{Region::Kind::Disc});
        }
        if (j.contains("atom")) {
            std::vector<cplx> params;
            if (j.contains("params"))
                for (const auto& p : j.at("params")) params.push_back(complex_from_json(p));
            return atom(atom_from_name(j.at("atom").get<std::string>()), std::move(params));
        }
        if (j.contains("compose")) {
            const json& parts = j.at("compose");
            if (!parts.is_array() || parts.empty()) fail("compose needs a non-empty list, outermost first");
            HoloMap m = map_from_json(parts.back());
            for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) m = compose(map_from_json(*it), m);
            return m;
        }
        if (j.contains("model")) {
            const json& mm = j.at("model");
            auto image = std::make_shared<const KoenigsDomain>(domain_from_json(need(mm, "image")));
            const cplx shift = mm.contains("shift") ? complex_from_json(mm.at("shift")) : cplx(1);
            return model_map(map_from_json(need(mm, "h")), image, shift);
        }
        if (j.contains("inverse")) return inverse(map_from_json(j.at("inverse")));
        for (auto [key, op] : {std::pair{"add", ArithOp::Add}, {"sub", ArithOp::Sub}, {"mul", ArithOp::Mul}}) {
            if (!j.contains(key)) continue;
            const json& p = j.at(key);
            if (!p.is_array() || p.size() != 2) fail(std::string(key) + " needs [lhs, rhs]");
            const HoloMap a = map_from_json(p[0]), b = map_from_json(p[1]);
            return op == ArithOp::Add ? a + b : (op == ArithOp::Sub ? a - b : a * b);
        }
        if (j.contains("scale")) {
            const json& p = j.at("scale");
            if (!p.is_array() || p.size() != 2) fail("scale needs [s, map]");
            return complex_from_json(p[0]) * map_from_json(p[1]);
        }
        if (j.contains("example")) {
            const ModelExample ex = named_example(j);
            return j.contains("shift") ? ex.t_map(complex_from_json(j.at("shift"))) : ex.phi;
        }
    } catch (const json::exception& e) {
        fail(e.what());
    }
    fail("unrecognized map descriptor " + j.dump());
}

json to_json(const HoloMap& m) {
    const MapNode& n = m.node();
    if (const auto* mo = std::get_if<MobiusNode>(&n.data))
        return {{"mobius", {to_json(mo->m(0, 0)), to_json(mo->m(0, 1)), to_json(mo->m(1, 0)), to_json(mo->m(1, 1))}},
                {"domain", to_string(n.domain.kind)}};
    if (const auto* a = std::get_if<AtomNode>(&n.data)) {
        json p = json::array();
        for (cplx c : a->params) p.push_back(to_json(c));
        return {{"atom", to_string(a->kind)}, {"params", p}};
    }
    if (const auto* c = std::get_if<ComposeNode>(&n.data)) return {{"compose", {to_json(c->outer), to_json(c->inner)}}};
    if (const auto* mm = std::get_if<ModelNode>(&n.data)) {
        if (!mm->image) throw Error(ErrorCode::UnsupportedInput, "model map without image");
        return {{"model", {{"h", to_json(mm->h)}, {"image", to_json(*mm->image)}, {"shift", to_json(mm->shift)}}}};
    }
    if (const auto* i = std::get_if<InverseNode>(&n.data)) return {{"inverse", to_json(i->of)}};
    if (const auto* a = std::get_if<ArithNode>(&n.data)) {
        const char* key = a->op == ArithOp::Add ? "add" : (a->op == ArithOp::Sub ? "sub" : "mul");
        return {{key, {to_json(a->lhs), to_json(a->rhs)}}};
    }
    throw Error(ErrorCode::UnsupportedInput, "map " + m.describe() + " has no descriptor form");
}

SemigroupSpec semigroup_from_json(const json& j) {
    try {
        IntegratorOptions opts;
        if (j.contains("relTol")) opts.relTol = j.at("relTol").get<double>();
        if (j.contains("absTol")) opts.absTol = j.at("absTol").get<double>();
        if (j.contains("maxStep")) opts.maxStep = j.at("maxStep").get<double>();
        if (!(opts.relTol > 0 && opts.absTol > 0 && opts.maxStep >= 0)) fail("integrator tolerances must be positive");
        if (j.contains("generator")) {
            const Region r = j.contains("region") ? region_from_json(j.at("region")) : Region{Region::Kind::Plane};
            std::optional<HoloMap> k;
            if (j.contains("koenigs")) k = map_from_json(j.at("koenigs"));
            return generator_semigroup(map_from_json(j.at("generator")), r, k, opts);
        }
        if (j.contains("herglotz")) {
            const LiftedGenerators g = lift_semigroup(map_from_json(j.at("herglotz")));
            return generator_semigroup(g.half, {Region::Kind::UpperHalfPlane}, std::nullopt, opts);
        }
        if (j.contains("koenigs")) {
            std::shared_ptr<const KoenigsDomain> image;
            if (j.contains("image")) image = std::make_shared<const KoenigsDomain>(domain_from_json(j.at("image")));
            return koenigs_semigroup(make_abel_solution(map_from_json(j.at("koenigs")), image));
        }
    } catch (const json::exception& e) {
        fail(e.what());
    }
    fail("unrecognized semigroup descriptor " + j.dump());
}

json to_json(const Classification& c) {
    json j{{"type", to_string(c.type)},
           {"tau", to_json(c.tau)},
           {"tauError", c.tauError},
           {"multiplier", to_json(c.multiplier)},
           {"multiplierError", c.multiplierError},
           {"method", to_string(c.method)},
           {"automorphism", c.automorphism}};
    if (c.stepEstimate) j["stepEstimate"] = *c.stepEstimate;
    if (c.type == MapType::ParabolicPositiveStep) j["canonicalBase"] = c.lowerBase ? "lower" : "upper";
    return j;
}

json to_json(const CentralizerConstant& c) {
    json j{{"value", to_json(c.value)}, {"errorEstimate", c.errorEstimate}, {"method", to_string(c.method)}};
    if (c.crossCheckSpread) j["crossCheckSpread"] = *c.crossCheckSpread;
    return j;
}

json to_json(const EmbeddabilityVerdict& v) {
    return {{"verdict", to_string(v.verdict)}, {"gapFound", v.gapFound}, {"rho", v.rho},
            {"delta", v.delta},                {"method", to_string(v.method)}, {"evidence", v.evidence}};
}

json to_json(const Extrapolated& e, std::string_view method) {
    return {{"value", to_json(e.value)}, {"errorEstimate", real_to_json(e.error)}, {"method", method}};
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(path.string() + ": " + e.what());
    }
}

}  // namespace koenigs
