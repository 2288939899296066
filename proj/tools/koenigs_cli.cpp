#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "koenigs/json_io.hpp"
#include "koenigs/lifting.hpp"
#include "koenigs/replicate.hpp"

using namespace koenigs;

namespace {

enum Exit { Ok = 0, Failure = 1, Inconclusive = 2, BadInput = 3 };

struct Options {
    std::string map, psi, domain, semigroup, out, format = "json", grid;
    std::optional<double> tolAbs, tolExtrap;
    std::uint64_t seed = 1;
    std::string example = "all";
    std::vector<double> z0{0, 1};
    double time = 1;
};

struct Report {
    json body;
    std::string csv;
    int exit = Ok;
};

json envelope(const std::string& command, const Options& o) {
    return {{"schema", kSchemaVersion}, {"command", command}, {"seed", o.seed}};
}

Report report(const std::string& command, const Options& o) {
    Report r;
    r.body = envelope(command, o);
    return r;
}

void write_atomically(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp);
        if (!f) throw Error(ErrorCode::ParseError, "cannot write " + tmp.string());
        f << text;
    }
    std::filesystem::rename(tmp, target);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, sep);) parts.push_back(p);
    return parts;
}

double number(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::ParseError, "not a number: \"" + s + "\"");
}

struct SectorSpec {
    double rho = 0.5, delta = 0.3;
    int samples = 40;
};

SectorSpec parse_sector(const std::string& g) {
    SectorSpec s;
    if (g.empty()) return s;
    const auto p = split(g, ':');
    if (p.size() != 4 || p[0] != "sector") throw Error(ErrorCode::ParseError, "expected sector:rho:delta:samples");
    s.rho = number(p[1]);
    s.delta = number(p[2]);
    s.samples = static_cast<int>(number(p[3]));
    if (!(s.rho > 0 && s.delta > 0 && s.samples > 0)) throw Error(ErrorCode::ParseError, "sector values must be positive");
    return s;
}

// sector:rho:delta:n, box:x0:x1:y0:y1:n, or real:lo:hi:n
std::vector<cplx> parse_grid(const std::string& g) {
    const auto p = split(g, ':');
    if (p.empty()) throw Error(ErrorCode::ParseError, "empty grid");
    if (p[0] == "sector") {
        const SectorSpec s = parse_sector(g);
        return sector_grid(s.rho, s.delta, s.samples);
    }
    if (p[0] == "box" && p.size() == 6) {
        const double x0 = number(p[1]), x1 = number(p[2]), y0 = number(p[3]), y1 = number(p[4]);
        const int n = static_cast<int>(number(p[5]));
        if (n < 1) throw Error(ErrorCode::ParseError, "grid size must be positive");
        std::vector<cplx> pts;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                pts.emplace_back(x0 + (x1 - x0) * (n == 1 ? 0.5 : double(i) / (n - 1)),
                                 y0 + (y1 - y0) * (n == 1 ? 0.5 : double(j) / (n - 1)));
        return pts;
    }
    if (p[0] == "real" && p.size() == 4) {
        const double lo = number(p[1]), hi = number(p[2]);
        const int n = static_cast<int>(number(p[3]));
        if (n < 2) throw Error(ErrorCode::ParseError, "real grid needs at least two points");
        std::vector<cplx> pts;
        for (int i = 0; i < n; ++i) pts.emplace_back(lo + (hi - lo) * i / (n - 1), 0.0);
        return pts;
    }
    throw Error(ErrorCode::ParseError, "unknown grid \"" + g + "\"");
}

HoloMap load_map(const std::string& path, const char* what) {
    if (path.empty()) throw Error(ErrorCode::ParseError, std::string("missing --") + what);
    return map_from_json(read_json_file(path));
}

GeometryTolerance geometry_tolerance(const Options& o) {
    GeometryTolerance t;
    if (o.tolAbs) t.exact = *o.tolAbs;
    return t;
}

Report run_classify(const Options& o) {
    const HoloMap phi = load_map(o.map, "map");
    const Classification c = classify_type(phi);
    Report r = report("classify", o);
    r.body.update(to_json(c));
    return r;
}

Report run_koenigs(const Options& o) {
    const HoloMap phi = load_map(o.map, "map");
    Report r = report("koenigs", o);
    const auto grid = disc_grid(100, 0.9, o.seed);
    AbelSolution sol;
    if (const auto* mm = std::get_if<ModelNode>(&phi.node().data)) {
        sol = make_abel_solution(mm->h, mm->image);
        const double res = abel_residual(mm->h, phi, grid, mm->shift);
        r.body["equation"] = "h o phi = h + shift";
        r.body["shift"] = to_json(mm->shift);
        r.body["residual"] = {{"value", res}, {"method", "grid"}, {"points", grid.size()}};
        r.body["normalization"] = to_json(sol.normalization);
        if (sol.image) r.body["image"] = to_json(*sol.image);
    } else {
        const SchroderSolution s = koenigs_elliptic(phi);
        sol = AbelSolution{s.h0, nullptr, 0.0};
        double res = 0;
        for (cplx z : grid) res = std::max(res, std::abs(eval(s.h0, eval(phi, z)) - s.lambda * eval(s.h0, z)));
        r.body["equation"] = "h0 o f = lambda h0";
        r.body["lambda"] = to_json(s.lambda);
        r.body["residual"] = {{"value", res}, {"method", "SchroderLimit"}, {"points", grid.size()}};
    }
    std::ostringstream csv;
    write_table_csv(csv, sol, grid);
    r.csv = csv.str();
    return r;
}

Report run_centralizer(const Options& o) {
    const HoloMap phi = load_map(o.map, "map");
    const HoloMap psi = load_map(o.psi, "psi");
    Report r = report("centralizer", o);
    const CommuteReport cr = commutes(phi, psi, 200, o.tolAbs.value_or(1e-8), o.seed);
    r.body["commute"] = {{"value", cr.commute}, {"residual", cr.residual}, {"method", "grid"}};
    if (!cr.commute) throw Error(ErrorCode::NotCommuting, "residual " + std::to_string(cr.residual));
    const Classification cls = classify_type(phi);
    r.body["classification"] = to_json(cls);
    const CentralizerConstant c = s_map(phi, psi, cls);
    r.body["constant"] = to_json(c);
    if (o.tolExtrap && c.errorEstimate > *o.tolExtrap) r.exit = Inconclusive;
    return r;
}

Report run_embeddable(const Options& o) {
    const SectorSpec s = parse_sector(o.grid);
    Report r = report("embeddable", o);
    EmbeddabilityVerdict v;
    if (!o.domain.empty()) v = embeddable_verdict(domain_from_json(read_json_file(o.domain)), s.rho, s.delta, s.samples);
    else v = embeddable_verdict(load_map(o.map, "map"), s.rho, s.delta, s.samples);
    r.body.update(to_json(v));
    if (v.verdict == Verdict::Inconclusive) r.exit = Inconclusive;
    return r;
}

Report run_lift(const Options& o) {
    const PeriodicMap g = make_periodic(load_map(o.map, "map"));
    const PushedMap f = push_commuting(g);
    const LiftedMap F = lift_univalent(f.f);
    const auto grid = halfplane_grid(100);
    double roundTrip = 0, shift = 0;
    std::ostringstream csv;
    csv.precision(17);
    csv << "re_w,im_w,re_g,im_g,re_F,im_F\n";
    for (cplx w : grid) {
        const cplx gv = eval(g.g, w), Fv = eval(F.F, w);
        roundTrip = std::max(roundTrip, std::abs(Fv - gv));
        shift = std::max(shift, std::abs(eval(F.F, w + 1.0) - Fv - 1.0));
        csv << w.real() << ',' << w.imag() << ',' << gv.real() << ',' << gv.imag() << ',' << Fv.real() << ','
            << Fv.imag() << '\n';
    }
    Report r = report("lift", o);
    r.body["fprime0"] = {{"value", to_json(f.fprime0)}, {"errorEstimate", f.tailBound}, {"method", "sampled at Im w = 6"}};
    r.body["normalization"] = {{"w0", to_json(F.w0)}, {"Fw0", to_json(F.Fw0)}};
    r.body["roundTrip"] = {{"value", roundTrip}, {"method", "max |lift(push g) - g| on grid"}};
    r.body["shiftLaw"] = {{"value", shift}, {"method", "max |F(w + 1) - F(w) - 1| on grid"}};
    r.body["conjugacy"] = {{"value", conjugacy_residual(f.f, F.F, grid)}, {"method", "grid"}};
    r.csv = csv.str();
    return r;
}

Report run_flow(const Options& o) {
    if (o.semigroup.empty()) throw Error(ErrorCode::ParseError, "missing --semigroup");
    const SemigroupSpec s = semigroup_from_json(read_json_file(o.semigroup));
    if (o.z0.size() != 2) throw Error(ErrorCode::ParseError, "--z0 takes re im");
    const cplx z0(o.z0[0], o.z0[1]);
    const Trajectory tr = flow_trajectory(s, z0, o.time);
    Report r = report("flow", o);
    r.body["z0"] = to_json(z0);
    r.body["t"] = o.time;
    r.body["z"] = {{"value", to_json(tr.z.back())},
                   {"method", std::holds_alternative<GeneratorSource>(s.source) ? "DormandPrince54" : "KoenigsInverse"},
                   {"errorEstimate", s.integrator.relTol * std::abs(tr.z.back()) + s.integrator.absTol}};
    r.body["steps"] = tr.t.size() - 1;
    std::ostringstream csv;
    write_trajectory_csv(csv, tr);
    r.csv = csv.str();
    return r;
}

unsigned thread_cap() {
    if (const char* env = std::getenv("KOENIGS_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

Report run_replicate(const Options& o) {
    std::vector<std::string> ids;
    if (o.example == "all") ids = example_ids();
    else ids = {o.example};
    std::vector<ReplicationReport> reports(ids.size());
    std::vector<std::string> errors(ids.size());
    const unsigned cap = thread_cap();
    for (std::size_t start = 0; start < ids.size(); start += cap) {
        std::vector<std::thread> pool;
        for (std::size_t k = start; k < std::min(ids.size(), start + cap); ++k)
            pool.emplace_back([&, k] {
                try {
                    reports[k] = replicate(ids[k], o.seed);
                } catch (const std::exception& e) {
                    errors[k] = e.what();
                }
            });
        for (auto& t : pool) t.join();
    }
    Report r = report("replicate", o);
    r.body["examples"] = json::array();
    std::ostringstream csv;
    csv << "example,claim,pass\n";
    std::string firstFailure;
    for (std::size_t k = 0; k < ids.size(); ++k) {
        if (!errors[k].empty()) throw Error(ErrorCode::UnsupportedInput, errors[k]);
        r.body["examples"].push_back(to_json(reports[k]));
        for (const auto& c : reports[k].claims) {
            csv << reports[k].example << ",\"" << c.name << "\"," << (c.pass ? "pass" : "fail") << '\n';
            if (!c.pass && firstFailure.empty()) firstFailure = reports[k].example + ": " + c.name + ": " + c.detail;
        }
    }
    r.body["allPass"] = firstFailure.empty();
    if (!firstFailure.empty()) {
        r.body["error"] = {{"code", to_string(ErrorCode::ClaimFailed)}, {"message", firstFailure}};
        r.exit = Failure;
    }
    r.csv = csv.str();
    return r;
}

Report run_scan(const Options& o) {
    if (o.domain.empty()) throw Error(ErrorCode::ParseError, "missing --domain");
    const KoenigsDomain omega = domain_from_json(read_json_file(o.domain));
    const auto grid = parse_grid(o.grid.empty() ? "sector:0.9:0.4:40" : o.grid);
    const auto scan = semigroup_membership_scan(omega, grid, geometry_tolerance(o));
    std::size_t counts[3] = {0, 0, 0};
    std::ostringstream csv;
    csv.precision(17);
    csv << "re_c,im_c,membership\n";
    for (const auto& p : scan) {
        ++counts[static_cast<int>(p.membership)];
        csv << p.c.real() << ',' << p.c.imag() << ','
            << (p.membership == Membership::Member ? "member"
                                                   : (p.membership == Membership::NonMember ? "nonmember" : "undecidable"))
            << '\n';
    }
    Report r = report("scan", o);
    r.body["points"] = grid.size();
    r.body["members"] = counts[0];
    r.body["nonMembers"] = counts[1];
    r.body["undecidable"] = counts[2];
    r.body["exactness"] = omega.exactness() == Exactness::Exact ? "Exact" : "Sampled";
    r.csv = csv.str();
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Centralizers and embeddability of univalent self-maps of the disc"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "output path (stdout when omitted)");
        sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--tol-abs", o.tolAbs, "absolute tolerance override")->check(CLI::PositiveNumber);
        sub->add_option("--tol-extrap", o.tolExtrap, "largest accepted extrapolation error")->check(CLI::PositiveNumber);
        sub->add_option("--seed", o.seed, "seed for test grids");
    };
    std::map<std::string, Report (*)(const Options&)> handlers;
    auto add = [&](const char* name, const char* help, Report (*fn)(const Options&)) {
        CLI::App* sub = app.add_subcommand(name, help);
        common(sub);
        handlers[name] = fn;
        return sub;
    };
    add("classify", "classify a self-map", run_classify)->add_option("--map", o.map)->required();
    add("koenigs", "Koenigs function of a model or elliptic map", run_koenigs)->add_option("--map", o.map)->required();
    auto* cen = add("centralizer", "centralizer constant of a commuting pair", run_centralizer);
    cen->add_option("--map", o.map, "phi")->required();
    cen->add_option("--psi", o.psi, "psi")->required();
    auto* emb = add("embeddable", "embeddability verdict", run_embeddable);
    emb->add_option("--map", o.map);
    emb->add_option("--domain", o.domain);
    emb->add_option("--grid", o.grid, "sector:rho:delta:samples");
    add("lift", "push a periodic half-plane map to the disc and lift it back", run_lift)
        ->add_option("--map", o.map)
        ->required();
    auto* fl = add("flow", "integrate a semigroup", run_flow);
    fl->add_option("--semigroup", o.semigroup)->required();
    fl->add_option("--z0", o.z0, "start point: re im")->expected(2);
    fl->add_option("--t", o.time, "final time")->check(CLI::NonNegativeNumber);
    add("replicate", "run the example claim checklists", run_replicate)
        ->add_option("example", o.example, "example id or all");
    auto* sc = add("scan", "membership scan of A_phi", run_scan);
    sc->add_option("--domain", o.domain)->required();
    sc->add_option("--grid", o.grid, "sector:rho:delta:n, box:x0:x1:y0:y1:n or real:lo:hi:n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return BadInput;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    Report r;
    try {
        r = handlers.at(command)(o);
    } catch (const Error& e) {
        r.body = envelope(command, o);
        r.body["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
        r.exit = e.code() == ErrorCode::ParseError ? BadInput : Failure;
        r.csv.clear();
        std::cerr << e.what() << '\n';
    } catch (const std::exception& e) {
        r.body = envelope(command, o);
        r.body["error"] = {{"code", "Internal"}, {"message", e.what()}};
        r.exit = Failure;
        std::cerr << e.what() << '\n';
    }
    try {
        if (o.format == "csv" && !r.csv.empty()) write_atomically(o.out, r.csv);
        else write_atomically(o.out, r.body.dump(2) + "\n");
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return Failure;
    }
    return r.exit;
}
