#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "koenigs/json_io.hpp"
#include "koenigs/models.hpp"

using namespace koenigs;

namespace {

std::filesystem::path scratch() {
    const auto dir = std::filesystem::temp_directory_path() / "koenigs_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::filesystem::path write(const std::string& name, const std::string& text) {
    const auto p = scratch() / name;
    std::ofstream(p) << text;
    return p;
}

int run(const std::string& args) {
    const int status = std::system((std::string(KOENIGS_CLI_PATH) + " " + args + " 2>/dev/null").c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("domain descriptors round trip") {
    const json j = json::parse(R"({"base": {"kind": "strip", "a": 0.0, "b": 1.0}, "blockers": [{"type": "slitFamily",
        "x0": 0.0, "dx": -1.0, "yLow": {"const": 0.0}, "yHigh": {"const": 0.5}, "indices": "naturals"}]})");
    const KoenigsDomain d = domain_from_json(j);
    const KoenigsDomain back = domain_from_json(to_json(d));
    for (cplx c : {cplx(1), cplx(0.5), cplx(2), cplx(0, 0.1)})
        CHECK(contains_translate(d, c) == contains_translate(back, c));
    const KoenigsDomain nn = domain_from_json(to_json(ex_non_non_domain()));
    CHECK(to_json(nn)["blockers"][0]["yLow"]["const"] == "-inf");
    CHECK(contains_translate(nn, cplx(-1, 1)));
}

TEST_CASE("map descriptors") {
    const HoloMap m = map_from_json(json::parse(R"({"mobius": [[3, 0], [1, 0], [1, 0], [3, 0]]})"));
    const Classification c = classify_type(m);
    CHECK(c.type == MapType::Hyperbolic);
    CHECK(std::abs(c.multiplier - 0.5) < 1e-12);
    const HoloMap g = map_from_json(to_json(compose(two_log_cos(), affine(2.0, cplx(0, 1)))));
    CHECK(std::abs(eval(g, cplx(0.1, 0.2)) - eval(two_log_cos(), cplx(0.2, 1.4))) < 1e-14);
    CHECK_THROWS_AS(map_from_json(json::parse(R"({"atom": "nope"})")), Error);
    CHECK_THROWS_AS(complex_from_json(json::parse(R"([1, 2, 3])")), Error);
}

TEST_CASE("classify command") {
    const auto in = write("hyp.json", R"({"mobius": [[3, 0], [1, 0], [1, 0], [3, 0]]})");
    const auto out = scratch() / "classify.json";
    REQUIRE(run("classify --map " + in.string() + " --out " + out.string()) == 0);
    const json r = read_json_file(out);
    CHECK(r["schema"] == 1);
    CHECK(r["type"] == "Hyperbolic");
    CHECK(std::abs(r["multiplier"][0].get<double>() - 0.5) < 1e-12);
    CHECK(std::abs(r["tau"][0].get<double>() - 1.0) < 1e-12);
}

TEST_CASE("exit codes") {
    const auto bad = write("bad.json", "{not json");
    CHECK(run("classify --map " + bad.string() + " --out " + (scratch() / "bad_out.json").string()) == 3);
    const auto nn = write("nn.json", R"({"example": "ex-non-non"})");
    const auto wide = scratch() / "wide.json";
    CHECK(run("embeddable --map " + nn.string() + " --grid sector:0.5:1.6:20 --out " + wide.string()) == 2);
    CHECK(read_json_file(wide)["verdict"] == "Inconclusive");
    const auto shifted = write("half.json", R"({"example": "ex-non-non", "shift": 0.5})");
    CHECK(run("classify --map " + shifted.string() + " --out " + (scratch() / "half_out.json").string()) == 1);
}

TEST_CASE("scan emits a CSV point cloud") {
    const auto d = write("d.json", to_json(ex_non_non_domain()).dump());
    const auto out = scratch() / "scan.csv";
    REQUIRE(run("scan --domain " + d.string() + " --grid sector:0.9:0.4:20 --format csv --out " + out.string()) == 0);
    std::ifstream f(out);
    std::string header;
    std::getline(f, header);
    CHECK(header == "re_c,im_c,membership");
    int rows = 0;
    for (std::string line; std::getline(f, line);) ++rows;
    CHECK(rows == 400);
}

TEST_CASE("replicate reports every claim") {
    const auto out = scratch() / "rep.json";
    REQUIRE(run("replicate ex-non-non --seed 3 --out " + out.string()) == 0);
    const json r = read_json_file(out);
    CHECK(r["seed"] == 3);
    CHECK(r["allPass"] == true);
    bool half = false;
    for (const auto& c : r["examples"][0]["claims"]) half = half || c["name"] == "Omega+0.5 not inside Omega";
    CHECK(half);
}
