#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sncinv/cli.hpp"

using namespace sncinv;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

fs::path tmp_dir() {
    const fs::path dir = fs::temp_directory_path() / "sncinv_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string write_file(const std::string& name, const std::string& contents) {
    const fs::path path = tmp_dir() / name;
    std::ofstream(path) << contents;
    return path.string();
}

std::string star_model_file() {
    const fs::path path = tmp_dir() / "star.model.json";
    save_json_file(path.string(), model_to_json(make_catalog_entry("I0*").model));
    return path.string();
}

} // namespace

TEST_CASE("cli: catalog emits models that validate") {
    const auto res = run_cli({"catalog", "--type", "I0*"});
    REQUIRE(res.code == 0);
    const SncModel model = model_from_json(Json::parse(res.out));
    CHECK(model.components.size() == 5);
    CHECK(validate(model).empty());

    const auto cycle = run_cli({"catalog", "--type", "I_n", "--param", "4"});
    REQUIRE(cycle.code == 0);
    const SncModel cmodel = model_from_json(Json::parse(cycle.out));
    CHECK(cmodel.components.size() == 4);
    for (const auto& [id, mult] : cmodel.components) CHECK(mult == 1);

    const auto bogus = run_cli({"catalog", "--type", "bogus"});
    CHECK(bogus.code == 1);
    CHECK(bogus.err.find("available") != std::string::npos);
}

TEST_CASE("cli: validate exit codes") {
    const auto good = run_cli({"validate", star_model_file()});
    CHECK(good.code == 0);

    const std::string oversized = write_file("oversized.json", R"({
      "fiber_dim": 1,
      "components": [{"id": 1, "multiplicity": 1}, {"id": 2, "multiplicity": 1},
                     {"id": 3, "multiplicity": 1}],
      "strata": [{"components": [1], "class": []}, {"components": [2], "class": []},
                 {"components": [3], "class": []},
                 {"components": [1,2,3], "class": [{"syms": ["s"], "lpoly": {"0": "1"}}]}]
    })");
    const auto bad = run_cli({"validate", oversized});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("fiber_dim + 1") != std::string::npos);

    const std::string malformed = write_file("malformed.json", R"({
      "fiber_dim": 1,
      "components": [{"id": 1, "multiplicity": 1}],
      "strata": [{"components": [1], "class": [{"syms": [], "lpoly": {"0": "1/0"}}]}]
    })");
    const auto parse = run_cli({"validate", malformed});
    CHECK(parse.code == 2);
    CHECK(parse.err.find("1/0") != std::string::npos);

    CHECK(run_cli({"validate", (tmp_dir() / "missing.json").string()}).code == 2);
}

TEST_CASE("cli: invariant of the star fixture") {
    const std::string assign = write_file("ones.json", R"({"pt": "1"})");
    const auto res = run_cli({"invariant", star_model_file(), "--assign", assign, "--q", "4"});
    REQUIRE(res.code == 0);
    CHECK(res.out.find("4 + 2*(L-1)") != std::string::npos);
    CHECK(res.out.find("residue of mod-(L-1) part: 1 (mod 3)") != std::string::npos);

    const auto json_res =
        run_cli({"--json", "invariant", star_model_file(), "--assign", assign, "--q", "4"});
    REQUIRE(json_res.code == 0);
    const Json j = Json::parse(json_res.out);
    CHECK(j.at("specialization").at("residue") == "1");
    CHECK(j.at("specialization").at("exact_value") == "10");
    CHECK(j.at("specialization").at("canonical") == false);
    const TruncatedFormalClass st = truncated_formal_from_json(j.at("serre_tilde"));
    CHECK(st.modulus_power() == 2);
}

TEST_CASE("cli: invariant of a cycle vanishes") {
    const auto cycle = run_cli({"catalog", "--type", "I_n", "--param", "5",
                                "--out", (tmp_dir() / "cycle.json").string()});
    REQUIRE(cycle.code == 0);
    const std::string assign = write_file("ones.json", R"({"pt": "1"})");
    const auto res =
        run_cli({"invariant", (tmp_dir() / "cycle.json").string(), "--assign", assign});
    REQUIRE(res.code == 0);
    CHECK(res.out.find("substituted: 0 + 0*(L-1)") != std::string::npos);
}

TEST_CASE("cli: invariant of a doubled component vanishes") {
    const std::string doubled = write_file("doubled.json", R"({
      "fiber_dim": 1,
      "components": [{"id": 1, "multiplicity": 2}],
      "strata": [{"components": [1], "class": [{"syms": ["s"], "lpoly": {"0": "1"}}]}]
    })");
    const auto res = run_cli({"invariant", doubled});
    REQUIRE(res.code == 0);
    CHECK(res.out.find("serre (mod (L-1)): 0") != std::string::npos);
}

TEST_CASE("cli: blowup writes re-parseable files and logs a0") {
    const std::string model = write_file("pair.model.json", R"({
      "fiber_dim": 3,
      "components": [{"id": 1, "multiplicity": 2}, {"id": 2, "multiplicity": 3}],
      "strata": [{"components": [1], "class": [{"syms": ["D1"], "lpoly": {"0": "1"}}]},
                 {"components": [2], "class": [{"syms": ["D2"], "lpoly": {"0": "1"}}]},
                 {"components": [1,2], "class": [{"syms": ["D12"], "lpoly": {"0": "1"}}]}]
    })");
    const std::string center = write_file("pair.center.json", R"({
      "contains": [1, 2],
      "codim": 2,
      "traces": [{"components": [1,2], "class": [{"syms": ["Z"], "lpoly": {"0": "1"}}]}]
    })");
    const std::string datum = write_file("pair.datum.json", R"({
      "on_strata": [{"components": [1,2], "class": [{"syms": ["C"], "lpoly": {"0": "1"}}]}],
      "on_center": [{"components": [1,2], "class": [{"syms": ["C"], "lpoly": {"0": "1"}}]}]
    })");

    const std::string prefix = (tmp_dir() / "blown").string();
    const auto res = run_cli({"blowup", model, center, "--datum", datum, "--out", prefix});
    REQUIRE(res.code == 0);
    CHECK(res.out.find("a0 = 5") != std::string::npos);

    const SncModel new_model = model_from_json(load_json_file(prefix + ".model.json"));
    CHECK(validate(new_model).empty());
    CHECK(new_model.components.at(0) == 5);
    const ConstructibleDatum transported = datum_from_json(load_json_file(prefix + ".datum.json"));
    CHECK(datum_violations(new_model, transported).empty());
    const Json log = load_json_file(prefix + ".log.json");
    CHECK(log.at("a0") == 5);

    // the files reproduce the in-process transform exactly
    const BlowupResult direct = blow_up(model_from_json(load_json_file(model)),
                                        center_from_json(load_json_file(center)),
                                        datum_from_json(load_json_file(datum)));
    CHECK(new_model == direct.new_model);
    CHECK(transported == *direct.transported);

    // codimension-one centers are inadmissible
    const std::string bad_center = write_file("bad.center.json", R"({
      "contains": [1], "codim": 1,
      "traces": []
    })");
    const auto bad = run_cli({"blowup", model, bad_center});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("codim >= 2") != std::string::npos);
}

TEST_CASE("cli: verify runs seeds and writes a report") {
    const std::string report = (tmp_dir() / "report.json").string();
    const auto res = run_cli({"verify", "--seed", "1", "--trials", "25", "--report", report});
    REQUIRE(res.code == 0);
    CHECK(res.out.find("0 failures") != std::string::npos);

    const Json entries = load_json_file(report);
    REQUIRE(entries.is_array());
    REQUIRE(entries.size() == 25);
    for (const auto& entry : entries) {
        CHECK(entry.at("equal_n1") == true);
        CHECK(entry.at("equal_n2") == true);
        CHECK(entry.at("lhs") == entry.at("rhs"));
    }
}

TEST_CASE("cli: verify with a seed file and chains") {
    const std::string seeds = write_file("seeds.txt", "1\n2\n3\n");
    const auto res = run_cli({"verify", "--seeds", seeds, "--chain", "2"});
    REQUIRE(res.code == 0);
    CHECK(res.out.find("6 trials") != std::string::npos);

    const std::string bad_seeds = write_file("bad_seeds.txt", "1\nnope\n");
    CHECK(run_cli({"verify", "--seeds", bad_seeds}).code == 2);
}

TEST_CASE("cli: probe reports failures without failing") {
    const auto res = run_cli({"--json", "--mod-power", "3", "verify", "--probe"});
    REQUIRE(res.code == 0);
    const Json j = Json::parse(res.out);
    CHECK(j.at("trials").get<int>() > 0);
    CHECK(j.at("failures").get<int>() > 0);
}

TEST_CASE("cli: solve prints the determined pair coefficients") {
    const auto one = run_cli({"solve", "--bound", "1"});
    REQUIRE(one.code == 0);
    CHECK(one.out.find("c(1,1) = 1") != std::string::npos);

    const auto five = run_cli({"solve", "--bound", "5"});
    REQUIRE(five.code == 0);
    CHECK(five.out.find("c(1,1) = 1") != std::string::npos);
    CHECK(five.out.find("c(1,2) = 1/2") != std::string::npos);

    const auto refine = run_cli({"--json", "solve", "--refine"});
    REQUIRE(refine.code == 0);
    const Json j = Json::parse(refine.out);
    CHECK((j.at("status") == "inconsistent" || j.at("status") == "unique" ||
           j.at("status") == "underdetermined"));
    if (j.at("status") == "inconsistent") CHECK_FALSE(j.at("certificate").empty());
}

TEST_CASE("cli: usage errors exit with the parse code") {
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"catalog"}).code == 2);                          // --type is required
    CHECK(run_cli({"invariant", star_model_file(), "--q", "4"}).code == 2);  // --q needs --assign
}
