#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opindex/cli_report.hpp"
#include "opindex/json_io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace opindex;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config validation and env seed") {
    RunConfig cfg;
    cfg.validate();
    cfg.n = 100;
    CHECK_THROWS(cfg.validate());

    setenv("OPINDEX_SEED", "12345", 1);
    auto fromenv = config_from_env_and_json("");
    CHECK(fromenv.seed == 12345);
    unsetenv("OPINDEX_SEED");
}

TEST_CASE("replication report policies") {
    RunConfig cfg;
    cfg.only_prefix = "ktheory";
    auto report = run_replication(cfg);
    CHECK(report.records.size() == 8);
    CHECK(report.errors == 0);
    CHECK(report.exit_code(false) == 0);
    for (const auto& r : report.records) {
        CHECK(!r.citation.empty());
        CHECK(!r.route.empty());
    }
    // thesis K-group line
    bool found = false;
    for (const auto& r : report.records)
        if (r.name == "ktheory.thm36") {
            found = true;
            CHECK(r.computed == "Z, Z^2");
            CHECK(r.route == "SNF");
        }
    CHECK(found);
}

TEST_CASE("deterministic JSON export") {
    RunConfig cfg;
    cfg.only_prefix = "ktheory";
    auto r1 = run_replication(cfg);
    auto r2 = run_replication(cfg);
    export_report(r1, "/tmp/opindex_det1", "json");
    export_report(r2, "/tmp/opindex_det2", "json");
    CHECK(slurp("/tmp/opindex_det1.json") == slurp("/tmp/opindex_det2.json"));
    std::remove("/tmp/opindex_det1.json");
    std::remove("/tmp/opindex_det1.meta.json");
    std::remove("/tmp/opindex_det2.json");
    std::remove("/tmp/opindex_det2.meta.json");
}

TEST_CASE("the monomial Toeplitz family is 7 matching records") {
    RunConfig cfg;
    cfg.only_prefix = "toeplitz.z";
    auto report = run_replication(cfg);
    CHECK(report.records.size() == 7);
    for (const auto& r : report.records) CHECK(r.status == RecordStatus::Match);
}

TEST_CASE("degraded grid flags the index records") {
    RunConfig cfg;
    cfg.n = 64;  // far too coarse for the index fixtures
    cfg.only_prefix = "opnum.thm213";
    auto report = run_replication(cfg);
    REQUIRE(!report.records.empty());
    for (const auto& r : report.records) {
        CHECK(r.status == RecordStatus::Flagged);
        CHECK(r.detail.find("unreliable") != std::string::npos);
    }
    CHECK(report.exit_code(false) == 0);  // flags pass by default
    CHECK(report.exit_code(true) == 2);   // and fail under --strict
}

TEST_CASE("empty selection still exports a valid report") {
    RunConfig cfg;
    cfg.only_prefix = "nothing-matches-this";
    auto report = run_replication(cfg);
    CHECK(report.records.empty());
    CHECK(report.exit_code(true) == 0);
    export_report(report, "/tmp/opindex_empty", "json");
    auto j = nlohmann::json::parse(slurp("/tmp/opindex_empty.json"));
    CHECK(j["records"].is_array());
    CHECK(j["records"].empty());
    std::remove("/tmp/opindex_empty.json");
    std::remove("/tmp/opindex_empty.meta.json");
    export_report(report, "/tmp/opindex_empty", "md");
    CHECK(slurp("/tmp/opindex_empty.md").find("| fixture |") == 0);
    std::remove("/tmp/opindex_empty.md");
}

TEST_CASE("csv and md exports") {
    RunConfig cfg;
    cfg.only_prefix = "gamma.delta0";
    auto report = run_replication(cfg);
    export_report(report, "/tmp/opindex_fmt", "csv");
    auto csv = slurp("/tmp/opindex_fmt.csv");
    CHECK(csv.find("name,citation,expected,computed,status,route,detail") == 0);
    CHECK(csv.find("gamma.delta0_b") != std::string::npos);
    export_report(report, "/tmp/opindex_fmt", "md");
    CHECK(slurp("/tmp/opindex_fmt.md").find("gamma.delta0_b") != std::string::npos);
    std::remove("/tmp/opindex_fmt.csv");
    std::remove("/tmp/opindex_fmt.md");
    CHECK_THROWS(export_report(report, "/tmp/opindex_fmt", "yaml"));
}

TEST_CASE("word JSON round trip") {
    GeneratorWord w;
    w.name = "demo";
    w.add_term(semiperiodic_L(), fn_b_std(), 1);
    w.add_term(fn_s(), trig_polynomial({{-1, cplx(0.5)}, {2, cplx(0, 1.0)}}), 0);
    auto j = word_to_json(w);
    auto back = word_from_json(j);
    REQUIRE(back.terms.size() == 2);
    CHECK(back.terms[0].j == 1);
    CHECK(std::holds_alternative<SemiperiodicSymbol>(back.terms[0].a));
    CHECK(std::get<SemiperiodicSymbol>(back.terms[0].a).name == "L");
    for (double x : {-3.0, 0.0, 2.5}) {
        cplx v1 = std::get<ScalarFn>(w.terms[1].a)(x);
        cplx v2 = std::get<ScalarFn>(back.terms[1].a)(x);
        CHECK(std::abs(v1 - v2) < 1e-14);
        CHECK(std::abs(w.terms[1].b(x) - back.terms[1].b(x)) < 1e-14);
    }

    // piecewise_linear schema, including its re-serialization
    auto pw = scalar_fn_from_json(nlohmann::json::parse(
        R"({"kind":"piecewise_linear","x":[-1.0,0.0,1.0],"re":[0.0,0.5,1.0]})"));
    CHECK(std::abs(pw(-0.5) - cplx(0.25)) < 1e-14);
    CHECK(std::abs(pw(4.0) - cplx(1.0)) < 1e-14);
    CHECK(std::abs(pw.at_limit(-1)) < 1e-14);
    auto pw2 = scalar_fn_from_json(scalar_fn_to_json(pw));
    for (double x : {-0.7, 0.1, 0.9}) CHECK(std::abs(pw2(x) - pw(x)) == 0.0);
}

TEST_CASE("loop CSV export") {
    SampledLoop loop;
    for (int k = 0; k <= 8; ++k) loop.samples.push_back(std::polar(1.0, kTwoPi * k / 8));
    loop.closed = true;
    std::ostringstream os;
    loop_to_csv(loop, os);
    std::istringstream is(os.str());
    std::string line;
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == static_cast<int>(loop.samples.size()) + 1);  // header + samples
}

TEST_CASE("matrix container round trip") {
    GridSpec g(64, 4.0);
    auto op = multiplication_op(fn_s(), g);
    op.provenance = "s(M) demo";
    write_matrix_container(op, "/tmp/opindex_mat.bin");
    auto back = read_matrix_container("/tmp/opindex_mat.bin");
    CHECK(back.grid.n == g.n);
    CHECK(back.grid.half_width == g.half_width);
    CHECK(back.provenance == "s(M) demo");
    CHECK((back.matrix - op.matrix).norm() == 0.0);
    std::remove("/tmp/opindex_mat.bin");
}
