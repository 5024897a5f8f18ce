#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "normgeo/cli.hpp"
#include "normgeo/errors.hpp"

using namespace normgeo;
using normgeo::cli::Command;
using normgeo::cli::RunConfig;
using Json = nlohmann::json;

namespace {

RunConfig config(Command c, std::vector<std::string> norms) {
    RunConfig cfg;
    cfg.command = c;
    cfg.norms = std::move(norms);
    cfg.seed = 1;
    return cfg;
}

Json run_json(const RunConfig& cfg, int expected_exit) {
    const cli::RunResult r = cli::run(cfg);
    CHECK(r.exit_code == expected_exit);
    const Json doc = Json::parse(r.output);
    CHECK(doc.at("schema_version") == cli::kSchemaVersion);
    CHECK(doc.at("command") == cli::to_string(cfg.command));
    return doc;
}

std::string parse_error(std::string_view text) {
    try {
        (void)cli::parse_norm_spec(text);
    } catch (const InvalidArgument& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("parse_norm_spec examples") {
    const NormSpec l3 = cli::parse_norm_spec("lp:3:dim=2");
    REQUIRE(l3.as<kinds::Lp>() != nullptr);
    CHECK(l3.as<kinds::Lp>()->p.value() == 3.0);
    CHECK(l3.dim() == 2);
    const NormSpec kt = cli::parse_norm_spec("kt:1.2");
    REQUIRE(kt.as<kinds::KTBlend>() != nullptr);
    CHECK(kt.as<kinds::KTBlend>()->lambda == 1.2);
    CHECK(cli::parse_norm_spec("linf:dim=3").label() == "lp:inf:dim=3");
    CHECK(cli::parse_norm_spec("l1:dim=2").label() == "lp:1:dim=2");
    CHECK(cli::parse_norm_spec("wlp:2:w=1,3").dim() == 2);
    CHECK(cli::parse_norm_spec("quad:[[2,0.5],[0.5,1]]").is_strictly_convex());
    CHECK(cli::parse_norm_spec("poly:[[1,0],[0,1]]").is_polyhedral());
    CHECK(cli::parse_norm_spec("stadium:0.6").as<kinds::Stadium>()->c == 0.6);
}

TEST_CASE("parse_norm_spec diagnostics name the offending token") {
    CHECK(parse_error("kt:1.5").find("λ must lie in (1, √2)") != std::string::npos);
    CHECK(parse_error("lp:abc:dim=2").find("'abc'") != std::string::npos);
    CHECK(parse_error("lp:0.5:dim=2").find("0.5") != std::string::npos);
    CHECK(parse_error("foo:1").find("'foo'") != std::string::npos);
    CHECK(parse_error("lp:2:dom=2").find("'dom=2'") != std::string::npos);
    CHECK_FALSE(parse_error("quad:[[1,2],[2,1]]").empty());
    CHECK_FALSE(parse_error("poly:[[1,0]]").empty());
    CHECK_FALSE(parse_error("").empty());
}

TEST_CASE("parse_vector") {
    CHECK(cli::parse_vector("1,2.5,-3") == Vector{1.0, 2.5, -3.0});
    CHECK(cli::parse_vector("[1, 2]") == Vector{1.0, 2.0});
    CHECK_THROWS_AS(cli::parse_vector("1,x"), InvalidArgument);
    CHECK_THROWS_AS(cli::parse_vector("@/nonexistent/file.json"), InvalidArgument);
}

TEST_CASE("commands round-trip through their names") {
    for (Command c : {Command::g, Command::angle, Command::ae_estimate, Command::probe, Command::exposed, Command::dual,
                      Command::suite}) {
        CHECK(cli::parse_command(cli::to_string(c)) == c);
    }
    CHECK_THROWS_AS(cli::parse_command("plot"), InvalidArgument);
}

TEST_CASE("run: g") {
    RunConfig cfg = config(Command::g, {"lp:3:dim=2"});
    cfg.x = "1,1";
    cfg.y = "1,0";
    const Json doc = run_json(cfg, cli::kExitOk);
    CHECK(doc["status"] == "ok");
    CHECK(doc["result"]["g"].get<double>() == doctest::Approx(std::pow(2.0, -1.0 / 3.0)));
    CHECK(doc["result"]["method"] == "analytic");
    CHECK(doc["config"]["seed"] == 1);
}

TEST_CASE("run: probe nonsquare on the square") {
    RunConfig cfg = config(Command::probe, {"linf:dim=2"});
    cfg.property = "nonsquare";
    cfg.samples = 500;
    const Json doc = run_json(cfg, cli::kExitOk);
    CHECK(doc["result"]["value"].get<double>() == 1.0);
    CHECK(doc["result"]["witness"] == Json::parse("[[1.0,1.0],[1.0,-1.0]]"));
}

TEST_CASE("run: ae-estimate l1 vs l2 diverges") {
    RunConfig cfg = config(Command::ae_estimate, {"lp:1:dim=2", "lp:2:dim=2"});
    cfg.samples = 500;
    cfg.refine_iters = 50;
    const Json doc = run_json(cfg, cli::kExitOk);
    CHECK(doc["result"]["forward"]["diverged"] == true);
    CHECK(doc["result"]["forward"]["C_lower"] == "+inf");
}

TEST_CASE("run: ae-estimate CSV grid") {
    RunConfig cfg = config(Command::ae_estimate, {"lp:2:dim=2", "lp:3:dim=2"});
    cfg.samples_grid = "100,200";
    cfg.refine_iters = 0;
    cfg.format = cli::Format::csv;
    const cli::RunResult r = cli::run(cfg);
    CHECK(r.exit_code == cli::kExitOk);
    CHECK(r.output.rfind("samples,direction,C_lower,diverged\n", 0) == 0);
    CHECK(std::count(r.output.begin(), r.output.end(), '\n') == 5);
}

TEST_CASE("run: probe eps grid CSV") {
    RunConfig cfg = config(Command::probe, {"lp:2:dim=2"});
    cfg.property = "uc";
    cfg.eps_grid = "0.5:1.5:3";
    cfg.samples = 300;
    cfg.format = cli::Format::csv;
    const cli::RunResult r = cli::run(cfg);
    CHECK(r.exit_code == cli::kExitOk);
    CHECK(r.output.rfind("eps,value,verdict,separation\n", 0) == 0);
    CHECK(std::count(r.output.begin(), r.output.end(), '\n') == 4);
}

TEST_CASE("run: exposed and dual") {
    RunConfig cfg = config(Command::exposed, {"stadium:0.6"});
    cfg.x = "0.6,1";
    cfg.samples = 1000;
    Json doc = run_json(cfg, cli::kExitOk);
    CHECK(doc["result"]["exposed"]["classification"] == "not-exposed");
    CHECK(doc["result"]["extreme"]["classification"] == "extreme");

    RunConfig d = config(Command::dual, {"lp:3:dim=2"});
    d.f = "1,1";
    d.psi = "1,-0.5";
    d.x = "1,2";
    doc = run_json(d, cli::kExitOk);
    CHECK(doc["result"]["dual_norm"].get<double>() == doctest::Approx(std::pow(2.0, 2.0 / 3.0)));
}

TEST_CASE("run: errors become diagnostics with exit 2") {
    RunConfig bad = config(Command::g, {"kt:1.5"});
    bad.x = "1,1";
    bad.y = "1,0";
    Json doc = run_json(bad, cli::kExitError);
    CHECK(doc["status"] == "error");
    CHECK(doc["error"]["kind"] == "invalid_argument");

    RunConfig missing = config(Command::g, {"lp:2:dim=2"});
    missing.x = "1,1";
    doc = run_json(missing, cli::kExitError);
    CHECK(doc["error"]["message"].get<std::string>().find("--y") != std::string::npos);

    RunConfig mismatch = config(Command::g, {"lp:2:dim=2"});
    mismatch.x = "1,1,1";
    mismatch.y = "1,0";
    doc = run_json(mismatch, cli::kExitError);
    CHECK(doc["error"]["kind"] == "dimension_mismatch");

    RunConfig rep = config(Command::dual, {"lp:1:dim=2"});
    rep.f = "1,1";
    doc = run_json(rep, cli::kExitOk);
    CHECK(doc["result"]["representer"].is_null());
    CHECK(doc["result"]["dual_norm"].get<double>() == 1.0);

    RunConfig dual_ae = config(Command::ae_estimate, {"lp:1:dim=2", "lp:2:dim=2"});
    dual_ae.dual_side = true;
    dual_ae.samples = 10;
    doc = run_json(dual_ae, cli::kExitError);
    CHECK(doc["error"]["kind"] == "unsupported");

    RunConfig csv = config(Command::g, {"lp:2:dim=2"});
    csv.x = "1,0";
    csv.y = "0,1";
    csv.format = cli::Format::csv;
    CHECK(cli::run(csv).exit_code == cli::kExitError);
}

TEST_CASE("run: suite passes on a small catalog and is deterministic") {
    RunConfig cfg = config(Command::suite, {"lp:3:dim=2", "kt:1.2", "stadium:0.6"});
    cfg.samples = 200;
    const cli::RunResult a = cli::run(cfg);
    const cli::RunResult b = cli::run(cfg);
    CHECK(a.exit_code == cli::kExitOk);
    CHECK(a.output == b.output);
    const Json doc = Json::parse(a.output);
    CHECK(doc["status"] == "ok");
}

TEST_CASE("probe dunkl-williams holds on the blend norm") {
    RunConfig cfg = config(Command::probe, {"kt:1.2"});
    cfg.property = "dunkl-williams";
    cfg.samples = 200;
    const Json doc = run_json(cfg, cli::kExitOk);
    CHECK(doc["result"]["classification"] == "holds-on-sample");
}

TEST_CASE("NORMGEO_SEED sets the default seed") {
    ::setenv("NORMGEO_SEED", "42", 1);
    CHECK(cli::default_seed() == 42);
    ::setenv("NORMGEO_SEED", "x42", 1);
    CHECK_THROWS_AS(cli::default_seed(), InvalidArgument);
    ::unsetenv("NORMGEO_SEED");
    CHECK(cli::default_seed() == 0);
}
