#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "normgeo/cli.hpp"
#include "normgeo/errors.hpp"

namespace {

using normgeo::cli::Command;
using normgeo::cli::RunConfig;

struct Flags {
    RunConfig cfg;
    std::vector<std::string> norms;
    std::string norm1, norm2;
    std::optional<std::uint64_t> seed;
    std::string format = "json";
    std::string output;
};

void add_common(CLI::App* sub, Flags& fl, bool sampling) {
    sub->add_option("--seed", fl.seed, "Master seed (default: $NORMGEO_SEED, else 0)");
    sub->add_option("--tol", fl.cfg.tol, "Tolerance");
    if (sampling) {
        sub->add_option("--samples", fl.cfg.samples, "Sample count");
        sub->add_option("--refine-iters", fl.cfg.refine_iters, "Hill-climbing rounds");
    }
    sub->add_option("--format", fl.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("-o,--output", fl.output, "Write the report here instead of stdout");
}

int emit_error(const std::string& command, const std::string& message) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = normgeo::cli::kSchemaVersion;
    doc["command"] = command;
    doc["status"] = "error";
    doc["error"] = {{"kind", "usage"}, {"message", message}};
    std::cout << doc.dump(2) << "\n";
    return normgeo::cli::kExitError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"normgeo: g-functionals, norm angles and unit-ball geometry on R^n"};
    app.require_subcommand(1);
    Flags fl;

    auto* g = app.add_subcommand("g", "g+, g- and g of a pair");
    g->add_option("--norm", fl.norms, "Norm spec")->required()->expected(1);
    g->add_option("--x", fl.cfg.x)->required();
    g->add_option("--y", fl.cfg.y)->required();
    add_common(g, fl, false);

    auto* angle = app.add_subcommand("angle", "Norm angle and Birkhoff orthogonality of a pair");
    angle->add_option("--norm", fl.norms, "Norm spec")->required()->expected(1);
    angle->add_option("--x", fl.cfg.x)->required();
    angle->add_option("--y", fl.cfg.y)->required();
    add_common(angle, fl, false);

    auto* ae = app.add_subcommand("ae-estimate", "Lower bound for the angular-equivalence constant, both directions");
    ae->add_option("--norm1", fl.norm1)->required();
    ae->add_option("--norm2", fl.norm2)->required();
    ae->add_option("--cap", fl.cfg.cap, "Divergence cap");
    ae->add_option("--samples-grid", fl.cfg.samples_grid, "Comma-separated sample counts (CSV-friendly)");
    ae->add_flag("--dual", fl.cfg.dual_side, "Estimate on the dual norms through representers");
    add_common(ae, fl, true);

    auto* probe = app.add_subcommand("probe", "Geometric property probe");
    probe->add_option("--norm", fl.norms, "Norm spec")->required()->expected(1);
    probe->add_option("--property", fl.cfg.property)
        ->required()
        ->check(CLI::IsMember({"strict", "uc", "nonsquare", "angle-inf", "extreme", "dunkl-williams"}));
    probe->add_option("--eps", fl.cfg.eps);
    probe->add_option("--eps-grid", fl.cfg.eps_grid, "<lo>:<hi>:<count> or a comma list");
    probe->add_option("--x", fl.cfg.x, "Point (extreme)");
    add_common(probe, fl, true);

    auto* exposed = app.add_subcommand("exposed", "Exposed and extreme classification of a unit-sphere point");
    exposed->add_option("--norm", fl.norms, "Norm spec")->required()->expected(1);
    exposed->add_option("--x", fl.cfg.x)->required();
    add_common(exposed, fl, true);

    auto* dual = app.add_subcommand("dual", "Dual norm, representer, dual g and support functional");
    dual->add_option("--norm", fl.norms, "Norm spec")->required()->expected(1);
    dual->add_option("--f", fl.cfg.f, "Functional coefficients");
    dual->add_option("--psi", fl.cfg.psi, "Second functional for the dual g");
    dual->add_option("--x", fl.cfg.x, "Support point");
    add_common(dual, fl, true);

    auto* suite = app.add_subcommand("suite", "Invariant battery over the catalog (or the given norms)");
    suite->add_option("--norm", fl.norms, "Norm spec (repeatable)");
    add_common(suite, fl, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        const auto subs = app.get_subcommands();
        return emit_error(subs.empty() ? "" : subs.front()->get_name(), e.what());
    }

    CLI::App* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    try {
        fl.cfg.command = normgeo::cli::parse_command(name);
        fl.cfg.seed = fl.seed ? *fl.seed : normgeo::cli::default_seed();
    } catch (const normgeo::Error& e) {
        return emit_error(name, e.what());
    }
    fl.cfg.norms = fl.norms;
    if (!fl.norm1.empty()) fl.cfg.norms = {fl.norm1, fl.norm2};
    fl.cfg.format = fl.format == "csv" ? normgeo::cli::Format::csv : normgeo::cli::Format::json;

    const normgeo::cli::RunResult res = normgeo::cli::run(fl.cfg);
    if (fl.output.empty()) {
        std::cout << res.output;
    } else {
        std::ofstream out(fl.output, std::ios::binary);
        if (!out) return emit_error(name, "cannot write '" + fl.output + "'");
        out << res.output;
    }
    return res.exit_code;
}
