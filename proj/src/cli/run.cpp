#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "normgeo/angles.hpp"
#include "normgeo/cli.hpp"
#include "normgeo/duality.hpp"
#include "normgeo/errors.hpp"
#include "normgeo/gfunctional.hpp"
#include "normgeo/probes.hpp"
#include "normgeo/rng.hpp"
#include "serialize.hpp"

namespace normgeo::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
    Json result;
    bool violation = false;
    std::optional<std::string> csv;
};

const NormSpec& only_norm(const std::vector<NormSpec>& specs, const RunConfig& cfg) {
    if (specs.size() != 1) {
        throw InvalidArgument(std::string("command '") + to_string(cfg.command) + "' takes exactly one --norm");
    }
    return specs.front();
}

Vector require_vector(const std::optional<std::string>& text, const char* flag) {
    if (!text) throw InvalidArgument(std::string("missing required flag ") + flag);
    return parse_vector(*text);
}

std::vector<double> parse_eps_grid(const std::string& text) {
    std::vector<double> out;
    const std::size_t c1 = text.find(':');
    if (c1 != std::string::npos) {
        const std::size_t c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos) throw InvalidArgument("bad token '" + text + "': expected <lo>:<hi>:<count>");
        const Vector ends = parse_vector(text.substr(0, c1) + "," + text.substr(c1 + 1, c2 - c1 - 1));
        const double count = parse_vector(text.substr(c2 + 1))[0];
        if (count < 1 || count != std::floor(count)) {
            throw InvalidArgument("bad token '" + text.substr(c2 + 1) + "': grid count must be a positive integer");
        }
        const auto n = static_cast<std::size_t>(count);
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(n == 1 ? ends[0] : ends[0] + (ends[1] - ends[0]) * static_cast<double>(i) / static_cast<double>(n - 1));
        }
        return out;
    }
    const Vector v = parse_vector(text);
    return v.values();
}

std::vector<std::size_t> parse_samples_grid(const std::string& text) {
    std::vector<std::size_t> out;
    const Vector counts = parse_vector(text);
    for (double v : counts.coords()) {
        if (v < 1 || v != std::floor(v)) throw InvalidArgument("bad token '" + text + "': sample counts must be positive integers");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

// ---------------------------------------------------------------------------

Outcome run_g(const std::vector<NormSpec>& specs, const RunConfig& cfg) {
    const NormSpec& spec = only_norm(specs, cfg);
    const Vector x = require_vector(cfg.x, "--x");
    const Vector y = require_vector(cfg.y, "--y");
    const double tol = cfg.tol.value_or(default_tol(spec));
    Outcome out;
    out.result = to_json(g_functional(spec, x, y, tol));
    out.result["norm_x"] = real(evaluate(spec, x));
    out.result["norm_y"] = real(evaluate(spec, y));
    if (!x.is_zero() && has_analytic_path(spec)) {
        const GReport fd = g_functional(spec, x, y, 1e-9, Route::numeric);
        Json cross;
        cross["g"] = real(fd.g);
        cross["step_used"] = fd.step_used ? real(*fd.step_used) : Json(nullptr);
        cross["abs_diff"] = real(std::abs(fd.g - out.result["g"].get<double>()));
        out.result["finite_difference_cross_check"] = cross;
    }
    return out;
}

Outcome run_angle(const std::vector<NormSpec>& specs, const RunConfig& cfg) {
    const NormSpec& spec = only_norm(specs, cfg);
    const Vector x = require_vector(cfg.x, "--x");
    const Vector y = require_vector(cfg.y, "--y");
    Outcome out;
    out.result["angle"] = cfg.tol ? to_json(cos_angle(spec, x, y, *cfg.tol)) : to_json(cos_angle(spec, x, y));
    out.result["birkhoff"] = to_json(birkhoff_check(spec, x, y, cfg.tol.value_or(1e-9)));
    return out;
}

Outcome run_ae(const std::vector<NormSpec>& specs, const RunConfig& cfg) {
    if (specs.size() != 2) throw InvalidArgument("ae-estimate takes --norm1 and --norm2");
    std::vector<std::size_t> grid;
    if (cfg.samples_grid) grid = parse_samples_grid(*cfg.samples_grid);
    const std::size_t default_samples = cfg.dual_side ? 1000 : 10000;
    if (grid.empty()) grid.push_back(cfg.samples.value_or(default_samples));

    auto estimate = [&](const NormSpec& a, const NormSpec& b, std::size_t samples) {
        if (cfg.dual_side) {
            DualAeOptions o;
            o.samples = samples;
            o.seed = derive_seed(cfg.seed, "ae-estimate/dual");
            o.cap = cfg.cap;
            if (cfg.tol) o.tol = *cfg.tol;
            return dual_ae_estimate(a, b, o);
        }
        AeOptions o;
        o.samples = samples;
        o.seed = derive_seed(cfg.seed, "ae-estimate");
        o.refine_iters = cfg.refine_iters.value_or(200);
        o.cap = cfg.cap;
        return estimate_ae_constant(a, b, o);
    };

    Outcome out;
    Json rows = Json::array();
    std::vector<std::vector<std::string>> csv_rows;
    for (std::size_t n : grid) {
        const EquivEstimate fwd = estimate(specs[0], specs[1], n);
        const EquivEstimate rev = estimate(specs[1], specs[0], n);
        Json row;
        row["samples"] = n;
        row["forward"] = to_json(fwd);
        row["reverse"] = to_json(rev);
        rows.push_back(row);
        csv_rows.push_back({std::to_string(n), "forward", csv_real(fwd.C_lower), fwd.diverged ? "true" : "false"});
        csv_rows.push_back({std::to_string(n), "reverse", csv_real(rev.C_lower), rev.diverged ? "true" : "false"});
    }
    out.result["side"] = cfg.dual_side ? "dual" : "primal";
    if (rows.size() == 1) {
        out.result["forward"] = rows[0]["forward"];
        out.result["reverse"] = rows[0]["reverse"];
    } else {
        out.result["grid"] = rows;
    }
    out.csv = csv({"samples", "direction", "C_lower", "diverged"}, csv_rows);
    return out;
}

Outcome run_probe(const std::vector<NormSpec>& specs, const RunConfig& cfg) {
    const NormSpec& spec = only_norm(specs, cfg);
    if (!cfg.property) throw InvalidArgument("missing required flag --property");
    const std::string& prop = *cfg.property;
    ProbeOptions opt;
    opt.samples = cfg.samples.value_or(opt.samples);
    opt.refine_iters = cfg.refine_iters.value_or(opt.refine_iters);
    opt.tol = cfg.tol.value_or(opt.tol);
    opt.seed = derive_seed(cfg.seed, "probe/" + prop);

    std::function<ProbeReport(double)> by_eps;
    if (prop == "uc") by_eps = [&](double e) { return uc_modulus(spec, e, opt); };
    if (prop == "angle-inf") by_eps = [&](double e) { return nonsq_angle_inf(spec, e, opt); };

    Outcome out;
    if (by_eps) {
        if (cfg.eps_grid) {
            Json rows = Json::array();
            std::vector<std::vector<std::string>> csv_rows;
            for (double e : parse_eps_grid(*cfg.eps_grid)) {
                const ProbeReport r = by_eps(e);
                rows.push_back(to_json(r));
                csv_rows.push_back({csv_real(e), csv_real(*r.value), to_string(r.verdict), csv_real(r.extras.at("separation"))});
            }
            out.result["grid"] = rows;
            out.csv = csv({"eps", "value", "verdict", "separation"}, csv_rows);
            return out;
        }
        if (!cfg.eps) throw InvalidArgument("property '" + prop + "' needs --eps or --eps-grid");
        out.result = to_json(by_eps(*cfg.eps));
        return out;
    }
    if (prop == "strict") {
        out.result = to_json(strict_convexity_probe(spec, opt));
    } else if (prop == "nonsquare") {
        out.result = to_json(nonsquare_sup(spec, opt));
    } else if (prop == "extreme") {
        out.result = to_json(extreme_check(spec, require_vector(cfg.x, "--x"), opt));
    } else if (prop == "dunkl-williams") {
        const ProbeReport r = dunkl_williams_check(spec, opt);
        out.violation = r.verdict == Verdict::witness_found;
        out.result = to_json(r);
    } else {
        throw InvalidArgument("bad token '" + prop + "': expected strict, uc, nonsquare, angle-inf, extreme or dunkl-williams");
    }
    return out;
}

Outcome run_exposed(const std::vector<NormSpec>& specs, const RunConfig& cfg) {
    const NormSpec& spec = only_norm(specs, cfg);
    const Vector x0 = require_vector(cfg.x, "--x");
    ProbeOptions opt;
    opt.samples = cfg.samples.value_or(opt.samples);
    opt.refine_iters = cfg.refine_iters.value_or(opt.refine_iters);
    opt.tol = cfg.tol.value_or(opt.tol);
    opt.seed = derive_seed(cfg.seed, "exposed");
    const ProbeReport exposed = exposed_check(spec, x0, opt);
    opt.seed = derive_seed(cfg.seed, "exposed/extreme");
    const ProbeReport extreme = extreme_check(spec, x0, opt);
    Outcome out;
    out.result["exposed"] = to_json(exposed);
    out.result["extreme"] = to_json(extreme);
    // Every exposed point is extreme.
    out.violation = exposed.classification == "exposed" && extreme.verdict == Verdict::witness_found;
    out.result["exposed_implies_extreme"] = !out.violation;
    return out;
}

Outcome run_dual(const std::vector<NormSpec>& specs, const RunConfig& cfg) {
    const NormSpec& spec = only_norm(specs, cfg);
    const double check_tol = cfg.tol.value_or(1e-6);
    Outcome out;
    if (cfg.f) {
        const Functional f{parse_vector(*cfg.f)};
        DualNormOptions dn;
        dn.samples = cfg.samples.value_or(dn.samples);
        dn.refine_iters = cfg.refine_iters.value_or(dn.refine_iters);
        dn.seed = derive_seed(cfg.seed, "dual/norm");
        out.result["dual_norm"] = real(dual_norm(spec, f, dn));
        out.result["dual_norm_exact"] = dual_norm_is_exact(spec);
        const bool representable = spec.is_smooth() && spec.is_strictly_convex();
        if (representable) {
            const DualRep rep = riesz_representer(spec, f);
            Json j = to_json(rep);
            const double gap = std::abs(evaluate(spec, rep.representer) - rep.dual_norm);
            j["norm_gap"] = real(gap);
            j["check_tol"] = real(check_tol);
            j["pass"] = gap <= check_tol && rep.residual <= check_tol;
            out.violation = out.violation || !j["pass"].get<bool>();
            out.result["representer"] = j;
        } else {
            out.result["representer"] = nullptr;
            out.result["representer_note"] = "representer requires a smooth, strictly convex norm";
        }
        if (cfg.psi) {
            if (!representable) throw Unsupported("--psi needs a smooth, strictly convex norm; " + spec.label() + " is not");
            const Functional psi{parse_vector(*cfg.psi)};
            Json j;
            const double dg = dual_g(spec, f, psi);
            j["dual_g"] = real(dg);
            try {
                const double direct = dual_g_conjugate_formula(spec, f, psi);
                j["conjugate_formula"] = real(direct);
                j["abs_diff"] = real(std::abs(dg - direct));
                j["pass"] = std::abs(dg - direct) <= check_tol;
                out.violation = out.violation || !j["pass"].get<bool>();
            } catch (const Unsupported&) {
                j["conjugate_formula"] = nullptr;
            }
            out.result["dual_g"] = j;
        }
    }
    if (cfg.x) {
        const Vector x0 = parse_vector(*cfg.x);
        const Functional s = support_functional(spec, x0);
        Json j;
        j["f"] = to_json(s.coeffs);
        j["f_at_x0"] = real(s(x0));
        j["norm_x0"] = real(evaluate(spec, x0));
        const double worst = support_sandwich_violation(spec, x0, s, cfg.samples.value_or(1000),
                                                        derive_seed(cfg.seed, "dual/support"));
        j["sandwich_worst_violation"] = real(worst);
        j["pass"] = worst <= check_tol;
        out.violation = out.violation || !j["pass"].get<bool>();
        out.result["support_functional"] = j;
    }
    if (!cfg.f && !cfg.x) throw InvalidArgument("dual needs --f (functional) and/or --x (support point)");
    return out;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& default_catalog() {
    static const std::vector<std::string> specs{
        "lp:1:dim=2",   "lp:1.5:dim=3", "lp:2:dim=2", "lp:3:dim=2",          "lp:4:dim=5",
        "linf:dim=3",   "wlp:3:w=1,2",  "quad:[[2,0.5],[0.5,1]]", "kt:1.2",
        "poly:[[1,0],[0.5,0.8660254037844386],[-0.5,0.8660254037844386]]",  "stadium:0.6",
    };
    return specs;
}

struct Check {
    std::string name;
    double worst;
    double threshold;
    bool pass;
    Json witness;
    std::string note;
};

Vector gaussian_vector(Rng& rng, std::size_t n) {
    std::vector<double> c(n);
    do {
        for (double& v : c) v = rng.gaussian();
    } while (std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; }));
    return Vector(std::move(c));
}

Check chain_check(const NormSpec& spec, std::size_t samples, std::uint64_t seed) {
    Rng rng(seed);
    Check c{"inequality-chain", kInf, -1e-9, true, nullptr, ""};
    const double tol = default_tol(spec);
    for (std::size_t i = 0; i < samples; ++i) {
        const Vector x = gaussian_vector(rng, spec.dim()), y = gaussian_vector(rng, spec.dim());
        const double nx = evaluate(spec, x), ny = evaluate(spec, y);
        const Gateaux d = gateaux(spec, x, y, tol);
        const double chain[6] = {-nx * ny, nx * (nx - evaluate(spec, x - y)), nx * d.minus, nx * d.plus,
                                 nx * (evaluate(spec, x + y) - nx), nx * ny};
        for (int k = 0; k < 5; ++k) {
            const double slack = (chain[k + 1] - chain[k]) / (nx * ny);
            if (slack < c.worst) {
                c.worst = slack;
                c.witness = Json::array({to_json(x), to_json(y)});
            }
        }
    }
    c.pass = c.worst >= c.threshold;
    return c;
}

Check subadditivity_check(const NormSpec& spec, std::size_t samples, std::uint64_t seed) {
    Rng rng(seed);
    Check c{"gateaux-subadditivity", kInf, -1e-9, true, nullptr, ""};
    const double tol = default_tol(spec);
    for (std::size_t i = 0; i < samples; ++i) {
        const Vector x = gaussian_vector(rng, spec.dim()), y = gaussian_vector(rng, spec.dim()),
                     z = gaussian_vector(rng, spec.dim());
        const Gateaux a = gateaux(spec, x, y, tol), b = gateaux(spec, x, z, tol), s = gateaux(spec, x, y + z, tol);
        const double scale = evaluate(spec, y) + evaluate(spec, z);
        const double slack = std::min(a.plus + b.plus - s.plus, s.minus - a.minus - b.minus) / scale;
        if (slack < c.worst) {
            c.worst = slack;
            c.witness = Json::array({to_json(x), to_json(y), to_json(z)});
        }
    }
    c.pass = c.worst >= c.threshold;
    return c;
}

Check tan_half_check(const NormSpec& spec, std::size_t samples, std::uint64_t seed) {
    Rng rng(seed);
    Check c{"tan-half-identity", 0.0, 1e-12, true, nullptr, ""};
    for (std::size_t i = 0; i < samples; ++i) {
        const Vector x = gaussian_vector(rng, spec.dim()), y = gaussian_vector(rng, spec.dim());
        const AngleReport a = cos_angle(spec, x, y);
        double err = 0.0;
        if (a.cos_theta < -1.0 || a.cos_theta > 1.0 || a.theta < 0.0 || a.theta > std::numbers::pi) err = kInf;
        else if (a.cos_theta == -1.0) err = std::isinf(a.tan_half) ? 0.0 : kInf;
        else err = std::abs(a.tan_half * a.tan_half * (1.0 + a.cos_theta) - (1.0 - a.cos_theta));
        if (err > c.worst) {
            c.worst = err;
            c.witness = Json::array({to_json(x), to_json(y)});
        }
    }
    c.pass = c.worst <= c.threshold;
    return c;
}

Check sip_axioms_check(const NormSpec& spec, std::size_t samples, std::uint64_t seed, Json& detail) {
    const SipReport r = sip_check(spec, samples, seed, 1e-8);
    detail = to_json(r);
    // Additivity (S1) is only expected of smooth norms.
    const bool smooth = spec.is_smooth();
    Check c{"sip-axioms", 0.0, 1e-8, true, nullptr, smooth ? "" : "non-smooth: S1 reported, not required"};
    for (const AxiomResult& a : r.axioms) {
        if (a.name == "S1" && !smooth) continue;
        if (a.worst_violation > c.worst) c.worst = a.worst_violation;
        if (!a.pass) {
            c.pass = false;
            if (c.witness.is_null()) c.witness = a.name;
        }
    }
    return c;
}

Check dunkl_williams_suite(const NormSpec& spec, std::size_t samples, std::uint64_t seed) {
    ProbeOptions opt;
    opt.samples = samples;
    opt.seed = seed;
    opt.tol = 1e-9;
    const ProbeReport r = dunkl_williams_check(spec, opt);
    Check c{"dunkl-williams", *r.value, -1e-9, r.verdict != Verdict::witness_found, nullptr, ""};
    if (!r.witness.empty()) c.witness = Json::array({to_json(r.witness[0]), to_json(r.witness[1])});
    return c;
}

Check exposed_extreme_check(const NormSpec& spec, std::size_t samples, std::uint64_t seed) {
    std::vector<Vector> points = sample_sphere(spec, 2, derive_seed(seed, "points"));
    if (spec.is_polyhedral()) points.push_back(unit_ball_vertices(spec).front());
    ProbeOptions opt;
    opt.samples = std::min<std::size_t>(samples, 2000);
    opt.refine_iters = 300;
    // Chords of length ~sqrt(1e-16 / curvature) pass the ball test by rounding
    // alone; 1e-6 keeps weakly curved spheres (l4 near an axis) above that floor.
    opt.tol = 1e-6;
    Check c{"exposed-implies-extreme", 0.0, 0.0, true, Json::array(), ""};
    std::size_t idx = 0;
    for (const Vector& p : points) {
        opt.seed = derive_seed(seed, "point-" + std::to_string(idx++));
        const ProbeReport ex = exposed_check(spec, p, opt);
        const ProbeReport er = extreme_check(spec, p, opt);
        const bool bad = ex.classification == "exposed" && er.verdict == Verdict::witness_found;
        Json j;
        j["point"] = to_json(p);
        j["exposed"] = ex.classification;
        j["extreme"] = er.classification;
        c.witness.push_back(j);
        if (bad) {
            c.pass = false;
            c.worst += 1.0;
        }
    }
    c.note = "worst counts points classified exposed but not extreme";
    return c;
}

Outcome run_suite(const RunConfig& cfg) {
    const std::vector<std::string> texts = cfg.norms.empty() ? default_catalog() : cfg.norms;
    const std::size_t samples = cfg.samples.value_or(1000);
    Outcome out;
    Json per_spec = Json::array();
    std::size_t failed = 0, total = 0;
    for (const std::string& text : texts) {
        const NormSpec spec = parse_norm_spec(text);
        const std::string label = spec.label();
        auto seed_for = [&](const char* check) { return derive_seed(cfg.seed, "suite/" + std::string(check) + "/" + label); };
        Json sip_detail;
        std::vector<Check> checks;
        checks.push_back(chain_check(spec, samples, seed_for("chain")));
        checks.push_back(subadditivity_check(spec, samples, seed_for("subadditivity")));
        checks.push_back(sip_axioms_check(spec, samples, seed_for("sip"), sip_detail));
        checks.push_back(tan_half_check(spec, samples, seed_for("tan-half")));
        checks.push_back(dunkl_williams_suite(spec, samples, seed_for("dunkl-williams")));
        checks.push_back(exposed_extreme_check(spec, samples, seed_for("exposed-extreme")));
        Json js = Json::array();
        for (const Check& c : checks) {
            Json j;
            j["check"] = c.name;
            j["worst"] = real(c.worst);
            j["threshold"] = real(c.threshold);
            j["pass"] = c.pass;
            j["witness"] = c.witness;
            if (!c.note.empty()) j["note"] = c.note;
            if (c.name == "sip-axioms") j["axioms"] = sip_detail["axioms"];
            js.push_back(j);
            ++total;
            if (!c.pass) ++failed;
        }
        Json entry;
        entry["norm"] = label;
        entry["checks"] = js;
        per_spec.push_back(entry);
    }
    out.result["specs"] = per_spec;
    out.result["checks_run"] = total;
    out.result["checks_failed"] = failed;
    out.violation = failed > 0;
    return out;
}

Json config_echo(const RunConfig& cfg, const std::vector<NormSpec>& specs) {
    Json j;
    Json norms = Json::array();
    for (const NormSpec& s : specs) norms.push_back(s.label());
    j["norms"] = norms;
    auto opt_str = [&](const char* key, const std::optional<std::string>& v) {
        if (v) j[key] = *v;
    };
    opt_str("x", cfg.x);
    opt_str("y", cfg.y);
    opt_str("f", cfg.f);
    opt_str("psi", cfg.psi);
    opt_str("property", cfg.property);
    if (cfg.eps) j["eps"] = real(*cfg.eps);
    opt_str("eps_grid", cfg.eps_grid);
    opt_str("samples_grid", cfg.samples_grid);
    if (cfg.command == Command::ae_estimate) {
        j["dual_side"] = cfg.dual_side;
        j["cap"] = real(cfg.cap);
    }
    j["samples"] = cfg.samples ? Json(*cfg.samples) : Json(nullptr);
    j["refine_iters"] = cfg.refine_iters ? Json(*cfg.refine_iters) : Json(nullptr);
    j["tol"] = cfg.tol ? real(*cfg.tol) : Json(nullptr);
    j["seed"] = cfg.seed;
    j["format"] = cfg.format == Format::csv ? "csv" : "json";
    return j;
}

Json header(const RunConfig& cfg) {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = to_string(cfg.command);
    return doc;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
    Json doc = header(cfg);
    try {
        std::vector<NormSpec> specs;
        for (const std::string& t : cfg.norms) specs.push_back(parse_norm_spec(t));
        if (specs.size() == 2 && specs[0].dim() != specs[1].dim()) throw DimensionMismatch(specs[0].dim(), specs[1].dim());
        Outcome out;
        switch (cfg.command) {
            case Command::g: out = run_g(specs, cfg); break;
            case Command::angle: out = run_angle(specs, cfg); break;
            case Command::ae_estimate: out = run_ae(specs, cfg); break;
            case Command::probe: out = run_probe(specs, cfg); break;
            case Command::exposed: out = run_exposed(specs, cfg); break;
            case Command::dual: out = run_dual(specs, cfg); break;
            case Command::suite: out = run_suite(cfg); break;
        }
        const int code = out.violation ? kExitViolation : kExitOk;
        if (cfg.format == Format::csv) {
            if (!out.csv) throw InvalidArgument("csv output needs ae-estimate or a probe with --eps-grid");
            return {code, *out.csv};
        }
        doc["status"] = out.violation ? "violation" : "ok";
        doc["config"] = config_echo(cfg, specs);
        doc["result"] = out.result;
        return {code, doc.dump(2) + "\n"};
    } catch (const Error& e) {
        doc["status"] = "error";
        doc["error"] = {{"kind", e.kind()}, {"message", e.what()}};
    } catch (const std::exception& e) {
        doc["status"] = "error";
        doc["error"] = {{"kind", "internal"}, {"message", e.what()}};
    }
    return {kExitError, doc.dump(2) + "\n"};
}

}  // namespace normgeo::cli
