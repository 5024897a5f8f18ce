#include "serialize.hpp"

#include <charconv>
#include <cmath>

namespace normgeo::cli {

Json real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
    return v;
}

Json to_json(const Vector& v) {
    Json a = Json::array();
    for (double c : v.coords()) a.push_back(real(c));
    return a;
}

namespace {

Json optional_real(const std::optional<double>& v) { return v ? real(*v) : Json(nullptr); }

}  // namespace

Json to_json(const GReport& r) {
    Json j;
    j["G_plus"] = optional_real(r.G_plus);
    j["G_minus"] = optional_real(r.G_minus);
    j["g_plus"] = real(r.g_plus);
    j["g_minus"] = real(r.g_minus);
    j["g"] = real(r.g);
    j["method"] = to_string(r.method);
    j["step_used"] = optional_real(r.step_used);
    return j;
}

Json to_json(const AngleReport& r) {
    Json j;
    j["cos_theta"] = real(r.cos_theta);
    j["theta"] = real(r.theta);
    j["tan_half"] = real(r.tan_half);
    j["method"] = to_string(r.method);
    return j;
}

Json to_json(const EquivEstimate& e) {
    Json j;
    j["C_lower"] = real(e.C_lower);
    j["diverged"] = e.diverged;
    j["witness_pair"] = Json::array({to_json(e.witness_x), to_json(e.witness_y)});
    j["samples_used"] = e.samples_used;
    j["refine_iters"] = e.refine_iters;
    j["cap"] = real(e.cap);
    return j;
}

Json to_json(const ProbeReport& r) {
    Json j;
    j["property"] = to_string(r.property);
    j["verdict"] = to_string(r.verdict);
    j["classification"] = r.classification;
    j["value"] = optional_real(r.value);
    Json w = Json::array();
    for (const Vector& v : r.witness) w.push_back(to_json(v));
    j["witness"] = w;
    Json extras = Json::object();
    for (const auto& [k, v] : r.extras) extras[k] = real(v);
    j["extras"] = extras;
    Json cfg;
    cfg["epsilon"] = optional_real(r.epsilon);
    cfg["point"] = r.point ? to_json(*r.point) : Json(nullptr);
    cfg["samples"] = r.options.samples;
    cfg["refine_iters"] = r.options.refine_iters;
    cfg["seed"] = r.options.seed;
    cfg["tol"] = real(r.options.tol);
    cfg["separation"] = real(r.options.separation);
    j["config"] = cfg;
    return j;
}

Json to_json(const BirkhoffResult& r) {
    Json j;
    j["orthogonal"] = r.orthogonal;
    j["lambda_star"] = real(r.lambda_star);
    j["min_norm"] = real(r.min_norm);
    j["norm_x"] = real(r.norm_x);
    j["g_xy"] = real(r.g_xy);
    j["g_criterion_agrees"] = r.g_criterion_agrees ? Json(*r.g_criterion_agrees) : Json(nullptr);
    j["note"] = r.note;
    return j;
}

Json to_json(const DualRep& r) {
    Json j;
    j["f"] = to_json(r.f.coeffs);
    j["dual_norm"] = real(r.dual_norm);
    j["representer"] = to_json(r.representer);
    j["residual"] = real(r.residual);
    j["iterations"] = r.iterations;
    return j;
}

Json to_json(const SipReport& r) {
    Json axioms = Json::array();
    for (const AxiomResult& a : r.axioms) {
        Json j;
        j["name"] = a.name;
        j["statement"] = a.statement;
        j["worst_violation"] = real(a.worst_violation);
        j["pass"] = a.pass;
        Json w;
        w["x"] = a.x ? to_json(*a.x) : Json(nullptr);
        w["y"] = a.y ? to_json(*a.y) : Json(nullptr);
        w["z"] = a.z ? to_json(*a.z) : Json(nullptr);
        w["alpha"] = optional_real(a.alpha);
        j["witness"] = w;
        axioms.push_back(j);
    }
    Json j;
    j["trials"] = r.trials;
    j["tol"] = real(r.tol);
    j["all_pass"] = r.all_pass();
    j["axioms"] = axioms;
    return j;
}

std::string csv_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
}

}  // namespace normgeo::cli
