#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "normgeo/cli.hpp"
#include "normgeo/errors.hpp"

namespace normgeo::cli {

namespace {

using nlohmann::json;

[[noreturn]] void bad_token(std::string_view token, std::string_view what) {
    throw InvalidArgument("bad token '" + std::string(token) + "': " + std::string(what));
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_real(std::string_view token) {
    const std::string_view t = trim(token);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) bad_token(token, "expected a real number");
    return v;
}

std::size_t parse_count(std::string_view token) {
    const std::string_view t = trim(token);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) bad_token(token, "expected a positive integer");
    return v;
}

Exponent parse_exponent(std::string_view token) {
    if (trim(token) == "inf") return Exponent::infinity();
    const double p = parse_real(token);
    if (!(p >= 1.0)) bad_token(token, "exponent p must satisfy p >= 1");
    return Exponent::finite(p);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::size_t parse_dim(std::string_view token) {
    if (token.substr(0, 4) != "dim=") bad_token(token, "expected dim=<n>");
    const std::size_t n = parse_count(token.substr(4));
    if (n == 0) bad_token(token, "dimension must be at least 1");
    return n;
}

std::string read_file(std::string_view path) {
    std::ifstream in{std::string(path)};
    if (!in) throw InvalidArgument("cannot read file '" + std::string(path) + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Inline JSON or @file.
json load_json(std::string_view token) {
    const std::string text = token.starts_with("@") ? read_file(token.substr(1)) : std::string(token);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        bad_token(token, std::string("invalid JSON (") + e.what() + ")");
    }
}

std::vector<double> json_row(const json& j, std::string_view token) {
    if (!j.is_array() || j.empty()) bad_token(token, "expected a non-empty JSON array of numbers");
    std::vector<double> row;
    for (const auto& v : j) {
        if (!v.is_number()) bad_token(token, "expected a non-empty JSON array of numbers");
        row.push_back(v.get<double>());
    }
    return row;
}

std::vector<std::vector<double>> json_rows(const json& j, std::string_view token) {
    if (!j.is_array() || j.empty()) bad_token(token, "expected a JSON list of rows");
    std::vector<std::vector<double>> rows;
    for (const auto& r : j) rows.push_back(json_row(r, token));
    return rows;
}

}  // namespace

NormSpec parse_norm_spec(std::string_view raw) {
    const std::string_view text = trim(raw);
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) bad_token(text, "expected <kind>:<parameters>");
    const std::string_view kind = text.substr(0, colon);
    const std::string_view rest = text.substr(colon + 1);

    if (kind == "lp") {
        const auto parts = split(rest, ':');
        if (parts.size() != 2) bad_token(rest, "expected lp:<p>:dim=<n>");
        return NormSpec::lp(parse_exponent(parts[0]), parse_dim(parts[1]));
    }
    if (kind.size() > 1 && kind.front() == 'l' && kind != "lp") {
        return NormSpec::lp(parse_exponent(kind.substr(1)), parse_dim(rest));
    }
    if (kind == "wlp") {
        const std::size_t c = rest.find(':');
        if (c == std::string_view::npos) bad_token(rest, "expected wlp:<p>:w=<w1,...,wn>");
        const std::string_view wpart = rest.substr(c + 1);
        if (wpart.substr(0, 2) != "w=") bad_token(wpart, "expected w=<w1,...,wn>");
        std::vector<double> w;
        for (std::string_view t : split(wpart.substr(2), ',')) {
            const double v = parse_real(t);
            if (!(v > 0.0) || !std::isfinite(v)) bad_token(t, "weights must be positive and finite");
            w.push_back(v);
        }
        return NormSpec::weighted_lp(parse_exponent(rest.substr(0, c)), std::move(w));
    }
    if (kind == "quad") return NormSpec::quadratic(json_rows(load_json(rest), rest));
    if (kind == "kt") return NormSpec::kt_blend(parse_real(rest));
    if (kind == "poly") {
        std::vector<Vector> rows;
        for (auto& r : json_rows(load_json(rest), rest)) rows.emplace_back(std::move(r));
        return NormSpec::polyhedral(rows);
    }
    if (kind == "stadium") return NormSpec::stadium(parse_real(rest));
    bad_token(kind, "unknown norm kind (expected lp, l<p>, wlp, quad, kt, poly or stadium)");
}

Vector parse_vector(std::string_view raw) {
    const std::string_view text = trim(raw);
    if (text.empty()) bad_token(raw, "empty vector");
    if (text.starts_with("@") || text.starts_with("[")) return Vector(json_row(load_json(text), text));
    std::vector<double> c;
    for (std::string_view t : split(text, ',')) {
        const double v = parse_real(t);
        if (!std::isfinite(v)) bad_token(t, "coordinates must be finite");
        c.push_back(v);
    }
    return Vector(std::move(c));
}

const char* to_string(Command c) noexcept {
    switch (c) {
        case Command::g: return "g";
        case Command::angle: return "angle";
        case Command::ae_estimate: return "ae-estimate";
        case Command::probe: return "probe";
        case Command::exposed: return "exposed";
        case Command::dual: return "dual";
        case Command::suite: return "suite";
    }
    return "unknown";
}

Command parse_command(std::string_view name) {
    for (Command c : {Command::g, Command::angle, Command::ae_estimate, Command::probe, Command::exposed, Command::dual,
                      Command::suite}) {
        if (name == to_string(c)) return c;
    }
    bad_token(name, "unknown command");
}

std::uint64_t default_seed() {
    const char* env = std::getenv("NORMGEO_SEED");
    if (env == nullptr || *env == '\0') return 0;
    const std::string_view t = trim(env);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw InvalidArgument("NORMGEO_SEED must be an unsigned integer, got '" + std::string(env) + "'");
    }
    return v;
}

}  // namespace normgeo::cli
