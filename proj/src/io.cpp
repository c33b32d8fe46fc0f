#include "rslab/io.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>

namespace rslab {

namespace {

using njson = nlohmann::ordered_json;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

njson estimate_json(const Estimate& e) {
    njson j;
    j["value"] = e.value;
    j["std_error"] = e.std_error;
    j["n_samples"] = e.n_samples;
    j["method"] = method_name(e.method);
    return j;
}

Vec parse_vec(const njson& j, const std::string& field, int dim) {
    if (!j.is_array()) throw ParseError("body json: '" + field + "' must be an array");
    Vec v;
    for (const auto& x : j) {
        if (!x.is_number()) throw ParseError("body json: '" + field + "' holds a non-number");
        v.push_back(x.get<double>());
    }
    if (dim > 0 && int(v.size()) != dim)
        throw ParseError("body json: '" + field + "' has wrong length");
    return v;
}

njson parse_text(const std::string& text, const char* what) {
    njson j = njson::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError(std::string(what) + ": malformed json");
    return j;
}

njson body_json_tree(const Body& k) {
    njson j;
    j["dim"] = k.dim;
    switch (k.form) {
        case Body::Form::vpolytope: {
            j["form"] = "vpolytope";
            njson verts = njson::array();
            for (const auto& v : k.vertices) verts.push_back(v);
            j["vertices"] = std::move(verts);
            break;
        }
        case Body::Form::ball:
            j["form"] = "ball";
            j["center"] = k.center;
            j["radius"] = k.radius;
            break;
        case Body::Form::oracle:
            throw FormError("body json: oracle bodies have no serializable form");
    }
    j["label"] = k.label;
    return j;
}

Body body_from_tree(const njson& j) {
    if (!j.is_object()) throw ParseError("body json: expected an object");
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        throw ParseError("body json: missing integer field 'dim'");
    int dim = j["dim"].get<int>();
    if (dim < 1 || dim > 6) throw ParseError("body json: 'dim' out of range 1..6");
    if (!j.contains("form") || !j["form"].is_string())
        throw ParseError("body json: missing string field 'form'");
    std::string form = j["form"].get<std::string>();
    std::string label = j.value("label", std::string());

    if (form == "vpolytope") {
        if (!j.contains("vertices"))
            throw ParseError("body json: vpolytope needs field 'vertices'");
        std::vector<Vec> vertices;
        for (const auto& row : j["vertices"]) vertices.push_back(parse_vec(row, "vertices", dim));
        if (vertices.empty()) return make_empty(dim);
        Body k = make_vpolytope(std::move(vertices), true, label);
        if (k.dim != dim) throw ParseError("body json: vertex length disagrees with 'dim'");
        return k;
    }
    if (form == "ball") {
        if (!j.contains("radius") || !j["radius"].is_number())
            throw ParseError("body json: ball needs numeric field 'radius'");
        Vec center(static_cast<size_t>(dim), 0.0);
        if (j.contains("center")) center = parse_vec(j["center"], "center", dim);
        Body k = make_ball(dim, j["radius"].get<double>(), center);
        k.label = label;
        return k;
    }
    throw ParseError("body json: unknown form '" + form + "'");
}

}  // namespace

std::string body_to_json(const Body& k) { return body_json_tree(k).dump(2) + "\n"; }

Body body_from_json(const std::string& text) {
    return body_from_tree(parse_text(text, "body json"));
}

std::string qc_function_to_json(const QCFunction& f) {
    njson j;
    j["sup"] = f.sup_value;
    njson levels = njson::array();
    for (size_t i = 0; i < f.levels.size(); ++i) {
        njson row;
        row["t"] = f.levels[i];
        row["body"] = body_json_tree(f.layers[i]);
        levels.push_back(std::move(row));
    }
    j["levels"] = std::move(levels);
    return j.dump(2) + "\n";
}

QCFunction qc_function_from_json(const std::string& text) {
    njson j = parse_text(text, "function json");
    if (!j.is_object() || !j.contains("sup") || !j["sup"].is_number())
        throw ParseError("function json: missing numeric field 'sup'");
    if (!j.contains("levels") || !j["levels"].is_array() || j["levels"].empty())
        throw ParseError("function json: missing non-empty array 'levels'");
    std::vector<double> levels;
    std::vector<Body> layers;
    for (const auto& row : j["levels"]) {
        if (!row.is_object() || !row.contains("t") || !row.contains("body"))
            throw ParseError("function json: each level needs fields 't' and 'body'");
        levels.push_back(row["t"].get<double>());
        layers.push_back(body_from_tree(row["body"]));
    }
    int dim = layers.front().dim;
    return make_qc_function(dim, j["sup"].get<double>(), std::move(levels),
                            std::move(layers));
}

std::string body_hash(const Body& k) {
    // FNV-1a over a canonical description; oracle bodies hash their label
    std::string desc;
    if (k.form == Body::Form::oracle)
        desc = "oracle:" + std::to_string(k.dim) + ":" + k.label;
    else
        desc = body_json_tree(k).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : desc) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void InputEcho::add(const std::string& key, const std::string& value) {
    items.emplace_back(key, value);
}

void InputEcho::add_body(const std::string& key, const Body& k) {
    std::string name = k.label.empty() ? std::string("body") : k.label;
    add(key, name + "#" + body_hash(k));
}

void InputEcho::add_density(const std::string& key, const Density& d) {
    add(key, d.spec);
}

void InputEcho::add_config(const IntegrateConfig& cfg) {
    add("seed", std::to_string(cfg.seed));
    add("n_samples", std::to_string(cfg.n_samples));
    const char* prefer = "automatic";
    switch (cfg.prefer) {
        case IntegrateConfig::Prefer::automatic: prefer = "automatic"; break;
        case IntegrateConfig::Prefer::exact: prefer = "exact"; break;
        case IntegrateConfig::Prefer::mc: prefer = "mc"; break;
        case IntegrateConfig::Prefer::grid: prefer = "grid"; break;
    }
    add("prefer", prefer);
    add("grid_res", std::to_string(cfg.grid_res));
    add("theta_order", std::to_string(cfg.theta_order));
    add("theta_min", fmt_double(cfg.theta_min));
    add("sup_coarse", std::to_string(cfg.sup_coarse));
    add("sup_rounds", std::to_string(cfg.sup_rounds));
    add("sup_tol", fmt_double(cfg.sup_tol));
    add("threads", std::to_string(cfg.threads));
}

std::string report_to_json(const IneqReport& rep, const InputEcho& echo) {
    njson j;
    j["family"] = rep.family;
    j["variant"] = rep.variant;
    j["lhs"] = estimate_json(rep.lhs);
    j["rhs"] = estimate_json(rep.rhs);
    j["constant"] = rep.constant;
    j["ratio"] = rep.ratio;
    j["verdict"] = verdict_name(rep.verdict);
    j["sup_converged"] = rep.sup_converged;
    j["sup_on_rhs"] = rep.sup_on_rhs;
    njson audits = njson::array();
    for (const auto& a : rep.audits) {
        njson row;
        row["name"] = a.name;
        row["passed"] = a.passed;
        row["warn_only"] = a.warn_only;
        row["note"] = a.note;
        audits.push_back(std::move(row));
    }
    j["audits"] = std::move(audits);
    njson meta = njson::array();
    for (const auto& kv : rep.metadata) meta.push_back(njson::array({kv.first, kv.second}));
    j["metadata"] = std::move(meta);
    j["note"] = rep.note;
    njson input;
    for (const auto& kv : echo.items) input[kv.first] = kv.second;
    j["input"] = std::move(input);
    return j.dump(2) + "\n";
}

std::string csv_header() {
    return "inequality,variant,params,lhs,lhs_stderr,rhs,rhs_stderr,ratio,verdict\n";
}

std::string csv_row(const std::string& inequality, const std::string& variant,
                    const std::string& params, const IneqReport& rep) {
    std::string row = inequality;
    row += ',';
    row += variant;
    row += ',';
    row += params;
    row += ',';
    row += fmt_double(rep.lhs.value);
    row += ',';
    row += fmt_double(rep.lhs.std_error);
    row += ',';
    row += fmt_double(rep.rhs.value);
    row += ',';
    row += fmt_double(rep.rhs.std_error);
    row += ',';
    row += fmt_double(rep.ratio);
    row += ',';
    row += verdict_name(rep.verdict);
    row += '\n';
    return row;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open for writing: " + tmp);
        out.write(content.data(), std::streamsize(content.size()));
        out.flush();
        if (!out) throw Error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error("rename failed: " + path);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

}  // namespace rslab
