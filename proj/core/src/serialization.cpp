#include "lamespec/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <variant>

namespace lamespec {

using nlohmann::json;

namespace {

void append_number(std::string& out, double value) {
    if (!std::isfinite(value)) throw Error(ErrorKind::Schema, "cannot serialize a non-finite number");
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    out += buffer;
}

bool is_scalar(const json& value) { return !value.is_object() && !value.is_array(); }

void write_value(const json& value, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    switch (value.type()) {
        case json::value_t::object: {
            if (value.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, item] : value.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad + json(key).dump() + ": ";
                write_value(item, out, indent + 2);
            }
            out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
            return;
        }
        case json::value_t::array: {
            const bool flat = std::all_of(value.begin(), value.end(), is_scalar);
            out += "[";
            bool first = true;
            for (const auto& item : value) {
                if (!first) out += flat ? ", " : ",";
                first = false;
                if (!flat) out += "\n" + pad;
                write_value(item, out, indent + 2);
            }
            if (!flat && !value.empty()) out += "\n" + std::string(static_cast<std::size_t>(indent), ' ');
            out += "]";
            return;
        }
        case json::value_t::number_float:
            append_number(out, value.get<double>());
            return;
        default:
            out += value.dump();
    }
}

const json& field(const json& object, const char* key) {
    if (!object.is_object() || !object.contains(key)) {
        throw Error(ErrorKind::Schema, std::string("missing field '") + key + "'");
    }
    return object.at(key);
}

double number(const json& object, const char* key) {
    const json& v = field(object, key);
    if (!v.is_number()) throw Error(ErrorKind::Schema, std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

std::string text(const json& object, const char* key) {
    const json& v = field(object, key);
    if (!v.is_string()) throw Error(ErrorKind::Schema, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

template <typename F>
auto schema_guard(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Schema, std::string("malformed document: ") + e.what());
    }
}

json provenance_to_json(const Provenance& provenance) {
    json out;
    out["kind"] = provenance_kind(provenance);
    if (const auto* p = std::get_if<FemProvenance>(&provenance)) {
        out["domain_kind"] = p->domain_kind;
        out["nodes"] = p->nodes;
        out["triangles"] = p->triangles;
        out["unknowns"] = p->unknowns;
        out["refinement_level"] = p->refinement_level;
        out["max_edge"] = p->max_edge;
        out["extrapolated"] = p->extrapolated;
    } else if (const auto* p = std::get_if<AnalyticIntervalProvenance>(&provenance)) {
        out["length"] = p->length;
    } else if (const auto* p = std::get_if<AnalyticDiskProvenance>(&provenance)) {
        out["radius"] = p->radius;
        out["m_max"] = p->m_max;
        out["lambda_max"] = p->lambda_max;
    } else if (const auto* p = std::get_if<ExternalProvenance>(&provenance)) {
        out["source"] = p->source;
    }
    return out;
}

Provenance provenance_from_json(const json& value) {
    const std::string kind = text(value, "kind");
    if (kind == "fem") {
        FemProvenance p;
        p.domain_kind = text(value, "domain_kind");
        p.nodes = field(value, "nodes").get<std::size_t>();
        p.triangles = field(value, "triangles").get<std::size_t>();
        p.unknowns = field(value, "unknowns").get<std::size_t>();
        p.refinement_level = field(value, "refinement_level").get<int>();
        p.max_edge = number(value, "max_edge");
        p.extrapolated = field(value, "extrapolated").get<bool>();
        return p;
    }
    if (kind == "analytic_interval") return AnalyticIntervalProvenance{number(value, "length")};
    if (kind == "analytic_disk") {
        return AnalyticDiskProvenance{number(value, "radius"), field(value, "m_max").get<int>(),
                                      number(value, "lambda_max")};
    }
    if (kind == "external") {
        return ExternalProvenance{value.contains("source") ? text(value, "source") : std::string{}};
    }
    throw Error(ErrorKind::Schema, "unknown provenance kind '" + kind + "'");
}

json geometric_to_json(const GeometricData& g) {
    return {{"dim", g.dim}, {"volume", g.volume}, {"boundary_area", g.boundary_area}};
}

GeometricData geometric_from_json(const json& value) {
    GeometricData g;
    g.dim = field(value, "dim").get<int>();
    g.volume = number(value, "volume");
    g.boundary_area = number(value, "boundary_area");
    return g;
}

json document(const std::string& type, json body) {
    body["schema_version"] = kSchemaVersion;
    body["type"] = type;
    return body;
}

}  // namespace

std::string dump_json(const json& value) {
    std::string out;
    write_value(value, out, 0);
    out += "\n";
    return out;
}

json parse_versioned(const std::string& input, const std::string& expected_type) {
    json value;
    try {
        value = json::parse(input);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Schema, std::string("malformed JSON: ") + e.what());
    }
    if (!value.is_object() || !value.contains("schema_version")) {
        throw Error(ErrorKind::Schema, "missing schema_version", "add \"schema_version\": 1");
    }
    const json& version = value.at("schema_version");
    if (!version.is_number_integer() || version.get<int>() != kSchemaVersion) {
        throw Error(ErrorKind::Schema, "unsupported schema_version " + version.dump() + ", expected " +
                                           std::to_string(kSchemaVersion));
    }
    if (value.contains("type") && value.at("type") != expected_type) {
        throw Error(ErrorKind::Schema,
                    "document type " + value.at("type").dump() + " where " + expected_type + " was expected");
    }
    return value;
}

json domain_to_json(const Domain& domain) {
    json out;
    out["kind"] = domain.kind();
    if (const auto* s = std::get_if<Interval>(&domain.shape)) out["length"] = s->length;
    if (const auto* s = std::get_if<Disk>(&domain.shape)) out["radius"] = s->radius;
    if (const auto* s = std::get_if<Rectangle>(&domain.shape)) {
        out["lx"] = s->lx;
        out["ly"] = s->ly;
    }
    if (const auto* s = std::get_if<Ellipse>(&domain.shape)) {
        out["a"] = s->a;
        out["b"] = s->b;
    }
    if (const auto* s = std::get_if<Polygon>(&domain.shape)) {
        json vertices = json::array();
        for (const auto& p : s->vertices) vertices.push_back(json::array({p[0], p[1]}));
        out["vertices"] = vertices;
    }
    return out;
}

Domain domain_from_json(const json& value) {
    return schema_guard([&] {
        const std::string kind = text(value, "kind");
        Domain d;
        if (kind == "interval") {
            d.shape = Interval{number(value, "length")};
        } else if (kind == "disk") {
            d.shape = Disk{number(value, "radius")};
        } else if (kind == "rectangle") {
            d.shape = Rectangle{number(value, "lx"), number(value, "ly")};
        } else if (kind == "ellipse") {
            d.shape = Ellipse{number(value, "a"), number(value, "b")};
        } else if (kind == "polygon") {
            Polygon poly;
            for (const auto& v : field(value, "vertices")) poly.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
            d.shape = poly;
        } else {
            throw Error(ErrorKind::Schema, "unknown domain kind '" + kind + "'");
        }
        d.validate();
        return d;
    });
}

json spectrum_to_json(const Spectrum& s) {
    json out;
    out["dim"] = s.dim;
    out["bc"] = std::string(to_string(s.bc));
    out["tau"] = s.params.tau();
    out["mu"] = s.params.mu();
    out["count"] = s.count();
    json values = json::array();
    for (double v : s.eigenvalues) values.push_back(v);
    out["eigenvalues"] = values;
    out["provenance"] = provenance_to_json(s.provenance);
    if (s.domain_meta) out["domain"] = domain_to_json(*s.domain_meta);
    out["notes"] = s.notes;
    return out;
}

Spectrum spectrum_from_json(const json& value) {
    return schema_guard([&] {
        Spectrum s;
        s.dim = value.contains("dim") ? field(value, "dim").get<int>() : 2;
        s.bc = parse_boundary_condition(text(value, "bc"));
        s.params = LameParameters(number(value, "tau"), number(value, "mu"));
        for (const auto& v : field(value, "eigenvalues")) {
            if (!v.is_number()) throw Error(ErrorKind::Schema, "eigenvalues must be numbers");
            s.eigenvalues.push_back(v.get<double>());
        }
        if (value.contains("count") && field(value, "count").get<std::size_t>() != s.eigenvalues.size()) {
            throw Error(ErrorKind::Schema, "count does not match the number of eigenvalues");
        }
        s.provenance = value.contains("provenance") ? provenance_from_json(value.at("provenance"))
                                                    : Provenance{ExternalProvenance{}};
        if (value.contains("domain")) s.domain_meta = domain_from_json(value.at("domain"));
        if (value.contains("notes")) s.notes = value.at("notes").get<std::vector<std::string>>();
        s.validate();
        return s;
    });
}

json geometry_to_json(const RecoveredGeometry& r) {
    json out;
    out["bc"] = std::string(to_string(r.bc));
    out["tau"] = r.params.tau();
    out["mu"] = r.params.mu();
    out["geometry"] = geometric_to_json(r.geometry);
    json fit;
    fit["a0_hat"] = r.fit.a0_hat;
    fit["a1_hat"] = r.fit.a1_hat;
    fit["c_hat"] = r.fit.c_hat ? json(*r.fit.c_hat) : json(nullptr);
    fit["c_sigma"] = r.fit.c_sigma ? json(*r.fit.c_sigma) : json(nullptr);
    fit["window"] = json::array({r.fit.window.t_min, r.fit.window.t_max});
    fit["residual_rms"] = r.fit.residual_rms;
    fit["condition"] = r.fit.condition;
    fit["n_samples"] = r.fit.n_samples;
    fit["a0_sigma"] = r.fit.a0_sigma;
    fit["a1_sigma"] = r.fit.a1_sigma;
    fit["a0_a1_covariance"] = r.fit.a0_a1_covariance;
    out["fit"] = fit;
    out["audit"] = {{"ratio", r.audit.ratio},
                    {"ball_ratio", r.audit.ball_ratio},
                    {"relative_excess", r.audit.relative_excess},
                    {"tolerance", r.audit.tolerance},
                    {"is_ball", r.audit.is_ball_within_tol}};
    out["ratio_sigma"] = r.ratio_sigma;
    out["volume_rel_err"] = r.volume_rel_err ? json(*r.volume_rel_err) : json(nullptr);
    out["boundary_rel_err"] = r.boundary_rel_err ? json(*r.boundary_rel_err) : json(nullptr);
    out["truth"] = r.truth ? geometric_to_json(*r.truth) : json(nullptr);
    out["notes"] = r.notes;
    return out;
}

RecoveredGeometry geometry_from_json(const json& value) {
    return schema_guard([&] {
        auto optional_number = [](const json& object, const char* key) -> std::optional<double> {
            if (!object.contains(key) || object.at(key).is_null()) return std::nullopt;
            return number(object, key);
        };
        RecoveredGeometry r;
        r.bc = parse_boundary_condition(text(value, "bc"));
        r.params = LameParameters(number(value, "tau"), number(value, "mu"));
        r.geometry = geometric_from_json(field(value, "geometry"));
        const json& fit = field(value, "fit");
        r.fit.a0_hat = number(fit, "a0_hat");
        r.fit.a1_hat = number(fit, "a1_hat");
        r.fit.c_hat = optional_number(fit, "c_hat");
        r.fit.c_sigma = optional_number(fit, "c_sigma");
        const json& window = field(fit, "window");
        r.fit.window = {window.at(0).get<double>(), window.at(1).get<double>()};
        r.fit.residual_rms = number(fit, "residual_rms");
        r.fit.condition = number(fit, "condition");
        r.fit.n_samples = field(fit, "n_samples").get<int>();
        r.fit.a0_sigma = number(fit, "a0_sigma");
        r.fit.a1_sigma = number(fit, "a1_sigma");
        r.fit.a0_a1_covariance = number(fit, "a0_a1_covariance");
        const json& audit = field(value, "audit");
        r.audit.ratio = number(audit, "ratio");
        r.audit.ball_ratio = number(audit, "ball_ratio");
        r.audit.relative_excess = number(audit, "relative_excess");
        r.audit.tolerance = number(audit, "tolerance");
        r.audit.is_ball_within_tol = field(audit, "is_ball").get<bool>();
        r.ratio_sigma = number(value, "ratio_sigma");
        r.volume_rel_err = optional_number(value, "volume_rel_err");
        r.boundary_rel_err = optional_number(value, "boundary_rel_err");
        if (value.contains("truth") && !value.at("truth").is_null()) r.truth = geometric_from_json(value.at("truth"));
        if (value.contains("notes")) r.notes = value.at("notes").get<std::vector<std::string>>();
        return r;
    });
}

json error_to_json(const Error& error, const std::string& stage) {
    return {{"kind", std::string(to_string(error.kind()))},
            {"stage", stage},
            {"message", error.what()},
            {"hint", error.hint()}};
}

std::string write_spectrum(const Spectrum& spectrum) { return dump_json(document("spectrum", spectrum_to_json(spectrum))); }

Spectrum read_spectrum(const std::string& input) { return spectrum_from_json(parse_versioned(input, "spectrum")); }

std::string write_domain(const Domain& domain) { return dump_json(document("domain", domain_to_json(domain))); }

Domain read_domain(const std::string& input) { return domain_from_json(parse_versioned(input, "domain")); }

std::string write_recovered(const RecoveredGeometry& result) {
    return dump_json(document("recovered_geometry", geometry_to_json(result)));
}

RecoveredGeometry read_recovered(const std::string& input) {
    return geometry_from_json(parse_versioned(input, "recovered_geometry"));
}

}  // namespace lamespec
