#include "wcop/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace wcop {

namespace {

using nlohmann::json;

const std::set<std::string> map_kinds{"rotation", "moebius", "canonical_hyperbolic", "parabolic_cayley", "blaschke"};

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, _] : j.items())
        if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

template <class T>
T get(const json& j, const std::string& key, const std::string& where) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

Complex complex_from(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(where + ": complex values are [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to(Complex z) { return json::array({z.real(), z.imag()}); }

std::vector<Complex> complex_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + " must be a list of [re, im] pairs");
    std::vector<Complex> out;
    for (const auto& v : j) out.push_back(complex_from(v, where));
    return out;
}

json complex_list_to(const std::vector<Complex>& v) {
    json out = json::array();
    for (const auto& z : v) out.push_back(complex_to(z));
    return out;
}

MapSpec map_from(const json& j) {
    reject_unknown(j, {"kind", "params"}, "operator.phi");
    MapSpec m;
    m.kind = get<std::string>(j, "kind", "operator.phi");
    if (!map_kinds.contains(m.kind)) throw ConfigError("operator.phi.kind: unknown map kind '" + m.kind + "'");
    const json params = j.contains("params") ? j.at("params") : json::object();
    const std::string where = "operator.phi.params";
    if (m.kind == "rotation") {
        reject_unknown(params, {"theta"}, where);
        m.theta = get<double>(params, "theta", where);
    } else if (m.kind == "moebius") {
        reject_unknown(params, {"theta", "p"}, where);
        m.theta = params.contains("theta") ? get<double>(params, "theta", where) : 0.0;
        if (!params.contains("p")) throw ConfigError(where + ".p is required for moebius maps");
        m.p = complex_from(params.at("p"), where + ".p");
    } else if (m.kind == "canonical_hyperbolic") {
        reject_unknown(params, {"mu"}, where);
        m.mu = get<double>(params, "mu", where);
    } else if (m.kind == "parabolic_cayley") {
        reject_unknown(params, {"t"}, where);
        m.t = get<double>(params, "t", where);
    } else {
        reject_unknown(params, {"zeros", "factor"}, where);
        if (!params.contains("zeros")) throw ConfigError(where + ".zeros is required for blaschke maps");
        m.zeros = complex_list(params.at("zeros"), where + ".zeros");
        if (params.contains("factor")) m.factor = complex_from(params.at("factor"), where + ".factor");
    }
    return m;
}

json map_to(const MapSpec& m) {
    json params = json::object();
    if (m.kind == "rotation") {
        params["theta"] = m.theta;
    } else if (m.kind == "moebius") {
        params["theta"] = m.theta;
        params["p"] = complex_to(m.p);
    } else if (m.kind == "canonical_hyperbolic") {
        params["mu"] = m.mu;
    } else if (m.kind == "parabolic_cayley") {
        params["t"] = m.t;
    } else {
        params["zeros"] = complex_list_to(m.zeros);
        params["factor"] = complex_to(m.factor);
    }
    return {{"kind", m.kind}, {"params", params}};
}

std::vector<int> int_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + " must be a list of integers");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ConfigError(where + " must be a list of integers");
        out.push_back(v.get<int>());
    }
    return out;
}

void validate(const ExperimentConfig& c) {
    if (c.op.numerator.empty() || c.op.denominator.empty())
        throw ConfigError("operator.u: numerator and denominator need at least one coefficient");
    if (c.grid.radial_levels < 1) throw ConfigError("grid.radial_levels must be >= 1");
    if (!(c.grid.beta > 0.0)) throw ConfigError("grid.beta must be > 0");
    if (c.certification_levels < 2) throw ConfigError("grid.certification_levels must be >= 2");
    if (c.cocycle_schedule.empty()) throw ConfigError("schedules.cocycle must not be empty");
    for (std::size_t i = 0; i < c.cocycle_schedule.size(); ++i)
        if (c.cocycle_schedule[i] < 1 || (i > 0 && c.cocycle_schedule[i] <= c.cocycle_schedule[i - 1]))
            throw ConfigError("schedules.cocycle must be strictly increasing positive integers");
    if (c.truncation_sizes.empty()) throw ConfigError("schedules.truncation must not be empty");
    for (int n : c.truncation_sizes)
        if (n < 1 || n > 512) throw ConfigError("schedules.truncation entries must lie in [1, 512]");
}

}  // namespace

std::map<std::string, double> ExperimentConfig::default_tolerances() {
    return {
        {"binomial_residual", 1e-9},
        {"blaschke_bound", 1e-12},
        {"denjoy_wolff_hyperbolic", 1e-2},
        {"denjoy_wolff_parabolic", 5e-2},
        {"dirichlet_monomial", 1e-8},
        {"distance_chain", 1e-10},
        {"inverse_round_trip", 1e-9},
        {"invertibility_threshold", 1e-6},
        {"log_growth", 1e-12},
        {"norm_bound", 1e-9},
        {"prediction", 1e-9},
        {"radius_hyperbolic", 2e-2},
        {"radius_parabolic", 5e-2},
        {"root_cloud_modulus", 1e-9},
        {"root_cloud_point", 1e-6},
        {"spectrum_duality", 1e-10},
        {"unit_radius", 0.0},
    };
}

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(j, {"schema_version", "operator", "grid", "schedules", "tolerances", "output_dir", "seed"}, "config");
    ExperimentConfig c;
    c.schema_version = get<int>(j, "schema_version", "config");
    if (c.schema_version != config_schema_version)
        throw ConfigError("unsupported schema_version " + std::to_string(c.schema_version));

    if (j.contains("operator")) {
        const json& o = j.at("operator");
        reject_unknown(o, {"u", "phi", "space"}, "operator");
        if (o.contains("u")) {
            const json& u = o.at("u");
            reject_unknown(u, {"numerator", "denominator"}, "operator.u");
            if (u.contains("numerator")) c.op.numerator = complex_list(u.at("numerator"), "operator.u.numerator");
            if (u.contains("denominator")) c.op.denominator = complex_list(u.at("denominator"), "operator.u.denominator");
        }
        if (o.contains("phi")) c.op.phi = map_from(o.at("phi"));
        if (o.contains("space")) c.op.space = space_from_string(get<std::string>(o, "space", "operator"));
    }
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        reject_unknown(g, {"radial_levels", "beta", "boundary_layer", "angular_scale", "certification_levels"}, "grid");
        if (g.contains("radial_levels")) c.grid.radial_levels = get<int>(g, "radial_levels", "grid");
        if (g.contains("beta")) c.grid.beta = get<double>(g, "beta", "grid");
        if (g.contains("boundary_layer")) c.grid.boundary_layer = get<bool>(g, "boundary_layer", "grid");
        if (g.contains("angular_scale")) c.grid.angular_scale = get<int>(g, "angular_scale", "grid");
        if (g.contains("certification_levels")) c.certification_levels = get<int>(g, "certification_levels", "grid");
    }
    if (j.contains("schedules")) {
        const json& s = j.at("schedules");
        reject_unknown(s, {"cocycle", "truncation"}, "schedules");
        if (s.contains("cocycle")) c.cocycle_schedule = int_list(s.at("cocycle"), "schedules.cocycle");
        if (s.contains("truncation")) c.truncation_sizes = int_list(s.at("truncation"), "schedules.truncation");
    }
    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        const auto defaults = ExperimentConfig::default_tolerances();
        std::set<std::string> allowed;
        for (const auto& [k, _] : defaults) allowed.insert(k);
        reject_unknown(t, allowed, "tolerances");
        for (const auto& [k, v] : t.items()) {
            if (!v.is_number() || !(v.get<double>() >= 0.0))
                throw ConfigError("tolerances." + k + " must be a non-negative number");
            c.tolerances[k] = v.get<double>();
        }
    }
    if (j.contains("output_dir")) c.output_dir = get<std::string>(j, "output_dir", "config");
    if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed", "config");
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string emit_config(const ExperimentConfig& c) {
    json j;
    j["schema_version"] = c.schema_version;
    j["operator"] = {{"u", {{"numerator", complex_list_to(c.op.numerator)}, {"denominator", complex_list_to(c.op.denominator)}}},
                     {"phi", map_to(c.op.phi)},
                     {"space", std::string(to_string(c.op.space))}};
    j["grid"] = {{"radial_levels", c.grid.radial_levels},
                 {"beta", c.grid.beta},
                 {"boundary_layer", c.grid.boundary_layer},
                 {"angular_scale", c.grid.angular_scale},
                 {"certification_levels", c.certification_levels}};
    j["schedules"] = {{"cocycle", c.cocycle_schedule}, {"truncation", c.truncation_sizes}};
    j["tolerances"] = c.tolerances;
    j["output_dir"] = c.output_dir;
    j["seed"] = c.seed;
    return j.dump(2) + "\n";
}

std::string config_hash(const ExperimentConfig& config) {
    ExperimentConfig hashed = config;
    hashed.output_dir.clear();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : emit_config(hashed)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

SelfMap build_map(const MapSpec& m) {
    if (m.kind == "rotation") return SelfMap(build_rotation(m.theta));
    if (m.kind == "moebius") return SelfMap(build_disc_automorphism(m.theta, m.p));
    if (m.kind == "canonical_hyperbolic") return SelfMap(build_canonical_hyperbolic(m.mu));
    if (m.kind == "parabolic_cayley") return SelfMap(build_parabolic_cayley(m.t));
    if (m.kind == "blaschke") return SelfMap(BlaschkeProduct(m.zeros, m.factor));
    throw ConfigError("unknown map kind '" + m.kind + "'");
}

WeightedCompositionOp build_operator(const OperatorSpec& spec) {
    const RationalSymbol u(Polynomial(spec.numerator), Polynomial(spec.denominator));
    return WeightedCompositionOp(u, build_map(spec.phi), spec.space);
}

}  // namespace wcop
