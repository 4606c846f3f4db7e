#include "wcop/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "json.hpp"
#include "wcop/spectra.hpp"
#include "wcop/verify.hpp"

namespace wcop {

namespace {

using nlohmann::json;

// Adding 0.0 turns -0.0 into 0.0 so reports do not depend on the sign of zero.
json complex_json(Complex z) { return json::array({z.real() + 0.0, z.imag() + 0.0}); }

json estimate_json(const NormEstimate& e) {
    json j{{"value", e.value}, {"kind", std::string(to_string(e.kind))}, {"grid", e.grid_descriptor}};
    j["refinement_delta"] = e.refinement_delta ? json(*e.refinement_delta) : json(nullptr);
    return j;
}

json verdict_json(const BoundednessVerdict& v) {
    json witnesses = json::array();
    for (const auto& w : v.witnesses)
        witnesses.push_back({{"name", w.name}, {"estimate", estimate_json(w.estimate)}, {"history", w.history}});
    return {{"verdict", std::string(to_string(v.verdict))}, {"reason", v.reason}, {"witnesses", witnesses}};
}

json prediction_json(const SpectrumPrediction& p) {
    json j{{"shape", std::string(to_string(p.shape))}, {"provenance", std::string(to_string(p.provenance))}};
    switch (p.shape) {
        case SpectrumShape::Circle: j["radius"] = p.radius; break;
        case SpectrumShape::Annulus:
            j["r_min"] = p.r_min;
            j["r_max"] = p.r_max;
            j["exact"] = p.exact;
            break;
        case SpectrumShape::RootSetClosure: {
            j["period"] = p.period;
            j["point_count"] = p.points.size();
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (const auto& z : p.points) {
                lo = std::min(lo, std::abs(z));
                hi = std::max(hi, std::abs(z));
            }
            j["min_modulus"] = lo;
            j["max_modulus"] = hi;
            j["refinement_hausdorff"] = p.refinement_hausdorff ? json(*p.refinement_hausdorff) : json(nullptr);
            break;
        }
    }
    json assumptions = json::object();
    for (const auto& [name, ok] : p.assumptions_checked) assumptions[name] = ok;
    j["assumptions_checked"] = assumptions;
    j["note"] = p.note;
    return j;
}

json record_json(const CheckRecord& r) {
    return {{"name", r.name},         {"tag", r.tag},           {"relation", r.relation}, {"predicted", r.predicted},
            {"observed", r.observed}, {"tolerance", r.tolerance}, {"pass", r.pass}};
}

const MoebiusTransform& require_moebius(const SelfMap& phi, const char* what) {
    if (!phi.is_moebius()) throw DomainError(std::string(what) + " requires a Moebius map");
    return phi.moebius();
}

struct Context {
    explicit Context(const ExperimentConfig& c) : config(c) {}

    const ExperimentConfig& config;
    json result = json::object();
    json records = json::array();
    json timing = json::object();
    std::string operator_description;
    CommandOutput out;
};

WeightedCompositionOp operator_for(Context& ctx) {
    auto op = build_operator(ctx.config.op);
    ctx.operator_description = op.describe();
    return op;
}

void cmd_classify(Context& ctx) {
    const auto map = build_map(ctx.config.op.phi);
    const auto& phi = require_moebius(map, "classify");
    const auto cls = classify(phi);
    json fixed = json::array();
    for (const auto& f : cls.fixed_points)
        fixed.push_back({{"location", complex_json(f.location)}, {"derivative", complex_json(f.derivative)}});
    ctx.result = {{"kind", std::string(to_string(cls.kind))}, {"fixed_points", fixed}, {"unstable", cls.unstable},
                  {"diagnostic", cls.diagnostic}};
    if (cls.kind == AutomorphismKind::Hyperbolic) {
        ctx.result["attractive"] = complex_json(cls.attractive);
        ctx.result["repulsive"] = complex_json(cls.repulsive);
        ctx.result["multiplier"] = cls.multiplier;
    }
}

void cmd_predict(Context& ctx) {
    const auto op = operator_for(ctx);
    const auto p = predict_spectrum(op, DiscGrid(ctx.config.grid));
    ctx.result = prediction_json(p);
    if (p.shape == SpectrumShape::RootSetClosure) ctx.out.artifacts.push_back({"spectrum_points.csv", points_csv(p.points)});
}

void cmd_estimate_radius(Context& ctx) {
    const auto op = operator_for(ctx);
    const auto e = spectral_radius_estimate(op, ctx.config.cocycle_schedule, DiscGrid(ctx.config.grid));
    ctx.result = {{"schedule", e.schedule},         {"sequence", e.sequence},     {"extrapolated", e.extrapolated},
                  {"predicted", e.predicted},       {"relative_gap", e.relative_gap}, {"note", e.note}};
}

void cmd_check_bounded(Context& ctx) {
    const auto op = operator_for(ctx);
    ctx.result = verdict_json(check_bounded(op, DiscGrid(ctx.config.grid)));
}

void cmd_check_invertible(Context& ctx) {
    const auto op = operator_for(ctx);
    const auto r = check_invertible(op, DiscGrid(ctx.config.grid), ctx.config.tolerances.at("invertibility_threshold"));
    ctx.result = {{"invertible", r.invertible},
                  {"inf_modulus", r.inf_modulus},
                  {"multiplier", verdict_json(r.multiplier)},
                  {"reason", r.reason}};
    ctx.result["inverse"] = r.inverse ? json(r.inverse->describe()) : json(nullptr);
}

void cmd_root_cloud(Context& ctx) {
    const auto op = operator_for(ctx);
    const auto cloud = elliptic_root_cloud(op, DiscGrid(ctx.config.grid));
    ctx.result = prediction_json(cloud);
    ctx.out.artifacts.push_back({"root_cloud.csv", points_csv(cloud.points)});
}

void cmd_truncate_eigs(Context& ctx) {
    const auto op = operator_for(ctx);
    json sizes = json::array();
    for (int n : ctx.config.truncation_sizes) {
        const auto eigs = truncation_eigenvalues(taylor_truncation(op, n));
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const auto& z : eigs) {
            lo = std::min(lo, std::abs(z));
            hi = std::max(hi, std::abs(z));
        }
        const std::string file = "truncation_eigs_" + std::to_string(n) + ".csv";
        sizes.push_back({{"n", n}, {"min_modulus", lo}, {"max_modulus", hi}, {"file", file}});
        ctx.out.artifacts.push_back({file, points_csv(eigs)});
    }
    ctx.result = {{"truncations", sizes},
                  {"note", "exploratory: eigenvalues of finite Taylor truncations, not a spectral claim"}};
}

void cmd_probe_conjecture(Context& ctx) {
    const auto op = operator_for(ctx);
    ProbeOptions options;
    options.sizes = ctx.config.truncation_sizes;
    const auto probe = conjecture_probe(op, options);
    json samples = json::array();
    for (const auto& s : probe.samples)
        samples.push_back({{"lambda", complex_json(s.lambda)}, {"label", s.label}, {"resolvent_norms", s.norms},
                           {"growth", s.growth}});
    ctx.result = {{"r_min", probe.r_min}, {"r_max", probe.r_max}, {"sizes", probe.sizes}, {"samples", samples},
                  {"disclaimer", probe.disclaimer}};
}

void cmd_verify(Context& ctx) {
    json groups = json::array();
    json group_times = json::object();
    for (const auto& g : verification_suite()) {
        const auto start = std::chrono::steady_clock::now();
        const auto records = g.run(ctx.config);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool pass = true;
        for (const auto& r : records) {
            pass = pass && r.pass;
            json rj = record_json(r);
            rj["group"] = g.id;
            ctx.records.push_back(rj);
        }
        groups.push_back({{"id", g.id}, {"title", g.title}, {"criterion", g.criterion}, {"pass", pass}});
        group_times[g.id] = seconds;
        ctx.out.checks_passed = ctx.out.checks_passed && pass;
    }
    ctx.result = {{"groups", groups}};
    ctx.timing["groups"] = group_times;
}

using Handler = void (*)(Context&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
    static const std::vector<std::pair<std::string, Handler>> table{
        {"classify", cmd_classify},
        {"predict", cmd_predict},
        {"estimate-radius", cmd_estimate_radius},
        {"check-bounded", cmd_check_bounded},
        {"check-invertible", cmd_check_invertible},
        {"root-cloud", cmd_root_cloud},
        {"truncate-eigs", cmd_truncate_eigs},
        {"probe-conjecture", cmd_probe_conjecture},
        {"verify", cmd_verify},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, _] : handlers()) n.push_back(name);
        return n;
    }();
    return names;
}

CommandOutput run_command(const std::string& name, const ExperimentConfig& config) {
    const auto it = std::find_if(handlers().begin(), handlers().end(), [&](const auto& h) { return h.first == name; });
    if (it == handlers().end()) throw ConfigError("unknown command '" + name + "'");
    Context ctx{config};
    const auto start = std::chrono::steady_clock::now();
    it->second(ctx);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json report{{"command", name},
                {"config_hash", config_hash(config)},
                {"tool_version", tool_version},
                {"seed", config.seed},
                {"grid", DiscGrid(config.grid).descriptor()},
                {"result", ctx.result},
                {"records", ctx.records},
                {"pass", ctx.out.checks_passed}};
    if (!ctx.operator_description.empty()) report["operator"] = ctx.operator_description;
    ctx.timing["command"] = name;
    ctx.timing["wall_seconds"] = seconds;
    ctx.out.report_json = report.dump(2) + "\n";
    ctx.out.timing_json = ctx.timing.dump(2) + "\n";
    return std::move(ctx.out);
}

void write_outputs(const CommandOutput& output, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
    auto write = [&](const std::string& file, const std::string& text) {
        std::ofstream out(fs::path(dir) / file, std::ios::binary);
        if (!out) throw ConfigError("cannot write '" + (fs::path(dir) / file).string() + "'");
        out << text;
    };
    write("report.json", output.report_json);
    write("timing.json", output.timing_json);
    for (const auto& [file, text] : output.artifacts) write(file, text);
}

std::string points_csv(const std::vector<Complex>& points) {
    std::string out = "re,im\n";
    char line[64];
    for (const auto& z : points) {
        std::snprintf(line, sizeof line, "%.17g,%.17g\n", z.real(), z.imag());
        out += line;
    }
    return out;
}

}  // namespace wcop
