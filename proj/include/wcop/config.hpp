#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wcop/grid.hpp"
#include "wcop/operators.hpp"

namespace wcop {

inline constexpr int config_schema_version = 1;

/// The symbol phi as written in a config file. Parameters by kind:
///   rotation: theta; moebius: theta, p (e^{i theta}(z - p)/(1 - conj(p) z));
///   canonical_hyperbolic: mu; parabolic_cayley: t; blaschke: zeros, factor.
struct MapSpec {
    std::string kind = "canonical_hyperbolic";
    double theta = 0.0;
    Complex p{};
    double mu = 0.5;
    double t = 1.0;
    std::vector<Complex> zeros;
    Complex factor{1.0, 0.0};

    bool operator==(const MapSpec&) const = default;
};

struct OperatorSpec {
    std::vector<Complex> numerator{Complex{2.0}, Complex{1.0}};  // ascending powers
    std::vector<Complex> denominator{Complex{1.0}};
    MapSpec phi;
    Space space = Space::Bloch;

    bool operator==(const OperatorSpec&) const = default;
};

struct ExperimentConfig {
    int schema_version = config_schema_version;
    OperatorSpec op;
    GridParams grid;
    // Radial levels of the grid used for boundedness certificates inside the verification suite.
    int certification_levels = 8;
    std::vector<int> cocycle_schedule{25, 50, 100};
    std::vector<int> truncation_sizes{16, 32, 64};
    // Keyed by check; unknown keys are rejected.
    std::map<std::string, double> tolerances = default_tolerances();
    std::string output_dir = "wcop-out";
    std::uint64_t seed = 20240521;

    bool operator==(const ExperimentConfig&) const = default;

    static std::map<std::string, double> default_tolerances();
};

/// Parses a JSON document; ConfigError on syntax errors, wrong types, unknown keys or a
/// schema version other than `config_schema_version`.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

/// Canonical JSON text (sorted keys, two-space indent); parse_config(emit_config(c)) == c.
std::string emit_config(const ExperimentConfig& config);

/// 64-bit FNV-1a of the canonical text without output_dir, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

/// Builds phi; DomainError for invalid parameters (e.g. "not a disc automorphism" for |p| >= 1).
SelfMap build_map(const MapSpec& spec);
WeightedCompositionOp build_operator(const OperatorSpec& spec);

}  // namespace wcop
