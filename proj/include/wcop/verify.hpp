#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wcop/config.hpp"

namespace wcop {

/// One tagged pass/fail comparison. Relations:
///   "abs": |observed - predicted| <= tolerance
///   "rel": |observed - predicted| <= tolerance * |predicted|
///   "le":  observed <= predicted + tolerance
///   "ge":  observed >= predicted - tolerance
struct CheckRecord {
    std::string name;
    std::string tag;
    std::string relation;
    double predicted = 0.0;
    double observed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

CheckRecord make_check(std::string name, std::string tag, std::string relation, double predicted, double observed,
                       double tolerance);

struct VerifyGroup {
    std::string id;
    std::string title;
    // Acceptance criterion number, 0 for supplementary checks.
    int criterion = 0;
    double runtime_limit_seconds = 0.0;
    std::function<std::vector<CheckRecord>(const ExperimentConfig&)> run;
};

/// The reproduction suite: the ten acceptance criteria followed by supplementary checks.
/// Random families are drawn from a generator seeded with `config.seed`.
const std::vector<VerifyGroup>& verification_suite();

}  // namespace wcop
