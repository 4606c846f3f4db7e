#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wcop/grid.hpp"
#include "wcop/symbols.hpp"

namespace wcop {

enum class EstimateKind { LowerBoundOfSup, QuadratureValue };
std::string_view to_string(EstimateKind kind);

struct NormEstimate {
    double value = 0.0;
    EstimateKind kind = EstimateKind::LowerBoundOfSup;
    std::string grid_descriptor;
    // Relative change against the previous refinement level, when one was computed.
    std::optional<double> refinement_delta;
};

/// Relative change (fine - coarse) / fine, zero when both vanish.
double relative_delta(double coarse, double fine);

/// Runs `estimator` on `grid` and on `grid.refined()`; returns the refined value with its delta.
NormEstimate with_refinement(const std::function<NormEstimate(const DiscGrid&)>& estimator, const DiscGrid& grid);

/// |f(0)| + grid max of (1 - |z|^2)|f'(z)|.
NormEstimate bloch_norm(const AnalyticFunction& f, const DiscGrid& grid);
/// Grid max of (1 - |z|^2)|f'(z)| alone.
NormEstimate bloch_seminorm(const AnalyticFunction& f, const DiscGrid& grid);

/// sqrt(|f(0)|^2 + integral of |f'|^2 dA).
NormEstimate dirichlet_norm(const AnalyticFunction& f, const QuadratureRule& rule);

/// Grid max of (1 - |z|^2)^s |f(z)|; s = 0 includes the boundary layer (plain sup norm).
NormEstimate weighted_sup_norm(const AnalyticFunction& f, double s, const DiscGrid& grid);

/// log(e / (1 - |z|^2)) = 1 - log(1 - |z|^2).
double log_weight(double gap);

/// Grid max of |f(z)| / log(e / (1 - |z|^2)).
double log_growth_ratio(const AnalyticFunction& f, const DiscGrid& grid);

/// Grid max of (1 - |z|^2)^s log(e / (1 - |z|^2)), the embedding constant of the Bloch space
/// into the weighted space divided by alpha.
double log_weight_embedding_constant(double s, const DiscGrid& grid);

/// The constant alpha in |f(z)| <= alpha ||f||_B log(e/(1 - |z|^2)).
struct GrowthConstant {
    double alpha = 1.0;
    // Set when a calibration run met a function exceeding the current alpha.
    bool raised = false;
    double worst_ratio = 0.0;
};

/// Checks the growth bound over `family`; raises alpha (with 1e-9 headroom) if some member exceeds it.
GrowthConstant calibrate_growth_constant(GrowthConstant current, const std::vector<AnalyticFunction>& family,
                                         const DiscGrid& grid);

/// The four suprema deciding boundedness of weighted composition and multiplication operators:
///   c24 = sup (1-|z|^2)|u'(z)| log(e/(1-|phi(z)|^2))
///   c25 = sup (1-|z|^2)/(1-|phi(z)|^2) |u(z) phi'(z)|
///   c26 = sup (1-|z|^2)|u'(z)| log(e/(1-|z|^2))
///   sup_u = sup |u|
struct ConditionSuprema {
    NormEstimate c24;
    NormEstimate c25;
    NormEstimate c26;
    NormEstimate sup_u;
};

/// Suprema on one grid. Throws DomainError "not a selfmap" if |phi(z)| >= 1 at an interior point.
/// `boundary_continuous` adds the boundary layer to sup_u.
ConditionSuprema condition_suprema(const AnalyticFunction& u, const SelfMap& phi, const DiscGrid& grid,
                                   bool boundary_continuous = true);
ConditionSuprema condition_suprema(const RationalSymbol& u, const SelfMap& phi, const DiscGrid& grid);

/// Suprema on `grid.refined()` with deltas against `grid`.
ConditionSuprema condition_suprema_refined(const AnalyticFunction& u, const SelfMap& phi, const DiscGrid& grid,
                                           bool boundary_continuous = true);

}  // namespace wcop
