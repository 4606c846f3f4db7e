#include "wcop/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wcop {

namespace {

NormEstimate grid_estimate(double value, const DiscGrid& grid) {
    return {value, EstimateKind::LowerBoundOfSup, grid.descriptor(), std::nullopt};
}

template <class F>
double interior_max(const DiscGrid& grid, F&& f) {
    double best = 0.0;
    for (const auto& z : grid.interior()) {
        const double v = f(z);
        // NaN propagates as +inf so that evaluation failures are never hidden by max().
        best = std::isnan(v) ? std::numeric_limits<double>::infinity() : std::max(best, v);
    }
    return best;
}

}  // namespace

std::string_view to_string(EstimateKind kind) {
    return kind == EstimateKind::LowerBoundOfSup ? "lower_bound_of_sup" : "quadrature_value";
}

double relative_delta(double coarse, double fine) {
    if (coarse == fine) return 0.0;
    if (!std::isfinite(fine) || !std::isfinite(coarse)) return std::numeric_limits<double>::infinity();
    return (fine - coarse) / std::max(std::abs(fine), std::numeric_limits<double>::min());
}

NormEstimate with_refinement(const std::function<NormEstimate(const DiscGrid&)>& estimator, const DiscGrid& grid) {
    const NormEstimate coarse = estimator(grid);
    NormEstimate fine = estimator(grid.refined());
    fine.refinement_delta = relative_delta(coarse.value, fine.value);
    return fine;
}

NormEstimate bloch_seminorm(const AnalyticFunction& f, const DiscGrid& grid) {
    return grid_estimate(interior_max(grid, [&](Complex z) { return (1.0 - std::norm(z)) * std::abs(f.derivative(z)); }),
                         grid);
}

NormEstimate bloch_norm(const AnalyticFunction& f, const DiscGrid& grid) {
    NormEstimate e = bloch_seminorm(f, grid);
    e.value += std::abs(f.value(0.0));
    return e;
}

NormEstimate dirichlet_norm(const AnalyticFunction& f, const QuadratureRule& rule) {
    const double area = rule.integrate([&](Complex z) { return std::norm(f.derivative(z)); });
    return {std::sqrt(std::norm(f.value(0.0)) + area), EstimateKind::QuadratureValue, rule.descriptor(), std::nullopt};
}

NormEstimate weighted_sup_norm(const AnalyticFunction& f, double s, const DiscGrid& grid) {
    if (!(s >= 0.0)) throw DomainError("weighted_sup_norm requires s >= 0");
    double best = interior_max(grid, [&](Complex z) { return std::pow(1.0 - std::norm(z), s) * std::abs(f.value(z)); });
    if (s == 0.0)
        for (const auto& z : grid.boundary()) best = std::max(best, std::abs(f.value(z)));
    return grid_estimate(best, grid);
}

double log_weight(double gap) { return 1.0 - std::log(gap); }

double log_growth_ratio(const AnalyticFunction& f, const DiscGrid& grid) {
    return interior_max(grid, [&](Complex z) { return std::abs(f.value(z)) / log_weight(1.0 - std::norm(z)); });
}

double log_weight_embedding_constant(double s, const DiscGrid& grid) {
    return interior_max(grid, [&](Complex z) {
        const double gap = 1.0 - std::norm(z);
        return std::pow(gap, s) * log_weight(gap);
    });
}

GrowthConstant calibrate_growth_constant(GrowthConstant current, const std::vector<AnalyticFunction>& family,
                                         const DiscGrid& grid) {
    for (const auto& f : family) {
        const double norm = bloch_norm(f, grid).value;
        if (norm == 0.0) continue;
        const double ratio = log_growth_ratio(f, grid) / norm;
        current.worst_ratio = std::max(current.worst_ratio, ratio);
        if (ratio > current.alpha) {
            current.alpha = ratio * (1.0 + 1e-9);
            current.raised = true;
        }
    }
    return current;
}

ConditionSuprema condition_suprema(const AnalyticFunction& u, const SelfMap& phi, const DiscGrid& grid,
                                   bool boundary_continuous) {
    double c24 = 0.0, c25 = 0.0, c26 = 0.0, sup_u = 0.0;
    auto fold = [](double& acc, double v) { acc = std::isnan(v) ? std::numeric_limits<double>::infinity() : std::max(acc, v); };
    for (const auto& z : grid.interior()) {
        const double gap_z = 1.0 - std::norm(z);
        const double gap_phi = phi.gap(z);
        if (!(gap_phi > 0.0)) throw DomainError("not a selfmap: |phi(z)| >= 1 at an interior grid point");
        const Complex uz = u.value(z);
        const double du = std::abs(u.derivative(z));
        fold(c24, gap_z * du * log_weight(gap_phi));
        fold(c25, gap_z / gap_phi * std::abs(uz * phi.derivative(z)));
        fold(c26, gap_z * du * log_weight(gap_z));
        fold(sup_u, std::abs(uz));
    }
    if (boundary_continuous)
        for (const auto& z : grid.boundary()) fold(sup_u, std::abs(u.value(z)));
    return {grid_estimate(c24, grid), grid_estimate(c25, grid), grid_estimate(c26, grid), grid_estimate(sup_u, grid)};
}

ConditionSuprema condition_suprema(const RationalSymbol& u, const SelfMap& phi, const DiscGrid& grid) {
    return condition_suprema(make_function(u), phi, grid, true);
}

ConditionSuprema condition_suprema_refined(const AnalyticFunction& u, const SelfMap& phi, const DiscGrid& grid,
                                           bool boundary_continuous) {
    const auto coarse = condition_suprema(u, phi, grid, boundary_continuous);
    auto fine = condition_suprema(u, phi, grid.refined(), boundary_continuous);
    fine.c24.refinement_delta = relative_delta(coarse.c24.value, fine.c24.value);
    fine.c25.refinement_delta = relative_delta(coarse.c25.value, fine.c25.value);
    fine.c26.refinement_delta = relative_delta(coarse.c26.value, fine.c26.value);
    fine.sup_u.refinement_delta = relative_delta(coarse.sup_u.value, fine.sup_u.value);
    return fine;
}

}  // namespace wcop
