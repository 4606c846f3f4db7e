#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wcop/core.hpp"

namespace wcop {

struct GridParams {
    int radial_levels = 12;
    // Radii are 1 - 2^{-k beta}, k = 0 .. radial_levels - 1.
    double beta = 0.75;
    // Power-of-two multiplier on every angular count.
    int angular_scale = 1;
    // Adds the circle |z| = 1 as a layer, for functions continuous on the closed disc.
    bool boundary_layer = true;
    int min_boundary_count = 1024;

    bool operator==(const GridParams&) const = default;
};

/// Boundary-refined sampling of the unit disc used for supremum estimates.
///
/// Ring k carries angular_scale * 2^ceil(log2(ceil(2 pi / (1 - r_k)))) equispaced
/// points starting at angle 0 (the origin ring is the single point 0). Every
/// count is a power of two times the scale, so `refined()` produces a superset
/// of the current points and grid maxima never decrease under refinement.
class DiscGrid {
public:
    explicit DiscGrid(GridParams params = {});

    const GridParams& params() const { return params_; }
    const std::vector<double>& radii() const { return radii_; }
    const std::vector<int>& angular_counts() const { return counts_; }
    int boundary_count() const { return boundary_count_; }

    std::span<const Complex> interior() const { return interior_; }
    std::span<const Complex> boundary() const { return boundary_; }
    std::size_t size() const { return interior_.size() + boundary_.size(); }

    /// Twice the radial levels at half the exponent (old rings kept), twice the angular counts.
    DiscGrid refined() const;

    std::string descriptor() const;

private:
    GridParams params_;
    std::vector<double> radii_;
    std::vector<int> counts_;
    int boundary_count_ = 0;
    std::vector<Complex> interior_;
    std::vector<Complex> boundary_;
};

/// Product rule for integrals against normalized area measure dA = r dr dtheta / pi.
/// Gauss-Legendre of order Q in s = r^2 on [0, 1] times the M-point trapezoid rule in angle.
class QuadratureRule {
public:
    explicit QuadratureRule(int radial_order = 32, int angular_count = 128);

    int radial_order() const { return static_cast<int>(s_nodes_.size()); }
    int angular_count() const { return angular_count_; }

    double integrate(const std::function<double(Complex)>& f) const;

    std::string descriptor() const;

private:
    std::vector<double> s_nodes_;
    std::vector<double> s_weights_;
    int angular_count_;
    std::vector<Complex> unit_angles_;
};

/// Gauss-Legendre nodes and weights on [0, 1] (weights sum to 1).
void gauss_legendre_unit(int order, std::vector<double>& nodes, std::vector<double>& weights);

/// Neumaier-compensated accumulator; order of additions fixed by the caller.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace wcop
