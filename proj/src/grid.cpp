#include "wcop/grid.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace wcop {

namespace {

int pow2_ceil(double x) {
    const auto n = static_cast<unsigned long long>(std::ceil(x));
    return static_cast<int>(std::bit_ceil(std::max<unsigned long long>(n, 1)));
}

void append_ring(std::vector<Complex>& out, double r, int count) {
    for (int j = 0; j < count; ++j) {
        const double theta = 2.0 * pi * (static_cast<double>(j) / static_cast<double>(count));
        out.emplace_back(r * std::cos(theta), r * std::sin(theta));
    }
}

}  // namespace

DiscGrid::DiscGrid(GridParams params) : params_(params) {
    if (params_.radial_levels < 1) throw DomainError("grid needs at least one radial level");
    if (!(params_.beta > 0.0)) throw DomainError("grid refinement exponent beta must be positive");
    if (params_.angular_scale < 1 || !std::has_single_bit(static_cast<unsigned>(params_.angular_scale)))
        throw DomainError("grid angular_scale must be a power of two");
    if (params_.min_boundary_count < 1) throw DomainError("grid min_boundary_count must be positive");

    constexpr double max_points = 1 << 26;
    double total = 0.0;
    for (int k = 0; k < params_.radial_levels; ++k) {
        const double gap = std::exp2(-k * params_.beta);
        if (gap < 1e-9) throw DomainError("grid too fine: 1 - r below 1e-9; reduce radial_levels * beta");
        radii_.push_back(1.0 - gap);
        const double count = k == 0 ? 1.0 : params_.angular_scale * std::exp2(std::ceil(std::log2(std::ceil(2.0 * pi / gap))));
        total += count;
        if (total > max_points) throw DomainError("grid exceeds 2^26 points; reduce radial_levels or angular_scale");
        counts_.push_back(static_cast<int>(count));
    }
    for (std::size_t k = 0; k < radii_.size(); ++k) {
        if (k == 0) {
            interior_.emplace_back(0.0, 0.0);
        } else {
            append_ring(interior_, radii_[k], counts_[k]);
        }
    }
    if (params_.boundary_layer) {
        const double last_gap = 1.0 - radii_.back();
        const double wanted = std::max<double>(params_.min_boundary_count, 4.0 * pi / last_gap);
        boundary_count_ = params_.angular_scale * pow2_ceil(wanted);
        append_ring(boundary_, 1.0, boundary_count_);
    }
}

DiscGrid DiscGrid::refined() const {
    GridParams next = params_;
    next.radial_levels = 2 * params_.radial_levels;
    next.beta = 0.5 * params_.beta;
    next.angular_scale = 2 * params_.angular_scale;
    return DiscGrid(next);
}

std::string DiscGrid::descriptor() const {
    std::ostringstream os;
    os << "disc-grid(levels=" << params_.radial_levels << ", beta=" << params_.beta
       << ", angular_scale=" << params_.angular_scale << ", boundary=" << (params_.boundary_layer ? boundary_count_ : 0)
       << ", max_radius=" << radii_.back() << ", points=" << size() << ")";
    return os.str();
}

void gauss_legendre_unit(int order, std::vector<double>& nodes, std::vector<double>& weights) {
    if (order < 1) throw DomainError("Gauss-Legendre order must be positive");
    nodes.assign(static_cast<std::size_t>(order), 0.0);
    weights.assign(static_cast<std::size_t>(order), 0.0);
    const int n = order;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Map [-1, 1] to [0, 1]; halve the weights.
        nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
        nodes[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (1.0 + x);
        weights[static_cast<std::size_t>(i)] = 0.5 * w;
        weights[static_cast<std::size_t>(n - 1 - i)] = 0.5 * w;
    }
}

QuadratureRule::QuadratureRule(int radial_order, int angular_count) : angular_count_(angular_count) {
    if (angular_count < 1) throw DomainError("quadrature needs at least one angular node");
    gauss_legendre_unit(radial_order, s_nodes_, s_weights_);
    for (int l = 0; l < angular_count; ++l)
        unit_angles_.push_back(std::polar(1.0, 2.0 * pi * (static_cast<double>(l) / angular_count)));
}

double QuadratureRule::integrate(const std::function<double(Complex)>& f) const {
    CompensatedSum total;
    const double angular_weight = 1.0 / angular_count_;
    for (std::size_t i = 0; i < s_nodes_.size(); ++i) {
        const double r = std::sqrt(s_nodes_[i]);
        CompensatedSum ring;
        for (const auto& e : unit_angles_) ring.add(f(r * e));
        total.add(s_weights_[i] * angular_weight * ring.value());
    }
    return total.value();
}

std::string QuadratureRule::descriptor() const {
    std::ostringstream os;
    os << "gauss-legendre-r2(order=" << s_nodes_.size() << ") x trapezoid(" << angular_count_ << ")";
    return os.str();
}

void CompensatedSum::add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
}

}  // namespace wcop
