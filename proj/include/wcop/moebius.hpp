#pragma once

#include <string>
#include <vector>

#include "wcop/core.hpp"

namespace wcop {

/// z -> (a z + b) / (c z + d), stored with unit determinant a d - b c = 1.
///
/// The coefficient matrix is only defined up to sign; every operation here is
/// sign-agnostic. Disc automorphisms normalized this way lie in +-SU(1,1),
/// i.e. d = s conj(a), c = s conj(b) with s = +-1, which several routines
/// exploit for cancellation-free formulas near the boundary.
class MoebiusTransform {
public:
    MoebiusTransform() : a_(1.0), b_(0.0), c_(0.0), d_(1.0) {}

    /// Normalizes to unit determinant. Throws DomainError for a singular matrix.
    static MoebiusTransform from_coefficients(Complex a, Complex b, Complex c, Complex d);
    static MoebiusTransform identity() { return {}; }

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }
    Complex determinant() const { return a_ * d_ - b_ * c_; }

    Complex operator()(Complex z) const { return (a_ * z + b_) / (c_ * z + d_); }
    Complex derivative(Complex z) const {
        const Complex den = c_ * z + d_;
        return determinant() / (den * den);
    }

    /// this o inner
    MoebiusTransform compose(const MoebiusTransform& inner) const;
    MoebiusTransform inverse() const { return from_coefficients(d_, -b_, -c_, a_); }

    /// Structural test for membership in +-SU(1,1) (maps the disc onto itself).
    bool is_disc_automorphism(double tol = 1e-9) const;

    /// 1 - |phi(0)|^2 for a disc automorphism, computed as 1/|d|^2.
    double origin_gap() const;
    /// rho(phi(0), 0) for a disc automorphism without forming 1 - |phi(0)|.
    double distance_from_origin() const;

    /// Same map as `other` (coefficients equal up to sign) within tol relative to the coefficient scale.
    bool approx_equal(const MoebiusTransform& other, double tol) const;

    double coefficient_scale() const;

private:
    MoebiusTransform(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {}
    Complex a_, b_, c_, d_;
};

inline MoebiusTransform operator*(const MoebiusTransform& outer, const MoebiusTransform& inner) {
    return outer.compose(inner);
}

/// e^{i theta} (z - p) / (1 - conj(p) z). Throws DomainError "not a disc automorphism" for |p| >= 1.
MoebiusTransform build_disc_automorphism(double theta, Complex p);
MoebiusTransform build_rotation(double theta);
/// ((1+mu) z + (1-mu)) / ((1-mu) z + (1+mu)): hyperbolic, attracting 1, repelling -1, multiplier mu.
MoebiusTransform build_canonical_hyperbolic(double mu);
/// Translation w -> w + t of the upper half-plane moved to the disc by the Cayley map;
/// parabolic with fixed point 1 for t != 0.
MoebiusTransform build_parabolic_cayley(double t);

enum class AutomorphismKind { Identity, Elliptic, Parabolic, Hyperbolic };
std::string_view to_string(AutomorphismKind kind);

struct FixedPoint {
    Complex location;
    Complex derivative;
};

struct AutomorphismClass {
    AutomorphismKind kind = AutomorphismKind::Identity;
    std::vector<FixedPoint> fixed_points;
    // Hyperbolic only.
    Complex attractive{};
    Complex repulsive{};
    double multiplier = 0.0;
    // Set when the tag's fixed-point invariants could not be confirmed at the
    // configured tolerances, or the discriminant sits next to the parabolic threshold.
    bool unstable = false;
    std::string diagnostic;
};

struct ClassifyOptions {
    // |tr^2 - 4| below this (unit-determinant coefficients) counts as parabolic.
    double parabolic_tol = 1e-10;
    double boundary_snap_tol = 1e-9;
    double identity_tol = 1e-12;
};

AutomorphismClass classify(const MoebiusTransform& phi, const ClassifyOptions& options = {});

/// phi composed with itself n times, by square-and-multiply on the coefficient matrix.
MoebiusTransform iterate(const MoebiusTransform& phi, long long n);

/// Pseudo-hyperbolic based distance rho(z, w) = atanh |(z - w) / (1 - conj(z) w)|.
double hyperbolic_distance(Complex z, Complex w);

/// (1 - |phi_n(0)|)^{1/n} for n = 1..count. Requires a boundary Denjoy-Wolff point.
std::vector<double> dw_limit_sequence(const MoebiusTransform& phi, int count);

}  // namespace wcop
