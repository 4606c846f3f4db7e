#include "wcop/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wcop {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Complex snap_to_circle(Complex z, double tol) {
    const double r = std::abs(z);
    if (r != 0.0 && std::abs(r - 1.0) <= tol) return z / r;
    return z;
}

// Roots of A z^2 + B z + C with the larger-magnitude root formed first.
std::pair<Complex, Complex> stable_quadratic_roots(Complex A, Complex B, Complex C) {
    const Complex sq = std::sqrt(B * B - 4.0 * A * C);
    const Complex q = (std::real(std::conj(B) * sq) >= 0.0) ? -0.5 * (B + sq) : -0.5 * (B - sq);
    if (q == Complex{}) return {Complex{}, Complex{}};
    return {q / A, C / q};
}

}  // namespace

MoebiusTransform MoebiusTransform::from_coefficients(Complex a, Complex b, Complex c, Complex d) {
    if (!finite(a) || !finite(b) || !finite(c) || !finite(d))
        throw NumericalError("Moebius coefficients are not finite");
    const Complex det = a * d - b * c;
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    if (std::abs(det) <= 1e-300 || std::abs(det) <= 1e-14 * scale * scale)
        throw DomainError("singular Moebius coefficient matrix");
    const Complex s = std::sqrt(det);
    return {a / s, b / s, c / s, d / s};
}

MoebiusTransform MoebiusTransform::compose(const MoebiusTransform& inner) const {
    // Both factors have unit determinant, so the product does too. Recomputing a d - b c here
    // would cancel catastrophically once the coefficients of long iterate chains grow.
    const MoebiusTransform out(a_ * inner.a_ + b_ * inner.c_, a_ * inner.b_ + b_ * inner.d_,
                               c_ * inner.a_ + d_ * inner.c_, c_ * inner.b_ + d_ * inner.d_);
    if (!finite(out.a_) || !finite(out.b_) || !finite(out.c_) || !finite(out.d_))
        throw NumericalError("Moebius composition overflowed");
    return out;
}

double MoebiusTransform::coefficient_scale() const {
    return std::max({std::abs(a_), std::abs(b_), std::abs(c_), std::abs(d_)});
}

bool MoebiusTransform::is_disc_automorphism(double tol) const {
    const double scale = coefficient_scale();
    for (double s : {1.0, -1.0}) {
        if (std::abs(d_ - s * std::conj(a_)) <= tol * scale && std::abs(c_ - s * std::conj(b_)) <= tol * scale)
            // Far iterates of hyperbolic maps round |b/a| to 1; accept that within the tolerance.
            return std::abs(b_) < std::abs(a_) * (1.0 + tol);
    }
    return false;
}

double MoebiusTransform::origin_gap() const { return 1.0 / std::norm(d_); }

double MoebiusTransform::distance_from_origin() const {
    const double w = std::abs(b_ / d_);
    return std::log1p(std::min(w, 1.0)) + std::log(std::abs(d_));
}

bool MoebiusTransform::approx_equal(const MoebiusTransform& other, double tol) const {
    const double scale = std::max(coefficient_scale(), other.coefficient_scale());
    auto diff = [&](double s) {
        return std::max({std::abs(a_ - s * other.a_), std::abs(b_ - s * other.b_), std::abs(c_ - s * other.c_),
                         std::abs(d_ - s * other.d_)});
    };
    return std::min(diff(1.0), diff(-1.0)) <= tol * scale;
}

MoebiusTransform build_disc_automorphism(double theta, Complex p) {
    if (!(std::abs(p) < 1.0)) throw DomainError("not a disc automorphism: |p| >= 1");
    const Complex rot = std::polar(1.0, theta);
    return MoebiusTransform::from_coefficients(rot, -rot * p, -std::conj(p), 1.0);
}

MoebiusTransform build_rotation(double theta) { return build_disc_automorphism(theta, 0.0); }

MoebiusTransform build_canonical_hyperbolic(double mu) {
    if (!(mu > 0.0 && mu < 1.0)) throw DomainError("canonical hyperbolic map requires 0 < mu < 1");
    return MoebiusTransform::from_coefficients(1.0 + mu, 1.0 - mu, 1.0 - mu, 1.0 + mu);
}

MoebiusTransform build_parabolic_cayley(double t) {
    if (t == 0.0 || !std::isfinite(t)) throw DomainError("parabolic Cayley translation requires finite t != 0");
    const Complex two_i{0.0, 2.0};
    return MoebiusTransform::from_coefficients(two_i - t, t, -t, two_i + t);
}

std::string_view to_string(AutomorphismKind kind) {
    switch (kind) {
        case AutomorphismKind::Identity: return "identity";
        case AutomorphismKind::Elliptic: return "elliptic";
        case AutomorphismKind::Parabolic: return "parabolic";
        case AutomorphismKind::Hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

AutomorphismClass classify(const MoebiusTransform& phi, const ClassifyOptions& options) {
    if (!phi.is_disc_automorphism()) throw DomainError("not a disc automorphism");
    const Complex a = phi.a(), b = phi.b(), c = phi.c(), d = phi.d();
    const double scale = phi.coefficient_scale();
    AutomorphismClass out;
    std::ostringstream diag;

    if (std::abs(b) <= options.identity_tol * scale && std::abs(c) <= options.identity_tol * scale &&
        std::abs(a - d) <= options.identity_tol * scale) {
        out.kind = AutomorphismKind::Identity;
        return out;
    }

    const Complex trace = a + d;
    const Complex disc = trace * trace - 4.0;
    const double disc_abs = std::abs(disc);
    const double disc_re = disc.real();

    if (disc_abs <= options.parabolic_tol) {
        out.kind = AutomorphismKind::Parabolic;
        const Complex z = snap_to_circle((a - d) / (2.0 * c), options.boundary_snap_tol);
        const FixedPoint fp{z, phi.derivative(z)};
        out.fixed_points.push_back(fp);
        if (std::abs(std::abs(z) - 1.0) > 1e-9 || std::abs(fp.derivative - 1.0) > 1e-9) {
            out.unstable = true;
            diag << "parabolic fixed point " << z << " fails |z|=1 / phi'(z)=1 checks; ";
        }
    } else if (disc_re < 0.0) {
        out.kind = AutomorphismKind::Elliptic;
        Complex p;
        if (std::abs(c) <= options.identity_tol * scale) {
            p = b / (d - a);
        } else {
            const auto [r1, r2] = stable_quadratic_roots(c, d - a, -b);
            p = std::abs(r1) < std::abs(r2) ? r1 : r2;
        }
        out.fixed_points.push_back({p, phi.derivative(p)});
        if (!(std::abs(p) < 1.0 - 1e-9)) {
            out.unstable = true;
            diag << "elliptic fixed point " << p << " is not clearly interior; ";
        }
    } else {
        out.kind = AutomorphismKind::Hyperbolic;
        const auto [r1, r2] = stable_quadratic_roots(c, d - a, -b);
        const Complex z1 = snap_to_circle(r1, options.boundary_snap_tol);
        const Complex z2 = snap_to_circle(r2, options.boundary_snap_tol);
        const Complex d1 = phi.derivative(z1);
        const Complex d2 = phi.derivative(z2);
        const bool first_attracts = std::abs(d1) < std::abs(d2);
        out.attractive = first_attracts ? z1 : z2;
        out.repulsive = first_attracts ? z2 : z1;
        const Complex da = first_attracts ? d1 : d2;
        const Complex db = first_attracts ? d2 : d1;
        out.multiplier = da.real();
        out.fixed_points.push_back({out.attractive, da});
        out.fixed_points.push_back({out.repulsive, db});
        if (std::abs(da * db - 1.0) > 1e-9 || !(out.multiplier > 0.0 && out.multiplier < 1.0) ||
            std::abs(std::abs(z1) - 1.0) > 1e-9 || std::abs(std::abs(z2) - 1.0) > 1e-9) {
            out.unstable = true;
            diag << "hyperbolic fixed-point data fails |z|=1 / phi'(a)phi'(b)=1 checks; ";
        }
    }
    if (disc_abs > options.parabolic_tol && disc_abs < 100.0 * options.parabolic_tol) {
        out.unstable = true;
        diag << "discriminant " << disc_abs << " lies next to the parabolic threshold; ";
    }
    if (out.unstable) out.diagnostic = "classification unstable: " + diag.str();
    return out;
}

MoebiusTransform iterate(const MoebiusTransform& phi, long long n) {
    if (n < 0) throw DomainError("iterate requires n >= 0");
    MoebiusTransform result = MoebiusTransform::identity();
    MoebiusTransform base = phi;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

double hyperbolic_distance(Complex z, Complex w) {
    if (!(std::abs(z) < 1.0) || !(std::abs(w) < 1.0))
        throw DomainError("hyperbolic_distance requires points of the open unit disc");
    const double pseudo = std::abs(z - w) / std::abs(1.0 - std::conj(z) * w);
    return std::atanh(std::min(pseudo, 1.0));
}

std::vector<double> dw_limit_sequence(const MoebiusTransform& phi, int count) {
    if (count < 1) throw DomainError("dw_limit_sequence requires count >= 1");
    const auto cls = classify(phi);
    if (cls.kind != AutomorphismKind::Parabolic && cls.kind != AutomorphismKind::Hyperbolic)
        throw DomainError("Denjoy-Wolff limit requires a boundary Denjoy-Wolff point (parabolic or hyperbolic map)");
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(count));
    MoebiusTransform phi_n = MoebiusTransform::identity();
    for (int n = 1; n <= count; ++n) {
        phi_n = phi * phi_n;
        // 1 - |w| = (1 - |w|^2) / (1 + |w|) with 1 - |w|^2 = 1/|d|^2.
        const double w = std::min(std::abs(phi_n.b() / phi_n.d()), 1.0);
        const double log_gap = -2.0 * std::log(std::abs(phi_n.d())) - std::log1p(w);
        terms.push_back(std::exp(log_gap / n));
    }
    return terms;
}

}  // namespace wcop
