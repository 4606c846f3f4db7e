#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "wcop/grid.hpp"
#include "wcop/moebius.hpp"
#include "wcop/polynomial.hpp"

namespace wcop {

/// Ratio of complex polynomials with no poles on the closed unit disc.
///
/// Stored with denominator(0) = 1. The boundary supremum of |u| is sampled once
/// at construction (4096 equispaced points) and cached.
class RationalSymbol {
public:
    /// Throws DomainError when the denominator has a root of modulus <= 1 + 1e-9.
    explicit RationalSymbol(Polynomial numerator, Polynomial denominator = Polynomial::constant(1.0));

    static RationalSymbol constant(Complex c) { return RationalSymbol(Polynomial::constant(c)); }
    /// The identity function z.
    static RationalSymbol identity() { return RationalSymbol(Polynomial{0.0, 1.0}); }

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }
    bool is_constant() const { return num_.degree() == 0 && den_.degree() == 0; }

    // Unchecked evaluation; callers guarantee z lies in the closed disc up to rounding.
    Complex value(Complex z) const;
    Complex derivative(Complex z) const;

    double boundary_sup() const { return boundary_sup_; }

    /// 1/u; throws DomainError if u vanishes on the closed disc.
    RationalSymbol reciprocal() const;

    std::string describe() const;

private:
    Polynomial num_;
    Polynomial den_;
    Polynomial num_prime_;
    Polynomial den_prime_;
    double boundary_sup_ = 0.0;
};

/// u(z) (order 0) or u'(z) (order 1) for |z| <= 1; DomainError outside the closed disc.
Complex symbol_eval(const RationalSymbol& u, Complex z, int order = 0);

/// u o phi as a rational function, homogenized with the common factor (cz + d)^max(deg).
RationalSymbol compose_with_moebius(const RationalSymbol& u, const MoebiusTransform& phi);

/// The rational function (az + b)/(cz + d) of a Moebius map.
RationalSymbol moebius_as_symbol(const MoebiusTransform& phi);

/// factor * prod (z - a_j)/(1 - conj(a_j) z).
class BlaschkeProduct {
public:
    /// Throws DomainError if some |a_j| >= 1 or |factor| differs from 1 by more than 1e-12.
    BlaschkeProduct(std::vector<Complex> zeros, Complex factor = 1.0);

    const std::vector<Complex>& zeros() const { return zeros_; }
    Complex factor() const { return factor_; }
    int degree() const { return static_cast<int>(zeros_.size()); }

    Complex value(Complex z) const;
    Complex derivative(Complex z) const;

    /// (1 - |B(z)|^2)/(1 - |z|^2), assembled from exact per-factor gaps so it stays accurate near
    /// the circle; on |z| = 1 it returns the limit |B'(z)|.
    double distortion(Complex z) const;

    RationalSymbol as_symbol() const;

private:
    std::vector<Complex> zeros_;
    Complex factor_;
};

/// sum_j (1 + |a_j|)/(1 - |a_j|) over the zeros of B.
double blaschke_K(const BlaschkeProduct& b);

/// f_a(z) = log(e / (1 - conj(a) z)) = 1 - log(1 - conj(a) z).
class LogWeightFunction {
public:
    explicit LogWeightFunction(Complex a);
    Complex parameter() const { return a_; }
    Complex value(Complex z) const;
    Complex derivative(Complex z) const;
    /// Exact Bloch norm 1 + max_t (1 - t^2)|a| / (1 - |a| t).
    double exact_bloch_norm() const;

private:
    Complex a_;
};

/// A holomorphic function given by value and derivative callbacks.
struct AnalyticFunction {
    std::function<Complex(Complex)> value;
    std::function<Complex(Complex)> derivative;
    std::string label;

    Complex operator()(Complex z) const { return value(z); }
};

AnalyticFunction make_function(const RationalSymbol& u);
AnalyticFunction make_function(const Polynomial& p);
AnalyticFunction make_function(const LogWeightFunction& f);
AnalyticFunction make_function(const BlaschkeProduct& b);
AnalyticFunction monomial_function(int n, Complex coeff = 1.0);
/// atanh(conj(zeta) z) for |zeta| = 1: unit Bloch seminorm, |f(w)| <= rho(w, 0).
AnalyticFunction atanh_function(Complex zeta);
/// f o phi with the chain-rule derivative.
AnalyticFunction compose(const AnalyticFunction& f, const MoebiusTransform& phi);

/// A holomorphic selfmap of the disc: Moebius automorphism, finite Blaschke product,
/// or a rational map with image in the disc (checked by the consumers on their grids).
class SelfMap {
public:
    SelfMap(MoebiusTransform m) : impl_(std::move(m)) {}
    SelfMap(BlaschkeProduct b) : impl_(std::move(b)) {}
    SelfMap(RationalSymbol r) : impl_(std::move(r)) {}

    Complex value(Complex z) const;
    Complex derivative(Complex z) const;
    /// 1 - |phi(z)|^2, without cancellation for Moebius automorphisms and Blaschke products.
    double gap(Complex z) const;

    bool is_moebius() const { return std::holds_alternative<MoebiusTransform>(impl_); }
    bool is_blaschke() const { return std::holds_alternative<BlaschkeProduct>(impl_); }
    bool is_automorphism() const;
    const MoebiusTransform& moebius() const;
    const BlaschkeProduct& blaschke() const;
    /// The map as a rational function (always available).
    RationalSymbol as_symbol() const;

    std::string describe() const;

private:
    std::variant<MoebiusTransform, BlaschkeProduct, RationalSymbol> impl_;
};

/// u_(n)(z) = prod_{j<n} u(phi_j(z)), following the orbit of z pointwise.
Complex cocycle_eval(const RationalSymbol& u, const MoebiusTransform& phi, int n, Complex z);

/// Grid maxima of log |u_(n)| for every n in `schedule` (ascending, >= 1), from one orbit pass per point.
/// Points where u_(n) vanishes contribute -inf.
std::vector<double> cocycle_log_sup(const RationalSymbol& u, const MoebiusTransform& phi,
                                    const std::vector<int>& schedule, const DiscGrid& grid);

/// Grid maximum of |u_(n)|; may overflow to +inf for large n (use cocycle_log_sup then).
double cocycle_sup(const RationalSymbol& u, const MoebiusTransform& phi, int n, const DiscGrid& grid);

/// Grid minimum of |u|; an upper bound for the infimum over the closed disc.
double inf_modulus(const RationalSymbol& u, const DiscGrid& grid);

}  // namespace wcop
