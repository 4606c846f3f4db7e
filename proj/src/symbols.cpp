#include "wcop/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace wcop {

namespace {

constexpr double pole_margin = 1e-9;
constexpr int boundary_samples = 4096;

std::string format_poly(const Polynomial& p) {
    std::ostringstream os;
    os << "[";
    const auto c = p.coefficients();
    for (std::size_t k = 0; k < c.size(); ++k) os << (k ? ", " : "") << c[k];
    os << "]";
    return os.str();
}

Polynomial power(const Polynomial& p, int k) {
    Polynomial out = Polynomial::constant(1.0);
    for (int i = 0; i < k; ++i) out = out * p;
    return out;
}

}  // namespace

RationalSymbol::RationalSymbol(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_.is_zero()) throw DomainError("rational symbol with zero denominator");
    if (!den_.roots_outside_closed_disc(pole_margin))
        throw DomainError("rational symbol has a pole in the closed unit disc (denominator " + format_poly(den_) + ")");
    const Complex scale = den_[0];
    num_ = num_ * (1.0 / scale);
    den_ = den_ * (1.0 / scale);
    num_prime_ = num_.derivative();
    den_prime_ = den_.derivative();
    for (int j = 0; j < boundary_samples; ++j) {
        const Complex z = std::polar(1.0, 2.0 * pi * (static_cast<double>(j) / boundary_samples));
        boundary_sup_ = std::max(boundary_sup_, std::abs(value(z)));
    }
}

Complex RationalSymbol::value(Complex z) const {
    if (den_.degree() == 0) return num_(z);
    return num_(z) / den_(z);
}

Complex RationalSymbol::derivative(Complex z) const {
    if (den_.degree() == 0) return num_prime_(z);
    const Complex q = den_(z);
    return (num_prime_(z) * q - num_(z) * den_prime_(z)) / (q * q);
}

RationalSymbol RationalSymbol::reciprocal() const {
    if (num_.is_zero() || !num_.roots_outside_closed_disc(pole_margin))
        throw DomainError("reciprocal undefined: the symbol vanishes on the closed unit disc");
    return RationalSymbol(den_, num_);
}

std::string RationalSymbol::describe() const {
    if (den_.degree() == 0) return "poly" + format_poly(num_);
    return format_poly(num_) + " / " + format_poly(den_);
}

Complex symbol_eval(const RationalSymbol& u, Complex z, int order) {
    if (std::abs(z) > 1.0 + 1e-12) throw DomainError("symbol_eval requires |z| <= 1");
    if (order == 0) return u.value(z);
    if (order == 1) return u.derivative(z);
    throw DomainError("symbol_eval supports order 0 or 1");
}

RationalSymbol compose_with_moebius(const RationalSymbol& u, const MoebiusTransform& phi) {
    const Polynomial top{phi.b(), phi.a()};
    const Polynomial bottom{phi.d(), phi.c()};
    const int m = std::max(u.numerator().degree(), u.denominator().degree());
    auto homogenize = [&](const Polynomial& p) {
        Polynomial out;
        for (int k = 0; k <= p.degree(); ++k)
            if (p[k] != Complex{}) out = out + power(top, k) * power(bottom, m - k) * p[k];
        return out;
    };
    try {
        return RationalSymbol(homogenize(u.numerator()), homogenize(u.denominator()));
    } catch (const DomainError& e) {
        throw NumericalError(std::string("composition with a Moebius map produced a pole on the closed disc: ") +
                             e.what());
    }
}

RationalSymbol moebius_as_symbol(const MoebiusTransform& phi) {
    return RationalSymbol(Polynomial{phi.b(), phi.a()}, Polynomial{phi.d(), phi.c()});
}

BlaschkeProduct::BlaschkeProduct(std::vector<Complex> zeros, Complex factor)
    : zeros_(std::move(zeros)), factor_(factor) {
    for (const auto& a : zeros_)
        if (!(std::abs(a) < 1.0)) throw DomainError("Blaschke zero outside the open unit disc");
    if (std::abs(std::abs(factor_) - 1.0) > 1e-12) throw DomainError("Blaschke factor must be unimodular");
}

Complex BlaschkeProduct::value(Complex z) const {
    Complex v = factor_;
    for (const auto& a : zeros_) v *= (z - a) / (1.0 - std::conj(a) * z);
    return v;
}

Complex BlaschkeProduct::derivative(Complex z) const {
    Complex total{};
    for (std::size_t j = 0; j < zeros_.size(); ++j) {
        const Complex aj = zeros_[j];
        const Complex den = 1.0 - std::conj(aj) * z;
        Complex term = (1.0 - std::norm(aj)) / (den * den);
        for (std::size_t i = 0; i < zeros_.size(); ++i)
            if (i != j) term *= (z - zeros_[i]) / (1.0 - std::conj(zeros_[i]) * z);
        total += term;
    }
    return factor_ * total;
}

double BlaschkeProduct::distortion(Complex z) const {
    // Per factor: 1 - |b_a(z)|^2 = (1 - |z|^2) h_a(z) with h_a = (1 - |a|^2)/|1 - conj(a) z|^2.
    // Products combine through 1 - xy = (1 - x) + x (1 - y).
    const double gap = 1.0 - std::norm(z);
    double ratio = 0.0;  // (1 - |partial product|^2) / (1 - |z|^2)
    double modulus_sq = 1.0;
    for (const auto& a : zeros_) {
        const double h = (1.0 - std::norm(a)) / std::norm(1.0 - std::conj(a) * z);
        const double factor_sq = std::max(0.0, 1.0 - gap * h);
        ratio = ratio + modulus_sq * h;
        modulus_sq *= factor_sq;
    }
    return ratio;
}

RationalSymbol BlaschkeProduct::as_symbol() const {
    Polynomial num = Polynomial::constant(factor_);
    Polynomial den = Polynomial::constant(1.0);
    for (const auto& a : zeros_) {
        num = num * Polynomial{-a, 1.0};
        den = den * Polynomial{1.0, -std::conj(a)};
    }
    return RationalSymbol(num, den);
}

double blaschke_K(const BlaschkeProduct& b) {
    if (b.degree() == 0) throw DomainError("blaschke_K requires at least one zero");
    double k = 0.0;
    for (const auto& a : b.zeros()) k += (1.0 + std::abs(a)) / (1.0 - std::abs(a));
    return k;
}

LogWeightFunction::LogWeightFunction(Complex a) : a_(a) {
    if (!(std::abs(a) < 1.0)) throw DomainError("log weight parameter must satisfy |a| < 1");
}

Complex LogWeightFunction::value(Complex z) const { return 1.0 - std::log(1.0 - std::conj(a_) * z); }

Complex LogWeightFunction::derivative(Complex z) const { return std::conj(a_) / (1.0 - std::conj(a_) * z); }

double LogWeightFunction::exact_bloch_norm() const {
    const double r = std::abs(a_);
    if (r == 0.0) return 1.0;
    // Stationary point of t -> (1 - t^2) r / (1 - r t) on [0, 1).
    const double t = r / (1.0 + std::sqrt(1.0 - r * r));
    return 1.0 + (1.0 - t * t) * r / (1.0 - r * t);
}

AnalyticFunction make_function(const RationalSymbol& u) {
    return {[u](Complex z) { return u.value(z); }, [u](Complex z) { return u.derivative(z); }, u.describe()};
}

AnalyticFunction make_function(const Polynomial& p) {
    const Polynomial dp = p.derivative();
    std::ostringstream os;
    os << "poly" << format_poly(p);
    return {[p](Complex z) { return p(z); }, [dp](Complex z) { return dp(z); }, os.str()};
}

AnalyticFunction make_function(const LogWeightFunction& f) {
    std::ostringstream os;
    os << "log-weight(a=" << f.parameter() << ")";
    return {[f](Complex z) { return f.value(z); }, [f](Complex z) { return f.derivative(z); }, os.str()};
}

AnalyticFunction make_function(const BlaschkeProduct& b) {
    return {[b](Complex z) { return b.value(z); }, [b](Complex z) { return b.derivative(z); },
            "blaschke(degree=" + std::to_string(b.degree()) + ")"};
}

AnalyticFunction monomial_function(int n, Complex coeff) {
    if (n < 0) throw DomainError("monomial degree must be nonnegative");
    return make_function(Polynomial::monomial(n, coeff));
}

AnalyticFunction atanh_function(Complex zeta) {
    const Complex w = std::conj(zeta) / std::abs(zeta);
    std::ostringstream os;
    os << "atanh(direction=" << zeta << ")";
    return {[w](Complex z) { return std::atanh(w * z); }, [w](Complex z) { return w / (1.0 - w * w * z * z); },
            os.str()};
}

AnalyticFunction compose(const AnalyticFunction& f, const MoebiusTransform& phi) {
    return {[f, phi](Complex z) { return f.value(phi(z)); },
            [f, phi](Complex z) { return f.derivative(phi(z)) * phi.derivative(z); }, f.label + " o moebius"};
}

Complex SelfMap::value(Complex z) const {
    if (const auto* m = std::get_if<MoebiusTransform>(&impl_)) return (*m)(z);
    if (const auto* b = std::get_if<BlaschkeProduct>(&impl_)) return b->value(z);
    return std::get<RationalSymbol>(impl_).value(z);
}

Complex SelfMap::derivative(Complex z) const {
    if (const auto* m = std::get_if<MoebiusTransform>(&impl_)) return m->derivative(z);
    if (const auto* b = std::get_if<BlaschkeProduct>(&impl_)) return b->derivative(z);
    return std::get<RationalSymbol>(impl_).derivative(z);
}

double SelfMap::gap(Complex z) const {
    if (const auto* m = std::get_if<MoebiusTransform>(&impl_); m && m->is_disc_automorphism())
        return (1.0 - std::norm(z)) / std::norm(m->c() * z + m->d());
    if (const auto* b = std::get_if<BlaschkeProduct>(&impl_)) return (1.0 - std::norm(z)) * b->distortion(z);
    return 1.0 - std::norm(value(z));
}

bool SelfMap::is_automorphism() const {
    if (const auto* m = std::get_if<MoebiusTransform>(&impl_)) return m->is_disc_automorphism();
    if (const auto* b = std::get_if<BlaschkeProduct>(&impl_)) return b->degree() == 1;
    return false;
}

const MoebiusTransform& SelfMap::moebius() const {
    if (const auto* m = std::get_if<MoebiusTransform>(&impl_)) return *m;
    throw PreconditionError("selfmap is not a Moebius transformation");
}

const BlaschkeProduct& SelfMap::blaschke() const {
    if (const auto* b = std::get_if<BlaschkeProduct>(&impl_)) return *b;
    throw PreconditionError("selfmap is not a Blaschke product");
}

RationalSymbol SelfMap::as_symbol() const {
    if (const auto* m = std::get_if<MoebiusTransform>(&impl_)) return moebius_as_symbol(*m);
    if (const auto* b = std::get_if<BlaschkeProduct>(&impl_)) return b->as_symbol();
    return std::get<RationalSymbol>(impl_);
}

std::string SelfMap::describe() const {
    std::ostringstream os;
    if (const auto* m = std::get_if<MoebiusTransform>(&impl_)) {
        os << "moebius(a=" << m->a() << ", b=" << m->b() << ", c=" << m->c() << ", d=" << m->d() << ")";
    } else if (const auto* b = std::get_if<BlaschkeProduct>(&impl_)) {
        os << "blaschke(degree=" << b->degree() << ")";
    } else {
        os << "rational(" << std::get<RationalSymbol>(impl_).describe() << ")";
    }
    return os.str();
}

Complex cocycle_eval(const RationalSymbol& u, const MoebiusTransform& phi, int n, Complex z) {
    if (n < 0) throw DomainError("cocycle_eval requires n >= 0");
    if (std::abs(z) > 1.0 + 1e-12) throw DomainError("cocycle_eval requires |z| <= 1");
    Complex product = 1.0;
    for (int j = 0; j < n; ++j) {
        product *= u.value(z);
        z = phi(z);
    }
    return product;
}

std::vector<double> cocycle_log_sup(const RationalSymbol& u, const MoebiusTransform& phi,
                                    const std::vector<int>& schedule, const DiscGrid& grid) {
    if (schedule.empty()) throw DomainError("cocycle schedule is empty");
    if (schedule.front() < 1 || !std::is_sorted(schedule.begin(), schedule.end()))
        throw DomainError("cocycle schedule must be ascending with entries >= 1");
    if (!phi.is_disc_automorphism()) throw DomainError("cocycle suprema require a disc automorphism");
    std::vector<double> best(schedule.size(), -std::numeric_limits<double>::infinity());
    const int n_max = schedule.back();
    const double ar = phi.a().real(), ai = phi.a().imag(), br = phi.b().real(), bi = phi.b().imag();
    const double cr = phi.c().real(), ci = phi.c().imag(), dr = phi.d().real(), di = phi.d().imag();
    auto visit = [&](Complex z0) {
        // |u_(j)(z)|^2 = mantissa * 2^exponent; rescaling by exact powers of two keeps u = 1 bit-exact.
        double mantissa = 1.0;
        long exponent = 0;
        double x = z0.real(), y = z0.imag();
        std::size_t k = 0;
        for (int j = 1; j <= n_max; ++j) {
            mantissa *= std::norm(u.value({x, y}));
            if (mantissa > 0x1p500 || (mantissa < 0x1p-500 && mantissa > 0.0)) {
                int e = 0;
                mantissa = std::frexp(mantissa, &e);
                exponent += e;
            }
            // phi(z) in real arithmetic: the library complex division guards overflow we cannot hit here.
            const double nr = ar * x - ai * y + br, ni = ar * y + ai * x + bi;
            const double qr = cr * x - ci * y + dr, qi = cr * y + ci * x + di;
            const double inv = 1.0 / (qr * qr + qi * qi);
            x = (nr * qr + ni * qi) * inv;
            y = (ni * qr - nr * qi) * inv;
            while (k < schedule.size() && schedule[k] == j) {
                best[k] = std::max(best[k], 0.5 * (std::log(mantissa) + exponent * std::numbers::ln2));
                ++k;
            }
        }
    };
    for (const auto& z : grid.interior()) visit(z);
    for (const auto& z : grid.boundary()) visit(z);
    return best;
}

double cocycle_sup(const RationalSymbol& u, const MoebiusTransform& phi, int n, const DiscGrid& grid) {
    if (n < 1) throw DomainError("cocycle_sup requires n >= 1");
    return std::exp(cocycle_log_sup(u, phi, {n}, grid).front());
}

double inf_modulus(const RationalSymbol& u, const DiscGrid& grid) {
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& z : grid.interior()) lowest = std::min(lowest, std::abs(u.value(z)));
    for (const auto& z : grid.boundary()) lowest = std::min(lowest, std::abs(u.value(z)));
    return lowest;
}

}  // namespace wcop
