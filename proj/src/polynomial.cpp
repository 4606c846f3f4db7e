#include "wcop/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "wcop/dense.hpp"

namespace wcop {

Polynomial::Polynomial(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) {
    if (coeffs_.empty()) coeffs_.push_back(Complex{});
    trim();
}

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(Complex{});
    trim();
}

Polynomial Polynomial::monomial(int degree, Complex coeff) {
    if (degree < 0) throw DomainError("monomial degree must be nonnegative");
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
    c.back() = coeff;
    return Polynomial(std::move(c));
}

void Polynomial::trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Complex Polynomial::operator()(Complex z) const {
    // Horner in real arithmetic; std::complex multiplication carries inf/nan recovery we never need.
    const double x = z.real(), y = z.imag();
    double re = 0.0, im = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        const double t = re * x - im * y + it->real();
        im = re * y + im * x + it->imag();
        re = t;
    }
    return {re, im};
}

std::pair<Complex, Complex> Polynomial::value_and_derivative(Complex z) const {
    Complex p{};
    Complex dp{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
    return {p, dp};
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() == 1) return Polynomial{};
    std::vector<Complex> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return Polynomial(std::move(d));
}

std::vector<Complex> Polynomial::roots() const {
    const int n = degree();
    if (n <= 0) return {};
    if (n == 1) return {-coeffs_[0] / coeffs_[1]};
    const Complex lead = coeffs_.back();
    ComplexMatrix companion(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs_[i] / lead;
    auto r = eigenvalues(std::move(companion));
    for (auto& z : r) {
        for (int it = 0; it < 3; ++it) {
            const auto [p, dp] = value_and_derivative(z);
            if (dp == Complex{}) break;
            const Complex step = p / dp;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            z -= step;
        }
    }
    return r;
}

bool Polynomial::roots_outside_closed_disc(double margin) const {
    if (degree() <= 0) return !is_zero();
    const auto r = roots();
    return std::all_of(r.begin(), r.end(), [&](Complex z) { return std::abs(z) > 1.0 + margin; });
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    std::vector<Complex> c(std::max(coeffs_.size(), rhs.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) c[i] += rhs.coeffs_[i];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const { return *this + rhs * Complex{-1.0, 0.0}; }

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    std::vector<Complex> c(coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * rhs.coeffs_[j];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(Complex s) const {
    std::vector<Complex> c(coeffs_);
    for (auto& v : c) v *= s;
    return Polynomial(std::move(c));
}

double Polynomial::max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

std::vector<Complex> series_multiply(std::span<const Complex> a, std::span<const Complex> b, std::size_t n) {
    std::vector<Complex> out(n);
    const std::size_t na = std::min(a.size(), n);
    for (std::size_t i = 0; i < na; ++i) {
        if (a[i] == Complex{}) continue;
        const std::size_t nb = std::min(b.size(), n - i);
        for (std::size_t j = 0; j < nb; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

std::vector<Complex> series_divide(std::span<const Complex> num, std::span<const Complex> den, std::size_t n) {
    if (den.empty() || den[0] == Complex{}) throw DomainError("series_divide: denominator vanishes at the origin");
    std::vector<Complex> q(n);
    const Complex inv = 1.0 / den[0];
    for (std::size_t k = 0; k < n; ++k) {
        Complex s = k < num.size() ? num[k] : Complex{};
        const std::size_t jmax = std::min(k, den.size() - 1);
        for (std::size_t j = 1; j <= jmax; ++j) s -= den[j] * q[k - j];
        q[k] = s * inv;
    }
    return q;
}

}  // namespace wcop
