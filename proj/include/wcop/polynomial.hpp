#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "wcop/core.hpp"

namespace wcop {

/// Complex polynomial with coefficients in ascending degree.
class Polynomial {
public:
    Polynomial() : coeffs_{Complex{}} {}
    Polynomial(std::initializer_list<Complex> coeffs);
    explicit Polynomial(std::vector<Complex> coeffs);

    static Polynomial constant(Complex c) { return Polynomial(std::vector<Complex>{c}); }
    static Polynomial monomial(int degree, Complex coeff = 1.0);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == Complex{}; }
    std::span<const Complex> coefficients() const { return coeffs_; }
    Complex operator[](int k) const { return k <= degree() ? coeffs_[k] : Complex{}; }

    Complex operator()(Complex z) const;
    // Value and first derivative in one Horner pass.
    std::pair<Complex, Complex> value_and_derivative(Complex z) const;

    Polynomial derivative() const;

    /// Roots as eigenvalues of the companion matrix, refined by a few Newton steps.
    std::vector<Complex> roots() const;

    /// True when every root lies strictly outside |z| <= 1 + margin.
    bool roots_outside_closed_disc(double margin) const;

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(Complex s) const;

    double max_abs_coefficient() const;

private:
    void trim();
    std::vector<Complex> coeffs_;
};

/// Product of two truncated power series, keeping the first n coefficients.
std::vector<Complex> series_multiply(std::span<const Complex> a, std::span<const Complex> b, std::size_t n);

/// First n Taylor coefficients of num/den; requires den[0] != 0.
std::vector<Complex> series_divide(std::span<const Complex> num, std::span<const Complex> den, std::size_t n);

}  // namespace wcop
