#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wcop/core.hpp"

namespace wcop {

/// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Complex> data() const { return data_; }

    double frobenius_norm() const;
    double max_abs() const;

    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    std::vector<Complex> operator*(std::span<const Complex> v) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

struct EigenOptions {
    bool balance = true;
    // Total QR sweeps allowed, as a multiple of the matrix order.
    std::size_t sweeps_per_order = 30;
};

/// Eigenvalues of a general complex square matrix.
///
/// Parlett-Reinsch balancing (radix-2 scaling), Householder reduction to upper
/// Hessenberg form, then single-shift complex QR with Wilkinson shifts and
/// exceptional shifts every 10 stalled sweeps. Throws NumericalError when the
/// sweep budget is exhausted.
std::vector<Complex> eigenvalues(ComplexMatrix a, const EigenOptions& options = {});

/// Reduces `a` to upper Hessenberg form in place by unitary similarity.
void reduce_to_hessenberg(ComplexMatrix& a);

/// LU factorization with partial pivoting, P A = L U.
class LuDecomposition {
public:
    explicit LuDecomposition(ComplexMatrix a);

    bool singular() const { return singular_; }
    std::vector<Complex> solve(std::span<const Complex> rhs) const;
    // Solves A^H x = rhs.
    std::vector<Complex> solve_adjoint(std::span<const Complex> rhs) const;

private:
    ComplexMatrix lu_;
    std::vector<std::size_t> perm_;
    bool singular_ = false;
};

/// Smallest singular value via inverse iteration on A^H A. Zero for singular input.
double smallest_singular_value(const ComplexMatrix& a, int max_iterations = 200, double rel_tol = 1e-12);

}  // namespace wcop
