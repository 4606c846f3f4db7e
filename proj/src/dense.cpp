#include "wcop/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wcop {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Scales rows/columns by powers of two until off-diagonal row and column
// norms are comparable. Similarity transform, so eigenvalues are unchanged.
void balance(ComplexMatrix& a) {
    const std::size_t n = a.rows();
    constexpr double radix = 2.0;
    constexpr double radix2 = radix * radix;
    bool converged = false;
    while (!converged) {
        converged = true;
        for (std::size_t i = 0; i < n; ++i) {
            double c = 0.0;
            double r = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= radix2;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix2;
            }
            if ((c + r) / f < 0.95 * s) {
                converged = false;
                const double inv = 1.0 / f;
                for (std::size_t j = 0; j < n; ++j) a(i, j) *= inv;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

struct Givens {
    double c = 1.0;
    Complex s{0.0, 0.0};
};

// Rotation G with G * [x; y] = [r; 0].
Givens make_givens(Complex x, Complex y) {
    const double ax = std::abs(x);
    const double ay = std::abs(y);
    if (ay == 0.0) return {};
    if (ax == 0.0) return {0.0, std::conj(y) / ay};
    const double r = std::hypot(ax, ay);
    const Complex phase = x / ax;
    return {ax / r, phase * std::conj(y) / r};
}

Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
    const Complex half_diff = 0.5 * (a - d);
    const Complex root = std::sqrt(half_diff * half_diff + b * c);
    const Complex mid = 0.5 * (a + d);
    const Complex l1 = mid + root;
    const Complex l2 = mid - root;
    return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

std::string describe(const ComplexMatrix& a) {
    std::ostringstream os;
    os << "matrix " << a.rows() << "x" << a.cols() << ", frobenius norm " << a.frobenius_norm();
    return os.str();
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix shape mismatch");
    ComplexMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex aik = (*this)(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
        }
    return out;
}

std::vector<Complex> ComplexMatrix::operator*(std::span<const Complex> v) const {
    if (cols_ != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
    std::vector<Complex> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Complex s{};
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

void reduce_to_hessenberg(ComplexMatrix& a) {
    const std::size_t n = a.rows();
    if (n < 3) return;
    std::vector<Complex> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double scale = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) scale += std::abs(a(i, k));
        if (scale == 0.0) continue;
        double tail = 0.0;
        for (std::size_t i = k + 2; i < n; ++i) tail += std::abs(a(i, k));
        if (tail == 0.0) continue;

        double norm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k) / scale;
            norm2 += std::norm(v[i]);
        }
        const double alpha = std::sqrt(norm2);
        const Complex x0 = v[k + 1];
        const Complex phase = std::abs(x0) == 0.0 ? Complex{1.0, 0.0} : x0 / std::abs(x0);
        // v = x + phase*|x| e1 avoids cancellation in the leading entry.
        v[k + 1] = x0 + phase * alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) continue;
        const double tau = 2.0 / vnorm2;

        // A <- H A, H = I - tau v v^H
        for (std::size_t j = 0; j < n; ++j) {
            Complex s{};
            for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * a(i, j);
            s *= tau;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= v[i] * s;
        }
        // A <- A H
        for (std::size_t i = 0; i < n; ++i) {
            Complex s{};
            for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
            s *= tau;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

std::vector<Complex> eigenvalues(ComplexMatrix a, const EigenOptions& options) {
    if (a.rows() != a.cols()) throw std::invalid_argument("eigenvalues: matrix must be square");
    const std::size_t n = a.rows();
    std::vector<Complex> eig(n);
    if (n == 0) return eig;
    for (const auto& v : a.data())
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NumericalError("eigenvalues: non-finite entry in " + describe(a));

    if (options.balance) balance(a);
    reduce_to_hessenberg(a);
    const double anorm = std::max(a.frobenius_norm(), std::numeric_limits<double>::min());

    const std::size_t budget = std::max<std::size_t>(1, options.sweeps_per_order * n);
    std::size_t total_sweeps = 0;
    std::size_t stalled = 0;
    std::vector<Givens> rotations(n);

    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
    while (hi >= 0) {
        if (hi == 0) {
            eig[0] = a(0, 0);
            break;
        }
        std::ptrdiff_t lo = hi;
        for (; lo > 0; --lo) {
            double ref = std::abs(a(lo - 1, lo - 1)) + std::abs(a(lo, lo));
            if (ref == 0.0) ref = anorm;
            if (std::abs(a(lo, lo - 1)) <= kEps * ref) {
                a(lo, lo - 1) = 0.0;
                break;
            }
        }
        if (lo == hi) {
            eig[hi] = a(hi, hi);
            --hi;
            stalled = 0;
            continue;
        }
        if (++total_sweeps > budget)
            throw NumericalError("eigenvalues: QR iteration did not converge after " + std::to_string(budget) +
                                 " sweeps on " + describe(a));

        Complex shift;
        ++stalled;
        if (stalled % 10 == 0) {
            const double sub = std::abs(a(hi, hi - 1).real()) + (hi >= 2 ? std::abs(a(hi - 1, hi - 2).real()) : 0.0);
            shift = a(hi, hi) + Complex{0.75 * sub, -0.4375 * sub};
        } else {
            shift = wilkinson_shift(a(hi - 1, hi - 1), a(hi - 1, hi), a(hi, hi - 1), a(hi, hi));
        }

        const auto l = static_cast<std::size_t>(lo);
        const auto h = static_cast<std::size_t>(hi);
        for (std::size_t k = l; k <= h; ++k) a(k, k) -= shift;
        // QR factorization of the active block by Givens rotations from the left.
        for (std::size_t k = l; k < h; ++k) {
            const Givens g = make_givens(a(k, k), a(k + 1, k));
            rotations[k] = g;
            for (std::size_t j = k; j <= h; ++j) {
                const Complex x = a(k, j);
                const Complex y = a(k + 1, j);
                a(k, j) = g.c * x + g.s * y;
                a(k + 1, j) = -std::conj(g.s) * x + g.c * y;
            }
        }
        // R Q: apply the adjoint rotations from the right.
        for (std::size_t k = l; k < h; ++k) {
            const Givens& g = rotations[k];
            const std::size_t last = std::min(k + 1, h);
            for (std::size_t i = l; i <= last; ++i) {
                const Complex x = a(i, k);
                const Complex y = a(i, k + 1);
                a(i, k) = x * g.c + y * std::conj(g.s);
                a(i, k + 1) = -x * g.s + y * g.c;
            }
        }
        for (std::size_t k = l; k <= h; ++k) a(k, k) += shift;
    }
    return eig;
}

LuDecomposition::LuDecomposition(ComplexMatrix a) : lu_(std::move(a)) {
    if (lu_.rows() != lu_.cols()) throw std::invalid_argument("LU: matrix must be square");
    const std::size_t n = lu_.rows();
    perm_.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    const double tiny = std::numeric_limits<double>::min() / kEps;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu_(i, k)) > best) {
                best = std::abs(lu_(i, k));
                piv = i;
            }
        if (best <= tiny) {
            singular_ = true;
            continue;
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
            std::swap(perm_[k], perm_[piv]);
        }
        const Complex inv = 1.0 / lu_(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex m = lu_(i, k) * inv;
            lu_(i, k) = m;
            if (m == Complex{}) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= m * lu_(k, j);
        }
    }
}

std::vector<Complex> LuDecomposition::solve(std::span<const Complex> rhs) const {
    if (singular_) throw NumericalError("LU solve on a singular matrix");
    const std::size_t n = lu_.rows();
    std::vector<Complex> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
        x[i] /= lu_(i, i);
    }
    return x;
}

std::vector<Complex> LuDecomposition::solve_adjoint(std::span<const Complex> rhs) const {
    if (singular_) throw NumericalError("LU solve on a singular matrix");
    // A^H = U^H L^H P
    const std::size_t n = lu_.rows();
    std::vector<Complex> w(rhs.begin(), rhs.end());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) w[i] -= std::conj(lu_(j, i)) * w[j];
        w[i] /= std::conj(lu_(i, i));
    }
    for (std::size_t i = n; i-- > 0;)
        for (std::size_t j = i + 1; j < n; ++j) w[i] -= std::conj(lu_(j, i)) * w[j];
    std::vector<Complex> x(n);
    for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = w[i];
    return x;
}

double smallest_singular_value(const ComplexMatrix& a, int max_iterations, double rel_tol) {
    const std::size_t n = a.rows();
    if (n == 0) return 0.0;
    const LuDecomposition lu(a);
    if (lu.singular()) return 0.0;
    std::vector<Complex> v(n);
    // Deterministic start vector with all components nonzero.
    for (std::size_t i = 0; i < n; ++i) v[i] = Complex{1.0 + 0.1 * static_cast<double>(i % 7), 0.3 * static_cast<double>(i % 3)};
    auto normalize = [](std::vector<Complex>& x) {
        double s = 0.0;
        for (const auto& c : x) s += std::norm(c);
        s = std::sqrt(s);
        for (auto& c : x) c /= s;
        return s;
    };
    normalize(v);
    double growth = 0.0;
    for (int it = 0; it < max_iterations; ++it) {
        auto x = lu.solve(v);
        auto y = lu.solve_adjoint(x);
        const double g = normalize(y);
        if (!std::isfinite(g)) return 0.0;
        v = std::move(y);
        if (it > 0 && std::abs(g - growth) <= rel_tol * g) {
            growth = g;
            break;
        }
        growth = g;
    }
    return 1.0 / std::sqrt(growth);
}

}  // namespace wcop
