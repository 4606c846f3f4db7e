#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wcop {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

enum class Space { Bloch, Dirichlet };

std::string_view to_string(Space space);
Space space_from_string(std::string_view name);

// Input outside the mathematical domain of an operation (|p| >= 1, mu outside (0,1), ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A theorem hypothesis does not hold for the given operator (not invertible, wrong class, ...).
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// An iterative kernel failed (QR non-convergence, overflow in an iterate chain).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wcop
