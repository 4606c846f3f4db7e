#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wcop/dense.hpp"
#include "wcop/norms.hpp"

namespace wcop {

enum class Verdict { Bounded, UnboundedEvidence, Inconclusive };
std::string_view to_string(Verdict verdict);

struct Witness {
    std::string name;
    NormEstimate estimate;
    // Witness values on successive refinement levels, coarse to fine.
    std::vector<double> history;
};

struct BoundednessVerdict {
    Verdict verdict = Verdict::Inconclusive;
    std::vector<Witness> witnesses;
    std::string reason;
};

/// Verdict from witness histories: Bounded when every witness moved by less than 1% over the last
/// doubling; Unbounded-evidence when some witness grew by more than 1% over each of the last three
/// doublings (or became non-finite); Inconclusive otherwise.
Verdict judge_witnesses(const std::vector<std::vector<double>>& histories);

/// f -> u (f o phi) on the Bloch or Dirichlet space.
class WeightedCompositionOp {
public:
    /// Throws DomainError "not a selfmap" when phi leaves the closed disc on a check grid.
    WeightedCompositionOp(RationalSymbol u, SelfMap phi, Space space);

    const RationalSymbol& weight() const { return u_; }
    const SelfMap& map() const { return phi_; }
    Space space() const { return space_; }

    /// A copy carrying the boundedness verdict computed on `grid`.
    WeightedCompositionOp certify(const DiscGrid& grid) const;
    const std::optional<BoundednessVerdict>& certificate() const { return certificate_; }

    std::string describe() const;

private:
    RationalSymbol u_;
    SelfMap phi_;
    Space space_;
    std::optional<BoundednessVerdict> certificate_;
};

/// u(z) f(phi(z)) for |z| <= 1.
Complex wcomp_apply(const WeightedCompositionOp& op, const AnalyticFunction& f, Complex z);

/// (u C_phi)^m f (z) = u_(m)(z) f(phi_m(z)), following the orbit of z.
Complex power_apply(const WeightedCompositionOp& op, int m, const AnalyticFunction& f, Complex z);

/// |A - B| / (1 + |A|) with A = ((lambda - u C_phi)^m f)(z) by m-fold recursion along the orbit and
/// B = sum_k C(m,k) lambda^(m-k) (-1)^k u_(k)(z) f(phi_k(z)). DomainError for m > 30.
double binomial_identity_residual(const WeightedCompositionOp& op, Complex lambda, int m, const AnalyticFunction& f,
                                  Complex z);

BoundednessVerdict check_bounded(const WeightedCompositionOp& op, const DiscGrid& grid);

BoundednessVerdict check_multiplier(const RationalSymbol& u, Space space, const DiscGrid& grid);
/// General weights; `boundary_continuous` says whether the boundary layer may be sampled.
BoundednessVerdict check_multiplier(const AnalyticFunction& u, Space space, const DiscGrid& grid,
                                    bool boundary_continuous);

struct InvertibilityResult {
    bool invertible = false;
    std::optional<WeightedCompositionOp> inverse;
    double inf_modulus = 0.0;
    BoundednessVerdict multiplier;
    std::string reason;
};

/// Invertible iff u is a multiplier, inf |u| > threshold, and phi is an automorphism; the inverse is
/// (1/(u o phi^{-1})) C_{phi^{-1}}. PreconditionError if the operator is not certified bounded.
InvertibilityResult check_invertible(const WeightedCompositionOp& op, const DiscGrid& grid, double threshold = 1e-6);

/// Bloch: 1 + rho(phi_n(0), 0). Dirichlet: sqrt(2) (1 + rho(phi(0), 0) n)^(1/2).
double composition_norm_bound(const MoebiusTransform& phi, int n, Space space);
/// Bloch only: 1 + n rho(phi(0), 0), which dominates the orbit form.
double composition_norm_linear_bound(const MoebiusTransform& phi, int n);

/// A test function with its exactly known Moebius-invariant part: the Bloch seminorm, or the
/// Dirichlet integral of |f'|^2.
struct InvariantTestFunction {
    AnalyticFunction f;
    double invariant_part = 0.0;
};

std::vector<InvariantTestFunction> default_test_family(Space space);

struct CompositionLowerBound {
    double value = 0.0;
    std::string best_function;
};

/// max_f ||f o psi|| / ||f|| over the family, for an automorphism psi, from the invariance identities
/// ||f o psi||_B = |f(psi(0))| + s(f) and ||f o psi||_D^2 = |f(psi(0))|^2 + D(f).
/// Members whose evaluation at psi(0) is ill-conditioned (pole of f within 1e-8) are skipped.
CompositionLowerBound composition_lower_bound(const MoebiusTransform& psi, Space space,
                                              const std::vector<InvariantTestFunction>& family);

struct TruncationMatrix {
    int n = 0;
    ComplexMatrix entries;
};

/// Column k holds the first N Taylor coefficients of u phi^k. DomainError unless 1 <= N <= 512.
TruncationMatrix taylor_truncation(const WeightedCompositionOp& op, int n);

}  // namespace wcop
