#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wcop/operators.hpp"

namespace wcop {

enum class SpectrumShape { Circle, Annulus, RootSetClosure };
std::string_view to_string(SpectrumShape shape);

/// Which result produced a prediction.
enum class Provenance {
    ParabolicCircle,
    HyperbolicAnnulus,
    EqualModuliCircle,
    DirichletHyperbolicAnnulus,
    DirichletRadiusInclusion,
    EllipticRootSet,
    EllipticCircle,
    MultiplicationOperator,
};
std::string_view to_string(Provenance p);

struct SpectrumPrediction {
    SpectrumShape shape = SpectrumShape::Circle;
    double radius = 0.0;  // Circle
    double r_min = 0.0;   // Annulus
    double r_max = 0.0;
    // Annulus: true when the spectrum equals the annulus, false for an inclusion.
    bool exact = true;
    int period = 0;  // RootSetClosure
    std::vector<Complex> points;
    Provenance provenance = Provenance::ParabolicCircle;
    std::vector<std::pair<std::string, bool>> assumptions_checked;
    std::string note;
    // RootSetClosure: Hausdorff distance between the clouds on the grid and on its refinement.
    std::optional<double> refinement_hausdorff;
};

/// Smallest m <= 1024 with |phi'(p)^m - 1| < 1e-10 confirmed by phi_m = id on 16 points; nullopt if none.
std::optional<int> elliptic_period(const MoebiusTransform& phi);

/// Dispatch on the automorphism class of phi. PreconditionError when the operator is not invertible
/// (periodic elliptic and identity maps need boundedness only).
SpectrumPrediction predict_spectrum(const WeightedCompositionOp& op, const DiscGrid& grid);

/// Circle{r} -> Circle{1/r}, Annulus{p, q} -> Annulus{1/q, 1/p}; root sets map pointwise.
SpectrumPrediction reciprocal_shape(const SpectrumPrediction& s);

struct SpectralRadiusEstimate {
    std::vector<int> schedule;
    std::vector<double> sequence;  // grid values of ||u_(n)||^{1/n}
    double extrapolated = 0.0;     // Aitken delta-squared on the last three entries
    double predicted = 0.0;
    double relative_gap = 0.0;     // |last - predicted| / predicted
    std::string note;
};

SpectralRadiusEstimate spectral_radius_estimate(const WeightedCompositionOp& op, const std::vector<int>& schedule,
                                                const DiscGrid& grid);

/// All m-th roots of sampled values of u_(m) over the grid (interior and boundary), with the
/// Hausdorff distance to the cloud of the refined grid. PreconditionError unless phi is periodic elliptic.
SpectrumPrediction elliptic_root_cloud(const WeightedCompositionOp& op, const DiscGrid& grid,
                                       bool report_refinement = true);

/// Hausdorff distance between two finite point sets.
double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Eigenvalues of the truncation; NumericalError names the matrix on non-convergence.
std::vector<Complex> truncation_eigenvalues(const TruncationMatrix& m);

struct ResolventSample {
    Complex lambda;
    std::vector<double> norms;  // ||(lambda - M_N)^{-1}|| for each truncation size
    double growth = 0.0;        // last / first
    std::string label;
};

struct ConjectureProbe {
    double r_min = 0.0;
    double r_max = 0.0;
    std::vector<int> sizes;
    std::vector<ResolventSample> samples;
    std::string disclaimer;
};

struct ProbeOptions {
    int samples = 8;
    std::vector<Complex> extra_lambdas;
    std::vector<int> sizes{16, 32, 64, 128};
};

/// Exploratory resolvent-norm growth of Taylor truncations across sizes for lambda inside the
/// predicted hyperbolic annulus, on its outer rim, and outside it. No pass/fail semantics.
/// PreconditionError unless phi is hyperbolic with |u(a)| != |u(b)|; DomainError for lambda = 0.
ConjectureProbe conjecture_probe(const WeightedCompositionOp& op, const ProbeOptions& options);

}  // namespace wcop
