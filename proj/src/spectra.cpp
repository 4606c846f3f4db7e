#include "wcop/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace wcop {

namespace {

constexpr int max_period = 1024;

double modulus_at(const RationalSymbol& u, Complex z) { return std::abs(u.value(z)); }

// m-th roots of unity; the quarter-turn ones are written exactly so that clouds are closed
// under multiplication by -1 and +-i without rounding.
std::vector<Complex> roots_of_unity(int m) {
    std::vector<Complex> w(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        if (4 * k % m == 0) {
            static const Complex quarter[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
            w[k] = quarter[(4 * k / m) % 4];
        } else {
            w[k] = std::polar(1.0, 2.0 * pi * k / m);
        }
    }
    return w;
}

std::vector<Complex> root_cloud(const RationalSymbol& u, const MoebiusTransform& phi, int m, const DiscGrid& grid) {
    const auto omega = roots_of_unity(m);
    std::vector<Complex> cloud;
    cloud.reserve(grid.size() * static_cast<std::size_t>(m));
    auto visit = [&](Complex z) {
        const Complex v = cocycle_eval(u, phi, m, z);
        const Complex base = v == Complex{} ? Complex{} : std::polar(std::pow(std::abs(v), 1.0 / m), std::arg(v) / m);
        for (const auto& w : omega) cloud.push_back(base * w);
    };
    for (const auto& z : grid.interior()) visit(z);
    for (const auto& z : grid.boundary()) visit(z);
    return cloud;
}

void require_invertible(const WeightedCompositionOp& op, const DiscGrid& grid, SpectrumPrediction& out) {
    const auto inv = check_invertible(op, grid);
    out.assumptions_checked.push_back({"invertible", inv.invertible});
    if (!inv.invertible) throw PreconditionError("operator is not invertible: " + inv.reason);
}

}  // namespace

std::string_view to_string(SpectrumShape shape) {
    switch (shape) {
        case SpectrumShape::Circle: return "circle";
        case SpectrumShape::Annulus: return "annulus";
        case SpectrumShape::RootSetClosure: return "root-set-closure";
    }
    return "unknown";
}

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::ParabolicCircle: return "parabolic-circle";
        case Provenance::HyperbolicAnnulus: return "hyperbolic-annulus";
        case Provenance::EqualModuliCircle: return "equal-moduli-circle";
        case Provenance::DirichletHyperbolicAnnulus: return "dirichlet-hyperbolic-annulus";
        case Provenance::DirichletRadiusInclusion: return "dirichlet-radius-inclusion";
        case Provenance::EllipticRootSet: return "elliptic-root-set";
        case Provenance::EllipticCircle: return "elliptic-circle";
        case Provenance::MultiplicationOperator: return "multiplication-operator";
    }
    return "unknown";
}

std::optional<int> elliptic_period(const MoebiusTransform& phi) {
    const auto cls = classify(phi);
    if (cls.kind == AutomorphismKind::Identity) return 1;
    if (cls.kind != AutomorphismKind::Elliptic) return std::nullopt;
    const Complex lambda = cls.fixed_points[0].derivative;
    Complex power = 1.0;
    for (int m = 1; m <= max_period; ++m) {
        power *= lambda;
        if (std::abs(power - 1.0) >= 1e-10) continue;
        const auto phi_m = iterate(phi, m);
        bool identity = true;
        for (int j = 0; j < 16 && identity; ++j) {
            const Complex z = std::polar(0.9 * (j + 1) / 16.0, 2.4 * j);
            identity = std::abs(phi_m(z) - z) < 1e-9;
        }
        if (identity) return m;
    }
    return std::nullopt;
}

SpectrumPrediction predict_spectrum(const WeightedCompositionOp& op, const DiscGrid& grid) {
    if (!op.map().is_moebius() || !op.map().moebius().is_disc_automorphism())
        throw PreconditionError("spectral predictions require a disc automorphism");
    const MoebiusTransform& phi = op.map().moebius();
    const RationalSymbol& u = op.weight();
    const auto cls = classify(phi);
    SpectrumPrediction out;
    out.assumptions_checked.push_back({"weight pole-free on the closed disc", true});
    out.assumptions_checked.push_back({"classification stable", !cls.unstable});
    if (cls.unstable) out.note = cls.diagnostic;

    switch (cls.kind) {
        case AutomorphismKind::Identity: {
            out.shape = SpectrumShape::RootSetClosure;
            out.period = 1;
            out.provenance = Provenance::MultiplicationOperator;
            auto cloud = elliptic_root_cloud(op, grid);
            out.points = std::move(cloud.points);
            out.refinement_hausdorff = cloud.refinement_hausdorff;
            out.assumptions_checked.push_back({"multiplier", check_multiplier(u, op.space(), grid).verdict == Verdict::Bounded});
            return out;
        }
        case AutomorphismKind::Parabolic: {
            require_invertible(op, grid, out);
            const double r = modulus_at(u, cls.fixed_points[0].location);
            if (op.space() == Space::Bloch) {
                out.shape = SpectrumShape::Circle;
                out.radius = r;
                out.provenance = Provenance::ParabolicCircle;
            } else {
                out.shape = SpectrumShape::Annulus;
                out.r_min = out.r_max = r;
                out.exact = false;
                out.provenance = Provenance::DirichletRadiusInclusion;
            }
            return out;
        }
        case AutomorphismKind::Hyperbolic: {
            require_invertible(op, grid, out);
            const double ua = modulus_at(u, cls.attractive);
            const double ub = modulus_at(u, cls.repulsive);
            const double lo = std::min(ua, ub), hi = std::max(ua, ub);
            if (op.space() == Space::Bloch && std::abs(ua - ub) <= 1e-12 * hi) {
                out.shape = SpectrumShape::Circle;
                out.radius = hi;
                out.provenance = Provenance::EqualModuliCircle;
            } else {
                out.shape = SpectrumShape::Annulus;
                out.r_min = lo;
                out.r_max = hi;
                out.exact = false;
                out.provenance =
                    op.space() == Space::Bloch ? Provenance::HyperbolicAnnulus : Provenance::DirichletHyperbolicAnnulus;
            }
            return out;
        }
        case AutomorphismKind::Elliptic: {
            if (const auto m = elliptic_period(phi)) {
                const auto bounded = check_bounded(op, grid);
                out.assumptions_checked.push_back({"bounded", bounded.verdict == Verdict::Bounded});
                if (bounded.verdict != Verdict::Bounded)
                    throw PreconditionError("periodic elliptic prediction requires a bounded operator");
                auto cloud = elliptic_root_cloud(op, grid);
                cloud.assumptions_checked = out.assumptions_checked;
                return cloud;
            }
            require_invertible(op, grid, out);
            const double r = modulus_at(u, cls.fixed_points[0].location);
            if (op.space() == Space::Bloch) {
                out.shape = SpectrumShape::Circle;
                out.radius = r;
                out.provenance = Provenance::EllipticCircle;
            } else {
                out.shape = SpectrumShape::Annulus;
                out.r_min = out.r_max = r;
                out.exact = false;
                out.provenance = Provenance::DirichletRadiusInclusion;
            }
            out.note += "no period <= 1024 detected; treated as aperiodic";
            return out;
        }
    }
    throw PreconditionError("unhandled automorphism class");
}

SpectrumPrediction reciprocal_shape(const SpectrumPrediction& s) {
    SpectrumPrediction out = s;
    switch (s.shape) {
        case SpectrumShape::Circle: out.radius = 1.0 / s.radius; break;
        case SpectrumShape::Annulus:
            out.r_min = 1.0 / s.r_max;
            out.r_max = 1.0 / s.r_min;
            break;
        case SpectrumShape::RootSetClosure:
            for (auto& p : out.points) p = 1.0 / p;
            break;
    }
    return out;
}

SpectralRadiusEstimate spectral_radius_estimate(const WeightedCompositionOp& op, const std::vector<int>& schedule,
                                                const DiscGrid& grid) {
    if (!op.map().is_moebius() || !op.map().moebius().is_disc_automorphism())
        throw PreconditionError("spectral radius estimates require a disc automorphism");
    const MoebiusTransform& phi = op.map().moebius();
    const RationalSymbol& u = op.weight();
    SpectralRadiusEstimate est;
    est.schedule = schedule;
    const auto logs = cocycle_log_sup(u, phi, schedule, grid);
    for (std::size_t k = 0; k < schedule.size(); ++k) est.sequence.push_back(std::exp(logs[k] / schedule[k]));

    const auto cls = classify(phi);
    switch (cls.kind) {
        case AutomorphismKind::Identity:
            est.predicted = u.boundary_sup();
            est.note = "identity map: spectral radius of the multiplication operator";
            break;
        case AutomorphismKind::Parabolic:
            est.predicted = modulus_at(u, cls.fixed_points[0].location);
            est.note = "parabolic: |u| at the Denjoy-Wolff point";
            break;
        case AutomorphismKind::Hyperbolic:
            est.predicted = std::max(modulus_at(u, cls.attractive), modulus_at(u, cls.repulsive));
            est.note = "hyperbolic: max of |u| at the two boundary fixed points";
            break;
        case AutomorphismKind::Elliptic:
            if (elliptic_period(phi)) {
                const auto cloud = elliptic_root_cloud(op, grid, false);
                double r = 0.0;
                for (const auto& p : cloud.points) r = std::max(r, std::abs(p));
                est.predicted = r;
                est.note = "periodic elliptic: radius of the root cloud";
            } else {
                est.predicted = modulus_at(u, cls.fixed_points[0].location);
                est.note = "aperiodic elliptic: |u| at the interior fixed point";
            }
            break;
    }
    const std::size_t n = est.sequence.size();
    est.extrapolated = est.sequence.back();
    if (n >= 3) {
        const double x0 = est.sequence[n - 3], x1 = est.sequence[n - 2], x2 = est.sequence[n - 1];
        const double denom = (x2 - x1) - (x1 - x0);
        if (std::abs(denom) > 1e-14 * std::abs(x2)) est.extrapolated = x2 - (x2 - x1) * (x2 - x1) / denom;
    }
    est.relative_gap = est.predicted > 0.0 ? std::abs(est.sequence.back() - est.predicted) / est.predicted
                                           : std::abs(est.sequence.back());
    return est;
}

SpectrumPrediction elliptic_root_cloud(const WeightedCompositionOp& op, const DiscGrid& grid, bool report_refinement) {
    if (!op.map().is_moebius() || !op.map().moebius().is_disc_automorphism())
        throw PreconditionError("root clouds require a disc automorphism");
    const MoebiusTransform& phi = op.map().moebius();
    const auto m = elliptic_period(phi);
    if (!m) throw PreconditionError("map is not periodic elliptic; use predict_spectrum");
    SpectrumPrediction out;
    out.shape = SpectrumShape::RootSetClosure;
    out.period = *m;
    out.provenance = *m == 1 ? Provenance::MultiplicationOperator : Provenance::EllipticRootSet;
    out.points = root_cloud(op.weight(), phi, *m, grid);
    if (report_refinement) out.refinement_hausdorff = hausdorff_distance(out.points, root_cloud(op.weight(), phi, *m, grid.refined()));
    return out;
}

double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.empty() || b.empty()) throw DomainError("Hausdorff distance of an empty set");
    // Directed distance through a uniform bucket grid over the target set.
    auto directed = [](const std::vector<Complex>& from, const std::vector<Complex>& to) {
        double xmin = to[0].real(), xmax = xmin, ymin = to[0].imag(), ymax = ymin;
        for (const auto& p : to) {
            xmin = std::min(xmin, p.real());
            xmax = std::max(xmax, p.real());
            ymin = std::min(ymin, p.imag());
            ymax = std::max(ymax, p.imag());
        }
        const double extent = std::max({xmax - xmin, ymax - ymin, 1e-300});
        const int cells = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(to.size()))));
        const double h = extent / cells;
        auto key = [&](long long i, long long j) { return i * 1000003LL + j; };
        auto cell_of = [&](double v, double lo) { return static_cast<long long>(std::floor((v - lo) / h)); };
        std::unordered_map<long long, std::vector<Complex>> buckets;
        for (const auto& p : to) buckets[key(cell_of(p.real(), xmin), cell_of(p.imag(), ymin))].push_back(p);
        double worst = 0.0;
        for (const auto& p : from) {
            const long long ci = cell_of(p.real(), xmin), cj = cell_of(p.imag(), ymin);
            double best = std::numeric_limits<double>::infinity();
            for (long long ring = 0;; ++ring) {
                for (long long i = ci - ring; i <= ci + ring; ++i)
                    for (long long j = cj - ring; j <= cj + ring; ++j) {
                        if (std::max(std::llabs(i - ci), std::llabs(j - cj)) != ring) continue;
                        const auto it = buckets.find(key(i, j));
                        if (it == buckets.end()) continue;
                        for (const auto& q : it->second) best = std::min(best, std::abs(p - q));
                    }
                // Everything beyond this ring is at least ring * h away.
                if (best <= ring * h || ring > 2 * cells + 2) break;
            }
            if (!std::isfinite(best))
                for (const auto& q : to) best = std::min(best, std::abs(p - q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

std::vector<Complex> truncation_eigenvalues(const TruncationMatrix& m) {
    if (m.n > 512) throw DomainError("truncation_eigenvalues requires N <= 512");
    try {
        return eigenvalues(m.entries);
    } catch (const NumericalError& e) {
        std::ostringstream os;
        os << e.what() << " (truncation matrix N=" << m.n << ", frobenius norm " << m.entries.frobenius_norm() << ")";
        throw NumericalError(os.str());
    }
}

ConjectureProbe conjecture_probe(const WeightedCompositionOp& op, const ProbeOptions& options) {
    if (!op.map().is_moebius() || !op.map().moebius().is_disc_automorphism())
        throw PreconditionError("conjecture probe requires a disc automorphism");
    const auto cls = classify(op.map().moebius());
    if (cls.kind != AutomorphismKind::Hyperbolic) throw PreconditionError("conjecture probe requires a hyperbolic map");
    const double ua = modulus_at(op.weight(), cls.attractive);
    const double ub = modulus_at(op.weight(), cls.repulsive);
    if (std::abs(ua - ub) <= 1e-12 * std::max(ua, ub))
        throw PreconditionError("conjecture probe requires |u(a)| != |u(b)|");
    for (const auto& l : options.extra_lambdas)
        if (l == Complex{}) throw DomainError("lambda = 0 rejected: the operator is invertible, 0 is in the resolvent set");
    if (options.sizes.empty()) throw DomainError("conjecture probe needs at least one truncation size");

    ConjectureProbe probe;
    probe.r_min = std::min(ua, ub);
    probe.r_max = std::max(ua, ub);
    probe.sizes = options.sizes;
    probe.disclaimer =
        "exploratory: resolvent norms of finite Taylor truncations; no statement about the operator spectrum is implied";

    std::vector<std::pair<Complex, std::string>> lambdas;
    constexpr double golden_angle = 2.399963229728653;
    for (int i = 0; i < options.samples; ++i) {
        const double r = probe.r_min + (probe.r_max - probe.r_min) * (i + 0.5) / options.samples;
        lambdas.push_back({std::polar(r, golden_angle * i), "inside annulus"});
    }
    lambdas.push_back({probe.r_max, "outer rim"});
    lambdas.push_back({probe.r_max + 0.5, "outside annulus"});
    for (const auto& l : options.extra_lambdas) lambdas.push_back({l, "requested"});

    std::vector<TruncationMatrix> truncations;
    for (int n : options.sizes) truncations.push_back(taylor_truncation(op, n));
    for (const auto& [lambda, label] : lambdas) {
        ResolventSample s{lambda, {}, 0.0, label};
        for (const auto& t : truncations) {
            ComplexMatrix shifted(t.entries.rows(), t.entries.cols());
            for (std::size_t i = 0; i < shifted.rows(); ++i)
                for (std::size_t j = 0; j < shifted.cols(); ++j) shifted(i, j) = -t.entries(i, j);
            for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) += lambda;
            const double smin = smallest_singular_value(shifted);
            s.norms.push_back(smin > 0.0 ? 1.0 / smin : std::numeric_limits<double>::infinity());
        }
        s.growth = s.norms.back() / s.norms.front();
        probe.samples.push_back(std::move(s));
    }
    return probe;
}

}  // namespace wcop
