#include "wcop/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "wcop/spectra.hpp"

namespace wcop {

namespace {

// Draws from mt19937_64 with explicit transforms: std distributions are implementation-defined,
// and reports must not depend on the standard library in use.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

    Complex in_disc(double radius) { return std::polar(radius * std::sqrt(uniform()), 2.0 * pi * uniform()); }

    MoebiusTransform automorphism(double max_radius) {
        const double theta = uniform(0.0, 2.0 * pi);
        return build_disc_automorphism(theta, in_disc(max_radius));
    }

    // Degree-2 weight whose zeros lie outside |z| = 2.
    RationalSymbol invertible_weight() {
        const Complex c1 = in_disc(1.0), c2 = in_disc(1.0);
        const double tail = std::abs(c1) * 2.0 + std::abs(c2) * 4.0;
        const Complex c0 = std::polar(tail + 0.2 + uniform(), uniform(0.0, 2.0 * pi));
        return RationalSymbol(Polynomial{c0, c1, c2});
    }

    AnalyticFunction test_function() {
        std::vector<Complex> c(5);
        for (auto& v : c) v = {uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
        return make_function(Polynomial(c));
    }

    BlaschkeProduct blaschke(int max_degree, double max_radius) {
        std::vector<Complex> zeros(static_cast<std::size_t>(integer(1, max_degree)));
        for (auto& a : zeros) a = in_disc(max_radius);
        return BlaschkeProduct(zeros, std::polar(1.0, uniform(0.0, 2.0 * pi)));
    }

private:
    std::mt19937_64 rng_;
};

double tol(const ExperimentConfig& c, const std::string& key) { return c.tolerances.at(key); }

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

const RationalSymbol& two_plus_z() {
    static const RationalSymbol u(Polynomial{2.0, 1.0});
    return u;
}

std::vector<CheckRecord> denjoy_wolff(const ExperimentConfig& c) {
    std::vector<CheckRecord> out;
    for (double mu : {0.3, 0.5, 0.7}) {
        const auto seq = dw_limit_sequence(build_canonical_hyperbolic(mu), 200);
        out.push_back(make_check("hyperbolic mu=" + fmt(mu) + " n=200", "denjoy-wolff-limit", "abs", mu, seq.back(),
                                 tol(c, "denjoy_wolff_hyperbolic")));
    }
    const auto seq = dw_limit_sequence(build_parabolic_cayley(1.0), 400);
    out.push_back(
        make_check("parabolic t=1 n=400", "denjoy-wolff-limit", "abs", 1.0, seq.back(), tol(c, "denjoy_wolff_parabolic")));
    return out;
}

std::vector<CheckRecord> cocycle_radius(const ExperimentConfig& c, const MoebiusTransform& phi, const std::string& label,
                                        const std::string& tag, const std::string& tol_key) {
    std::vector<CheckRecord> out;
    out.push_back(make_check("grid radial levels", tag, "ge", 12, c.grid.radial_levels, 0.0));
    const WeightedCompositionOp op(two_plus_z(), SelfMap(phi), Space::Bloch);
    const auto est = spectral_radius_estimate(op, c.cocycle_schedule, DiscGrid(c.grid));
    out.push_back(make_check("predicted radius " + label, tag, "abs", 3.0, est.predicted, tol(c, "prediction")));
    out.push_back(make_check(label + " u=2+z n=" + std::to_string(c.cocycle_schedule.back()), tag, "rel", 3.0,
                             est.sequence.back(), tol(c, tol_key)));
    return out;
}

std::vector<CheckRecord> radius_hyperbolic(const ExperimentConfig& c) {
    return cocycle_radius(c, build_canonical_hyperbolic(0.5), "hyperbolic mu=0.5", "cocycle-limit-hyperbolic",
                          "radius_hyperbolic");
}

std::vector<CheckRecord> radius_parabolic(const ExperimentConfig& c) {
    const auto phi = build_parabolic_cayley(1.0);
    auto out = cocycle_radius(c, phi, "parabolic t=1", "cocycle-limit-parabolic", "radius_parabolic");
    const WeightedCompositionOp op(two_plus_z(), SelfMap(phi), Space::Bloch);
    const auto p = predict_spectrum(op, DiscGrid(GridParams{.radial_levels = c.certification_levels}));
    out.push_back(make_check("prediction is a circle", "parabolic-circle", "abs", 1.0,
                             p.shape == SpectrumShape::Circle ? 1.0 : 0.0, 0.0));
    out.push_back(make_check("circle radius", "parabolic-circle", "abs", 3.0, p.radius, tol(c, "prediction")));
    return out;
}

std::vector<CheckRecord> root_cloud(const ExperimentConfig& c) {
    const WeightedCompositionOp op(two_plus_z(), SelfMap(build_rotation(pi)), Space::Bloch);
    const auto cloud = elliptic_root_cloud(op, DiscGrid(c.grid), false);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0, near_plus = lo, near_minus = lo;
    std::set<std::pair<double, double>> points;
    for (const auto& p : cloud.points) {
        lo = std::min(lo, std::abs(p));
        hi = std::max(hi, std::abs(p));
        near_plus = std::min(near_plus, std::abs(p - 2.0));
        near_minus = std::min(near_minus, std::abs(p + 2.0));
        points.insert({p.real(), p.imag()});
    }
    int asymmetric = 0;
    for (const auto& p : cloud.points)
        if (!points.contains({-p.real(), -p.imag()})) ++asymmetric;
    const std::string tag = "elliptic-root-set";
    return {
        make_check("period", tag, "abs", 2, cloud.period, 0.0),
        make_check("min |lambda|", tag, "ge", std::sqrt(3.0), lo, tol(c, "root_cloud_modulus")),
        make_check("max |lambda|", tag, "le", std::sqrt(5.0), hi, tol(c, "root_cloud_modulus")),
        make_check("distance to +2", tag, "le", 0.0, near_plus, tol(c, "root_cloud_point")),
        make_check("distance to -2", tag, "le", 0.0, near_minus, tol(c, "root_cloud_point")),
        make_check("points without exact negative", tag, "abs", 0.0, asymmetric, 0.0),
    };
}

std::vector<CheckRecord> binomial(const ExperimentConfig& c) {
    Sampler s(c.seed);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto phi = s.automorphism(0.8);
        const WeightedCompositionOp op(s.invertible_weight(), SelfMap(phi), i % 2 ? Space::Dirichlet : Space::Bloch);
        const auto f = s.test_function();
        const Complex z = s.in_disc(0.95), lambda = s.in_disc(3.0);
        worst = std::max(worst, binomial_identity_residual(op, lambda, 10, f, z));
    }
    return {make_check("max residual over 100 tuples, m=10", "binomial-expansion", "le", 0.0, worst,
                       tol(c, "binomial_residual"))};
}

std::vector<CheckRecord> composition_chain(const ExperimentConfig& c) {
    Sampler s(c.seed + 1);
    const auto family = default_test_family(Space::Bloch);
    double excess = -std::numeric_limits<double>::infinity(), lowest = std::numeric_limits<double>::infinity();
    double worst_ratio = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto phi = s.automorphism(0.95);
        const double step = phi.distance_from_origin();
        for (int n = 0; n <= 100; ++n) {
            const auto phi_n = iterate(phi, n);
            excess = std::max(excess, phi_n.distance_from_origin() - n * step);
            const double lower = composition_lower_bound(phi_n, Space::Bloch, family).value;
            lowest = std::min(lowest, lower);
            worst_ratio = std::max(worst_ratio, lower / composition_norm_bound(phi, n, Space::Bloch));
        }
    }
    const std::string tag = "composition-norm-growth";
    return {
        make_check("max rho(phi_n(0),0) - n rho(phi(0),0)", tag, "le", 0.0, excess, tol(c, "distance_chain")),
        make_check("min lower bound", tag, "ge", 1.0, lowest, tol(c, "norm_bound")),
        make_check("max lower bound / upper bound", tag, "le", 1.0, worst_ratio, tol(c, "norm_bound")),
    };
}

// Radii of a prediction against those of another, as a max relative difference; infinity on shape mismatch.
double shape_discrepancy(const SpectrumPrediction& a, const SpectrumPrediction& b) {
    if (a.shape != b.shape || a.exact != b.exact) return std::numeric_limits<double>::infinity();
    auto rel = [](double x, double y) { return x == y ? 0.0 : std::abs(x - y) / std::max(std::abs(x), std::abs(y)); };
    return std::max({rel(a.radius, b.radius), rel(a.r_min, b.r_min), rel(a.r_max, b.r_max)});
}

std::vector<CheckRecord> inverse_round_trip(const ExperimentConfig& c) {
    Sampler s(c.seed + 2);
    const DiscGrid grid(GridParams{.radial_levels = c.certification_levels});
    const double threshold = tol(c, "invertibility_threshold");
    int not_invertible = 0;
    double worst = 0.0, duality = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto op = WeightedCompositionOp(s.invertible_weight(), SelfMap(s.automorphism(0.7)),
                                              i % 2 ? Space::Dirichlet : Space::Bloch)
                            .certify(grid);
        const auto inv = check_invertible(op, grid, threshold);
        if (!inv.invertible) {
            ++not_invertible;
            continue;
        }
        for (int j = 0; j < 50; ++j) {
            const auto f = s.test_function();
            const Complex z = s.in_disc(0.95);
            const AnalyticFunction g{[&](Complex w) { return wcomp_apply(*inv.inverse, f, w); }, {}, "inverse applied"};
            const Complex fz = f.value(z);
            worst = std::max(worst, std::abs(wcomp_apply(op, g, z) - fz) / (1.0 + std::abs(fz)));
        }
        const auto forward = predict_spectrum(op, grid);
        const auto backward = predict_spectrum(inv.inverse->certify(grid), grid);
        duality = std::max(duality, shape_discrepancy(backward, reciprocal_shape(forward)));
    }
    return {
        make_check("operators not invertible", "inverse-operator", "abs", 0.0, not_invertible, 0.0),
        make_check("max |op(inverse f)(z) - f(z)| / (1 + |f(z)|)", "inverse-operator", "le", 0.0, worst,
                   tol(c, "inverse_round_trip")),
        make_check("max relative radius mismatch, inverse vs reciprocal", "inverse-spectrum-duality", "le", 0.0, duality,
                   tol(c, "spectrum_duality")),
    };
}

std::vector<CheckRecord> blaschke_bound(const ExperimentConfig& c) {
    Sampler s(c.seed + 3);
    const DiscGrid grid(c.grid);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto b = s.blaschke(5, 0.9);
        const double k = blaschke_K(b);
        for (const auto& z : grid.interior()) worst = std::max(worst, b.distortion(z) / k);
    }
    return {make_check("max (1-|B|^2)/((1-|z|^2) K) over 20 products", "blaschke-distortion-bound", "le", 1.0, worst,
                       tol(c, "blaschke_bound"))};
}

std::vector<CheckRecord> dirichlet(const ExperimentConfig& c) {
    const QuadratureRule rule;
    double worst_norm = 0.0;
    for (int n = 1; n <= 20; ++n)
        worst_norm = std::max(worst_norm, std::abs(dirichlet_norm(monomial_function(n), rule).value - std::sqrt(n)));

    Sampler s(c.seed + 4);
    const auto family = default_test_family(Space::Dirichlet);
    std::vector<MoebiusTransform> maps{build_canonical_hyperbolic(0.5)};
    for (int i = 0; i < 20; ++i) maps.push_back(s.automorphism(0.95));
    double worst_ratio = 0.0, lowest = std::numeric_limits<double>::infinity();
    for (const auto& psi : maps)
        for (int j = 0; j <= 50; ++j) {
            const double lower = composition_lower_bound(iterate(psi, j), Space::Dirichlet, family).value;
            lowest = std::min(lowest, lower);
            worst_ratio = std::max(worst_ratio, lower / composition_norm_bound(psi, j, Space::Dirichlet));
        }
    return {
        make_check("max | ||z^n||_D - sqrt(n) |, n <= 20", "dirichlet-monomial-norm", "le", 0.0, worst_norm,
                   tol(c, "dirichlet_monomial")),
        make_check("min lower bound", "dirichlet-composition-bound", "ge", 1.0, lowest, tol(c, "norm_bound")),
        make_check("max lower bound / upper bound, j <= 50", "dirichlet-composition-bound", "le", 1.0, worst_ratio,
                   tol(c, "norm_bound")),
    };
}

std::vector<CheckRecord> unit_weight_radius(const ExperimentConfig& c) {
    Sampler s(c.seed + 5);
    const DiscGrid grid(c.grid);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto phi = s.automorphism(0.95);
        for (Space space : {Space::Bloch, Space::Dirichlet}) {
            const WeightedCompositionOp op(RationalSymbol::constant(1.0), SelfMap(phi), space);
            for (double v : spectral_radius_estimate(op, c.cocycle_schedule, grid).sequence)
                worst = std::max(worst, std::abs(v - 1.0));
        }
    }
    return {make_check("max |entry - 1| over 20 maps, both spaces", "unit-weight-radius", "abs", 0.0, worst,
                       tol(c, "unit_radius"))};
}

std::vector<CheckRecord> log_growth(const ExperimentConfig& c) {
    Sampler s(c.seed + 6);
    const DiscGrid grid(c.grid);
    const GrowthConstant alpha;
    std::vector<AnalyticFunction> family;
    for (double r : {0.0, 0.5, 0.9, 0.99})
        for (int j = 0; j < 8; ++j) family.push_back(make_function(LogWeightFunction(std::polar(r, pi * j / 4))));
    for (int i = 0; i < 20; ++i) family.push_back(s.test_function());
    double worst = 0.0;
    for (const auto& f : family) worst = std::max(worst, log_growth_ratio(f, grid) / (alpha.alpha * bloch_norm(f, grid).value));
    return {make_check("max sup |f| / log(e/(1-|z|^2)) / (alpha ||f||_B), alpha = 1", "log-growth-bound", "le", 1.0, worst,
                       tol(c, "log_growth"))};
}

std::vector<CheckRecord> bloch_conditions(const ExperimentConfig& c) {
    Sampler s(c.seed + 7);
    const DiscGrid grid(GridParams{.radial_levels = c.certification_levels});
    const std::string tag = "bloch-boundedness-conditions";
    double c24 = 0.0, c25 = 0.0;
    for (int i = 0; i < 5; ++i) {
        const auto sup = condition_suprema(RationalSymbol::constant(1.0), SelfMap(s.automorphism(0.9)), grid);
        c24 = std::max(c24, sup.c24.value);
        c25 = std::max(c25, std::abs(sup.c25.value - 1.0));
    }
    const auto half = condition_suprema(two_plus_z(), SelfMap(RationalSymbol(Polynomial{0.0, 0.5})), grid);
    int unbounded = 0;
    for (int i = 0; i < 5; ++i) {
        const auto b = s.blaschke(4, 0.8);
        for (int j = 0; j < 4; ++j) {
            const WeightedCompositionOp op(s.invertible_weight(), SelfMap(b), Space::Bloch);
            if (check_bounded(op, grid).verdict != Verdict::Bounded) ++unbounded;
        }
    }
    return {
        make_check("u=1, automorphisms: max c24", tag, "abs", 0.0, c24, tol(c, "prediction")),
        make_check("u=1, automorphisms: max |c25 - 1|", tag, "abs", 0.0, c25, tol(c, "prediction")),
        make_check("u=2+z, phi=z/2: c24 <= log(e/(3/4))", tag, "le", std::log(std::exp(1.0) / 0.75), half.c24.value, 0.0),
        make_check("Blaschke symbols with multiplier weights not certified bounded", tag, "abs", 0.0, unbounded, 0.0),
    };
}

}  // namespace

CheckRecord make_check(std::string name, std::string tag, std::string relation, double predicted, double observed,
                       double tolerance) {
    bool pass = false;
    if (relation == "abs") pass = std::abs(observed - predicted) <= tolerance;
    else if (relation == "rel") pass = std::abs(observed - predicted) <= tolerance * std::abs(predicted);
    else if (relation == "le") pass = observed <= predicted + tolerance;
    else if (relation == "ge") pass = observed >= predicted - tolerance;
    else throw DomainError("unknown check relation '" + relation + "'");
    return {std::move(name), std::move(tag), std::move(relation), predicted, observed, tolerance, pass};
}

const std::vector<VerifyGroup>& verification_suite() {
    static const std::vector<VerifyGroup> suite{
        {"denjoy-wolff", "Denjoy-Wolff limits of (1 - |phi_n(0)|)^{1/n}", 1, 1.0, denjoy_wolff},
        {"radius-hyperbolic", "Cocycle radius, hyperbolic map, u = 2+z", 2, 5.0, radius_hyperbolic},
        {"radius-parabolic", "Cocycle radius and circle prediction, parabolic map, u = 2+z", 3, 5.0, radius_parabolic},
        {"root-cloud", "Root cloud for phi = -z, u = 2+z", 4, 2.0, root_cloud},
        {"binomial", "Binomial expansion of (lambda - uC_phi)^m", 5, 1.0, binomial},
        {"composition-chain", "Hyperbolic distance chain and composition norm bounds", 6, 5.0, composition_chain},
        {"inverse", "Inverse operator round trip and spectrum duality", 7, 2.0, inverse_round_trip},
        {"blaschke", "Blaschke distortion bound", 8, 2.0, blaschke_bound},
        {"dirichlet", "Dirichlet monomial norms and composition bound", 9, 5.0, dirichlet},
        {"unit-weight", "Unweighted composition: spectral radius 1", 10, 1.0, unit_weight_radius},
        {"log-growth", "Pointwise growth of Bloch functions", 0, 0.0, log_growth},
        {"bloch-conditions", "Bloch boundedness conditions", 0, 0.0, bloch_conditions},
    };
    return suite;
}

}  // namespace wcop
