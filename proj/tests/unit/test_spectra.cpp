#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wcop/spectra.hpp"

using namespace wcop;

namespace {

const RationalSymbol two_plus_z(Polynomial{2.0, 1.0});
const MoebiusTransform psi_half = build_canonical_hyperbolic(0.5);
const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
const DiscGrid coarse_grid{GridParams{.radial_levels = 8}};

WeightedCompositionOp make_op(const RationalSymbol& u, const MoebiusTransform& phi, Space space = Space::Bloch) {
    return WeightedCompositionOp(u, SelfMap(phi), space);
}

RationalSymbol random_invertible_weight(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<Complex> c(3);
    double tail = 0.0;
    for (std::size_t k = 1; k < c.size(); ++k) {
        c[k] = {unif(rng), unif(rng)};
        tail += std::abs(c[k]);
    }
    // Zeros stay outside |z| = 2, so reciprocals of composed weights keep their poles off the circle.
    c[0] = std::polar(2.0 * tail + 0.2 + std::abs(unif(rng)), 3.0 * unif(rng));
    return RationalSymbol(Polynomial(c));
}

double brute_hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    auto directed = [](const std::vector<Complex>& x, const std::vector<Complex>& y) {
        double worst = 0.0;
        for (const auto& p : x) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : y) best = std::min(best, std::abs(p - q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

void check_same_shape(const SpectrumPrediction& a, const SpectrumPrediction& b) {
    REQUIRE(a.shape == b.shape);
    CHECK(a.exact == b.exact);
    CHECK(a.provenance == b.provenance);
    CHECK(a.radius == doctest::Approx(b.radius).epsilon(1e-10));
    CHECK(a.r_min == doctest::Approx(b.r_min).epsilon(1e-10));
    CHECK(a.r_max == doctest::Approx(b.r_max).epsilon(1e-10));
}

}  // namespace

TEST_CASE("prediction examples") {
    const DiscGrid grid;
    const auto parabolic = predict_spectrum(make_op(two_plus_z, build_parabolic_cayley(1.0)), grid);
    CHECK(parabolic.shape == SpectrumShape::Circle);
    CHECK(parabolic.provenance == Provenance::ParabolicCircle);
    CHECK(parabolic.radius == doctest::Approx(3.0).epsilon(1e-9));

    const auto hyperbolic = predict_spectrum(make_op(two_plus_z, psi_half), grid);
    CHECK(hyperbolic.shape == SpectrumShape::Annulus);
    CHECK(hyperbolic.provenance == Provenance::HyperbolicAnnulus);
    CHECK_FALSE(hyperbolic.exact);
    CHECK(hyperbolic.r_min == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hyperbolic.r_max == doctest::Approx(3.0).epsilon(1e-12));

    const auto rotation = predict_spectrum(make_op(two_plus_z, build_rotation(2.0 * pi * golden)), grid);
    CHECK(rotation.shape == SpectrumShape::Circle);
    CHECK(rotation.provenance == Provenance::EllipticCircle);
    CHECK(rotation.radius == doctest::Approx(2.0).epsilon(1e-12));

    const auto equal = predict_spectrum(make_op(RationalSymbol::constant(1.0), psi_half), grid);
    CHECK(equal.shape == SpectrumShape::Circle);
    CHECK(equal.provenance == Provenance::EqualModuliCircle);
    CHECK(equal.radius == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("Dirichlet predictions are inclusions") {
    const DiscGrid grid;
    const auto hyperbolic = predict_spectrum(make_op(two_plus_z, psi_half, Space::Dirichlet), grid);
    CHECK(hyperbolic.shape == SpectrumShape::Annulus);
    CHECK(hyperbolic.provenance == Provenance::DirichletHyperbolicAnnulus);
    CHECK_FALSE(hyperbolic.exact);
    CHECK(hyperbolic.r_max == doctest::Approx(3.0).epsilon(1e-12));
    for (const auto& phi : {build_parabolic_cayley(0.7), build_rotation(2.0 * pi * golden)}) {
        const auto p = predict_spectrum(make_op(two_plus_z, phi, Space::Dirichlet), grid);
        CHECK(p.shape == SpectrumShape::Annulus);
        CHECK(p.provenance == Provenance::DirichletRadiusInclusion);
        CHECK_FALSE(p.exact);
        CHECK(p.r_min == p.r_max);
    }
}

TEST_CASE("predictions need invertibility") {
    const DiscGrid grid;
    CHECK_THROWS_AS(predict_spectrum(make_op(RationalSymbol::identity(), psi_half), grid), PreconditionError);
    CHECK_THROWS_AS(predict_spectrum(WeightedCompositionOp(two_plus_z, SelfMap(RationalSymbol(Polynomial{0.0, 0.5})),
                                                           Space::Bloch),
                                     grid),
                    PreconditionError);
    // Periodic elliptic maps need boundedness only: a weight with a zero is fine.
    const auto cloud = predict_spectrum(make_op(RationalSymbol::identity(), build_rotation(pi)), coarse_grid);
    CHECK(cloud.shape == SpectrumShape::RootSetClosure);
    CHECK(cloud.period == 2);
}

TEST_CASE("identity map predicts the closure of the weight's range") {
    const auto p = predict_spectrum(make_op(two_plus_z, MoebiusTransform::identity()), coarse_grid);
    CHECK(p.shape == SpectrumShape::RootSetClosure);
    CHECK(p.period == 1);
    CHECK(p.provenance == Provenance::MultiplicationOperator);
    for (const auto& z : p.points) CHECK(std::abs(z - 2.0) <= 1.0 + 1e-12);
    CHECK(std::find(p.points.begin(), p.points.end(), Complex{2.0}) != p.points.end());
}

TEST_CASE("inverse-spectrum duality") {
    std::mt19937_64 rng(30);
    const DiscGrid grid = coarse_grid;
    std::vector<MoebiusTransform> maps = {psi_half, build_parabolic_cayley(0.4), build_parabolic_cayley(-2.0),
                                          build_rotation(2.0 * pi * golden)};
    for (int i = 0; i < 6; ++i) maps.push_back(build_disc_automorphism(i, oracle::random_in_disc(rng, 0.7)));
    for (const auto& phi : maps) {
        for (Space space : {Space::Bloch, Space::Dirichlet}) {
            const auto op = make_op(random_invertible_weight(rng), phi, space);
            const auto cls = classify(phi);
            if (cls.kind == AutomorphismKind::Elliptic && elliptic_period(phi)) continue;
            const auto inv = check_invertible(op, grid);
            REQUIRE(inv.invertible);
            const auto forward = predict_spectrum(op, grid);
            const auto backward = predict_spectrum(*inv.inverse, grid);
            check_same_shape(backward, reciprocal_shape(forward));
            if (cls.kind == AutomorphismKind::Hyperbolic && forward.shape == SpectrumShape::Annulus) {
                const double ua = std::abs(op.weight().value(cls.attractive));
                const double ub = std::abs(op.weight().value(cls.repulsive));
                CHECK(backward.r_max == doctest::Approx(1.0 / std::min(ua, ub)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("invertible predictions keep zero outside") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 10; ++i) {
        const auto p = predict_spectrum(make_op(random_invertible_weight(rng),
                                                build_disc_automorphism(i, oracle::random_in_disc(rng, 0.9))),
                                        coarse_grid);
        if (p.shape == SpectrumShape::Circle) CHECK(p.radius > 0.0);
        if (p.shape == SpectrumShape::Annulus) {
            CHECK(p.r_min > 0.0);
            CHECK(p.r_min <= p.r_max);
        }
    }
}

TEST_CASE("elliptic period detection") {
    CHECK(elliptic_period(MoebiusTransform::identity()) == 1);
    CHECK(elliptic_period(build_rotation(pi)) == 2);
    CHECK(elliptic_period(build_rotation(2.0 * pi / 5.0)) == 5);
    CHECK(elliptic_period(build_rotation(2.0 * pi * 3.0 / 7.0)) == 7);
    const auto shift = build_disc_automorphism(0.0, Complex{0.3, -0.2});
    CHECK(elliptic_period(shift.inverse() * build_rotation(2.0 * pi / 3.0) * shift) == 3);
    CHECK_FALSE(elliptic_period(build_rotation(2.0 * pi * golden)).has_value());
    CHECK_FALSE(elliptic_period(psi_half).has_value());
    CHECK_FALSE(elliptic_period(build_parabolic_cayley(1.0)).has_value());
}

TEST_CASE("root cloud examples") {
    const auto op = make_op(two_plus_z, build_rotation(pi));
    const auto cloud = elliptic_root_cloud(op, coarse_grid);
    CHECK(cloud.period == 2);
    CHECK(cloud.provenance == Provenance::EllipticRootSet);
    CHECK(std::find(cloud.points.begin(), cloud.points.end(), Complex{2.0}) != cloud.points.end());
    CHECK(std::find(cloud.points.begin(), cloud.points.end(), Complex{-2.0}) != cloud.points.end());
    for (const auto& p : cloud.points) {
        CHECK(std::abs(p) >= std::sqrt(3.0) - 1e-12);
        CHECK(std::abs(p) <= std::sqrt(5.0) + 1e-12);
    }
    REQUIRE(cloud.refinement_hausdorff.has_value());
    CHECK(*cloud.refinement_hausdorff < 0.1);

    const auto unweighted = elliptic_root_cloud(make_op(RationalSymbol::constant(1.0), build_rotation(pi)), coarse_grid);
    for (const auto& p : unweighted.points) CHECK((std::abs(p - 1.0) < 1e-15 || std::abs(p + 1.0) < 1e-15));

    CHECK_THROWS_WITH_AS(elliptic_root_cloud(make_op(two_plus_z, build_rotation(2.0 * pi * golden)), coarse_grid),
                         doctest::Contains("use predict_spectrum"), PreconditionError);
}

TEST_CASE("root clouds are closed under the m-th roots of unity and solve lambda^m = u_(m)(z)") {
    std::mt19937_64 rng(32);
    const DiscGrid grid{GridParams{.radial_levels = 5}};
    for (int m : {2, 3, 4, 6}) {
        const auto shift = build_disc_automorphism(0.0, oracle::random_in_disc(rng, 0.5));
        const auto phi = shift.inverse() * build_rotation(2.0 * pi / m) * shift;
        const auto u = random_invertible_weight(rng);
        const auto cloud = elliptic_root_cloud(make_op(u, phi), grid, false);
        REQUIRE(cloud.period == m);
        const Complex omega = std::polar(1.0, 2.0 * pi / m);
        std::vector<Complex> rotated;
        for (const auto& p : cloud.points) rotated.push_back(p * omega);
        CHECK(hausdorff_distance(cloud.points, rotated) <= 1e-10);

        // The cloud lists the m roots of each grid sample in grid order.
        std::vector<Complex> samples;
        for (const auto& z : grid.interior()) samples.push_back(z);
        for (const auto& z : grid.boundary()) samples.push_back(z);
        REQUIRE(cloud.points.size() == samples.size() * m);
        for (std::size_t i = 0; i < cloud.points.size(); i += 37) {
            const Complex target = cocycle_eval(u, phi, m, samples[i / m]);
            CHECK(std::abs(std::pow(cloud.points[i], m) - target) <= 1e-12 * (1.0 + std::abs(target)));
        }
    }
}

TEST_CASE("spectral radius estimates") {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 5; ++i) {
        const auto phi = build_disc_automorphism(i, oracle::random_in_disc(rng, 0.9));
        const auto one = spectral_radius_estimate(make_op(RationalSymbol::constant(1.0), phi), {1, 5, 20}, coarse_grid);
        for (double v : one.sequence) CHECK(v == 1.0);
        CHECK(one.predicted == doctest::Approx(1.0).epsilon(1e-12));
        const Complex c{1.5, -0.7};
        const auto constant = spectral_radius_estimate(make_op(RationalSymbol::constant(c), phi), {1, 7, 30}, coarse_grid);
        for (double v : constant.sequence) CHECK(v == doctest::Approx(std::abs(c)).epsilon(1e-14));
    }

    const DiscGrid grid;
    const auto hyperbolic = spectral_radius_estimate(make_op(two_plus_z, psi_half), {25, 50, 100}, grid);
    CHECK(hyperbolic.predicted == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(hyperbolic.relative_gap < 0.02);
    for (double v : hyperbolic.sequence) CHECK(v > 0.0);

    const auto parabolic = spectral_radius_estimate(make_op(two_plus_z, build_parabolic_cayley(1.0)), {25, 50, 100}, grid);
    CHECK(parabolic.predicted == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(parabolic.relative_gap < 0.05);

    const auto periodic = spectral_radius_estimate(make_op(two_plus_z, build_rotation(pi)), {2, 4, 8}, coarse_grid);
    CHECK(periodic.predicted == doctest::Approx(std::sqrt(5.0)).epsilon(1e-3));
}

TEST_CASE("Hausdorff distance against brute force") {
    std::mt19937_64 rng(34);
    CHECK(hausdorff_distance({Complex{0.0}}, {Complex{3.0, 4.0}}) == 5.0);
    CHECK_THROWS_AS(hausdorff_distance({}, {Complex{1.0}}), DomainError);
    for (int i = 0; i < 20; ++i) {
        std::vector<Complex> a(50 + i * 7), b(30 + i * 11);
        for (auto& p : a) p = oracle::random_in_disc(rng, 2.0);
        for (auto& p : b) p = oracle::random_in_disc(rng, 1.0 + i % 3);
        if (i % 4 == 0) b.push_back({100.0, -50.0});
        CHECK(hausdorff_distance(a, b) == doctest::Approx(brute_hausdorff(a, b)).epsilon(1e-15));
    }
}

TEST_CASE("truncation eigenvalues") {
    const double theta = 0.9;
    const auto rot = taylor_truncation(make_op(RationalSymbol::constant(1.0), build_rotation(theta)), 16);
    auto eigs = truncation_eigenvalues(rot);
    REQUIRE(eigs.size() == 16);
    for (int k = 0; k < 16; ++k) {
        const Complex expected = std::polar(1.0, k * theta);
        double best = 1.0;
        for (const auto& e : eigs) best = std::min(best, std::abs(e - expected));
        CHECK(best < 1e-12);
    }

    const auto mult = taylor_truncation(make_op(two_plus_z, MoebiusTransform::identity()), 16);
    for (const auto& e : truncation_eigenvalues(mult)) CHECK(std::abs(e - 2.0) < 1e-12);

    const auto hyp = taylor_truncation(make_op(RationalSymbol::constant(1.0), psi_half), 64);
    const auto h = truncation_eigenvalues(hyp);
    CHECK(h.size() == 64);
    for (const auto& e : h) CHECK(std::isfinite(std::abs(e)));
}

TEST_CASE("conjecture probe") {
    const auto op = make_op(two_plus_z, psi_half);
    const auto probe = conjecture_probe(op, {.samples = 4, .extra_lambdas = {}, .sizes = {16, 32, 64}});
    CHECK(probe.r_min == doctest::Approx(1.0));
    CHECK(probe.r_max == doctest::Approx(3.0));
    CHECK(probe.samples.size() == 6);
    CHECK_FALSE(probe.disclaimer.empty());
    for (const auto& s : probe.samples) {
        CHECK(s.norms.size() == 3);
        if (s.label == "inside annulus") {
            CHECK(std::abs(s.lambda) >= probe.r_min);
            CHECK(std::abs(s.lambda) <= probe.r_max);
        }
    }
    const auto& outside = probe.samples.back();
    CHECK(outside.label == "outside annulus");
    CHECK(std::abs(outside.lambda) == doctest::Approx(3.5));
    for (double n : outside.norms) CHECK(std::isfinite(n));
    CHECK(outside.growth < 2.0);

    CHECK_THROWS_AS(conjecture_probe(op, {.samples = 1, .extra_lambdas = {Complex{}}, .sizes = {16}}), DomainError);
    CHECK_THROWS_AS(conjecture_probe(make_op(RationalSymbol::constant(1.0), psi_half), {}), PreconditionError);
    CHECK_THROWS_AS(conjecture_probe(make_op(two_plus_z, build_rotation(1.0)), {}), PreconditionError);
}
