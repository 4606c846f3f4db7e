#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wcop/moebius.hpp"

using namespace wcop;

namespace {

MoebiusTransform random_automorphism(std::mt19937_64& rng, double max_radius = 0.9) {
    std::uniform_real_distribution<double> t(0.0, 2.0 * pi);
    return build_disc_automorphism(t(rng), oracle::random_in_disc(rng, max_radius));
}

MoebiusTransform parabolic_example() {
    return MoebiusTransform::from_coefficients({-1.0, 2.0}, 1.0, -1.0, {1.0, 2.0});
}

}  // namespace

TEST_CASE("construction normalizes to unit determinant and rejects |p| >= 1") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        const auto phi = random_automorphism(rng);
        CHECK(std::abs(phi.determinant() - 1.0) < 1e-12);
        CHECK(phi.is_disc_automorphism());
    }
    CHECK_THROWS_WITH_AS(build_disc_automorphism(0.0, 1.0), "not a disc automorphism: |p| >= 1", DomainError);
    CHECK_THROWS_AS(build_disc_automorphism(0.0, {0.8, 0.8}), DomainError);
    CHECK_THROWS_AS(build_canonical_hyperbolic(0.0), DomainError);
    CHECK_THROWS_AS(build_canonical_hyperbolic(1.0), DomainError);
    CHECK_THROWS_AS(MoebiusTransform::from_coefficients(1.0, 2.0, 2.0, 4.0), DomainError);
}

TEST_CASE("builder examples") {
    const auto id = build_disc_automorphism(0.0, 0.0);
    CHECK(std::abs(id(Complex{0.3, 0.4}) - Complex{0.3, 0.4}) < 1e-15);
    const auto neg = build_disc_automorphism(pi, 0.0);
    CHECK(std::abs(neg(Complex{0.3, 0.4}) + Complex{0.3, 0.4}) < 1e-15);

    const auto psi = build_canonical_hyperbolic(0.5);
    CHECK(psi.approx_equal(MoebiusTransform::from_coefficients(3.0, 1.0, 1.0, 3.0), 1e-14));
    CHECK(std::abs(psi(0.0) - 1.0 / 3.0) < 1e-15);
    CHECK(std::abs(psi(1.0) - 1.0) < 1e-15);
    CHECK(std::abs(psi(-1.0) + 1.0) < 1e-15);
    for (double mu : {0.1, 0.3, 0.7, 0.95}) CHECK(std::abs(build_canonical_hyperbolic(mu).derivative(1.0) - mu) < 1e-14);

    // The Cayley-conjugated unit translation matches the explicit example.
    CHECK(build_parabolic_cayley(1.0).approx_equal(parabolic_example(), 1e-14));
}

TEST_CASE("automorphisms map the disc to itself and the circle to the circle") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 50; ++i) {
        const auto phi = random_automorphism(rng, 0.99);
        for (int j = 0; j < 20; ++j) {
            CHECK(std::abs(phi(oracle::random_in_disc(rng, 0.999))) < 1.0);
            CHECK(std::abs(std::abs(phi(oracle::random_unimodular(rng))) - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("group laws") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        const auto phi = random_automorphism(rng);
        const auto round_trip = phi.inverse() * phi;
        for (int j = 0; j < 100; ++j) {
            const Complex z = oracle::random_in_disc(rng);
            CHECK(std::abs(round_trip(z) - z) < 1e-10);
        }
        std::uniform_int_distribution<int> pick(0, 30);
        const int m = pick(rng), n = pick(rng);
        const auto lhs = iterate(phi, m + n);
        const auto rhs = iterate(phi, m) * iterate(phi, n);
        for (int j = 0; j < 20; ++j) {
            const Complex z = oracle::random_in_disc(rng);
            CHECK(std::abs(lhs(z) - rhs(z)) < 1e-10);
        }
    }
}

TEST_CASE("iterate against repeated application") {
    std::mt19937_64 rng(4);
    CHECK(iterate(build_canonical_hyperbolic(0.5), 0).approx_equal(MoebiusTransform::identity(), 0.0));
    CHECK(std::abs(iterate(build_canonical_hyperbolic(0.5), 2)(0.0) - 0.6) < 1e-15);
    const double theta = 0.37;
    CHECK(iterate(build_rotation(theta), 13).approx_equal(build_rotation(13 * theta), 1e-13));
    for (int i = 0; i < 10; ++i) {
        const auto phi = random_automorphism(rng);
        Complex z = oracle::random_in_disc(rng), w = z;
        for (int k = 0; k < 40; ++k) w = phi(w);
        CHECK(std::abs(iterate(phi, 40)(z) - w) < 1e-9);
    }
    CHECK_THROWS_AS(iterate(build_rotation(1.0), -1), DomainError);
}

TEST_CASE("derivative identity |phi'| = (1 - |phi|^2)/(1 - |z|^2)") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const auto phi = random_automorphism(rng);
        const Complex z = oracle::random_in_disc(rng);
        const double lhs = std::abs(phi.derivative(z));
        const double rhs = (1.0 - std::norm(phi(z))) / (1.0 - std::norm(z));
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, rhs));
        CHECK(std::abs(phi.derivative(z) - oracle::derivative([&](Complex x) { return phi(x); }, z)) < 1e-6 * lhs);
    }
}

TEST_CASE("classification examples") {
    const auto rot = classify(build_rotation(pi / 3));
    CHECK(rot.kind == AutomorphismKind::Elliptic);
    REQUIRE(rot.fixed_points.size() == 1);
    CHECK(std::abs(rot.fixed_points[0].location) < 1e-15);
    CHECK(std::abs(rot.fixed_points[0].derivative - std::polar(1.0, pi / 3)) < 1e-14);

    const auto hyp = classify(build_canonical_hyperbolic(0.5));
    CHECK(hyp.kind == AutomorphismKind::Hyperbolic);
    CHECK(std::abs(hyp.attractive - 1.0) < 1e-12);
    CHECK(std::abs(hyp.repulsive + 1.0) < 1e-12);
    CHECK(hyp.multiplier == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(hyp.fixed_points[1].derivative - 2.0) < 1e-12);
    CHECK_FALSE(hyp.unstable);

    const auto par = classify(parabolic_example());
    CHECK(par.kind == AutomorphismKind::Parabolic);
    CHECK(std::abs(par.fixed_points[0].location - 1.0) < 1e-12);
    CHECK(std::abs(par.fixed_points[0].derivative - 1.0) < 1e-9);
    CHECK_FALSE(par.unstable);

    CHECK(classify(build_rotation(0.0)).kind == AutomorphismKind::Identity);
    CHECK(classify(build_rotation(2 * pi)).kind == AutomorphismKind::Identity);
    CHECK_THROWS_AS(classify(MoebiusTransform::from_coefficients(1.0, 0.0, 0.0, 2.0)), DomainError);
}

TEST_CASE("near-parabolic discriminants are flagged unstable") {
    // Hyperbolic with multiplier 1 - 1e-5: |tr^2 - 4| ~ 1e-10, just outside the parabolic tolerance.
    const auto near = build_canonical_hyperbolic(1.0 - 2e-5);
    const auto cls = classify(near);
    CHECK(cls.unstable);
    CHECK(cls.diagnostic.find("classification unstable") == 0);
}

TEST_CASE("classification agrees with a brute-force fixed-point oracle") {
    std::mt19937_64 rng(6);
    int counts[4] = {0, 0, 0, 0};
    for (int i = 0; i < 200; ++i) {
        const auto phi = random_automorphism(rng, 0.99);
        const auto cls = classify(phi);
        const auto fps = oracle::fixed_points(phi.a(), phi.b(), phi.c(), phi.d());
        counts[static_cast<int>(cls.kind)]++;
        if (cls.kind == AutomorphismKind::Elliptic) {
            int interior = 0;
            for (const auto& z : fps) interior += std::abs(z) < 1.0 - 1e-9;
            CHECK(interior == 1);
            CHECK(std::abs(cls.fixed_points[0].location) < 1.0 - 1e-9);
            CHECK(std::abs(std::abs(phi.derivative(cls.fixed_points[0].location)) - 1.0) < 1e-9);
        } else if (cls.kind == AutomorphismKind::Hyperbolic) {
            REQUIRE(fps.size() == 2);
            for (const auto& z : fps) {
                CHECK(std::abs(std::abs(z) - 1.0) < 1e-7);
                const double dz = std::abs(phi.derivative(z));
                const bool attract = std::abs(z - cls.attractive) < 1e-7;
                CHECK((attract ? dz < 1.0 : dz > 1.0));
            }
            const auto& f = cls.fixed_points;
            CHECK(std::abs(f[0].derivative * f[1].derivative - 1.0) < 1e-9);
            CHECK(cls.multiplier > 0.0);
            CHECK(cls.multiplier < 1.0);
        }
    }
    // The random family exercises both generic classes.
    CHECK(counts[static_cast<int>(AutomorphismKind::Elliptic)] > 10);
    CHECK(counts[static_cast<int>(AutomorphismKind::Hyperbolic)] > 10);
}

TEST_CASE("hyperbolic distance") {
    CHECK(hyperbolic_distance(0.0, 0.0) == 0.0);
    CHECK(hyperbolic_distance(0.0, 0.5) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-14));
    const auto psi = build_canonical_hyperbolic(0.5);
    const Complex z{0.0, 0.2}, w{-0.3, 0.0};
    CHECK(std::abs(hyperbolic_distance(psi(z), psi(w)) - hyperbolic_distance(z, w)) < 1e-10);
    CHECK_THROWS_AS(hyperbolic_distance(1.0, 0.0), DomainError);

    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
        const Complex a = oracle::random_in_disc(rng), b = oracle::random_in_disc(rng);
        CHECK(hyperbolic_distance(a, b) == doctest::Approx(oracle::rho(a, b)).epsilon(1e-12));
        CHECK(hyperbolic_distance(a, b) == doctest::Approx(hyperbolic_distance(b, a)).epsilon(1e-14));
        const auto phi = random_automorphism(rng);
        CHECK(std::abs(hyperbolic_distance(phi(a), phi(b)) - hyperbolic_distance(a, b)) < 1e-10);
    }
}

TEST_CASE("stable origin quantities agree with direct formulas") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
        const auto phi = random_automorphism(rng);
        const Complex w = phi(0.0);
        CHECK(phi.origin_gap() == doctest::Approx(1.0 - std::norm(w)).epsilon(1e-12));
        CHECK(phi.distance_from_origin() == doctest::Approx(oracle::rho(w, 0.0)).epsilon(1e-10));
    }
}

TEST_CASE("distance chain rho(phi_n(0), 0) <= n rho(phi(0), 0)") {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 50; ++i) {
        const auto phi = random_automorphism(rng);
        const double step = phi.distance_from_origin();
        auto phi_n = MoebiusTransform::identity();
        for (int n = 1; n <= 100; ++n) {
            phi_n = phi * phi_n;
            CHECK(phi_n.distance_from_origin() <= n * step + 1e-10);
        }
    }
}

TEST_CASE("Denjoy-Wolff limit sequence") {
    for (double mu : {0.3, 0.5, 0.7}) {
        const auto seq = dw_limit_sequence(build_canonical_hyperbolic(mu), 200);
        CHECK(std::abs(seq.back() - mu) < 1e-2);
    }
    const auto par = dw_limit_sequence(parabolic_example(), 400);
    CHECK(std::abs(par.back() - 1.0) < 5e-2);
    const auto psi = build_canonical_hyperbolic(0.5);
    CHECK(dw_limit_sequence(psi, 1)[0] == doctest::Approx(1.0 - std::abs(psi(0.0))).epsilon(1e-14));
    CHECK_THROWS_AS(dw_limit_sequence(build_rotation(1.0), 5), DomainError);
}
