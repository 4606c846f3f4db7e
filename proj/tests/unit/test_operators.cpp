#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wcop/operators.hpp"

using namespace wcop;

namespace {

const RationalSymbol two_plus_z(Polynomial{2.0, 1.0});
const MoebiusTransform psi_half = build_canonical_hyperbolic(0.5);

// Weight with a dominant constant term, so inf |u| >= 0.1 on the closed disc.
RationalSymbol random_invertible_weight(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<Complex> c(4);
    double tail = 0.0;
    for (std::size_t k = 1; k < c.size(); ++k) {
        c[k] = {unif(rng), unif(rng)};
        tail += std::abs(c[k]);
    }
    c[0] = std::polar(tail + 0.1 + std::abs(unif(rng)), 3.0 * unif(rng));
    return RationalSymbol(Polynomial(c));
}

// Polynomial weight scaled to Bloch norm about 1.
RationalSymbol random_polynomial_weight(std::mt19937_64& rng, int degree) {
    std::normal_distribution<double> g;
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
    double scale = 0.0;
    for (auto& v : c) {
        v = {g(rng), g(rng)};
        scale += std::abs(v);
    }
    return RationalSymbol(Polynomial(c) * (1.0 / scale));
}

BlaschkeProduct random_blaschke(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> deg(1, 4);
    std::vector<Complex> zeros(static_cast<std::size_t>(deg(rng)));
    for (auto& a : zeros) a = oracle::random_in_disc(rng, 0.8);
    return BlaschkeProduct(zeros, oracle::random_unimodular(rng));
}

AnalyticFunction random_test_function(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<Complex> c(5);
    for (auto& v : c) v = {g(rng), g(rng)};
    return make_function(Polynomial(c));
}

const DiscGrid coarse_grid{GridParams{.radial_levels = 8}};

}  // namespace

TEST_CASE("verdict labels and witness judgement") {
    CHECK(to_string(Verdict::Bounded) == "bounded");
    CHECK(to_string(Verdict::UnboundedEvidence) == "unbounded-evidence");
    CHECK(to_string(Verdict::Inconclusive) == "inconclusive");
    CHECK(judge_witnesses({{1.0, 1.001}, {2.0, 2.0}}) == Verdict::Bounded);
    CHECK(judge_witnesses({{1.0, 1.5}}) == Verdict::Inconclusive);
    CHECK(judge_witnesses({{1.0, 1.5, 2.0, 2.5}}) == Verdict::UnboundedEvidence);
    CHECK(judge_witnesses({{1.0, 1.5, 2.0, 2.005}}) == Verdict::Bounded);
    CHECK(judge_witnesses({{1.0, 1.5, 1.501, 2.5}}) == Verdict::Inconclusive);
    CHECK(judge_witnesses({{1.0, std::numeric_limits<double>::infinity()}}) == Verdict::UnboundedEvidence);
}

TEST_CASE("construction rejects maps leaving the disc") {
    CHECK_THROWS_WITH_AS(WeightedCompositionOp(two_plus_z, SelfMap(RationalSymbol(Polynomial{0.0, 1.2})), Space::Bloch),
                         doctest::Contains("not a selfmap"), DomainError);
    CHECK_THROWS_AS(WeightedCompositionOp(two_plus_z, SelfMap(MoebiusTransform::from_coefficients(1.0, 0.5, 0.0, 1.0)),
                                          Space::Bloch),
                    DomainError);
    CHECK_NOTHROW(WeightedCompositionOp(two_plus_z, SelfMap(RationalSymbol(Polynomial{0.1, 0.5, 0.3})), Space::Bloch));
}

TEST_CASE("pointwise action examples") {
    const WeightedCompositionOp identity_op(RationalSymbol::constant(1.0), SelfMap(MoebiusTransform::identity()), Space::Bloch);
    const auto square = monomial_function(2);
    CHECK(wcomp_apply(identity_op, square, Complex{0.3, 0.4}) == square(Complex{0.3, 0.4}));

    const WeightedCompositionOp op(two_plus_z, SelfMap(psi_half), Space::Bloch);
    CHECK(std::abs(wcomp_apply(op, monomial_function(1), 0.0) - 2.0 / 3.0) < 1e-15);
    const auto one = make_function(Polynomial::constant(1.0));
    CHECK(wcomp_apply(op, one, Complex{0.2, -0.5}) == two_plus_z.value(Complex{0.2, -0.5}));

    CHECK(power_apply(op, 0, square, Complex{0.1, 0.7}) == square(Complex{0.1, 0.7}));
    CHECK(std::abs(power_apply(op, 1, square, 0.3) - wcomp_apply(op, square, 0.3)) < 1e-15);
    CHECK(std::abs(power_apply(op, 2, one, 0.0) - 14.0 / 3.0) < 1e-14);
    CHECK_THROWS_AS(power_apply(op, -1, one, 0.0), DomainError);
    CHECK_THROWS_AS(wcomp_apply(op, one, 1.5), DomainError);
}

TEST_CASE("powers agree with recursive application and obey the semigroup law") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        const auto phi = build_disc_automorphism(6.28 * trial / 20.0, oracle::random_in_disc(rng, 0.8));
        const WeightedCompositionOp op(random_invertible_weight(rng), SelfMap(phi), Space::Bloch);
        const auto f = random_test_function(rng);
        const Complex z = oracle::random_in_disc(rng);
        std::uniform_int_distribution<int> pick(0, 12);
        const int m = pick(rng), n = pick(rng);

        // Recursive oracle: g_{k+1}(w) = u(w) g_k(phi(w)), with g_0 = f.
        std::function<Complex(Complex)> g = [f](Complex w) { return f.value(w); };
        for (int k = 0; k < m; ++k)
            g = [g, &op](Complex w) { return op.weight().value(w) * g(op.map().value(w)); };
        const Complex expected = g(z);
        CHECK(std::abs(power_apply(op, m, f, z) - expected) <= 1e-9 * std::abs(expected));

        const AnalyticFunction gn{[&](Complex w) { return power_apply(op, n, f, w); }, {}, "g"};
        const Complex lhs = power_apply(op, m + n, f, z);
        CHECK(std::abs(lhs - power_apply(op, m, gn, z)) <= 1e-9 * std::abs(lhs));
    }
}

TEST_CASE("binomial identity residual") {
    const WeightedCompositionOp op(two_plus_z, SelfMap(psi_half), Space::Bloch);
    const auto square = monomial_function(2);
    CHECK(binomial_identity_residual(op, 3.0, 0, square, Complex{0.0, 0.4}) == 0.0);
    CHECK(binomial_identity_residual(op, 3.0, 10, square, Complex{0.0, 0.4}) <= 1e-9);
    CHECK_THROWS_WITH_AS(binomial_identity_residual(op, 3.0, 31, square, 0.0), doctest::Contains("binomial overflow regime"),
                         DomainError);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        const WeightedCompositionOp r(random_invertible_weight(rng),
                                      SelfMap(build_disc_automorphism(i, oracle::random_in_disc(rng, 0.8))), Space::Bloch);
        const auto f = random_test_function(rng);
        const Complex z = oracle::random_in_disc(rng), lambda = oracle::random_in_disc(rng, 3.0);
        CHECK(binomial_identity_residual(r, lambda, 1, f, z) <= 1e-12);
        CHECK(binomial_identity_residual(r, lambda, 12, f, z) <= 1e-9);
    }
}

TEST_CASE("boundedness examples") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 5; ++i) {
        const auto phi = build_disc_automorphism(i, oracle::random_in_disc(rng, 0.9));
        const WeightedCompositionOp op(RationalSymbol::constant(1.0), SelfMap(phi), Space::Bloch);
        const auto v = check_bounded(op, coarse_grid);
        CHECK(v.verdict == Verdict::Bounded);
        REQUIRE(v.witnesses.size() == 2);
        CHECK(v.witnesses[0].name == "c24");
        CHECK(v.witnesses[0].estimate.value == 0.0);
        CHECK(v.witnesses[1].estimate.value == doctest::Approx(1.0).epsilon(1e-12));
    }
    const WeightedCompositionOp dir(RationalSymbol::constant(1.0), SelfMap(psi_half), Space::Dirichlet);
    CHECK(check_bounded(dir, coarse_grid).verdict == Verdict::Bounded);
    const WeightedCompositionOp dir_blaschke(RationalSymbol::constant(1.0), SelfMap(BlaschkeProduct({0.0, 0.5})),
                                             Space::Dirichlet);
    CHECK(check_bounded(dir_blaschke, coarse_grid).verdict == Verdict::Inconclusive);

    const auto certified = dir.certify(coarse_grid);
    REQUIRE(certified.certificate().has_value());
    CHECK(certified.certificate()->verdict == Verdict::Bounded);
    CHECK_FALSE(dir.certificate().has_value());
}

TEST_CASE("strict selfmaps that are multipliers: every polynomial weight is bounded") {
    std::mt19937_64 rng(13);
    const RationalSymbol phi_symbol(Polynomial{Complex{0.1, 0.2}, 0.4, Complex{0.0, 0.2}});
    REQUIRE(phi_symbol.boundary_sup() < 1.0 - 1e-3);
    REQUIRE(check_multiplier(phi_symbol, Space::Bloch, coarse_grid).verdict == Verdict::Bounded);
    for (int i = 0; i < 30; ++i) {
        const WeightedCompositionOp op(random_polynomial_weight(rng, 1 + i % 8), SelfMap(phi_symbol), Space::Bloch);
        CHECK(check_bounded(op, coarse_grid).verdict == Verdict::Bounded);
    }
}

TEST_CASE("finite Blaschke products with multiplier weights are bounded") {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 10; ++i) {
        const auto b = random_blaschke(rng);
        for (int j = 0; j < 20; ++j) {
            const auto u = random_polynomial_weight(rng, 1 + j % 5);
            REQUIRE(check_multiplier(u, Space::Bloch, coarse_grid).verdict == Verdict::Bounded);
            const WeightedCompositionOp op(u, SelfMap(b), Space::Bloch);
            CHECK(check_bounded(op, coarse_grid).verdict == Verdict::Bounded);
        }
    }
}

TEST_CASE("multiplier examples and reciprocal closure") {
    const DiscGrid grid;
    const auto c = RationalSymbol::constant(Complex{0.0, -3.0});
    CHECK(check_multiplier(c, Space::Bloch, grid).verdict == Verdict::Bounded);
    CHECK(check_multiplier(c.reciprocal(), Space::Bloch, grid).verdict == Verdict::Bounded);
    CHECK(check_multiplier(two_plus_z, Space::Bloch, grid).verdict == Verdict::Bounded);
    CHECK(inf_modulus(two_plus_z, grid) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(check_multiplier(two_plus_z.reciprocal(), Space::Bloch, grid).verdict == Verdict::Bounded);
    CHECK(check_multiplier(two_plus_z, Space::Dirichlet, grid).verdict == Verdict::Bounded);

    std::mt19937_64 rng(15);
    for (int i = 0; i < 20; ++i) {
        const auto u = random_invertible_weight(rng);
        REQUIRE(check_multiplier(u, Space::Bloch, coarse_grid).verdict == Verdict::Bounded);
        REQUIRE(inf_modulus(u, coarse_grid) > 0.0);
        CHECK(check_multiplier(u.reciprocal(), Space::Bloch, coarse_grid).verdict == Verdict::Bounded);
    }

    // The logarithm log(e/(1-z)) is unbounded on the disc: never certified as a multiplier.
    const AnalyticFunction log_e{[](Complex z) { return 1.0 - std::log(1.0 - z); },
                                 [](Complex z) { return 1.0 / (1.0 - z); }, "log(e/(1-z))"};
    CHECK(check_multiplier(log_e, Space::Bloch, grid, false).verdict != Verdict::Bounded);
    CHECK(check_multiplier(log_e, Space::Dirichlet, grid, false).verdict == Verdict::Inconclusive);
}

TEST_CASE("invertibility examples") {
    const DiscGrid grid;
    const WeightedCompositionOp rotation(RationalSymbol::constant(1.0), SelfMap(build_rotation(0.7)), Space::Bloch);
    const auto r = check_invertible(rotation, grid);
    REQUIRE(r.invertible);
    REQUIRE(r.inverse.has_value());
    CHECK(r.inverse->map().moebius().approx_equal(build_rotation(-0.7), 1e-12));
    CHECK(std::abs(r.inverse->weight().value(Complex{0.3, 0.1}) - 1.0) < 1e-15);

    const WeightedCompositionOp zero_weight(RationalSymbol::identity(), SelfMap(psi_half), Space::Bloch);
    const auto z = check_invertible(zero_weight, grid);
    CHECK_FALSE(z.invertible);
    CHECK(z.inf_modulus <= 1e-6);
    CHECK(z.reason.find("bounded away from zero") != std::string::npos);

    const WeightedCompositionOp op(two_plus_z, SelfMap(psi_half), Space::Bloch);
    const auto inv = check_invertible(op, grid);
    REQUIRE(inv.invertible);
    const auto psi_inv = psi_half.inverse();
    for (Complex w : {Complex{0.0}, Complex{0.5, 0.2}, Complex{-0.9, 0.0}})
        CHECK(std::abs(inv.inverse->weight().value(w) - 1.0 / (2.0 + psi_inv(w))) < 1e-14);

    const WeightedCompositionOp not_automorphism(two_plus_z, SelfMap(RationalSymbol(Polynomial{0.0, 0.5})), Space::Bloch);
    const auto na = check_invertible(not_automorphism, grid);
    CHECK_FALSE(na.invertible);
    CHECK(na.reason.find("automorphism") != std::string::npos);

    const WeightedCompositionOp dir_blaschke(RationalSymbol::constant(1.0), SelfMap(BlaschkeProduct({0.0, 0.5})),
                                             Space::Dirichlet);
    CHECK_THROWS_AS(check_invertible(dir_blaschke, coarse_grid), PreconditionError);
}

TEST_CASE("inverse round trip") {
    std::mt19937_64 rng(16);
    for (int i = 0; i < 10; ++i) {
        const auto phi = build_disc_automorphism(i, oracle::random_in_disc(rng, 0.8));
        const WeightedCompositionOp op(random_invertible_weight(rng), SelfMap(phi), i % 2 ? Space::Bloch : Space::Dirichlet);
        const auto r = check_invertible(op, coarse_grid);
        REQUIRE(r.invertible);
        const auto rr = check_invertible(*r.inverse, coarse_grid);
        REQUIRE(rr.invertible);
        for (int j = 0; j < 10; ++j) {
            const auto f = random_test_function(rng);
            const Complex z = oracle::random_in_disc(rng);
            const AnalyticFunction g{[&](Complex w) { return wcomp_apply(*r.inverse, f, w); }, {}, "g"};
            const Complex identity = wcomp_apply(op, g, z);
            CHECK(std::abs(identity - f.value(z)) <= 1e-9 * (1.0 + std::abs(f.value(z))));
            const Complex a = wcomp_apply(op, f, z), b = wcomp_apply(*rr.inverse, f, z);
            CHECK(std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a)));
        }
    }
}

TEST_CASE("composition norm bound examples") {
    for (int n : {0, 1, 5, 100}) {
        CHECK(composition_norm_bound(build_rotation(0.3), n, Space::Bloch) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(composition_norm_bound(psi_half, 1, Space::Bloch) == doctest::Approx(1.0 + 0.5 * std::log(2.0)).epsilon(1e-14));
    CHECK(composition_norm_bound(psi_half, 0, Space::Dirichlet) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(composition_norm_bound(psi_half, -1, Space::Bloch), DomainError);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 20; ++i) {
        const auto phi = build_disc_automorphism(i, oracle::random_in_disc(rng, 0.9));
        for (int n = 0; n <= 50; n += 7)
            CHECK(composition_norm_bound(phi, n, Space::Bloch) <= composition_norm_linear_bound(phi, n) * (1.0 + 1e-12));
    }
}

TEST_CASE("composition norm sandwich over random automorphisms") {
    std::mt19937_64 rng(18);
    const auto bloch_family = default_test_family(Space::Bloch);
    const auto dirichlet_family = default_test_family(Space::Dirichlet);
    for (int i = 0; i < 20; ++i) {
        const auto phi = build_disc_automorphism(i, oracle::random_in_disc(rng, 0.9));
        for (int n = 0; n <= 50; ++n) {
            const auto psi = iterate(phi, n);
            const auto lb = composition_lower_bound(psi, Space::Bloch, bloch_family);
            CHECK(lb.value >= 1.0 - 1e-12);
            CHECK(lb.value <= composition_norm_bound(phi, n, Space::Bloch) * (1.0 + 1e-9));
            const auto ld = composition_lower_bound(psi, Space::Dirichlet, dirichlet_family);
            CHECK(ld.value >= 1.0 - 1e-12);
            CHECK(ld.value <= composition_norm_bound(phi, n, Space::Dirichlet) * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("invariance identities agree with grid norms of the composed functions") {
    std::mt19937_64 rng(19);
    const DiscGrid grid = DiscGrid().refined();
    const QuadratureRule rule;
    for (int i = 0; i < 4; ++i) {
        const auto psi = build_disc_automorphism(i, oracle::random_in_disc(rng, 0.6));
        for (int k : {1, 3}) {
            const auto f = monomial_function(k);
            const Complex w = psi(0.0);
            const double identity_b = std::abs(f.value(w)) + bloch_seminorm(f, grid).value;
            CHECK(bloch_norm(compose(f, psi), grid).value == doctest::Approx(identity_b).epsilon(1e-2));
            const double identity_d = std::sqrt(std::norm(f.value(w)) + k);
            // Quadrature of a rational integrand: loose agreement only.
            CHECK(dirichlet_norm(compose(f, psi), rule).value == doctest::Approx(identity_d).epsilon(1e-2));
        }
    }
}

TEST_CASE("Taylor truncation") {
    const Complex lambda = std::polar(1.0, 0.9);
    const WeightedCompositionOp rot(RationalSymbol::constant(1.0), SelfMap(RationalSymbol(Polynomial{0.0, lambda})), Space::Bloch);
    const auto m = taylor_truncation(rot, 12);
    for (int i = 0; i < 12; ++i)
        for (int k = 0; k < 12; ++k)
            CHECK(std::abs(m.entries(i, k) - (i == k ? std::pow(lambda, k) : Complex{})) < 1e-14);

    const WeightedCompositionOp mult(two_plus_z, SelfMap(MoebiusTransform::identity()), Space::Bloch);
    const auto t = taylor_truncation(mult, 3);
    const Complex expected[3][3] = {{2.0, 0.0, 0.0}, {1.0, 2.0, 0.0}, {0.0, 1.0, 2.0}};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) CHECK(t.entries(i, k) == expected[i][k]);

    CHECK_THROWS_AS(taylor_truncation(mult, 0), DomainError);
    CHECK_THROWS_AS(taylor_truncation(mult, 513), DomainError);

    std::mt19937_64 rng(20);
    for (int trial = 0; trial < 5; ++trial) {
        const auto phi = build_disc_automorphism(trial, oracle::random_in_disc(rng, 0.7));
        const auto u = random_invertible_weight(rng);
        const WeightedCompositionOp op(u, SelfMap(phi), Space::Bloch);
        const int n = 24;
        const auto tm = taylor_truncation(op, n);
        const auto first = taylor_truncation(WeightedCompositionOp(RationalSymbol::constant(1.0), SelfMap(phi), Space::Bloch), 4);
        CHECK(first.entries(0, 0) == Complex{1.0});
        for (int i = 1; i < 4; ++i) CHECK(first.entries(i, 0) == Complex{});
        for (int k : {0, 1, 5, n - 1}) {
            const auto coeffs = oracle::cauchy_coefficients([&](Complex z) { return u.value(z) * std::pow(phi(z), k); }, n);
            for (int i = 0; i < n; ++i) CHECK(std::abs(tm.entries(i, k) - coeffs[i]) < 1e-8);
        }
    }
}
