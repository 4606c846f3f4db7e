#include "wcop/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wcop {

namespace {

constexpr double stability_tol = 0.01;
constexpr int growth_doublings = 3;

// Witness histories over up to four refinement levels; stops after two if already stable.
template <class Eval>
BoundednessVerdict refine_and_judge(const DiscGrid& grid, const std::vector<std::string>& names, Eval&& eval) {
    std::vector<std::vector<double>> histories(names.size());
    std::vector<NormEstimate> last;
    DiscGrid level = grid;
    for (int step = 0; step <= growth_doublings; ++step) {
        if (step > 0) level = level.refined();
        last = eval(level);
        for (std::size_t i = 0; i < names.size(); ++i) histories[i].push_back(last[i].value);
        if (step >= 1 && judge_witnesses(histories) == Verdict::Bounded) break;
    }
    BoundednessVerdict out;
    out.verdict = judge_witnesses(histories);
    for (std::size_t i = 0; i < names.size(); ++i) {
        NormEstimate e = last[i];
        const auto& h = histories[i];
        e.refinement_delta = relative_delta(h[h.size() - 2], h.back());
        out.witnesses.push_back({names[i], e, h});
    }
    return out;
}

std::vector<NormEstimate> as_list(const ConditionSuprema& s, bool bloch_operator) {
    if (bloch_operator) return {s.c24, s.c25};
    return {s.c26, s.sup_u};
}

// sup |u| and sup |u'| over the closed disc, the data behind the Dirichlet sufficient condition.
std::vector<NormEstimate> dirichlet_witnesses(const AnalyticFunction& u, const DiscGrid& grid) {
    double su = 0.0, sdu = 0.0;
    auto visit = [&](Complex z) {
        su = std::max(su, std::abs(u.value(z)));
        sdu = std::max(sdu, std::abs(u.derivative(z)));
    };
    for (const auto& z : grid.interior()) visit(z);
    for (const auto& z : grid.boundary()) visit(z);
    return {{su, EstimateKind::LowerBoundOfSup, grid.descriptor(), std::nullopt},
            {sdu, EstimateKind::LowerBoundOfSup, grid.descriptor(), std::nullopt}};
}

void check_selfmap(const SelfMap& phi) {
    if (phi.is_moebius()) {
        if (!phi.moebius().is_disc_automorphism()) throw DomainError("not a selfmap: Moebius map is not a disc automorphism");
        return;
    }
    if (phi.is_blaschke()) return;
    const DiscGrid probe(GridParams{.radial_levels = 8});
    for (const auto& z : probe.interior())
        if (!(std::abs(phi.value(z)) < 1.0)) throw DomainError("not a selfmap: |phi(z)| >= 1 inside the disc");
    for (const auto& z : probe.boundary())
        if (std::abs(phi.value(z)) > 1.0 + 1e-12) throw DomainError("not a selfmap: |phi| > 1 on the circle");
}

double monomial_bloch_seminorm(int k) {
    if (k <= 0) return 0.0;
    if (k == 1) return 1.0;
    const double r2 = static_cast<double>(k - 1) / (k + 1);
    return k * (1.0 - r2) * std::pow(r2, 0.5 * (k - 1));
}

}  // namespace

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Bounded: return "bounded";
        case Verdict::UnboundedEvidence: return "unbounded-evidence";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

Verdict judge_witnesses(const std::vector<std::vector<double>>& histories) {
    bool stable = true;
    bool growing = false;
    for (const auto& h : histories) {
        if (h.empty()) return Verdict::Inconclusive;
        if (std::any_of(h.begin(), h.end(), [](double v) { return !std::isfinite(v); })) return Verdict::UnboundedEvidence;
        if (h.size() < 2 || std::abs(relative_delta(h[h.size() - 2], h.back())) >= stability_tol) stable = false;
        if (h.size() >= growth_doublings + 1) {
            bool all_grow = true;
            for (std::size_t i = h.size() - growth_doublings; i < h.size(); ++i)
                all_grow = all_grow && relative_delta(h[i - 1], h[i]) > stability_tol;
            growing = growing || all_grow;
        }
    }
    if (growing) return Verdict::UnboundedEvidence;
    return stable ? Verdict::Bounded : Verdict::Inconclusive;
}

WeightedCompositionOp::WeightedCompositionOp(RationalSymbol u, SelfMap phi, Space space)
    : u_(std::move(u)), phi_(std::move(phi)), space_(space) {
    check_selfmap(phi_);
}

WeightedCompositionOp WeightedCompositionOp::certify(const DiscGrid& grid) const {
    WeightedCompositionOp copy = *this;
    copy.certificate_ = check_bounded(*this, grid);
    return copy;
}

std::string WeightedCompositionOp::describe() const {
    return "u=" + u_.describe() + ", phi=" + phi_.describe() + ", space=" + std::string(to_string(space_));
}

Complex wcomp_apply(const WeightedCompositionOp& op, const AnalyticFunction& f, Complex z) {
    if (std::abs(z) > 1.0 + 1e-12) throw DomainError("wcomp_apply requires |z| <= 1");
    return op.weight().value(z) * f.value(op.map().value(z));
}

Complex power_apply(const WeightedCompositionOp& op, int m, const AnalyticFunction& f, Complex z) {
    if (m < 0) throw DomainError("power_apply requires m >= 0");
    if (std::abs(z) > 1.0 + 1e-12) throw DomainError("power_apply requires |z| <= 1");
    Complex product = 1.0;
    for (int j = 0; j < m; ++j) {
        product *= op.weight().value(z);
        z = op.map().value(z);
    }
    return product * f.value(z);
}

double binomial_identity_residual(const WeightedCompositionOp& op, Complex lambda, int m, const AnalyticFunction& f,
                                  Complex z) {
    if (m < 0) throw DomainError("binomial identity requires m >= 0");
    if (m > 30) throw DomainError("binomial overflow regime: m > 30");
    std::vector<Complex> orbit(static_cast<std::size_t>(m) + 1);
    orbit[0] = z;
    for (int j = 1; j <= m; ++j) orbit[j] = op.map().value(orbit[j - 1]);

    // A: g_k(w_j) = lambda g_{k-1}(w_j) - u(w_j) g_{k-1}(w_{j+1}) on the orbit w_j = phi_j(z).
    std::vector<Complex> g(orbit.size());
    for (std::size_t j = 0; j < orbit.size(); ++j) g[j] = f.value(orbit[j]);
    for (int k = 1; k <= m; ++k)
        for (int j = 0; j + k <= m; ++j) g[j] = lambda * g[j] - op.weight().value(orbit[j]) * g[j + 1];
    const Complex a = g[0];

    // B: the binomial expansion with explicit cocycles.
    Complex b{};
    Complex cocycle = 1.0;
    double binom = 1.0;
    for (int k = 0; k <= m; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        b += binom * std::pow(lambda, m - k) * sign * cocycle * f.value(orbit[k]);
        cocycle *= op.weight().value(orbit[k]);
        binom = binom * (m - k) / (k + 1);
    }
    return std::abs(a - b) / (1.0 + std::abs(a));
}

BoundednessVerdict check_bounded(const WeightedCompositionOp& op, const DiscGrid& grid) {
    const auto f = make_function(op.weight());
    if (op.space() == Space::Dirichlet) {
        auto v = refine_and_judge(grid, {"sup_u", "sup_du"}, [&](const DiscGrid& g) { return dirichlet_witnesses(f, g); });
        if (!op.map().is_automorphism()) {
            v.verdict = Verdict::Inconclusive;
            v.reason = "Dirichlet boundedness is decided only for automorphic symbols with weights pole-free on the closed disc";
        } else {
            v.verdict = Verdict::Bounded;
            v.reason = "weight pole-free on the closed disc and phi an automorphism";
        }
        return v;
    }
    auto v = refine_and_judge(grid, {"c24", "c25"},
                              [&](const DiscGrid& g) { return as_list(condition_suprema(f, op.map(), g), true); });
    v.reason = "Bloch weighted composition conditions on the weight derivative and the distortion ratio";
    return v;
}

BoundednessVerdict check_multiplier(const AnalyticFunction& u, Space space, const DiscGrid& grid,
                                    bool boundary_continuous) {
    if (space == Space::Dirichlet) {
        BoundednessVerdict v;
        v.reason = "Dirichlet multipliers are decided only for rational weights pole-free on the closed disc";
        return v;
    }
    const SelfMap identity(MoebiusTransform::identity());
    auto v = refine_and_judge(grid, {"c26", "sup_u"}, [&](const DiscGrid& g) {
        return as_list(condition_suprema(u, identity, g, boundary_continuous), false);
    });
    v.reason = "Bloch multiplier conditions on the weight derivative and sup norm";
    return v;
}

BoundednessVerdict check_multiplier(const RationalSymbol& u, Space space, const DiscGrid& grid) {
    const auto f = make_function(u);
    if (space == Space::Dirichlet) {
        auto v = refine_and_judge(grid, {"sup_u", "sup_du"}, [&](const DiscGrid& g) { return dirichlet_witnesses(f, g); });
        v.verdict = Verdict::Bounded;
        v.reason = "weight pole-free on the closed disc: u and u' are bounded";
        return v;
    }
    return check_multiplier(f, space, grid, true);
}

InvertibilityResult check_invertible(const WeightedCompositionOp& op, const DiscGrid& grid, double threshold) {
    const BoundednessVerdict bounded = op.certificate() ? *op.certificate() : check_bounded(op, grid);
    if (bounded.verdict != Verdict::Bounded)
        throw PreconditionError("invertibility requires a bounded operator; boundedness verdict: " +
                                std::string(to_string(bounded.verdict)));
    InvertibilityResult out;
    out.multiplier = check_multiplier(op.weight(), op.space(), grid);
    out.inf_modulus = inf_modulus(op.weight(), grid);
    std::ostringstream why;
    if (out.multiplier.verdict != Verdict::Bounded) why << "weight is not certified as a multiplier; ";
    if (!(out.inf_modulus > threshold))
        why << "weight is not bounded away from zero (grid minimum " << out.inf_modulus << " <= " << threshold << "); ";
    if (!op.map().is_moebius() || !op.map().moebius().is_disc_automorphism()) why << "phi is not a disc automorphism; ";
    out.reason = why.str();
    out.invertible = out.reason.empty();
    if (out.invertible) {
        const MoebiusTransform inv = op.map().moebius().inverse();
        out.inverse = WeightedCompositionOp(compose_with_moebius(op.weight(), inv).reciprocal(), SelfMap(inv), op.space());
        out.reason = "weight is a multiplier bounded away from zero and phi is an automorphism";
    }
    return out;
}

double composition_norm_bound(const MoebiusTransform& phi, int n, Space space) {
    if (n < 0) throw DomainError("composition_norm_bound requires n >= 0");
    if (!phi.is_disc_automorphism()) throw DomainError("composition_norm_bound requires a disc automorphism");
    if (space == Space::Bloch) return 1.0 + iterate(phi, n).distance_from_origin();
    return std::sqrt(2.0) * std::sqrt(1.0 + phi.distance_from_origin() * n);
}

double composition_norm_linear_bound(const MoebiusTransform& phi, int n) {
    if (n < 0) throw DomainError("composition_norm_linear_bound requires n >= 0");
    return 1.0 + n * phi.distance_from_origin();
}

std::vector<InvariantTestFunction> default_test_family(Space space) {
    std::vector<InvariantTestFunction> family;
    if (space == Space::Bloch) {
        family.push_back({make_function(Polynomial::constant(1.0)), 0.0});
        for (int j = 0; j < 8; ++j) family.push_back({atanh_function(std::polar(1.0, 2.0 * pi * j / 8)), 1.0});
        for (double r : {0.5, 0.9, 0.99})
            for (int j = 0; j < 8; ++j) {
                const LogWeightFunction fa(std::polar(r, 2.0 * pi * j / 8));
                family.push_back({make_function(fa), fa.exact_bloch_norm() - 1.0});
            }
        for (int k = 1; k <= 10; ++k) family.push_back({monomial_function(k), monomial_bloch_seminorm(k)});
    } else {
        for (int k = 1; k <= 10; ++k) family.push_back({monomial_function(k), static_cast<double>(k)});
        for (double c : {0.5, 1.0, 2.0})
            for (int j = 0; j < 4; ++j)
                family.push_back({make_function(Polynomial{std::polar(c, pi * j / 2), 1.0}), 1.0});
    }
    return family;
}

CompositionLowerBound composition_lower_bound(const MoebiusTransform& psi, Space space,
                                              const std::vector<InvariantTestFunction>& family) {
    if (!psi.is_disc_automorphism()) throw DomainError("composition_lower_bound requires a disc automorphism");
    const Complex w = psi.b() / psi.d();
    CompositionLowerBound best{0.0, ""};
    for (const auto& t : family) {
        const Complex fw = t.f.value(w);
        if (!std::isfinite(std::abs(fw)) || std::abs(t.f.derivative(w)) > 1e8) continue;
        const double f0 = std::abs(t.f.value(0.0));
        double ratio;
        if (space == Space::Bloch) {
            const double norm = f0 + t.invariant_part;
            if (norm == 0.0) continue;
            ratio = (std::abs(fw) + t.invariant_part) / norm;
        } else {
            const double norm_sq = f0 * f0 + t.invariant_part;
            if (norm_sq == 0.0) continue;
            ratio = std::sqrt((std::norm(fw) + t.invariant_part) / norm_sq);
        }
        if (ratio > best.value) best = {ratio, t.f.label};
    }
    return best;
}

TruncationMatrix taylor_truncation(const WeightedCompositionOp& op, int n) {
    if (n < 1 || n > 512) throw DomainError("taylor_truncation requires 1 <= N <= 512");
    const auto N = static_cast<std::size_t>(n);
    const RationalSymbol phi = op.map().as_symbol();
    const auto phi_series = series_divide(phi.numerator().coefficients(), phi.denominator().coefficients(), N);
    auto column = series_divide(op.weight().numerator().coefficients(), op.weight().denominator().coefficients(), N);
    TruncationMatrix m{n, ComplexMatrix(N, N)};
    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t i = 0; i < N; ++i) m.entries(i, k) = column[i];
        if (k + 1 < N) column = series_multiply(column, phi_series, N);
    }
    return m;
}

}  // namespace wcop
