#pragma once

#include "svk/check.hpp"
#include "svk/classes.hpp"
#include "svk/manifold_spec.hpp"
#include "svk/sampling.hpp"
#include "svk/schouten.hpp"
#include "svk/structure.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace svk::classify {

inline constexpr double kDefaultTolerance = 1e-6;
/// Below this over the whole sample a class function counts as vanishing.
inline constexpr double kNonzeroFloor = 1e-6;

/// Trace estimates of α and β, each with exact first partials.
struct AlphaBeta {
    Dual alpha;
    Dual beta;
};

/// α̂ = εμ tr(φL)/(2n), β̂ = −tr(L)/(2n) for dim = 2n + 1.
AlphaBeta estimate_alpha_beta(const structure::StructureJets& s);
AlphaBeta estimate_alpha_beta(const ManifoldSpec& spec, std::span<const double> point);

/// Point-wise residuals of every class condition and the related identities.
struct ClassResiduals {
    std::array<double, kAllClasses.size()> classes{};
    double contact_form = 0.0;  // dη = α̂Φ
    double commutator = 0.0;    // Lφ = φL
    double adapted_normal = 0.0;  // (∇~_{φX}φ)φY + μ(∇~_Xφ)Y = 0
    double norma = 0.0;        // (∇_{φX}φ)Y − φ(∇_Xφ)Y − εμg(∇_Xξ,Y)ξ = 0
    double normcond = 0.0;     // (∇_{φX}φ)φY + μ(∇_Xφ)Y + μη(Y)φ∇_Xξ = 0
    double ncon_fit = 0.0;     // L = εα̂φ − β̂(I − ξ⊗η)
    double gener = 0.0;        // the ∇~ form of the left side above rewritten through ∇
};

ClassResiduals class_residuals(const schouten::SvkJets& j, const AlphaBeta& ab);

struct ClassificationReport {
    std::array<Check, kAllClasses.size()> residuals;
    Check contact_form;
    Check commutator;
    Check adapted_normal;
    std::vector<double> alpha_hat;
    std::vector<double> beta_hat;
    double max_abs_alpha = 0.0;
    double max_abs_beta = 0.0;
    double max_dalpha = 0.0;               // max |dα̂|
    double max_dbeta_defect = 0.0;         // max |dβ̂ − β̂′η|
    double max_dalpha_xi = 0.0;            // max |dα̂(ξ) + 2α̂β̂|
    std::array<bool, kAllClasses.size()> verdict{};
    std::array<std::string, kAllClasses.size()> notes;
    double tolerance = kDefaultTolerance;

    [[nodiscard]] bool has(StructureClass c) const { return verdict[static_cast<std::size_t>(c)]; }
    [[nodiscard]] const Check& residual(StructureClass c) const { return residuals[static_cast<std::size_t>(c)]; }
    [[nodiscard]] std::vector<StructureClass> classes() const;
};

/// Refuses to run (StructureDefect) when the axiom gate fails on the sample.
ClassificationReport classify_structure(const ManifoldSpec& spec, const Sample& sample,
                                        double tol = kDefaultTolerance);

/// Tangent-vector stream for point `index`, independent of evaluation order.
Rng point_rng(std::uint64_t seed, std::size_t index);

CheckList check_dim3_identities(const ManifoldSpec& spec, const Sample& sample, double tol = kDefaultTolerance);

/// Curvature theorems of the classes in `classes` (dim >= 5 only; empty otherwise).
CheckList check_class_theorems(const ManifoldSpec& spec, const Sample& sample,
                               std::span<const StructureClass> classes, std::uint64_t seed,
                               double tol = kDefaultTolerance);

/// Random valid structure on a 3-dimensional chart: a perturbed coframe θ,
/// g = s1 θ1² + s2 θ2² + ε θ3², η = θ3, ξ = E3 and φ = E2⊗θ1 + μ E1⊗θ2 where
/// (E_a) is the dual frame. s1 = s2 for μ = −1 and s1 = −s2 for μ = +1.
ManifoldSpec random_dim3_structure(Rng& rng, Sign epsilon, Sign mu, double amplitude = 0.15);

}  // namespace svk::classify
