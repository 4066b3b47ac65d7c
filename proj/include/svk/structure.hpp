#pragma once

// Almost (para)contact metric layer. Layouts (coordinate frame, see geometry.hpp):
//   phi(k, j)          = component k of φ(∂j)
//   nabla_xi(k, i)     = (∇_{∂i} ξ)^k
//   nabla_eta(j, i)    = (∇_{∂i} η)(∂j)
//   shape(k, i)        = (L ∂i)^k = −(∇_{∂i} ξ)^k
//   nabla_shape(k,j,i) = ((∇_{∂i} L) ∂j)^k
//   nabla_phi(k, j, i) = ((∇_{∂i} φ) ∂j)^k

#include "svk/check.hpp"
#include "svk/geometry.hpp"
#include "svk/manifold_spec.hpp"
#include "svk/sampling.hpp"

#include <span>
#include <stdexcept>

namespace svk::structure {

geometry::ExprTensorField phi_field(const ManifoldSpec& spec);
geometry::ExprTensorField xi_field(const ManifoldSpec& spec);
geometry::ExprTensorField eta_field(const ManifoldSpec& spec);

/// Everything first order about the structure at one point. Jet members carry
/// exact first partials, so second-order quantities (∇L, ∂Γ~) need no differencing.
struct StructureJets {
    std::size_t dim = 0;
    double epsilon = 1.0;
    double mu = -1.0;
    geometry::MetricJets metric;
    TensorJet phi;
    TensorJet xi;
    TensorJet eta;
    TensorJet nabla_xi;
    TensorJet nabla_eta;
    TensorJet shape;
    TensorValue nabla_shape;
    TensorValue nabla_phi;

    [[nodiscard]] TensorValue g() const { return values(metric.g); }
    [[nodiscard]] TensorValue g_inv() const { return values(metric.g_inv); }
    [[nodiscard]] TensorValue gamma() const { return values(metric.gamma); }
};

StructureJets structure_jets(const ManifoldSpec& spec, std::span<const double> point);

/// Raised when the structure gate refuses to run dependent computations.
class StructureDefect : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kAxiomTolerance = 1e-8;
inline constexpr double kAxiomHardLimit = 1e-6;

/// Max residual per axiom over the sample. A singular metric at a sample
/// point becomes a failed check carrying the point.
CheckList validate_structure(const ManifoldSpec& spec, const Sample& sample);

enum class Gate { pass, warn, fail };

/// pass below 1e-8, warn up to 1e-6, fail beyond (or on any evaluation error).
Gate structure_gate(const CheckList& axioms);

/// Φ_ij = Φ(∂i, ∂j) = g(∂i, φ∂j)
TensorValue fundamental_form(const TensorValue& g, const TensorValue& phi);
TensorValue fundamental_form(const ManifoldSpec& spec, std::span<const double> point);

/// Numerical rank with singular values below 1e-8 of the largest treated as zero.
std::size_t algebraic_rank(const TensorValue& form);

TensorValue nabla_phi(const ManifoldSpec& spec, std::span<const double> point);

/// N(k, i, j) = ([φ,φ](∂i, ∂j))^k, assembled from Lie brackets of φ∂i, φ∂j.
TensorValue nijenhuis(const TensorJet& phi);
TensorValue nijenhuis(const ManifoldSpec& spec, std::span<const double> point);

/// [φ,φ] − 2μ dη ⊗ ξ
TensorValue normality_tensor(const StructureJets& s);
TensorValue normality_tensor(const ManifoldSpec& spec, std::span<const double> point);

}  // namespace svk::structure
