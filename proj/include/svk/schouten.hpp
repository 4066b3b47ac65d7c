#pragma once

// The adapted (Schouten-van Kampen) connection ∇~ of an almost (para)contact
// metric structure, its second fundamental form, torsion and curvature, and
// the relation formulas tying them to the Levi-Civita data.
//
// Layouts follow geometry.hpp and structure.hpp; in addition
//   gamma_tilde(k, i, j) = Γ~^k_ij with ∇~_{∂i} ∂j = Γ~^k_ij ∂k
//   B(k, i, j), T(k, i, j) = components of B(∂i, ∂j), T~(∂i, ∂j)
//   D(k, i, j)           = ((∇_{∂i} L)∂j − (∇_{∂j} L)∂i)^k

#include "svk/geometry.hpp"
#include "svk/structure.hpp"

#include <span>
#include <vector>

namespace svk::schouten {

using structure::StructureJets;

struct Projection {
    std::vector<double> horizontal;
    std::vector<double> vertical;
};

/// X^h = X − η(X)ξ, X^v = η(X)ξ
Projection project(const StructureJets& s, std::span<const double> x);
Projection project(const ManifoldSpec& spec, std::span<const double> point, std::span<const double> x);

struct ShapeOperatorJet {
    TensorValue L;
    TensorValue nablaL;
};

ShapeOperatorJet shape_operator(const ManifoldSpec& spec, std::span<const double> point);

/// ∇~_X Y = ∇_X Y − η(Y)∇_X ξ + (∇_X η)(Y)ξ, with exact first partials.
TensorJet svk_connection(const StructureJets& s);
/// ∇~_X Y = (∇_X Y^h)^h + (∇_X Y^v)^v, built from ∂η rather than ∇η.
TensorValue svk_connection_projected(const StructureJets& s);

/// Everything the curvature checks need at one point, computed once.
struct SvkJets {
    StructureJets base;
    TensorJet gamma_tilde;
    geometry::Curvature levi_civita;
    geometry::Curvature adapted;
};

SvkJets svk_jets(const ManifoldSpec& spec, std::span<const double> point);

/// B(X,Y) = η(Y)∇_X ξ − (∇_X η)(Y)ξ
TensorValue second_fundamental_form(const StructureJets& s);
/// B(X,Y) = −η(Y)LX + εg(LX,Y)ξ
TensorValue second_fundamental_form_shape(const StructureJets& s);
/// B = ∇ − ∇~ from the two coefficient tables.
TensorValue connection_difference(const TensorValue& gamma, const TensorValue& gamma_tilde);

/// T~(X,Y) = η(X)∇_Y ξ − η(Y)∇_X ξ + 2dη(X,Y)ξ
TensorValue svk_torsion(const StructureJets& s);
/// Torsion of an arbitrary coefficient table: Γ^k_ij − Γ^k_ji.
TensorValue torsion_of(const TensorValue& gamma);
/// −2A(B) with A(B)(X,Y) = ½(B(X,Y) − B(Y,X)).
TensorValue minus_two_alternation(const TensorValue& b);

/// The unique metric connection with torsion T:
/// g(∇^_X Y, Z) = g(∇_X Y, Z) + ½(g(T(X,Y),Z) − g(T(X,Z),Y) − g(T(Y,Z),X)).
TensorValue metric_connection_from_torsion(const TensorValue& g, const TensorValue& g_inv,
                                           const TensorValue& gamma, const TensorValue& torsion);
TensorValue metric_connection_from_torsion(const ManifoldSpec& spec, const TensorValue& torsion,
                                           std::span<const double> point);

/// Covariant derivatives of g, ξ, η along ∇~ (all vanish for the adapted connection).
TensorValue svk_nabla_metric(const SvkJets& j);
TensorValue svk_nabla_xi(const SvkJets& j);
TensorValue svk_nabla_eta(const SvkJets& j);

/// D(k, i, j), the antisymmetrised ∇L.
TensorValue shape_curl(const StructureJets& s);

/// R~ from R, ∇ξ, ∇η (operator form without L).
TensorValue curvature_relation_plain(const SvkJets& j);
/// R~ from R, ∇L, L (operator form).
TensorValue curvature_relation_operator(const SvkJets& j);
/// R~ from R, ∇L, L (all-covariant form).
TensorValue curvature_relation_covariant(const SvkJets& j);

struct ShapeIdentities {
    double nabla_eta = 0.0;        // (∇_X η)(Y) = −εg(LX,Y)
    double curvature_xi = 0.0;     // R(X,Y)ξ = −(∇_X L)Y + (∇_Y L)X
    double eta_curvature = 0.0;    // η(R(X,Y)Z) = εg(D(X,Y), Z)
    double eta_shape = 0.0;        // η(LY) = 0
    double nabla_shape_xi = 0.0;   // g((∇_X L)Y, ξ) = g(LX, LY)
};

ShapeIdentities shape_identities(const SvkJets& j);

struct SvkRicciScalar {
    TensorValue ricci;
    double scalar = 0.0;
    TensorValue ricci_relation;  // right-hand side of the Ricci relation
    double scalar_relation = 0.0;
    double divergence_xi = 0.0;
};

SvkRicciScalar svk_ricci_scalar(const SvkJets& j);

struct SvkSectional {
    double levi_civita = 0.0;
    double adapted = 0.0;
    double relation = 0.0;  // K + Q^{-1}(−η(X)R(X,Y,Y,ξ) − η(Y)R(Y,X,X,ξ) + ε((∇_Xη)(X)(∇_Yη)(Y) − (∇_Xη)(Y)(∇_Yη)(X)))
};

SvkSectional svk_sectional(const SvkJets& j, std::span<const double> x, std::span<const double> y);

/// ∇~φ computed by applying Γ~ to the φ field.
TensorValue svk_nabla_phi(const SvkJets& j);
/// ∇~φ from (∇_Xφ)Y + η(Y)φ∇_X ξ − εg(φ∇_X ξ, Y)ξ.
TensorValue svk_nabla_phi_formula(const StructureJets& s);

}  // namespace svk::schouten
