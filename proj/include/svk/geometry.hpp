#pragma once

// Levi-Civita machinery on a chart.
//
// Index conventions used throughout the engine:
//   gamma(k, i, j)      = Γ^k_ij with ∇_{∂i} ∂j = Γ^k_ij ∂k (first lower index is the direction)
//   dgamma(k, i, j, l)  = ∂_l Γ^k_ij
//   ∇F                  = one extra trailing covariant slot holding the direction
//   op(l, i, j, k)      = (R(∂i, ∂j) ∂k)^l with R(X,Y) = [∇X, ∇Y] − ∇[X,Y]
//   down(i, j, k, w)    = R(∂i, ∂j, ∂k, ∂w) = g(R(∂i, ∂j) ∂k, ∂w)

#include "svk/expr.hpp"
#include "svk/manifold_spec.hpp"
#include "svk/tensor.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace svk::geometry {

class SingularMetric : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateSection : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PointFrame {
    std::vector<double> point;
    TensorValue metric;
    TensorValue inverse_metric;
    Signature signature;
};

struct ConnectionJet {
    TensorValue gamma;
    TensorValue dgamma;
};

ConnectionJet to_connection_jet(const TensorJet& gamma);

/// Metric, inverse metric and Christoffel symbols with exact first partials.
struct MetricJets {
    std::size_t dim = 0;
    TensorJet g;
    TensorJet g_inv;
    TensorJet gamma;
};

MetricJets metric_jets(const ManifoldSpec& spec, std::span<const double> point);

/// Number of negative and positive eigenvalues of a symmetric matrix.
Signature signature_of(const TensorValue& g);

PointFrame metric_frame(const ManifoldSpec& spec, std::span<const double> point);
ConnectionJet christoffel(const ManifoldSpec& spec, std::span<const double> point);

/// An expression-valued tensor field, components in row-major slot order.
struct ExprTensorField {
    std::vector<Slot> variance;
    std::vector<expr::Expr> components;
};

/// Field components (with first partials) and their first partials (with
/// second partials, trailing slot = direction).
struct FieldJets {
    TensorJet value;
    TensorJet partial;
};

FieldJets evaluate_field(const ExprTensorField& field, std::size_t dim, std::span<const double> point);

/// Coordinate covariant derivative of `field` along the connection `gamma`.
/// `field_partials` holds ∂_l of each component in a trailing slot. Works for
/// connections with torsion; the derivative direction becomes the last slot.
template <class T>
Tensor<T> covariant_derivative(const Tensor<T>& field, const Tensor<T>& field_partials, const Tensor<T>& gamma)
{
    const std::size_t n = field.dim();
    const std::size_t r = field.rank();
    auto var = field.variance();
    var.push_back(Slot::down);
    Tensor<T> out(n, var);
    for (std::size_t k = 0; k < field.size(); ++k) {
        auto idx = field.unflatten(k);
        for (std::size_t l = 0; l < n; ++l) {
            T acc = field_partials.at_flat(k * n + l);
            for (std::size_t s = 0; s < r; ++s) {
                const std::size_t a = idx[s];
                for (std::size_t m = 0; m < n; ++m) {
                    idx[s] = m;
                    std::size_t f = 0;
                    for (auto i : idx) f = f * n + i;
                    if (field.variance()[s] == Slot::up) {
                        acc += gamma(a, l, m) * field.at_flat(f);
                    } else {
                        acc -= gamma(m, l, a) * field.at_flat(f);
                    }
                }
                idx[s] = a;
            }
            out.at_flat(k * n + l) = acc;
        }
    }
    return out;
}

/// Covariant derivative of a jet tensor, using its own first partials.
TensorValue covariant_derivative(const TensorJet& field, const TensorValue& gamma);

TensorValue covariant_derivative(const ManifoldSpec& spec, const ExprTensorField& field,
                                 std::span<const double> point);

struct Curvature {
    TensorValue op;
    TensorValue down;
};

/// Curvature operator of an arbitrary (possibly torsionful) connection.
TensorValue curvature_operator(const ConnectionJet& c);
TensorValue lower_curvature(const TensorValue& op, const TensorValue& g);
Curvature riemann(const ManifoldSpec& spec, std::span<const double> point);

struct RicciScalar {
    TensorValue ricci;
    double scalar = 0.0;
};

/// Ricci as the trace over the first operator slot, scalar via g^{-1}.
RicciScalar ricci_scalar(const TensorValue& op, const TensorValue& g_inv);
RicciScalar ricci_scalar(const ManifoldSpec& spec, std::span<const double> point);

double inner(const TensorValue& g, std::span<const double> x, std::span<const double> y);

/// g(X,X)g(Y,Y) − g(X,Y)², after the degeneracy guard.
double section_gram(const TensorValue& g, std::span<const double> x, std::span<const double> y);

/// Evaluates an all-covariant tensor on the given vectors.
double evaluate(const TensorValue& t, std::span<const std::vector<double>> vectors);

double sectional(const TensorValue& down, const TensorValue& g, std::span<const double> x,
                 std::span<const double> y);
double sectional(const ManifoldSpec& spec, std::span<const double> point, std::span<const double> x,
                 std::span<const double> y);

/// [X,Y]^k = X^i ∂_i Y^k − Y^i ∂_i X^k
TensorValue lie_bracket(const TensorJet& x, const TensorJet& y);
TensorValue lie_bracket(const ManifoldSpec& spec, const ExprTensorField& x, const ExprTensorField& y,
                        std::span<const double> point);

/// Exterior derivative with the ½ (one-forms) and ⅓ (two-forms) alternating weights:
/// dη(X,Y) = ½(Xη(Y) − Yη(X) − η([X,Y])), dω(X,Y,Z) = ⅓ of the cyclic sum.
TensorValue exterior_derivative(const TensorJet& form);
TensorValue exterior_derivative(const ManifoldSpec& spec, const ExprTensorField& form,
                                std::span<const double> point);

/// (η∧ω)(X,Y,Z) = ⅓(η(X)ω(Y,Z) + η(Y)ω(Z,X) + η(Z)ω(X,Y))
TensorValue wedge(const TensorValue& one_form, const TensorValue& two_form);

}  // namespace svk::geometry
