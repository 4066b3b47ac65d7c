#include "svk/geometry.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace svk::geometry {

namespace {

Eigen::MatrixXd to_eigen(const TensorValue& m)
{
    const auto n = static_cast<Eigen::Index>(m.dim());
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m(i, j);
    }
    return out;
}

void check_point(const ManifoldSpec& spec, std::span<const double> point)
{
    if (point.size() != spec.dimension) throw std::invalid_argument("point dimension does not match chart");
}

}  // namespace

ConnectionJet to_connection_jet(const TensorJet& gamma)
{
    return {values(gamma), partials(gamma)};
}

MetricJets metric_jets(const ManifoldSpec& spec, std::span<const double> point)
{
    check_point(spec, point);
    const std::size_t n = spec.dimension;
    MetricJets mj;
    mj.dim = n;
    mj.g = TensorJet(n, slots({Slot::down, Slot::down}));
    TensorJet dg(n, slots({Slot::down, Slot::down, Slot::down}));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const expr::Jet2 jet = expr::eval_jet2(spec.g(i, j), point);
            mj.g(i, j) = mj.g(j, i) = jet.first();
            for (std::size_t l = 0; l < n; ++l) dg(i, j, l) = dg(j, i, l) = jet.partial(l);
        }
    }

    const TensorValue gv = values(mj.g);
    const Eigen::MatrixXd ge = to_eigen(gv);
    const double scale = std::max(max_abs(gv), 1e-300);
    const double det = ge.determinant();
    if (!(std::abs(det) >= 1e-12 * std::pow(scale, static_cast<double>(n)))) {
        throw SingularMetric("singular metric (det = " + expr::format_number(det) + ")");
    }
    const Eigen::MatrixXd gi = ge.inverse();

    // ∂_l g^{ab} = −g^{ac} ∂_l g_{cd} g^{db}
    mj.g_inv = TensorJet(n, slots({Slot::up, Slot::up}));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            Dual& out = mj.g_inv(a, b);
            out.v = gi(a, b);
            for (std::size_t l = 0; l < n; ++l) {
                double acc = 0.0;
                for (std::size_t c = 0; c < n; ++c) {
                    for (std::size_t d = 0; d < n; ++d) acc += gi(a, c) * mj.g(c, d).d[l] * gi(d, b);
                }
                out.d[l] = -acc;
            }
        }
    }

    // Christoffel symbols of the first kind, then raised.
    TensorJet first(n, slots({Slot::down, Slot::down, Slot::down}));
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                Dual v = 0.5 * (dg(j, l, i) + dg(i, l, j) - dg(i, j, l));
                first(l, i, j) = v;
                first(l, j, i) = v;
            }
        }
    }
    mj.gamma = TensorJet(n, slots({Slot::up, Slot::down, Slot::down}));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                Dual acc;
                for (std::size_t l = 0; l < n; ++l) acc += mj.g_inv(k, l) * first(l, i, j);
                mj.gamma(k, i, j) = acc;
                mj.gamma(k, j, i) = acc;
            }
        }
    }
    return mj;
}

Signature signature_of(const TensorValue& g)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(g), Eigen::EigenvaluesOnly);
    Signature s;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (es.eigenvalues()(i) < 0) {
            ++s.negative;
        } else {
            ++s.positive;
        }
    }
    return s;
}

PointFrame metric_frame(const ManifoldSpec& spec, std::span<const double> point)
{
    const MetricJets mj = metric_jets(spec, point);
    PointFrame f;
    f.point.assign(point.begin(), point.end());
    f.metric = values(mj.g);
    f.inverse_metric = values(mj.g_inv);
    f.signature = signature_of(f.metric);
    return f;
}

ConnectionJet christoffel(const ManifoldSpec& spec, std::span<const double> point)
{
    return to_connection_jet(metric_jets(spec, point).gamma);
}

FieldJets evaluate_field(const ExprTensorField& field, std::size_t dim, std::span<const double> point)
{
    FieldJets out;
    out.value = TensorJet(dim, field.variance);
    if (field.components.size() != out.value.size()) throw std::invalid_argument("field component count mismatch");
    auto var = field.variance;
    var.push_back(Slot::down);
    out.partial = TensorJet(dim, var);
    for (std::size_t k = 0; k < field.components.size(); ++k) {
        const expr::Jet2 jet = expr::eval_jet2(field.components[k], point);
        out.value.at_flat(k) = jet.first();
        for (std::size_t l = 0; l < dim; ++l) out.partial.at_flat(k * dim + l) = jet.partial(l);
    }
    return out;
}

TensorValue covariant_derivative(const TensorJet& field, const TensorValue& gamma)
{
    return covariant_derivative(values(field), partials(field), gamma);
}

TensorValue covariant_derivative(const ManifoldSpec& spec, const ExprTensorField& field,
                                 std::span<const double> point)
{
    const MetricJets mj = metric_jets(spec, point);
    const FieldJets fj = evaluate_field(field, spec.dimension, point);
    return covariant_derivative(fj.value, values(mj.gamma));
}

TensorValue curvature_operator(const ConnectionJet& c)
{
    const std::size_t n = c.gamma.dim();
    TensorValue op(n, slots({Slot::up, Slot::down, Slot::down, Slot::down}));
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    double acc = c.dgamma(l, j, k, i) - c.dgamma(l, i, k, j);
                    for (std::size_t m = 0; m < n; ++m) {
                        acc += c.gamma(l, i, m) * c.gamma(m, j, k) - c.gamma(l, j, m) * c.gamma(m, i, k);
                    }
                    op(l, i, j, k) = acc;
                }
            }
        }
    }
    return op;
}

TensorValue lower_curvature(const TensorValue& op, const TensorValue& g)
{
    const std::size_t n = op.dim();
    TensorValue down(n, slots({Slot::down, Slot::down, Slot::down, Slot::down}));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t w = 0; w < n; ++w) {
                    double acc = 0.0;
                    for (std::size_t l = 0; l < n; ++l) acc += g(w, l) * op(l, i, j, k);
                    down(i, j, k, w) = acc;
                }
            }
        }
    }
    return down;
}

Curvature riemann(const ManifoldSpec& spec, std::span<const double> point)
{
    const MetricJets mj = metric_jets(spec, point);
    Curvature c;
    c.op = curvature_operator(to_connection_jet(mj.gamma));
    c.down = lower_curvature(c.op, values(mj.g));
    return c;
}

RicciScalar ricci_scalar(const TensorValue& op, const TensorValue& g_inv)
{
    const std::size_t n = op.dim();
    RicciScalar rs;
    rs.ricci = TensorValue(n, slots({Slot::down, Slot::down}));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) acc += op(i, i, j, k);
            rs.ricci(j, k) = acc;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) rs.scalar += g_inv(j, k) * rs.ricci(j, k);
    }
    return rs;
}

RicciScalar ricci_scalar(const ManifoldSpec& spec, std::span<const double> point)
{
    const MetricJets mj = metric_jets(spec, point);
    return ricci_scalar(curvature_operator(to_connection_jet(mj.gamma)), values(mj.g_inv));
}

double inner(const TensorValue& g, std::span<const double> x, std::span<const double> y)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < g.dim(); ++i) {
        for (std::size_t j = 0; j < g.dim(); ++j) acc += g(i, j) * x[i] * y[j];
    }
    return acc;
}

double section_gram(const TensorValue& g, std::span<const double> x, std::span<const double> y)
{
    const double q = inner(g, x, x) * inner(g, y, y) - inner(g, x, y) * inner(g, x, y);
    double nx = 0.0;
    double ny = 0.0;
    for (std::size_t i = 0; i < g.dim(); ++i) {
        nx += x[i] * x[i];
        ny += y[i] * y[i];
    }
    if (!(std::abs(q) > 1e-8 * nx * ny)) throw DegenerateSection("degenerate section");
    return q;
}

double evaluate(const TensorValue& t, std::span<const std::vector<double>> vectors)
{
    if (vectors.size() != t.rank()) throw std::invalid_argument("evaluate: need one vector per slot");
    double acc = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double c = t.at_flat(k);
        if (c == 0.0) continue;
        auto idx = t.unflatten(k);
        double term = c;
        for (std::size_t s = 0; s < idx.size(); ++s) term *= vectors[s][idx[s]];
        acc += term;
    }
    return acc;
}

double sectional(const TensorValue& down, const TensorValue& g, std::span<const double> x,
                 std::span<const double> y)
{
    const double q = section_gram(g, x, y);
    const std::vector<double> xv(x.begin(), x.end());
    const std::vector<double> yv(y.begin(), y.end());
    const std::vector<std::vector<double>> args{xv, yv, yv, xv};
    return evaluate(down, args) / q;
}

double sectional(const ManifoldSpec& spec, std::span<const double> point, std::span<const double> x,
                 std::span<const double> y)
{
    const MetricJets mj = metric_jets(spec, point);
    const TensorValue g = values(mj.g);
    const TensorValue down = lower_curvature(curvature_operator(to_connection_jet(mj.gamma)), g);
    return sectional(down, g, x, y);
}

TensorValue lie_bracket(const TensorJet& x, const TensorJet& y)
{
    const std::size_t n = x.dim();
    TensorValue out(n, slots({Slot::up}));
    for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += x(i).v * y(k).d[i] - y(i).v * x(k).d[i];
        out(k) = acc;
    }
    return out;
}

TensorValue lie_bracket(const ManifoldSpec& spec, const ExprTensorField& x, const ExprTensorField& y,
                        std::span<const double> point)
{
    check_point(spec, point);
    return lie_bracket(evaluate_field(x, spec.dimension, point).value, evaluate_field(y, spec.dimension, point).value);
}

TensorValue exterior_derivative(const TensorJet& form)
{
    const std::size_t n = form.dim();
    for (Slot s : form.variance()) {
        if (s != Slot::down) throw std::invalid_argument("exterior derivative needs a covariant form");
    }
    if (form.rank() == 1) {
        TensorValue out(n, slots({Slot::down, Slot::down}));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) out(i, j) = 0.5 * (form(j).d[i] - form(i).d[j]);
        }
        return out;
    }
    if (form.rank() == 2) {
        double asym = 0.0;
        double scale = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                asym = std::max(asym, std::abs(form(i, j).v + form(j, i).v));
                scale = std::max(scale, std::abs(form(i, j).v));
            }
        }
        if (asym > 1e-10 * scale) throw std::invalid_argument("exterior derivative: two-form is not antisymmetric");
        TensorValue out(n, slots({Slot::down, Slot::down, Slot::down}));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    out(i, j, k) = (form(j, k).d[i] + form(k, i).d[j] + form(i, j).d[k]) / 3.0;
                }
            }
        }
        return out;
    }
    throw std::invalid_argument("exterior derivative supports rank 1 and 2 forms");
}

TensorValue exterior_derivative(const ManifoldSpec& spec, const ExprTensorField& form, std::span<const double> point)
{
    check_point(spec, point);
    return exterior_derivative(evaluate_field(form, spec.dimension, point).value);
}

TensorValue wedge(const TensorValue& one_form, const TensorValue& two_form)
{
    const std::size_t n = one_form.dim();
    TensorValue out(n, slots({Slot::down, Slot::down, Slot::down}));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                out(i, j, k) = (one_form(i) * two_form(j, k) + one_form(j) * two_form(k, i) +
                                one_form(k) * two_form(i, j)) / 3.0;
            }
        }
    }
    return out;
}

}  // namespace svk::geometry
