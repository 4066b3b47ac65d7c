#include "svk/schouten.hpp"

#include <cmath>
#include <stdexcept>

namespace svk::schouten {

namespace {

const auto kUp = slots({Slot::up});
const auto kConnection = slots({Slot::up, Slot::down, Slot::down});
const auto kOperator = slots({Slot::up, Slot::down, Slot::down, Slot::down});
const auto kCovariant4 = slots({Slot::down, Slot::down, Slot::down, Slot::down});

double eta_of(const StructureJets& s, std::span<const double> x)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < s.dim; ++i) acc += s.eta(i).v * x[i];
    return acc;
}

/// g(L∂i, ∂k)
TensorValue lowered_shape(const StructureJets& s)
{
    const std::size_t n = s.dim;
    TensorValue out(n, slots({Slot::down, Slot::down}));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            double acc = 0.0;
            for (std::size_t a = 0; a < n; ++a) acc += s.metric.g(a, k).v * s.shape(a, i).v;
            out(i, k) = acc;
        }
    }
    return out;
}

/// g(D(∂i,∂j), ∂k) stored as (i, j, k).
TensorValue lowered_curl(const StructureJets& s, const TensorValue& d)
{
    const std::size_t n = s.dim;
    TensorValue out(n, slots({Slot::down, Slot::down, Slot::down}));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                double acc = 0.0;
                for (std::size_t a = 0; a < n; ++a) acc += s.metric.g(a, k).v * d(a, i, j);
                out(i, j, k) = acc;
            }
        }
    }
    return out;
}

}  // namespace

Projection project(const StructureJets& s, std::span<const double> x)
{
    const double e = eta_of(s, x);
    Projection p{std::vector<double>(s.dim), std::vector<double>(s.dim)};
    for (std::size_t k = 0; k < s.dim; ++k) {
        p.vertical[k] = e * s.xi(k).v;
        p.horizontal[k] = x[k] - p.vertical[k];
    }
    return p;
}

Projection project(const ManifoldSpec& spec, std::span<const double> point, std::span<const double> x)
{
    return project(structure::structure_jets(spec, point), x);
}

ShapeOperatorJet shape_operator(const ManifoldSpec& spec, std::span<const double> point)
{
    const StructureJets s = structure::structure_jets(spec, point);
    return {values(s.shape), s.nabla_shape};
}

TensorJet svk_connection(const StructureJets& s)
{
    const std::size_t n = s.dim;
    TensorJet gt(n, kConnection);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                gt(k, i, j) = s.metric.gamma(k, i, j) - s.eta(j) * s.nabla_xi(k, i) + s.nabla_eta(j, i) * s.xi(k);
            }
        }
    }
    return gt;
}

TensorValue svk_connection_projected(const StructureJets& s)
{
    const std::size_t n = s.dim;
    TensorValue gt(n, kConnection);
    std::vector<double> a(n);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // ∇_{∂i} of Y^h = ∂j − η_j ξ and of Y^v = η_j ξ.
            const double deta = s.eta(j).d[i];
            for (std::size_t k = 0; k < n; ++k) {
                const double vert = deta * s.xi(k).v + s.eta(j).v * s.nabla_xi(k, i).v;
                a[k] = s.metric.gamma(k, i, j).v - vert;
                b[k] = vert;
            }
            const double ea = eta_of(s, a);
            const double eb = eta_of(s, b);
            for (std::size_t k = 0; k < n; ++k) gt(k, i, j) = a[k] - ea * s.xi(k).v + eb * s.xi(k).v;
        }
    }
    return gt;
}

SvkJets svk_jets(const ManifoldSpec& spec, std::span<const double> point)
{
    SvkJets j;
    j.base = structure::structure_jets(spec, point);
    j.gamma_tilde = svk_connection(j.base);
    const TensorValue g = j.base.g();
    j.levi_civita.op = geometry::curvature_operator(geometry::to_connection_jet(j.base.metric.gamma));
    j.levi_civita.down = geometry::lower_curvature(j.levi_civita.op, g);
    j.adapted.op = geometry::curvature_operator(geometry::to_connection_jet(j.gamma_tilde));
    j.adapted.down = geometry::lower_curvature(j.adapted.op, g);
    return j;
}

TensorValue second_fundamental_form(const StructureJets& s)
{
    const std::size_t n = s.dim;
    TensorValue b(n, kConnection);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                b(k, i, j) = s.eta(j).v * s.nabla_xi(k, i).v - s.nabla_eta(j, i).v * s.xi(k).v;
            }
        }
    }
    return b;
}

TensorValue second_fundamental_form_shape(const StructureJets& s)
{
    const std::size_t n = s.dim;
    const TensorValue gl = lowered_shape(s);
    TensorValue b(n, kConnection);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                b(k, i, j) = -s.eta(j).v * s.shape(k, i).v + s.epsilon * gl(i, j) * s.xi(k).v;
            }
        }
    }
    return b;
}

TensorValue connection_difference(const TensorValue& gamma, const TensorValue& gamma_tilde)
{
    return gamma - gamma_tilde;
}

TensorValue svk_torsion(const StructureJets& s)
{
    const std::size_t n = s.dim;
    const TensorValue deta = geometry::exterior_derivative(s.eta);
    TensorValue t(n, kConnection);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                t(k, i, j) = s.eta(i).v * s.nabla_xi(k, j).v - s.eta(j).v * s.nabla_xi(k, i).v +
                             2.0 * deta(i, j) * s.xi(k).v;
            }
        }
    }
    return t;
}

TensorValue torsion_of(const TensorValue& gamma)
{
    const std::size_t n = gamma.dim();
    TensorValue t(n, kConnection);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) t(k, i, j) = gamma(k, i, j) - gamma(k, j, i);
        }
    }
    return t;
}

TensorValue minus_two_alternation(const TensorValue& b)
{
    const std::size_t n = b.dim();
    TensorValue t(n, kConnection);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) t(k, i, j) = -2.0 * 0.5 * (b(k, i, j) - b(k, j, i));
        }
    }
    return t;
}

TensorValue metric_connection_from_torsion(const TensorValue& g, const TensorValue& g_inv,
                                           const TensorValue& gamma, const TensorValue& torsion)
{
    const std::size_t n = g.dim();
    double asym = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) asym = std::max(asym, std::abs(torsion(k, i, j) + torsion(k, j, i)));
        }
    }
    if (asym > 1e-10 * std::max(1.0, max_abs(torsion))) {
        throw std::invalid_argument("torsion is not antisymmetric in its arguments");
    }

    // tl(i, j, k) = g(T(∂i, ∂j), ∂k)
    TensorValue tl(n, slots({Slot::down, Slot::down, Slot::down}));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                double acc = 0.0;
                for (std::size_t l = 0; l < n; ++l) acc += g(k, l) * torsion(l, i, j);
                tl(i, j, k) = acc;
            }
        }
    }
    TensorValue lowered(n, slots({Slot::down, Slot::down, Slot::down}));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double acc = 0.0;
                for (std::size_t l = 0; l < n; ++l) acc += g(k, l) * gamma(l, i, j);
                lowered(k, i, j) = acc + 0.5 * (tl(i, j, k) - tl(i, k, j) - tl(j, k, i));
            }
        }
    }
    TensorValue out(n, kConnection);
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double acc = 0.0;
                for (std::size_t k = 0; k < n; ++k) acc += g_inv(m, k) * lowered(k, i, j);
                out(m, i, j) = acc;
            }
        }
    }
    return out;
}

TensorValue metric_connection_from_torsion(const ManifoldSpec& spec, const TensorValue& torsion,
                                           std::span<const double> point)
{
    const geometry::MetricJets mj = geometry::metric_jets(spec, point);
    return metric_connection_from_torsion(values(mj.g), values(mj.g_inv), values(mj.gamma), torsion);
}

TensorValue svk_nabla_metric(const SvkJets& j)
{
    return geometry::covariant_derivative(j.base.metric.g, values(j.gamma_tilde));
}

TensorValue svk_nabla_xi(const SvkJets& j) { return geometry::covariant_derivative(j.base.xi, values(j.gamma_tilde)); }

TensorValue svk_nabla_eta(const SvkJets& j)
{
    return geometry::covariant_derivative(j.base.eta, values(j.gamma_tilde));
}

TensorValue shape_curl(const StructureJets& s)
{
    const std::size_t n = s.dim;
    TensorValue d(n, kConnection);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) d(k, i, j) = s.nabla_shape(k, j, i) - s.nabla_shape(k, i, j);
        }
    }
    return d;
}

TensorValue curvature_relation_plain(const SvkJets& jets)
{
    const StructureJets& s = jets.base;
    const TensorValue& r = jets.levi_civita.op;
    const std::size_t n = s.dim;
    TensorValue out(n, kOperator);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                double eta_r = 0.0;
                for (std::size_t m = 0; m < n; ++m) eta_r += s.eta(m).v * r(m, i, j, k);
                for (std::size_t l = 0; l < n; ++l) {
                    double r_xi = 0.0;
                    for (std::size_t m = 0; m < n; ++m) r_xi += r(l, i, j, m) * s.xi(m).v;
                    out(l, i, j, k) = r(l, i, j, k) - eta_r * s.xi(l).v - s.eta(k).v * r_xi +
                                      s.nabla_eta(k, j).v * s.nabla_xi(l, i).v -
                                      s.nabla_eta(k, i).v * s.nabla_xi(l, j).v;
                }
            }
        }
    }
    return out;
}

TensorValue curvature_relation_operator(const SvkJets& jets)
{
    const StructureJets& s = jets.base;
    const TensorValue& r = jets.levi_civita.op;
    const std::size_t n = s.dim;
    const TensorValue d = shape_curl(s);
    const TensorValue gd = lowered_curl(s, d);
    const TensorValue gl = lowered_shape(s);
    const double eps = s.epsilon;
    TensorValue out(n, kOperator);
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    out(l, i, j, k) = r(l, i, j, k) - eps * gd(i, j, k) * s.xi(l).v + s.eta(k).v * d(l, i, j) +
                                      eps * gl(j, k) * s.shape(l, i).v - eps * gl(i, k) * s.shape(l, j).v;
                }
            }
        }
    }
    return out;
}

TensorValue curvature_relation_covariant(const SvkJets& jets)
{
    const StructureJets& s = jets.base;
    const TensorValue& r = jets.levi_civita.down;
    const std::size_t n = s.dim;
    const TensorValue gd = lowered_curl(s, shape_curl(s));
    const TensorValue gl = lowered_shape(s);
    const double eps = s.epsilon;
    TensorValue out(n, kCovariant4);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t w = 0; w < n; ++w) {
                    out(i, j, k, w) = r(i, j, k, w) - gd(i, j, k) * s.eta(w).v + gd(i, j, w) * s.eta(k).v +
                                      eps * gl(i, w) * gl(j, k) - eps * gl(i, k) * gl(j, w);
                }
            }
        }
    }
    return out;
}

ShapeIdentities shape_identities(const SvkJets& jets)
{
    const StructureJets& s = jets.base;
    const TensorValue& r = jets.levi_civita.op;
    const std::size_t n = s.dim;
    const TensorValue d = shape_curl(s);
    const TensorValue gd = lowered_curl(s, d);
    const TensorValue gl = lowered_shape(s);
    const double eps = s.epsilon;

    const auto d2 = slots({Slot::down, Slot::down});
    TensorValue ne_l(n, d2);
    TensorValue ne_r(n, d2);
    TensorValue es(n, d2);
    TensorValue nsx_l(n, d2);
    TensorValue nsx_r(n, d2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            ne_l(i, j) = s.nabla_eta(j, i).v;
            ne_r(i, j) = -eps * gl(i, j);
            double lx_ly = 0.0;
            double ns = 0.0;
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = 0; b < n; ++b) {
                    lx_ly += s.metric.g(a, b).v * s.shape(a, i).v * s.shape(b, j).v;
                    ns += s.metric.g(a, b).v * s.nabla_shape(a, j, i) * s.xi(b).v;
                }
            }
            nsx_l(i, j) = ns;
            nsx_r(i, j) = lx_ly;
        }
        double e = 0.0;
        for (std::size_t k = 0; k < n; ++k) e += s.eta(k).v * s.shape(k, i).v;
        es(i, 0) = e;
    }

    TensorValue rx_l(n, kConnection);
    TensorValue rx_r(n, kConnection);
    TensorValue er_l(n, slots({Slot::down, Slot::down, Slot::down}));
    TensorValue er_r(n, slots({Slot::down, Slot::down, Slot::down}));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t l = 0; l < n; ++l) {
                double acc = 0.0;
                double er = 0.0;
                for (std::size_t m = 0; m < n; ++m) {
                    acc += r(l, i, j, m) * s.xi(m).v;
                    er += s.eta(m).v * r(m, i, j, l);
                }
                rx_l(l, i, j) = acc;
                rx_r(l, i, j) = -d(l, i, j);
                er_l(i, j, l) = er;
                er_r(i, j, l) = eps * gd(i, j, l);
            }
        }
    }

    ShapeIdentities out;
    out.nabla_eta = residual(ne_l, ne_r);
    out.curvature_xi = residual(rx_l, rx_r);
    out.eta_curvature = residual(er_l, er_r);
    out.eta_shape = relative_residual(max_abs(es), 0.0);
    out.nabla_shape_xi = residual(nsx_l, nsx_r);
    return out;
}

SvkRicciScalar svk_ricci_scalar(const SvkJets& jets)
{
    const StructureJets& s = jets.base;
    const std::size_t n = s.dim;
    const double eps = s.epsilon;
    const TensorValue g_inv = s.g_inv();
    const geometry::RicciScalar lc = geometry::ricci_scalar(jets.levi_civita.op, g_inv);
    const geometry::RicciScalar ad = geometry::ricci_scalar(jets.adapted.op, g_inv);
    const TensorValue& down = jets.levi_civita.down;

    SvkRicciScalar out;
    out.ricci = ad.ricci;
    out.scalar = ad.scalar;
    for (std::size_t i = 0; i < n; ++i) out.divergence_xi += s.nabla_xi(i, i).v;

    // m(j, k) = (∇_{∇_{∂j} ξ} η)(∂k)
    TensorValue m(n, slots({Slot::down, Slot::down}));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            double acc = 0.0;
            for (std::size_t a = 0; a < n; ++a) acc += s.nabla_xi(a, j).v * s.nabla_eta(k, a).v;
            m(j, k) = acc;
        }
    }
    std::vector<double> s_xi(n, 0.0);
    double s_xixi = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) s_xi[j] += s.xi(i).v * lc.ricci(i, j);
        s_xixi += s_xi[j] * s.xi(j).v;
    }

    out.ricci_relation = TensorValue(n, slots({Slot::down, Slot::down}));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            double r_xi = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t w = 0; w < n; ++w) r_xi += s.xi(i).v * s.xi(w).v * down(i, j, k, w);
            }
            out.ricci_relation(j, k) = lc.ricci(j, k) - eps * r_xi - s_xi[j] * s.eta(k).v +
                                       s.nabla_eta(k, j).v * out.divergence_xi - m(j, k);
        }
    }
    double trace_m = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) trace_m += g_inv(j, k) * m(j, k);
    }
    out.scalar_relation =
        lc.scalar - 2.0 * eps * s_xixi + eps * out.divergence_xi * out.divergence_xi - trace_m;
    return out;
}

SvkSectional svk_sectional(const SvkJets& jets, std::span<const double> x, std::span<const double> y)
{
    const StructureJets& s = jets.base;
    const std::size_t n = s.dim;
    const TensorValue g = s.g();
    const double q = geometry::section_gram(g, x, y);
    SvkSectional out;
    out.levi_civita = geometry::sectional(jets.levi_civita.down, g, x, y);
    out.adapted = geometry::sectional(jets.adapted.down, g, x, y);

    const std::vector<double> xv(x.begin(), x.end());
    const std::vector<double> yv(y.begin(), y.end());
    std::vector<double> xi(n);
    for (std::size_t k = 0; k < n; ++k) xi[k] = s.xi(k).v;
    const std::vector<std::vector<double>> xyy{xv, yv, yv, xi};
    const std::vector<std::vector<double>> yxx{yv, xv, xv, xi};
    auto nabla_eta = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) acc += a[i] * b[j] * s.nabla_eta(j, i).v;
        }
        return acc;
    };
    const double correction = -eta_of(s, x) * geometry::evaluate(jets.levi_civita.down, xyy) -
                              eta_of(s, y) * geometry::evaluate(jets.levi_civita.down, yxx) +
                              s.epsilon * nabla_eta(xv, xv) * nabla_eta(yv, yv) -
                              s.epsilon * nabla_eta(xv, yv) * nabla_eta(yv, xv);
    out.relation = out.levi_civita + correction / q;
    return out;
}

TensorValue svk_nabla_phi(const SvkJets& j)
{
    return geometry::covariant_derivative(values(j.base.phi), partials(j.base.phi), values(j.gamma_tilde));
}

TensorValue svk_nabla_phi_formula(const StructureJets& s)
{
    const std::size_t n = s.dim;
    TensorValue out = s.nabla_phi;
    std::vector<double> phi_nxi(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            double acc = 0.0;
            for (std::size_t m = 0; m < n; ++m) acc += s.phi(k, m).v * s.nabla_xi(m, i).v;
            phi_nxi[k] = acc;
        }
        for (std::size_t j = 0; j < n; ++j) {
            double gj = 0.0;
            for (std::size_t a = 0; a < n; ++a) gj += s.metric.g(a, j).v * phi_nxi[a];
            for (std::size_t k = 0; k < n; ++k) {
                out(k, j, i) += s.eta(j).v * phi_nxi[k] - s.epsilon * gj * s.xi(k).v;
            }
        }
    }
    return out;
}

}  // namespace svk::schouten
