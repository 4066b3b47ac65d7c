#include "svk/structure.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace svk::structure {

using geometry::ExprTensorField;

ExprTensorField phi_field(const ManifoldSpec& spec) { return {slots({Slot::up, Slot::down}), spec.phi}; }
ExprTensorField xi_field(const ManifoldSpec& spec) { return {slots({Slot::up}), spec.xi}; }
ExprTensorField eta_field(const ManifoldSpec& spec) { return {slots({Slot::down}), spec.eta}; }

StructureJets structure_jets(const ManifoldSpec& spec, std::span<const double> point)
{
    const std::size_t n = spec.dimension;
    StructureJets s;
    s.dim = n;
    s.epsilon = to_double(spec.epsilon);
    s.mu = to_double(spec.mu);
    s.metric = geometry::metric_jets(spec, point);
    const TensorJet& gamma = s.metric.gamma;

    auto phi = geometry::evaluate_field(phi_field(spec), n, point);
    auto xi = geometry::evaluate_field(xi_field(spec), n, point);
    auto eta = geometry::evaluate_field(eta_field(spec), n, point);
    s.phi = phi.value;
    s.xi = xi.value;
    s.eta = eta.value;

    s.nabla_xi = geometry::covariant_derivative(xi.value, xi.partial, gamma);
    s.nabla_eta = geometry::covariant_derivative(eta.value, eta.partial, gamma);
    s.shape = s.nabla_xi;
    s.shape *= -1.0;
    s.nabla_shape = geometry::covariant_derivative(s.shape, values(gamma));
    s.nabla_phi = geometry::covariant_derivative(values(phi.value), partials(phi.value), values(gamma));
    return s;
}

namespace {

std::string format_point(std::span<const double> p)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << expr::format_number(p[i]);
    os << ')';
    return os.str();
}

struct AxiomResiduals {
    double phi_squared = 0.0;
    double eta_xi = 0.0;
    double compatibility = 0.0;
    double phi_xi = 0.0;
    double eta_phi = 0.0;
    double eta_dual = 0.0;
    double xi_norm = 0.0;
    double form_rank = 0.0;
    double signature = 0.0;
};

AxiomResiduals axiom_residuals(const ManifoldSpec& spec, std::span<const double> point)
{
    const std::size_t n = spec.dimension;
    const double eps = to_double(spec.epsilon);
    const double mu = to_double(spec.mu);
    const geometry::PointFrame frame = geometry::metric_frame(spec, point);
    const TensorValue& g = frame.metric;

    TensorValue phi(n, slots({Slot::up, Slot::down}));
    std::vector<double> xi(n);
    std::vector<double> eta(n);
    for (std::size_t i = 0; i < n; ++i) {
        xi[i] = expr::eval_value(spec.xi[i], point);
        eta[i] = expr::eval_value(spec.eta[i], point);
        for (std::size_t j = 0; j < n; ++j) phi(i, j) = expr::eval_value(spec.phi_at(i, j), point);
    }

    AxiomResiduals r;
    TensorValue lhs(n, slots({Slot::up, Slot::down}));
    TensorValue rhs(n, slots({Slot::up, Slot::down}));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t m = 0; m < n; ++m) acc += phi(i, m) * phi(m, j);
            lhs(i, j) = acc;
            rhs(i, j) = mu * ((i == j ? 1.0 : 0.0) - xi[i] * eta[j]);
        }
    }
    r.phi_squared = residual(lhs, rhs);

    double eta_xi = 0.0;
    double xi_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        eta_xi += eta[i] * xi[i];
        for (std::size_t j = 0; j < n; ++j) xi_norm += g(i, j) * xi[i] * xi[j];
    }
    r.eta_xi = residual(eta_xi, 1.0);
    r.xi_norm = residual(xi_norm, eps);

    TensorValue cl(n, slots({Slot::down, Slot::down}));
    TensorValue cr(n, slots({Slot::down, Slot::down}));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = 0; b < n; ++b) acc += g(a, b) * phi(a, i) * phi(b, j);
            }
            cl(i, j) = acc;
            cr(i, j) = -mu * (g(i, j) - eps * eta[i] * eta[j]);
        }
    }
    r.compatibility = residual(cl, cr);

    TensorValue phixi(n, slots({Slot::up}));
    TensorValue etaphi(n, slots({Slot::down}));
    TensorValue dual_l(n, slots({Slot::down}));
    TensorValue dual_r(n, slots({Slot::down}));
    for (std::size_t i = 0; i < n; ++i) {
        double a = 0.0;
        double b = 0.0;
        double c = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            a += phi(i, j) * xi[j];
            b += eta[j] * phi(j, i);
            c += g(i, j) * xi[j];
        }
        phixi(i) = a;
        etaphi(i) = b;
        dual_l(i) = eta[i];
        dual_r(i) = eps * c;
    }
    const TensorValue zero(n, slots({Slot::up}));
    const TensorValue zero_down(n, slots({Slot::down}));
    r.phi_xi = residual(phixi, zero);
    r.eta_phi = residual(etaphi, zero_down);
    r.eta_dual = residual(dual_l, dual_r);

    const std::size_t rank = algebraic_rank(fundamental_form(g, phi));
    r.form_rank = std::abs(static_cast<double>(rank) - static_cast<double>(n - 1));
    if (spec.signature && !(*spec.signature == frame.signature)) r.signature = 1.0;
    return r;
}

}  // namespace

CheckList validate_structure(const ManifoldSpec& spec, const Sample& sample)
{
    CheckList checks{
        {"axiom.compatibility", "g(φX,φY) = −μ(g(X,Y) − εη(X)η(Y))", kAxiomTolerance},
        {"axiom.eta_dual", "η(X) = εg(X,ξ)", kAxiomTolerance},
        {"axiom.eta_phi", "η∘φ = 0", kAxiomTolerance},
        {"axiom.eta_xi", "η(ξ) = 1", kAxiomTolerance},
        {"axiom.form_rank", "rank Φ = dim − 1", 0.5},
        {"axiom.phi_squared", "φ²X = μ(X − η(X)ξ)", kAxiomTolerance},
        {"axiom.phi_xi", "φξ = 0", kAxiomTolerance},
        {"axiom.xi_norm", "g(ξ,ξ) = ε", kAxiomTolerance},
    };
    if (spec.signature) checks.emplace_back("axiom.signature", "declared signature of g", 0.5);

    for (std::size_t p = 0; p < sample.points.size(); ++p) {
        const auto& x = sample.points[p];
        try {
            const AxiomResiduals r = axiom_residuals(spec, x);
            checks[0].record(r.compatibility, p);
            checks[1].record(r.eta_dual, p);
            checks[2].record(r.eta_phi, p);
            checks[3].record(r.eta_xi, p);
            checks[4].record(r.form_rank, p);
            checks[5].record(r.phi_squared, p);
            checks[6].record(r.phi_xi, p);
            checks[7].record(r.xi_norm, p);
            if (spec.signature) checks[8].record(r.signature, p);
        } catch (const std::exception& e) {
            for (auto& c : checks) c.fail(std::string(e.what()) + " at " + format_point(x), p);
        }
    }
    return checks;
}

Gate structure_gate(const CheckList& axioms)
{
    Gate gate = Gate::pass;
    for (const auto& c : axioms) {
        if (c.error) return Gate::fail;
        if (c.threshold < kAxiomTolerance * 2) {
            if (c.max_residual > kAxiomHardLimit) return Gate::fail;
            if (c.max_residual >= kAxiomTolerance) gate = Gate::warn;
        } else if (!c.passed()) {
            return Gate::fail;
        }
    }
    return gate;
}

TensorValue fundamental_form(const TensorValue& g, const TensorValue& phi)
{
    const std::size_t n = g.dim();
    TensorValue out(n, slots({Slot::down, Slot::down}));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += g(i, k) * phi(k, j);
            out(i, j) = acc;
        }
    }
    return out;
}

TensorValue fundamental_form(const ManifoldSpec& spec, std::span<const double> point)
{
    const std::size_t n = spec.dimension;
    const geometry::PointFrame frame = geometry::metric_frame(spec, point);
    TensorValue phi(n, slots({Slot::up, Slot::down}));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) phi(i, j) = expr::eval_value(spec.phi_at(i, j), point);
    }
    return fundamental_form(frame.metric, phi);
}

std::size_t algebraic_rank(const TensorValue& form)
{
    const auto n = static_cast<Eigen::Index>(form.dim());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = form(i, j);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > 1e-8 * sv(0)) ++rank;
    }
    return rank;
}

TensorValue nabla_phi(const ManifoldSpec& spec, std::span<const double> point)
{
    return structure_jets(spec, point).nabla_phi;
}

TensorValue nijenhuis(const TensorJet& phi)
{
    const std::size_t n = phi.dim();
    auto column = [&](std::size_t j) {
        TensorJet c(n, slots({Slot::up}));
        for (std::size_t k = 0; k < n; ++k) c(k) = phi(k, j);
        return c;
    };
    auto basis = [&](std::size_t i) {
        TensorJet e(n, slots({Slot::up}));
        e(i) = Dual(1.0);
        return e;
    };
    auto apply_phi = [&](const TensorValue& v) {
        TensorValue out(n, slots({Slot::up}));
        for (std::size_t k = 0; k < n; ++k) {
            double acc = 0.0;
            for (std::size_t m = 0; m < n; ++m) acc += phi(k, m).v * v(m);
            out(k) = acc;
        }
        return out;
    };

    TensorValue out(n, slots({Slot::up, Slot::down, Slot::down}));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // [∂i, ∂j] = 0, so the φ²[X,Y] term drops.
            const TensorValue a = geometry::lie_bracket(column(i), column(j));
            const TensorValue b = apply_phi(geometry::lie_bracket(basis(i), column(j)));
            const TensorValue c = apply_phi(geometry::lie_bracket(column(i), basis(j)));
            for (std::size_t k = 0; k < n; ++k) out(k, i, j) = a(k) - b(k) - c(k);
        }
    }
    return out;
}

TensorValue nijenhuis(const ManifoldSpec& spec, std::span<const double> point)
{
    return nijenhuis(geometry::evaluate_field(phi_field(spec), spec.dimension, point).value);
}

TensorValue normality_tensor(const StructureJets& s)
{
    const std::size_t n = s.dim;
    TensorValue out = nijenhuis(s.phi);
    const TensorValue deta = geometry::exterior_derivative(s.eta);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) out(k, i, j) -= 2.0 * s.mu * deta(i, j) * s.xi(k).v;
        }
    }
    return out;
}

TensorValue normality_tensor(const ManifoldSpec& spec, std::span<const double> point)
{
    return normality_tensor(structure_jets(spec, point));
}

}  // namespace svk::structure
