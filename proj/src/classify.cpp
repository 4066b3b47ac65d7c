#include "svk/classify.hpp"

#include "svk/parallel.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace svk::classify {

using schouten::SvkJets;
using structure::StructureJets;

namespace {

constexpr std::size_t idx(StructureClass c) { return static_cast<std::size_t>(c); }

double delta(std::size_t a, std::size_t b) { return a == b ? 1.0 : 0.0; }

const auto kNablaPhi = slots({Slot::up, Slot::down, Slot::down});

TensorValue zero_like(const TensorValue& t) { return TensorValue(t.dim(), t.variance()); }

/// φ applied to a coordinate-indexed vector.
std::vector<double> apply_phi(const StructureJets& s, std::span<const double> v)
{
    std::vector<double> out(s.dim, 0.0);
    for (std::size_t k = 0; k < s.dim; ++k) {
        for (std::size_t m = 0; m < s.dim; ++m) out[k] += s.phi(k, m).v * v[m];
    }
    return out;
}

/// (∇_X φ)Y of the α-Sasakian condition: −μα(g(X,Y)ξ − εη(Y)X), layout (k, j, i).
TensorValue sasakian_rhs(const StructureJets& s, double alpha)
{
    const std::size_t n = s.dim;
    TensorValue out(n, kNablaPhi);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                out(k, j, i) = -s.mu * alpha * (s.metric.g(i, j).v * s.xi(k).v - s.epsilon * s.eta(j).v * delta(k, i));
            }
        }
    }
    return out;
}

/// β(εg(φX,Y)ξ − η(Y)φX), layout (k, j, i).
TensorValue kenmotsu_rhs(const StructureJets& s, double beta)
{
    const std::size_t n = s.dim;
    TensorValue out(n, kNablaPhi);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double g_phi = 0.0;
            for (std::size_t a = 0; a < n; ++a) g_phi += s.metric.g(a, j).v * s.phi(a, i).v;
            for (std::size_t k = 0; k < n; ++k) {
                out(k, j, i) = beta * (s.epsilon * g_phi * s.xi(k).v - s.eta(j).v * s.phi(k, i).v);
            }
        }
    }
    return out;
}

/// εα̂φ − β̂(I − ξ⊗η) as a (1,1) table.
TensorValue ncon_shape(const StructureJets& s, double alpha, double beta)
{
    const std::size_t n = s.dim;
    TensorValue out(n, slots({Slot::up, Slot::down}));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            out(k, i) = s.epsilon * alpha * s.phi(k, i).v - beta * (delta(k, i) - s.xi(k).v * s.eta(i).v);
        }
    }
    return out;
}

/// (∇'_{φX}φ)φY + μ(∇'_Xφ)Y for a ∇'φ table in layout (k, j, i).
TensorValue phi_normal_form(const StructureJets& s, const TensorValue& nphi, TensorValue* second_term = nullptr)
{
    const std::size_t n = s.dim;
    TensorValue first(n, kNablaPhi);
    TensorValue second(n, kNablaPhi);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::size_t a = 0; a < n; ++a) {
                    for (std::size_t b = 0; b < n; ++b) acc += s.phi(a, i).v * s.phi(b, j).v * nphi(k, b, a);
                }
                first(k, j, i) = acc;
                second(k, j, i) = s.mu * nphi(k, j, i);
            }
        }
    }
    if (second_term) *second_term = second;
    return first;
}

}  // namespace

AlphaBeta estimate_alpha_beta(const StructureJets& s)
{
    const std::size_t n = s.dim;
    const double half = static_cast<double>(n - 1);
    Dual tr_phi_l;
    Dual tr_l;
    for (std::size_t k = 0; k < n; ++k) {
        tr_l += s.shape(k, k);
        for (std::size_t m = 0; m < n; ++m) tr_phi_l += s.phi(k, m) * s.shape(m, k);
    }
    return {tr_phi_l * (s.epsilon * s.mu / half), tr_l * (-1.0 / half)};
}

AlphaBeta estimate_alpha_beta(const ManifoldSpec& spec, std::span<const double> point)
{
    return estimate_alpha_beta(structure::structure_jets(spec, point));
}

ClassResiduals class_residuals(const SvkJets& j, const AlphaBeta& ab)
{
    const StructureJets& s = j.base;
    const std::size_t n = s.dim;
    const double alpha = ab.alpha.v;
    const double beta = ab.beta.v;
    ClassResiduals r;

    const TensorValue L = values(s.shape);
    TensorValue a_phi(n, slots({Slot::up, Slot::down}));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) a_phi(k, i) = s.epsilon * alpha * s.phi(k, i).v;
    }
    // g((L − εα̂φ)∂i, ∂j) against its transpose
    TensorValue ga(n, slots({Slot::down, Slot::down}));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t jj = 0; jj < n; ++jj) {
            double acc = 0.0;
            for (std::size_t a = 0; a < n; ++a) acc += s.metric.g(a, jj).v * (L(a, i) - a_phi(a, i));
            ga(i, jj) = acc;
        }
    }
    TensorValue ga_t(n, ga.variance());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t jj = 0; jj < n; ++jj) ga_t(i, jj) = ga(jj, i);
    }
    r.classes[idx(StructureClass::alpha_contact)] = residual(ga, ga_t);
    r.classes[idx(StructureClass::k_alpha_contact)] = residual(L, a_phi);

    const TensorValue nij = structure::nijenhuis(s.phi);
    const TensorValue deta = geometry::exterior_derivative(s.eta);
    TensorValue corr(n, nij.variance());
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t jj = 0; jj < n; ++jj) corr(k, i, jj) = 2.0 * s.mu * deta(i, jj) * s.xi(k).v;
        }
    }
    r.classes[idx(StructureClass::normal)] = residual(nij, corr);

    const TensorValue sasa = sasakian_rhs(s, alpha);
    const TensorValue kenm = kenmotsu_rhs(s, beta);
    r.classes[idx(StructureClass::alpha_sasakian)] = residual(s.nabla_phi, sasa);
    r.classes[idx(StructureClass::beta_kenmotsu)] = residual(s.nabla_phi, kenm);
    r.classes[idx(StructureClass::trans_sasakian)] = residual(s.nabla_phi, sasa + kenm);
    r.classes[idx(StructureClass::cosymplectic)] = residual(s.nabla_phi, zero_like(s.nabla_phi));

    const TensorValue form = structure::fundamental_form(s.g(), values(s.phi));
    r.contact_form = residual(deta, alpha * form);

    TensorValue lphi(n, slots({Slot::up, Slot::down}));
    TensorValue phil(n, slots({Slot::up, Slot::down}));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            double a = 0.0;
            double b = 0.0;
            for (std::size_t m = 0; m < n; ++m) {
                a += L(k, m) * s.phi(m, i).v;
                b += s.phi(k, m).v * L(m, i);
            }
            lphi(k, i) = a;
            phil(k, i) = b;
        }
    }
    r.commutator = residual(lphi, phil);

    TensorValue second;
    const TensorValue first = phi_normal_form(s, schouten::svk_nabla_phi(j), &second);
    r.adapted_normal = residual(first, -1.0 * second);

    // (∇_{φ∂i}φ)∂j − φ(∇_iφ)∂j − εμ g(∇_iξ, ∂j)ξ
    TensorValue na(n, kNablaPhi);
    TensorValue nb(n, kNablaPhi);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t jj = 0; jj < n; ++jj) {
            for (std::size_t i = 0; i < n; ++i) {
                double a = 0.0;
                double b = 0.0;
                double gx = 0.0;
                for (std::size_t m = 0; m < n; ++m) {
                    a += s.phi(m, i).v * s.nabla_phi(k, jj, m);
                    b += s.phi(k, m).v * s.nabla_phi(m, jj, i);
                    gx += s.metric.g(m, jj).v * s.nabla_xi(m, i).v;
                }
                na(k, jj, i) = a;
                nb(k, jj, i) = b + s.epsilon * s.mu * gx * s.xi(k).v;
            }
        }
    }
    r.norma = residual(na, nb);

    TensorValue lc_second;
    TensorValue lc_first = phi_normal_form(s, s.nabla_phi, &lc_second);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> nxi(n);
        for (std::size_t k = 0; k < n; ++k) nxi[k] = s.nabla_xi(k, i).v;
        const std::vector<double> pn = apply_phi(s, nxi);
        for (std::size_t jj = 0; jj < n; ++jj) {
            for (std::size_t k = 0; k < n; ++k) lc_second(k, jj, i) += s.mu * s.eta(jj).v * pn[k];
        }
    }
    r.normcond = residual(lc_first, -1.0 * lc_second);

    // (∇~_{φX}φ)φY + μ(∇~_Xφ)Y = (∇_{φX}φ)φY + μ(∇_Xφ)Y + μη(Y)φ∇_Xξ + εμ g(∇_{φX}ξ − φ∇_Xξ, Y)ξ
    TensorValue gener_rhs = lc_first + lc_second;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> diff(n, 0.0);
        for (std::size_t m = 0; m < n; ++m) {
            for (std::size_t a = 0; a < n; ++a) {
                diff[m] += s.nabla_xi(m, a).v * s.phi(a, i).v - s.phi(m, a).v * s.nabla_xi(a, i).v;
            }
        }
        for (std::size_t jj = 0; jj < n; ++jj) {
            double gd = 0.0;
            for (std::size_t m = 0; m < n; ++m) gd += s.metric.g(m, jj).v * diff[m];
            for (std::size_t k = 0; k < n; ++k) gener_rhs(k, jj, i) += s.epsilon * s.mu * gd * s.xi(k).v;
        }
    }
    r.gener = residual(first + second, gener_rhs);

    r.ncon_fit = residual(L, ncon_shape(s, alpha, beta));
    return r;
}

std::vector<StructureClass> ClassificationReport::classes() const
{
    std::vector<StructureClass> out;
    for (auto c : kAllClasses) {
        if (has(c)) out.push_back(c);
    }
    return out;
}

namespace {

struct PointResult {
    std::optional<std::string> error;
    AlphaBeta ab;
    ClassResiduals r;
    double dalpha = 0.0;
    double dbeta_defect = 0.0;
    double dalpha_xi = 0.0;
};

PointResult evaluate_point(const ManifoldSpec& spec, std::span<const double> x)
{
    PointResult p;
    try {
        const SvkJets j = schouten::svk_jets(spec, x);
        p.ab = estimate_alpha_beta(j.base);
        p.r = class_residuals(j, p.ab);
        const std::size_t n = spec.dimension;
        double beta_prime = 0.0;
        double alpha_xi = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            beta_prime += j.base.xi(k).v * p.ab.beta.d[k];
            alpha_xi += j.base.xi(k).v * p.ab.alpha.d[k];
        }
        for (std::size_t k = 0; k < n; ++k) {
            p.dalpha = std::max(p.dalpha, std::abs(p.ab.alpha.d[k]));
            p.dbeta_defect = std::max(p.dbeta_defect, std::abs(p.ab.beta.d[k] - beta_prime * j.base.eta(k).v));
        }
        p.dalpha_xi = std::abs(alpha_xi + 2.0 * p.ab.alpha.v * p.ab.beta.v);
    } catch (const std::exception& e) {
        p.error = e.what();
    }
    return p;
}

std::vector<PointResult> evaluate_sample(const ManifoldSpec& spec, const Sample& sample)
{
    return map_indices(sample.points.size(), [&](std::size_t i) { return evaluate_point(spec, sample.points[i]); });
}

void require_gate(const ManifoldSpec& spec, const Sample& sample)
{
    const CheckList axioms = structure::validate_structure(spec, sample);
    if (structure::structure_gate(axioms) == structure::Gate::fail) {
        std::string what = "structure axioms fail:";
        for (const auto& c : axioms) {
            if (!c.passed()) {
                what += " " + c.id;
                if (c.error) what += " (" + *c.error + ")";
            }
        }
        throw structure::StructureDefect(what);
    }
}

const std::array<const char*, 7> kClassAnchors{
    "dη = αΦ ⇔ L − εαφ symmetric",
    "L = εαφ",
    "[φ,φ](X,Y) − 2μ dη(X,Y)ξ = 0",
    "(∇_Xφ)Y = −μα(g(X,Y)ξ − εη(Y)X)",
    "(∇_Xφ)Y = β(εg(φX,Y)ξ − η(Y)φX)",
    "(∇_Xφ)Y = −μα(g(X,Y)ξ − εη(Y)X) + β(εg(φX,Y)ξ − η(Y)φX)",
    "∇φ = 0",
};

}  // namespace

Rng point_rng(std::uint64_t seed, std::size_t index)
{
    return Rng(seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1)));
}

ClassificationReport classify_structure(const ManifoldSpec& spec, const Sample& sample, double tol)
{
    require_gate(spec, sample);
    ClassificationReport rep;
    rep.tolerance = tol;
    for (auto c : kAllClasses) {
        rep.residuals[idx(c)] = Check("class." + std::string(to_string(c)), kClassAnchors[idx(c)], tol);
    }
    rep.contact_form = Check("class.contact_form", "dη = αΦ", tol);
    rep.commutator = Check("class.shape_commutes", "Lφ = φL", tol);
    rep.adapted_normal = Check("class.adapted_normal", "(∇~_{φX}φ)φY + μ(∇~_Xφ)Y = 0", tol);

    const auto results = evaluate_sample(spec, sample);
    for (std::size_t p = 0; p < results.size(); ++p) {
        const PointResult& pr = results[p];
        if (pr.error) {
            for (auto& c : rep.residuals) c.fail(*pr.error, p);
            rep.contact_form.fail(*pr.error, p);
            rep.commutator.fail(*pr.error, p);
            rep.adapted_normal.fail(*pr.error, p);
            rep.alpha_hat.push_back(std::nan(""));
            rep.beta_hat.push_back(std::nan(""));
            continue;
        }
        for (auto c : kAllClasses) rep.residuals[idx(c)].record(pr.r.classes[idx(c)], p);
        rep.contact_form.record(pr.r.contact_form, p);
        rep.commutator.record(pr.r.commutator, p);
        rep.adapted_normal.record(pr.r.adapted_normal, p);
        rep.alpha_hat.push_back(pr.ab.alpha.v);
        rep.beta_hat.push_back(pr.ab.beta.v);
        rep.max_abs_alpha = std::max(rep.max_abs_alpha, std::abs(pr.ab.alpha.v));
        rep.max_abs_beta = std::max(rep.max_abs_beta, std::abs(pr.ab.beta.v));
        rep.max_dalpha = std::max(rep.max_dalpha, pr.dalpha);
        rep.max_dbeta_defect = std::max(rep.max_dbeta_defect, pr.dbeta_defect);
        rep.max_dalpha_xi = std::max(rep.max_dalpha_xi, pr.dalpha_xi);
    }

    const bool alpha_nonzero = rep.max_abs_alpha > kNonzeroFloor;
    const bool beta_nonzero = rep.max_abs_beta > kNonzeroFloor;
    for (auto c : kAllClasses) {
        bool ok = rep.residual(c).passed();
        const bool needs_alpha = c == StructureClass::alpha_contact || c == StructureClass::k_alpha_contact ||
                                 c == StructureClass::alpha_sasakian;
        if (ok && needs_alpha && !alpha_nonzero) {
            ok = false;
            rep.notes[idx(c)] = "not " + std::string(to_string(c)) + ": alpha vanishes";
        }
        if (ok && c == StructureClass::beta_kenmotsu && !beta_nonzero) {
            ok = false;
            rep.notes[idx(c)] = "not beta-kenmotsu: beta vanishes";
        }
        rep.verdict[idx(c)] = ok;
    }
    return rep;
}

CheckList check_dim3_identities(const ManifoldSpec& spec, const Sample& sample, double tol)
{
    if (spec.dimension != 3) throw std::invalid_argument("dim-3 identities need a 3-dimensional chart");
    require_gate(spec, sample);

    struct Dim3Point {
        std::optional<std::string> error;
        double adapted_phi = 0.0;
        double normal = 0.0;
        double commutator = 0.0;
        double ncon_fit = 0.0;
        double ncon2 = 0.0;
        double ncon3 = 0.0;
        double ncon4 = 0.0;
        double dalpha_xi = 0.0;
    };

    auto results = map_indices(sample.points.size(), [&](std::size_t p) {
        Dim3Point d;
        try {
            const SvkJets j = schouten::svk_jets(spec, sample.points[p]);
            const StructureJets& s = j.base;
            const std::size_t n = s.dim;
            const AlphaBeta ab = estimate_alpha_beta(s);
            const ClassResiduals r = class_residuals(j, ab);
            const double alpha = ab.alpha.v;
            const double beta = ab.beta.v;
            d.adapted_phi = relative_residual(max_abs(schouten::svk_nabla_phi(j)), max_abs(s.nabla_phi));
            d.normal = r.classes[idx(StructureClass::normal)];
            d.commutator = r.commutator;
            d.ncon_fit = r.ncon_fit;

            const TensorValue nxi = values(s.nabla_xi);
            d.ncon2 = residual(nxi, -1.0 * ncon_shape(s, alpha, beta));

            TensorValue ne(n, slots({Slot::down, Slot::down}));
            TensorValue ne_rhs(n, slots({Slot::down, Slot::down}));
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t jj = 0; jj < n; ++jj) {
                    double g_phi = 0.0;
                    for (std::size_t a = 0; a < n; ++a) g_phi += s.metric.g(a, jj).v * s.phi(a, i).v;
                    ne(i, jj) = s.nabla_eta(jj, i).v;
                    ne_rhs(i, jj) = -alpha * g_phi +
                                    beta * (s.epsilon * s.metric.g(i, jj).v - s.eta(i).v * s.eta(jj).v);
                }
            }
            d.ncon3 = residual(ne, ne_rhs);
            d.ncon4 = r.classes[idx(StructureClass::trans_sasakian)];
            double alpha_xi = 0.0;
            for (std::size_t k = 0; k < n; ++k) alpha_xi += s.xi(k).v * ab.alpha.d[k];
            d.dalpha_xi = std::abs(alpha_xi + 2.0 * alpha * beta);
        } catch (const std::exception& e) {
            d.error = e.what();
        }
        return d;
    });

    Check adapted("dim3.adapted_phi_parallel", "∇~φ = 0 in dimension 3", tol);
    Check normal("dim3.normality", "[φ,φ] − 2μ dη⊗ξ", tol);
    Check commutator("dim3.shape_commutes", "Lφ − φL", tol);
    Check fit("dim3.shape_fit", "LX − εαφX + β(X − η(X)ξ)", tol);
    Check agree("dim3.equivalence", "normal ⇔ Lφ = φL ⇔ L = εαφ − β(I − η⊗ξ)", 0.5);
    Check ncon2("dim3.nabla_xi", "∇_Xξ = −εαφX + β(X − η(X)ξ)", tol);
    Check ncon3("dim3.nabla_eta", "(∇_Xη)(Y) = −αg(φX,Y) + β(εg(X,Y) − η(X)η(Y))", tol);
    Check ncon4("dim3.nabla_phi", "(∇_Xφ)Y = −μα(g(X,Y)ξ − εη(Y)X) + β(εg(φX,Y)ξ − η(Y)φX)", tol);
    Check dalpha("dim3.dalpha_xi", "dα(ξ) + 2αβ = 0", tol);
    normal.informational = commutator.informational = fit.informational = true;

    for (std::size_t p = 0; p < results.size(); ++p) {
        const Dim3Point& d = results[p];
        if (d.error) {
            for (Check* c : {&adapted, &normal, &commutator, &fit, &agree, &ncon2, &ncon3, &ncon4, &dalpha}) {
                c->fail(*d.error, p);
            }
            continue;
        }
        adapted.record(d.adapted_phi, p);
        normal.record(d.normal, p);
        commutator.record(d.commutator, p);
        fit.record(d.ncon_fit, p);
        ncon2.record(d.ncon2, p);
        ncon3.record(d.ncon3, p);
        ncon4.record(d.ncon4, p);
        dalpha.record(d.dalpha_xi, p);
    }
    // Verdict agreement is decided over the whole sample.
    const bool vn = normal.max_residual < tol;
    const bool vc = commutator.max_residual < tol;
    const bool vf = fit.max_residual < tol;
    if (!normal.error) agree.record((vn == vc && vc == vf) ? 0.0 : 1.0, normal.worst_point.value_or(0));

    CheckList out{adapted, agree, commutator, fit, normal};
    if (vn && !normal.error) {
        out.push_back(dalpha);
        out.push_back(ncon2);
        out.push_back(ncon3);
        out.push_back(ncon4);
    } else {
        normal.note = "structure is not normal; normal-only identities skipped";
    }
    std::sort(out.begin(), out.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
    return out;
}

namespace {

/// Random horizontal vector with a nondegenerate partner, or nullopt after many rejections.
template <class Partner>
std::optional<std::pair<std::vector<double>, std::vector<double>>> draw_section(const StructureJets& s, Rng& rng,
                                                                                Partner partner)
{
    const TensorValue g = s.g();
    for (int attempt = 0; attempt < 200; ++attempt) {
        const std::vector<double> v = rng.vector(s.dim);
        const auto x = schouten::project(s, v).horizontal;
        const std::vector<double> y = partner(x, rng);
        try {
            (void)geometry::section_gram(g, x, y);
            return std::make_pair(x, y);
        } catch (const geometry::DegenerateSection&) {
        }
    }
    return std::nullopt;
}

}  // namespace

CheckList check_class_theorems(const ManifoldSpec& spec, const Sample& sample,
                               std::span<const StructureClass> classes, std::uint64_t seed, double tol)
{
    CheckList out;
    if (spec.dimension < 5) return out;
    auto has = [&](StructureClass c) { return std::find(classes.begin(), classes.end(), c) != classes.end(); };
    const bool sasakian = has(StructureClass::alpha_sasakian);
    const bool kenmotsu = has(StructureClass::beta_kenmotsu);
    const bool trans = has(StructureClass::trans_sasakian);
    if (!sasakian && !kenmotsu && !trans) return out;
    require_gate(spec, sample);

    const std::size_t n = spec.dimension;
    const double nn = static_cast<double>((n - 1) / 2);

    enum Slot_ : std::size_t {
        sa_curl, sa_riemann, sa_ricci, sa_scalar, sa_phi_section, sa_xi_section, sa_dalpha,
        ke_curl, ke_riemann, ke_ricci, ke_scalar, ke_perp_section, ke_xi_section, ke_dbeta,
        tr_product, kCount
    };
    using Values = std::array<double, kCount>;
    struct ThmPoint {
        std::optional<std::string> error;
        Values v{};
    };

    auto results = map_indices(sample.points.size(), [&](std::size_t p) {
        ThmPoint t;
        try {
            Rng rng = point_rng(seed, p);
            const SvkJets j = schouten::svk_jets(spec, sample.points[p]);
            const StructureJets& s = j.base;
            const AlphaBeta ab = estimate_alpha_beta(s);
            const double eps = s.epsilon;
            const double mu = s.mu;
            const TensorValue g = s.g();
            const TensorValue& r = j.levi_civita.down;
            const TensorValue& rt = j.adapted.down;
            const double scale = 1.0 + max_abs(r);
            const schouten::SvkRicciScalar ricci = schouten::svk_ricci_scalar(j);
            const geometry::RicciScalar lc = geometry::ricci_scalar(j.levi_civita.op, s.g_inv());
            const TensorValue d = schouten::shape_curl(s);
            std::vector<double> xi(n);
            for (std::size_t k = 0; k < n; ++k) xi[k] = s.xi(k).v;
            auto eta = [&](std::size_t i) { return s.eta(i).v; };

            if (sasakian) {
                const double a = ab.alpha.v;
                const TensorValue form = structure::fundamental_form(g, values(s.phi));
                TensorValue curl_rhs(n, d.variance());
                for (std::size_t k = 0; k < n; ++k) {
                    for (std::size_t i = 0; i < n; ++i) {
                        for (std::size_t jj = 0; jj < n; ++jj) {
                            curl_rhs(k, i, jj) = mu * a * (eta(jj) * delta(k, i) - eta(i) * delta(k, jj));
                        }
                    }
                }
                t.v[sa_curl] = residual(d, curl_rhs);
                TensorValue rhs = r;
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t jj = 0; jj < n; ++jj) {
                        for (std::size_t k = 0; k < n; ++k) {
                            for (std::size_t w = 0; w < n; ++w) {
                                rhs(i, jj, k, w) += mu * a * (g(i, w) * eta(jj) - g(jj, w) * eta(i)) * eta(k) +
                                                    mu * a * (g(jj, k) * eta(i) - g(i, k) * eta(jj)) * eta(w) +
                                                    eps * a * a * (form(i, w) * form(jj, k) - form(i, k) * form(jj, w));
                            }
                        }
                    }
                }
                t.v[sa_riemann] = max_abs_diff(rt, rhs) / scale;
                TensorValue srhs = lc.ricci;
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t k = 0; k < n; ++k) {
                        srhs(i, k) += eps * mu * a * (1 - a) * g(i, k) + mu * a * (2 * nn - 1 + a) * eta(i) * eta(k);
                    }
                }
                t.v[sa_ricci] = max_abs_diff(ricci.ricci, srhs) / scale;
                t.v[sa_scalar] = std::abs(ricci.scalar - (lc.scalar + 2 * nn * eps * mu * a * (2 - a))) / scale;

                auto phi_partner = [&](const std::vector<double>& x, Rng&) { return apply_phi(s, x); };
                auto xi_partner = [&](const std::vector<double>&, Rng&) { return xi; };
                if (auto sec = draw_section(s, rng, phi_partner)) {
                    const auto k = schouten::svk_sectional(j, sec->first, sec->second);
                    t.v[sa_phi_section] = std::abs((k.adapted - k.levi_civita) - (-eps * mu * a * a)) / scale;
                } else {
                    throw geometry::DegenerateSection("no nondegenerate phi-section found");
                }
                if (auto sec = draw_section(s, rng, xi_partner)) {
                    const auto k = schouten::svk_sectional(j, sec->first, sec->second);
                    t.v[sa_xi_section] = std::abs((k.adapted - k.levi_civita) - eps * mu * a) / scale;
                } else {
                    throw geometry::DegenerateSection("no nondegenerate section containing xi found");
                }
                for (std::size_t k = 0; k < n; ++k) t.v[sa_dalpha] = std::max(t.v[sa_dalpha], std::abs(ab.alpha.d[k]));
            }

            if (kenmotsu) {
                const double b = ab.beta.v;
                double bp = 0.0;
                for (std::size_t k = 0; k < n; ++k) bp += xi[k] * ab.beta.d[k];
                TensorValue curl_rhs(n, d.variance());
                for (std::size_t k = 0; k < n; ++k) {
                    for (std::size_t i = 0; i < n; ++i) {
                        for (std::size_t jj = 0; jj < n; ++jj) {
                            curl_rhs(k, i, jj) = -(bp + b * b) * (eta(i) * delta(k, jj) - eta(jj) * delta(k, i));
                        }
                    }
                }
                t.v[ke_curl] = residual(d, curl_rhs);
                TensorValue rhs = r;
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t jj = 0; jj < n; ++jj) {
                        for (std::size_t k = 0; k < n; ++k) {
                            for (std::size_t w = 0; w < n; ++w) {
                                rhs(i, jj, k, w) +=
                                    eps * b * b * (g(i, w) * g(jj, k) - g(i, k) * g(jj, w)) +
                                    bp * (eta(i) * eta(w) * g(jj, k) - eta(i) * eta(k) * g(jj, w) -
                                          eta(jj) * eta(w) * g(i, k) + eta(jj) * eta(k) * g(i, w));
                            }
                        }
                    }
                }
                t.v[ke_riemann] = max_abs_diff(rt, rhs) / scale;
                TensorValue srhs = lc.ricci;
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t k = 0; k < n; ++k) {
                        srhs(i, k) += eps * (bp + 2 * nn * b * b) * g(i, k) + (2 * nn - 1) * bp * eta(i) * eta(k);
                    }
                }
                t.v[ke_ricci] = max_abs_diff(ricci.ricci, srhs) / scale;
                t.v[ke_scalar] =
                    std::abs(ricci.scalar - (lc.scalar + 2 * nn * (2 * nn + 1) * eps * b * b + 4 * nn * eps * bp)) / scale;

                auto perp_partner = [&](const std::vector<double>&, Rng& rr) {
                    return schouten::project(s, rr.vector(n)).horizontal;
                };
                auto xi_partner = [&](const std::vector<double>&, Rng&) { return xi; };
                if (auto sec = draw_section(s, rng, perp_partner)) {
                    const auto k = schouten::svk_sectional(j, sec->first, sec->second);
                    t.v[ke_perp_section] = std::abs((k.adapted - k.levi_civita) - eps * b * b) / scale;
                } else {
                    throw geometry::DegenerateSection("no nondegenerate section orthogonal to xi found");
                }
                if (auto sec = draw_section(s, rng, xi_partner)) {
                    const auto k = schouten::svk_sectional(j, sec->first, sec->second);
                    t.v[ke_xi_section] = std::abs((k.adapted - k.levi_civita) - eps * (bp + b * b)) / scale;
                } else {
                    throw geometry::DegenerateSection("no nondegenerate section containing xi found");
                }
                for (std::size_t k = 0; k < n; ++k) {
                    t.v[ke_dbeta] = std::max(t.v[ke_dbeta], std::abs(ab.beta.d[k] - bp * eta(k)));
                }
            }
            if (trans) t.v[tr_product] = std::abs(ab.alpha.v * ab.beta.v);
        } catch (const std::exception& e) {
            t.error = e.what();
        }
        return t;
    });

    struct Spec_ {
        std::size_t slot;
        bool enabled;
        const char* id;
        const char* anchor;
    };
    const std::array<Spec_, kCount> table{{
        {sa_curl, sasakian, "theorem.alpha_sasakian.shape_curl", "(∇_XL)Y − (∇_YL)X = μα(η(Y)X − η(X)Y)"},
        {sa_riemann, sasakian, "theorem.alpha_sasakian.riemann",
         "R~ = R + μα(g(X,W)η(Y) − g(Y,W)η(X))η(Z) + μα(g(Y,Z)η(X) − g(X,Z)η(Y))η(W) + εα²(g(X,φW)g(Y,φZ) − g(X,φZ)g(Y,φW))"},
        {sa_ricci, sasakian, "theorem.alpha_sasakian.ricci", "S~ = S + εμα(1−α)g + μα(2n−1+α)η⊗η"},
        {sa_scalar, sasakian, "theorem.alpha_sasakian.scalar", "r~ = r + 2nεμα(2−α)"},
        {sa_phi_section, sasakian, "theorem.alpha_sasakian.phi_section", "K~(σ) = K(σ) − εμα² for a φ-section"},
        {sa_xi_section, sasakian, "theorem.alpha_sasakian.xi_section", "K~(σ) = K(σ) + εμα for ξ ∈ σ"},
        {sa_dalpha, sasakian, "theorem.alpha_sasakian.alpha_constant", "dα = 0 in dimension ≥ 5"},
        {ke_curl, kenmotsu, "theorem.beta_kenmotsu.shape_curl", "(∇_XL)Y − (∇_YL)X = −(β′+β²)(η(X)Y − η(Y)X)"},
        {ke_riemann, kenmotsu, "theorem.beta_kenmotsu.riemann",
         "R~ = R + εβ²(g(X,W)g(Y,Z) − g(X,Z)g(Y,W)) + β′(η(X)η(W)g(Y,Z) − η(X)η(Z)g(Y,W) − η(Y)η(W)g(X,Z) + η(Y)η(Z)g(X,W))"},
        {ke_ricci, kenmotsu, "theorem.beta_kenmotsu.ricci", "S~ = S + ε(β′+2nβ²)g + (2n−1)β′η⊗η"},
        {ke_scalar, kenmotsu, "theorem.beta_kenmotsu.scalar", "r~ = r + 2n(2n+1)εβ² + 4nεβ′"},
        {ke_perp_section, kenmotsu, "theorem.beta_kenmotsu.perp_section", "K~(σ) = K(σ) + εβ² for σ ⊥ ξ"},
        {ke_xi_section, kenmotsu, "theorem.beta_kenmotsu.xi_section", "K~(σ) = K(σ) + ε(β′+β²) for ξ ∈ σ"},
        {ke_dbeta, kenmotsu, "theorem.beta_kenmotsu.dbeta", "dβ = β′η in dimension ≥ 5"},
        {tr_product, trans, "theorem.trans_sasakian.splitting", "αβ = 0 in dimension ≥ 5"},
    }};
    for (const auto& row : table) {
        if (!row.enabled) continue;
        Check c(row.id, row.anchor, tol);
        for (std::size_t p = 0; p < results.size(); ++p) {
            if (results[p].error) {
                c.fail(*results[p].error, p);
            } else {
                c.record(results[p].v[row.slot], p);
            }
        }
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
    return out;
}

ManifoldSpec random_dim3_structure(Rng& rng, Sign epsilon, Sign mu, double amplitude)
{
    using expr::Expr;
    const std::vector<std::string> names{"x", "y", "z"};
    std::vector<Expr> vars;
    for (std::size_t i = 0; i < 3; ++i) vars.push_back(Expr::variable(i, names[i]));

    auto smooth = [&]() {
        // a sin(k·x + c) + b x_m, small enough to keep the coframe invertible
        Expr arg = Expr::constant(rng.uniform(-1.0, 1.0));
        for (std::size_t i = 0; i < 3; ++i) arg = arg + Expr::constant(rng.uniform(-1.5, 1.5)) * vars[i];
        const std::size_t m = static_cast<std::size_t>(rng.uniform() * 3.0) % 3;
        return Expr::constant(amplitude * rng.uniform(-1.0, 1.0)) * expr::apply(expr::UnaryOp::sin, arg) +
               Expr::constant(amplitude * rng.uniform(-1.0, 1.0)) * vars[m];
    };

    std::array<std::array<Expr, 3>, 3> c;  // θ^a = c[a][b] dx^b
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) c[a][b] = (a == b ? Expr::constant(1.0) : Expr::constant(0.0)) + smooth();
    }
    auto cof = [&](std::size_t a, std::size_t b) {
        const std::size_t a1 = (a + 1) % 3, a2 = (a + 2) % 3, b1 = (b + 1) % 3, b2 = (b + 2) % 3;
        return c[a1][b1] * c[a2][b2] - c[a1][b2] * c[a2][b1];
    };
    const Expr det = c[0][0] * cof(0, 0) + c[0][1] * cof(0, 1) + c[0][2] * cof(0, 2);
    // Dual frame E_a = inverse columns: E_a^k = cof(a, k) / det.
    auto frame = [&](std::size_t a, std::size_t k) { return cof(a, k) / det; };

    const double eps = to_double(epsilon);
    const double m = to_double(mu);
    const double s1 = rng.uniform() < 0.5 ? 1.0 : -1.0;
    const std::array<double, 3> sig{s1, m < 0 ? s1 : -s1, eps};

    ManifoldSpec spec;
    spec.dimension = 3;
    spec.coordinates = names;
    spec.epsilon = epsilon;
    spec.mu = mu;
    spec.box = SampleBox(3, Interval{-1.0, 1.0});
    spec.metric.assign(9, Expr::constant(0.0));
    spec.phi.assign(9, Expr::constant(0.0));
    spec.xi.assign(3, Expr::constant(0.0));
    spec.eta.assign(3, Expr::constant(0.0));
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            Expr acc = Expr::constant(0.0);
            for (std::size_t a = 0; a < 3; ++a) acc = acc + Expr::constant(sig[a]) * c[a][i] * c[a][j];
            spec.metric[i * 3 + j] = acc;
            spec.phi[i * 3 + j] = frame(1, i) * c[0][j] + Expr::constant(m) * frame(0, i) * c[1][j];
        }
        spec.xi[i] = frame(2, i);
        spec.eta[i] = c[2][i];
    }
    std::size_t negative = 0;
    for (double s : sig) negative += s < 0 ? 1 : 0;
    spec.signature = Signature{negative, 3 - negative};

    // Reject coframes that come close to degenerating inside the box.
    Rng probe(0x5EED);
    for (int k = 0; k < 64; ++k) {
        const std::vector<double> x = probe.vector(3);
        if (expr::eval_value(det, x) < 0.1) return random_dim3_structure(rng, epsilon, mu, amplitude);
    }
    return spec;
}

}  // namespace svk::classify
