#include "support.hpp"

#include "json.hpp"
#include "svk/classify.hpp"
#include "svk/runner.hpp"
#include "svk/schouten.hpp"
#include "svk/structure.hpp"

#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

using namespace svk;
using C = StructureClass;

namespace {

constexpr std::size_t kPoints = 50;
constexpr std::uint64_t kSeed = 42;

struct Outcome {
    bool ok = true;
    std::string detail;
};

/// Accumulates named measurements against their pinned bounds.
class Meter {
public:
    void below(const std::string& what, double value, double bound)
    {
        add(what, value, "<", bound, value < bound);
    }
    void above(const std::string& what, double value, double bound)
    {
        add(what, value, ">", bound, value > bound);
    }
    void expect(const std::string& what, bool ok)
    {
        ok_ = ok_ && ok;
        if (!ok) failures_ += (failures_.empty() ? "" : "; ") + what;
    }
    [[nodiscard]] Outcome outcome() const
    {
        std::string d = summary_;
        if (!failures_.empty()) d += (d.empty() ? "" : "; ") + std::string("failed: ") + failures_;
        return {ok_, d};
    }

private:
    void add(const std::string& what, double value, const char* rel, double bound, bool ok)
    {
        char line[160];
        std::snprintf(line, sizeof line, "%s %.3e %s %.0e", what.c_str(), value, rel, bound);
        if (!ok) failures_ += (failures_.empty() ? "" : "; ") + std::string(line);
        ok_ = ok_ && ok;
        auto it = worst_.find(what);
        const bool worse = it == worst_.end() || (rel[0] == '<' ? value > it->second : value < it->second);
        if (worse) worst_[what] = value;
        summary_.clear();
        for (const auto& [name, v] : worst_) {
            std::snprintf(line, sizeof line, "%s %.3e", name.c_str(), v);
            summary_ += (summary_.empty() ? "" : ", ") + std::string(line);
        }
    }

    bool ok_ = true;
    std::map<std::string, double> worst_;
    std::string summary_;
    std::string failures_;
};

std::vector<catalog::CatalogEntry> fixtures() { return catalog::load_all(); }

Sample fixture_sample(const catalog::CatalogEntry& e, std::size_t count = kPoints)
{
    return sample_points(e.sample_box, count, kSeed);
}

bool has_class(const std::vector<C>& v, C c) { return std::find(v.begin(), v.end(), c) != v.end(); }

double skew_defect(const TensorValue& down, std::size_t n)
{
    double worst = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                for (std::size_t d = 0; d < n; ++d) worst = std::max(worst, std::abs(down(a, b, c, d) + down(a, b, d, c)));
            }
        }
    }
    return worst;
}

std::vector<double> apply_phi(const structure::StructureJets& s, std::span<const double> x)
{
    std::vector<double> y(s.dim, 0.0);
    for (std::size_t k = 0; k < s.dim; ++k) {
        for (std::size_t j = 0; j < s.dim; ++j) y[k] += s.phi(k, j).v * x[j];
    }
    return y;
}

std::vector<double> horizontal(const structure::StructureJets& s, Rng& rng)
{
    return schouten::project(s, rng.vector(s.dim)).horizontal;
}

double check_residual(const CheckList& checks, std::string_view id)
{
    const Check* c = find_check(checks, id);
    if (!c) throw std::runtime_error("missing check " + std::string(id));
    return c->max_residual;
}

Outcome structure_axioms()
{
    Meter m;
    for (const auto& e : fixtures()) {
        const CheckList axioms = structure::validate_structure(e.spec, fixture_sample(e));
        for (const auto& c : axioms) {
            m.expect(e.name + " " + c.id, c.passed());
            if (c.threshold < 0.1) m.below("axiom residual", c.max_residual, 1e-8);
        }
    }
    return m.outcome();
}

template <class F>
void each_point(F f)
{
    for (const auto& e : fixtures()) {
        for (const auto& p : fixture_sample(e).points) f(e, p, schouten::svk_jets(e.spec, p));
    }
}

Outcome parallelism()
{
    Meter m;
    each_point([&](const auto&, const auto&, const schouten::SvkJets& j) {
        const double worst = std::max({max_abs(schouten::svk_nabla_metric(j)), max_abs(schouten::svk_nabla_xi(j)),
                                       max_abs(schouten::svk_nabla_eta(j))});
        m.below("parallel", worst, 1e-9);
    });
    return m.outcome();
}

Outcome torsion_identity()
{
    Meter m;
    each_point([&](const auto&, const auto&, const schouten::SvkJets& j) {
        const TensorValue t = schouten::svk_torsion(j.base);
        m.below("alternation", residual(t, schouten::minus_two_alternation(schouten::second_fundamental_form(j.base))),
                1e-10);
        m.below("coefficients", residual(t, schouten::torsion_of(values(j.gamma_tilde))), 1e-10);
    });
    return m.outcome();
}

Outcome reconstruction()
{
    Meter m;
    each_point([&](const auto& e, const auto& p, const schouten::SvkJets& j) {
        const TensorValue rebuilt = schouten::metric_connection_from_torsion(e.spec, schouten::svk_torsion(j.base), p);
        m.below("reconstruction", residual(rebuilt, values(j.gamma_tilde)), 1e-9);
    });
    return m.outcome();
}

Outcome curvature_relation()
{
    Meter m;
    each_point([&](const auto& e, const auto&, const schouten::SvkJets& j) {
        m.below("covariant", residual(j.adapted.down, schouten::curvature_relation_covariant(j)), 1e-7);
        m.below("operator", residual(j.adapted.op, schouten::curvature_relation_operator(j)), 1e-7);
        m.below("plain", residual(j.adapted.op, schouten::curvature_relation_plain(j)), 1e-7);
        m.below("skew", skew_defect(j.adapted.down, e.spec.dimension), 1e-9);
    });
    return m.outcome();
}

Outcome ricci_scalar()
{
    Meter m;
    each_point([&](const auto&, const auto&, const schouten::SvkJets& j) {
        const auto rs = schouten::svk_ricci_scalar(j);
        m.below("ricci", residual(rs.ricci, rs.ricci_relation), 1e-7);
        m.below("scalar", residual(rs.scalar, rs.scalar_relation), 1e-7);
    });
    return m.outcome();
}

Outcome dim3_parallel_phi()
{
    Meter m;
    Rng rng(kSeed);
    std::size_t nonnormal = 0;
    for (std::size_t k = 0; k < 25; ++k) {
        const Sign eps = k % 2 ? Sign::minus : Sign::plus;
        const Sign mu = (k / 2) % 2 ? Sign::minus : Sign::plus;
        const ManifoldSpec spec = classify::random_dim3_structure(rng, eps, mu);
        const CheckList checks = classify::check_dim3_identities(spec, sample_points(default_box(3), 20, kSeed));
        m.below("adapted phi", check_residual(checks, "dim3.adapted_phi_parallel"), 1e-7);
        if (check_residual(checks, "dim3.normality") > 1e-3) ++nonnormal;
    }
    m.expect("non-normal structures present", nonnormal > 0);
    auto o = m.outcome();
    o.detail += ", non-normal " + std::to_string(nonnormal) + "/25";
    return o;
}

Outcome contact_killing()
{
    Meter m;
    const auto sas = catalog::load_builtin("sasakian-r5");
    for (const auto& p : fixture_sample(sas).points) {
        const auto s = structure::structure_jets(sas.spec, p);
        m.below("L - eps phi", residual(values(s.shape), s.epsilon * values(s.phi)), 1e-8);
        m.below("alpha - 1", std::abs(classify::estimate_alpha_beta(s).alpha.v - 1.0), 1e-8);
    }
    const auto bad = catalog::load_builtin("perturbed-5");
    const auto r = classify::classify_structure(bad.spec, fixture_sample(bad));
    m.above("perturbed L - eps alpha phi", r.residual(C::k_alpha_contact).max_residual, 1e-3);
    m.above("perturbed d eta - alpha Phi", r.contact_form.max_residual, 1e-3);
    return m.outcome();
}

Outcome alpha_sasakian()
{
    Meter m;
    const auto e = catalog::load_builtin("sasakian-r5");
    const Sample sample = fixture_sample(e);
    for (std::size_t i = 0; i < sample.points.size(); ++i) {
        const auto& p = sample.points[i];
        const auto j = schouten::svk_jets(e.spec, p);
        const double r = geometry::ricci_scalar(e.spec, p).scalar;
        m.below("|r~ - r + 4|", std::abs(schouten::svk_ricci_scalar(j).scalar - r + 4.0), 1e-6);
        Rng rng = classify::point_rng(kSeed, i);
        const auto x = horizontal(j.base, rng);
        const auto phi_sec = schouten::svk_sectional(j, x, apply_phi(j.base, x));
        m.below("|phi-section K~ - K - 1|", std::abs(phi_sec.adapted - phi_sec.levi_civita - 1.0), 1e-6);
        std::vector<double> xi(j.base.dim);
        for (std::size_t k = 0; k < xi.size(); ++k) xi[k] = j.base.xi(k).v;
        const auto xi_sec = schouten::svk_sectional(j, x, xi);
        m.below("|xi-section K~ - K + 1|", std::abs(xi_sec.adapted - xi_sec.levi_civita + 1.0), 1e-6);
    }
    const CheckList th = classify::check_class_theorems(e.spec, sample, e.verdicts, kSeed);
    m.below("riemann formula", check_residual(th, "theorem.alpha_sasakian.riemann"), 1e-6);
    m.below("ricci formula", check_residual(th, "theorem.alpha_sasakian.ricci"), 1e-6);
    return m.outcome();
}

Outcome beta_kenmotsu()
{
    Meter m;
    const auto e = catalog::load_builtin("kenmotsu-5");
    const Sample sample = fixture_sample(e);
    for (std::size_t i = 0; i < sample.points.size(); ++i) {
        const auto& p = sample.points[i];
        const auto j = schouten::svk_jets(e.spec, p);
        m.below("|r + 20|", std::abs(geometry::ricci_scalar(e.spec, p).scalar + 20.0), 1e-6);
        m.below("|r~|", std::abs(schouten::svk_ricci_scalar(j).scalar), 1e-6);
        Rng rng = classify::point_rng(kSeed, i);
        const auto x = horizontal(j.base, rng);
        const auto y = horizontal(j.base, rng);
        const auto sec = schouten::svk_sectional(j, x, y);
        m.below("|K + 1|", std::abs(sec.levi_civita + 1.0), 1e-6);
        m.below("|K~|", std::abs(sec.adapted), 1e-6);
    }
    const auto cosh = catalog::load_builtin("kenmotsu-cosh-5");
    const CheckList th = classify::check_class_theorems(cosh.spec, fixture_sample(cosh), cosh.verdicts, kSeed);
    std::size_t counted = 0;
    for (const auto& c : th) {
        if (c.id.rfind("theorem.beta_kenmotsu.", 0) != 0) continue;
        ++counted;
        m.expect(c.id, !c.error.has_value());
        m.below("cosh formulas", c.max_residual, 1e-6);
    }
    m.expect("cosh formulas present", counted >= 6);
    return m.outcome();
}

Outcome normality()
{
    Meter m;
    for (const auto& e : fixtures()) {
        const Sample sample = fixture_sample(e);
        double worst = 0.0;
        for (const auto& p : sample.points) worst = std::max(worst, max_abs(structure::normality_tensor(e.spec, p)));
        if (has_class(e.verdicts, C::normal)) m.below("normal fixtures", worst, 1e-7);
        if (e.name == "nonnormal-3") m.above("nonnormal-3", worst, 0.01);
        const auto r = classify::classify_structure(e.spec, sample);
        const bool a = r.commutator.passed();
        const bool b = r.adapted_normal.passed();
        const bool n = r.residual(C::normal).passed();
        m.expect(e.name + " agreement", n == (a && b));
    }
    return m.outcome();
}

Outcome dim3_identities()
{
    Meter m;
    for (const std::string_view name : {"sasakian-r3", "trans-sasakian-3"}) {
        const auto e = catalog::load_builtin(name);
        const CheckList checks = classify::check_dim3_identities(e.spec, fixture_sample(e));
        for (const std::string_view id : {"dim3.shape_fit", "dim3.nabla_xi", "dim3.nabla_eta", "dim3.nabla_phi"}) {
            m.below("shape/nabla", check_residual(checks, id), 1e-6);
        }
        m.below("d alpha(xi) + 2 alpha beta", check_residual(checks, "dim3.dalpha_xi"), 1e-6);
    }
    return m.outcome();
}

Outcome splitting()
{
    Meter m;
    for (const auto& e : fixtures()) {
        if (e.spec.dimension != 5) continue;
        for (const auto& p : fixture_sample(e).points) {
            const auto ab = classify::estimate_alpha_beta(e.spec, p);
            m.below("|alpha beta|", std::abs(ab.alpha.v * ab.beta.v), 1e-8);
        }
    }
    return m.outcome();
}

Outcome engine()
{
    Meter m;
    for (const auto& e : fixtures()) {
        for (const auto& p : fixture_sample(e, 20).points) {
            m.below("AD vs FD christoffel", residual(geometry::christoffel(e.spec, p).gamma, svk::test::fd_christoffel(e.spec, p)),
                    1e-5);
        }
    }
    Rng rng(kSeed);
    std::size_t agreed = 0;
    const std::size_t total = 1200;
    for (std::size_t k = 0; k < total; ++k) {
        const std::string text = svk::test::random_text(rng, 4);
        const auto first = expr::parse_expression(text, svk::test::kGeneratedCoordinates);
        const std::string rendered = expr::render(first);
        const auto second = expr::parse_expression(rendered, svk::test::kGeneratedCoordinates);
        if (first == second && expr::render(second) == rendered) ++agreed;
    }
    m.expect("parser round trip", agreed == total);
    auto o = m.outcome();
    o.detail += ", round trip " + std::to_string(agreed) + "/" + std::to_string(total);
    return o;
}

std::pair<int, std::string> invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "svk");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str()};
}

Outcome cli_determinism()
{
    Meter m;
    std::size_t negatives = 0;
    for (const auto& e : fixtures()) {
        const std::vector<std::string> args{"verify", "--builtin", e.name, "--seed", std::to_string(kSeed)};
        const auto a = invoke(args);
        const auto b = invoke(args);
        m.expect(e.name + " byte-identical", a.second == b.second && !a.second.empty());
        if (!e.negative) {
            m.expect(e.name + " exit 0", a.first == cli::kExitPass);
            continue;
        }
        ++negatives;
        m.expect(e.name + " exit 1", a.first == cli::kExitFail);
        std::set<std::string> failing;
        const nlohmann::json report = nlohmann::json::parse(a.second);
        for (const auto& s : report["suites"]) {
            for (const auto& c : s["checks"]) {
                if (c["verdict"] == "fail" || c["verdict"] == "error") failing.insert(c["id"].get<std::string>());
            }
        }
        m.expect(e.name + " failing ids",
                 failing == std::set<std::string>(e.documented_failures.begin(), e.documented_failures.end()));
    }
    m.expect("negative fixtures present", negatives >= 2);
    auto o = m.outcome();
    o.detail = std::to_string(fixtures().size()) + " fixtures, " + std::to_string(negatives) + " corrupted" +
               (o.detail.empty() ? "" : "; " + o.detail);
    return o;
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"structure axioms", structure_axioms},
        {"parallel g, xi, eta", parallelism},
        {"torsion from the second fundamental form", torsion_identity},
        {"connection from its torsion", reconstruction},
        {"curvature relation and skew symmetry", curvature_relation},
        {"ricci and scalar relations", ricci_scalar},
        {"parallel phi on random 3-structures", dim3_parallel_phi},
        {"contact and Killing reading", contact_killing},
        {"alpha-Sasakian curvature", alpha_sasakian},
        {"beta-Kenmotsu curvature", beta_kenmotsu},
        {"normality and its adapted criterion", normality},
        {"three-dimensional identities", dim3_identities},
        {"trans-Sasakian splitting", splitting},
        {"engine cross-checks", engine},
        {"CLI determinism and exit codes", cli_determinism},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.ok) ++failed;
        std::printf("%s %2zu %s: %s\n", o.ok ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
