#include "svk/runner.hpp"

#include "svk/catalog.hpp"
#include "svk/classify.hpp"
#include "svk/parallel.hpp"
#include "svk/schouten.hpp"
#include "svk/structure.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace svk::cli {

namespace {

using json = nlohmann::ordered_json;
using schouten::SvkJets;

struct Def {
    std::string_view id;
    std::string_view anchor;
    double threshold;
};

const std::vector<Def> kSvkDefs{
    {"svk.connection_difference", "B = ∇ − ∇~", 1e-10},
    {"svk.connection_routes", "∇~_X Y = (∇_X Y^h)^h + (∇_X Y^v)^v", 1e-10},
    {"svk.nabla_phi_routes", "(∇~_Xφ)Y = (∇_Xφ)Y + η(Y)φ∇_Xξ − εg(φ∇_Xξ,Y)ξ", 1e-9},
    {"svk.normal_form_identity",
     "(∇~_{φX}φ)φY + μ(∇~_Xφ)Y = (∇_{φX}φ)φY + μ(∇_Xφ)Y + μη(Y)φ∇_Xξ + εμg(∇_{φX}ξ − φ∇_Xξ,Y)ξ", 1e-9},
    {"svk.parallel_eta", "∇~η = 0", 1e-9},
    {"svk.parallel_metric", "∇~g = 0", 1e-9},
    {"svk.parallel_xi", "∇~ξ = 0", 1e-9},
    {"svk.second_fundamental_form", "B(X,Y) = −η(Y)LX + εg(LX,Y)ξ", 1e-10},
    {"svk.torsion_alternation", "T~ = −2A(B)", 1e-10},
    {"svk.torsion_direct", "T~(X,Y) = η(X)∇_Yξ − η(Y)∇_Xξ + 2dη(X,Y)ξ", 1e-10},
    {"svk.torsion_reconstruction", "g(∇~_X Y,Z) = g(∇_X Y,Z) + ½(g(T~(X,Y),Z) − g(T~(X,Z),Y) − g(T~(Y,Z),X))",
     1e-9},
};

const std::vector<Def> kCurvatureDefs{
    {"curvature.bianchi", "R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0", 1e-9},
    {"curvature.relation_covariant",
     "R~(X,Y,Z,W) from R(X,Y,Z,W), ∇L and L", 1e-7},
    {"curvature.relation_operator", "R~(X,Y)Z from R(X,Y)Z, ∇L and L", 1e-7},
    {"curvature.relation_plain", "R~(X,Y)Z from R(X,Y)Z, ∇ξ and ∇η", 1e-7},
    {"curvature.ricci_relation", "S~ from S, ∇L and L", 1e-7},
    {"curvature.scalar_relation", "r~ from r, ∇L and L", 1e-7},
    {"curvature.sectional_relation",
     "K~ = K + Q⁻¹(−η(X)R(X,Y,Y,ξ) − η(Y)R(Y,X,X,ξ) + ε((∇_Xη)(X)(∇_Yη)(Y) − (∇_Xη)(Y)(∇_Yη)(X)))", 1e-7},
    {"curvature.shape.curvature_xi", "R(X,Y)ξ = −(∇_X L)Y + (∇_Y L)X", 1e-8},
    {"curvature.shape.eta_curvature", "η(R(X,Y)Z) = εg((∇_X L)Y − (∇_Y L)X,Z)", 1e-8},
    {"curvature.shape.eta_shape", "η(LY) = 0", 1e-8},
    {"curvature.shape.nabla_eta", "(∇_Xη)(Y) = −εg(LX,Y)", 1e-8},
    {"curvature.shape.nabla_shape_xi", "g((∇_X L)Y, ξ) = g(LX, LY)", 1e-8},
    {"curvature.svk_skew", "R~(X,Y,Z,W) = −R~(X,Y,W,Z)", 1e-9},
};

constexpr double kExpectedTolerance = 1e-6;
constexpr double kParameterTolerance = 1e-8;
constexpr int kSectionDraws = 64;

class Values {
public:
    explicit Values(const std::vector<Def>& defs) : defs_(&defs), v_(defs.size(), 0.0) {}

    void set(std::string_view id, double value)
    {
        for (std::size_t k = 0; k < defs_->size(); ++k) {
            if ((*defs_)[k].id == id) {
                v_[k] = value;
                return;
            }
        }
        throw std::logic_error("unknown check id " + std::string(id));
    }
    [[nodiscard]] const std::vector<double>& values() const { return v_; }

private:
    const std::vector<Def>* defs_;
    std::vector<double> v_;
};

std::vector<double> svk_values(const SvkJets& j)
{
    const auto& s = j.base;
    Values out(kSvkDefs);
    out.set("svk.parallel_metric", max_abs(schouten::svk_nabla_metric(j)));
    out.set("svk.parallel_xi", max_abs(schouten::svk_nabla_xi(j)));
    out.set("svk.parallel_eta", max_abs(schouten::svk_nabla_eta(j)));
    const TensorValue gt = values(j.gamma_tilde);
    out.set("svk.connection_routes", residual(gt, schouten::svk_connection_projected(s)));
    const TensorValue b = schouten::second_fundamental_form(s);
    out.set("svk.second_fundamental_form", residual(b, schouten::second_fundamental_form_shape(s)));
    out.set("svk.connection_difference", residual(b, schouten::connection_difference(s.gamma(), gt)));
    const TensorValue t = schouten::svk_torsion(s);
    out.set("svk.torsion_alternation", residual(t, schouten::minus_two_alternation(b)));
    out.set("svk.torsion_direct", residual(t, schouten::torsion_of(gt)));
    out.set("svk.torsion_reconstruction",
            residual(gt, schouten::metric_connection_from_torsion(s.g(), s.g_inv(), s.gamma(), t)));
    out.set("svk.nabla_phi_routes", residual(schouten::svk_nabla_phi(j), schouten::svk_nabla_phi_formula(s)));
    const auto ab = classify::estimate_alpha_beta(s);
    out.set("svk.normal_form_identity", classify::class_residuals(j, ab).gener);
    return out.values();
}

double bianchi_residual(const TensorValue& op)
{
    const std::size_t n = op.dim();
    double worst = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t k = 0; k < n; ++k) {
                    worst = std::max(worst, std::abs(op(l, i, a, k) + op(l, a, k, i) + op(l, k, i, a)));
                }
            }
        }
    }
    return relative_residual(worst, max_abs(op));
}

double last_pair_skew(const TensorValue& down)
{
    const std::size_t n = down.dim();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t w = 0; w < n; ++w) worst = std::max(worst, std::abs(down(i, a, k, w) + down(i, a, w, k)));
            }
        }
    }
    return relative_residual(worst, max_abs(down));
}

double sectional_residual(const SvkJets& j, Rng& rng)
{
    const std::size_t n = j.base.dim;
    for (int attempt = 0; attempt < kSectionDraws; ++attempt) {
        const auto x = rng.vector(n);
        const auto y = rng.vector(n);
        try {
            const auto k = schouten::svk_sectional(j, x, y);
            return residual(k.adapted, k.relation);
        } catch (const geometry::DegenerateSection&) {
        }
    }
    throw geometry::DegenerateSection("no nondegenerate section found");
}

std::vector<double> curvature_values(const SvkJets& j, Rng& rng)
{
    Values out(kCurvatureDefs);
    out.set("curvature.relation_plain", residual(j.adapted.op, schouten::curvature_relation_plain(j)));
    out.set("curvature.relation_operator", residual(j.adapted.op, schouten::curvature_relation_operator(j)));
    out.set("curvature.relation_covariant", residual(j.adapted.down, schouten::curvature_relation_covariant(j)));
    out.set("curvature.svk_skew", last_pair_skew(j.adapted.down));
    out.set("curvature.bianchi", bianchi_residual(j.levi_civita.op));
    const auto rs = schouten::svk_ricci_scalar(j);
    out.set("curvature.ricci_relation", residual(rs.ricci, rs.ricci_relation));
    out.set("curvature.scalar_relation", residual(rs.scalar, rs.scalar_relation));
    const auto si = schouten::shape_identities(j);
    out.set("curvature.shape.nabla_eta", si.nabla_eta);
    out.set("curvature.shape.curvature_xi", si.curvature_xi);
    out.set("curvature.shape.eta_curvature", si.eta_curvature);
    out.set("curvature.shape.eta_shape", si.eta_shape);
    out.set("curvature.shape.nabla_shape_xi", si.nabla_shape_xi);
    out.set("curvature.sectional_relation", sectional_residual(j, rng));
    return out.values();
}

CheckList make_checks(const std::vector<Def>& defs)
{
    CheckList out;
    for (const auto& d : defs) out.emplace_back(std::string(d.id), std::string(d.anchor), d.threshold);
    return out;
}

void sort_checks(CheckList& checks)
{
    std::sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
}

struct Identities {
    CheckList svk;
    CheckList curvature;
};

Identities identity_suites(const ManifoldSpec& spec, const Sample& sample, std::uint64_t seed, bool want_svk,
                           bool want_curvature)
{
    struct PointEval {
        std::optional<std::string> error;
        std::vector<double> svk;
        std::vector<double> curvature;
        std::vector<double> expected;  // r, r~ against the declared expressions
    };
    const bool scalar_expected = spec.expected.scalar.has_value();
    const bool svk_scalar_expected = spec.expected.scalar_svk.has_value();

    const auto evals = map_indices(sample.points.size(), [&](std::size_t p) {
        PointEval e;
        try {
            const auto& x = sample.points[p];
            const SvkJets j = schouten::svk_jets(spec, x);
            if (want_svk) e.svk = svk_values(j);
            if (want_curvature) {
                Rng rng = classify::point_rng(seed, p);
                e.curvature = curvature_values(j, rng);
                if (scalar_expected) {
                    const double r = geometry::ricci_scalar(j.levi_civita.op, j.base.g_inv()).scalar;
                    e.expected.push_back(residual(r, expr::eval_value(*spec.expected.scalar, x)));
                }
                if (svk_scalar_expected) {
                    const double r = schouten::svk_ricci_scalar(j).scalar;
                    e.expected.push_back(residual(r, expr::eval_value(*spec.expected.scalar_svk, x)));
                }
            }
        } catch (const std::exception& ex) {
            e.error = std::string(ex.what());
        }
        return e;
    });

    Identities out;
    if (want_svk) out.svk = make_checks(kSvkDefs);
    if (want_curvature) {
        out.curvature = make_checks(kCurvatureDefs);
        if (scalar_expected) out.curvature.emplace_back("curvature.scalar_expected", "r = declared scalar", kExpectedTolerance);
        if (svk_scalar_expected) {
            out.curvature.emplace_back("curvature.scalar_svk_expected", "r~ = declared scalar", kExpectedTolerance);
        }
    }
    for (std::size_t p = 0; p < evals.size(); ++p) {
        const auto& e = evals[p];
        if (e.error) {
            for (auto& c : out.svk) c.fail(*e.error, p);
            for (auto& c : out.curvature) c.fail(*e.error, p);
            continue;
        }
        for (std::size_t k = 0; k < e.svk.size(); ++k) out.svk[k].record(e.svk[k], p);
        for (std::size_t k = 0; k < e.curvature.size(); ++k) out.curvature[k].record(e.curvature[k], p);
        for (std::size_t k = 0; k < e.expected.size(); ++k) out.curvature[e.curvature.size() + k].record(e.expected[k], p);
    }
    return out;
}

Check agreement(std::string id, std::string anchor, std::size_t mismatches, std::string note)
{
    Check c(std::move(id), std::move(anchor), 0.5);
    c.max_residual = static_cast<double>(mismatches);
    c.note = std::move(note);
    return c;
}

struct ClassifyOutcome {
    CheckList checks;
    ClassSummary summary;
};

ClassifyOutcome classify_suite(const ManifoldSpec& spec, const Sample& sample, double tol, bool tables)
{
    const auto rep = classify::classify_structure(spec, sample, tol);
    ClassifyOutcome out;
    out.summary.classes = rep.classes();
    for (auto c : kAllClasses) {
        if (!rep.notes[static_cast<std::size_t>(c)].empty()) out.summary.notes.emplace_back(c, rep.notes[static_cast<std::size_t>(c)]);
    }
    out.summary.max_abs_alpha = rep.max_abs_alpha;
    out.summary.max_abs_beta = rep.max_abs_beta;
    if (tables) {
        out.summary.alpha_hat = rep.alpha_hat;
        out.summary.beta_hat = rep.beta_hat;
    }

    const auto& claimed = spec.expected.classes;
    const auto is_claimed = [&](StructureClass c) {
        return claimed && std::find(claimed->begin(), claimed->end(), c) != claimed->end();
    };
    for (auto c : kAllClasses) {
        Check k = rep.residual(c);
        const auto& note = rep.notes[static_cast<std::size_t>(c)];
        if (is_claimed(c)) {
            if (k.passed() && !rep.has(c)) k.error = note;
        } else {
            k.informational = true;
            k.note = rep.has(c) ? "member, not claimed" : "not claimed";
        }
        if (!note.empty() && k.note.empty()) k.note = note;
        out.checks.push_back(std::move(k));
    }
    for (Check k : {rep.contact_form, rep.commutator, rep.adapted_normal}) {
        k.informational = true;
        out.checks.push_back(std::move(k));
    }

    // Point-wise companions for the agreement checks.
    struct Extra {
        std::optional<std::string> error;
        double norma = 0.0;
        double normcond = 0.0;
        double alpha = 0.0;
        double beta = 0.0;
    };
    const auto extras = map_indices(sample.points.size(), [&](std::size_t p) {
        Extra e;
        try {
            const auto& x = sample.points[p];
            const SvkJets j = schouten::svk_jets(spec, x);
            const auto ab = classify::estimate_alpha_beta(j.base);
            const auto r = classify::class_residuals(j, ab);
            e.norma = r.norma;
            e.normcond = r.normcond;
            if (spec.expected.alpha) e.alpha = residual(ab.alpha.v, expr::eval_value(*spec.expected.alpha, x));
            if (spec.expected.beta) e.beta = residual(ab.beta.v, expr::eval_value(*spec.expected.beta, x));
        } catch (const std::exception& ex) {
            e.error = std::string(ex.what());
        }
        return e;
    });
    Check norma("class.norma", "(∇_{φX}φ)Y − φ(∇_Xφ)Y − εμg(∇_Xξ,Y)ξ = 0", tol);
    Check normcond("class.normcond", "(∇_{φX}φ)φY + μ(∇_Xφ)Y + μη(Y)φ∇_Xξ = 0", tol);
    norma.informational = normcond.informational = true;
    std::optional<Check> alpha;
    std::optional<Check> beta;
    if (spec.expected.alpha) alpha = Check("class.alpha_expected", "α̂ = declared α", kParameterTolerance);
    if (spec.expected.beta) beta = Check("class.beta_expected", "β̂ = declared β", kParameterTolerance);
    for (std::size_t p = 0; p < extras.size(); ++p) {
        const auto& e = extras[p];
        if (e.error) {
            for (Check* c : {&norma, &normcond}) c->fail(*e.error, p);
            if (alpha) alpha->fail(*e.error, p);
            if (beta) beta->fail(*e.error, p);
            continue;
        }
        norma.record(e.norma, p);
        normcond.record(e.normcond, p);
        if (alpha) alpha->record(e.alpha, p);
        if (beta) beta->record(e.beta, p);
    }

    const auto ok = [&](const Check& c) { return !c.error && c.max_residual < tol; };
    const bool normal = ok(rep.residual(StructureClass::normal));
    out.checks.push_back(agreement("class.normality_agreement",
                                   "normal ⇔ Lφ = φL and (∇~_{φX}φ)φY + μ(∇~_Xφ)Y = 0",
                                   normal != (ok(rep.commutator) && ok(rep.adapted_normal)) ? 1 : 0,
                                   normal ? "normal" : "not normal"));
    out.checks.push_back(agreement("class.normal_forms_agreement", "[φ,φ] − 2μdη⊗ξ = 0 ⇔ norma ⇔ normcond",
                                   static_cast<std::size_t>(normal != ok(norma)) + (normal != ok(normcond)),
                                   normal ? "normal" : "not normal"));
    const bool contact = ok(rep.residual(StructureClass::alpha_contact));
    out.checks.push_back(agreement("class.contact_agreement", "dη = α̂Φ ⇔ L − εα̂φ symmetric",
                                   contact != ok(rep.contact_form) ? 1 : 0, contact ? "agree: holds" : "agree: fails"));
    out.checks.push_back(std::move(norma));
    out.checks.push_back(std::move(normcond));
    if (alpha) out.checks.push_back(std::move(*alpha));
    if (beta) out.checks.push_back(std::move(*beta));
    sort_checks(out.checks);
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read spec file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool contains(const std::vector<std::string>& v, std::string_view s)
{
    return std::find(v.begin(), v.end(), s) != v.end();
}

std::vector<std::string> resolve_suites(const RunConfig& config, std::size_t dim)
{
    std::vector<std::string> requested = config.suites;
    for (const auto& s : requested) {
        if (std::find(kSuiteNames.begin(), kSuiteNames.end(), s) == kSuiteNames.end()) {
            throw UsageError("unknown suite '" + s + "'");
        }
    }
    if (config.command == Command::classify) {
        for (const auto& s : requested) {
            if (s != "classify" && s != "theorems") throw UsageError("classify runs only the classify and theorems suites");
        }
        if (requested.empty()) requested = {"classify", "theorems"};
    } else if (requested.empty()) {
        requested = {"axioms", "svk", "curvature", "classify", "theorems"};
        if (dim == 3) requested.emplace_back("dim3");
    }
    if (contains(requested, "dim3") && dim != 3) throw UsageError("suite dim3 needs a 3-dimensional chart");
    std::vector<std::string> out;
    for (auto name : kSuiteNames) {
        if (contains(requested, name)) out.emplace_back(name);
    }
    return out;
}

Suite gate_failure(const std::string& name, const CheckList& axioms)
{
    Check c(name + ".structure_gate", "structure axioms hold", 0.0);
    std::string what = "structure axioms fail:";
    std::optional<std::size_t> point;
    for (const auto& a : axioms) {
        if (a.error || a.max_residual > structure::kAxiomHardLimit) {
            what += " " + a.id;
            if (!point) point = a.worst_point;
        }
    }
    c.fail(what, point.value_or(0));
    return Suite{name, {c}};
}

std::string format_double(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

std::string verdict_of(const Check& c)
{
    if (c.error) return "error";
    if (c.informational) return "info";
    return c.passed() ? "pass" : "fail";
}

json number(double x)
{
    if (!std::isfinite(x)) return nullptr;
    return x + 0.0;
}

json class_list(const std::vector<StructureClass>& classes)
{
    json a = json::array();
    for (auto c : classes) a.push_back(std::string(to_string(c)));
    return a;
}

}  // namespace

bool Report::passed() const
{
    return std::all_of(suites.begin(), suites.end(), [](const Suite& s) { return s.passed(); });
}

const Suite* Report::suite(std::string_view name) const
{
    for (const auto& s : suites) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

const Check* Report::check(std::string_view id) const
{
    for (const auto& s : suites) {
        if (const Check* c = find_check(s.checks, id)) return c;
    }
    return nullptr;
}

Report run(const RunConfig& config)
{
    if (config.points < 1) throw UsageError("--points must be at least 1");
    if (!(config.tol > 0.0)) throw UsageError("--tol must be positive");
    if (config.builtin.has_value() == config.spec_path.has_value()) {
        throw UsageError("give exactly one of --builtin and --spec");
    }

    Report rep;
    rep.config = config;
    SampleBox box;
    if (config.builtin) {
        auto entry = catalog::load_builtin(*config.builtin);
        rep.spec_name = entry.name;
        rep.spec = std::move(entry.spec);
        box = entry.sample_box;
    } else {
        rep.spec = parse_manifold_spec(read_file(*config.spec_path));
        rep.spec_name = std::filesystem::path(*config.spec_path).stem().string();
        box = rep.spec.box.value_or(default_box(rep.spec.dimension));
    }
    const ManifoldSpec& spec = rep.spec;
    if (config.box) {
        if (config.box->size() != spec.dimension) {
            throw UsageError("--box has " + std::to_string(config.box->size()) + " intervals, chart has dimension " +
                             std::to_string(spec.dimension));
        }
        box = *config.box;
    }
    rep.config.box = box;
    rep.config.suites = resolve_suites(config, spec.dimension);
    rep.sample = sample_points(box, config.points, config.seed);
    const Sample& sample = rep.sample;
    const auto& suites = rep.config.suites;

    CheckList axioms = structure::validate_structure(spec, sample);
    sort_checks(axioms);
    const bool gate_ok = structure::structure_gate(axioms) != structure::Gate::fail;
    if (contains(suites, "axioms")) rep.suites.push_back({"axioms", axioms});

    const bool want_svk = contains(suites, "svk");
    const bool want_curvature = contains(suites, "curvature");
    if (!gate_ok) {
        for (const auto& name : suites) {
            if (name != "axioms") rep.suites.push_back(gate_failure(name, axioms));
        }
        return rep;
    }

    if (want_svk || want_curvature) {
        auto ids = identity_suites(spec, sample, config.seed, want_svk, want_curvature);
        if (want_svk) {
            sort_checks(ids.svk);
            rep.suites.push_back({"svk", std::move(ids.svk)});
        }
        if (want_curvature) {
            sort_checks(ids.curvature);
            rep.suites.push_back({"curvature", std::move(ids.curvature)});
        }
    }
    std::vector<StructureClass> verdicts;
    if (contains(suites, "classify") || contains(suites, "theorems")) {
        auto outcome = classify_suite(spec, sample, config.tol, config.command == Command::classify);
        verdicts = outcome.summary.classes;
        if (contains(suites, "classify")) rep.suites.push_back({"classify", std::move(outcome.checks)});
        rep.classification = std::move(outcome.summary);
    }
    if (contains(suites, "theorems")) {
        auto th = classify::check_class_theorems(spec, sample, verdicts, config.seed, config.tol);
        sort_checks(th);
        rep.suites.push_back({"theorems", std::move(th)});
    }
    if (contains(suites, "dim3")) {
        auto d3 = classify::check_dim3_identities(spec, sample, config.tol);
        sort_checks(d3);
        rep.suites.push_back({"dim3", std::move(d3)});
    }
    return rep;
}

Report run_verify(const RunConfig& config)
{
    RunConfig c = config;
    c.command = Command::verify;
    return run(c);
}

Report run_classify(const RunConfig& config)
{
    RunConfig c = config;
    c.command = Command::classify;
    return run(c);
}

std::string render_json(const Report& report)
{
    const auto& cfg = report.config;
    const auto& spec = report.spec;
    json j;
    j["report_version"] = kReportVersion;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["command"] = cfg.command == Command::verify ? "verify" : "classify";

    json config;
    if (cfg.builtin) config["builtin"] = *cfg.builtin;
    if (cfg.spec_path) config["spec"] = *cfg.spec_path;
    config["points"] = cfg.points;
    config["seed"] = cfg.seed;
    config["tol"] = cfg.tol;
    config["suites"] = cfg.suites;
    json box = json::array();
    if (cfg.box) {
        for (const auto& iv : *cfg.box) box.push_back({iv.lo, iv.hi});
    }
    config["box"] = box;
    config["sampler"] = "mt19937_64, (x >> 11) * 2^-53, lo + (hi - lo) * u per coordinate";
    j["config"] = config;

    json s;
    s["name"] = report.spec_name;
    s["dimension"] = spec.dimension;
    s["coordinates"] = spec.coordinates;
    s["epsilon"] = static_cast<int>(spec.epsilon);
    s["mu"] = static_cast<int>(spec.mu);
    if (spec.signature) {
        s["signature"] = {{"negative", spec.signature->negative}, {"positive", spec.signature->positive}};
    } else {
        s["signature"] = nullptr;
    }
    s["claimed_classes"] = spec.expected.classes ? class_list(*spec.expected.classes) : json::array();
    j["spec"] = s;

    json suites = json::array();
    for (const auto& suite : report.suites) {
        json su;
        su["name"] = suite.name;
        su["verdict"] = suite.passed() ? "pass" : "fail";
        json checks = json::array();
        for (const auto& c : suite.checks) {
            json cj;
            cj["id"] = c.id;
            cj["anchor"] = c.anchor;
            cj["max_residual"] = number(c.max_residual);
            cj["threshold"] = c.threshold;
            cj["verdict"] = verdict_of(c);
            if (c.worst_point && *c.worst_point < report.sample.points.size()) {
                cj["worst_point"] = {{"index", *c.worst_point}, {"coordinates", report.sample.points[*c.worst_point]}};
            } else {
                cj["worst_point"] = nullptr;
            }
            if (c.error) cj["error"] = *c.error;
            if (!c.note.empty()) cj["note"] = c.note;
            checks.push_back(std::move(cj));
        }
        su["checks"] = std::move(checks);
        suites.push_back(std::move(su));
    }
    j["suites"] = std::move(suites);

    if (report.classification) {
        const auto& cl = *report.classification;
        json cj;
        cj["classes"] = class_list(cl.classes);
        json notes = json::object();
        for (const auto& [c, n] : cl.notes) notes[std::string(to_string(c))] = n;
        cj["notes"] = notes;
        cj["max_abs_alpha"] = number(cl.max_abs_alpha);
        cj["max_abs_beta"] = number(cl.max_abs_beta);
        if (!cl.alpha_hat.empty()) {
            json points = json::array();
            for (std::size_t p = 0; p < cl.alpha_hat.size(); ++p) {
                points.push_back({{"index", p},
                                  {"coordinates", report.sample.points[p]},
                                  {"alpha_hat", number(cl.alpha_hat[p])},
                                  {"beta_hat", number(cl.beta_hat[p])}});
            }
            cj["points"] = std::move(points);
        }
        j["classification"] = std::move(cj);
    }
    j["overall"] = report.passed() ? "pass" : "fail";
    return j.dump(2) + "\n";
}

std::string render_text(const Report& report)
{
    const auto& cfg = report.config;
    std::ostringstream o;
    o << kToolName << ' ' << kToolVersion << "  " << (cfg.command == Command::verify ? "verify" : "classify") << "  "
      << report.spec_name << "  (dimension " << report.spec.dimension << ", epsilon "
      << static_cast<int>(report.spec.epsilon) << ", mu " << static_cast<int>(report.spec.mu) << ")\n";
    o << "points " << cfg.points << "  seed " << cfg.seed << "  tol " << format_double(cfg.tol) << "\n\n";

    char line[512];
    std::snprintf(line, sizeof line, "%-10s %-40s %12s %10s %-7s %s\n", "suite", "check", "max_residual", "threshold",
                  "verdict", "worst");
    o << line;
    for (const auto& suite : report.suites) {
        for (const auto& c : suite.checks) {
            std::string worst = c.worst_point ? "#" + std::to_string(*c.worst_point) : "-";
            if (c.error) worst += "  " + *c.error;
            std::snprintf(line, sizeof line, "%-10s %-40s %12s %10s %-7s ", suite.name.c_str(), c.id.c_str(),
                          format_double(c.max_residual).c_str(), format_double(c.threshold).c_str(),
                          verdict_of(c).c_str());
            o << line << worst << '\n';
        }
    }
    if (report.classification) {
        const auto& cl = *report.classification;
        o << "\nclasses:";
        if (cl.classes.empty()) o << " none";
        for (auto c : cl.classes) o << ' ' << to_string(c);
        o << '\n';
        for (const auto& [c, n] : cl.notes) o << "  " << n << '\n';
        if (!cl.alpha_hat.empty()) {
            o << "\npoint  alpha_hat     beta_hat\n";
            for (std::size_t p = 0; p < cl.alpha_hat.size(); ++p) {
                std::snprintf(line, sizeof line, "%5zu  %+.6e %+.6e\n", p, cl.alpha_hat[p] + 0.0, cl.beta_hat[p] + 0.0);
                o << line;
            }
        }
    }
    o << "\noverall: " << (report.passed() ? "pass" : "fail") << '\n';
    return o.str();
}

}  // namespace svk::cli
