#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

#include "svk/classify.hpp"

#include <map>

using namespace svk;
using namespace svk::classify;
using C = StructureClass;

namespace {

bool in(const std::vector<C>& v, C c) { return std::find(v.begin(), v.end(), c) != v.end(); }

const ClassificationReport& report_of(std::string_view name)
{
    static std::map<std::string, ClassificationReport, std::less<>> cache;
    auto it = cache.find(name);
    if (it == cache.end()) {
        const auto e = svk::test::entry(name);
        it = cache.emplace(std::string(name), classify_structure(e.spec, svk::test::entry_sample(e, 30, 11))).first;
    }
    return it->second;
}

double check_residual(const CheckList& checks, std::string_view id)
{
    const Check* c = find_check(checks, id);
    REQUIRE(c != nullptr);
    return c->max_residual;
}

}  // namespace

TEST_CASE("verdicts match the catalog")
{
    for (const auto& name : catalog::builtin_names()) {
        CAPTURE(name);
        const auto e = svk::test::entry(name);
        CHECK(report_of(name).classes() == e.verdicts);
    }
}

TEST_CASE("alpha and beta estimates on the pure fixtures")
{
    struct Want {
        const char* name;
        double alpha;
        double beta;
    };
    for (const Want& w : {Want{"sasakian-r5", 1.0, 0.0}, Want{"sasakian-r3", 1.0, 0.0}, Want{"kenmotsu-5", 0.0, 1.0},
                          Want{"cosymplectic-r5", 0.0, 0.0}}) {
        CAPTURE(w.name);
        const auto& r = report_of(w.name);
        for (std::size_t p = 0; p < r.alpha_hat.size(); ++p) {
            CHECK(std::abs(r.alpha_hat[p] - w.alpha) < 1e-10);
            CHECK(std::abs(r.beta_hat[p] - w.beta) < 1e-10);
        }
    }
}

TEST_CASE("declared alpha and beta are reproduced")
{
    for (const auto& e : catalog::load_all()) {
        if (e.negative) continue;
        CAPTURE(e.name);
        const auto sample = svk::test::entry_sample(e, 20, 12);
        for (const auto& p : sample.points) {
            const AlphaBeta ab = estimate_alpha_beta(e.spec, p);
            if (e.spec.expected.alpha) CHECK(std::abs(ab.alpha.v - expr::eval_value(*e.spec.expected.alpha, p)) < 1e-8);
            if (e.spec.expected.beta) CHECK(std::abs(ab.beta.v - expr::eval_value(*e.spec.expected.beta, p)) < 1e-8);
        }
    }
}

TEST_CASE("beta follows tanh t on the cosh warped product")
{
    const auto e = svk::test::entry("kenmotsu-cosh-5");
    const auto sample = svk::test::entry_sample(e, 25, 13);
    const ClassificationReport r = classify_structure(e.spec, sample);
    for (std::size_t p = 0; p < sample.points.size(); ++p) {
        CHECK(std::abs(r.beta_hat[p] - std::tanh(sample.points[p][0])) < 1e-8);
        CHECK(std::abs(r.alpha_hat[p]) < 1e-12);
    }
    CHECK(r.has(C::beta_kenmotsu));
    CHECK(r.max_dbeta_defect < 1e-8);
}

TEST_CASE("a vanishing alpha is reported, not accepted")
{
    const auto& r = report_of("cosymplectic-r5");
    CHECK(r.residual(C::alpha_sasakian).passed());
    CHECK(!r.has(C::alpha_sasakian));
    CHECK(r.notes[static_cast<std::size_t>(C::alpha_contact)] == "not alpha-contact: alpha vanishes");
    CHECK(r.notes[static_cast<std::size_t>(C::beta_kenmotsu)] == "not beta-kenmotsu: beta vanishes");
}

TEST_CASE("Sasakian is not beta-Kenmotsu")
{
    CHECK(report_of("sasakian-r5").residual(C::beta_kenmotsu).max_residual > 0.1);
    CHECK(report_of("kenmotsu-5").residual(C::alpha_sasakian).max_residual > 0.1);
}

TEST_CASE("normal fixtures fit the normal shape operator")
{
    for (const auto& e : catalog::load_all()) {
        if (!in(e.verdicts, C::normal)) continue;
        CAPTURE(e.name);
        for (const auto& p : svk::test::entry_sample(e, 10, 14).points) {
            const auto j = schouten::svk_jets(e.spec, p);
            const ClassResiduals r = class_residuals(j, estimate_alpha_beta(j.base));
            CHECK(r.ncon_fit < 1e-8);
            CHECK(r.norma < 1e-8);
            CHECK(r.normcond < 1e-8);
            CHECK(r.gener < 1e-9);
        }
    }
}

TEST_CASE("class implications and tolerance monotonicity")
{
    for (const auto& fx : svk::test::property_fixtures(12, 5)) {
        CAPTURE(fx.name);
        const Sample s = sample_points(fx.box, 8, 15);
        const ClassificationReport tight = classify_structure(fx.spec, s, 1e-7);
        const ClassificationReport loose = classify_structure(fx.spec, s, 1e-3);
        for (auto c : kAllClasses) {
            if (tight.has(c)) CHECK(loose.has(c));
        }
        for (const auto* r : {&tight, &loose}) {
            for (auto c : {C::alpha_sasakian, C::beta_kenmotsu, C::cosymplectic}) {
                if (r->has(c)) CHECK(r->residual(C::trans_sasakian).passed());
            }
            if (r->has(C::alpha_sasakian)) CHECK(r->has(C::alpha_contact));
            if (r->has(C::k_alpha_contact)) CHECK(r->has(C::alpha_contact));
        }
        for (auto c : {C::alpha_sasakian, C::beta_kenmotsu, C::trans_sasakian, C::cosymplectic}) {
            if (tight.has(c)) CHECK(tight.has(C::normal));
        }
    }
}

TEST_CASE("normality agrees with the adapted-connection criterion")
{
    for (const auto& fx : svk::test::property_fixtures(12, 6)) {
        CAPTURE(fx.name);
        const ClassificationReport r = classify_structure(fx.spec, sample_points(fx.box, 10, 16));
        const bool normal = r.residual(C::normal).passed();
        CHECK(normal == (r.commutator.passed() && r.adapted_normal.passed()));
    }
}

TEST_CASE("the contact condition agrees with the dη = αΦ reading")
{
    for (const auto& fx : svk::test::property_fixtures(8, 7)) {
        CAPTURE(fx.name);
        const ClassificationReport r = classify_structure(fx.spec, sample_points(fx.box, 10, 17));
        const double a = r.residual(C::alpha_contact).max_residual;
        const double b = r.contact_form.max_residual;
        const bool both_small = a < 1e-7 && b < 1e-7;
        const bool both_large = a > 1e-3 && b > 1e-3;
        CHECK((both_small || both_large));
    }
}

TEST_CASE("three-dimensional identities on the normal 3-fixtures")
{
    for (const std::string_view name : {"sasakian-r3", "trans-sasakian-3"}) {
        CAPTURE(name);
        const auto e = svk::test::entry(name);
        const CheckList checks = check_dim3_identities(e.spec, svk::test::entry_sample(e, 30, 18));
        for (const auto& c : checks) {
            CAPTURE(c.id);
            CHECK(c.passed());
        }
        CHECK(check_residual(checks, "dim3.nabla_phi") < 1e-8);
        CHECK(check_residual(checks, "dim3.dalpha_xi") < 1e-8);
        CHECK(check_residual(checks, "dim3.equivalence") == 0.0);
    }
    const auto e5 = svk::test::entry("sasakian-r5");
    CHECK_THROWS_AS(check_dim3_identities(e5.spec, svk::test::entry_sample(e5, 2, 1)), std::invalid_argument);
}

TEST_CASE("non-normal 3-structures still have parallel phi for the adapted connection")
{
    Rng rng(404);
    std::size_t nonnormal = 0;
    for (std::size_t k = 0; k < 16; ++k) {
        const Sign eps = k % 2 ? Sign::minus : Sign::plus;
        const Sign mu = (k / 2) % 2 ? Sign::minus : Sign::plus;
        const ManifoldSpec spec = random_dim3_structure(rng, eps, mu);
        const CheckList checks = check_dim3_identities(spec, sample_points(default_box(3), 10, 19));
        CHECK(check_residual(checks, "dim3.adapted_phi_parallel") < 1e-7);
        CHECK(check_residual(checks, "dim3.equivalence") == 0.0);
        if (check_residual(checks, "dim3.normality") > 0.01) ++nonnormal;
    }
    CHECK(nonnormal >= 10);
}

TEST_CASE("class theorems hold on the fixtures")
{
    for (const auto& e : catalog::load_all()) {
        if (e.negative) continue;
        CAPTURE(e.name);
        const auto sample = svk::test::entry_sample(e, 15, 20);
        const CheckList checks = check_class_theorems(e.spec, sample, e.verdicts, 42);
        if (e.spec.dimension == 3) CHECK(checks.empty());
        for (const auto& c : checks) {
            CAPTURE(c.id);
            CHECK(c.passed());
        }
    }
}

TEST_CASE("alpha and beta do not coexist in dimension five")
{
    for (const auto& e : catalog::load_all()) {
        if (e.spec.dimension != 5 || e.negative) continue;
        CAPTURE(e.name);
        const auto& r = report_of(e.name);
        for (std::size_t p = 0; p < r.alpha_hat.size(); ++p) CHECK(std::abs(r.alpha_hat[p] * r.beta_hat[p]) < 1e-8);
    }
}

TEST_CASE("the point stream does not depend on evaluation order")
{
    Rng a = point_rng(42, 3);
    Rng b = point_rng(42, 3);
    Rng c = point_rng(42, 4);
    const auto va = a.vector(5);
    CHECK(va == b.vector(5));
    CHECK(va != c.vector(5));
}

TEST_CASE("a broken structure is refused")
{
    auto e = svk::test::entry("kenmotsu-5");
    e.spec.eta[0] = expr::Expr::constant(0.5);
    CHECK_THROWS_AS(classify_structure(e.spec, svk::test::entry_sample(e, 5, 21)), structure::StructureDefect);
}
