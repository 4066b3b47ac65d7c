#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

#include "svk/runner.hpp"

#include <fstream>
#include <set>
#include <sstream>

using namespace svk;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

cli::Report verify_builtin(const std::string& name, std::size_t points = 30)
{
    cli::RunConfig cfg;
    cfg.builtin = name;
    cfg.points = points;
    return cli::run(cfg);
}

std::set<std::string> failing_ids(const cli::Report& r)
{
    std::set<std::string> out;
    for (const auto& s : r.suites) {
        for (const auto& c : s.checks) {
            if (!c.passed()) out.insert(c.id);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("the catalog lists every document")
{
    const auto names = catalog::builtin_names();
    CHECK(names.size() == 11);
    CHECK(std::is_sorted(names.begin(), names.end()));
    for (const auto& n : names) CHECK(catalog::load_builtin(n).name == n);
}

TEST_CASE("an unknown name lists the available entries")
{
    const std::string msg = svk::test::thrown_message([] { catalog::load_builtin("no-such"); });
    CHECK(svk::test::contains(msg, "no-such"));
    for (const auto& n : catalog::builtin_names()) CHECK(svk::test::contains(msg, n));
    CHECK_THROWS_AS(catalog::load_builtin("no-such"), catalog::UnknownEntry);
}

TEST_CASE("embedded text is byte-identical to the data files")
{
    for (const auto& e : catalog::load_all()) {
        CAPTURE(e.name);
        CHECK(read_file(std::string(SVK_SOURCE_DIR) + "/data/catalog/" + e.name + ".spec") == e.document);
    }
}

TEST_CASE("every entry declares classes, a box and a signature")
{
    for (const auto& e : catalog::load_all()) {
        CAPTURE(e.name);
        CHECK(e.spec.expected.classes.has_value());
        CHECK(e.spec.box.has_value());
        CHECK(e.spec.signature.has_value());
        CHECK(e.negative == !e.documented_failures.empty());
        if (!e.negative) CHECK(*e.spec.expected.classes == e.verdicts);
    }
}

TEST_CASE("positive entries verify cleanly")
{
    for (const auto& e : catalog::load_all()) {
        if (e.negative) continue;
        CAPTURE(e.name);
        const cli::Report r = verify_builtin(e.name);
        CHECK(failing_ids(r).empty());
        CHECK(r.passed());
        if (e.spec.expected.alpha) CHECK(r.check("class.alpha_expected") != nullptr);
        if (e.spec.expected.beta) CHECK(r.check("class.beta_expected") != nullptr);
        if (e.spec.expected.scalar) CHECK(r.check("curvature.scalar_expected") != nullptr);
        if (e.spec.expected.scalar_svk) CHECK(r.check("curvature.scalar_svk_expected") != nullptr);
    }
}

TEST_CASE("negative entries fail exactly their documented checks")
{
    for (const auto& e : catalog::load_all()) {
        if (!e.negative) continue;
        CAPTURE(e.name);
        const cli::Report r = verify_builtin(e.name);
        CHECK(!r.passed());
        const std::set<std::string> want(e.documented_failures.begin(), e.documented_failures.end());
        CHECK(failing_ids(r) == want);
        CHECK(r.suite("axioms")->passed());
        CHECK(r.suite("svk")->passed());
        CHECK(r.suite("curvature")->passed());
    }
}
