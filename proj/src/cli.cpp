#include "svk/catalog.hpp"
#include "svk/runner.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <ostream>

namespace svk::cli {

namespace {

struct Options {
    std::string builtin;
    std::string spec;
    std::size_t points = 50;
    std::uint64_t seed = 42;
    double tol = 1e-6;
    std::string suites;
    std::string box;
    std::string format = "json";
    std::string out;
};

void add_run_options(CLI::App& cmd, Options& o)
{
    auto* b = cmd.add_option("--builtin", o.builtin, "catalog entry name (see `svk list`)");
    auto* s = cmd.add_option("--spec", o.spec, "path of a manifold spec file");
    b->excludes(s);
    cmd.add_option("--points", o.points, "number of sample points")->capture_default_str();
    cmd.add_option("--seed", o.seed, "sampler seed")->capture_default_str();
    cmd.add_option("--tol", o.tol, "threshold of the classify and theorems suites")->capture_default_str();
    cmd.add_option("--suites", o.suites, "comma-separated subset of axioms,svk,curvature,classify,theorems,dim3");
    cmd.add_option("--box", o.box, "sample box lo:hi,... (one interval per coordinate)");
    cmd.add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    cmd.add_option("--out", o.out, "write the report here instead of stdout");
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            const auto lo = cur.find_first_not_of(" \t");
            const auto hi = cur.find_last_not_of(" \t");
            if (lo != std::string::npos) out.push_back(cur.substr(lo, hi - lo + 1));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return out;
}

RunConfig to_config(Command command, const Options& o)
{
    RunConfig c;
    c.command = command;
    if (!o.builtin.empty()) c.builtin = o.builtin;
    if (!o.spec.empty()) c.spec_path = o.spec;
    c.points = o.points;
    c.seed = o.seed;
    c.tol = o.tol;
    c.suites = split_list(o.suites);
    if (!o.box.empty()) {
        try {
            c.box = parse_box(o.box);
        } catch (const SpecError& e) {
            throw UsageError(std::string("--box: ") + e.what());
        }
    }
    c.format = o.format == "text" ? Format::text : Format::json;
    if (!o.out.empty()) c.out = o.out;
    return c;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Schouten-van Kampen connection verifier and structure classifier", "svk"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    Options opts;
    auto* verify = app.add_subcommand("verify", "run the verification suites");
    auto* classify = app.add_subcommand("classify", "classify the structure and check the class theorems");
    auto* list = app.add_subcommand("list", "list the builtin catalog entries");
    add_run_options(*verify, opts);
    add_run_options(*classify, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    if (list->parsed()) {
        for (const auto& name : catalog::builtin_names()) out << name << '\n';
        return kExitPass;
    }

    try {
        const RunConfig config = to_config(verify->parsed() ? Command::verify : Command::classify, opts);
        const Report report = run(config);
        const std::string text = config.format == Format::json ? render_json(report) : render_text(report);
        if (config.out) {
            std::ofstream f(*config.out, std::ios::binary);
            if (!f) throw UsageError("cannot write '" + *config.out + "'");
            f << text;
            if (!f) throw UsageError("cannot write '" + *config.out + "'");
        } else {
            out << text;
        }
        return report.passed() ? kExitPass : kExitFail;
    } catch (const std::exception& e) {
        err << "svk: error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace svk::cli
