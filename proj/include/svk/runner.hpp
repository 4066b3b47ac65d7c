#pragma once

#include "svk/check.hpp"
#include "svk/classes.hpp"
#include "svk/manifold_spec.hpp"
#include "svk/sampling.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace svk::cli {

inline constexpr int kReportVersion = 1;
inline constexpr std::string_view kToolName = "svk";
inline constexpr std::string_view kToolVersion = "1.0.0";

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

enum class Command { verify, classify };
enum class Format { json, text };

/// Canonical suite order; reports list suites in this order.
inline constexpr std::array<std::string_view, 6> kSuiteNames{"axioms", "svk", "curvature", "classify", "theorems", "dim3"};

struct RunConfig {
    Command command = Command::verify;
    std::optional<std::string> builtin;
    std::optional<std::string> spec_path;
    std::size_t points = 50;
    std::uint64_t seed = 42;
    double tol = 1e-6;
    /// Empty selects every suite that applies to the command and the chart.
    std::vector<std::string> suites;
    std::optional<SampleBox> box;
    Format format = Format::json;
    std::optional<std::string> out;
};

/// Bad invocation or unusable input; maps to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Suite {
    std::string name;
    CheckList checks;  // sorted by id

    [[nodiscard]] bool passed() const { return all_passed(checks); }
};

struct ClassSummary {
    std::vector<StructureClass> classes;
    std::vector<std::pair<StructureClass, std::string>> notes;
    double max_abs_alpha = 0.0;
    double max_abs_beta = 0.0;
    /// Filled by the classify command only.
    std::vector<double> alpha_hat;
    std::vector<double> beta_hat;
};

struct Report {
    RunConfig config;
    std::string spec_name;
    ManifoldSpec spec;
    Sample sample;
    std::vector<Suite> suites;
    std::optional<ClassSummary> classification;

    [[nodiscard]] bool passed() const;
    [[nodiscard]] const Suite* suite(std::string_view name) const;
    [[nodiscard]] const Check* check(std::string_view id) const;
};

/// Resolves the spec source, validates the config and runs the selected suites.
/// Throws UsageError, SpecError or catalog::UnknownEntry on bad input.
Report run_verify(const RunConfig& config);
Report run_classify(const RunConfig& config);
Report run(const RunConfig& config);

std::string render_json(const Report& report);
std::string render_text(const Report& report);

/// Full command-line entry point; returns the process exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace svk::cli
