#pragma once

#include "svk/classes.hpp"
#include "svk/manifold_spec.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace svk::catalog {

struct CatalogEntry {
    std::string name;
    std::string_view document;  // byte-identical to data/catalog/<name>.spec
    ManifoldSpec spec;
    SampleBox sample_box;
    /// Classes the classifier actually decides (differs from the claimed
    /// `[expected] classes` only for the deliberately broken entries).
    std::vector<StructureClass> verdicts;
    /// Check ids that fail when the claimed classes are verified.
    std::vector<std::string> documented_failures;
    bool negative = false;
};

class UnknownEntry : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::vector<std::string> builtin_names();

/// Throws UnknownEntry listing the available names.
CatalogEntry load_builtin(std::string_view name);

std::vector<CatalogEntry> load_all();

namespace detail {
struct EmbeddedDocument {
    std::string_view name;
    std::string_view text;
};
const std::vector<EmbeddedDocument>& embedded_documents();
}  // namespace detail

}  // namespace svk::catalog
