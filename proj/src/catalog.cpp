#include "svk/catalog.hpp"

#include "svk/sampling.hpp"

#include <algorithm>

namespace svk::catalog {

namespace {

using C = StructureClass;

struct Facts {
    std::string_view name;
    std::vector<StructureClass> verdicts;
    std::vector<std::string> failures;
};

const std::vector<Facts>& facts()
{
    static const std::vector<Facts> table{
        {"cosymplectic-r5", {C::normal, C::trans_sasakian, C::cosymplectic}, {}},
        {"kenmotsu-5", {C::normal, C::beta_kenmotsu, C::trans_sasakian}, {}},
        {"kenmotsu-cosh-5", {C::normal, C::beta_kenmotsu, C::trans_sasakian}, {}},
        {"kenmotsu-lorentz-5", {C::normal, C::beta_kenmotsu, C::trans_sasakian}, {}},
        {"nonnormal-3", {}, {"class.normal"}},
        {"para-kenmotsu-5", {C::normal, C::beta_kenmotsu, C::trans_sasakian}, {}},
        {"para-kenmotsu-lorentz-5", {C::normal, C::beta_kenmotsu, C::trans_sasakian}, {}},
        {"perturbed-5",
         {},
         {"class.alpha-contact", "class.alpha-sasakian", "class.k-alpha-contact", "class.normal",
          "class.trans-sasakian"}},
        {"sasakian-r3", {C::alpha_contact, C::k_alpha_contact, C::normal, C::alpha_sasakian, C::trans_sasakian}, {}},
        {"sasakian-r5", {C::alpha_contact, C::k_alpha_contact, C::normal, C::alpha_sasakian, C::trans_sasakian}, {}},
        {"trans-sasakian-3", {C::alpha_contact, C::normal, C::trans_sasakian}, {}},
    };
    return table;
}

}  // namespace

std::vector<std::string> builtin_names()
{
    std::vector<std::string> names;
    for (const auto& d : detail::embedded_documents()) names.emplace_back(d.name);
    return names;
}

CatalogEntry load_builtin(std::string_view name)
{
    const auto& docs = detail::embedded_documents();
    auto it = std::find_if(docs.begin(), docs.end(), [&](const auto& d) { return d.name == name; });
    if (it == docs.end()) {
        std::string list;
        for (const auto& n : builtin_names()) list += (list.empty() ? "" : ", ") + n;
        throw UnknownEntry("unknown builtin '" + std::string(name) + "'; available: " + list);
    }
    CatalogEntry e;
    e.name = std::string(name);
    e.document = it->text;
    e.spec = parse_manifold_spec(it->text);
    e.sample_box = e.spec.box.value_or(default_box(e.spec.dimension));
    for (const auto& f : facts()) {
        if (f.name == name) {
            e.verdicts = f.verdicts;
            e.documented_failures = f.failures;
            e.negative = !f.failures.empty();
        }
    }
    return e;
}

std::vector<CatalogEntry> load_all()
{
    std::vector<CatalogEntry> out;
    for (const auto& n : builtin_names()) out.push_back(load_builtin(n));
    return out;
}

}  // namespace svk::catalog
