#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace svk {

/// The structure classes the classifier decides membership in.
enum class StructureClass : unsigned char {
    alpha_contact,
    k_alpha_contact,
    normal,
    alpha_sasakian,
    beta_kenmotsu,
    trans_sasakian,
    cosymplectic,
};

inline constexpr std::array<StructureClass, 7> kAllClasses{
    StructureClass::alpha_contact,  StructureClass::k_alpha_contact, StructureClass::normal,
    StructureClass::alpha_sasakian, StructureClass::beta_kenmotsu,   StructureClass::trans_sasakian,
    StructureClass::cosymplectic,
};

constexpr std::string_view to_string(StructureClass c)
{
    switch (c) {
    case StructureClass::alpha_contact: return "alpha-contact";
    case StructureClass::k_alpha_contact: return "k-alpha-contact";
    case StructureClass::normal: return "normal";
    case StructureClass::alpha_sasakian: return "alpha-sasakian";
    case StructureClass::beta_kenmotsu: return "beta-kenmotsu";
    case StructureClass::trans_sasakian: return "trans-sasakian";
    case StructureClass::cosymplectic: return "cosymplectic";
    }
    return "?";
}

constexpr std::optional<StructureClass> class_from_string(std::string_view s)
{
    for (auto c : kAllClasses) {
        if (to_string(c) == s) return c;
    }
    return std::nullopt;
}

}  // namespace svk
