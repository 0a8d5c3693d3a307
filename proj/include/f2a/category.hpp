#pragma once

#include <array>
#include <string>
#include <string_view>

#include "f2a/errors.hpp"

namespace f2a {

/// The ten attack categories of the probe corpus.
enum class AttackCategory { Death, Wea, Rac, Po, Fraud, TiA, Abe, MiT, Polit, Tact };

inline constexpr std::array<AttackCategory, 10> kAllCategories = {
    AttackCategory::Death, AttackCategory::Wea,   AttackCategory::Rac,
    AttackCategory::Po,    AttackCategory::Fraud, AttackCategory::TiA,
    AttackCategory::Abe,   AttackCategory::MiT,   AttackCategory::Polit,
    AttackCategory::Tact};

inline std::string category_id(AttackCategory c) {
    switch (c) {
        case AttackCategory::Death: return "Death";
        case AttackCategory::Wea:   return "Wea";
        case AttackCategory::Rac:   return "Rac";
        case AttackCategory::Po:    return "Po";
        case AttackCategory::Fraud: return "Fraud";
        case AttackCategory::TiA:   return "TiA";
        case AttackCategory::Abe:   return "Abe";
        case AttackCategory::MiT:   return "MiT";
        case AttackCategory::Polit: return "Polit";
        case AttackCategory::Tact:  return "Tact";
    }
    throw F2aError("invalid category");
}

inline std::string category_label(AttackCategory c) {
    switch (c) {
        case AttackCategory::Death: return "death";
        case AttackCategory::Wea:   return "weapon manufacturing";
        case AttackCategory::Rac:   return "racial discrimination";
        case AttackCategory::Po:    return "poison";
        case AttackCategory::Fraud: return "fraud";
        case AttackCategory::TiA:   return "tutorials on illegal activities";
        case AttackCategory::Abe:   return "antisocial behavior";
        case AttackCategory::MiT:   return "tendencies towards mental illness";
        case AttackCategory::Polit: return "politically sensitive topics";
        case AttackCategory::Tact:  return "terrorist activities";
    }
    throw F2aError("invalid category");
}

inline AttackCategory parse_category(std::string_view id) {
    for (AttackCategory c : kAllCategories)
        if (category_id(c) == id) return c;
    throw F2aError("unknown category '" + std::string(id) +
                   "' (expected one of Death, Wea, Rac, Po, Fraud, TiA, Abe, MiT, Polit, Tact)");
}

} // namespace f2a
