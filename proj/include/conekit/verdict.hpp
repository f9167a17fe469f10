#pragma once

#include "conekit/rational.hpp"

#include <string>

namespace conekit {

// Limit statements are only semi-decidable at a finite horizon, so every
// classification query answers in three values instead of two.
enum class VerdictKind { Holds, Fails, Undetermined };

struct Verdict {
    VerdictKind kind = VerdictKind::Undetermined;
    Int horizon = 0;       // horizon at which the question was asked
    std::string note;      // short witness / reason, human-readable

    static Verdict holds(std::string n = {}) { return {VerdictKind::Holds, 0, std::move(n)}; }
    static Verdict fails(std::string n = {}) { return {VerdictKind::Fails, 0, std::move(n)}; }
    static Verdict undetermined(Int h = 0, std::string n = {}) {
        return {VerdictKind::Undetermined, std::move(h), std::move(n)};
    }

    bool is_holds() const { return kind == VerdictKind::Holds; }
    bool is_fails() const { return kind == VerdictKind::Fails; }
    bool is_undetermined() const { return kind == VerdictKind::Undetermined; }
};

inline const char* to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::Holds: return "holds";
        case VerdictKind::Fails: return "fails";
        default: return "undetermined";
    }
}

}  // namespace conekit
