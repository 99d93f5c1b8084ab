#pragma once

#include <optional>
#include <string>

namespace rcurves {

// Outcome of a single prohibition rule on a single scheme. `pass` is
// meaningful only when `applicable` is set; lhs and rhs reproduce the exact
// inequality or congruence instance so a failure can be read off the verdict
// without recomputing anything.
struct Verdict {
    std::string rule_id;
    bool applicable = false;
    std::optional<bool> pass;
    long long lhs = 0;
    long long rhs = 0;
    std::string notes;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

inline Verdict not_applicable(std::string rule_id, std::string notes = "") {
    Verdict v;
    v.rule_id = std::move(rule_id);
    v.notes = std::move(notes);
    return v;
}

inline Verdict decided(std::string rule_id, long long lhs, long long rhs, bool pass,
                       std::string notes = "") {
    Verdict v;
    v.rule_id = std::move(rule_id);
    v.applicable = true;
    v.pass = pass;
    v.lhs = lhs;
    v.rhs = rhs;
    v.notes = std::move(notes);
    return v;
}

}  // namespace rcurves
