#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rcurves/exec.hpp"
#include "rcurves/scheme.hpp"
#include "rcurves/verdict.hpp"

namespace rcurves {

// Thrown when an orientation search would exceed the configured bit budget.
struct SearchTooLarge : std::runtime_error {
    explicit SearchTooLarge(const std::string& w) : std::runtime_error(w) {}
};

// Tally of the oriented nested pairs and of the nonempty ovals by sign.
//
// A nested pair is an oval together with any strict ancestor, whatever the
// depth gap. The pair is positive (counted by pi_plus) when the two
// orientation bits differ — the ovals then cobound their annulus coherently —
// and negative otherwise. k_plus/k_minus split the nonempty ovals by bit
// agreement with the outermost nonempty oval, which counts as positive by
// convention. pi[e][s] restricts to pairs whose inner oval is empty: e is the
// pair sign *after negation* (the convention the nonempty-oval identities are
// calibrated against), s the sign of the outer oval; index 0 means +, 1 means −.
struct PairCensus {
    int pi_plus = 0;
    int pi_minus = 0;
    int pi[2][2] = {{0, 0}, {0, 0}};
    int k_plus = 0;
    int k_minus = 0;

    friend bool operator==(const PairCensus&, const PairCensus&) = default;
};

// Counts every nested pair and classifies the nonempty ovals of a plane
// oriented scheme. Throws std::invalid_argument off the plane or when the bit
// vector does not match the component count.
PairCensus pair_census(const OrientedScheme& o);

// The relation 2(pi_plus − pi_minus) = l − k² that a dividing plane curve of
// even degree 2k imposes on any of its complex orientations. lhs/rhs carry
// the two sides; odd degree is reported as not applicable.
Verdict rokhlin_check(const OrientedScheme& o);

// The two identities pi[−][+] − pi[+][+] = k_plus² and
// pi[+][−] − pi[−][−] = k_minus² for oriented plane M-curves of degree 2k
// that carry a nest of depth k−1 and whose nonempty ovals are pairwise
// nested. lhs/rhs carry the plus-side identity; notes spells out the minus
// side. A scheme with no nonempty oval at all is applicable and passes
// trivially. Unmet preconditions are reported as not applicable.
Verdict orevkov_check(const OrientedScheme& o);

// Orientation-free consequence of the dividing-curve relation: the total
// nested-pair count Pi of a plane curve of even degree 2k must satisfy
// 2·Pi ≥ |l − k²| for a dividing orientation to exist at all.
Verdict pi_bound_check(const RealScheme& s);

// All orientation classes, modulo the global flip, of a plane even-degree
// scheme that pass rokhlin_check and — where it applies — orevkov_check.
// Each class is represented with the first component's bit set to 1, and the
// list comes in lexicographic bit order, identically under every execution
// policy. Throws SearchTooLarge when the scheme has more than max_bits
// components, std::invalid_argument off the even-degree plane.
std::vector<OrientedScheme> admissible_orientations(const RealScheme& s, int max_bits = 24,
                                                    Exec exec = Exec::Auto);

// TypeII when no admissible orientation exists, Unknown otherwise: the
// orientation tests are necessary for a dividing curve, never sufficient.
TypeClaim type_constraint(const RealScheme& s, int max_bits = 24, Exec exec = Exec::Auto);

}  // namespace rcurves
