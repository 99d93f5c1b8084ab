#pragma once

#include <optional>
#include <string>

#include "rcurves/scheme.hpp"

namespace rcurves {

struct ParseError : std::runtime_error {
    size_t position;  // byte offset into the input
    ParseError(const std::string& what, size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

struct ParsedScheme {
    RealScheme scheme;                      // always canonical
    std::optional<OrientedScheme> orientation;  // set iff the text carried signs
};

// Parse "<...>" notation against the given surface and degree data. Once any
// sign appears the orientation must be total: every nested or nonempty oval
// needs its sign, while empty outermost ovals and J may leave their default
// "+" implicit. J is mandatory on odd plane degrees and illegal everywhere
// else; "(c1,c2)" tokens only appear on the hyperboloid and must all agree.
ParsedScheme parse_scheme(const std::string& text, Surface surface, CurveClass cls);

// Canonical text: multiplicities collapsed, siblings ordered by subtree size
// then text, annulus lists rotated/reflected to the least representative.
std::string render(const RealScheme& s);
// Same, signed: pair signs on nested ovals, absolute signs on outermost
// ones. The default "+" stays implicit on empty outermost ovals and on J,
// unless eliding it would leave no sign at all. Of the two bit assignments
// in an orientation class (they differ by the global flip) the one rendering
// smaller is printed.
std::string render(const OrientedScheme& o);

// Rewrite into the form render() prints: sibling order, annulus rotation and,
// for oriented schemes, the choice of global flip.
RealScheme canonical(const RealScheme& s);
OrientedScheme canonical(const OrientedScheme& o);

}  // namespace rcurves
