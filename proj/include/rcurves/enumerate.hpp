#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rcurves/exec.hpp"
#include "rcurves/prohibition.hpp"

namespace rcurves {

// Number of unordered rooted forests on n nodes (1, 1, 2, 4, 9, 20, ...).
long long forest_count(int n);

// Every unordered rooted forest on n nodes, one representative per shape.
std::vector<OvalForest> forests_with(int n);

// One candidate scheme with its prohibition results. report is the verdict
// set with the type left unspecified; type_i/type_ii record whether the
// scheme would also survive with the type claimed.
struct Enumeration {
    RealScheme scheme;
    std::string text;
    Report report;
    bool type_i = false;
    bool type_ii = false;
};

// All candidate schemes of the class with at most `limit` components
// (default: the Harnack number), each checked against every prohibition.
// Oval forests are generated as unordered rooted forests; on the hyperboloid
// every (h, c1, c2) family the generatrix bounds allow is included, with the
// annulus contents deduplicated up to rotation and reflection. The stream is
// sorted by canonical text and deterministic under any execution policy.
// Throws SearchTooLarge with a candidate-count estimate when an exhaustive
// run is out of reach.
std::vector<Enumeration> enumerate_schemes(Surface surface, CurveClass cls, int limit = -1,
                                           Exec exec = Exec::Auto);

// Ellipsoid schemes that differ only in which complementary region is the
// unbounded one describe the same curve on the sphere. Returns the canonical
// text of that orbit: the shortest (then lexicographically least) rendering
// over all placements. Other surfaces keep a distinguished outer region, so
// this is just their canonical text.
std::string orbit_text(const RealScheme& s);

enum class GoldenTag { I, II, Indefinite, Unknown };

struct GoldenEntry {
    std::string text;
    GoldenTag tag = GoldenTag::Unknown;
};

// A classification table: the schemes known to be realizable for one class,
// each with its type tag.
struct GoldenTable {
    Surface surface = Surface::Plane;
    CurveClass cls;
    std::vector<GoldenEntry> entries;
};

// Table file format: a header line "surface class" (class as "m" or
// "m1,m2"), then one "schemetext<TAB>typetag" line per entry with typetag in
// {I, II, indef, unknown}. Blank lines and lines starting with '#' are
// skipped. Malformed input throws std::invalid_argument with the line number.
GoldenTable parse_golden_table(std::istream& in);
GoldenTable load_golden_table(const std::string& path);

// missing: table entries the engine prohibits — every one is a soundness bug
// in a rule, since listed schemes are realizable. extra: schemes the engine
// admits that the table does not list; necessary conditions are not
// sufficient, so these are expected and reported for inspection.
struct GoldenDiff {
    std::vector<std::string> missing;
    std::vector<std::string> extra;
};

GoldenDiff diff_golden(const GoldenTable& table, Exec exec = Exec::Auto);

}  // namespace rcurves
