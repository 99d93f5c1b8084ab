#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rcurves {

enum class Surface { Plane, Hyperboloid, Ellipsoid };
enum class TypeClaim { TypeI, TypeII, Unknown };

std::string to_string(Surface s);
std::string to_string(TypeClaim t);

// Raised by operations whose preconditions (surface, degree parity) fail in a
// way the caller is expected to treat as "this rule says nothing here".
struct NotApplicable : std::runtime_error {
    explicit NotApplicable(const std::string& w) : std::runtime_error(w) {}
};
// The curve does not separate the ambient surface, so there are no halves.
struct NoSeparation : std::runtime_error {
    explicit NoSeparation(const std::string& w) : std::runtime_error(w) {}
};

// Plane curves: degree in m1 (m2 unused, 0). Curves on a quadric: bidegree
// (m1, m2), equal on the ellipsoid.
struct CurveClass {
    int m1 = 0, m2 = 0;
    friend bool operator==(const CurveClass&, const CurveClass&) = default;
};

struct Oval {
    int parent = -1;  // index within the forest, -1 for roots
    std::vector<int> children;
    friend bool operator==(const Oval&, const Oval&) = default;
};

// Forest of nested ovals. Nodes are stored in preorder: every parent index is
// smaller than its children's.
struct OvalForest {
    std::vector<Oval> nodes;
    std::vector<int> roots;

    int size() const { return static_cast<int>(nodes.size()); }
    int add_root();
    int add_child(int parent);
    int depth(int i) const;   // number of strict ancestors
    int height(int i) const;  // ovals on the longest chain from i downward
    int max_height() const;

    static OvalForest flat(int n);   // n empty ovals
    static OvalForest chain(int n);  // single nest of depth n

    friend bool operator==(const OvalForest&, const OvalForest&) = default;
};

struct RealScheme {
    Surface surface = Surface::Plane;
    CurveClass cls;
    bool has_j = false;           // one-sided component, odd-degree plane only
    int h = 0;                    // noncontractible components, hyperboloid only
    int c1 = 0, c2 = 0;           // their common homology class, normalized
    std::vector<OvalForest> forests;  // h annulus forests when h > 0, else one

    void validate() const;  // throws std::invalid_argument
    friend bool operator==(const RealScheme&, const RealScheme&) = default;
};

// Normalize a noncontractible class up to overall sign: c2 > 0, or c2 == 0
// and c1 > 0.
void normalize_class(int& c1, int& c2);

// Orientation bits, one per component, in scheme order: J first when present,
// then every oval forest by forest, nodes in preorder. Outermost ovals carry
// absolute bits (1 prints as "+"); nested ovals print the pair sign relative
// to their parent. Noncontractible components never carry bits (no
// orientation formulas use them and the written notation has no place for
// their signs).
struct OrientedScheme {
    RealScheme base;
    std::vector<int> bits;

    friend bool operator==(const OrientedScheme&, const OrientedScheme&) = default;
};

struct ComponentCounts {
    int l = 0, h = 0, total = 0;
};
ComponentCounts component_counts(const RealScheme& s);

struct ParityCounts {
    int p = 0, n = 0;  // ovals of even / odd depth
};
// Even-degree plane schemes only; otherwise throws NotApplicable.
ParityCounts parity_counts(const RealScheme& s);

// Profiles of pairwise disjoint nests: for antichains of ovals, the multiset
// of nest depths below each member (sorted descending). Only profiles maximal
// under componentwise domination within each cardinality are returned; the
// bound checks are monotone, so nothing is lost.
std::vector<std::vector<int>> disjoint_nest_profiles(const RealScheme& s);

struct ChiHalves {
    int plus = 0, minus = 0;
    bool ambiguous = false;  // hyperboloid with h > 0: the swap is equally valid
};
// Euler characteristics of the two halves of the surface cut along the curve.
// Ellipsoid: always defined, outer region is the plus side, sum 2.
// Hyperboloid: requires m1, m2 and h even (else NoSeparation), sum 0; with
// h = 0 the genus-1 outer part is the plus side, with h > 0 both colorings
// are legal and the result is flagged ambiguous. Plane: NoSeparation.
ChiHalves chi_halves(const RealScheme& s);

int genus(const RealScheme& s);  // (m-1)(m-2)/2 or (m1-1)(m2-1)
// Distance from the Harnack bound: g + 1 - total components (may be < 0).
int m_defect(const RealScheme& s);

}  // namespace rcurves
