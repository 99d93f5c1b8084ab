#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rcurves/orientation.hpp"
#include "rcurves/scheme.hpp"
#include "rcurves/verdict.hpp"

namespace rcurves {

// Certified counts used by the auxiliary-curve nest bounds. The maps give,
// per degree q of the auxiliary curve, a lower bound on how many point
// conditions pin down a curve of degree q through a nest configuration:
// cprime_lower bounds the count for curves constrained through nested ovals,
// c_lower the unconstrained count. Only degrees present in the maps may be
// used by check_nest_bounds; asking for others is an error, not a silent
// pass, so the tables can be extended deliberately.
struct AuxTables {
    std::map<int, long long> cprime_lower = {
        {1, 2}, {2, 5}, {3, 8}, {4, 13}, {5, 14}, {6, 17},
    };
    std::map<int, long long> c_lower = {
        {1, 2}, {2, 5}, {3, 8}, {4, 11}, {5, 14}, {6, 17},
    };

    // Threshold above which extra disjoint nests force an auxiliary curve of
    // degree d through them: d(d-3)/2 + 2.
    static long long mu0(long long d) { return d * (d - 3) / 2 + 2; }

    // Largest component count a curve of the given class can have: genus + 1.
    static long long harnack_number(Surface surface, CurveClass cls) {
        if (surface == Surface::Plane)
            return (cls.m1 - 1) * (cls.m1 - 2) / 2 + 1;
        return (cls.m1 - 1) * (cls.m2 - 1) + 1;
    }
};

// Outcome of running every prohibition against one scheme. admissible is the
// conjunction of pass over the applicable verdicts: true means no rule here
// rules the scheme out, not that the scheme is realizable.
struct Report {
    RealScheme scheme;
    TypeClaim claim = TypeClaim::Unknown;
    long long defect = 0;
    std::vector<Verdict> verdicts;
    bool admissible = true;
};

// Component count against the Harnack number. Always applicable.
Verdict check_harnack(const RealScheme& s);

// Lower bound on the oval count of a dividing plane curve: at least
// ceil(m/2) ovals, with matching parity for even degree. Applicable only to
// plane schemes claimed to be of type I.
Verdict check_klein(const RealScheme& s, TypeClaim claim);

// The mod-8 congruences on p - n for plane curves of even degree m = 2k, in
// order: the M-curve congruence p - n = k^2 (rule "gudkov"), the (M-1)
// congruence p - n = k^2 ± 1 ("kgk"), the (M-2) residue k^2 + 4 that forces
// type I ("plane.m2-force"), the type-I congruence p - n = k^2 (mod 4)
// ("arnold"), and the type-I mod-8 congruence for schemes whose odd ovals
// all have an odd number of children ("slepian"). Off the even-degree plane
// every verdict comes back not applicable.
std::vector<Verdict> check_plane_congruences(const RealScheme& s, TypeClaim claim);

// The Euler-characteristic congruences for curves on the quadrics, in order:
// the M-curve congruence mod 8 ("quadric.m"), the (M-1) congruence
// ("quadric.m1"), the (M-2) residue that forces type I ("quadric.m2-force"),
// and the type-I congruence mod 4 ("quadric.typeI"). They constrain the
// genus-0 half of the double cover's separation; on the hyperboloid they need
// even bidegree and a class condition on the noncontractible components, on
// the ellipsoid odd bidegree. When the scheme does not separate cleanly
// (NoSeparation) the verdicts report why instead of throwing.
std::vector<Verdict> check_quadric_congruences(const RealScheme& s, TypeClaim claim);

// Intersection bound with the two generatrix families of the hyperboloid:
// the noncontractible components, h copies of class (c1, c2), must satisfy
// h*ci = mi (mod 2) and h*|ci| <= mi for each index. Not applicable off the
// hyperboloid.
Verdict check_bezout_generatrices(const RealScheme& s);

// Nest-depth prohibitions, in order: the generatrix count on families of
// disjoint nests of a hyperboloid scheme ("nests.hyperboloid"), the
// three-nest bound on the ellipsoid ("nests.ellipsoid"), the auxiliary-curve
// bound on plane nest families ("nests.aux"), and the total-weight bound on
// large plane nest families ("nests.total-weight"). aux_degrees selects
// which auxiliary degrees to try (empty = every degree in the tables); a
// degree missing from aux.cprime_lower is an error, while degrees at or
// above the curve's own are skipped -- there the auxiliary curve could
// contain ours and the intersection count proves nothing. Each verdict
// reports the
// tightest instance found: lhs/rhs belong to the configuration with the
// smallest slack, so a failing verdict shows a witness.
std::vector<Verdict> check_nest_bounds(const RealScheme& s, const AuxTables& aux = {},
                                       std::vector<int> aux_degrees = {});

// Runs every check above against the scheme, plus the orientation-dependent
// rules (rokhlin, orevkov, pi-bound) when an orientation is supplied. Rule
// order is fixed so reports line up across schemes. A check that throws is
// folded into its verdict as not applicable with the error text; the batch
// always completes.
Report check_all(const RealScheme& s, TypeClaim claim,
                 const std::optional<OrientedScheme>& orientation = std::nullopt,
                 const AuxTables& aux = {}, std::vector<int> aux_degrees = {});

}  // namespace rcurves
