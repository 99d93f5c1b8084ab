#include "rcurves/prohibition.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace rcurves {
namespace {

long long res8(long long x) { return ((x % 8) + 8) % 8; }
long long res4(long long x) { return ((x % 4) + 4) % 4; }

// Tracks the tightest instance of a bound checked over many configurations,
// so the verdict's lhs/rhs pin down a witness instead of an arbitrary case.
struct Tightest {
    long long lhs = 0, rhs = 0;
    bool any = false, ok = true;
    std::string where;

    void consider(long long lhs_, long long rhs_, std::string where_) {
        if (lhs_ > rhs_) ok = false;
        if (!any || lhs_ - rhs_ > lhs - rhs) {
            lhs = lhs_;
            rhs = rhs_;
            where = std::move(where_);
        }
        any = true;
    }

    Verdict finish(const std::string& id, const std::string& trivial_note) const {
        if (!any) return decided(id, 0, 0, true, trivial_note);
        return decided(id, lhs, rhs, ok, "tightest at " + where);
    }
};

// Every odd-depth oval must have an odd number of immediate interior ovals
// for the type-I mod-8 congruence to apply.
bool odd_ovals_have_odd_interiors(const RealScheme& s) {
    for (const OvalForest& f : s.forests)
        for (int i = 0; i < f.size(); ++i)
            if (f.depth(i) % 2 == 1 && f.nodes[i].children.size() % 2 == 0)
                return false;
    return true;
}

}  // namespace

Verdict check_harnack(const RealScheme& s) {
    long long total = component_counts(s).total;
    long long bound = AuxTables::harnack_number(s.surface, s.cls);
    return decided("harnack", total, bound, total <= bound,
                   "component count against genus + 1");
}

Verdict check_klein(const RealScheme& s, TypeClaim claim) {
    if (claim != TypeClaim::TypeI)
        return not_applicable("klein", "constrains type I claims only");
    if (s.surface != Surface::Plane)
        return not_applicable("klein", "plane curves only");
    long long m = s.cls.m1;
    long long k = (m + 1) / 2;
    if (m % 2 == 0) {
        long long l = component_counts(s).l;
        return decided("klein", l, k, l >= k && (l - k) % 2 == 0,
                       "dividing curve: at least k ovals, same parity");
    }
    // Odd degree: the component bound counts the one-sided component too —
    // the two-component cubic and the line itself are dividing.
    long long total = component_counts(s).total;
    return decided("klein", total, k, total >= k,
                   "dividing curve: at least k components, counting the one-sided one");
}

std::vector<Verdict> check_plane_congruences(const RealScheme& s, TypeClaim claim) {
    std::vector<Verdict> out;
    static const char* const ids[] = {"gudkov", "kgk", "plane.m2-force", "arnold", "slepian"};
    if (s.surface != Surface::Plane || s.cls.m1 % 2 != 0) {
        for (const char* id : ids)
            out.push_back(not_applicable(id, "plane curves of even degree only"));
        return out;
    }
    ParityCounts pc = parity_counts(s);
    long long pn = pc.p - pc.n;
    long long k = s.cls.m1 / 2;
    long long ksq = k * k;
    long long d = m_defect(s);

    if (d != 0)
        out.push_back(not_applicable("gudkov", "M-curves only"));
    else
        out.push_back(decided("gudkov", pn, ksq, res8(pn - ksq) == 0, "congruence mod 8"));

    if (d != 1) {
        out.push_back(not_applicable("kgk", "(M-1)-curves only"));
    } else {
        long long r = res8(pn - ksq);
        out.push_back(decided("kgk", pn, ksq, r == 1 || r == 7, "congruence mod 8, within 1"));
    }

    if (d != 2) {
        out.push_back(not_applicable("plane.m2-force", "(M-2)-curves only"));
    } else {
        bool forces = res8(pn - ksq - 4) == 0;
        out.push_back(decided("plane.m2-force", pn, ksq + 4,
                              !forces || claim != TypeClaim::TypeII,
                              forces ? "residue met: the curve must be of type I"
                                     : "residue not met: no constraint"));
    }

    if (claim != TypeClaim::TypeI)
        out.push_back(not_applicable("arnold", "constrains type I claims only"));
    else
        out.push_back(decided("arnold", pn, ksq, res4(pn - ksq) == 0, "congruence mod 4"));

    if (claim != TypeClaim::TypeI)
        out.push_back(not_applicable("slepian", "constrains type I claims only"));
    else if (!odd_ovals_have_odd_interiors(s))
        out.push_back(not_applicable(
            "slepian", "some oval of odd depth has an even number of immediate interiors"));
    else
        out.push_back(decided("slepian", pn, ksq, res8(pn - ksq) == 0, "congruence mod 8"));
    return out;
}

std::vector<Verdict> check_quadric_congruences(const RealScheme& s, TypeClaim claim) {
    std::vector<Verdict> out;
    static const char* const ids[] = {"quadric.m", "quadric.m1", "quadric.m2-force",
                                      "quadric.typeI"};
    auto all_na = [&](const std::string& why) {
        for (const char* id : ids) out.push_back(not_applicable(id, why));
        return out;
    };
    if (s.surface == Surface::Plane) return all_na("curves on the quadrics only");
    bool ellipsoid = s.surface == Surface::Ellipsoid;
    if (ellipsoid && s.cls.m1 % 2 == 0) return all_na("stated for odd bidegree only");
    if (!ellipsoid) {
        if (s.cls.m1 % 2 != 0 || s.cls.m2 % 2 != 0)
            return all_na("stated for even bidegree only");
        long long cond =
            (1LL * s.cls.m1 * s.c2 + 1LL * s.cls.m2 * s.c1) / 2 - 1LL * s.c1 * s.c2;
        if (((cond % 2) + 2) % 2 != 0)
            return all_na("the class of the noncontractible components fails the parity condition");
    }
    ChiHalves ch;
    try {
        ch = chi_halves(s);
    } catch (const NoSeparation& e) {
        return all_na(e.what());
    }

    // The congruences constrain the Euler characteristic of the genus-0 half
    // of the cut-open double covering. On the ellipsoid both halves are
    // spheres-with-holes and satisfy the congruences together. On the
    // hyperboloid with ovals only, the genus-0 half is the one away from the
    // essential outer region; with noncontractible components both halves are
    // planar, so a congruence holds when either coloring meets it, and the
    // type-forcing residue must be met by both to be certain.
    long long target = ellipsoid ? (1LL * s.cls.m1 * s.cls.m1 + 1) / 2
                                 : 1LL * s.cls.m1 * s.cls.m2 / 2;
    long long primary = ellipsoid ? ch.plus : ch.minus;
    long long secondary = ellipsoid ? ch.minus : ch.plus;
    long long d = m_defect(s);
    std::string both = ch.ambiguous ? "; either labeling of the halves accepted" : "";

    if (d != 0) {
        out.push_back(not_applicable("quadric.m", "M-curves only"));
    } else {
        bool a = res8(primary - target) == 0, b = res8(secondary - target) == 0;
        bool ok = ellipsoid ? a && b : (ch.ambiguous ? a || b : a);
        out.push_back(decided("quadric.m", primary, target, ok, "congruence mod 8" + both));
    }

    if (d != 1) {
        out.push_back(not_applicable("quadric.m1", "(M-1)-curves only"));
    } else {
        auto near = [&](long long chi) {
            long long r = res8(chi - target);
            return r == 1 || r == 7;
        };
        bool ok = ellipsoid ? near(primary) && near(secondary)
                            : (ch.ambiguous ? near(primary) || near(secondary) : near(primary));
        out.push_back(
            decided("quadric.m1", primary, target, ok, "congruence mod 8, within 1" + both));
    }

    if (d != 2) {
        out.push_back(not_applicable("quadric.m2-force", "(M-2)-curves only"));
    } else {
        bool a = res8(primary - target - 4) == 0, b = res8(secondary - target - 4) == 0;
        bool forces = ch.ambiguous ? a && b : a;
        out.push_back(decided("quadric.m2-force", primary, target + 4,
                              !forces || claim != TypeClaim::TypeII,
                              forces ? "residue met: the curve must be of type I"
                                     : "residue not met: no constraint"));
    }

    if (claim != TypeClaim::TypeI) {
        out.push_back(not_applicable("quadric.typeI", "constrains type I claims only"));
    } else {
        // the dividing-curve congruence carries the same target as the
        // M-curve one, one modulus coarser -- exactly as mod 4 relates to
        // mod 8 for plane curves
        long long tmod = res4(target);
        bool a = res4(primary - tmod) == 0, b = res4(secondary - tmod) == 0;
        bool ok = ellipsoid ? a && b : (ch.ambiguous ? a || b : a);
        out.push_back(decided("quadric.typeI", primary, tmod, ok, "congruence mod 4" + both));
    }
    return out;
}

Verdict check_bezout_generatrices(const RealScheme& s) {
    if (s.surface != Surface::Hyperboloid)
        return not_applicable("bezout.generatrix", "hyperboloid schemes only");
    long long m1 = s.cls.m1, m2 = s.cls.m2;
    long long hc1 = 1LL * s.h * std::abs(s.c1), hc2 = 1LL * s.h * std::abs(s.c2);
    bool parity = (1LL * s.h * s.c1 - m1) % 2 == 0 && (1LL * s.h * s.c2 - m2) % 2 == 0;
    bool bounds = hc1 <= m1 && hc2 <= m2;
    // Each coordinate of the total noncontractible class is matched against
    // the bidegree entry of the same index; the reading that bounds both
    // coordinates by m1 alone is not enforced.
    long long lhs = hc1 - m1 >= hc2 - m2 ? hc1 : hc2;
    long long rhs = hc1 - m1 >= hc2 - m2 ? m1 : m2;
    return decided("bezout.generatrix", lhs, rhs, parity && bounds,
                   parity ? "intersection with the generatrix families"
                          : "class parity differs from the bidegree");
}

std::vector<Verdict> check_nest_bounds(const RealScheme& s, const AuxTables& aux,
                                       std::vector<int> aux_degrees) {
    if (aux_degrees.empty())
        for (const auto& [q, bound] : aux.cprime_lower) aux_degrees.push_back(q);
    std::sort(aux_degrees.begin(), aux_degrees.end());
    aux_degrees.erase(std::unique(aux_degrees.begin(), aux_degrees.end()), aux_degrees.end());
    for (int q : aux_degrees) {
        if (q < 1) throw std::invalid_argument("auxiliary degrees must be positive");
        if (!aux.cprime_lower.count(q))
            throw std::invalid_argument("no certified auxiliary bound for degree " +
                                        std::to_string(q));
    }

    std::vector<Verdict> out;
    const std::vector<std::vector<int>> profiles = disjoint_nest_profiles(s);

    if (s.surface != Surface::Hyperboloid) {
        out.push_back(not_applicable("nests.hyperboloid", "hyperboloid schemes only"));
    } else {
        long long m1 = s.cls.m1, m2 = s.cls.m2;
        long long hc1 = 1LL * s.h * std::abs(s.c1), hc2 = 1LL * s.h * std::abs(s.c2);
        Tightest w;
        for (const auto& profile : profiles) {
            long long sum = 0;
            for (std::size_t r = 1; r <= profile.size(); ++r) {
                sum += profile[r - 1];
                long long pairs = static_cast<long long>(r / 2);
                w.consider(2 * sum, m1 - hc1 + pairs * (m2 + hc2), "r=" + std::to_string(r));
                w.consider(2 * sum, m2 - hc2 + pairs * (m1 + hc1),
                           "r=" + std::to_string(r) + ", swapped");
            }
        }
        out.push_back(w.finish("nests.hyperboloid", "no nests"));
    }

    if (s.surface != Surface::Ellipsoid) {
        out.push_back(not_applicable("nests.ellipsoid", "ellipsoid schemes only"));
    } else {
        Tightest w;
        for (const auto& profile : profiles)
            if (profile.size() >= 3)
                w.consider(profile[0] + profile[1] + profile[2], s.cls.m1,
                           "the three deepest disjoint nests");
        out.push_back(w.finish("nests.ellipsoid", "fewer than three pairwise disjoint nests"));
    }

    if (s.surface != Surface::Plane) {
        out.push_back(not_applicable("nests.aux", "plane schemes only"));
        out.push_back(not_applicable("nests.total-weight", "plane schemes only"));
        return out;
    }
    long long m = s.cls.m1;

    // An auxiliary curve of degree q through c of the nests (interpolating
    // the rest pairwise) meets ours in at least twice the tallied weight.
    // Only degrees below the curve's own qualify: from q >= m upward the
    // auxiliary curve may contain ours outright, the traced component may be
    // one of our own ovals, and the intersection count collapses.
    Tightest wa;
    for (int q : aux_degrees) {
        if (q >= m) continue;
        long long through = aux.cprime_lower.at(q);
        for (const auto& profile : profiles) {
            long long sum = 0;
            for (std::size_t c = 1; c <= profile.size() && static_cast<long long>(c) <= through;
                 ++c) {
                sum += profile[c - 1];
                wa.consider(2 * (sum + (through - static_cast<long long>(c)) / 2), m * q,
                            "q=" + std::to_string(q) + ", c=" + std::to_string(c));
            }
        }
    }
    out.push_back(wa.finish("nests.aux", profiles.empty()
                                             ? "no nests"
                                             : "no certified auxiliary degree below the curve's"));

    // With d(d+3)/2 disjoint nests available, some 3d-1 of them have total
    // weight at most (md - d(d-3) - 2)/2. Profiles dominate componentwise, so
    // checking the 3d-1 lightest among the d(d+3)/2 heaviest suffices.
    Tightest wt;
    for (int dq : aux_degrees) {
        if (dq >= m) continue;  // same degeneration as above
        long long need = 1LL * dq * (dq + 3) / 2;
        long long r = 3LL * dq - 1;
        for (const auto& profile : profiles) {
            if (static_cast<long long>(profile.size()) < need) continue;
            long long sum = 0;
            for (long long i = need - r; i < need; ++i) sum += profile[i];
            wt.consider(2 * sum, m * dq - 1LL * dq * (dq - 3) - 2, "d=" + std::to_string(dq));
        }
    }
    out.push_back(wt.finish("nests.total-weight", "never enough disjoint nests"));
    return out;
}

Report check_all(const RealScheme& s, TypeClaim claim,
                 const std::optional<OrientedScheme>& orientation, const AuxTables& aux,
                 std::vector<int> aux_degrees) {
    Report report;
    report.scheme = s;
    report.claim = claim;
    report.defect = m_defect(s);

    auto add = [&](Verdict v) { report.verdicts.push_back(std::move(v)); };
    auto add_all = [&](std::vector<Verdict> vs) {
        for (Verdict& v : vs) report.verdicts.push_back(std::move(v));
    };
    auto guarded = [&](const char* id, auto&& fn) {
        try {
            add(fn());
        } catch (const std::exception& e) {
            add(not_applicable(id, e.what()));
        }
    };

    add(check_harnack(s));
    add(check_klein(s, claim));
    add_all(check_plane_congruences(s, claim));
    add_all(check_quadric_congruences(s, claim));
    add(check_bezout_generatrices(s));
    add_all(check_nest_bounds(s, aux, std::move(aux_degrees)));
    if (orientation) {
        guarded("rokhlin", [&] { return rokhlin_check(*orientation); });
        guarded("orevkov", [&] { return orevkov_check(*orientation); });
        guarded("pi-bound", [&] { return pi_bound_check(s); });
    }

    for (const Verdict& v : report.verdicts)
        if (v.applicable && v.pass && !*v.pass) report.admissible = false;
    return report;
}

}  // namespace rcurves
