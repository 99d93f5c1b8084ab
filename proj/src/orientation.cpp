#include "rcurves/orientation.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rcurves {

namespace {

// Everything the census needs that does not depend on the bits: the nested
// pairs (tagged with emptiness of the inner oval), the nonempty ovals, and
// the reference oval for the k-signs.
struct CensusPlan {
    std::vector<std::array<int, 3>> pairs;  // outer oval, inner oval, inner empty
    std::vector<int> nonempty;
    int ref = -1;  // outermost nonempty oval: minimal depth, first on ties
    int off = 0;   // bit index of oval 0 (J occupies bit 0 when present)
    int ovals = 0;
};

CensusPlan plan_census(const RealScheme& s) {
    if (s.surface != Surface::Plane)
        throw std::invalid_argument("pair census is defined for plane schemes only");
    const OvalForest& f = s.forests[0];
    CensusPlan p;
    p.off = s.has_j ? 1 : 0;
    p.ovals = f.size();
    int best_depth = -1;
    for (int i = 0; i < f.size(); ++i) {
        int empty = f.nodes[i].children.empty() ? 1 : 0;
        for (int a = f.nodes[i].parent; a != -1; a = f.nodes[a].parent)
            p.pairs.push_back({a, i, empty});
        if (!empty) {
            int d = f.depth(i);
            if (p.ref == -1 || d < best_depth) {
                p.ref = i;
                best_depth = d;
            }
            p.nonempty.push_back(i);
        }
    }
    return p;
}

PairCensus census_from(const CensusPlan& p, const std::vector<int>& bits) {
    PairCensus c;
    const int* b = bits.data() + p.off;
    for (const auto& pr : p.pairs) {
        bool differ = b[pr[0]] != b[pr[1]];
        (differ ? c.pi_plus : c.pi_minus) += 1;
        if (pr[2]) {
            // A pair's sign in the pi table is the negation of its nested-pair
            // sign, so equal bits land in row 0 (+).
            int e = differ ? 1 : 0;
            int s = b[pr[0]] == b[p.ref] ? 0 : 1;
            c.pi[e][s] += 1;
        }
    }
    for (int i : p.nonempty) (b[i] == b[p.ref] ? c.k_plus : c.k_minus) += 1;
    return c;
}

bool is_ancestor(const OvalForest& f, int a, int i) {
    for (int p = f.nodes[i].parent; p != -1; p = f.nodes[p].parent)
        if (p == a) return true;
    return false;
}

// Reason the nonempty-oval identities do not constrain this plane scheme,
// or nullptr when they apply.
const char* orevkov_blocker(const RealScheme& s) {
    if (s.cls.m1 % 2 != 0) return "stated for even degree only";
    const OvalForest& f = s.forests[0];
    if (f.size() != genus(s) + 1) return "stated for M-curves only";
    if (f.max_height() < s.cls.m1 / 2 - 1) return "needs a nest of depth k-1";
    std::vector<int> ne;
    for (int i = 0; i < f.size(); ++i)
        if (!f.nodes[i].children.empty()) ne.push_back(i);
    std::sort(ne.begin(), ne.end(), [&](int a, int b) { return f.depth(a) < f.depth(b); });
    for (size_t j = 0; j + 1 < ne.size(); ++j)
        if (!is_ancestor(f, ne[j], ne[j + 1])) return "nonempty ovals are not pairwise nested";
    return nullptr;
}

// One candidate per mask: the scheme's first bit is pinned to 1 (the
// global-flip representative) and the remaining bits spell the mask most
// significant first, so ascending masks enumerate bit vectors in
// lexicographic order. Candidates passing the dividing-curve relation — and
// the nonempty-oval identities when they apply — are appended to out.
void scan_masks(const RealScheme& s, const CensusPlan& plan, bool orevkov_applies, long long k,
                uint64_t lo, uint64_t hi, int l, std::vector<OrientedScheme>& out) {
    std::vector<int> bits(l);
    if (l > 0) bits[0] = 1;
    for (uint64_t m = lo; m < hi; ++m) {
        for (int i = 1; i < l; ++i) bits[i] = static_cast<int>((m >> (l - 1 - i)) & 1);
        PairCensus c = census_from(plan, bits);
        if (2ll * (c.pi_plus - c.pi_minus) != l - k * k) continue;
        if (orevkov_applies) {
            if (c.pi[1][0] - c.pi[0][0] != c.k_plus * c.k_plus) continue;
            if (c.pi[0][1] - c.pi[1][1] != c.k_minus * c.k_minus) continue;
        }
        out.push_back(OrientedScheme{s, bits});
    }
}

}  // namespace

PairCensus pair_census(const OrientedScheme& o) {
    CensusPlan p = plan_census(o.base);
    if (static_cast<int>(o.bits.size()) != p.off + p.ovals)
        throw std::invalid_argument("orientation bit count does not match the scheme");
    return census_from(p, o.bits);
}

Verdict rokhlin_check(const OrientedScheme& o) {
    PairCensus c = pair_census(o);  // validates the surface and the bits
    if (o.base.cls.m1 % 2 != 0) return not_applicable("rokhlin", "stated for even degree only");
    long long k = o.base.cls.m1 / 2;
    long long lhs = 2ll * (c.pi_plus - c.pi_minus);
    long long rhs = o.base.forests[0].size() - k * k;
    return decided("rokhlin", lhs, rhs, lhs == rhs);
}

Verdict orevkov_check(const OrientedScheme& o) {
    PairCensus c = pair_census(o);
    if (const char* why = orevkov_blocker(o.base)) return not_applicable("orevkov", why);
    long long lhs = c.pi[1][0] - c.pi[0][0];
    long long rhs = 1ll * c.k_plus * c.k_plus;
    long long lhs2 = c.pi[0][1] - c.pi[1][1];
    long long rhs2 = 1ll * c.k_minus * c.k_minus;
    return decided("orevkov", lhs, rhs, lhs == rhs && lhs2 == rhs2,
                   "minus side: " + std::to_string(lhs2) + " vs " + std::to_string(rhs2));
}

Verdict pi_bound_check(const RealScheme& s) {
    if (s.surface != Surface::Plane) return not_applicable("pi-bound", "plane curves only");
    if (s.cls.m1 % 2 != 0) return not_applicable("pi-bound", "stated for even degree only");
    long long k = s.cls.m1 / 2;
    const OvalForest& f = s.forests[0];
    long long pi = 0;
    for (int i = 0; i < f.size(); ++i) pi += f.depth(i);
    long long need = f.size() - k * k;
    if (need < 0) need = -need;
    return decided("pi-bound", 2 * pi, need, 2 * pi >= need);
}

std::vector<OrientedScheme> admissible_orientations(const RealScheme& s, int max_bits, Exec exec) {
    s.validate();
    if (s.surface != Surface::Plane || s.cls.m1 % 2 != 0)
        throw std::invalid_argument("orientation search runs on even-degree plane schemes");
    const int l = s.forests[0].size();
    if (l > max_bits)
        throw SearchTooLarge("searching " + std::to_string(l) +
                             " orientation bits exceeds the limit of " + std::to_string(max_bits));
    const CensusPlan plan = plan_census(s);
    const bool orevkov_applies = orevkov_blocker(s) == nullptr;
    const long long k = s.cls.m1 / 2;
    std::vector<OrientedScheme> out;
    if (l == 0) {
        scan_masks(s, plan, orevkov_applies, k, 0, 1, 0, out);
        return out;
    }
    const uint64_t total = 1ull << (l - 1);
    bool parallel = false;
#ifdef _OPENMP
    if (exec == Exec::Parallel) parallel = true;
    if (exec == Exec::Auto) parallel = l >= 18 && omp_get_max_threads() > 1;
#else
    (void)exec;
#endif
    if (!parallel) {
        scan_masks(s, plan, orevkov_applies, k, 0, total, l, out);
    } else {
#ifdef _OPENMP
        std::vector<std::vector<OrientedScheme>> slots;
#pragma omp parallel
        {
#pragma omp single
            slots.resize(omp_get_num_threads());
            int nt = static_cast<int>(slots.size());
            int id = omp_get_thread_num();
            uint64_t chunk = (total + nt - 1) / nt;
            uint64_t lo = std::min<uint64_t>(total, chunk * static_cast<uint64_t>(id));
            uint64_t hi = std::min<uint64_t>(total, lo + chunk);
            if (lo < hi) scan_masks(s, plan, orevkov_applies, k, lo, hi, l, slots[id]);
        }
        for (auto& v : slots)
            for (auto& o : v) out.push_back(std::move(o));
#endif
    }
    return out;
}

TypeClaim type_constraint(const RealScheme& s, int max_bits, Exec exec) {
    return admissible_orientations(s, max_bits, exec).empty() ? TypeClaim::TypeII
                                                              : TypeClaim::Unknown;
}

}  // namespace rcurves
