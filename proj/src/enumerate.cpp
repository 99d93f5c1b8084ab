#include "rcurves/enumerate.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "rcurves/notation.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rcurves {

namespace {

constexpr long long kMaxCandidates = 200000;

// saturation ceiling for size estimates; never printed as an exact figure
constexpr long long kSatCap = 1000000000000000000LL;

long long sat_add(long long a, long long b) { return a > kSatCap - b ? kSatCap : a + b; }

long long sat_mul(long long a, long long b) {
    if (a == 0 || b == 0) return 0;
    return a > kSatCap / b ? kSatCap : a * b;
}

// multisets of j items drawn from t kinds; the running product is a binomial
// coefficient at every step, so the wide intermediate keeps it exact
long long choose_multi(long long t, long long j) {
    unsigned __int128 r = 1;
    for (long long i = 1; i <= j; ++i) r = r * static_cast<unsigned __int128>(t + i - 1) / i;
    return static_cast<long long>(r);
}

// Rooted trees on k nodes, built once per instance. A tree is its root plus
// a multiset of smaller trees, encoded as a (size, index)-non-increasing kid
// list; enumerating multisets in that order directly means no two generated
// forests ever share a shape, so no isomorphism filtering is needed.
struct ForestBuilder {
    using Shape = std::vector<std::pair<int, int>>;  // kid list: (size, index) refs

    std::vector<std::vector<Shape>> trees;  // trees[k][i] = kids of tree i on k nodes

    void build(int upto) {
        if (trees.empty()) trees.emplace_back();  // no trees on zero nodes
        while (static_cast<int>(trees.size()) <= upto) {
            int k = static_cast<int>(trees.size());
            trees.push_back(gen_shapes(k - 1));  // a size-k tree is a root over these
        }
    }

    // every forest on n nodes; requires trees built up to size n
    std::vector<Shape> gen_shapes(int n) {
        std::vector<Shape> out;
        Shape cur;
        gen(n, n, -1, cur, out);
        return out;
    }

    void gen(int n, int max_s, int max_i, Shape& cur, std::vector<Shape>& out) {
        if (n == 0) {
            out.push_back(cur);
            return;
        }
        for (int s = std::min(n, max_s); s >= 1; --s) {
            int top = s == max_s && max_i >= 0 ? max_i : static_cast<int>(trees[s].size()) - 1;
            for (int i = top; i >= 0; --i) {
                cur.emplace_back(s, i);
                gen(n - s, s, i, cur, out);
                cur.pop_back();
            }
        }
    }

    void add_tree(OvalForest& f, int parent, int s, int i) {
        int node = parent < 0 ? f.add_root() : f.add_child(parent);
        for (auto [cs, ci] : trees[s][i]) add_tree(f, node, cs, ci);
    }

    std::vector<OvalForest> forests(int n) {
        build(n);
        std::vector<OvalForest> out;
        for (const Shape& shape : gen_shapes(n)) {
            OvalForest f;
            for (auto [s, i] : shape) add_tree(f, -1, s, i);
            out.push_back(std::move(f));
        }
        return out;
    }
};

// Noncontractible families the generatrix intersection bounds allow: h
// components of a primitive class (c1, c2), normalized up to overall sign,
// with h*ci matching mi in parity and h*|ci| <= mi. Classes outside these
// bounds are prohibited outright, so skipping them keeps the enumeration
// finite without losing any admissible scheme.
std::vector<std::pair<int, int>> allowed_classes(CurveClass cls, int h) {
    std::vector<std::pair<int, int>> out;
    for (int c2 = 0; h * c2 <= cls.m2; ++c2) {
        for (int c1 = -cls.m1; c1 <= cls.m1; ++c1) {
            if (h * std::abs(c1) > cls.m1) continue;
            if (!(c2 > 0 || (c2 == 0 && c1 > 0))) continue;
            if (std::gcd(std::abs(c1), std::abs(c2)) != 1) continue;
            if ((h * c1 - cls.m1) % 2 != 0 || (h * c2 - cls.m2) % 2 != 0) continue;
            out.emplace_back(c1, c2);
        }
    }
    return out;
}

long long candidate_estimate(Surface surface, CurveClass cls, int limit,
                             const std::vector<long long>& fcount) {
    auto bounded_sum = [&](int h, int cap) {
        // ordered h-tuples of forests with at most cap ovals in total
        std::vector<long long> conv(cap + 1, 0);
        conv[0] = 1;
        for (int a = 0; a < h; ++a) {
            std::vector<long long> next(cap + 1, 0);
            for (int s = 0; s <= cap; ++s)
                for (int n = 0; n + s <= cap; ++n)
                    next[n + s] = sat_add(next[n + s], sat_mul(conv[s], fcount[n]));
            conv = std::move(next);
        }
        long long total = 0;
        for (long long c : conv) total = sat_add(total, c);
        return total;
    };
    int ovals_cap = limit - (surface == Surface::Plane && cls.m1 % 2 == 1 ? 1 : 0);
    long long est = 0;
    for (int n = 0; n <= ovals_cap; ++n) est = sat_add(est, fcount[n]);
    if (surface == Surface::Hyperboloid)
        for (int h = 1; h <= limit; ++h)
            est = sat_add(est, sat_mul(static_cast<long long>(allowed_classes(cls, h).size()),
                                       bounded_sum(h, limit - h)));
    return est;
}

// All placements of the unbounded region of a forest drawn on the sphere.
// Regions and ovals form a tree (vertex 0 is the current outer region,
// vertex i+1 sits just inside oval i); re-rooting it at any region turns
// each oval into the child of the next oval toward that region.
std::vector<OvalForest> rootings(const OvalForest& f) {
    int n = f.size();
    std::vector<std::vector<int>> adj(n + 1);
    for (int i = 0; i < n; ++i) {
        int up = f.nodes[i].parent < 0 ? 0 : f.nodes[i].parent + 1;
        adj[up].push_back(i);
        adj[i + 1].push_back(i);
    }
    auto across = [&](int oval, int from) {
        int up = f.nodes[oval].parent < 0 ? 0 : f.nodes[oval].parent + 1;
        return up == from ? oval + 1 : up;
    };
    std::vector<OvalForest> out;
    out.reserve(n + 1);
    for (int root = 0; root <= n; ++root) {
        OvalForest nf;
        std::function<void(int, int, int)> visit = [&](int region, int incoming, int parent) {
            for (int oval : adj[region]) {
                if (oval == incoming) continue;
                int node = parent < 0 ? nf.add_root() : nf.add_child(parent);
                visit(across(oval, region), oval, node);
            }
        };
        visit(root, -1, -1);
        out.push_back(std::move(nf));
    }
    return out;
}

// On the sphere a prohibition found in any placement is genuine, so a scheme
// passes only if every placement of the unbounded region does.
bool admissible_as(const RealScheme& s, TypeClaim claim) {
    if (s.surface != Surface::Ellipsoid) return check_all(s, claim).admissible;
    for (OvalForest& nf : rootings(s.forests[0])) {
        RealScheme alt = s;
        alt.forests[0] = std::move(nf);
        if (!check_all(alt, claim).admissible) return false;
    }
    return true;
}

std::string trimmed(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

long long forest_count(int n) {
    if (n < 0) throw std::invalid_argument("forest size must be nonnegative");
    if (n > 45) throw std::overflow_error("forest count exceeds the 64-bit range beyond 45 ovals");
    // g[m] = forests on m nodes made of trees of size <= k; a tree on k
    // nodes is a root over any forest on k-1 nodes, so the number of size-k
    // trees arrives as g[k-1] just before size-k trees are admitted.
    std::vector<long long> g(n + 1, 0);
    g[0] = 1;
    for (int k = 1; k <= n; ++k) {
        long long tk = g[k - 1];
        std::vector<long long> ng(n + 1, 0);
        for (int m = 0; m <= n; ++m)
            for (long long j = 0; j * k <= m; ++j)
                ng[m] += choose_multi(tk, j) * g[m - j * k];
        g = std::move(ng);
    }
    return g[n];
}

std::vector<OvalForest> forests_with(int n) {
    if (n < 0) throw std::invalid_argument("forest size must be nonnegative");
    ForestBuilder fb;
    return fb.forests(n);
}

std::vector<Enumeration> enumerate_schemes(Surface surface, CurveClass cls, int limit,
                                           Exec exec) {
    {
        RealScheme probe;
        probe.surface = surface;
        probe.cls = cls;
        probe.has_j = surface == Surface::Plane && cls.m1 % 2 == 1;
        probe.forests = {OvalForest{}};
        probe.validate();
    }
    if (limit < 0) limit = static_cast<int>(AuxTables::harnack_number(surface, cls));

    // Beyond size 40 the per-size forest counts stop being exact and act as
    // lower bounds; by then any stream is far past the candidate cap anyway.
    std::vector<long long> fcount(limit + 1);
    for (int n = 0; n <= limit; ++n) fcount[n] = forest_count(std::min(n, 40));
    long long est = candidate_estimate(surface, cls, limit, fcount);
    if (est > kMaxCandidates) {
        std::ostringstream what;
        what << "exhaustive enumeration would visit ";
        if (est >= kSatCap)
            what << "well over " << kMaxCandidates;
        else
            what << "about " << est;
        what << " candidate schemes (cap " << kMaxCandidates << "); lower the component limit";
        throw SearchTooLarge(what.str());
    }

    ForestBuilder fb;
    bool j = surface == Surface::Plane && cls.m1 % 2 == 1;
    std::vector<std::pair<std::string, RealScheme>> raw;

    std::vector<std::vector<OvalForest>> by_size(limit + 1);
    for (int n = 0; n <= limit; ++n) by_size[n] = fb.forests(n);

    for (int n = 0; n + (j ? 1 : 0) <= limit; ++n)
        for (const OvalForest& f : by_size[n]) {
            RealScheme s;
            s.surface = surface;
            s.cls = cls;
            s.has_j = j;
            s.forests = {f};
            raw.emplace_back(render(s), std::move(s));
        }

    if (surface == Surface::Hyperboloid) {
        for (int h = 1; h <= limit; ++h) {
            std::vector<const OvalForest*> annuli(h);
            std::function<void(int, int, int, int)> fill = [&](int a, int left, int c1, int c2) {
                if (a == h) {
                    RealScheme s;
                    s.surface = surface;
                    s.cls = cls;
                    s.h = h;
                    s.c1 = c1;
                    s.c2 = c2;
                    s.forests.reserve(h);
                    for (const OvalForest* f : annuli) s.forests.push_back(*f);
                    raw.emplace_back(render(s), std::move(s));
                    return;
                }
                for (int n = 0; n <= left; ++n)
                    for (const OvalForest& f : by_size[n]) {
                        annuli[a] = &f;
                        fill(a + 1, left - n, c1, c2);
                    }
            };
            for (auto [c1, c2] : allowed_classes(cls, h)) fill(0, limit - h, c1, c2);
        }
    }

    // Annulus rotations and reflections render identically, so sorting by
    // text both fixes the stream order and removes those duplicates.
    std::sort(raw.begin(), raw.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    raw.erase(std::unique(raw.begin(), raw.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              raw.end());

    std::vector<Enumeration> out(raw.size());
    const long long rows = static_cast<long long>(raw.size());
    auto fill_row = [&](long long i) {
        Enumeration& e = out[i];
        e.text = raw[i].first;
        e.scheme = raw[i].second;
        e.report = check_all(e.scheme, TypeClaim::Unknown);
        e.type_i = check_all(e.scheme, TypeClaim::TypeI).admissible;
        e.type_ii = check_all(e.scheme, TypeClaim::TypeII).admissible;
    };
    bool parallel = false;
#ifdef _OPENMP
    if (exec == Exec::Parallel) parallel = true;
    if (exec == Exec::Auto) parallel = rows >= 512 && omp_get_max_threads() > 1;
#else
    (void)exec;
#endif
    if (!parallel) {
        for (long long i = 0; i < rows; ++i) fill_row(i);
    } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
        for (long long i = 0; i < rows; ++i) fill_row(i);
#endif
    }
    return out;
}

std::string orbit_text(const RealScheme& s) {
    if (s.surface != Surface::Ellipsoid) return render(s);
    std::string best;
    for (OvalForest& nf : rootings(s.forests[0])) {
        RealScheme alt = s;
        alt.forests[0] = std::move(nf);
        std::string t = render(alt);
        if (best.empty() || t.size() < best.size() || (t.size() == best.size() && t < best))
            best = std::move(t);
    }
    return best;
}

GoldenTable parse_golden_table(std::istream& in) {
    GoldenTable table;
    std::string line;
    int lineno = 0;
    bool have_header = false;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("golden table, line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trimmed(line);
        if (t.empty() || t[0] == '#') continue;
        if (!have_header) {
            std::istringstream h(t);
            std::string surf, cls;
            if (!(h >> surf >> cls)) fail("expected a \"surface class\" header");
            if (surf == "plane")
                table.surface = Surface::Plane;
            else if (surf == "hyperboloid")
                table.surface = Surface::Hyperboloid;
            else if (surf == "ellipsoid")
                table.surface = Surface::Ellipsoid;
            else
                fail("unknown surface \"" + surf + "\"");
            int m1 = 0, m2 = 0;
            char comma = 0;
            std::istringstream c(cls);
            if (!(c >> m1)) fail("malformed class \"" + cls + "\"");
            if (c >> comma && (comma != ',' || !(c >> m2))) fail("malformed class \"" + cls + "\"");
            table.cls = {m1, table.surface == Surface::Plane ? 0 : m2};
            have_header = true;
            continue;
        }
        size_t tab = line.find('\t');
        if (tab == std::string::npos) fail("expected schemetext<TAB>typetag");
        GoldenEntry e;
        e.text = trimmed(line.substr(0, tab));
        std::string tag = trimmed(line.substr(tab + 1));
        if (tag == "I")
            e.tag = GoldenTag::I;
        else if (tag == "II")
            e.tag = GoldenTag::II;
        else if (tag == "indef")
            e.tag = GoldenTag::Indefinite;
        else if (tag == "unknown")
            e.tag = GoldenTag::Unknown;
        else
            fail("unknown type tag \"" + tag + "\"");
        table.entries.push_back(std::move(e));
    }
    if (!have_header) throw std::invalid_argument("golden table: missing header line");
    return table;
}

GoldenTable load_golden_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open golden table \"" + path + "\"");
    return parse_golden_table(in);
}

GoldenDiff diff_golden(const GoldenTable& table, Exec exec) {
    GoldenDiff diff;
    std::set<std::string> listed;
    for (const GoldenEntry& e : table.entries) {
        RealScheme s = parse_scheme(e.text, table.surface, table.cls).scheme;
        listed.insert(orbit_text(s));
        bool ok = true;
        switch (e.tag) {
            case GoldenTag::I: ok = admissible_as(s, TypeClaim::TypeI); break;
            case GoldenTag::II: ok = admissible_as(s, TypeClaim::TypeII); break;
            case GoldenTag::Indefinite:
                ok = admissible_as(s, TypeClaim::TypeI) && admissible_as(s, TypeClaim::TypeII);
                break;
            case GoldenTag::Unknown: ok = admissible_as(s, TypeClaim::Unknown); break;
        }
        if (!ok) diff.missing.push_back(e.text);
    }
    std::set<std::string> seen;
    for (const Enumeration& e : enumerate_schemes(table.surface, table.cls, -1, exec)) {
        if (!e.report.admissible) continue;
        std::string key = orbit_text(e.scheme);
        if (listed.count(key) || !seen.insert(key).second) continue;
        if (table.surface == Surface::Ellipsoid && !admissible_as(e.scheme, TypeClaim::Unknown))
            continue;
        diff.extra.push_back(std::move(key));
    }
    std::sort(diff.extra.begin(), diff.extra.end());
    return diff;
}

}  // namespace rcurves
