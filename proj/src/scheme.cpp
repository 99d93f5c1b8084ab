#include "rcurves/scheme.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace rcurves {

std::string to_string(Surface s) {
    switch (s) {
        case Surface::Plane: return "plane";
        case Surface::Hyperboloid: return "hyperboloid";
        case Surface::Ellipsoid: return "ellipsoid";
    }
    return "?";
}

std::string to_string(TypeClaim t) {
    switch (t) {
        case TypeClaim::TypeI: return "I";
        case TypeClaim::TypeII: return "II";
        case TypeClaim::Unknown: return "unknown";
    }
    return "?";
}

int OvalForest::add_root() {
    nodes.push_back({});
    roots.push_back(size() - 1);
    return size() - 1;
}

int OvalForest::add_child(int parent) {
    nodes.push_back({parent, {}});
    nodes[parent].children.push_back(size() - 1);
    return size() - 1;
}

int OvalForest::depth(int i) const {
    int d = 0;
    while (nodes[i].parent >= 0) {
        i = nodes[i].parent;
        ++d;
    }
    return d;
}

int OvalForest::height(int i) const {
    int best = 0;
    for (int c : nodes[i].children) best = std::max(best, height(c));
    return best + 1;
}

int OvalForest::max_height() const {
    int best = 0;
    for (int r : roots) best = std::max(best, height(r));
    return best;
}

OvalForest OvalForest::flat(int n) {
    OvalForest f;
    for (int i = 0; i < n; ++i) f.add_root();
    return f;
}

OvalForest OvalForest::chain(int n) {
    OvalForest f;
    if (n <= 0) return f;
    int at = f.add_root();
    for (int i = 1; i < n; ++i) at = f.add_child(at);
    return f;
}

void normalize_class(int& c1, int& c2) {
    if (c2 < 0 || (c2 == 0 && c1 < 0)) {
        c1 = -c1;
        c2 = -c2;
    }
}

namespace {

void validate_forest(const OvalForest& f) {
    std::vector<int> seen_as_root(f.nodes.size(), 0);
    for (int r : f.roots) {
        if (r < 0 || r >= f.size() || f.nodes[r].parent != -1)
            throw std::invalid_argument("forest root list is inconsistent");
        ++seen_as_root[r];
    }
    for (int i = 0; i < f.size(); ++i) {
        const Oval& o = f.nodes[i];
        if (o.parent == -1) {
            if (seen_as_root[i] != 1)
                throw std::invalid_argument("forest root list is inconsistent");
        } else {
            if (o.parent < 0 || o.parent >= i)
                throw std::invalid_argument("forest nodes are not in preorder");
            const auto& sibs = f.nodes[o.parent].children;
            if (std::count(sibs.begin(), sibs.end(), i) != 1)
                throw std::invalid_argument("forest child links are inconsistent");
        }
        for (int c : o.children)
            if (c <= i || c >= f.size() || f.nodes[c].parent != i)
                throw std::invalid_argument("forest child links are inconsistent");
    }
}

}  // namespace

void RealScheme::validate() const {
    switch (surface) {
        case Surface::Plane:
            if (cls.m1 < 1 || cls.m2 != 0)
                throw std::invalid_argument("plane curves need degree m >= 1");
            if (has_j != (cls.m1 % 2 == 1))
                throw std::invalid_argument("J is present exactly on odd-degree plane curves");
            if (h != 0 || c1 != 0 || c2 != 0)
                throw std::invalid_argument("noncontractible components only live on the hyperboloid");
            break;
        case Surface::Ellipsoid:
            if (cls.m1 < 1 || cls.m1 != cls.m2)
                throw std::invalid_argument("ellipsoid curves need bidegree (m, m), m >= 1");
            if (has_j || h != 0 || c1 != 0 || c2 != 0)
                throw std::invalid_argument("ellipsoid schemes consist of ovals only");
            break;
        case Surface::Hyperboloid:
            if (cls.m1 < 1 || cls.m2 < 1)
                throw std::invalid_argument("hyperboloid curves need bidegree (m1, m2), both >= 1");
            if (has_j)
                throw std::invalid_argument("J only exists on odd-degree plane curves");
            if (h < 0) throw std::invalid_argument("negative component count");
            if (h > 0) {
                if (c1 == 0 && c2 == 0)
                    throw std::invalid_argument("noncontractible components need a nonzero class");
                if (std::gcd(c1, c2) != 1)
                    throw std::invalid_argument("noncontractible class must be primitive");
                if (c2 < 0 || (c2 == 0 && c1 < 0))
                    throw std::invalid_argument("noncontractible class is not sign-normalized");
            } else if (c1 != 0 || c2 != 0) {
                throw std::invalid_argument("class given without noncontractible components");
            }
            break;
    }
    size_t want = (surface == Surface::Hyperboloid && h > 0) ? static_cast<size_t>(h) : 1;
    if (forests.size() != want)
        throw std::invalid_argument("wrong number of oval forests");
    for (const OvalForest& f : forests) validate_forest(f);
}

ComponentCounts component_counts(const RealScheme& s) {
    ComponentCounts c;
    for (const OvalForest& f : s.forests) c.l += f.size();
    c.h = s.h;
    c.total = c.l + c.h + (s.has_j ? 1 : 0);
    return c;
}

ParityCounts parity_counts(const RealScheme& s) {
    if (s.surface != Surface::Plane)
        throw NotApplicable("oval parity is a plane notion");
    if (s.cls.m1 % 2 != 0)
        throw NotApplicable("oval parity needs an even degree (ovals must bound on both sides)");
    ParityCounts pc;
    const OvalForest& f = s.forests[0];
    for (int i = 0; i < f.size(); ++i)
        (f.depth(i) % 2 == 0 ? pc.p : pc.n)++;
    return pc;
}

int genus(const RealScheme& s) {
    if (s.surface == Surface::Plane) return (s.cls.m1 - 1) * (s.cls.m1 - 2) / 2;
    return (s.cls.m1 - 1) * (s.cls.m2 - 1);
}

int m_defect(const RealScheme& s) {
    return genus(s) + 1 - component_counts(s).total;
}

ChiHalves chi_halves(const RealScheme& s) {
    ChiHalves ch;
    auto add_regions = [&](const OvalForest& f, int base_color) {
        // Interior of an oval at depth d sits d+1 oval boundaries away from
        // the forest's base region and alternates color accordingly.
        for (int i = 0; i < f.size(); ++i) {
            int chi = 1 - static_cast<int>(f.nodes[i].children.size());
            ((base_color + f.depth(i)) % 2 == 0 ? ch.minus : ch.plus) += chi;
        }
    };
    switch (s.surface) {
        case Surface::Plane:
            throw NoSeparation("plane curves do not cut the plane into two halves");
        case Surface::Ellipsoid: {
            const OvalForest& f = s.forests[0];
            ch.plus += 2 - static_cast<int>(f.roots.size());
            add_regions(f, 0);  // regions one level in are minus
            return ch;
        }
        case Surface::Hyperboloid: {
            if (s.cls.m1 % 2 != 0 || s.cls.m2 % 2 != 0)
                throw NoSeparation("a dividing curve on the hyperboloid needs an even bidegree");
            if (s.h % 2 != 0)
                throw NoSeparation("an odd number of noncontractible components does not separate");
            if (s.h == 0) {
                const OvalForest& f = s.forests[0];
                ch.plus += -static_cast<int>(f.roots.size());
                add_regions(f, 0);
                return ch;
            }
            // h > 0: the annuli between consecutive noncontractible
            // components alternate; nothing distinguishes the two colorings,
            // so report one and mark the swap as equally valid.
            for (int a = 0; a < s.h; ++a) {
                const OvalForest& f = s.forests[a];
                int base = -static_cast<int>(f.roots.size());
                (a % 2 == 0 ? ch.plus : ch.minus) += base;
                add_regions(f, a);
            }
            ch.ambiguous = true;
            return ch;
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

using Profile = std::vector<int>;           // nest depths, sorted descending
using ProfileSet = std::map<int, std::vector<Profile>>;  // keyed by cardinality

bool dominates(const Profile& a, const Profile& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i]) return false;
    return true;
}

void prune(std::vector<Profile>& ps) {
    std::vector<Profile> kept;
    for (const Profile& p : ps) {
        bool dead = false;
        for (const Profile& q : ps)
            if (&q != &p && dominates(q, p) && !(p == q && &p < &q)) {
                dead = true;
                break;
            }
        if (!dead && std::find(kept.begin(), kept.end(), p) == kept.end())
            kept.push_back(p);
    }
    ps = std::move(kept);
}

Profile merged(const Profile& a, const Profile& b) {
    Profile out(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), out.begin(), std::greater<int>());
    return out;
}

// Antichain profiles of A ⊔ B from those of the parts.
ProfileSet combine(const ProfileSet& a, const ProfileSet& b) {
    ProfileSet out;
    for (const auto& [ra, pas] : a)
        for (const auto& [rb, pbs] : b)
            for (const Profile& pa : pas)
                for (const Profile& pb : pbs) out[ra + rb].push_back(merged(pa, pb));
    for (auto& [r, ps] : out) prune(ps);
    return out;
}

// Profiles of antichains inside the subtree at v, the empty one included.
ProfileSet subtree_profiles(const OvalForest& f, int v) {
    ProfileSet out;
    out[0] = {Profile{}};
    for (int c : f.nodes[v].children) out = combine(out, subtree_profiles(f, c));
    out[1].push_back(Profile{f.height(v)});
    prune(out[1]);
    return out;
}

}  // namespace

namespace {

// Any sub-antichain realizes the matching sub-profile, and descending inside
// a nest lowers single entries, so the realized profiles are exactly the
// downward closure of the output under "top-|P| prefix of Q dominates P".
bool prefix_dominates(const Profile& q, const Profile& p) {
    if (q.size() < p.size()) return false;
    for (size_t i = 0; i < p.size(); ++i)
        if (q[i] < p[i]) return false;
    return true;
}

}  // namespace

std::vector<Profile> disjoint_nest_profiles(const RealScheme& s) {
    ProfileSet acc;
    acc[0] = {Profile{}};
    for (const OvalForest& f : s.forests)
        for (int r : f.roots) acc = combine(acc, subtree_profiles(f, r));
    std::vector<Profile> all;
    for (auto& [r, ps] : acc) {
        if (r == 0) continue;
        all.insert(all.end(), ps.begin(), ps.end());
    }
    std::vector<Profile> out;
    for (const Profile& p : all) {
        bool dead = false;
        for (const Profile& q : all)
            if (&q != &p && prefix_dominates(q, p) && !(p == q && &p < &q)) {
                dead = true;
                break;
            }
        if (!dead) out.push_back(p);
    }
    std::sort(out.begin(), out.end(), [](const Profile& a, const Profile& b) {
        return a.size() != b.size() ? a.size() < b.size() : a > b;
    });
    return out;
}

}  // namespace rcurves
