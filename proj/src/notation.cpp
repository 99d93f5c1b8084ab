#include "rcurves/notation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <tuple>

namespace rcurves {

namespace {

// Working representation while parsing and canonicalizing: real trees with
// optional orientation bits, cheap to reorder and to copy for multiplicities.
struct TNode {
    std::vector<TNode> kids;
    int bit = -1;   // absolute orientation bit, -1 when unoriented
    int sgn = -1;   // sign as written: 1 "+", 0 "-", -1 none (parser only)
    size_t pos = 0;
    int size = 1;        // caches, filled by canon_sort
    std::string utext;   // canonical body text of the children, unsigned
    std::string rtext;   // same with signs relative to this oval
};

long long count_nodes(const TNode& n) {
    long long t = 1;
    for (const TNode& k : n.kids) t += count_nodes(k);
    return t;
}

std::string body_u(const std::vector<TNode>& ks) {
    std::string out;
    size_t i = 0;
    while (i < ks.size()) {
        size_t j = i;
        while (j < ks.size() && ks[j].utext == ks[i].utext) ++j;
        if (!out.empty()) out += " + ";
        out += std::to_string(j - i);
        if (!ks[i].utext.empty()) out += "<" + ks[i].utext + ">";
        i = j;
    }
    return out;
}

// base_bit < 0: the ovals are outermost, print their absolute sign; else
// print the pair sign against the enclosing oval ("+" = bits differ).
// An empty outermost oval carries no pair, so its default "+" is left
// implicit unless `elide` is cleared.
std::string body_r(const std::vector<TNode>& ks, int base_bit, bool elide = false) {
    auto schar = [&](const TNode& k) { return (base_bit < 0 ? k.bit : (k.bit ^ base_bit)) ? '+' : '-'; };
    std::string out;
    size_t i = 0;
    while (i < ks.size()) {
        size_t j = i;
        while (j < ks.size() && ks[j].utext == ks[i].utext && ks[j].rtext == ks[i].rtext &&
               schar(ks[j]) == schar(ks[i]))
            ++j;
        if (!out.empty()) out += " + ";
        out += std::to_string(j - i);
        if (!(elide && base_bit < 0 && ks[i].utext.empty() && schar(ks[i]) == '+')) {
            out += '^';
            out += schar(ks[i]);
        }
        if (!ks[i].utext.empty()) out += "<" + ks[i].rtext + ">";
        i = j;
    }
    return out;
}

// Sibling order: subtree size, then text; oriented schemes break remaining
// ties by the pair sign ("+" first). Relative signs never move under the
// global flip, so this order is a property of the orientation class.
void canon_sort(TNode& n, bool oriented) {
    n.size = 1;
    for (TNode& k : n.kids) {
        canon_sort(k, oriented);
        n.size += k.size;
    }
    std::stable_sort(n.kids.begin(), n.kids.end(), [&](const TNode& a, const TNode& b) {
        return std::make_tuple(a.size, std::cref(a.utext), std::cref(a.rtext),
                               oriented ? ((a.bit ^ n.bit) ? 0 : 1) : 0) <
               std::make_tuple(b.size, std::cref(b.utext), std::cref(b.rtext),
                               oriented ? ((b.bit ^ n.bit) ? 0 : 1) : 0);
    });
    n.utext = body_u(n.kids);
    if (oriented) n.rtext = body_r(n.kids, n.bit);
}

// Outermost ovals sort like siblings but on their absolute sign, which the
// global flip does change; callers re-sort after flipping.
void sort_roots(std::vector<TNode>& roots, bool oriented) {
    std::stable_sort(roots.begin(), roots.end(), [&](const TNode& a, const TNode& b) {
        return std::make_tuple(a.size, std::cref(a.utext), std::cref(a.rtext),
                               oriented ? (a.bit ? 0 : 1) : 0) <
               std::make_tuple(b.size, std::cref(b.utext), std::cref(b.rtext),
                               oriented ? (b.bit ? 0 : 1) : 0);
    });
}

void flatten(const TNode& n, int parent, OvalForest& f, std::vector<int>* bits) {
    int id = parent < 0 ? f.add_root() : f.add_child(parent);
    if (bits) bits->push_back(n.bit);
    for (const TNode& k : n.kids) flatten(k, id, f, bits);
}

TNode lift(const OvalForest& f, int idx, const std::vector<int>* bits, int base) {
    TNode n;
    if (bits) n.bit = (*bits)[base + idx];
    for (int c : f.nodes[idx].children) n.kids.push_back(lift(f, c, bits, base));
    return n;
}

void flip_bits(TNode& n) {
    n.bit ^= 1;
    for (TNode& k : n.kids) flip_bits(k);
}

// Least representative of the annulus list under rotation and reflection.
std::vector<int> canon_necklace(const std::vector<std::string>& b) {
    int h = static_cast<int>(b.size());
    std::vector<int> best;
    std::vector<std::string> best_txt;
    for (int refl = 0; refl < 2; ++refl)
        for (int d = 0; d < h; ++d) {
            std::vector<int> perm(h);
            std::vector<std::string> txt(h);
            for (int j = 0; j < h; ++j) {
                perm[j] = refl ? ((d - j) % h + h) % h : (d + j) % h;
                txt[j] = b[perm[j]];
            }
            if (best.empty() || txt < best_txt) {
                best = perm;
                best_txt = txt;
            }
        }
    return best;
}

std::string class_token(int c1, int c2) {
    return "(" + std::to_string(c1) + "," + std::to_string(c2) + ")";
}

struct CanonReal {
    RealScheme s;
    std::string text;
};

CanonReal canon_real(const RealScheme& in) {
    in.validate();
    std::vector<std::vector<TNode>> tf(in.forests.size());
    for (size_t k = 0; k < in.forests.size(); ++k) {
        for (int r : in.forests[k].roots) tf[k].push_back(lift(in.forests[k], r, nullptr, 0));
        for (TNode& t : tf[k]) canon_sort(t, false);
        sort_roots(tf[k], false);
    }
    CanonReal out;
    out.s = in;
    out.s.forests.assign(tf.size(), {});
    if (in.surface == Surface::Hyperboloid && in.h > 0) {
        std::vector<std::string> btexts(tf.size());
        for (size_t k = 0; k < tf.size(); ++k) btexts[k] = body_u(tf[k]);
        std::vector<int> perm = canon_necklace(btexts);
        std::vector<std::vector<TNode>> tf2(tf.size());
        std::vector<std::string> bt2(tf.size());
        for (size_t k = 0; k < tf.size(); ++k) {
            tf2[k] = std::move(tf[perm[k]]);
            bt2[k] = std::move(btexts[perm[k]]);
        }
        tf = std::move(tf2);
        std::string inner;
        int t = 0, h = static_cast<int>(tf.size());
        while (t < h) {
            int k = 1;
            while (t + k <= h - 1 && bt2[t + k - 1].empty()) ++k;
            if (!inner.empty()) inner += ", ";
            if (k > 1) inner += std::to_string(k);
            inner += class_token(in.c1, in.c2);
            if (!bt2[t + k - 1].empty()) inner += ", " + bt2[t + k - 1];
            t += k;
        }
        out.text = "<" + inner + ">";
    } else {
        std::string body = body_u(tf[0]);
        if (in.has_j) body = body.empty() ? "J" : "J + " + body;
        if (body.empty()) body = "0";
        out.text = "<" + body + ">";
    }
    for (size_t k = 0; k < tf.size(); ++k)
        for (const TNode& t : tf[k]) flatten(t, -1, out.s.forests[k], nullptr);
    return out;
}

struct CanonOriented {
    OrientedScheme o;
    std::string text;
};

CanonOriented canon_oriented(const OrientedScheme& in) {
    in.base.validate();
    if (in.base.surface == Surface::Hyperboloid && in.base.h > 0)
        throw std::invalid_argument(
            "orientations on schemes with noncontractible components have no written form");
    size_t want = (in.base.has_j ? 1 : 0) + in.base.forests[0].nodes.size();
    if (in.bits.size() != want) throw std::invalid_argument("wrong number of orientation bits");
    for (int b : in.bits)
        if (b != 0 && b != 1) throw std::invalid_argument("orientation bits must be 0 or 1");

    int jbit = in.base.has_j ? in.bits[0] : -1;
    int base = in.base.has_j ? 1 : 0;
    std::vector<TNode> roots;
    for (int r : in.base.forests[0].roots) roots.push_back(lift(in.base.forests[0], r, &in.bits, base));
    for (TNode& t : roots) canon_sort(t, true);

    // Default "+" marks are left implicit on empty outermost ovals and on J,
    // unless that would erase every sign and make the text read as unoriented.
    auto assemble = [&](std::vector<TNode>& rs, int jb) {
        sort_roots(rs, true);
        std::string body = body_r(rs, -1, true);
        std::string jtxt = jb ? "J" : "J^-";
        if (body.find('^') == std::string::npos && jtxt.find('^') == std::string::npos) {
            body = body_r(rs, -1, false);
            jtxt = "J^+";
        }
        if (in.base.has_j) body = body.empty() ? jtxt : jtxt + " + " + body;
        if (body.empty()) body = "0";
        return "<" + body + ">";
    };

    std::string text_a = assemble(roots, jbit);
    std::vector<TNode> flipped = roots;
    for (TNode& t : flipped) flip_bits(t);
    std::string text_b = assemble(flipped, jbit < 0 ? -1 : jbit ^ 1);

    bool use_flip = text_b < text_a;
    std::vector<TNode>& win = use_flip ? flipped : roots;
    CanonOriented out;
    out.text = use_flip ? text_b : text_a;
    out.o.base = in.base;
    out.o.base.forests.assign(1, {});
    if (in.base.has_j) out.o.bits.push_back(use_flip ? (jbit ^ 1) : jbit);
    for (const TNode& t : win) flatten(t, -1, out.o.base.forests[0], &out.o.bits);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

class Parser {
public:
    Parser(const std::string& text, Surface surf, CurveClass c) : s(text), surface(surf), cls(c) {}

    ParsedScheme run();

private:
    const std::string& s;
    size_t i = 0;
    Surface surface;
    CurveClass cls;
    long long budget = 200000;

    bool saw_j = false;
    int j_sgn = -1;
    size_t first_sign_pos = std::string::npos;

    // hyperboloid assembly
    int h_count = 0, cc1 = 0, cc2 = 0;
    std::vector<std::vector<TNode>> annuli;
    std::vector<char> filled;
    bool saw_h0_forest = false;
    std::vector<TNode> h0_forest;

    [[noreturn]] void fail(const std::string& m, size_t at) const { throw ParseError(m, at); }
    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    char peek() {
        ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!eat(c)) fail(std::string("expected ") + what, i);
    }

    long long number() {
        ws();
        size_t p0 = i;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            fail("expected a number", i);
        if (s[i] == '0' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))
            fail("leading zeros are not allowed", p0);
        long long v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            if (v > 1000000) fail("count too large", p0);
            ++i;
        }
        return v;
    }

    int signed_int() {
        ws();
        size_t p0 = i;
        bool neg = false;
        if (i < s.size() && s[i] == '-') {
            neg = true;
            ++i;
        }
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            fail("expected an integer", p0);
        long long v = number();
        if (v > 1000) fail("class entry too large", p0);
        return neg ? -static_cast<int>(v) : static_cast<int>(v);
    }

    // -1 when no "^" follows; otherwise 1 for "^+", 0 for "^-".
    int opt_sign() {
        if (peek() != '^') return -1;
        size_t p0 = i;
        ++i;
        char c = peek();
        if (c == '+' || c == '-') {
            ++i;
            if (first_sign_pos == std::string::npos) first_sign_pos = p0;
            return c == '+' ? 1 : 0;
        }
        fail("expected + or - after ^", i);
    }

    void parse_item(std::vector<TNode>& out, bool top, long long pre, size_t pre_pos) {
        ws();
        size_t p0 = pre >= 0 ? pre_pos : i;
        long long n = 1;
        bool have_count = false;
        if (pre >= 0) {
            n = pre;
            have_count = true;
        } else {
            char c = peek();
            if (c == 'J') {
                ++i;
                if (surface != Surface::Plane || cls.m1 % 2 == 0)
                    fail("J only exists on odd-degree plane curves", p0);
                if (!top) fail("J cannot lie inside an oval", p0);
                if (saw_j) fail("duplicate J", p0);
                saw_j = true;
                j_sgn = opt_sign();
                return;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                n = number();
                have_count = true;
            }
        }
        int sg = -1;
        if (peek() == '^') {
            size_t sp = i;
            if (!have_count) fail("a sign needs an oval count or J before it", sp);
            sg = opt_sign();
        }
        TNode proto;
        proto.sgn = sg;
        proto.pos = p0;
        bool have_group = false;
        if (peek() == '<') {
            ++i;
            have_group = true;
            parse_pbody(proto.kids, false, -1, 0);
            expect('>', "'>'");
        } else if (peek() == '(') {
            if (surface == Surface::Hyperboloid)
                fail("homology classes must be set off by commas", i);
            fail("homology classes only appear on the hyperboloid", i);
        }
        if (!have_count && !have_group) fail("expected an oval count, a group, or J", p0);
        if (have_count && n == 0) fail("a zero count only denotes the empty scheme", p0);
        budget -= n * count_nodes(proto);
        if (budget < 0) fail("scheme too large", p0);
        for (long long k = 0; k < n; ++k) out.push_back(proto);
    }

    void parse_pbody(std::vector<TNode>& out, bool top, long long pre, size_t pre_pos) {
        if (pre < 0 && peek() == '0') {
            size_t p0 = i;
            ++i;
            char c = peek();
            if (c == '>') return;  // empty scheme
            fail("'0' denotes the empty scheme only", p0);
        }
        parse_item(out, top, pre, pre_pos);
        while (eat('+')) parse_item(out, top, -1, 0);
    }

    void handle_class(long long cnt, int a, int b, size_t p0) {
        if (cnt == 0) fail("a zero count only denotes the empty scheme", p0);
        if (a == 0 && b == 0) fail("noncontractible components need a nonzero class", p0);
        if (std::gcd(a, b) != 1) fail("a noncontractible class must be primitive", p0);
        normalize_class(a, b);
        if (saw_h0_forest) fail("noncontractible components must precede annulus schemes", p0);
        if (h_count > 0 && (a != cc1 || b != cc2))
            fail("noncontractible components of different classes", p0);
        cc1 = a;
        cc2 = b;
        h_count += static_cast<int>(cnt);
        if (h_count > 1000) fail("too many noncontractible components", p0);
        annuli.resize(h_count);
        filled.resize(h_count, 0);
    }

    void handle_forest(std::vector<TNode>&& nodes, size_t p0) {
        if (h_count == 0) {
            if (saw_h0_forest) fail("expected a noncontractible component between annulus schemes", p0);
            saw_h0_forest = true;
            h0_forest = std::move(nodes);
        } else {
            if (filled.back()) fail("two annulus schemes for one gap", p0);
            annuli.back() = std::move(nodes);
            filled.back() = 1;
        }
    }

    void hyperboloid_interior() {
        if (peek() == '0') {
            size_t p0 = i;
            ++i;
            if (peek() == '>') return;
            fail("'0' denotes the empty scheme only", p0);
        }
        while (true) {
            ws();
            size_t p0 = i;
            long long cnt = -1;
            if (std::isdigit(static_cast<unsigned char>(peek()))) cnt = number();
            if (peek() == '(') {
                ++i;
                int a = signed_int();
                expect(',', "','");
                int b = signed_int();
                expect(')', "')'");
                handle_class(cnt < 0 ? 1 : cnt, a, b, p0);
            } else if (cnt >= 0 && cnt == 0 && (peek() == ',' || peek() == '>')) {
                handle_forest({}, p0);  // "0": an explicitly empty annulus
            } else {
                std::vector<TNode> nodes;
                parse_pbody(nodes, true, cnt, p0);
                handle_forest(std::move(nodes), p0);
            }
            if (!eat(',')) break;
        }
    }

    void check_cls() const {
        switch (surface) {
            case Surface::Plane:
                if (cls.m1 < 1 || cls.m2 != 0)
                    throw std::invalid_argument("plane curves need degree m >= 1");
                break;
            case Surface::Ellipsoid:
                if (cls.m1 < 1 || cls.m1 != cls.m2)
                    throw std::invalid_argument("ellipsoid curves need bidegree (m, m), m >= 1");
                break;
            case Surface::Hyperboloid:
                if (cls.m1 < 1 || cls.m2 < 1)
                    throw std::invalid_argument("hyperboloid curves need bidegree (m1, m2), both >= 1");
                break;
        }
    }
};

bool any_sign(const TNode& n) {
    if (n.sgn >= 0) return true;
    for (const TNode& k : n.kids)
        if (any_sign(k)) return true;
    return false;
}

// Once any sign appears, every oval must carry one, except empty outermost
// ovals (and J), whose bits decide no pair and default to "+".
void require_signs(const TNode& n, bool outermost, size_t& bad_at) {
    if (n.sgn < 0 && !(outermost && n.kids.empty()) && bad_at == std::string::npos)
        bad_at = n.pos;
    for (const TNode& k : n.kids) require_signs(k, false, bad_at);
}

void default_root_sign(TNode& n) {
    if (n.sgn < 0) n.sgn = 1;
}

void resolve_bits(TNode& n, int parent_bit) {
    n.bit = parent_bit < 0 ? n.sgn : (parent_bit ^ n.sgn);
    for (TNode& k : n.kids) resolve_bits(k, n.bit);
}

ParsedScheme Parser::run() {
    check_cls();
    std::vector<TNode> plain;
    ws();
    expect('<', "'<'");
    if (surface == Surface::Hyperboloid)
        hyperboloid_interior();
    else
        parse_pbody(plain, true, -1, 0);
    expect('>', "'>'");
    ws();
    if (i != s.size()) fail("trailing input after the scheme", i);
    if (surface == Surface::Plane && cls.m1 % 2 == 1 && !saw_j)
        fail("an odd-degree scheme must contain the one-sided component J", i);

    std::vector<std::vector<TNode>> tf;
    if (surface == Surface::Hyperboloid && h_count > 0)
        tf = std::move(annuli);
    else if (surface == Surface::Hyperboloid)
        tf.push_back(std::move(h0_forest));
    else
        tf.push_back(std::move(plain));

    bool oriented = j_sgn >= 0;
    for (const auto& forest : tf)
        for (const TNode& t : forest) oriented = oriented || any_sign(t);
    if (oriented) {
        size_t bad_at = std::string::npos;
        for (const auto& forest : tf)
            for (const TNode& t : forest) require_signs(t, true, bad_at);
        if (bad_at != std::string::npos)
            fail("signs on only part of the ovals: orientation must be total or absent", bad_at);
        if (surface == Surface::Hyperboloid && h_count > 0)
            fail("orientations on schemes with noncontractible components have no written form",
                 first_sign_pos);
        for (auto& forest : tf)
            for (TNode& t : forest) default_root_sign(t);
    }

    RealScheme raw;
    raw.surface = surface;
    raw.cls = cls;
    raw.has_j = saw_j;
    raw.h = h_count;
    raw.c1 = cc1;
    raw.c2 = cc2;
    raw.forests.assign(tf.size(), {});
    std::vector<int> bits;
    if (oriented && saw_j) bits.push_back(j_sgn >= 0 ? j_sgn : 1);
    for (size_t k = 0; k < tf.size(); ++k)
        for (TNode& t : tf[k]) {
            if (oriented) resolve_bits(t, -1);
            flatten(t, -1, raw.forests[k], oriented ? &bits : nullptr);
        }

    ParsedScheme out;
    if (oriented) {
        CanonOriented co = canon_oriented({raw, bits});
        out.scheme = co.o.base;
        out.orientation = std::move(co.o);
    } else {
        out.scheme = canon_real(raw).s;
    }
    return out;
}

}  // namespace

ParsedScheme parse_scheme(const std::string& text, Surface surface, CurveClass cls) {
    return Parser(text, surface, cls).run();
}

std::string render(const RealScheme& s) { return canon_real(s).text; }

std::string render(const OrientedScheme& o) { return canon_oriented(o).text; }

RealScheme canonical(const RealScheme& s) { return canon_real(s).s; }

OrientedScheme canonical(const OrientedScheme& o) { return canon_oriented(o).o; }

}  // namespace rcurves
