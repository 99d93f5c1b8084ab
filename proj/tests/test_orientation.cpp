#include "rcurves/orientation.hpp"

#include <cstdint>
#include <random>
#include <set>

#include "doctest.h"
#include "rcurves/notation.hpp"

using namespace rcurves;

namespace {

const CurveClass deg1{1, 0}, deg2{2, 0}, deg4{4, 0}, deg5{5, 0}, deg6{6, 0};

OrientedScheme oriented(const std::string& t, CurveClass c) {
    return *parse_scheme(t, Surface::Plane, c).orientation;
}

RealScheme plane(int m, OvalForest f) {
    RealScheme s{Surface::Plane, {m, 0}, m % 2 == 1, 0, 0, 0, {std::move(f)}};
    s.validate();
    return s;
}

OrientedScheme flipped(OrientedScheme o) {
    for (int& b : o.bits) b ^= 1;
    return o;
}

OvalForest random_forest(std::mt19937& rng, int n) {
    OvalForest f;
    for (int i = 0; i < n; ++i) {
        std::uniform_int_distribution<int> pick(-1, i - 1);
        int p = pick(rng);
        if (p < 0)
            f.add_root();
        else
            f.add_child(p);
    }
    return f;
}

// Reference search: every bit vector, filtered by the public checks, folded
// to the representative with the first bit set.
std::set<std::vector<int>> brute_force(const RealScheme& s) {
    int l = s.forests[0].size();
    std::set<std::vector<int>> out;
    for (uint64_t m = 0; m < (1ull << l); ++m) {
        std::vector<int> bits(l);
        for (int i = 0; i < l; ++i) bits[i] = static_cast<int>((m >> i) & 1);
        OrientedScheme o{s, bits};
        if (!rokhlin_check(o).pass.value()) continue;
        Verdict v = orevkov_check(o);
        if (v.applicable && !v.pass.value()) continue;
        if (l > 0 && bits[0] == 0)
            for (int& b : bits) b ^= 1;
        out.insert(bits);
    }
    return out;
}

std::set<std::vector<int>> as_bit_set(const std::vector<OrientedScheme>& v) {
    std::set<std::vector<int>> out;
    for (const OrientedScheme& o : v) out.insert(o.bits);
    return out;
}

}  // namespace

TEST_SUITE("orientation") {

TEST_CASE("pair census on pinned schemes") {
    PairCensus c = pair_census(oriented("<9 + 1^+<1^+>>", deg6));
    CHECK(c.pi_plus == 1);
    CHECK(c.pi_minus == 0);
    CHECK(c.k_plus == 1);
    CHECK(c.k_minus == 0);
    CHECK(c.pi[1][0] == 1);  // the one positive pair counts negatively after negation
    CHECK(c.pi[0][0] == 0);
    CHECK(c.pi[0][1] == 0);
    CHECK(c.pi[1][1] == 0);

    c = pair_census(oriented("<5 + 1^+<3^+ + 2^->>", deg6));
    CHECK(c.pi_plus == 3);
    CHECK(c.pi_minus == 2);
    CHECK(c.k_plus == 1);
    CHECK(c.k_minus == 0);
    CHECK(c.pi[1][0] == 3);
    CHECK(c.pi[0][0] == 2);

    // One-sided component present: its bit rides along but pairs only involve
    // ovals.
    c = pair_census(oriented("<J + 1^+<1^+ + 2^->>", deg5));
    CHECK(c.pi_plus == 1);
    CHECK(c.pi_minus == 2);
    CHECK(c.k_plus == 1);
    CHECK(c.pi[1][0] == 1);
    CHECK(c.pi[0][0] == 2);

    OrientedScheme empty{parse_scheme("<0>", Surface::Plane, deg2).scheme, {}};
    CHECK(pair_census(empty) == PairCensus{});

    RealScheme ball{Surface::Ellipsoid, {2, 2}, false, 0, 0, 0, {OvalForest::flat(1)}};
    CHECK_THROWS_AS(pair_census(OrientedScheme{ball, {1}}), std::invalid_argument);
    CHECK_THROWS_AS(pair_census(OrientedScheme{plane(2, OvalForest::flat(1)), {1, 0}}),
                    std::invalid_argument);
}

TEST_CASE("dividing-curve relation") {
    Verdict v = rokhlin_check(oriented("<1^+>", deg2));
    CHECK(v.applicable);
    CHECK(v.pass.value());
    CHECK(v.lhs == 0);
    CHECK(v.rhs == 0);

    v = rokhlin_check(oriented("<9 + 1^+<1^+>>", deg6));
    CHECK(v.pass.value());
    CHECK(v.lhs == 2);
    CHECK(v.rhs == 2);

    v = rokhlin_check(oriented("<9 + 1^+<1^->>", deg6));
    CHECK_FALSE(v.pass.value());
    CHECK(v.lhs == -2);
    CHECK(v.rhs == 2);

    CHECK_FALSE(rokhlin_check(oriented("<J^+>", deg1)).applicable);
    CHECK_FALSE(rokhlin_check(oriented("<J + 1^+<1^+ + 2^->>", deg5)).applicable);
}

TEST_CASE("nonempty-oval identities") {
    Verdict v = orevkov_check(oriented("<9 + 1^+<1^+>>", deg6));
    CHECK(v.applicable);
    CHECK(v.pass.value());
    CHECK(v.lhs == 1);
    CHECK(v.rhs == 1);

    v = orevkov_check(oriented("<5 + 1^+<3^+ + 2^->>", deg6));
    CHECK(v.pass.value());
    CHECK(v.lhs == 1);
    CHECK(v.rhs == 1);

    // Flipping the nest pair breaks the plus-side identity.
    v = orevkov_check(oriented("<9 + 1^+<1^->>", deg6));
    CHECK(v.applicable);
    CHECK_FALSE(v.pass.value());
    CHECK(v.lhs == -1);
    CHECK(v.rhs == 1);

    // No nonempty oval at all: applicable, both sides vanish.
    v = orevkov_check(oriented("<4^+>", deg4));
    CHECK(v.applicable);
    CHECK(v.pass.value());
    CHECK(v.lhs == 0);
    CHECK(v.rhs == 0);

    CHECK_FALSE(orevkov_check(oriented("<11^+>", deg6)).applicable);   // nest too shallow
    CHECK_FALSE(orevkov_check(oriented("<8 + 1^+<1^+>>", deg6)).applicable);  // not an M-curve
    CHECK_FALSE(orevkov_check(oriented("<7 + 1^+<1^+> + 1^+<1^+>>", deg6)).applicable);
}

TEST_CASE("census is invariant under the global flip") {
    std::mt19937 rng(20260816);
    const int degrees[] = {2, 3, 4, 5, 6, 8};
    for (int rep = 0; rep < 300; ++rep) {
        int m = degrees[rng() % 6];
        RealScheme s = plane(m, random_forest(rng, static_cast<int>(rng() % 11)));
        int nbits = (s.has_j ? 1 : 0) + s.forests[0].size();
        std::vector<int> bits(nbits);
        for (int& b : bits) b = static_cast<int>(rng() % 2);
        OrientedScheme o{s, bits};

        PairCensus c = pair_census(o);
        CHECK(c == pair_census(flipped(o)));
        CHECK(rokhlin_check(o) == rokhlin_check(flipped(o)));
        CHECK(orevkov_check(o) == orevkov_check(flipped(o)));

        const OvalForest& f = s.forests[0];
        int pairs = 0, leaf_pairs = 0, nonempty = 0;
        for (int i = 0; i < f.size(); ++i) {
            pairs += f.depth(i);
            if (f.nodes[i].children.empty())
                leaf_pairs += f.depth(i);
            else
                ++nonempty;
        }
        CHECK(c.pi_plus + c.pi_minus == pairs);
        CHECK(c.k_plus + c.k_minus == nonempty);
        CHECK(c.pi[0][0] + c.pi[0][1] + c.pi[1][0] + c.pi[1][1] == leaf_pairs);
    }
}

TEST_CASE("admissible orientation search on pinned schemes") {
    RealScheme hilbert = parse_scheme("<9 + 1<1>>", Surface::Plane, deg6).scheme;
    std::vector<OrientedScheme> res = admissible_orientations(hilbert);
    CHECK(res.size() == 512);
    const OvalForest& f = hilbert.forests[0];
    int outer = -1;
    for (int i = 0; i < f.size(); ++i)
        if (!f.nodes[i].children.empty()) outer = i;
    int inner = f.nodes[outer].children[0];
    for (const OrientedScheme& o : res) {
        CHECK(o.bits[0] == 1);
        CHECK(o.bits[outer] != o.bits[inner]);  // the nest pair must be positive
        CHECK(rokhlin_check(o).pass.value());
        CHECK(orevkov_check(o).pass.value());
    }
    CHECK(as_bit_set(res).size() == res.size());
    CHECK(std::is_sorted(res.begin(), res.end(), [](const OrientedScheme& a,
                                                    const OrientedScheme& b) {
        return a.bits < b.bits;
    }));
    CHECK(type_constraint(hilbert) == TypeClaim::Unknown);

    CHECK(admissible_orientations(plane(6, OvalForest::flat(11))).empty());
    CHECK(type_constraint(plane(6, OvalForest::flat(11))) == TypeClaim::TypeII);

    CHECK(type_constraint(plane(2, OvalForest{})) == TypeClaim::TypeII);

    std::vector<OrientedScheme> conic = admissible_orientations(plane(2, OvalForest::flat(1)));
    CHECK(conic.size() == 1);
    CHECK(conic[0].bits == std::vector<int>{1});

    CHECK(admissible_orientations(parse_scheme("<5 + 1<5>>", Surface::Plane, deg6).scheme).size()
          == 320);

    RealScheme ball{Surface::Ellipsoid, {2, 2}, false, 0, 0, 0, {OvalForest::flat(1)}};
    CHECK_THROWS_AS(admissible_orientations(ball), std::invalid_argument);
    CHECK_THROWS_AS(admissible_orientations(plane(5, OvalForest::flat(2))),
                    std::invalid_argument);
    CHECK_THROWS_AS(admissible_orientations(plane(6, OvalForest::flat(25))), SearchTooLarge);
    CHECK_THROWS_AS(admissible_orientations(plane(6, OvalForest::flat(13)), 12), SearchTooLarge);
}

TEST_CASE("search equals brute force on small schemes") {
    std::vector<RealScheme> cases = {
        parse_scheme("<4>", Surface::Plane, deg4).scheme,
        parse_scheme("<2 + 1<2>>", Surface::Plane, deg4).scheme,
        parse_scheme("<1<1<1>>>", Surface::Plane, deg6).scheme,
        parse_scheme("<9 + 1<1>>", Surface::Plane, deg6).scheme,
        parse_scheme("<5 + 1<5>>", Surface::Plane, deg6).scheme,
        parse_scheme("<1 + 1<9>>", Surface::Plane, deg6).scheme,
    };
    std::mt19937 rng(4242);
    const int degrees[] = {2, 4, 6};
    while (cases.size() < 36)
        cases.push_back(plane(degrees[rng() % 3], random_forest(rng, static_cast<int>(rng() % 12))));
    for (const RealScheme& s : cases) {
        std::vector<OrientedScheme> res = admissible_orientations(s);
        CHECK(as_bit_set(res).size() == res.size());
        CHECK(as_bit_set(res) == brute_force(s));
    }
}

TEST_CASE("the classical M-sextics admit jointly passing orientations") {
    const std::pair<const char*, size_t> sextics[] = {
        {"<9 + 1<1>>", 512}, {"<5 + 1<5>>", 320}, {"<1 + 1<9>>", 252}};
    for (const auto& [text, classes] : sextics) {
        RealScheme s = parse_scheme(text, Surface::Plane, deg6).scheme;
        std::vector<OrientedScheme> res = admissible_orientations(s);
        CHECK(res.size() == classes);
        REQUIRE_FALSE(res.empty());
        CHECK(rokhlin_check(res[0]).pass.value());
        Verdict v = orevkov_check(res[0]);
        CHECK(v.applicable);
        CHECK(v.pass.value());
    }
}

TEST_CASE("serial and parallel searches agree") {
    std::mt19937 rng(99);
    std::vector<RealScheme> cases = {parse_scheme("<9 + 1<1>>", Surface::Plane, deg6).scheme,
                                     plane(6, random_forest(rng, 12)),
                                     plane(4, random_forest(rng, 10))};
    for (const RealScheme& s : cases) {
        std::vector<OrientedScheme> serial = admissible_orientations(s, 24, Exec::Serial);
        CHECK(serial == admissible_orientations(s, 24, Exec::Parallel));
        CHECK(serial == admissible_orientations(s, 24, Exec::Auto));
    }
}

}  // TEST_SUITE
