#include "rcurves/notation.hpp"

#include <random>

#include "doctest.h"

using namespace rcurves;

namespace {

const CurveClass deg4{4, 0}, deg5{5, 0}, deg6{6, 0};
const CurveClass b44{4, 4}, b33{3, 3}, b22{2, 2};

RealScheme parsed(const std::string& t, Surface s, CurveClass c) {
    return parse_scheme(t, s, c).scheme;
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

RealScheme random_scheme(std::mt19937& rng) {
    std::uniform_int_distribution<int> fsize(0, 9), which(0, 3), mpick(1, 3), hpick(1, 4);
    const std::pair<int, int> classes[] = {{1, 0}, {0, 1}, {1, 1}, {-1, 1}, {1, 2}, {3, 2}};
    RealScheme s;
    switch (which(rng)) {
        case 0: {
            int m = 2 * mpick(rng) + (rng() % 2);
            s.surface = Surface::Plane;
            s.cls = {m, 0};
            s.has_j = m % 2 == 1;
            s.forests = {random_forest(rng, fsize(rng))};
            break;
        }
        case 1:
            s.surface = Surface::Ellipsoid;
            s.cls = {mpick(rng) + 1, 0};
            s.cls.m2 = s.cls.m1;
            s.forests = {random_forest(rng, fsize(rng))};
            break;
        case 2:
            s.surface = Surface::Hyperboloid;
            s.cls = {mpick(rng) + 1, mpick(rng) + 1};
            s.forests = {random_forest(rng, fsize(rng))};
            break;
        default: {
            s.surface = Surface::Hyperboloid;
            s.cls = {mpick(rng) + 3, mpick(rng) + 3};
            s.h = hpick(rng);
            auto [c1, c2] = classes[rng() % 6];
            s.c1 = c1;
            s.c2 = c2;
            for (int a = 0; a < s.h; ++a) s.forests.push_back(random_forest(rng, fsize(rng) / 2));
            break;
        }
    }
    s.validate();
    return s;
}

size_t error_pos(const std::string& t, Surface s, CurveClass c) {
    try {
        parse_scheme(t, s, c);
    } catch (const ParseError& e) {
        return e.position;
    }
    FAIL("expected a parse error for: ", t);
    return 0;
}

}  // namespace

TEST_SUITE("notation") {

TEST_CASE("pinned parses") {
    RealScheme gudkov = parsed("<5 + 1<5>>", Surface::Plane, deg6);
    CHECK(component_counts(gudkov).l == 11);
    CHECK(gudkov.forests[0].roots.size() == 6);
    CHECK(gudkov.forests[0].max_height() == 2);
    CHECK(render(gudkov) == "<5 + 1<5>>");

    RealScheme hyp = parsed("<(1,1), 3, (1,1), 5>", Surface::Hyperboloid, b44);
    CHECK(hyp.h == 2);
    CHECK(hyp.c1 == 1);
    CHECK(hyp.c2 == 1);
    CHECK(hyp.forests[0].size() == 3);
    CHECK(hyp.forests[1].size() == 5);
    CHECK(render(hyp) == "<(1,1), 3, (1,1), 5>");

    RealScheme chain = parsed("<1<1<1>>>", Surface::Ellipsoid, b33);
    CHECK(chain.forests[0].size() == 3);
    CHECK(chain.forests[0].max_height() == 3);
    CHECK(render(chain) == "<1<1<1>>>");

    CHECK(render(parsed("<0>", Surface::Plane, deg4)) == "<0>");
    CHECK(render(parsed("<J + 4>", Surface::Plane, deg5)) == "<J + 4>");
    CHECK(render(parsed("<8 + 1<1>>", Surface::Hyperboloid, b44)) == "<8 + 1<1>>");
}

TEST_CASE("canonicalization is independent of input order") {
    CHECK(render(parsed("<1<5> + 5>", Surface::Plane, deg6)) == "<5 + 1<5>>");
    CHECK(render(parsed("  < 5+ 1 <5>>  ", Surface::Plane, deg6)) == "<5 + 1<5>>");
    CHECK(render(parsed("<3<1> + 2>", Surface::Plane, deg6)) == "<2 + 3<1>>");
    CHECK(render(parsed("<1<2> + 1<1<1>>>", Surface::Plane, deg6)) == "<1<1<1>> + 1<2>>");
    CHECK(render(parsed("<1<1<1>> + 1<2>>", Surface::Plane, deg6)) == "<1<1<1>> + 1<2>>");

    // Annulus lists are read around the hyperboloid: rotations and the
    // reflection give the same scheme.
    CHECK(render(parsed("<(1,1), 5, (1,1), 3>", Surface::Hyperboloid, b44)) ==
          "<(1,1), 3, (1,1), 5>");
    RealScheme a = parsed("<(1,1), 1, (1,1), 2, (1,1), 3>", Surface::Hyperboloid, b44);
    RealScheme b = parsed("<(1,1), 3, (1,1), 2, (1,1), 1>", Surface::Hyperboloid, b44);
    CHECK(a == b);
    CHECK(render(a) == "<(1,1), 1, (1,1), 2, (1,1), 3>");

    CHECK(render(parsed("<(1,1), (1,1), 5>", Surface::Hyperboloid, b44)) == "<2(1,1), 5>");
    CHECK(render(parsed("<2(1,1), 5>", Surface::Hyperboloid, b44)) == "<2(1,1), 5>");
    CHECK(render(parsed("<(1,-1)>", Surface::Hyperboloid, b22)) == "<(-1,1)>");
    CHECK(render(parsed("<3(0,1)>", Surface::Hyperboloid, b33)) == "<3(0,1)>");
}

TEST_CASE("multiplicities expand") {
    RealScheme s = parsed("<3<1>>", Surface::Plane, deg6);
    CHECK(component_counts(s).l == 6);
    CHECK(s.forests[0].roots.size() == 3);
    CHECK(render(s) == "<3<1>>");

    s = parsed("<2<1<1>> + 1>", Surface::Plane, deg6);
    CHECK(component_counts(s).l == 7);
    CHECK(render(s) == "<1 + 2<1<1>>>");

    CHECK(parsed("<1<0>>", Surface::Plane, deg4) == parsed("<1>", Surface::Plane, deg4));
}

TEST_CASE("round trip on random schemes") {
    std::mt19937 rng(424242);
    for (int rep = 0; rep < 500; ++rep) {
        RealScheme s = random_scheme(rng);
        RealScheme c = canonical(s);
        std::string text = render(s);
        CHECK(text == render(c));
        ParsedScheme back = parse_scheme(text, s.surface, s.cls);
        CHECK(!back.orientation.has_value());
        CHECK(back.scheme == c);
        CHECK(render(back.scheme) == text);
    }
}

TEST_CASE("oriented parse, canonical flip, and round trip") {
    ParsedScheme hilbert = parse_scheme("<9 + 1^+<1^+>>", Surface::Plane, deg6);
    REQUIRE(hilbert.orientation.has_value());
    const OrientedScheme& o = *hilbert.orientation;
    REQUIRE(o.bits.size() == 11);
    // Canonical order puts the nine empty ovals first (default +), then the
    // nest: outer bit 1, inner differing (positive pair).
    for (int i = 0; i < 9; ++i) CHECK(o.bits[i] == 1);
    CHECK(o.bits[9] == 1);
    CHECK(o.bits[10] == 0);
    CHECK(render(o) == "<9 + 1^+<1^+>>");

    // Flipping every root sign in the text describes the same orientation.
    ParsedScheme flipped = parse_scheme("<9^- + 1^-<1^+>>", Surface::Plane, deg6);
    REQUIRE(flipped.orientation.has_value());
    CHECK(*flipped.orientation == o);

    // A negative pair is a different orientation of the same scheme.
    ParsedScheme neg = parse_scheme("<9 + 1^+<1^->>", Surface::Plane, deg6);
    CHECK(neg.scheme == hilbert.scheme);
    CHECK(*neg.orientation != o);
    CHECK(render(*neg.orientation) == "<9 + 1^+<1^->>");

    // Empty outermost ovals keep explicit signs only when negative.
    CHECK(render(*parse_scheme("<3^+ + 2^->", Surface::Plane, deg4).orientation) == "<2 + 3^->");
    // ...unless eliding them would hide the orientation entirely.
    CHECK(render(*parse_scheme("<5^+>", Surface::Plane, deg4).orientation) == "<5^+>");
    CHECK(render(*parse_scheme("<1^->", Surface::Plane, {2, 0}).orientation) == "<1^+>");

    // J defaults to + and prints bare whenever another sign pins the text.
    ParsedScheme odd = parse_scheme("<J + 1^+<1^+ + 2^-> + 6^+ + 5^->", Surface::Plane, deg5);
    REQUIRE(odd.orientation.has_value());
    CHECK(render(*odd.orientation) == "<J + 6 + 5^- + 1^+<1^+ + 2^->>");
    CHECK(render(*parse_scheme("<J^->", Surface::Plane, {1, 0}).orientation) == "<J^+>");
}

TEST_CASE("oriented round trip on random bit assignments") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> fsize(0, 9), mpick(1, 3);
    for (int rep = 0; rep < 300; ++rep) {
        OrientedScheme o;
        int m = 2 * mpick(rng) + (rep % 2);
        o.base.surface = Surface::Plane;
        o.base.cls = {m, 0};
        o.base.has_j = m % 2 == 1;
        o.base.forests = {random_forest(rng, fsize(rng))};
        int total = (o.base.has_j ? 1 : 0) + o.base.forests[0].size();
        for (int i = 0; i < total; ++i) o.bits.push_back(rng() % 2);
        if (total == 0) continue;

        OrientedScheme c = canonical(o);
        std::string text = render(o);
        CHECK(text == render(c));
        ParsedScheme back = parse_scheme(text, o.base.surface, o.base.cls);
        REQUIRE(back.orientation.has_value());
        CHECK(*back.orientation == c);
        CHECK(back.scheme == c.base);

        OrientedScheme flip = o;
        for (int& b : flip.bits) b ^= 1;
        CHECK(canonical(flip) == c);
        CHECK(render(flip) == text);
    }
}

TEST_CASE("parse errors carry positions") {
    CHECK(error_pos("x", Surface::Plane, deg4) == 0);
    CHECK(error_pos("<5", Surface::Plane, deg4) == 2);
    CHECK(error_pos("<5>x", Surface::Plane, deg4) == 3);
    CHECK(error_pos("<0 + 1>", Surface::Plane, deg4) == 1);
    CHECK(error_pos("<5 + >", Surface::Plane, deg4) == 5);

    CHECK_THROWS_AS(parse_scheme("<J>", Surface::Plane, deg4), ParseError);      // J, even degree
    CHECK_THROWS_AS(parse_scheme("<5>", Surface::Plane, deg5), ParseError);      // missing J
    CHECK_THROWS_AS(parse_scheme("<0>", Surface::Plane, deg5), ParseError);      // ditto
    CHECK_THROWS_AS(parse_scheme("<J + J>", Surface::Plane, deg5), ParseError);  // duplicate
    CHECK_THROWS_AS(parse_scheme("<1<J>>", Surface::Plane, deg5), ParseError);   // J nested
    CHECK_THROWS_AS(parse_scheme("<J>", Surface::Ellipsoid, b33), ParseError);
    CHECK_THROWS_AS(parse_scheme("<(1,1)>", Surface::Plane, deg4), ParseError);
    CHECK_THROWS_AS(parse_scheme("<(1,1), (1,2)>", Surface::Hyperboloid, b33), ParseError);
    CHECK_THROWS_AS(parse_scheme("<(2,4)>", Surface::Hyperboloid, b33), ParseError);
    CHECK_THROWS_AS(parse_scheme("<(0,0)>", Surface::Hyperboloid, b33), ParseError);
    CHECK_THROWS_AS(parse_scheme("<3, (1,1)>", Surface::Hyperboloid, b33), ParseError);
    CHECK_THROWS_AS(parse_scheme("<(1,1), 3, 5>", Surface::Hyperboloid, b33), ParseError);
    CHECK_THROWS_AS(parse_scheme("<5, 3>", Surface::Hyperboloid, b33), ParseError);
    CHECK_THROWS_AS(parse_scheme("<^+>", Surface::Plane, deg4), ParseError);
    CHECK_THROWS_AS(parse_scheme("<1^>", Surface::Plane, deg4), ParseError);
    CHECK_THROWS_AS(parse_scheme("<03>", Surface::Plane, deg4), ParseError);
    CHECK_THROWS_AS(parse_scheme("<0<1>>", Surface::Plane, deg4), ParseError);
    CHECK_THROWS_AS(parse_scheme("<1<2>", Surface::Plane, deg4), ParseError);
    CHECK_THROWS_AS(parse_scheme("", Surface::Plane, deg4), ParseError);

    // Partial orientations: nested or nonempty ovals may not drop their sign.
    CHECK_THROWS_AS(parse_scheme("<1^+<1>>", Surface::Plane, deg4), ParseError);
    CHECK_THROWS_AS(parse_scheme("<9 + 1<1^+>>", Surface::Plane, deg6), ParseError);
    // No written form for signs alongside noncontractible components.
    CHECK_THROWS_AS(parse_scheme("<(1,1), 1^+>", Surface::Hyperboloid, b33), ParseError);

    // Degree data the notation cannot satisfy is rejected before parsing.
    CHECK_THROWS_AS(parse_scheme("<1>", Surface::Ellipsoid, {2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(parse_scheme("<1>", Surface::Plane, {0, 0}), std::invalid_argument);
}

}  // TEST_SUITE
