#include "doctest.h"

#include <rcurves/enumerate.hpp>
#include <rcurves/scheme.hpp>

#include <algorithm>
#include <string>
#include <vector>

using namespace rcurves;

namespace {

struct Shipped {
    Surface surface;
    int m1, m2;
    int entries;
};

// One row per data file, with the published entry count.
const std::vector<Shipped> kShipped = {
    {Surface::Hyperboloid, 1, 1, 2},  {Surface::Hyperboloid, 2, 1, 3},
    {Surface::Hyperboloid, 3, 1, 4},  {Surface::Hyperboloid, 4, 1, 5},
    {Surface::Hyperboloid, 5, 1, 6},  {Surface::Hyperboloid, 6, 1, 7},
    {Surface::Ellipsoid, 1, 1, 2},    {Surface::Hyperboloid, 2, 2, 7},
    {Surface::Hyperboloid, 3, 2, 8},  {Surface::Hyperboloid, 4, 2, 15},
    {Surface::Hyperboloid, 5, 2, 16}, {Surface::Hyperboloid, 6, 2, 29},
    {Surface::Ellipsoid, 2, 2, 3},    {Surface::Hyperboloid, 3, 3, 16},
    {Surface::Ellipsoid, 3, 3, 7},    {Surface::Hyperboloid, 4, 3, 28},
    {Surface::Hyperboloid, 5, 3, 44}, {Surface::Hyperboloid, 4, 4, 144},
    {Surface::Ellipsoid, 4, 4, 32},
};

std::string path_of(const Shipped& t) {
    return std::string(RCURVES_GOLDEN_DIR) + "/" + to_string(t.surface) + "-" +
           std::to_string(t.m1) + "-" + std::to_string(t.m2) + ".txt";
}

std::string tag_of(const GoldenTable& table, const std::string& text) {
    for (const GoldenEntry& e : table.entries)
        if (e.text == text) switch (e.tag) {
                case GoldenTag::I: return "I";
                case GoldenTag::II: return "II";
                case GoldenTag::Indefinite: return "indef";
                case GoldenTag::Unknown: return "unknown";
            }
    return "absent";
}

}  // namespace

TEST_SUITE("golden") {

TEST_CASE("shipped tables load with the published entry counts") {
    for (const Shipped& t : kShipped) {
        GoldenTable table = load_golden_table(path_of(t));
        CAPTURE(path_of(t));
        CHECK(table.surface == t.surface);
        CHECK(table.cls == CurveClass{t.m1, t.m2});
        CHECK(static_cast<int>(table.entries.size()) == t.entries);
    }
}

TEST_CASE("no shipped entry is rejected by the checker") {
    // Every listed scheme is realizable with its stated type, so a nonempty
    // missing list would mean a rule fired against a curve that exists.
    for (const Shipped& t : kShipped) {
        GoldenTable table = load_golden_table(path_of(t));
        GoldenDiff diff = diff_golden(table);
        CAPTURE(path_of(t));
        CHECK(diff.missing == std::vector<std::string>{});
    }
}

TEST_CASE("the admissible surplus is exactly the known blind spots") {
    // The rule set is necessary, not sufficient. Its only surpluses in the
    // shipped range are nest configurations that slip past the Bezout-style
    // bounds: on the torus, pairs of depth-2+ nests (two points do not pin
    // down an auxiliary curve), and on the sphere, orbits of single deep
    // chains (three pairwise disjoint nests are needed to trace a section).
    for (const Shipped& t : kShipped) {
        GoldenTable table = load_golden_table(path_of(t));
        GoldenDiff diff = diff_golden(table);
        CAPTURE(path_of(t));
        if (t.surface == Surface::Hyperboloid && t.m1 == 4 && t.m2 == 4) {
            CHECK(diff.extra ==
                  std::vector<std::string>{"<1<1> + 1<2>>", "<1<1> + 1<3>>", "<1<1> + 1<4>>",
                                           "<1<1> + 1<5>>", "<1<2> + 1<3>>", "<1<2> + 1<4>>",
                                           "<2<2>>", "<2<3>>"});
        } else if (t.surface == Surface::Ellipsoid && t.m1 == 4 && t.m2 == 4) {
            CHECK(diff.extra == std::vector<std::string>{
                                    "<1<1<1<1<1<1<1<1<1>>>>>>>>>", "<1<1<1<1<1<1<1>>>>>>>",
                                    "<1<1<1<1<1>>>>>", "<2<1<1<1<1>>>>>", "<2<1<1<1>>>>",
                                    "<2<1<1>>>"});
        } else {
            CHECK(diff.extra == std::vector<std::string>{});
        }
    }
}

TEST_CASE("tags sit where the classification puts them") {
    GoldenTable quad = load_golden_table(path_of({Surface::Hyperboloid, 4, 4, 144}));
    // M-schemes divide; the even-sum middle of each gap family does not.
    CHECK(tag_of(quad, "<(1,0), 4, (1,0), 4>") == "I");
    CHECK(tag_of(quad, "<(1,0), 1, (1,0), 5>") == "I");
    CHECK(tag_of(quad, "<(1,0), 1, (1,0), 1>") == "indef");
    CHECK(tag_of(quad, "<(-1,1), 1, (-1,1), 7>") == "I");
    CHECK(tag_of(quad, "<2(1,1), 4>") == "II");
    CHECK(tag_of(quad, "<4(0,1)>") == "I");
    CHECK(tag_of(quad, "<2(1,2)>") == "I");
    CHECK(tag_of(quad, "<2<1>>") == "I");
    CHECK(tag_of(quad, "<8>") == "indef");
    CHECK(tag_of(quad, "<9>") == "II");
    CHECK(tag_of(quad, "<10>") == "absent");
    CHECK(tag_of(quad, "<1 + 1<6>>") == "I");
    CHECK(tag_of(quad, "<5 + 1<2>>") == "I");
    CHECK(tag_of(quad, "<0 + 1<9>>") == "absent");  // canonical text is <1<9>>
    CHECK(tag_of(quad, "<1<9>>") == "I");

    GoldenTable sphere = load_golden_table(path_of({Surface::Ellipsoid, 4, 4, 32}));
    CHECK(tag_of(sphere, "<10>") == "I");
    CHECK(tag_of(sphere, "<9>") == "II");
    CHECK(tag_of(sphere, "<8>") == "indef");
    CHECK(tag_of(sphere, "<5 + 1<4>>") == "I");
    CHECK(tag_of(sphere, "<1<1<1<1>>>>") == "I");
    CHECK(tag_of(sphere, "<6>") == "II");

    GoldenTable trig = load_golden_table(path_of({Surface::Hyperboloid, 5, 3, 44}));
    CHECK(tag_of(trig, "<(1,1), 8>") == "I");
    CHECK(tag_of(trig, "<(1,1), 2>") == "unknown");
    CHECK(tag_of(trig, "<(1,1), 1>") == "II");
    CHECK(tag_of(trig, "<(1,1)>") == "II");
    CHECK(tag_of(trig, "<(5,1)>") == "I");
    CHECK(tag_of(trig, "<3(1,1)>") == "I");
    CHECK(tag_of(trig, "<(5,3)>") == "I");
}

}  // TEST_SUITE
