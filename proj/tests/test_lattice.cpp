#include "doctest.h"

#include <random>

#include "rcurves/lattice.hpp"

using namespace rcurves;

namespace {

Mat mul(const Mat& a, const Mat& b) {
    int n = static_cast<int>(a.size());
    int k = n ? static_cast<int>(a[0].size()) : 0;
    int m = k ? static_cast<int>(b[0].size()) : 0;
    Mat r(n, std::vector<Int>(m, 0));
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < k; ++t)
            for (int j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
    return r;
}

Mat transpose(const Mat& a) {
    int n = static_cast<int>(a.size());
    Mat r(n, std::vector<Int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i][j] = a[j][i];
    return r;
}

Mat identity(int n) {
    Mat m(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// Random unimodular T (a product of elementary operations) and its inverse.
void random_unimodular(std::mt19937& rng, int n, Mat& t, Mat& tinv) {
    t = identity(n);
    tinv = identity(n);
    std::uniform_int_distribution<int> idx(0, n - 1), coef(-2, 2);
    for (int step = 0; step < 3 * n; ++step) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        Int q = coef(rng);
        // t := t * E where E adds q * col i to col j; E^-1 subtracts.
        for (int r = 0; r < n; ++r) t[r][j] += q * t[r][i];
        for (int c = 0; c < n; ++c) tinv[i][c] -= q * tinv[j][c];
    }
}

IntegralLattice transported(const IntegralLattice& L, const Mat& t) {
    return IntegralLattice(mul(transpose(t), mul(L.gram, t)));
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("invariants of the standard lattices") {
    auto e8 = lattice_invariants(IntegralLattice::e8());
    CHECK(e8.signature == 8);
    CHECK(e8.determinant == 1);
    CHECK(e8.even);

    auto two = lattice_invariants(IntegralLattice::diag({2}));
    CHECK(two.signature == 1);
    CHECK(two.determinant == 2);
    CHECK(two.even);

    auto u = lattice_invariants(IntegralLattice::hyperbolic());
    CHECK(u.signature == 0);
    CHECK(u.determinant == -1);
    CHECK(u.even);

    auto d4 = lattice_invariants(IntegralLattice::d4());
    CHECK(d4.signature == 4);
    CHECK(d4.determinant == 4);
    CHECK(d4.even);

    auto odd = lattice_invariants(IntegralLattice::diag({1, -1}));
    CHECK(odd.signature == 0);
    CHECK(odd.determinant == -1);
    CHECK(!odd.even);

    CHECK(lattice_invariants(IntegralLattice()).determinant == 1);

    CHECK_THROWS_AS(lattice_invariants(IntegralLattice::diag({0})), Degenerate);
    CHECK_THROWS_AS(lattice_invariants(IntegralLattice({{1, 1}, {1, 1}})), Degenerate);
}

TEST_CASE("signature is invariant under unimodular changes of basis") {
    std::mt19937 rng(31);
    std::vector<IntegralLattice> pool{IntegralLattice::diag({2}), IntegralLattice::diag({-2}),
                                      IntegralLattice::hyperbolic(), IntegralLattice::d4(),
                                      IntegralLattice::e8(), IntegralLattice::diag({1, -1, 3})};
    for (int rep = 0; rep < 60; ++rep) {
        IntegralLattice L = pool[rng() % pool.size()];
        while (L.rank < 6) L = L.direct_sum(pool[rng() % pool.size()]);
        auto before = lattice_invariants(L);
        Mat t, tinv;
        random_unimodular(rng, L.rank, t, tinv);
        auto after = lattice_invariants(transported(L, t));
        CHECK(after.signature == before.signature);
        CHECK(after.determinant == before.determinant);
    }
}

TEST_CASE("smith normal form") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> ent(-6, 6), dim(1, 5);
    for (int rep = 0; rep < 200; ++rep) {
        int n = dim(rng);
        Mat a(n, std::vector<Int>(n));
        for (auto& row : a)
            for (auto& x : row) x = ent(rng);
        SmithResult s = smith_normal_form(a);
        Int du = det_exact(s.u), dv = det_exact(s.v);
        CHECK(abs(du) == 1);
        CHECK(abs(dv) == 1);
        Mat d = mul(s.u, mul(a, s.v));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) CHECK(d[i][j] == (i == j ? s.diag[i] : Int(0)));
        for (int i = 0; i + 1 < n; ++i) {
            CHECK(s.diag[i] >= 0);
            if (s.diag[i] != 0) CHECK(s.diag[i + 1] % s.diag[i] == 0);
            else CHECK(s.diag[i + 1] == 0);
        }
        Int prod = 1;
        for (auto& x : s.diag) prod *= x;
        CHECK(prod == abs(det_exact(a)));
    }
}

TEST_CASE("discriminant groups and forms") {
    Discriminant d = discriminant(IntegralLattice::diag({2}));
    REQUIRE(d.factors.size() == 1);
    CHECK(d.factors[0] == 2);
    REQUIRE(d.form);
    CHECK(brown(*d.form) == 1);  // [+1/2]

    d = discriminant(IntegralLattice::diag({-2, -2}));
    CHECK(d.factors == std::vector<Int>{2, 2});
    REQUIRE(d.form);
    CHECK(brown(*d.form) == 6);

    d = discriminant(IntegralLattice::d4());
    CHECK(d.factors == std::vector<Int>{2, 2});
    REQUIRE(d.form);
    FormClass fc = classify(*d.form);
    CHECK(fc.even);
    CHECK(fc.brown == 4);
    CHECK(fc.word == "V");

    d = discriminant(IntegralLattice::e8());
    CHECK(d.factors.empty());
    REQUIRE(d.form);
    CHECK(d.form->dim() == 0);

    d = discriminant(IntegralLattice::hyperbolic());
    CHECK(d.factors.empty());
    REQUIRE(d.form);

    d = discriminant(IntegralLattice::diag({4}));
    CHECK(d.factors == std::vector<Int>{4});
    CHECK(!d.form);
    CHECK(d.unsupported == "period > 2");

    d = discriminant(IntegralLattice::diag({1, 1}));
    CHECK(d.factors.empty());
    CHECK(!d.form);
    CHECK(d.unsupported == "odd lattice");

    CHECK_THROWS_AS(discriminant(IntegralLattice::diag({0})), Degenerate);
}

TEST_CASE("van der blij on the pinned examples") {
    VdbResult r = van_der_blij_check(IntegralLattice::e8());
    CHECK(r.pass);
    CHECK(r.brown == 0);
    CHECK(r.sigma_mod8 == 0);
    CHECK(r.case_id == "unimodular");
    CHECK(r.case_pass);

    r = van_der_blij_check(IntegralLattice::diag({2}));
    CHECK(r.pass);
    CHECK(r.brown == 1);
    CHECK(r.sigma_mod8 == 1);
    CHECK(r.case_id == "|det| = 2");
    CHECK(r.case_pass);

    r = van_der_blij_check(IntegralLattice::diag({-2}));
    CHECK(r.pass);
    CHECK(r.brown == 7);

    r = van_der_blij_check(IntegralLattice::diag({-2, -2}));
    CHECK(r.pass);
    CHECK(r.brown == 6);
    CHECK(r.case_id == "|det| = 4, odd form");
    CHECK(r.case_pass);

    r = van_der_blij_check(IntegralLattice::d4());
    CHECK(r.pass);
    CHECK(r.brown == 4);
    CHECK(r.case_id == "even form");
    CHECK(r.case_pass);

    r = van_der_blij_check(IntegralLattice::hyperbolic());
    CHECK(r.pass);
    CHECK(r.sigma_mod8 == 0);

    CHECK_THROWS_AS(van_der_blij_check(IntegralLattice::diag({4})), Unsupported);
    CHECK_THROWS_AS(van_der_blij_check(IntegralLattice::diag({1, 1})), Unsupported);
}

TEST_CASE("van der blij on a randomized even corpus") {
    std::mt19937 rng(8128);
    std::vector<IntegralLattice> pool{IntegralLattice::diag({2}), IntegralLattice::diag({-2}),
                                      IntegralLattice::hyperbolic(), IntegralLattice::d4(),
                                      IntegralLattice::e8()};
    for (int rep = 0; rep < 200; ++rep) {
        IntegralLattice L;
        for (int tries = 0; tries < 5; ++tries) {
            const IntegralLattice& p = pool[rng() % pool.size()];
            if (L.rank + p.rank <= 8) L = L.direct_sum(p);
        }
        if (L.rank == 0) L = IntegralLattice::diag({2});
        Mat t, tinv;
        random_unimodular(rng, L.rank, t, tinv);
        L = transported(L, t);
        Discriminant d = discriminant(L);
        REQUIRE(d.form);  // everything in the pool has period <= 2
        VdbResult r = van_der_blij_check(L);
        CHECK(r.pass);
        CHECK(r.case_pass);
    }
}

TEST_CASE("van der blij on an index-2 overlattice") {
    // diag(2,2,2,2) extended by (e1+e2+e3+e4)/2, written in the basis
    // (e1, e2, e3, v): still integral, even, det 4.
    IntegralLattice L({{2, 0, 0, 1}, {0, 2, 0, 1}, {0, 0, 2, 1}, {1, 1, 1, 2}});
    auto inv = lattice_invariants(L);
    CHECK(inv.even);
    CHECK(inv.determinant == 4);
    CHECK(van_der_blij_check(L).pass);
}

TEST_CASE("eigenlattices of the pinned involutions") {
    // diag(1,1) with the swap: fixed (1,1) and antifixed (1,-1), both <2>.
    Eigenlattices e = eigenlattices({IntegralLattice::diag({1, 1}), {{0, 1}, {1, 0}}});
    CHECK(e.plus.rank == 1);
    CHECK(e.plus.gram[0][0] == 2);
    CHECK(e.minus.rank == 1);
    CHECK(e.minus.gram[0][0] == 2);
    CHECK(e.dim_j == 1);

    // U with the identity: everything is fixed.
    e = eigenlattices({IntegralLattice::hyperbolic(), {{1, 0}, {0, 1}}});
    CHECK(e.plus.rank == 2);
    CHECK(e.minus.rank == 0);
    CHECK(e.dim_j == 0);

    // U with the swap: <2> and <-2>.
    e = eigenlattices({IntegralLattice::hyperbolic(), {{0, 1}, {1, 0}}});
    CHECK(e.plus.rank == 1);
    CHECK(e.plus.gram[0][0] == 2);
    CHECK(e.minus.rank == 1);
    CHECK(e.minus.gram[0][0] == -2);
    CHECK(e.dim_j == 1);

    CHECK_THROWS_AS(eigenlattices({IntegralLattice::diag({2}), {{1}}}), Unsupported);
    CHECK_THROWS_AS(eigenlattices({IntegralLattice::diag({1, -1}), {{0, 1}, {1, 0}}}),
                    InvalidInvolution);
    CHECK_THROWS_AS(eigenlattices({IntegralLattice::diag({1, 1}), {{1, 1}, {0, 1}}}),
                    InvalidInvolution);
}

TEST_CASE("eigenlattices on random conjugated involutions") {
    std::mt19937 rng(5);
    for (int rep = 0; rep < 200; ++rep) {
        // Unimodular base lattice: U^a + E8^b + diag(+-1)^c, remembering the
        // block layout so the involution can act block by block.
        IntegralLattice L;
        std::vector<int> block_start, block_size;
        auto add = [&](const IntegralLattice& p) {
            block_start.push_back(L.rank);
            block_size.push_back(p.rank);
            L = L.direct_sum(p);
        };
        int a = rng() % 3, c = rng() % 3;
        for (int i = 0; i < a; ++i) add(IntegralLattice::hyperbolic());
        if (rng() % 4 == 0) add(IntegralLattice::e8());
        for (int i = 0; i < c; ++i) add(IntegralLattice::diag({rng() % 2 ? 1 : -1}));
        if (L.rank == 0) continue;
        int n = L.rank;
        // Involution: negate whole blocks (an isometry of each summand) and
        // optionally swap the two identical U blocks.
        Mat c0 = identity(n);
        for (size_t bl = 0; bl < block_start.size(); ++bl)
            if (rng() % 2)
                for (int i = 0; i < block_size[bl]; ++i) c0[block_start[bl] + i][block_start[bl] + i] = -1;
        if (a >= 2 && rng() % 2) {
            for (int i = 0; i < 2; ++i) {  // swap the first two U blocks
                c0[i][i] = c0[2 + i][2 + i] = 0;
                c0[i][2 + i] = c0[2 + i][i] = 1;
            }
        }
        Mat t, tinv;
        random_unimodular(rng, n, t, tinv);
        IntegralLattice Lt = transported(L, t);
        Mat ct = mul(tinv, mul(c0, t));
        Eigenlattices e = eigenlattices({Lt, ct});
        CHECK(e.plus.rank + e.minus.rank == n);
        Int dp = e.plus.rank ? abs(lattice_invariants(e.plus).determinant) : Int(1);
        Int dm = e.minus.rank ? abs(lattice_invariants(e.minus).determinant) : Int(1);
        CHECK(dp == dm);
        CHECK(dp == Int(1) << e.dim_j);
    }
}

TEST_CASE("lattice file parsing") {
    LatticeFile f = parse_lattice_file("2\n0 1\n1 0\n");
    CHECK(f.lattice.rank == 2);
    CHECK(f.lattice.gram[0][1] == 1);
    CHECK(!f.involution);

    f = parse_lattice_file("2\n0 1\n1 0\ninvolution\n0 1\n1 0\n");
    REQUIRE(f.involution);
    CHECK((*f.involution)[0][1] == 1);
    Eigenlattices e = eigenlattices({f.lattice, *f.involution});
    CHECK(e.dim_j == 1);

    CHECK_THROWS_AS(parse_lattice_file(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_lattice_file("2\n1 0\n0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_lattice_file("1\n2\nrotation\n1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_lattice_file("1\n2\ninvolution\n1\nextra"), std::invalid_argument);
    CHECK_THROWS_AS(parse_lattice_file("2\n1 1\n0 1"), std::invalid_argument);  // not symmetric
}

}  // TEST_SUITE
