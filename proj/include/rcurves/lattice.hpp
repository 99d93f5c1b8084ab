#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "forms.hpp"

namespace rcurves {

using Int = boost::multiprecision::cpp_int;
using Mat = std::vector<std::vector<Int>>;

struct Degenerate : std::runtime_error {
    Degenerate() : std::runtime_error("lattice is degenerate (det = 0)") {}
};
struct Unsupported : std::runtime_error {
    explicit Unsupported(const std::string& what) : std::runtime_error(what) {}
};
struct InvalidInvolution : std::invalid_argument {
    explicit InvalidInvolution(const std::string& what) : std::invalid_argument(what) {}
};

// Free abelian group of finite rank with an integer symmetric bilinear form,
// given by its Gram matrix.
struct IntegralLattice {
    int rank = 0;
    Mat gram;

    IntegralLattice() = default;
    explicit IntegralLattice(Mat g);  // checks squareness and symmetry

    static IntegralLattice diag(const std::vector<long long>& d);
    static IntegralLattice hyperbolic();  // U = [[0,1],[1,0]]
    static IntegralLattice d4();
    static IntegralLattice e8();

    IntegralLattice direct_sum(const IntegralLattice& o) const;
    bool even() const;  // all squares even, i.e. even diagonal
};

struct LatticeInvariants {
    int signature = 0;
    Int determinant = 1;
    bool even = true;
};
// Signature by exact rational symmetric elimination (2x2 hyperbolic pivots
// when every remaining diagonal entry vanishes); determinant from the same
// pass. Throws Degenerate when det = 0.
LatticeInvariants lattice_invariants(const IntegralLattice& L);

// Generic exact integer determinant (fraction-free elimination).
Int det_exact(const Mat& a);

// Smith normal form u * a * v = diag(d), u and v unimodular, d_i >= 0 and
// d_i | d_{i+1}.
struct SmithResult {
    Mat u, v;
    std::vector<Int> diag;
};
SmithResult smith_normal_form(const Mat& a);

struct Discriminant {
    std::vector<Int> factors;            // invariant factors > 1, by divisibility
    std::optional<QuadraticSpace> form;  // present iff L is even of period <= 2
    std::string unsupported;             // reason when form is absent
};
// Discriminant group L^dual / L with its quadratic form q(x) = x^2 mod 2Z
// when that form exists in our period-2 encoding. Throws Degenerate.
Discriminant discriminant(const IntegralLattice& L);

struct VdbResult {
    int brown = 0;       // Brown invariant of the discriminant form
    int sigma_mod8 = 0;  // signature mod 8
    bool pass = false;   // brown == signature (mod 8)
    std::string case_id; // which small-determinant corollary case applies
    bool case_pass = false;
};
// Throws Degenerate; throws Unsupported when the discriminant form does not
// exist (odd lattice or period > 2).
VdbResult van_der_blij_check(const IntegralLattice& L);

struct LatticeInvolution {
    IntegralLattice lattice;
    Mat matrix;  // c with c^2 = 1 and c^T gram c = gram
};
struct Eigenlattices {
    IntegralLattice plus, minus;  // fixed and antifixed sublattices
    int dim_j = 0;                // log2 |discr L+| = log2 |discr L-|
};
// Requires a unimodular lattice (else Unsupported) and a genuine involutive
// isometry (else InvalidInvolution).
Eigenlattices eigenlattices(const LatticeInvolution& inv);

// Plain-text lattice files: first the rank r, then r rows of r integers,
// then optionally the word "involution" followed by r more rows.
struct LatticeFile {
    IntegralLattice lattice;
    std::optional<Mat> involution;
};
LatticeFile parse_lattice_file(const std::string& text);  // throws invalid_argument

}  // namespace rcurves
