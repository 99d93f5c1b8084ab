#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "exec.hpp"

namespace rcurves {

// Thrown by brown() when the form is degenerate and does not vanish on the
// radical; the Gauss sum is 0 there and no Brown invariant exists.
struct NotInformative : std::runtime_error {
    NotInformative() : std::runtime_error("form is not informative (q nonzero on the radical)") {}
};

// Symmetric bilinear form on (Z/2)^n with values in (1/2 Z)/Z.
// Matrix entries are stored as bits: bit 1 means value 1/2.
struct BilinearSpace2 {
    int n = 0;
    std::vector<uint32_t> row;  // row[i] bit j  =  2*b(e_i, e_j)

    BilinearSpace2() = default;
    explicit BilinearSpace2(int dim) : n(dim), row(dim, 0) {}

    static BilinearSpace2 a2();  // [1/2]
    static BilinearSpace2 u2();  // [[0,1/2],[1/2,0]]

    int bit(int i, int j) const { return (row[i] >> j) & 1; }
    void set(int i, int j, int v) {
        auto put = [&](int a, int b) {
            if (v) row[a] |= 1u << b; else row[a] &= ~(1u << b);
        };
        put(i, j);
        put(j, i);
    }
    // b(x, y) as a bit.
    int eval(uint32_t x, uint32_t y) const;
    // Basis of { x : b(x, .) == 0 }.
    std::vector<uint32_t> radical() const;
    bool nondegenerate() const { return radical().empty(); }
    BilinearSpace2 direct_sum(const BilinearSpace2& o) const;
};

// Quadratic form q : (Z/2)^n -> (1/2 Z)/2Z refining a BilinearSpace2, i.e.
// q(x+y) - q(x) - q(y) = 2 b(x,y). Values are encoded in Z/4 via 1/2 -> 1,
// so q(e_i) is odd exactly when b(e_i, e_i) = 1/2.
struct QuadraticSpace {
    BilinearSpace2 b;
    std::vector<uint8_t> qdiag;  // q(e_i) in Z/4, qdiag[i] == b.bit(i,i) (mod 2)

    QuadraticSpace() = default;
    QuadraticSpace(BilinearSpace2 bb, std::vector<uint8_t> qq);

    int dim() const { return b.n; }
    // q(x) in Z/4.
    int eval(uint32_t x) const;

    static QuadraticSpace a_plus();   // <1/2>
    static QuadraticSpace a_minus();  // <-1/2>
    static QuadraticSpace u2();       // even, diagonal 0
    static QuadraticSpace v2();       // even, diagonal 1 (i.e. 2 in Z/4)

    QuadraticSpace direct_sum(const QuadraticSpace& o) const;
    // Change of basis: e_i -> basis[i] (must be invertible over F2).
    QuadraticSpace transported(const std::vector<uint32_t>& basis) const;

    std::vector<uint32_t> radical() const { return b.radical(); }
    // True when q vanishes on the radical (always true if nondegenerate).
    bool informative() const;
    // Nondegenerate form induced on L / radical; requires informative().
    QuadraticSpace reduced() const;
};

// Full Gauss sum  sum_x i^{q(x)}  over all 2^dim vectors. This is the
// data-parallel kernel; both policies give identical exact results.
Cyc8 gauss_sum(const QuadraticSpace& q, Exec exec = Exec::Auto);

// Brown invariant in Z/8, via the exact identity
//   sum_x i^{q(x)} = 2^{floor(d/2)} * (zeta + zeta^7)^{d mod 2} * zeta^{Br},
// d = dim(L / radical), evaluated in Z[zeta]. Throws NotInformative.
int brown(const QuadraticSpace& q, Exec exec = Exec::Auto);

// Complete isomorphism invariant of a nondegenerate form: rank, parity and
// Brown invariant, plus a canonical word in the generators A+, A-, U, V.
struct FormClass {
    int rank = 0;
    bool even = true;
    int brown = 0;
    std::string word;  // e.g. "A+ A- U"

    friend bool operator==(const FormClass& a, const FormClass& b) {
        return a.rank == b.rank && a.even == b.even && a.brown == b.brown;
    }
    friend bool operator!=(const FormClass& a, const FormClass& b) { return !(a == b); }
};
FormClass classify(const QuadraticSpace& q);

// Parse a whitespace-separated word over {A+, A-, U, V} into a direct sum.
QuadraticSpace form_from_word(const std::string& word);

// All 2^n quadratic refinements of a bilinear form (choices of q(e_i) mod 4
// over the fixed parity).
std::vector<QuadraticSpace> quadratic_extensions(const BilinearSpace2& b);

// Quotient form on S^perp / S for a q-null subspace S (given by any spanning
// set). Throws std::invalid_argument if q or b is nonzero on S.
QuadraticSpace isotropic_descent(const QuadraticSpace& q, const std::vector<uint32_t>& s_span);

// Checks of the four structural properties of the Brown invariant on q:
//  1. Br == d (mod 2)
//  2. Br == q(w) (mod 4) for every characteristic element w
//  3. Br(q + 2 b(v, .)) == Br q - 2 q(v) (mod 8) for every v
//  4. Br == 0 iff a lagrangian (H == H^perp with q|H == 0) exists
struct BrownProperties {
    bool dim_parity = false;
    bool characteristic = false;
    bool shift = false;
    bool null_cobordism = false;
    bool all() const { return dim_parity && characteristic && shift && null_cobordism; }
};
BrownProperties brown_properties_check(const QuadraticSpace& q);

// F2 linear algebra helpers shared with the orientation/lattice code.
namespace f2 {
// Echelonize in place (highest set bit as pivot); returns rank.
int echelon(std::vector<uint32_t>& rows);
// True if x lies in the span of echelonized rows.
bool in_span(const std::vector<uint32_t>& ech, uint32_t x);
// Basis of the null space of the given rows, vectors of width n.
std::vector<uint32_t> null_space(const std::vector<uint32_t>& rows, int n);
}  // namespace f2

}  // namespace rcurves
