#include "rcurves/lattice.hpp"

#include <algorithm>
#include <sstream>

#include <boost/rational.hpp>

namespace rcurves {

namespace {

using Rat = boost::rational<Int>;

Mat identity(int n) {
    Mat m(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    int n = static_cast<int>(a.size());
    int k = n ? static_cast<int>(a[0].size()) : 0;
    int m = k ? static_cast<int>(b[0].size()) : 0;
    Mat r(n, std::vector<Int>(m, 0));
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (int j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
        }
    return r;
}

}  // namespace

IntegralLattice::IntegralLattice(Mat g) : rank(static_cast<int>(g.size())), gram(std::move(g)) {
    for (auto& r : gram)
        if (static_cast<int>(r.size()) != rank)
            throw std::invalid_argument("Gram matrix is not square");
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < i; ++j)
            if (gram[i][j] != gram[j][i])
                throw std::invalid_argument("Gram matrix is not symmetric");
}

IntegralLattice IntegralLattice::diag(const std::vector<long long>& d) {
    int n = static_cast<int>(d.size());
    Mat g(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) g[i][i] = d[i];
    return IntegralLattice(std::move(g));
}

IntegralLattice IntegralLattice::hyperbolic() {
    return IntegralLattice({{0, 1}, {1, 0}});
}

IntegralLattice IntegralLattice::d4() {
    // 2*I - adjacency of the D4 diagram (central node 1, arms 0, 2, 3)
    return IntegralLattice({{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}});
}

IntegralLattice IntegralLattice::e8() {
    // 2*I - adjacency of the E8 diagram: chain 0..6, extra node 7 on node 2
    Mat g(8, std::vector<Int>(8, 0));
    for (int i = 0; i < 8; ++i) g[i][i] = 2;
    auto edge = [&](int a, int b) { g[a][b] = g[b][a] = -1; };
    for (int i = 0; i + 1 < 7; ++i) edge(i, i + 1);
    edge(7, 2);
    return IntegralLattice(std::move(g));
}

IntegralLattice IntegralLattice::direct_sum(const IntegralLattice& o) const {
    int n = rank + o.rank;
    Mat g(n, std::vector<Int>(n, 0));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) g[i][j] = gram[i][j];
    for (int i = 0; i < o.rank; ++i)
        for (int j = 0; j < o.rank; ++j) g[rank + i][rank + j] = o.gram[i][j];
    return IntegralLattice(std::move(g));
}

bool IntegralLattice::even() const {
    for (int i = 0; i < rank; ++i)
        if (gram[i][i] % 2 != 0) return false;
    return true;
}

LatticeInvariants lattice_invariants(const IntegralLattice& L) {
    const int n = L.rank;
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = Rat(L.gram[i][j]);

    auto swap_rc = [&](int i, int j) {
        if (i == j) return;
        std::swap(a[i], a[j]);
        for (int r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
    };

    LatticeInvariants out;
    out.even = L.even();
    Rat det(1);
    int k = 0;
    while (k < n) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (a[i][i] != Rat(0)) { piv = i; break; }
        if (piv >= 0) {
            swap_rc(k, piv);
            Rat d = a[k][k];
            out.signature += d.numerator() > 0 ? 1 : -1;
            det *= d;
            for (int i = k + 1; i < n; ++i)
                for (int j = k + 1; j <= i; ++j) {
                    a[i][j] -= a[i][k] * a[j][k] / d;  // Schur complement
                    a[j][i] = a[i][j];
                }
            for (int i = k + 1; i < n; ++i) a[i][k] = a[k][i] = Rat(0);
            k += 1;
            continue;
        }
        // Every remaining diagonal entry is zero: hunt for an off-diagonal
        // pivot and eliminate a hyperbolic 2x2 block (signature 0).
        int pi = -1, pj = -1;
        for (int i = k; i < n && pi < 0; ++i)
            for (int j = i + 1; j < n; ++j)
                if (a[i][j] != Rat(0)) { pi = i; pj = j; break; }
        if (pi < 0) throw Degenerate();
        swap_rc(k, pi);
        if (pj == k) pj = pi;
        swap_rc(k + 1, pj);
        Rat c = a[k][k + 1];
        det *= -c * c;
        for (int i = k + 2; i < n; ++i)
            for (int j = k + 2; j <= i; ++j) {
                a[i][j] -= (a[i][k] * a[j][k + 1] + a[i][k + 1] * a[j][k]) / c;
                a[j][i] = a[i][j];
            }
        for (int i = k + 2; i < n; ++i)
            a[i][k] = a[k][i] = a[i][k + 1] = a[k + 1][i] = Rat(0);
        k += 2;
    }
    if (det.denominator() != 1) throw std::logic_error("non-integer lattice determinant");
    out.determinant = det.numerator();
    if (n > 0 && out.determinant == 0) throw Degenerate();
    return out;
}

Int det_exact(const Mat& a0) {
    int n = static_cast<int>(a0.size());
    if (n == 0) return 1;
    Mat a = a0;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) { p = i; break; }
            if (p < 0) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

SmithResult smith_normal_form(const Mat& a0) {
    const int m = static_cast<int>(a0.size());
    const int n = m ? static_cast<int>(a0[0].size()) : 0;
    Mat a = a0;
    SmithResult res{identity(m), identity(n), {}};
    Mat& u = res.u;
    Mat& v = res.v;

    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        std::swap(a[i], a[j]);
        std::swap(u[i], u[j]);
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (int r = 0; r < m; ++r) std::swap(a[r][i], a[r][j]);
        for (int r = 0; r < n; ++r) std::swap(v[r][i], v[r][j]);
    };
    auto row_sub = [&](int i, int j, const Int& q) {  // row i -= q * row j
        for (int c = 0; c < n; ++c) a[i][c] -= q * a[j][c];
        for (int c = 0; c < m; ++c) u[i][c] -= q * u[j][c];
    };
    auto col_sub = [&](int i, int j, const Int& q) {  // col i -= q * col j
        for (int r = 0; r < m; ++r) a[r][i] -= q * a[r][j];
        for (int r = 0; r < n; ++r) v[r][i] -= q * v[r][j];
    };

    for (int t = 0; t < std::min(m, n); ++t) {
        while (true) {
            int bi = -1, bj = -1;
            for (int i = t; i < m; ++i)
                for (int j = t; j < n; ++j) {
                    if (a[i][j] == 0) continue;
                    if (bi < 0 || abs(a[i][j]) < abs(a[bi][bj])) { bi = i; bj = j; }
                }
            if (bi < 0) break;  // the rest of the matrix is zero
            swap_rows(t, bi);
            swap_cols(t, bj);
            bool clean = true;
            for (int i = t + 1; i < m; ++i) {
                if (a[i][t] == 0) continue;
                row_sub(i, t, a[i][t] / a[t][t]);
                if (a[i][t] != 0) clean = false;
            }
            for (int j = t + 1; j < n; ++j) {
                if (a[t][j] == 0) continue;
                col_sub(j, t, a[t][j] / a[t][t]);
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (int i = t + 1; i < m && divides; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        row_sub(t, i, Int(-1));  // pull the bad row up, retry
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (a[t][t] < 0) {
            for (int c = 0; c < n; ++c) a[t][c] = -a[t][c];
            for (int c = 0; c < m; ++c) u[t][c] = -u[t][c];
        }
    }
    for (int t = 0; t < std::min(m, n); ++t) res.diag.push_back(a[t][t]);
    return res;
}

Discriminant discriminant(const IntegralLattice& L) {
    SmithResult snf = smith_normal_form(L.gram);
    Discriminant out;
    Int period = 1;
    for (const Int& d : snf.diag) {
        if (d == 0) throw Degenerate();
        if (d > 1) out.factors.push_back(d);
        period = std::max(period, d);
    }
    if (!L.even()) {
        out.unsupported = "odd lattice";
        return out;
    }
    if (period > 2) {
        out.unsupported = "period > 2";
        return out;
    }
    // Generators of L^dual / L are col_i(v)/d_i; with d_i = 2 write w = 2*gen,
    // an honest lattice vector, and read the form off w^T G w. Values:
    //   q(gen) = w^T G w / 4 mod 2Z  ->  Z/4 code (w^T G w)/2 mod 4,
    //   b(gen_i, gen_j) = w_i^T G w_j / 4 mod Z -> bit (w_i^T G w_j)/2 mod 2.
    std::vector<int> cols;
    for (size_t i = 0; i < snf.diag.size(); ++i)
        if (snf.diag[i] == 2) cols.push_back(static_cast<int>(i));
    int k = static_cast<int>(cols.size());
    auto pair_w = [&](int ci, int cj) {  // w_i^T G w_j
        Int s = 0;
        for (int r = 0; r < L.rank; ++r)
            for (int c = 0; c < L.rank; ++c)
                s += snf.v[r][cols[ci]] * L.gram[r][c] * snf.v[c][cols[cj]];
        return s;
    };
    BilinearSpace2 b(k);
    std::vector<uint8_t> q(k);
    for (int i = 0; i < k; ++i) {
        Int s = pair_w(i, i);
        if (s % 2 != 0) throw std::logic_error("odd self-pairing on an even lattice");
        q[i] = static_cast<uint8_t>(static_cast<long long>(((s / 2) % 4 + 4) % 4));
        for (int j = 0; j <= i; ++j) {
            Int p = pair_w(i, j);
            if (p % 2 != 0) throw std::logic_error("dual pairing not half-integral");
            b.set(i, j, static_cast<int>(static_cast<long long>(((p / 2) % 2 + 2) % 2)));
        }
    }
    out.form = QuadraticSpace(std::move(b), std::move(q));
    return out;
}

VdbResult van_der_blij_check(const IntegralLattice& L) {
    LatticeInvariants inv = lattice_invariants(L);
    Discriminant d = discriminant(L);
    if (!d.form) throw Unsupported("no discriminant quadratic form: " + d.unsupported);
    VdbResult out;
    out.brown = brown(*d.form);
    out.sigma_mod8 = ((inv.signature % 8) + 8) % 8;
    out.pass = out.brown == out.sigma_mod8;

    Int adet = abs(inv.determinant);
    bool form_even = true;
    for (uint8_t x : d.form->qdiag)
        if (x & 1) form_even = false;
    int s8 = out.sigma_mod8;
    if (adet == 1) {
        out.case_id = "unimodular";
        out.case_pass = s8 == 0;
    } else if (adet == 2) {
        out.case_id = "|det| = 2";
        out.case_pass = s8 == 1 || s8 == 7;
    } else if (adet == 4 && !form_even) {
        out.case_id = "|det| = 4, odd form";
        out.case_pass = s8 == 0 || s8 == 2 || s8 == 6;
    } else if (form_even) {
        out.case_id = "even form";
        out.case_pass = s8 % 4 == 0;
    } else {
        out.case_id = "none";
        out.case_pass = true;
    }
    return out;
}

namespace {

// Basis of ker(M) as columns, via the zero entries of the Smith form.
std::vector<std::vector<Int>> integer_kernel(const Mat& m) {
    SmithResult snf = smith_normal_form(m);
    int n = static_cast<int>(m.size());
    std::vector<std::vector<Int>> basis;
    for (int j = 0; j < n; ++j) {
        bool zero = j >= static_cast<int>(snf.diag.size()) || snf.diag[j] == 0;
        if (!zero) continue;
        std::vector<Int> col(n);
        for (int r = 0; r < n; ++r) col[r] = snf.v[r][j];
        basis.push_back(std::move(col));
    }
    return basis;
}

}  // namespace

Eigenlattices eigenlattices(const LatticeInvolution& inv) {
    const IntegralLattice& L = inv.lattice;
    const int n = L.rank;
    if (static_cast<int>(inv.matrix.size()) != n)
        throw InvalidInvolution("involution size does not match the lattice rank");
    if (abs(lattice_invariants(L).determinant) != 1)
        throw Unsupported("eigenlattices require a unimodular lattice");
    Mat c = inv.matrix;
    Mat c2 = mat_mul(c, c);
    Mat ct(n, std::vector<Int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ct[i][j] = c[j][i];
    if (c2 != identity(n)) throw InvalidInvolution("matrix squared is not the identity");
    if (mat_mul(ct, mat_mul(L.gram, c)) != L.gram)
        throw InvalidInvolution("matrix does not preserve the form");

    auto sublattice = [&](int sign) {
        Mat m = c;  // c - sign*I
        for (int i = 0; i < n; ++i) m[i][i] -= sign;
        auto basis = integer_kernel(m);
        int k = static_cast<int>(basis.size());
        Mat g(k, std::vector<Int>(k, 0));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                for (int r = 0; r < n; ++r)
                    for (int s = 0; s < n; ++s) g[i][j] += basis[i][r] * L.gram[r][s] * basis[j][s];
        return IntegralLattice(std::move(g));
    };

    Eigenlattices out{sublattice(+1), sublattice(-1), 0};
    if (out.plus.rank + out.minus.rank != n)
        throw std::logic_error("eigenlattice ranks do not fill the lattice");
    Int dp = out.plus.rank ? abs(lattice_invariants(out.plus).determinant) : Int(1);
    Int dm = out.minus.rank ? abs(lattice_invariants(out.minus).determinant) : Int(1);
    if (dp != dm) throw std::logic_error("eigenlattice discriminant orders differ");
    int j = 0;
    Int p = dp;
    while (p > 1) {
        if (p % 2 != 0) throw std::logic_error("eigenlattice discriminant not a 2-group");
        p /= 2;
        ++j;
    }
    out.dim_j = j;
    return out;
}

LatticeFile parse_lattice_file(const std::string& text) {
    std::istringstream in(text);
    auto read_int = [&](const char* what) {
        long long x;
        if (!(in >> x)) throw std::invalid_argument(std::string("lattice file: expected ") + what);
        return x;
    };
    long long r = read_int("rank");
    if (r < 0 || r > 64) throw std::invalid_argument("lattice file: rank out of range");
    int n = static_cast<int>(r);
    auto read_matrix = [&](const char* what) {
        Mat g(n, std::vector<Int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g[i][j] = read_int(what);
        return g;
    };
    LatticeFile out;
    out.lattice = IntegralLattice(read_matrix("Gram entry"));
    std::string word;
    if (in >> word) {
        if (word != "involution")
            throw std::invalid_argument("lattice file: unexpected token '" + word + "'");
        out.involution = read_matrix("involution entry");
        if (in >> word) throw std::invalid_argument("lattice file: trailing input");
    }
    return out;
}

}  // namespace rcurves
