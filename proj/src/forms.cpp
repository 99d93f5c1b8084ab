#include "rcurves/forms.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rcurves {

namespace {
inline int parity(uint32_t x) { return std::popcount(x) & 1; }
}  // namespace

namespace f2 {

int echelon(std::vector<uint32_t>& rows) {
    std::vector<uint32_t> out;
    for (uint32_t r : rows) {
        for (uint32_t p : out) {
            int hb = 31 - std::countl_zero(p);
            if ((r >> hb) & 1) r ^= p;
        }
        if (r) out.push_back(r);
        std::sort(out.begin(), out.end(), std::greater<>());
    }
    rows = out;
    return static_cast<int>(out.size());
}

bool in_span(const std::vector<uint32_t>& ech, uint32_t x) {
    for (uint32_t p : ech) {
        int hb = 31 - std::countl_zero(p);
        if ((x >> hb) & 1) x ^= p;
    }
    return x == 0;
}

std::vector<uint32_t> null_space(const std::vector<uint32_t>& rows, int n) {
    // Reduced row echelon, then read solutions off the free columns.
    std::vector<uint32_t> ech = rows;
    echelon(ech);
    for (size_t i = 0; i < ech.size(); ++i) {  // back-substitute
        int hb = 31 - std::countl_zero(ech[i]);
        for (size_t j = 0; j < ech.size(); ++j)
            if (j != i && ((ech[j] >> hb) & 1)) ech[j] ^= ech[i];
    }
    uint32_t pivots = 0;
    for (uint32_t r : ech) pivots |= 1u << (31 - std::countl_zero(r));
    std::vector<uint32_t> basis;
    for (int f = 0; f < n; ++f) {
        if ((pivots >> f) & 1) continue;
        uint32_t v = 1u << f;
        for (uint32_t r : ech)
            if ((r >> f) & 1) v |= 1u << (31 - std::countl_zero(r));
        basis.push_back(v);
    }
    return basis;
}

}  // namespace f2

BilinearSpace2 BilinearSpace2::a2() {
    BilinearSpace2 b(1);
    b.set(0, 0, 1);
    return b;
}

BilinearSpace2 BilinearSpace2::u2() {
    BilinearSpace2 b(2);
    b.set(0, 1, 1);
    return b;
}

int BilinearSpace2::eval(uint32_t x, uint32_t y) const {
    int acc = 0;
    while (x) {
        int i = std::countr_zero(x);
        x &= x - 1;
        acc ^= parity(row[i] & y);
    }
    return acc;
}

std::vector<uint32_t> BilinearSpace2::radical() const { return f2::null_space(row, n); }

BilinearSpace2 BilinearSpace2::direct_sum(const BilinearSpace2& o) const {
    BilinearSpace2 r(n + o.n);
    for (int i = 0; i < n; ++i) r.row[i] = row[i];
    for (int i = 0; i < o.n; ++i) r.row[n + i] = o.row[i] << n;
    return r;
}

QuadraticSpace::QuadraticSpace(BilinearSpace2 bb, std::vector<uint8_t> qq)
    : b(std::move(bb)), qdiag(std::move(qq)) {
    if (static_cast<int>(qdiag.size()) != b.n)
        throw std::invalid_argument("qdiag size does not match dimension");
    for (int i = 0; i < b.n; ++i)
        if ((qdiag[i] & 1) != b.bit(i, i))
            throw std::invalid_argument("q(e_i) parity must match b(e_i,e_i)");
}

int QuadraticSpace::eval(uint32_t x) const {
    // q(sum x_i e_i) = sum q(e_i) + 2 sum_{i<j} b(e_i,e_j), all mod 4.
    int val = 0;
    uint32_t seen = 0;
    uint32_t rest = x;
    while (rest) {
        int i = std::countr_zero(rest);
        rest &= rest - 1;
        val += qdiag[i] + 2 * parity(b.row[i] & seen);
        seen |= 1u << i;
    }
    return val & 3;
}

QuadraticSpace QuadraticSpace::a_plus() { return {BilinearSpace2::a2(), {1}}; }
QuadraticSpace QuadraticSpace::a_minus() { return {BilinearSpace2::a2(), {3}}; }
QuadraticSpace QuadraticSpace::u2() { return {BilinearSpace2::u2(), {0, 0}}; }
QuadraticSpace QuadraticSpace::v2() { return {BilinearSpace2::u2(), {2, 2}}; }

QuadraticSpace QuadraticSpace::direct_sum(const QuadraticSpace& o) const {
    std::vector<uint8_t> q = qdiag;
    q.insert(q.end(), o.qdiag.begin(), o.qdiag.end());
    return {b.direct_sum(o.b), std::move(q)};
}

QuadraticSpace QuadraticSpace::transported(const std::vector<uint32_t>& basis) const {
    if (static_cast<int>(basis.size()) != b.n)
        throw std::invalid_argument("basis size mismatch");
    std::vector<uint32_t> ech = basis;
    if (f2::echelon(ech) != b.n) throw std::invalid_argument("basis is singular");
    BilinearSpace2 nb(b.n);
    std::vector<uint8_t> nq(b.n);
    for (int i = 0; i < b.n; ++i) {
        nq[i] = static_cast<uint8_t>(eval(basis[i]));
        for (int j = 0; j <= i; ++j) nb.set(i, j, b.eval(basis[i], basis[j]));
    }
    return {std::move(nb), std::move(nq)};
}

bool QuadraticSpace::informative() const {
    for (uint32_t t : radical())
        if (eval(t) != 0) return false;
    return true;
}

QuadraticSpace QuadraticSpace::reduced() const {
    std::vector<uint32_t> rad = radical();
    if (rad.empty()) return *this;
    if (!informative()) throw NotInformative();
    f2::echelon(rad);
    uint32_t pivots = 0;
    for (uint32_t r : rad) pivots |= 1u << (31 - std::countl_zero(r));
    // Coordinate complement of the radical: q restricted there equals the
    // induced form on L/radical because q(c + t) = q(c) for t in the radical.
    std::vector<uint32_t> comp;
    for (int j = 0; j < b.n; ++j)
        if (!((pivots >> j) & 1)) comp.push_back(1u << j);
    int d = static_cast<int>(comp.size());
    BilinearSpace2 nb(d);
    std::vector<uint8_t> nq(d);
    for (int i = 0; i < d; ++i) {
        nq[i] = static_cast<uint8_t>(eval(comp[i]));
        for (int j = 0; j <= i; ++j) nb.set(i, j, b.eval(comp[i], comp[j]));
    }
    return {std::move(nb), std::move(nq)};
}

namespace {

void gauss_walk(const QuadraticSpace& q, uint64_t t0, uint64_t t1, uint64_t cnt[4]) {
    uint32_t x = static_cast<uint32_t>(t0 ^ (t0 >> 1));  // Gray code of t0
    int val = q.eval(x);
    ++cnt[val];
    for (uint64_t t = t0 + 1; t < t1; ++t) {
        int k = std::countr_zero(t);
        uint32_t bit = 1u << k;
        if (x & bit) {
            x ^= bit;
            val = (val + 8 - q.qdiag[k] - 2 * parity(q.b.row[k] & x)) & 3;
        } else {
            val = (val + q.qdiag[k] + 2 * parity(q.b.row[k] & x)) & 3;
            x ^= bit;
        }
        ++cnt[val];
    }
}

}  // namespace

Cyc8 gauss_sum(const QuadraticSpace& q, Exec exec) {
    const int n = q.dim();
    const uint64_t total = 1ull << n;
    uint64_t cnt[4] = {0, 0, 0, 0};
    bool parallel = false;
#ifdef _OPENMP
    if (exec == Exec::Parallel) parallel = true;
    if (exec == Exec::Auto) parallel = n >= 18 && omp_get_max_threads() > 1;
#else
    (void)exec;
#endif
    if (!parallel) {
        gauss_walk(q, 0, total, cnt);
    } else {
#ifdef _OPENMP
#pragma omp parallel
        {
            uint64_t local[4] = {0, 0, 0, 0};
            int nt = omp_get_num_threads();
            int id = omp_get_thread_num();
            uint64_t chunk = (total + nt - 1) / nt;
            uint64_t lo = std::min<uint64_t>(total, chunk * id);
            uint64_t hi = std::min<uint64_t>(total, lo + chunk);
            if (lo < hi) gauss_walk(q, lo, hi, local);
#pragma omp critical
            for (int r = 0; r < 4; ++r) cnt[r] += local[r];
        }
#endif
    }
    // sum = cnt0 + cnt1*i + cnt2*(-1) + cnt3*(-i), i = zeta^2
    Cyc8 s;
    s.c[0] = static_cast<long long>(cnt[0]) - static_cast<long long>(cnt[2]);
    s.c[2] = static_cast<long long>(cnt[1]) - static_cast<long long>(cnt[3]);
    return s;
}

int brown(const QuadraticSpace& q, Exec exec) {
    QuadraticSpace red = q.reduced();  // throws NotInformative when it must
    const int d = red.dim();
    Cyc8 s = gauss_sum(red, exec);
    Cyc8 base(1LL << (d / 2));
    if (d & 1) base = base * (Cyc8::zeta_pow(1) - Cyc8::zeta_pow(3));
    for (int br = 0; br < 8; ++br)
        if (s == base * Cyc8::zeta_pow(br)) return br;
    throw std::logic_error("Gauss sum " + s.str() + " matches no Brown value");
}

FormClass classify(const QuadraticSpace& q) {
    if (!q.b.nondegenerate())
        throw std::invalid_argument("classify requires a nondegenerate form");
    FormClass fc;
    fc.rank = q.dim();
    fc.even = true;
    for (uint8_t v : q.qdiag)
        if (v & 1) fc.even = false;
    fc.brown = brown(q);

    std::vector<std::string> toks;
    int used = 0;
    if (fc.even) {
        if (fc.brown != 0 && fc.brown != 4)
            throw std::logic_error("even form with odd-type Brown invariant");
        if (fc.brown == 4) { toks.emplace_back("V"); used = 2; }
    } else {
        switch (fc.brown) {
            case 1: toks = {"A+"}; used = 1; break;
            case 7: toks = {"A-"}; used = 1; break;
            case 3: toks = {"A-", "V"}; used = 3; break;
            case 5: toks = {"A+", "V"}; used = 3; break;
            case 0: toks = {"A+", "A-"}; used = 2; break;
            case 2: toks = {"A+", "A+"}; used = 2; break;
            case 6: toks = {"A-", "A-"}; used = 2; break;
            case 4: toks = {"A+", "A-", "V"}; used = 4; break;
            default: throw std::logic_error("bad Brown value");
        }
    }
    if (used > fc.rank || ((fc.rank - used) & 1))
        throw std::logic_error("rank/Brown combination is not realizable");
    // Pad with hyperbolics; print A's, then U's, then V.
    int pad = (fc.rank - used) / 2;
    std::vector<std::string> ordered;
    for (auto& t : toks)
        if (t[0] == 'A') ordered.push_back(t);
    std::sort(ordered.begin(), ordered.end());  // "A+" before "A-"
    for (int i = 0; i < pad; ++i) ordered.emplace_back("U");
    for (auto& t : toks)
        if (t == "V") ordered.push_back(t);
    std::string w;
    for (auto& t : ordered) {
        if (!w.empty()) w += ' ';
        w += t;
    }
    fc.word = w;
    return fc;
}

QuadraticSpace form_from_word(const std::string& word) {
    QuadraticSpace acc{BilinearSpace2(0), {}};
    std::istringstream in(word);
    std::string tok;
    while (in >> tok) {
        if (tok == "A+") acc = acc.direct_sum(QuadraticSpace::a_plus());
        else if (tok == "A-") acc = acc.direct_sum(QuadraticSpace::a_minus());
        else if (tok == "U") acc = acc.direct_sum(QuadraticSpace::u2());
        else if (tok == "V") acc = acc.direct_sum(QuadraticSpace::v2());
        else throw std::invalid_argument("unknown form generator '" + tok + "'");
    }
    return acc;
}

std::vector<QuadraticSpace> quadratic_extensions(const BilinearSpace2& b) {
    std::vector<QuadraticSpace> out;
    const int n = b.n;
    out.reserve(1ull << n);
    for (uint32_t m = 0; m < (1u << n); ++m) {
        std::vector<uint8_t> q(n);
        for (int i = 0; i < n; ++i)
            q[i] = static_cast<uint8_t>((b.bit(i, i) + 2 * ((m >> i) & 1)) & 3);
        out.emplace_back(b, std::move(q));
    }
    return out;
}

QuadraticSpace isotropic_descent(const QuadraticSpace& q, const std::vector<uint32_t>& s_span) {
    std::vector<uint32_t> s = s_span;
    f2::echelon(s);
    for (size_t i = 0; i < s.size(); ++i) {
        if (q.eval(s[i]) != 0)
            throw std::invalid_argument("subspace is not q-null");
        for (size_t j = 0; j < i; ++j)
            if (q.b.eval(s[i], s[j]) != 0)
                throw std::invalid_argument("subspace is not b-isotropic");
    }
    // S^perp = null space of the pairing rows x -> b(x, s_i).
    std::vector<uint32_t> pairing;
    for (uint32_t si : s) {
        uint32_t w = 0;
        for (int j = 0; j < q.b.n; ++j)
            if (parity(q.b.row[j] & si)) w |= 1u << j;
        pairing.push_back(w);
    }
    std::vector<uint32_t> perp = f2::null_space(pairing, q.b.n);
    // Coset representatives of S^perp / S.
    std::vector<uint32_t> reps;
    std::vector<uint32_t> span = s;
    for (uint32_t v : perp) {
        for (uint32_t p : span) {
            int hb = 31 - std::countl_zero(p);
            if ((v >> hb) & 1) v ^= p;
        }
        if (!v) continue;
        reps.push_back(v);
        span.push_back(v);
        std::sort(span.begin(), span.end(), std::greater<>());
    }
    int d = static_cast<int>(reps.size());
    BilinearSpace2 nb(d);
    std::vector<uint8_t> nq(d);
    for (int i = 0; i < d; ++i) {
        nq[i] = static_cast<uint8_t>(q.eval(reps[i]));
        for (int j = 0; j <= i; ++j) nb.set(i, j, q.b.eval(reps[i], reps[j]));
    }
    return {std::move(nb), std::move(nq)};
}

namespace {

// Exhaustive search for H with H = H^perp and q|H = 0. Vectors are chosen in
// increasing order, which visits every subspace through its sorted basis.
bool lagrangian_exists(const QuadraticSpace& q, std::vector<uint32_t>& ech, uint32_t start,
                       int target) {
    if (static_cast<int>(ech.size()) == target) return true;
    for (uint32_t v = start; v < (1u << q.dim()); ++v) {
        if (q.eval(v) != 0) continue;
        if (f2::in_span(ech, v)) continue;
        bool orth = true;
        for (uint32_t u : ech)
            if (q.b.eval(u, v)) { orth = false; break; }
        if (!orth) continue;
        std::vector<uint32_t> next = ech;
        next.push_back(v);
        f2::echelon(next);
        if (lagrangian_exists(q, next, v + 1, target)) return true;
    }
    return false;
}

}  // namespace

BrownProperties brown_properties_check(const QuadraticSpace& q0) {
    QuadraticSpace q = q0.reduced();
    const int n = q.dim();
    const int br = brown(q);
    BrownProperties out;

    out.dim_parity = ((br ^ n) & 1) == 0;

    // Characteristic elements: b(x, w) = q(x) mod 2 for all x; on basis
    // vectors that is parity(row[i] & w) == qdiag[i] mod 2. The reduced form
    // is nondegenerate, so the solution is unique; solve by elimination.
    {
        std::vector<uint64_t> aug;  // row | rhs<<n
        for (int i = 0; i < n; ++i)
            aug.push_back(static_cast<uint64_t>(q.b.row[i]) | (static_cast<uint64_t>(q.qdiag[i] & 1) << n));
        // eliminate
        std::vector<uint64_t> ech;
        for (uint64_t r : aug) {
            for (uint64_t p : ech) {
                int hb = 63 - std::countl_zero(p & ((1ull << n) - 1));
                if ((r >> hb) & 1) r ^= p;
            }
            if (r & ((1ull << n) - 1)) {
                ech.push_back(r);
                std::sort(ech.begin(), ech.end(), [n](uint64_t a, uint64_t b) {
                    return (a & ((1ull << n) - 1)) > (b & ((1ull << n) - 1));
                });
            }
        }
        uint32_t w = 0;
        bool ok = static_cast<int>(ech.size()) == n || n == 0;
        if (ok) {
            // back-substitute from the lowest pivot upward
            for (auto it = ech.rbegin(); it != ech.rend(); ++it) {
                uint64_t r = *it;
                int hb = 63 - std::countl_zero(r & ((1ull << n) - 1));
                int bit = static_cast<int>((r >> n) & 1) ^ parity(static_cast<uint32_t>(r) & w);
                if (bit) w |= 1u << hb;
            }
            ok = ((br - q.eval(w)) & 3) == 0;
        }
        out.characteristic = ok;
    }

    // Shift property, exhaustive over v (capped; test dimensions are small).
    {
        bool ok = true;
        uint64_t lim = n <= 16 ? (1ull << n) : (1ull << 16);
        for (uint64_t v = 0; v < lim && ok; ++v) {
            std::vector<uint8_t> nq(n);
            for (int i = 0; i < n; ++i)
                nq[i] = static_cast<uint8_t>((q.qdiag[i] + 2 * parity(q.b.row[i] & static_cast<uint32_t>(v))) & 3);
            QuadraticSpace qv{q.b, std::move(nq)};
            int want = ((br - 2 * q.eval(static_cast<uint32_t>(v))) % 8 + 8) % 8;
            ok = brown(qv) == want;
        }
        out.shift = ok;
    }

    {
        bool exists = false;
        if (n % 2 == 0) {
            std::vector<uint32_t> ech;
            exists = lagrangian_exists(q, ech, 1, n / 2);
        }
        out.null_cobordism = (br == 0) == exists;
    }
    return out;
}

}  // namespace rcurves
