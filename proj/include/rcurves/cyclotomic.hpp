#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace rcurves {

// Exact arithmetic in Z[zeta], zeta = primitive 8th root of unity, zeta^4 = -1.
// An element is c[0] + c[1]*zeta + c[2]*zeta^2 + c[3]*zeta^3.
// Gauss sums of F2 quadratic forms live here; i = zeta^2.
struct Cyc8 {
    std::array<long long, 4> c{0, 0, 0, 0};

    Cyc8() = default;
    explicit Cyc8(long long a0, long long a1 = 0, long long a2 = 0, long long a3 = 0)
        : c{a0, a1, a2, a3} {}

    // zeta^k for any k (k mod 8; upper half picks up the sign from zeta^4 = -1).
    static Cyc8 zeta_pow(int k) {
        k = ((k % 8) + 8) % 8;
        Cyc8 r;
        r.c[k % 4] = (k < 4) ? 1 : -1;
        return r;
    }
    // i^k, k taken mod 4.
    static Cyc8 i_pow(int k) { return zeta_pow(2 * (((k % 4) + 4) % 4)); }

    Cyc8& operator+=(const Cyc8& o) {
        for (int j = 0; j < 4; ++j) c[j] += o.c[j];
        return *this;
    }
    Cyc8& operator-=(const Cyc8& o) {
        for (int j = 0; j < 4; ++j) c[j] -= o.c[j];
        return *this;
    }
    friend Cyc8 operator+(Cyc8 a, const Cyc8& b) { return a += b; }
    friend Cyc8 operator-(Cyc8 a, const Cyc8& b) { return a -= b; }

    friend Cyc8 operator*(const Cyc8& a, const Cyc8& b) {
        Cyc8 r;
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                long long p = a.c[j] * b.c[k];
                int e = j + k;
                if (e >= 4) { e -= 4; p = -p; }
                r.c[e] += p;
            }
        return r;
    }

    friend bool operator==(const Cyc8& a, const Cyc8& b) { return a.c == b.c; }
    friend bool operator!=(const Cyc8& a, const Cyc8& b) { return !(a.c == b.c); }

    bool divisible_by_pow2(int k) const {
        for (long long v : c)
            if (k >= 63 || (v & ((1LL << k) - 1)) != 0) return k == 0;
        return true;
    }
    Cyc8 div_pow2(int k) const {  // exact; caller guarantees divisibility
        Cyc8 r = *this;
        for (auto& v : r.c) v >>= k;
        return r;
    }

    std::string str() const {
        std::string s = "(";
        for (int j = 0; j < 4; ++j) s += std::to_string(c[j]) + (j < 3 ? "," : ")");
        return s;
    }
};

}  // namespace rcurves
