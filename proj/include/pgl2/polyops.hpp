#pragma once

// Dense univariate polynomial arithmetic over a finite field, generic over
// an "ops" object so the same routines serve both the prime-digit level
// (during field construction) and full Field contexts.
//
// Ops requirements:
//   u64 q() const                      field size
//   u64 add/sub/mul(u64,u64) const, u64 neg/inv(u64) const
//
// Polynomials are little-endian coefficient vectors of canonical codes with
// no trailing zeros; the zero polynomial is the empty vector.

#include <utility>
#include <vector>

#include "error.hpp"
#include "numtheory.hpp"

namespace pgl2::poly {

using Poly = std::vector<u64>;

inline void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline bool is_zero(const Poly& f) { return f.empty(); }

template <class Ops>
Poly add(const Ops& K, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0;
        u64 y = i < b.size() ? b[i] : 0;
        r[i] = K.add(x, y);
    }
    trim(r);
    return r;
}

template <class Ops>
Poly sub(const Ops& K, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0;
        u64 y = i < b.size() ? b[i] : 0;
        r[i] = K.sub(x, y);
    }
    trim(r);
    return r;
}

template <class Ops>
Poly scale(const Ops& K, const Poly& a, u64 c) {
    if (c == 0) return {};
    Poly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = K.mul(a[i], c);
    trim(r);
    return r;
}

template <class Ops>
Poly mul(const Ops& K, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
        }
    }
    trim(r);
    return r;
}

template <class Ops>
Poly monic(const Ops& K, Poly f) {
    trim(f);
    if (f.empty()) return f;
    u64 lc = f.back();
    if (lc != 1) {
        u64 s = K.inv(lc);
        for (auto& c : f) c = K.mul(c, s);
    }
    return f;
}

template <class Ops>
std::pair<Poly, Poly> divmod(const Ops& K, Poly a, const Poly& b) {
    require(!b.empty(), "poly_div_zero", "polynomial division by zero");
    trim(a);
    if (deg(a) < deg(b)) return {{}, a};
    u64 lcinv = K.inv(b.back());
    Poly quo(a.size() - b.size() + 1, 0);
    for (int i = deg(a); i >= deg(b); --i) {
        u64 c = a[i];
        if (c == 0) continue;
        u64 t = K.mul(c, lcinv);
        quo[i - deg(b)] = t;
        for (size_t j = 0; j < b.size(); ++j) {
            a[i - deg(b) + j] = K.sub(a[i - deg(b) + j], K.mul(t, b[j]));
        }
    }
    trim(a);
    trim(quo);
    return {quo, a};
}

template <class Ops>
Poly mod(const Ops& K, Poly a, const Poly& b) {
    return divmod(K, std::move(a), b).second;
}

template <class Ops>
Poly gcd_monic(const Ops& K, Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        a = mod(K, std::move(a), b);
        std::swap(a, b);
    }
    return monic(K, std::move(a));
}

template <class Ops>
u64 eval(const Ops& K, const Poly& f, u64 x) {
    u64 r = 0;
    for (size_t i = f.size(); i-- > 0;) r = K.add(K.mul(r, x), f[i]);
    return r;
}

template <class Ops>
Poly derivative(const Ops& K, const Poly& f) {
    if (f.size() <= 1) return {};
    Poly r(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) {
        u64 c = f[i];
        u64 m = i % K.characteristic();
        u64 acc = 0;
        for (u64 t = 0; t < m; ++t) acc = K.add(acc, c);
        r[i - 1] = acc;
    }
    trim(r);
    return r;
}

namespace detail {

// Allocation-free modular exponentiation for small monic moduli; the inner
// loops of root finding live here.
template <class Ops, size_t D>
Poly powmod_fixed(const Ops& K, const Poly& base, u64 e, const Poly& m) {
    const int d = deg(m);
    std::array<u64, D> r{}, b{};
    std::array<u64, 2 * D> t{};
    r[0] = 1;
    for (int i = 0; i <= deg(base); ++i) b[i] = base[i];
    auto mulmod_into = [&](std::array<u64, D>& dst, const std::array<u64, D>& u,
                           const std::array<u64, D>& v) {
        t.fill(0);
        for (int i = 0; i < d; ++i) {
            if (u[i] == 0) continue;
            for (int j = 0; j < d; ++j) {
                if (v[j] == 0) continue;
                t[i + j] = K.add(t[i + j], K.mul(u[i], v[j]));
            }
        }
        for (int i = 2 * d - 2; i >= d; --i) {
            u64 c = t[i];
            if (c == 0) continue;
            t[i] = 0;
            for (int j = 0; j < d; ++j) t[i - d + j] = K.sub(t[i - d + j], K.mul(c, m[j]));
        }
        for (int i = 0; i < d; ++i) dst[i] = t[i];
    };
    while (e) {
        if (e & 1) mulmod_into(r, r, b);
        mulmod_into(b, b, b);
        e >>= 1;
    }
    Poly out(r.begin(), r.begin() + d);
    trim(out);
    return out;
}

} // namespace detail

template <class Ops>
Poly powmod(const Ops& K, Poly base, u64 e, const Poly& m) {
    base = mod(K, std::move(base), m);
    int d = deg(m);
    if (d >= 1 && d <= 8 && m.back() == 1) return detail::powmod_fixed<Ops, 8>(K, base, e, m);
    Poly r = {1};
    while (e) {
        if (e & 1) r = mod(K, mul(K, r, base), m);
        base = mod(K, mul(K, base, base), m);
        e >>= 1;
    }
    return r;
}

// x^(q^iter) mod m, iterating to avoid overflow of q^iter.
template <class Ops>
Poly frobenius_power_x(const Ops& K, unsigned iter, const Poly& m) {
    Poly x = mod(K, Poly{0, 1}, m);
    Poly r = x;
    for (unsigned i = 0; i < iter; ++i) r = powmod(K, std::move(r), K.q(), m);
    return r;
}

// Irreducibility over the coefficient field (Rabin's test).
template <class Ops>
bool is_irreducible(const Ops& K, const Poly& f) {
    int n = deg(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    Poly fm = monic(K, f);
    Poly x = {0, 1};
    Poly xq = frobenius_power_x(K, static_cast<unsigned>(n), fm);
    if (sub(K, xq, x) != Poly{}) return false;
    for (u64 r : prime_divisors_u64(static_cast<u64>(n))) {
        Poly xm = frobenius_power_x(K, static_cast<unsigned>(n / r), fm);
        Poly g = gcd_monic(K, sub(K, xm, x), fm);
        if (deg(g) != 0) return false;
    }
    return true;
}

namespace detail {

inline u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Cantor-Zassenhaus equal-degree splitting specialised to products of
// distinct monic linear factors, odd field size. Shift constants follow a
// fixed pseudorandom sequence (deterministic across runs); sequential codes
// would stay inside proper subfields, where conjugate root sets can never
// be separated.
template <class Ops>
void split_linear(const Ops& K, Poly f, std::vector<u64>& out) {
    trim(f);
    if (deg(f) <= 0) return;
    f = monic(K, f);
    if (deg(f) == 1) {
        out.push_back(K.neg(f[0]));
        return;
    }
    u64 half = (K.q() - 1) / 2;
    for (u64 i = 0;; ++i) {
        require(i < K.q() + 64, "cz_exhausted", "equal-degree splitting ran out of shifts");
        u64 c = splitmix64(i) % K.q();
        Poly a = {c, 1};
        Poly h = powmod(K, a, half, f);
        h = sub(K, h, Poly{1});
        Poly g = gcd_monic(K, h, f);
        if (deg(g) > 0 && deg(g) < deg(f)) {
            Poly rest = divmod(K, f, g).first;
            split_linear(K, std::move(g), out);
            split_linear(K, std::move(rest), out);
            return;
        }
    }
}

} // namespace detail

// Distinct roots of f lying in the coefficient field.
template <class Ops>
std::vector<u64> roots(const Ops& K, const Poly& f) {
    Poly fm = monic(K, f);
    if (deg(fm) <= 0) return {};
    Poly x = {0, 1};
    Poly xq = frobenius_power_x(K, 1, fm);
    Poly g = gcd_monic(K, sub(K, xq, x), fm);
    std::vector<u64> out;
    detail::split_linear(K, std::move(g), out);
    std::sort(out.begin(), out.end());
    return out;
}

// Roots in the coefficient field with multiplicities, sorted by code.
template <class Ops>
std::vector<std::pair<u64, int>> roots_with_multiplicity(const Ops& K, Poly f) {
    std::vector<std::pair<u64, int>> out;
    for (u64 r : roots(K, f)) {
        int m = 0;
        Poly lin = {K.neg(r), 1};
        for (;;) {
            auto [q, rem] = divmod(K, f, lin);
            if (!rem.empty()) break;
            f = std::move(q);
            ++m;
        }
        out.emplace_back(r, m);
    }
    return out;
}

} // namespace pgl2::poly
