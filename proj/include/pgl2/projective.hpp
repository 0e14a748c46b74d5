#pragma once

// The projective line over a tower field, PGL_2 elements and their action,
// cross-ratio and the j-invariant of four points.
//
// Points (s,t) are identified with t/s in F u {oo}; the normal form is
// s = 1, or (0,1) for the point at infinity. PGL_2 elements are normalized
// so the first nonzero entry in row-major order is 1, making equality and
// hashing exact.

#include <memory>
#include <mutex>
#include <vector>

#include "field.hpp"

namespace pgl2 {

struct ProjPoint {
    const Field* F = nullptr;
    u64 s = 0, t = 0;
};

inline ProjPoint proj_point(const Field& F, u64 s, u64 t) {
    require(s != 0 || t != 0, "zero_point", "(0,0) is not a projective point");
    if (s != 0) return {&F, 1, F.div(t, s)};
    return {&F, 0, 1};
}

inline ProjPoint proj_infinity(const Field& F) { return {&F, 0, 1}; }
inline ProjPoint proj_value(const Field& F, u64 u) { return {&F, 1, u}; }

inline bool operator==(const ProjPoint& a, const ProjPoint& b) {
    return a.F == b.F && a.s == b.s && a.t == b.t;
}
inline bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }

inline ProjPoint embed_point(const ProjPoint& P, const Field& E) {
    require(E.base() == P.F, "bad_embedding", "point embedding must follow the tower");
    return {&E, E.embed_base(P.s), E.embed_base(P.t)};
}

inline ProjPoint frobenius_point(const ProjPoint& P) {
    return proj_point(*P.F, P.F->frobenius(P.s), P.F->frobenius(P.t));
}

// ---------------------------------------------------------------------------

struct Pgl2 {
    const Field* F = nullptr;
    u64 a = 1, b = 0, c = 0, d = 1;
    u64 det = 1;
};

inline Pgl2 make_pgl2(const Field& F, u64 a, u64 b, u64 c, u64 d) {
    u64 det = F.sub(F.mul(a, d), F.mul(b, c));
    require(det != 0, "singular_matrix", "PGL2 element must be invertible");
    u64 lead = a ? a : (b ? b : (c ? c : d));
    u64 s = F.inv(lead);
    Pgl2 g{&F, F.mul(a, s), F.mul(b, s), F.mul(c, s), F.mul(d, s), 0};
    g.det = F.sub(F.mul(g.a, g.d), F.mul(g.b, g.c));
    return g;
}

inline Pgl2 pgl2_identity(const Field& F) { return make_pgl2(F, 1, 0, 0, 1); }

inline bool operator==(const Pgl2& g, const Pgl2& h) {
    return g.F == h.F && g.a == h.a && g.b == h.b && g.c == h.c && g.d == h.d;
}
inline bool operator!=(const Pgl2& g, const Pgl2& h) { return !(g == h); }

inline Pgl2 compose(const Pgl2& g, const Pgl2& h) {
    require(g.F == h.F, "context_mismatch", "composing maps over different fields");
    const Field& F = *g.F;
    return make_pgl2(F, F.add(F.mul(g.a, h.a), F.mul(g.b, h.c)), F.add(F.mul(g.a, h.b), F.mul(g.b, h.d)),
                F.add(F.mul(g.c, h.a), F.mul(g.d, h.c)), F.add(F.mul(g.c, h.b), F.mul(g.d, h.d)));
}

inline Pgl2 inverse(const Pgl2& g) { return make_pgl2(*g.F, g.d, g.F->neg(g.b), g.F->neg(g.c), g.a); }

inline Pgl2 embed_map(const Pgl2& g, const Field& E) {
    require(E.base() == g.F, "bad_embedding", "map embedding must follow the tower");
    return make_pgl2(E, E.embed_base(g.a), E.embed_base(g.b), E.embed_base(g.c), E.embed_base(g.d));
}

// Standard action on points: (s,t) -> (as+bt, cs+dt).
inline ProjPoint act(const Pgl2& g, const ProjPoint& P) {
    require(g.F == P.F, "context_mismatch", "map and point live in different contexts");
    const Field& F = *g.F;
    return proj_point(F, F.add(F.mul(g.a, P.s), F.mul(g.b, P.t)),
                      F.add(F.mul(g.c, P.s), F.mul(g.d, P.t)));
}

// All of PGL2(q) in a fixed canonical order.
inline std::vector<Pgl2> pgl2_all(const Field& F) {
    u64 q = F.q();
    std::vector<Pgl2> out;
    out.reserve(q * q * q - q);
    for (u64 b = 0; b < q; ++b)
        for (u64 c = 0; c < q; ++c)
            for (u64 d = 0; d < q; ++d) {
                if (F.sub(d, F.mul(b, c)) == 0) continue; // det of (1,b;c,d)
                out.push_back(make_pgl2(F, 1, b, c, d));
            }
    for (u64 c = 1; c < q; ++c)
        for (u64 d = 0; d < q; ++d) out.push_back(make_pgl2(F, 0, 1, c, d));
    return out;
}

// ---------------------------------------------------------------------------

// (P1,P2;P3,P4) = (P3-P1)(P4-P2) / ((P3-P2)(P4-P1)); the determinant form
// d(i,j) = t_j s_i - t_i s_j cancels the point at infinity symbolically.
inline u64 cross_ratio(const ProjPoint& P1, const ProjPoint& P2, const ProjPoint& P3,
                       const ProjPoint& P4) {
    const Field& F = *P1.F;
    require(P2.F == &F && P3.F == &F && P4.F == &F, "context_mismatch",
            "cross-ratio points live in different contexts");
    const ProjPoint* P[4] = {&P1, &P2, &P3, &P4};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            require(*P[i] != *P[j], "repeated_points", "cross-ratio needs pairwise distinct points");
    auto dd = [&F](const ProjPoint& A, const ProjPoint& B) {
        return F.sub(F.mul(B.t, A.s), F.mul(A.t, B.s));
    };
    u64 num = F.mul(dd(P1, P3), dd(P2, P4));
    u64 den = F.mul(dd(P2, P3), dd(P1, P4));
    return F.div(num, den);
}

// j(lambda) = 256 (lambda^2 - lambda + 1)^3 / (lambda^2 (lambda-1)^2).
inline u64 j_of_lambda(const Field& F, u64 lam) {
    require(lam != 0 && lam != 1, "bad_lambda", "j(lambda) is undefined at 0 and 1");
    u64 n = F.add(F.sub(F.mul(lam, lam), lam), 1);
    u64 n3 = F.mul(F.mul(n, n), n);
    u64 lm1 = F.sub(lam, 1);
    u64 den = F.mul(F.mul(lam, lam), F.mul(lm1, lm1));
    return F.div(F.mul(F.from_int(256), n3), den);
}

// Orbit of lambda under G_* = { t, 1/t, 1-t, 1/(1-t), t/(t-1), (t-1)/t }.
inline std::vector<u64> anharmonic_orbit(const Field& F, u64 lam) {
    require(lam != 0 && lam != 1, "bad_lambda", "anharmonic orbit is undefined at 0 and 1");
    u64 one = 1;
    std::vector<u64> orb = {lam,
                            F.inv(lam),
                            F.sub(one, lam),
                            F.inv(F.sub(one, lam)),
                            F.div(lam, F.sub(lam, one)),
                            F.div(F.sub(lam, one), lam)};
    std::sort(orb.begin(), orb.end());
    orb.erase(std::unique(orb.begin(), orb.end()), orb.end());
    return orb;
}

namespace detail {

// Unique map sending (P,Q,R) to (oo, 0, 1).
inline Pgl2 to_standard_triple(const ProjPoint& P, const ProjPoint& Q, const ProjPoint& R) {
    const Field& F = *P.F;
    require(P != Q && P != R && Q != R, "degenerate_triple", "triple points must be distinct");
    // rows scaled so that P -> (0,1), Q -> (1,0), R -> (1,1)
    u64 alpha = F.sub(F.mul(P.t, R.s), F.mul(P.s, R.t));
    u64 beta = F.sub(F.mul(Q.s, R.t), F.mul(Q.t, R.s));
    u64 r1a = F.mul(beta, P.t), r1b = F.neg(F.mul(beta, P.s));
    u64 r2a = F.neg(F.mul(alpha, Q.t)), r2b = F.mul(alpha, Q.s);
    return make_pgl2(F, r1a, r1b, r2a, r2b);
}

} // namespace detail

// The unique element of PGL2 carrying one ordered triple of distinct points
// to another.
inline Pgl2 unique_map(const ProjPoint& A1, const ProjPoint& A2, const ProjPoint& A3,
                       const ProjPoint& B1, const ProjPoint& B2, const ProjPoint& B3) {
    Pgl2 ga = detail::to_standard_triple(A1, A2, A3);
    Pgl2 gb = detail::to_standard_triple(B1, B2, B3);
    return compose(inverse(gb), ga);
}

// ---------------------------------------------------------------------------

// Shared classification context: the base field, its relative extensions of
// degree 2, 3, 4 and a lazily built copy of PGL2(q).
class Tower {
public:
    static Tower make(FieldPtr base) {
        require(base != nullptr, "null_context", "tower needs a base field");
        Tower t;
        t.F_ = std::move(base);
        t.E2_ = extend(t.F_, 2);
        t.E3_ = extend(t.F_, 3);
        t.E4_ = extend(t.F_, 4);
        t.cache_ = std::make_shared<GroupCache>();
        return t;
    }

    const Field& F() const { return *F_; }
    const Field& E2() const { return *E2_; }
    const Field& E3() const { return *E3_; }
    const Field& E4() const { return *E4_; }
    FieldPtr F_ptr() const { return F_; }

    const std::vector<Pgl2>& group() const {
        require(F_->q() <= 128, "bound_exceeded",
                "explicit PGL2(q) enumeration is supported for q <= 128 only");
        std::call_once(cache_->once, [this] { cache_->elems = pgl2_all(*F_); });
        return cache_->elems;
    }

    u64 group_order() const {
        u64 q = F_->q();
        return q * q * q - q;
    }

private:
    struct GroupCache {
        std::once_flag once;
        std::vector<Pgl2> elems;
    };
    FieldPtr F_, E2_, E3_, E4_;
    std::shared_ptr<GroupCache> cache_;
};

} // namespace pgl2
