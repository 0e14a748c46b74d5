#pragma once

// Binary quartic (and cubic) forms over F_q: the apolar and catalecticant
// invariants, discriminant and j-invariant, the PGL2-action, factorization
// into projective roots over the tower, restricted orderings with their
// Frobenius permutation, stabilizers, the J_i / J_i+ parameter sets and
// canonical orbit representatives.
//
// Coefficient convention throughout:
//   f(X,Y) = z0 Y^4 - 4 z1 X Y^3 + 6 z2 X^2 Y^2 - 4 z3 X^3 Y + z4 X^4,
// "plain" coefficients a_i are the coefficients of X^i Y^(4-i).

#include <array>
#include <string>
#include <vector>

#include "projective.hpp"

namespace pgl2 {

inline void require_classification_field(const Field& F) {
    require(F.characteristic() != 2 && F.characteristic() != 3, "unsupported_characteristic",
            "classification requires characteristic different from 2 and 3");
    require(F.q() > 4, "unsupported_field", "classification requires q > 4");
}

// ---------------------------------------------------------------------------
// Binary forms as plain coefficient vectors (index = power of X).

// (g.f)(X,Y) = f(dX - bY, aY - cX), no determinant factor.
inline std::vector<u64> form_substitute(const Field& F, const std::vector<u64>& plain,
                                        const Pgl2& g) {
    int n = static_cast<int>(plain.size()) - 1;
    // X -> dX - bY contributes {X:d, Y:-b}; Y -> aY - cX contributes {X:-c, Y:a}.
    std::vector<u64> lx = {F.neg(g.b), g.d}; // coeff of Y, X
    std::vector<u64> ly = {g.a, F.neg(g.c)};
    auto fmul = [&F](const std::vector<u64>& u, const std::vector<u64>& v) {
        std::vector<u64> r(u.size() + v.size() - 1, 0);
        for (size_t i = 0; i < u.size(); ++i)
            for (size_t j = 0; j < v.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(u[i], v[j]));
        return r;
    };
    std::vector<u64> out(n + 1, 0);
    for (int i = 0; i <= n; ++i) {
        if (plain[i] == 0) continue;
        std::vector<u64> term = {1};
        for (int k = 0; k < i; ++k) term = fmul(term, lx);
        for (int k = 0; k < n - i; ++k) term = fmul(term, ly);
        for (int k = 0; k <= n; ++k) out[k] = F.add(out[k], F.mul(plain[i], term[k]));
    }
    return out;
}

// ---------------------------------------------------------------------------

struct Quartic {
    const Field* F = nullptr;
    std::array<u64, 5> z{};
};

inline Quartic quartic_from_z(const Field& F, std::array<u64, 5> z) {
    bool nonzero = false;
    for (u64 c : z) {
        require(c < F.q(), "bad_coefficient", "coefficient code out of range");
        nonzero = nonzero || c != 0;
    }
    require(nonzero, "zero_form", "the zero quartic is not a projective form");
    return {&F, z};
}

inline Quartic quartic_plain(const Field& F, u64 a0, u64 a1, u64 a2, u64 a3, u64 a4) {
    require(F.characteristic() != 2 && F.characteristic() != 3, "unsupported_characteristic",
            "the (1,-4,6,-4,1) convention needs characteristic away from 2 and 3");
    u64 m4 = F.inv(F.from_int(-4));
    u64 m6 = F.inv(F.from_int(6));
    return quartic_from_z(F, {a0, F.mul(a1, m4), F.mul(a2, m6), F.mul(a3, m4), a4});
}

inline std::array<u64, 5> quartic_to_plain(const Quartic& f) {
    const Field& F = *f.F;
    return {f.z[0], F.mul(f.z[1], F.from_int(-4)), F.mul(f.z[2], F.from_int(6)),
            F.mul(f.z[3], F.from_int(-4)), f.z[4]};
}

inline Quartic quartic_normalize(Quartic f) {
    const Field& F = *f.F;
    for (u64 c : f.z) {
        if (c != 0) {
            if (c != 1) {
                u64 s = F.inv(c);
                for (auto& x : f.z) x = F.mul(x, s);
            }
            return f;
        }
    }
    fail("zero_form", "cannot normalize the zero form");
}

inline bool same_orbit_point(const Quartic& a, const Quartic& b) {
    return quartic_normalize(a).z == quartic_normalize(b).z;
}

inline u64 quartic_eval(const Quartic& f, u64 s, u64 t) {
    const Field& F = *f.F;
    auto a = quartic_to_plain(f);
    u64 r = 0;
    for (int i = 4; i >= 0; --i) {
        u64 spow = 1;
        for (int k = 0; k < i; ++k) spow = F.mul(spow, s);
        u64 tpow = 1;
        for (int k = 0; k < 4 - i; ++k) tpow = F.mul(tpow, t);
        r = F.add(r, F.mul(a[i], F.mul(spow, tpow)));
    }
    return r;
}

inline Quartic embed_quartic(const Quartic& f, const Field& E) {
    require(E.base() == f.F, "bad_embedding", "quartic embedding must follow the tower");
    return {&E, {E.embed_base(f.z[0]), E.embed_base(f.z[1]), E.embed_base(f.z[2]),
                 E.embed_base(f.z[3]), E.embed_base(f.z[4])}};
}

// I(f) = (z0 z4 - 4 z1 z3 + 3 z2^2) / 3, weight 4.
inline u64 invariant_I(const Quartic& f) {
    const Field& F = *f.F;
    require(F.characteristic() != 2 && F.characteristic() != 3, "unsupported_characteristic",
            "invariants need characteristic away from 2 and 3");
    u64 t = F.sub(F.mul(f.z[0], f.z[4]), F.mul(F.from_int(4), F.mul(f.z[1], f.z[3])));
    t = F.add(t, F.mul(F.from_int(3), F.mul(f.z[2], f.z[2])));
    return F.div(t, F.from_int(3));
}

// J(f) = det [[z0,z1,z2],[z1,z2,z3],[z2,z3,z4]], weight 6.
inline u64 invariant_J(const Quartic& f) {
    const Field& F = *f.F;
    require(F.characteristic() != 2 && F.characteristic() != 3, "unsupported_characteristic",
            "invariants need characteristic away from 2 and 3");
    const auto& z = f.z;
    u64 t0 = F.mul(z[0], F.sub(F.mul(z[2], z[4]), F.mul(z[3], z[3])));
    u64 t1 = F.mul(z[1], F.sub(F.mul(z[1], z[4]), F.mul(z[3], z[2])));
    u64 t2 = F.mul(z[2], F.sub(F.mul(z[1], z[3]), F.mul(z[2], z[2])));
    return F.add(F.sub(t0, t1), t2);
}

inline u64 discriminant(const Quartic& f) {
    const Field& F = *f.F;
    u64 I = invariant_I(f), J = invariant_J(f);
    return F.sub(F.mul(I, F.mul(I, I)), F.mul(J, J));
}

// j(f)/(j(f)-1728) = I^3/J^2, i.e. j = 1728 I^3 / Delta; undefined on the
// discriminant locus.
inline u64 j_invariant(const Quartic& f) {
    const Field& F = *f.F;
    u64 I = invariant_I(f);
    u64 D = discriminant(f);
    require(D != 0, "j_undefined", "j undefined on discriminant-zero forms");
    return F.div(F.mul(F.from_int(1728), F.mul(I, F.mul(I, I))), D);
}

// Projective action.
inline Quartic act(const Pgl2& g, const Quartic& f) {
    require(g.F == f.F, "context_mismatch", "map and form live in different contexts");
    auto a = quartic_to_plain(f);
    auto b = form_substitute(*f.F, {a.begin(), a.end()}, g);
    return quartic_normalize(quartic_plain(*f.F, b[0], b[1], b[2], b[3], b[4]));
}

// Linear representation action det(g)^-4 f(dX-bY, aY-cX); this is the action
// under which I and J transform with weights 4 and 6.
inline Quartic act_linear(const Pgl2& g, const Quartic& f) {
    const Field& F = *f.F;
    require(g.F == f.F, "context_mismatch", "map and form live in different contexts");
    auto a = quartic_to_plain(f);
    auto b = form_substitute(F, {a.begin(), a.end()}, g);
    u64 s = F.inv(F.mul(F.mul(g.det, g.det), F.mul(g.det, g.det)));
    Quartic r = quartic_plain(F, b[0], b[1], b[2], b[3], b[4]);
    for (auto& c : r.z) c = F.mul(c, s);
    return r;
}

// ---------------------------------------------------------------------------
// Quadratic forms u0 Y^2 + u1 XY + u2 X^2 and their resultant.

using Quadratic = std::array<u64, 3>;

inline Quartic mul_quadratics(const Field& F, const Quadratic& u, const Quadratic& v) {
    std::array<u64, 5> a{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i + j] = F.add(a[i + j], F.mul(u[i], v[j]));
    return quartic_plain(F, a[0], a[1], a[2], a[3], a[4]);
}

// Res(f1,f2) as the 4x4 Sylvester determinant.
inline u64 resultant_quadratics(const Field& F, const Quadratic& u, const Quadratic& v) {
    u64 m[4][4] = {{u[0], 0, v[0], 0}, {u[1], u[0], v[1], v[0]}, {u[2], u[1], v[2], v[1]},
                   {0, u[2], 0, v[2]}};
    // Gaussian elimination determinant
    u64 det = 1;
    for (int c = 0; c < 4; ++c) {
        int piv = -1;
        for (int r = c; r < 4; ++r)
            if (m[r][c] != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != c) {
            for (int k = 0; k < 4; ++k) std::swap(m[piv][k], m[c][k]);
            det = F.neg(det);
        }
        det = F.mul(det, m[c][c]);
        u64 inv = F.inv(m[c][c]);
        for (int r = c + 1; r < 4; ++r) {
            if (m[r][c] == 0) continue;
            u64 fac = F.mul(m[r][c], inv);
            for (int k = c; k < 4; ++k) m[r][k] = F.sub(m[r][k], F.mul(fac, m[c][k]));
        }
    }
    return det;
}

// ---------------------------------------------------------------------------
// Cubic forms y0 Y^3 - 3 y1 X Y^2 + 3 y2 X^2 Y - y3 X^3.

struct Cubic {
    const Field* F = nullptr;
    std::array<u64, 4> y{};
};

inline Cubic cubic_from_y(const Field& F, std::array<u64, 4> y) {
    bool nz = y[0] || y[1] || y[2] || y[3];
    require(nz, "zero_form", "the zero cubic is not a projective form");
    return {&F, y};
}

inline Cubic cubic_plain(const Field& F, u64 b0, u64 b1, u64 b2, u64 b3) {
    u64 m3 = F.inv(F.from_int(-3));
    return cubic_from_y(F, {b0, F.mul(b1, m3), F.mul(b2, F.inv(F.from_int(3))), F.neg(b3)});
}

inline std::array<u64, 4> cubic_to_plain(const Cubic& c) {
    const Field& F = *c.F;
    return {c.y[0], F.mul(c.y[1], F.from_int(-3)), F.mul(c.y[2], F.from_int(3)), F.neg(c.y[3])};
}

// Cubic resolvent R_f = -4 Y^3 + 3 I(f) Y X^2 - J(f) X^3.
inline Cubic resolvent(const Quartic& f) {
    const Field& F = *f.F;
    require(discriminant(f) != 0, "resolvent_undefined",
            "resolvent is used only off the discriminant locus");
    return Cubic{&F, {F.from_int(-4), 0, invariant_I(f), invariant_J(f)}};
}

inline Quartic x_times_cubic(const Cubic& c) {
    const Field& F = *c.F;
    auto b = cubic_to_plain(c);
    return quartic_plain(F, 0, b[0], b[1], b[2], b[3]);
}

struct CubicClass {
    int orbit = 0;          // 1..5
    std::string label;      // c3:m3, c3:m21, c3:m111, c3:m1c, c3:irr
    u64 orbit_size = 0;
};

inline CubicClass classify_cubic(const Field& F, const Cubic& c) {
    require_classification_field(F);
    u64 q = F.q();
    auto b = cubic_to_plain(c);
    // multiplicity of the root at infinity = number of leading Y-coefficients
    // that vanish (X^k divides f iff b0..b_{k-1} = 0)
    int kinf = 0;
    while (kinf < 3 && b[kinf] == 0) ++kinf;
    poly::Poly g;
    for (int j = 0; j + kinf <= 3; ++j) g.push_back(b[3 - j]);
    poly::trim(g);
    auto K = fops(F);
    auto rat = poly::roots_with_multiplicity(K, g);
    int nrat = kinf > 0 ? 1 : 0;
    int maxmult = kinf;
    int ratmult = kinf;
    for (auto& [r, m] : rat) {
        ++nrat;
        ratmult += m;
        maxmult = std::max(maxmult, m);
    }
    int resid = 3 - ratmult;
    CubicClass out;
    if (maxmult == 3) {
        out = {1, "c3:m3", q + 1};
    } else if (maxmult == 2) {
        out = {2, "c3:m21", q * (q + 1)};
    } else if (nrat == 3) {
        out = {3, "c3:m111", (q * q * q - q) / 6};
    } else if (nrat == 1 && resid == 2) {
        out = {4, "c3:m1c", q * (q * q - 1) / 2};
    } else {
        require(nrat == 0 && resid == 3, "classify_internal", "unexpected cubic pattern");
        out = {5, "c3:irr", (q * q * q - q) / 3};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Roots of a quartic over the tower.

struct QuarticRoot {
    const Field* F = nullptr; // the smallest tower field containing the root
    u64 s = 0, t = 0;         // normalized projective point
    int mult = 0;
};

struct RootSet {
    std::vector<QuarticRoot> roots;
    int splitting_degree = 1;
    int rational_count = 0;   // distinct roots over F_q
    int rational_mult = 0;
};

inline RootSet quartic_roots(const Tower& T, const Quartic& f) {
    const Field& F = T.F();
    require(f.F == &F, "context_mismatch", "form does not live over the tower base");
    auto a = quartic_to_plain(f);
    RootSet out;
    int kinf = 0;
    while (kinf < 4 && a[kinf] == 0) ++kinf;
    if (kinf == 4) {
        // f = c X^4
        out.roots.push_back({&F, 0, 1, 4});
        out.rational_count = 1;
        out.rational_mult = 4;
        return out;
    }
    if (kinf > 0) {
        out.roots.push_back({&F, 0, 1, kinf});
        out.rational_count++;
        out.rational_mult += kinf;
    }
    poly::Poly g;
    for (int j = 0; j + kinf <= 4; ++j) g.push_back(a[4 - j]);
    poly::trim(g);
    auto K = fops(F);
    for (auto& [r, m] : poly::roots_with_multiplicity(K, g)) {
        out.roots.push_back({&F, 1, r, m});
        out.rational_count++;
        out.rational_mult += m;
        poly::Poly lin = {F.neg(r), 1};
        for (int i = 0; i < m; ++i) g = poly::divmod(K, g, lin).first;
    }
    int d = poly::deg(g);
    if (d <= 0) {
        out.splitting_degree = 1;
        return out;
    }
    auto try_ext = [&](const Field& E, int wanted_deg) -> bool {
        poly::Poly ge = g; // identity embedding of base codes
        auto rr = poly::roots_with_multiplicity(fops(E), ge);
        int total = 0;
        for (auto& [r, m] : rr) total += m;
        if (total != d) return false;
        for (auto& [r, m] : rr) {
            ProjPoint P = proj_value(E, r);
            out.roots.push_back({&E, P.s, P.t, m});
        }
        out.splitting_degree = wanted_deg;
        return true;
    };
    if (d == 2) {
        require(try_ext(T.E2(), 2), "roots_internal", "quadratic residual must split over F_q^2");
    } else if (d == 3) {
        require(try_ext(T.E3(), 3), "roots_internal", "cubic residual must split over F_q^3");
    } else {
        require(d == 4, "roots_internal", "unexpected residual degree");
        if (!try_ext(T.E2(), 2)) {
            require(try_ext(T.E4(), 4), "roots_internal",
                    "quartic residual must split over F_q^2 or F_q^4");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Restricted orderings (Galois-compatible orderings of the roots) and the
// Frobenius permutation sigma_phi.

enum class QType { F4, F4c, F2, F2c, F1 };

inline const char* qtype_name(QType t) {
    switch (t) {
        case QType::F4: return "f4";
        case QType::F4c: return "f4c";
        case QType::F2: return "f2";
        case QType::F2c: return "f2c";
        case QType::F1: return "f1";
    }
    return "?";
}

struct RestrictedOrdering {
    QType type;
    const Field* field = nullptr;   // context of the points
    std::array<ProjPoint, 4> pts;
    std::array<int, 4> sigma_phi;   // phi(pts)[i] == pts[sigma_phi[i]]
};

namespace detail {

inline QType quartic_type(const RootSet& rs) {
    if (rs.rational_count == 4) return QType::F4;
    if (rs.rational_count == 2) return QType::F2;
    if (rs.rational_count == 1) return QType::F1;
    require(rs.rational_count == 0, "classify_internal", "unexpected rational root count");
    return rs.splitting_degree == 2 ? QType::F4c : QType::F2c;
}

inline ProjPoint root_point_in(const QuarticRoot& r, const Field& E) {
    if (r.F == &E) return {&E, r.s, r.t};
    return embed_point(ProjPoint{r.F, r.s, r.t}, E);
}

inline int find_point(const std::vector<ProjPoint>& pts, const ProjPoint& p) {
    for (size_t i = 0; i < pts.size(); ++i)
        if (pts[i] == p) return static_cast<int>(i);
    return -1;
}

} // namespace detail

inline RestrictedOrdering restricted_ordering(const Tower& T, const RootSet& rs) {
    require_classification_field(T.F());
    QType ty = detail::quartic_type(rs);
    RestrictedOrdering ro;
    ro.type = ty;
    auto key = [](const ProjPoint& P) { return P.s == 0 ? u64(0) : P.t + 1; };
    switch (ty) {
        case QType::F4: {
            ro.field = &T.F();
            std::vector<ProjPoint> v;
            for (auto& r : rs.roots) v.push_back({r.F, r.s, r.t});
            std::sort(v.begin(), v.end(),
                      [&](const ProjPoint& A, const ProjPoint& B) { return key(A) < key(B); });
            ro.pts = {v[0], v[1], v[2], v[3]};
            ro.sigma_phi = {0, 1, 2, 3};
            break;
        }
        case QType::F4c: {
            const Field& E = T.E2();
            ro.field = &E;
            std::vector<ProjPoint> v;
            for (auto& r : rs.roots) v.push_back(detail::root_point_in(r, E));
            std::sort(v.begin(), v.end(),
                      [&](const ProjPoint& A, const ProjPoint& B) { return key(A) < key(B); });
            ProjPoint r1 = v[0];
            ProjPoint r2 = frobenius_point(r1);
            ProjPoint r3, r4;
            for (auto& p : v) {
                if (p != r1 && p != r2) { r3 = p; break; }
            }
            r4 = frobenius_point(r3);
            ro.pts = {r1, r2, r3, r4};
            ro.sigma_phi = {1, 0, 3, 2}; // (12)(34)
            break;
        }
        case QType::F2: {
            const Field& E = T.E2();
            ro.field = &E;
            std::vector<ProjPoint> rat, ext;
            for (auto& r : rs.roots) {
                if (r.F == &T.F()) rat.push_back(detail::root_point_in(r, E));
                else ext.push_back(detail::root_point_in(r, E));
            }
            std::sort(rat.begin(), rat.end(),
                      [&](const ProjPoint& A, const ProjPoint& B) { return key(A) < key(B); });
            std::sort(ext.begin(), ext.end(),
                      [&](const ProjPoint& A, const ProjPoint& B) { return key(A) < key(B); });
            ro.pts = {rat[0], rat[1], ext[0], frobenius_point(ext[0])};
            ro.sigma_phi = {0, 1, 3, 2}; // (34)
            break;
        }
        case QType::F2c: {
            const Field& E = T.E4();
            ro.field = &E;
            std::vector<ProjPoint> v;
            for (auto& r : rs.roots) v.push_back(detail::root_point_in(r, E));
            std::sort(v.begin(), v.end(),
                      [&](const ProjPoint& A, const ProjPoint& B) { return key(A) < key(B); });
            ProjPoint r1 = v[0];
            ro.pts = {r1, frobenius_point(frobenius_point(r1)), frobenius_point(r1),
                      frobenius_point(frobenius_point(frobenius_point(r1)))};
            ro.sigma_phi = {2, 3, 1, 0}; // (1324)
            break;
        }
        case QType::F1: {
            const Field& E = T.E3();
            ro.field = &E;
            ProjPoint r1{}, r2{};
            std::vector<ProjPoint> ext;
            for (auto& r : rs.roots) {
                if (r.F == &T.F()) r1 = detail::root_point_in(r, E);
                else ext.push_back(detail::root_point_in(r, E));
            }
            std::sort(ext.begin(), ext.end(),
                      [&](const ProjPoint& A, const ProjPoint& B) { return key(A) < key(B); });
            r2 = ext[0];
            ro.pts = {r1, r2, frobenius_point(r2), frobenius_point(frobenius_point(r2))};
            ro.sigma_phi = {0, 2, 3, 1}; // (234)
            break;
        }
    }
    return ro;
}

inline RestrictedOrdering restricted_ordering(const Tower& T, const Quartic& f) {
    require(discriminant(f) != 0, "disc_zero", "restricted orderings need nonzero discriminant");
    RootSet rs = quartic_roots(T, f);
    return restricted_ordering(T, rs);
}

// Permutation induced by a stabilizing g on the points of a restricted
// ordering, and its sign. Throws if g does not permute the roots.
inline std::array<int, 4> root_permutation(const Pgl2& g, const RestrictedOrdering& ro) {
    const Field& E = *ro.field;
    Pgl2 ge = g.F == &E ? g : embed_map(g, E);
    std::array<int, 4> sigma{};
    for (int i = 0; i < 4; ++i) {
        ProjPoint img = act(ge, ro.pts[i]);
        int j = -1;
        for (int k = 0; k < 4; ++k)
            if (ro.pts[k] == img) { j = k; break; }
        require(j >= 0, "not_a_stabilizer", "element does not permute the roots");
        sigma[i] = j;
    }
    return sigma;
}

inline int perm_sign(const std::array<int, 4>& s) {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (s[i] > s[j]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

// Cross-ratio class of a restricted ordering: lambda_f together with its
// H_i-orbit (the full set of cross-ratios of restricted orderings).
struct LambdaClass {
    const Field* field = nullptr;
    u64 lambda = 0;
    std::vector<u64> orbit;
};

inline LambdaClass lambda_class(const Tower& T, const Quartic& f) {
    RestrictedOrdering ro = restricted_ordering(T, f);
    const Field& E = *ro.field;
    u64 lam = cross_ratio(ro.pts[0], ro.pts[1], ro.pts[2], ro.pts[3]);
    LambdaClass lc;
    lc.field = &E;
    lc.lambda = lam;
    switch (ro.type) {
        case QType::F4:
            lc.orbit = anharmonic_orbit(E, lam);
            break;
        case QType::F1: {
            u64 a = E.inv(E.sub(1, lam));            // 1/(1-lambda)
            u64 b = E.div(E.sub(lam, 1), lam);       // (lambda-1)/lambda
            lc.orbit = {lam, a, b};
            std::sort(lc.orbit.begin(), lc.orbit.end());
            lc.orbit.erase(std::unique(lc.orbit.begin(), lc.orbit.end()), lc.orbit.end());
            break;
        }
        default: {
            lc.orbit = {lam, E.inv(lam)};
            std::sort(lc.orbit.begin(), lc.orbit.end());
            lc.orbit.erase(std::unique(lc.orbit.begin(), lc.orbit.end()), lc.orbit.end());
            break;
        }
    }
    return lc;
}

// ---------------------------------------------------------------------------
// Classification.

struct QuarticClass {
    bool disc_zero = false;
    int d0_orbit = 0;            // 1..6 when disc_zero
    QType type{};                // when !disc_zero
    u64 j = 0;
    bool I_square = false;
    u64 stab_order = 0;
    std::string stab_label;
    u64 orbit_size = 0;
    std::string label;           // canonical orbit label
    bool has_lambda_rep = false;
    u64 lambda_rep = 0;          // canonical H2-class representative (base code)
};

namespace detail {

inline std::string d0_label(int orbit) {
    static const char* names[] = {"d0:m4", "d0:m31", "d0:m22", "d0:m22c", "d0:m211", "d0:m211c"};
    return names[orbit - 1];
}

inline u64 d0_size(const Field& F, int orbit) {
    u64 q = F.q();
    switch (orbit) {
        case 1: return q + 1;
        case 2: return q * (q + 1);
        case 3: return q * (q + 1) / 2;
        case 4: return q * (q - 1) / 2;
        default: return (q * q * q - q) / 2;
    }
}

inline void stab_from_cases(const Field& F, QuarticClass& qc) {
    u64 j1728 = F.from_int(1728);
    auto set = [&qc](u64 n, const char* lbl) {
        qc.stab_order = n;
        qc.stab_label = lbl;
    };
    if (qc.j == j1728) {
        switch (qc.type) {
            case QType::F4: set(8, "D4"); break;
            case QType::F4c:
                if (qc.lambda_rep == F.from_int(-1)) set(8, "D4");
                else set(4, "Z2xZ2");
                break;
            case QType::F2: set(4, "Z2xZ2"); break;
            case QType::F2c: set(4, "Z4"); break;
            case QType::F1: fail("classify_internal", "no F1 orbit at j=1728");
        }
    } else if (qc.j == 0) {
        switch (qc.type) {
            case QType::F4: set(12, "A4"); break;
            case QType::F4c: set(4, "Z2xZ2"); break;
            case QType::F2: set(2, "Z2"); break;
            case QType::F2c: set(2, "Z2"); break;
            case QType::F1: set(3, "Z3"); break;
        }
    } else {
        switch (qc.type) {
            case QType::F4:
            case QType::F4c: set(4, "Z2xZ2"); break;
            case QType::F2:
            case QType::F2c: set(2, "Z2"); break;
            case QType::F1: set(1, "trivial"); break;
        }
    }
}

} // namespace detail

inline QuarticClass classify(const Tower& T, const Quartic& f) {
    const Field& F = T.F();
    require_classification_field(F);
    require(f.F == &F, "context_mismatch", "form does not live over the tower base");
    QuarticClass qc;
    u64 D = discriminant(f);
    RootSet rs = quartic_roots(T, f);
    if (D == 0) {
        qc.disc_zero = true;
        int maxm = 0;
        for (auto& r : rs.roots) maxm = std::max(maxm, r.mult);
        require(maxm >= 2, "classify_internal", "zero discriminant must give a repeated root");
        if (maxm == 4) {
            qc.d0_orbit = 1;
        } else if (maxm == 3) {
            qc.d0_orbit = 2;
        } else {
            int doubles = 0, rational_doubles = 0, rational_simples = 0, simples = 0;
            for (auto& r : rs.roots) {
                if (r.mult == 2) {
                    ++doubles;
                    if (r.F == &F) ++rational_doubles;
                } else {
                    ++simples;
                    if (r.F == &F) ++rational_simples;
                }
            }
            if (doubles == 2) {
                qc.d0_orbit = rational_doubles == 2 ? 3 : 4;
            } else {
                require(doubles == 1 && rational_doubles == 1 && simples == 2,
                        "classify_internal", "unexpected degenerate root pattern");
                qc.d0_orbit = rational_simples == 2 ? 5 : 6;
            }
        }
        qc.label = detail::d0_label(qc.d0_orbit);
        qc.orbit_size = detail::d0_size(F, qc.d0_orbit);
        qc.stab_order = T.group_order() / qc.orbit_size;
        qc.stab_label = "-";
        qc.I_square = F.is_square(invariant_I(f));
        return qc;
    }
    qc.disc_zero = false;
    qc.type = detail::quartic_type(rs);
    qc.j = j_invariant(f);
    qc.I_square = F.is_square(invariant_I(f));
    // lambda-class representative where (type, j) does not already separate
    // orbits: all of F4', and F1 at j = 0.
    if (qc.type == QType::F4c) {
        RestrictedOrdering ro = restricted_ordering(T, rs);
        u64 lam = cross_ratio(ro.pts[0], ro.pts[1], ro.pts[2], ro.pts[3]);
        const Field& E = *ro.field;
        require(E.in_base(lam), "classify_internal", "F4' cross-ratio must be rational");
        u64 l0 = E.to_base(lam);
        u64 l1 = F.inv(l0);
        qc.lambda_rep = std::min(l0, l1);
        qc.has_lambda_rep = true;
    } else if (qc.type == QType::F1 && qc.j == 0) {
        RestrictedOrdering ro = restricted_ordering(T, rs);
        u64 lam = cross_ratio(ro.pts[0], ro.pts[1], ro.pts[2], ro.pts[3]);
        const Field& E = *ro.field;
        require(E.in_base(lam), "classify_internal", "F1 cross-ratio at j=0 must be rational");
        qc.lambda_rep = E.to_base(lam);
        qc.has_lambda_rep = true;
    }
    detail::stab_from_cases(F, qc);
    qc.orbit_size = T.group_order() / qc.stab_order;
    qc.label = std::string(qtype_name(qc.type)) + ":j=" + std::to_string(qc.j);
    if (qc.has_lambda_rep) qc.label += ":l=" + std::to_string(qc.lambda_rep);
    return qc;
}

// Exhaustive stabilizer scan; the oracle against which the case table above
// is tested.
struct StabilizerInfo {
    std::vector<Pgl2> elements;
    std::string label;
};

inline u64 pgl2_order(const Pgl2& g) {
    Pgl2 id = pgl2_identity(*g.F);
    Pgl2 cur = g;
    u64 n = 1;
    while (!(cur == id)) {
        cur = compose(cur, g);
        ++n;
        require(n <= g.F->q() + 1, "order_internal", "element order exceeds q+1");
    }
    return n;
}

inline std::string group_label_from_elements(const std::vector<Pgl2>& els) {
    size_t n = els.size();
    if (n == 1) return "trivial";
    if (n == 2) return "Z2";
    if (n == 3) return "Z3";
    if (n == 4) {
        for (auto& g : els)
            if (pgl2_order(g) == 4) return "Z4";
        return "Z2xZ2";
    }
    if (n == 8) return "D4";
    if (n == 12) return "A4";
    return "order" + std::to_string(n);
}

inline StabilizerInfo quartic_stabilizer_scan(const Tower& T, const Quartic& f) {
    StabilizerInfo out;
    Quartic fn = quartic_normalize(f);
    for (const Pgl2& g : T.group()) {
        if (quartic_normalize(act(g, f)).z == fn.z) out.elements.push_back(g);
    }
    out.label = group_label_from_elements(out.elements);
    return out;
}

// ---------------------------------------------------------------------------
// The J_i / J_i+ parameter sets.

struct JSets {
    std::vector<u64> J1, J2, J4;
};

// J_i = { r != 0,1728 : Z^3 - 4Z^2 + 256/27 (1 - 1728/r) has i-1 roots }.
inline JSets j_sets(const Field& F) {
    require_classification_field(F);
    JSets out;
    u64 j1728 = F.from_int(1728);
    u64 c0 = F.div(F.from_int(256), F.from_int(27));
    auto K = fops(F);
    for (u64 r = 1; r < F.q(); ++r) {
        if (r == j1728) continue;
        u64 c = F.mul(c0, F.sub(1, F.div(j1728, r)));
        poly::Poly p = {c, 0, F.from_int(-4), 1};
        size_t nroots = poly::roots(K, p).size();
        if (nroots == 3) out.J4.push_back(r);
        else if (nroots == 1) out.J2.push_back(r);
        else {
            require(nroots == 0, "jsets_internal", "resolvent parameter cubic with 2 roots");
            out.J1.push_back(r);
        }
    }
    return out;
}

// J_i+ = { r in J_i : r/(r-1728) is a square }; equivalently 1 - 1728/r is a
// square (the two quantities are reciprocal).
inline JSets j_plus_sets(const Field& F) {
    JSets J = j_sets(F);
    u64 j1728 = F.from_int(1728);
    auto plus = [&](const std::vector<u64>& v) {
        std::vector<u64> out;
        for (u64 r : v) {
            bool sq = F.is_square(F.div(r, F.sub(r, j1728)));
            bool sq2 = F.is_square(F.sub(1, F.div(j1728, r)));
            require(sq == sq2, "jplus_internal", "the two J+ membership tests disagree");
            if (sq) out.push_back(r);
        }
        return out;
    };
    return JSets{plus(J.J1), plus(J.J2), plus(J.J4)};
}

inline int mu_of(const Field& F) { return F.q() % 3 == 1 ? 1 : -1; }

// ---------------------------------------------------------------------------
// Canonical representatives (one per orbit label).

// E_r = X(256/27 (1 - 1728/r) Y^3 - 4 Y X^2 + X^3).
inline Quartic rep_E(const Field& F, u64 r) {
    u64 j1728 = F.from_int(1728);
    require(r != 0 && r != j1728, "invalid_label", "E_r needs r outside {0, 1728}");
    u64 c = F.mul(F.div(F.from_int(256), F.from_int(27)), F.sub(1, F.div(j1728, r)));
    return quartic_plain(F, 0, c, 0, F.from_int(-4), 1);
}

// psi_lambda = XY(Y-X)(Y-lambda X).
inline Quartic rep_psi(const Field& F, u64 lam) {
    return quartic_plain(F, 0, 1, F.neg(F.add(1, lam)), lam, 0);
}

// upsilon_r = XY((Y - rX)^2 - eps X^2).
inline Quartic rep_upsilon(const Field& F, u64 r) {
    u64 eps = F.nonresidue();
    return quartic_plain(F, 0, 1, F.mul(F.from_int(-2), r), F.sub(F.mul(r, r), eps), 0);
}

// psi'_alpha = (Y^2 - eps X^2)(Y - alpha X)(Y - phi(alpha) X), alpha = x + y sqrt(eps).
inline Quartic rep_psi_prime(const Field& F, u64 x, u64 y) {
    u64 eps = F.nonresidue();
    u64 nrm = F.sub(F.mul(x, x), F.mul(eps, F.mul(y, y)));
    return quartic_plain(F, 1, F.mul(F.from_int(-2), x), F.sub(nrm, eps),
                         F.mul(F.from_int(2), F.mul(eps, x)), F.neg(F.mul(eps, nrm)));
}

// eta_(s,t) = (Ys - tX) (Y - theta X)(Y - phi theta X)(Y - phi^2 theta X),
// theta the adjoined generator of F_q^3.
inline Quartic rep_eta(const Tower& T, u64 s, u64 t) {
    const Field& F = T.F();
    const Field& E = T.E3();
    u64 th = F.q(); // code of the adjoined degree-3 generator
    u64 th1 = E.frobenius(th), th2 = E.frobenius(th1);
    u64 e1 = E.to_base(E.add(E.add(th, th1), th2));
    u64 e2 = E.to_base(E.add(E.add(E.mul(th, th1), E.mul(th, th2)), E.mul(th1, th2)));
    u64 e3 = E.to_base(E.mul(th, E.mul(th1, th2)));
    return quartic_plain(F, s, F.neg(F.add(F.mul(s, e1), t)),
                         F.add(F.mul(s, e2), F.mul(t, e1)),
                         F.neg(F.add(F.mul(s, e3), F.mul(t, e2))), F.mul(t, e3));
}

// theta0 (canonical non-square) and theta1 with theta0^2 + theta1^2 = -1;
// only defined for q = 3 mod 4.
inline std::pair<u64, u64> theta_pair_3mod4(const Field& F) {
    require(F.q() % 4 == 3, "invalid_label", "theta pair needs q = 3 mod 4");
    for (u64 c = 2; c < F.q(); ++c) {
        if (F.is_square(c)) continue;
        auto s = F.sqrt_of(F.sub(F.from_int(-1), F.mul(c, c)));
        if (s) return {c, *s};
    }
    fail("internal", "no (theta0, theta1) pair found");
}

// upsilon'_r, the irreducible-quartic families (one shape per q mod 4).
inline Quartic rep_upsilon_prime(const Field& F, u64 r) {
    u64 g = F.generator();
    if (F.q() % 4 == 1) {
        if (F.is_square(F.mul(F.nonresidue(), r))) {
            u64 s = F.sqrt_req(F.mul(g, r));
            return quartic_plain(F, 1, 0, F.mul(F.from_int(-2), r),
                                 F.mul(F.from_int(-4), s), F.sub(F.mul(r, r), g));
        }
        require(F.is_square(r), "invalid_label", "upsilon' parameter splits by square class");
        u64 s = F.sqrt_req(r);
        u64 g2 = F.mul(g, g);
        return quartic_plain(F, 1, 0, F.mul(F.from_int(-2), F.mul(g, r)),
                             F.mul(F.from_int(-4), F.mul(g2, s)),
                             F.sub(F.mul(g2, F.mul(r, r)), F.mul(g2, g)));
    }
    auto [th0, th1] = theta_pair_3mod4(F);
    u64 two = F.from_int(2);
    u64 a4 = F.add(F.sub(F.mul(r, r), 1), F.mul(two, F.mul(th0, r)));
    if (F.is_square(F.neg(r))) {
        u64 s = F.sqrt_req(F.neg(r));
        return quartic_plain(F, 1, 0, F.mul(two, F.sub(th0, r)),
                             F.mul(F.from_int(4), F.mul(th1, s)), a4);
    }
    require(F.is_square(r), "invalid_label", "upsilon' parameter splits by square class");
    u64 s = F.sqrt_req(r);
    return quartic_plain(F, 1, 0, F.mul(two, F.sub(r, th0)),
                         F.mul(F.from_int(4), F.mul(th1, s)), a4);
}

namespace detail {

// Least alpha = x + y sqrt(eps) (code order) with chi_1(alpha) =
// N(alpha - sqrt(eps))/N(alpha + sqrt(eps)) equal to the target.
inline std::pair<u64, u64> solve_chi1(const Field& F, u64 target) {
    u64 eps = F.nonresidue();
    for (u64 y = 1; y < F.q(); ++y) {
        u64 ym = F.sub(y, 1), yp = F.add(y, 1);
        u64 num = F.mul(eps, F.sub(F.mul(ym, ym), F.mul(target, F.mul(yp, yp))));
        u64 x2 = F.div(num, F.sub(1, target));
        auto x = F.sqrt_of(x2);
        if (!x) continue;
        u64 den = F.sub(x2, F.mul(eps, F.mul(yp, yp)));
        if (den == 0) continue;
        u64 chi = F.div(F.sub(x2, F.mul(eps, F.mul(ym, ym))), den);
        if (chi == target) return {*x, y};
    }
    fail("invalid_label", "no alpha with the requested cross-ratio class");
}

} // namespace detail

inline Quartic representative(const Tower& T, const std::string& label);

namespace detail {

struct ParsedLabel {
    std::string head;
    bool has_j = false, has_l = false;
    u64 j = 0, l = 0;
};

inline ParsedLabel parse_label(const std::string& label) {
    ParsedLabel out;
    size_t pos = label.find(':');
    out.head = label.substr(0, pos);
    while (pos != std::string::npos) {
        size_t next = label.find(':', pos + 1);
        std::string part = label.substr(pos + 1, next == std::string::npos ? next : next - pos - 1);
        if (part.rfind("j=", 0) == 0) {
            out.has_j = true;
            out.j = std::stoull(part.substr(2));
        } else if (part.rfind("l=", 0) == 0) {
            out.has_l = true;
            out.l = std::stoull(part.substr(2));
        } else if (out.head == "d0" || out.head == "c3") {
            out.head += ":" + part;
        } else {
            fail("invalid_label", "unrecognized label component '" + part + "'");
        }
        pos = next;
    }
    return out;
}

inline Quartic rep_for_label(const Tower& T, const ParsedLabel& pl) {
    const Field& F = T.F();
    u64 j1728 = F.from_int(1728);
    u64 eps = F.characteristic() == 2 ? 0 : F.nonresidue();
    if (pl.head == "d0:m4") return quartic_plain(F, 0, 0, 0, 0, 1);
    if (pl.head == "d0:m31") return quartic_plain(F, 0, 0, 0, 1, 0);
    if (pl.head == "d0:m22") return quartic_plain(F, 0, 0, 1, 0, 0);
    if (pl.head == "d0:m22c")
        return quartic_plain(F, F.mul(eps, eps), 0, F.mul(F.from_int(-2), eps), 0, 1);
    if (pl.head == "d0:m211") return quartic_plain(F, 0, 0, 1, F.from_int(-1), 0);
    if (pl.head == "d0:m211c") return quartic_plain(F, 0, 0, F.neg(eps), 0, 1);
    require(pl.has_j, "invalid_label", "label needs a j component");
    if (pl.head == "f4") {
        if (pl.j == j1728) return rep_psi(F, F.from_int(-1));
        if (pl.j == 0) {
            require(mu_of(F) == 1, "invalid_label", "f4:j=0 exists only when q = 1 mod 3");
            return quartic_plain(F, 0, 1, 0, 0, F.from_int(-1)); // X(Y^3 - X^3)
        }
        return rep_E(F, pl.j);
    }
    if (pl.head == "f2") {
        if (pl.j == j1728) return quartic_plain(F, 0, 1, 0, F.neg(eps), 0); // XY(Y^2-eps X^2)
        if (pl.j == 0) {
            require(mu_of(F) == -1, "invalid_label", "f2:j=0 exists only when q = 2 mod 3");
            return quartic_plain(F, 0, 1, 0, 0, F.from_int(-1));
        }
        return rep_E(F, pl.j);
    }
    if (pl.head == "f1") {
        if (pl.j == 0) {
            require(mu_of(F) == 1 && pl.has_l, "invalid_label",
                    "f1:j=0 needs q = 1 mod 3 and a lambda class");
            u64 g = F.generator();
            for (u64 r : {g, F.mul(g, g)}) {
                Quartic cand = quartic_plain(F, 0, 1, 0, 0, F.neg(r)); // X(Y^3 - r X^3)
                QuarticClass qc = classify(T, cand);
                if (qc.has_lambda_rep && qc.lambda_rep == pl.l) return cand;
            }
            fail("invalid_label", "no X(Y^3 - gamma^i X^3) with the requested lambda class");
        }
        return rep_E(F, pl.j);
    }
    if (pl.head == "f4c") {
        require(pl.has_l, "invalid_label", "f4' labels carry a lambda class");
        auto [x, y] = solve_chi1(F, pl.l);
        return rep_psi_prime(F, x, y);
    }
    if (pl.head == "f2c") {
        for (u64 r = 0; r < F.q(); ++r) {
            bool case1 = F.q() % 4 == 1 ? F.is_square(F.mul(eps, r)) : F.is_square(F.neg(r));
            if (!case1 && !F.is_square(r)) continue;
            Quartic cand = rep_upsilon_prime(F, r);
            if (discriminant(cand) == 0) continue;
            QuarticClass qc = classify(T, cand);
            if (qc.type == QType::F2c && qc.j == pl.j) return cand;
        }
        fail("invalid_label", "no upsilon' with the requested j");
    }
    fail("invalid_label", "unknown label head '" + pl.head + "'");
}

} // namespace detail

inline Quartic representative(const Tower& T, const std::string& label) {
    detail::ParsedLabel pl = detail::parse_label(label);
    Quartic f = detail::rep_for_label(T, pl);
    QuarticClass qc = classify(T, f);
    require(qc.label == label, "invalid_label",
            "label '" + label + "' is not realized at q = " + std::to_string(T.F().q()) +
                " (representative classifies as '" + qc.label + "')");
    return f;
}

// All orbit labels valid at this q, discriminant-zero ones first.
inline std::vector<std::string> quartic_orbit_labels(const Tower& T) {
    const Field& F = T.F();
    require_classification_field(F);
    u64 j1728 = F.from_int(1728);
    int mu = mu_of(F);
    std::vector<std::string> out = {"d0:m4", "d0:m31", "d0:m22", "d0:m22c", "d0:m211", "d0:m211c"};
    JSets J = j_sets(F);
    auto jl = [](QType t, u64 j) {
        return std::string(qtype_name(t)) + ":j=" + std::to_string(j);
    };
    for (u64 r : J.J4) out.push_back(jl(QType::F4, r));
    out.push_back(jl(QType::F4, j1728));
    if (mu == 1) out.push_back(jl(QType::F4, 0));
    // F4': one label per H2-class {lambda, 1/lambda} of F_q \ {0,1}
    std::vector<bool> seen(F.q(), false);
    for (u64 lam = 2; lam < F.q(); ++lam) {
        if (seen[lam]) continue;
        u64 li = F.inv(lam);
        seen[lam] = seen[li] = true;
        u64 rep = std::min(lam, li);
        out.push_back(jl(QType::F4c, j_of_lambda(F, lam)) + ":l=" + std::to_string(rep));
    }
    for (u64 r : J.J2) out.push_back(jl(QType::F2, r));
    out.push_back(jl(QType::F2, j1728));
    if (mu == -1) out.push_back(jl(QType::F2, 0));
    for (u64 r : J.J2) out.push_back(jl(QType::F2c, r));
    out.push_back(jl(QType::F2c, j1728));
    if (mu == -1) out.push_back(jl(QType::F2c, 0));
    for (u64 r : J.J1) out.push_back(jl(QType::F1, r));
    if (mu == 1) {
        u64 w = *F.cube_root_unity();
        out.push_back(jl(QType::F1, 0) + ":l=" + std::to_string(F.neg(w)));
        out.push_back(jl(QType::F1, 0) + ":l=" + std::to_string(F.neg(F.mul(w, w))));
    }
    return out;
}

} // namespace pgl2
