#pragma once

// Brute-force checks of the divided-power representation facts: the
// antidiagonal matrix A_m and diagonal matrix T_m of binomials, the induced
// matrices g^[m] / g^m / g_m of a PGL2 element on D_mV, Sym^mV and
// Sym^m(V*), the four-way irreducibility equivalence, and the equivariant
// Hom-space dimensions, all over small finite fields.

#include <random>

#include "quartic.hpp"

namespace pgl2::rep {

using Mat = std::vector<std::vector<u64>>;

inline Mat mat_zero(int r, int c) { return Mat(r, std::vector<u64>(c, 0)); }

inline Mat mat_mul(const Field& F, const Mat& A, const Mat& B) {
    int n = static_cast<int>(A.size()), m = static_cast<int>(B[0].size());
    int k = static_cast<int>(B.size());
    Mat C = mat_zero(n, m);
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < k; ++t) {
            if (A[i][t] == 0) continue;
            for (int j = 0; j < m; ++j) C[i][j] = F.add(C[i][j], F.mul(A[i][t], B[t][j]));
        }
    return C;
}

inline Mat mat_scale(const Field& F, Mat A, u64 c) {
    for (auto& row : A)
        for (auto& x : row) x = F.mul(x, c);
    return A;
}

inline int mat_rank(const Field& F, Mat A) {
    int rows = static_cast<int>(A.size());
    int cols = rows ? static_cast<int>(A[0].size()) : 0;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (A[r][c] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(A[piv], A[rank]);
        u64 inv = F.inv(A[rank][c]);
        for (int k = c; k < cols; ++k) A[rank][k] = F.mul(A[rank][k], inv);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || A[r][c] == 0) continue;
            u64 f = A[r][c];
            for (int k = c; k < cols; ++k) A[r][k] = F.sub(A[r][k], F.mul(f, A[rank][k]));
        }
        ++rank;
    }
    return rank;
}

// Basis of the right kernel {x : Ax = 0}.
inline std::vector<std::vector<u64>> mat_kernel(const Field& F, Mat A) {
    int rows = static_cast<int>(A.size());
    int cols = rows ? static_cast<int>(A[0].size()) : 0;
    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (A[r][c] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(A[piv], A[rank]);
        u64 inv = F.inv(A[rank][c]);
        for (int k = c; k < cols; ++k) A[rank][k] = F.mul(A[rank][k], inv);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || A[r][c] == 0) continue;
            u64 f = A[r][c];
            for (int k = c; k < cols; ++k) A[r][k] = F.sub(A[r][k], F.mul(f, A[rank][k]));
        }
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<u64>> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<u64> v(cols, 0);
        v[c] = 1;
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = F.neg(A[r][c]);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline u64 binom_in(const Field& F, int n, int k) {
    if (k < 0 || k > n) return 0;
    // Pascal triangle in the prime subfield
    std::vector<u64> row = {1};
    for (int i = 1; i <= n; ++i) {
        std::vector<u64> next(i + 1, 0);
        next[0] = 1;
        next[i] = 1;
        for (int j = 1; j < i; ++j) next[j] = F.add(row[j - 1], row[j]);
        row = std::move(next);
    }
    return row[k];
}

// A_m[i][m-i] = (-1)^i C(m,i): the bilinear form induced by the degree-m
// rational normal curve (osculating-hyperplane map).
inline Mat a_matrix(const Field& F, int m) {
    Mat A = mat_zero(m + 1, m + 1);
    for (int i = 0; i <= m; ++i) {
        u64 c = binom_in(F, m, i);
        A[i][m - i] = (i % 2 == 0) ? c : F.neg(c);
    }
    return A;
}

inline Mat t_matrix(const Field& F, int m) {
    Mat T = mat_zero(m + 1, m + 1);
    for (int i = 0; i <= m; ++i) T[i][i] = binom_in(F, m, i);
    return T;
}

// nu_m(s,t) = (s^m, s^{m-1} t, ..., t^m).
inline std::vector<u64> veronese(const Field& F, u64 s, u64 t, int m) {
    std::vector<u64> v(m + 1);
    for (int i = 0; i <= m; ++i) {
        u64 x = 1;
        for (int k = 0; k < m - i; ++k) x = F.mul(x, s);
        for (int k = 0; k < i; ++k) x = F.mul(x, t);
        v[i] = x;
    }
    return v;
}

// g^[m], defined by nu_m(g v) = g^[m] nu_m(v): row j holds the coefficients
// of (as+bt)^{m-j} (cs+dt)^j on the monomials s^{m-k} t^k.
inline Mat dm_matrix(const Field& F, const Pgl2& g, int m) {
    Mat M = mat_zero(m + 1, m + 1);
    for (int j = 0; j <= m; ++j) {
        std::vector<u64> p1(m - j + 1), p2(j + 1);
        for (int i = 0; i <= m - j; ++i) {
            u64 c = binom_in(F, m - j, i);
            for (int k = 0; k < m - j - i; ++k) c = F.mul(c, g.a);
            for (int k = 0; k < i; ++k) c = F.mul(c, g.b);
            p1[i] = c;
        }
        for (int i = 0; i <= j; ++i) {
            u64 c = binom_in(F, j, i);
            for (int k = 0; k < j - i; ++k) c = F.mul(c, g.c);
            for (int k = 0; k < i; ++k) c = F.mul(c, g.d);
            p2[i] = c;
        }
        for (int i1 = 0; i1 <= m - j; ++i1)
            for (int i2 = 0; i2 <= j; ++i2)
                M[j][i1 + i2] = F.add(M[j][i1 + i2], F.mul(p1[i1], p2[i2]));
    }
    return M;
}

// g^m on Sym^m V: column i holds the expansion of (a e1 + c e2)^{m-i}
// (b e1 + d e2)^i, the symmetric power of the column action on V. This is
// dm_matrix of the transposed matrix, transposed back; no renormalization,
// since the Hom-space equations are not scale-invariant.
inline Mat symm_matrix(const Field& F, const Pgl2& g, int m) {
    Pgl2 gt;
    gt.F = g.F;
    gt.a = g.a;
    gt.b = g.c;
    gt.c = g.b;
    gt.d = g.d;
    gt.det = g.det;
    Mat G = dm_matrix(F, gt, m);
    Mat T = mat_zero(m + 1, m + 1);
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= m; ++j) T[i][j] = G[j][i];
    return T;
}

// g_m on Sym^m(V*): f -> det(g)^{-m} f(dX - bY, aY - cX) in the basis
// X^{m-i} Y^i.
inline Mat symdual_matrix(const Field& F, const Pgl2& g, int m) {
    Mat M = mat_zero(m + 1, m + 1);
    u64 dinv = F.inv(g.det);
    u64 s = 1;
    for (int k = 0; k < m; ++k) s = F.mul(s, dinv);
    for (int col = 0; col <= m; ++col) {
        std::vector<u64> plain(m + 1, 0);
        plain[m - col] = 1; // X^{m-col} Y^col
        auto img = form_substitute(F, plain, g);
        for (int row = 0; row <= m; ++row) M[row][col] = F.mul(img[m - row], s);
    }
    return M;
}

// The three generators used everywhere in this module: diag(1, gamma),
// the antidiagonal swap, and the lower unitriangular.
inline std::vector<Pgl2> gl2_generators(const Field& F) {
    return {make_pgl2(F, 1, 0, 0, F.generator()), make_pgl2(F, 0, 1, 1, 0), make_pgl2(F, 1, 0, 1, 1)};
}

inline void require_assumption(const Field& F, int m) {
    require(m >= 1, "bad_degree", "m must be positive");
    require(static_cast<u64>(m) + 2 <= F.q(), "assumption_violated",
            "need m + 2 <= q for a finite field");
}

inline bool binomials_nonzero(const Field& F, int m) {
    require_assumption(F, m);
    for (int i = 0; i <= m; ++i)
        if (binom_in(F, m, i) == 0) return false;
    return true;
}

// m+1 = p^a b with gcd(b, p) = 1; the arithmetic condition is b < p.
inline bool condition_arith(int m, u64 p) {
    u64 b = static_cast<u64>(m) + 1;
    while (b % p == 0) b /= p;
    return b < p;
}

// Dimension of the intersection of all osculating hyperplanes of C_m(F_q),
// computed two ways: as the kernel of A_m and by stacking the hyperplane
// coefficient vectors P_(s,t) over all of P^1(F_q). The two must agree.
inline int osculating_intersection_dim(const Field& F, int m) {
    require_assumption(F, m);
    int dim_am = m + 1 - mat_rank(F, a_matrix(F, m));
    Mat rows;
    auto add_row = [&](u64 s, u64 t) {
        std::vector<u64> row(m + 1);
        for (int i = 0; i <= m; ++i) {
            u64 c = binom_in(F, m, i);
            if (i % 2) c = F.neg(c);
            u64 tp = 1;
            for (int k = 0; k < m - i; ++k) tp = F.mul(tp, t);
            for (int k = 0; k < i; ++k) tp = F.mul(tp, s);
            row[i] = F.mul(c, tp);
        }
        rows.push_back(std::move(row));
    };
    add_row(0, 1);
    for (u64 u = 0; u < F.q(); ++u) add_row(1, u);
    int dim_direct = m + 1 - mat_rank(F, rows);
    require(dim_am == dim_direct, "appendix_mismatch",
            "kernel of A_m disagrees with the direct hyperplane intersection");
    return dim_am;
}

// Irreducibility of D_mV over GL2(F_q), via the echelon reduction: it
// suffices to rule out invariant coordinate subspaces under the swap and
// the lower unitriangular (diag matrices act diagonally here).
inline bool is_irreducible_DmV(const Field& F, int m) {
    require_assumption(F, m);
    std::vector<Mat> gens;
    for (auto& g : gl2_generators(F)) gens.push_back(dm_matrix(F, g, m));
    int n = m + 1;
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        bool invariant = true;
        for (const Mat& M : gens) {
            for (int j = 0; j < n && invariant; ++j) {
                if (!(mask >> j & 1)) continue;
                for (int i = 0; i < n; ++i) {
                    if ((mask >> i & 1)) continue;
                    if (M[i][j] != 0) { invariant = false; break; }
                }
            }
            if (!invariant) break;
        }
        if (invariant) return false;
    }
    return true;
}

// Spot check backing the coordinate-subspace reduction: random subspaces of
// every intermediate dimension, none of which should be invariant when the
// binomials are nonzero. Returns the number of invariant subspaces found.
inline int random_invariant_subspaces(const Field& F, int m, int trials, u64 seed) {
    require_assumption(F, m);
    std::mt19937_64 rng(seed);
    std::vector<Mat> gens;
    for (auto& g : gl2_generators(F)) gens.push_back(dm_matrix(F, g, m));
    int n = m + 1;
    int found = 0;
    for (int t = 0; t < trials; ++t) {
        int dim = 1 + static_cast<int>(rng() % static_cast<u64>(n - 1));
        Mat W;
        for (int i = 0; i < dim; ++i) {
            std::vector<u64> v(n);
            for (auto& x : v) x = rng() % F.q();
            W.push_back(std::move(v));
        }
        int r = mat_rank(F, W);
        if (r == 0 || r == n) continue;
        bool invariant = true;
        for (const Mat& M : gens) {
            Mat ext = W;
            for (const auto& v : W) {
                std::vector<u64> img(n, 0);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) img[i] = F.add(img[i], F.mul(M[i][j], v[j]));
                ext.push_back(std::move(img));
            }
            if (mat_rank(F, ext) != r) { invariant = false; break; }
        }
        if (invariant) ++found;
    }
    return found;
}

enum class HomVariant { A, T };

struct HomSpace {
    int dim = 0;
    bool spanned_by_canonical = false; // every basis vector proportional to A_m / T_m
};

// Dimension of { X : (g^[m])^t X g^[m] = det(g)^m X } (variant A) or
// { X : X g^[m] = g^m X } (variant T) over the three generators.
inline HomSpace hom_space(const Field& F, int m, HomVariant variant) {
    require_assumption(F, m);
    int n = m + 1;
    int nn = n * n;
    Mat sys;
    for (auto& g : gl2_generators(F)) {
        Mat G = dm_matrix(F, g, m);
        if (variant == HomVariant::A) {
            u64 dm = 1;
            for (int k = 0; k < m; ++k) dm = F.mul(dm, g.det);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    std::vector<u64> row(nn, 0);
                    for (int r = 0; r < n; ++r)
                        for (int s = 0; s < n; ++s)
                            row[r * n + s] = F.add(row[r * n + s], F.mul(G[r][i], G[s][j]));
                    row[i * n + j] = F.sub(row[i * n + j], dm);
                    sys.push_back(std::move(row));
                }
        } else {
            Mat H = symm_matrix(F, g, m);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    std::vector<u64> row(nn, 0);
                    for (int s = 0; s < n; ++s) row[i * n + s] = F.add(row[i * n + s], G[s][j]);
                    for (int r = 0; r < n; ++r) row[r * n + j] = F.sub(row[r * n + j], H[i][r]);
                    sys.push_back(std::move(row));
                }
        }
    }
    auto basis = mat_kernel(F, sys);
    HomSpace out;
    out.dim = static_cast<int>(basis.size());
    Mat canonical = variant == HomVariant::A ? a_matrix(F, m) : t_matrix(F, m);
    out.spanned_by_canonical = true;
    for (auto& v : basis) {
        // v must be a scalar multiple of the canonical matrix
        u64 scale = 0;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j) {
                u64 c = canonical[i][j], x = v[i * n + j];
                if (c == 0) {
                    if (x != 0) ok = false;
                } else {
                    u64 s = F.div(x, c);
                    if (scale == 0) scale = s;
                    else if (s != scale) ok = false;
                }
            }
        if (!ok || scale == 0) out.spanned_by_canonical = false;
    }
    return out;
}

struct RepCheckRow {
    int m = 0;
    u64 q = 0;
    bool binomials = false;   // (1)
    bool arith = false;       // (2)
    bool osculating = false;  // (3): trivial intersection
    bool irreducible = false; // (4)
    bool isomorphic = false;  // (5): A_m and T_m invertible
    int dim_a = 0, dim_t = 0;
    bool all_agree = false;
};

inline RepCheckRow rep_check(const Field& F, int m) {
    require_assumption(F, m);
    RepCheckRow row;
    row.m = m;
    row.q = F.q();
    row.binomials = binomials_nonzero(F, m);
    row.arith = condition_arith(m, F.characteristic());
    row.osculating = osculating_intersection_dim(F, m) == 0;
    row.irreducible = is_irreducible_DmV(F, m);
    row.isomorphic = mat_rank(F, a_matrix(F, m)) == m + 1 && mat_rank(F, t_matrix(F, m)) == m + 1;
    auto ha = hom_space(F, m, HomVariant::A);
    auto ht = hom_space(F, m, HomVariant::T);
    row.dim_a = ha.dim;
    row.dim_t = ht.dim;
    row.all_agree = row.binomials == row.arith && row.binomials == row.osculating &&
                    row.binomials == row.irreducible && row.binomials == row.isomorphic;
    return row;
}

} // namespace pgl2::rep
