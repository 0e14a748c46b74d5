#include <catch_amalgamated.hpp>

#include <random>

#include "pgl2/rep_theory.hpp"

using namespace pgl2;
using namespace pgl2::rep;

namespace {

Pgl2 random_map(const Field& F, std::mt19937_64& rng) {
    for (;;) {
        u64 a = rng() % F.q(), b = rng() % F.q(), c = rng() % F.q(), d = rng() % F.q();
        if (F.sub(F.mul(a, d), F.mul(b, c)) != 0) return make_pgl2(F, a, b, c, d);
    }
}

// The displayed 4x4 matrix induced on cubic-point coordinates.
Mat g3_closed_form(const Field& F, const Pgl2& g) {
    u64 a = g.a, b = g.b, c = g.c, d = g.d;
    auto M = [&](std::initializer_list<std::initializer_list<u64>> rows) {
        Mat out;
        for (auto& r : rows) out.emplace_back(r);
        return out;
    };
    u64 ad = F.mul(a, d), bc = F.mul(b, c);
    u64 ad2bc = F.add(ad, F.mul(2, bc)), bc2ad = F.add(bc, F.mul(2, ad));
    return M({{F.pow(a, 3), F.mul(3, F.mul(F.mul(a, a), b)), F.mul(3, F.mul(a, F.mul(b, b))),
               F.pow(b, 3)},
              {F.mul(F.mul(a, a), c), F.mul(a, ad2bc), F.mul(b, bc2ad), F.mul(F.mul(b, b), d)},
              {F.mul(a, F.mul(c, c)), F.mul(c, bc2ad), F.mul(d, ad2bc), F.mul(b, F.mul(d, d))},
              {F.pow(c, 3), F.mul(3, F.mul(F.mul(c, c), d)), F.mul(3, F.mul(c, F.mul(d, d))),
               F.pow(d, 3)}});
}

// The displayed 5x5 matrix induced on quartic-point coordinates.
Mat g4_closed_form(const Field& F, const Pgl2& g) {
    u64 a = g.a, b = g.b, c = g.c, d = g.d;
    u64 ad = F.mul(a, d), bc = F.mul(b, c);
    auto row = [&](std::initializer_list<u64> r) { return std::vector<u64>(r); };
    Mat M;
    M.push_back(row({F.pow(a, 4), F.mul(4, F.mul(F.pow(a, 3), b)),
                     F.mul(6, F.mul(F.mul(a, a), F.mul(b, b))), F.mul(4, F.mul(a, F.pow(b, 3))),
                     F.pow(b, 4)}));
    M.push_back(row({F.mul(F.pow(a, 3), c), F.mul(F.mul(a, a), F.add(ad, F.mul(3, bc))),
                     F.mul(3, F.mul(F.mul(a, b), F.add(ad, bc))),
                     F.mul(F.mul(b, b), F.add(bc, F.mul(3, ad))), F.mul(F.pow(b, 3), d)}));
    u64 adbc = F.add(ad, bc);
    M.push_back(row({F.mul(F.mul(a, a), F.mul(c, c)), F.mul(2, F.mul(F.mul(a, c), adbc)),
                     F.add(F.mul(adbc, adbc), F.mul(2, F.mul(ad, bc))),
                     F.mul(2, F.mul(F.mul(b, d), adbc)), F.mul(F.mul(d, d), F.mul(b, b))}));
    M.push_back(row({F.mul(F.pow(c, 3), a), F.mul(F.mul(c, c), F.add(bc, F.mul(3, ad))),
                     F.mul(3, F.mul(F.mul(c, d), adbc)),
                     F.mul(F.mul(d, d), F.add(ad, F.mul(3, bc))), F.mul(F.pow(d, 3), b)}));
    M.push_back(row({F.pow(c, 4), F.mul(4, F.mul(F.pow(c, 3), d)),
                     F.mul(6, F.mul(F.mul(c, c), F.mul(d, d))), F.mul(4, F.mul(c, F.pow(d, 3))),
                     F.pow(d, 4)}));
    return M;
}

} // namespace

TEST_CASE("induced matrices match the displayed closed forms") {
    FieldPtr F = make_field(13, 1);
    std::mt19937_64 rng(29);
    for (int i = 0; i < 50; ++i) {
        Pgl2 g = random_map(*F, rng);
        REQUIRE(dm_matrix(*F, g, 3) == g3_closed_form(*F, g));
        REQUIRE(dm_matrix(*F, g, 4) == g4_closed_form(*F, g));
    }
}

TEST_CASE("veronese equivariance") {
    FieldPtr F = make_field(7, 1);
    std::mt19937_64 rng(31);
    for (int m = 1; m <= 6; ++m) {
        for (int i = 0; i < 50; ++i) {
            Pgl2 g = random_map(*F, rng);
            u64 s = rng() % 7, t = rng() % 7;
            if (s == 0 && t == 0) continue;
            auto lhs = veronese(*F, F->add(F->mul(g.a, s), F->mul(g.b, t)),
                                F->add(F->mul(g.c, s), F->mul(g.d, t)), m);
            auto nu = veronese(*F, s, t, m);
            Mat G = dm_matrix(*F, g, m);
            std::vector<u64> rhs(m + 1, 0);
            for (int r = 0; r <= m; ++r)
                for (int c = 0; c <= m; ++c) rhs[r] = F->add(rhs[r], F->mul(G[r][c], nu[c]));
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("similitude law A_m g^[m] = det^m g_m A_m") {
    FieldPtr F = make_field(11, 1);
    std::mt19937_64 rng(37);
    for (int m = 1; m <= 6; ++m) {
        Mat A = a_matrix(*F, m);
        for (int i = 0; i < 100; ++i) {
            Pgl2 g = random_map(*F, rng);
            Mat lhs = mat_mul(*F, A, dm_matrix(*F, g, m));
            Mat rhs = mat_mul(*F, symdual_matrix(*F, g, m), A);
            u64 dm = 1;
            for (int k = 0; k < m; ++k) dm = F->mul(dm, g.det);
            rhs = mat_scale(*F, rhs, dm);
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("binomial and arithmetic conditions") {
    FieldPtr F25 = make_field(5, 2);
    FieldPtr F49 = make_field(7, 2);
    REQUIRE(binomials_nonzero(*F25, 4));  // row (1,4,6,4,1) mod 5
    REQUIRE(!binomials_nonzero(*F25, 5)); // C(5,1) = 5 = 0 mod 5
    REQUIRE(binomials_nonzero(*F49, 6));  // row 6 of Pascal mod 7 has no zeros
    REQUIRE(condition_arith(4, 5));       // m+1 = 5 = 5^1 * 1
    REQUIRE(!condition_arith(5, 5));      // m+1 = 6 with b = 6 >= 5
    // the finite-field assumption m + 2 <= q is enforced
    FieldPtr F5 = make_field(5, 1);
    REQUIRE_THROWS_AS(binomials_nonzero(*F5, 4), Error);
}

TEST_CASE("arithmetic condition matches binomials for many m") {
    for (u64 p : {5ull, 7ull, 11ull, 13ull}) {
        FieldPtr F = make_field(p, 2); // q = p^2 > 22 keeps the assumption valid
        for (int m = 1; m <= 20; ++m)
            REQUIRE(binomials_nonzero(*F, m) == condition_arith(m, p));
    }
}

TEST_CASE("osculating hyperplane intersection dimension") {
    FieldPtr F5 = make_field(5, 1);
    REQUIRE(osculating_intersection_dim(*F5, 3) == 0);
    // m = 4 needs q >= 6; check over F_7 instead, where C(4,i) stay nonzero
    FieldPtr F7 = make_field(7, 1);
    REQUIRE(osculating_intersection_dim(*F7, 4) == 0);
    REQUIRE(osculating_intersection_dim(*F7, 5) == 0); // row 5 mod 7 has no zeros
    // C(5,1) = 5 = 0 mod 5 makes A_5 singular over F_25
    FieldPtr F25 = make_field(5, 2);
    REQUIRE(osculating_intersection_dim(*F25, 4) == 0);
    REQUIRE(osculating_intersection_dim(*F25, 5) >= 1);
}

TEST_CASE("irreducibility of the divided power") {
    FieldPtr F7 = make_field(7, 1);
    REQUIRE(is_irreducible_DmV(*F7, 4));
    FieldPtr F25 = make_field(5, 2);
    REQUIRE(is_irreducible_DmV(*F25, 4));
    REQUIRE(!is_irreducible_DmV(*F25, 5)); // ker(A_5) is invariant
    // spot check with random non-coordinate subspaces
    REQUIRE(random_invariant_subspaces(*F7, 4, 200, 12345) == 0);
    REQUIRE(random_invariant_subspaces(*F25, 4, 200, 999) == 0);
}

TEST_CASE("hom spaces are one-dimensional and canonical") {
    FieldPtr F7 = make_field(7, 1);
    auto h3 = hom_space(*F7, 3, HomVariant::A);
    REQUIRE(h3.dim == 1);
    REQUIRE(h3.spanned_by_canonical);
    FieldPtr F5 = make_field(5, 1);
    auto t4 = hom_space(*F5, 3, HomVariant::T);
    REQUIRE(t4.dim == 1);
    REQUIRE(t4.spanned_by_canonical);
    for (u64 q : {5ull, 7ull, 13ull}) {
        FieldPtr F = make_field(q, 1);
        for (int m = 1; m <= 6; ++m) {
            if (static_cast<u64>(m) + 2 > q) continue;
            auto ha = hom_space(*F, m, HomVariant::A);
            auto ht = hom_space(*F, m, HomVariant::T);
            REQUIRE(ha.dim == 1);
            REQUIRE(ht.dim == 1);
            REQUIRE(ha.spanned_by_canonical);
            REQUIRE(ht.spanned_by_canonical);
        }
    }
}

TEST_CASE("full equivalence grid") {
    for (u64 q : {5ull, 7ull, 13ull, 25ull}) {
        auto fac = factorize_u64(q);
        FieldPtr F = make_field(fac.begin()->first, fac.begin()->second);
        for (int m = 1; m <= 8; ++m) {
            if (static_cast<u64>(m) + 2 > q) continue;
            auto row = rep_check(*F, m);
            INFO("m=" << m << " q=" << q);
            REQUIRE(row.all_agree);
            if (m <= 6) {
                REQUIRE(row.dim_a == 1);
                REQUIRE(row.dim_t == 1);
            }
        }
    }
}
