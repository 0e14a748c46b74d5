// Acceptance suite: runs each verification criterion at its stated field
// sizes and tolerances (all exact) and prints one pass/fail line per
// criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "pgl2/census.hpp"

using namespace pgl2;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, const std::function<void()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
        body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (error.empty()) {
        std::cout << "[PASS] criterion " << number << ": " << name << " (" << ms << " ms)\n";
    } else {
        ++g_failures;
        std::cout << "[FAIL] criterion " << number << ": " << name << " (" << ms
                  << " ms): " << error << "\n";
    }
    std::cout.flush();
}

void expect(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

void expect_eq(u64 a, u64 b, const std::string& msg) {
    if (a != b)
        throw std::runtime_error(msg + " (expected " + std::to_string(a) + ", got " +
                                 std::to_string(b) + ")");
}

Pgl2 random_map(const Field& F, std::mt19937_64& rng) {
    for (;;) {
        u64 a = rng() % F.q(), b = rng() % F.q(), c = rng() % F.q(), d = rng() % F.q();
        if (F.sub(F.mul(a, d), F.mul(b, c)) != 0) return make_pgl2(F, a, b, c, d);
    }
}

Quartic random_quartic(const Field& F, std::mt19937_64& rng) {
    for (;;) {
        std::array<u64, 5> z{};
        bool nz = false;
        for (auto& c : z) {
            c = rng() % F.q();
            nz = nz || c != 0;
        }
        if (nz) return quartic_from_z(F, z);
    }
}

std::vector<Line> all_lines(const Field& F) {
    std::vector<Line> out;
    u64 q = F.q();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            std::vector<int> free1, free2;
            for (int c = i + 1; c < 4; ++c)
                if (c != j) free1.push_back(c);
            for (int c = j + 1; c < 4; ++c) free2.push_back(c);
            u64 n1 = 1, n2 = 1;
            for (size_t t = 0; t < free1.size(); ++t) n1 *= q;
            for (size_t t = 0; t < free2.size(); ++t) n2 *= q;
            for (u64 m1 = 0; m1 < n1; ++m1)
                for (u64 m2 = 0; m2 < n2; ++m2) {
                    std::array<u64, 4> r1{}, r2{};
                    r1[i] = 1;
                    r2[j] = 1;
                    u64 v = m1;
                    for (int c : free1) {
                        r1[c] = v % q;
                        v /= q;
                    }
                    v = m2;
                    for (int c : free2) {
                        r2[c] = v % q;
                        v /= q;
                    }
                    out.push_back(line_through(point3(F, r1), point3(F, r2)));
                }
        }
    return out;
}

Line random_line(const Field& F, std::mt19937_64& rng) {
    for (;;) {
        std::array<u64, 4> a{}, b{};
        for (auto& x : a) x = rng() % F.q();
        for (auto& x : b) x = rng() % F.q();
        if (!(a[0] || a[1] || a[2] || a[3]) || !(b[0] || b[1] || b[2] || b[3])) continue;
        try {
            return line_through(point3(F, a), point3(F, b));
        } catch (const Error&) {
        }
    }
}

FieldPtr field_q(u64 q) {
    auto fac = factorize_u64(q);
    return make_field(fac.begin()->first, static_cast<unsigned>(fac.begin()->second));
}

int nthreads() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// ---------------------------------------------------------------------------

void criterion1_quartic_census() {
    std::map<u64, u64> expected_orbits = {{5, 11}, {7, 17}, {11, 23}, {13, 29}, {25, 53}};
    for (u64 q : {5ull, 7ull, 11ull, 13ull, 25ull}) {
        FieldPtr F = field_q(q);
        Tower T = Tower::make(F);
        OrbitCensus C = census_quartics(T, nthreads(), q <= 13);
        expect(C.problems.empty(), "census inconsistencies at q=" + std::to_string(q));
        u64 order = T.group_order();
        int mu = mu_of(*F);
        JSets J = j_sets(*F);
        u64 j1728 = F->from_int(1728);
        u64 nondeg = 0, total = 0;
        std::map<std::pair<std::string, u64>, u64> cells;
        for (auto& o : C.orbits) {
            if (o.label.rfind("d0:", 0) == 0) continue;
            ++nondeg;
            total += o.size;
            Quartic f = quartic_from_z(*F, {o.rep[0], o.rep[1], o.rep[2], o.rep[3], o.rep[4]});
            u64 j = j_invariant(f);
            std::string row = "J1";
            if (j == 0) row = "j0";
            else if (j == j1728) row = "j1728";
            else {
                for (u64 r : J.J4)
                    if (r == j) row = "J4";
                for (u64 r : J.J2)
                    if (r == j) row = "J2";
            }
            cells[{row, o.size}]++;
        }
        expect_eq(expected_orbits[q], nondeg, "orbit count at q=" + std::to_string(q));
        expect_eq(q * q * q * q - q * q, total, "size sum at q=" + std::to_string(q));
        std::map<std::pair<std::string, u64>, u64> want;
        want[{"J4", order / 4}] = 4 * J.J4.size();
        want[{"J2", order / 2}] = 2 * J.J2.size();
        want[{"J1", order}] = J.J1.size();
        want[{"j1728", order / 4}] = 3;
        want[{"j1728", order / 8}] = 2;
        if (mu == -1) want[{"j0", order / 2}] = 2;
        if (mu == 1) {
            want[{"j0", order / 3}] = 2;
            want[{"j0", order / 4}] = 1;
            want[{"j0", order / 12}] = 1;
        }
        for (auto& [k, v] : want) {
            if (v == 0) continue;
            expect(cells.count(k) && cells[k] == v,
                   "table cell " + k.first + "/" + std::to_string(k.second) + " at q=" +
                       std::to_string(q));
        }
        for (auto& [k, v] : cells)
            expect(want.count(k) && want[k] == v,
                   "unexpected table cell " + k.first + "/" + std::to_string(k.second) +
                       " at q=" + std::to_string(q));
    }
}

void criterion2_degenerate_census() {
    for (u64 q : {5ull, 7ull, 11ull, 13ull}) {
        FieldPtr F = field_q(q);
        Tower T = Tower::make(F);
        OrbitCensus C = census_quartics(T, nthreads(), false);
        std::multiset<u64> sizes;
        u64 count = 0;
        for (auto& o : C.orbits)
            if (o.label.rfind("d0:", 0) == 0) {
                sizes.insert(o.size);
                ++count;
            }
        expect_eq(6, count, "degenerate orbit count at q=" + std::to_string(q));
        std::multiset<u64> want = {q + 1, q * (q + 1), q * (q + 1) / 2, q * (q - 1) / 2,
                                   (q * q * q - q) / 2, (q * q * q - q) / 2};
        expect(sizes == want, "degenerate orbit sizes at q=" + std::to_string(q));
    }
}

void criterion3_line_census() {
    std::map<u64, u64> expected_generic = {{5, 6}, {7, 12}, {11, 18}, {13, 24}};
    for (u64 q : {5ull, 7ull, 11ull, 13ull}) {
        FieldPtr F = field_q(q);
        Tower T = Tower::make(F);
        OrbitCensus C = census_lines(T, nthreads(), true);
        expect(C.problems.empty(), "line census inconsistencies at q=" + std::to_string(q));
        u64 order = T.group_order();
        int mu = mu_of(*F);
        std::map<std::string, u64> special;
        for (auto& o : C.orbits)
            if (o.label.rfind("gen:", 0) != 0) special[o.label] = o.size;
        std::map<std::string, u64> special_want = {
            {"O2", q + 1},           {"O4", q * (q + 1)},
            {"O1", q * (q + 1) / 2}, {"O1d", q * (q + 1) / 2},
            {"O3", q * (q - 1) / 2}, {"O3d", q * (q - 1) / 2},
            {"O51", (q * q * q - q) / 2}, {"O51d", (q * q * q - q) / 2},
            {"O52", (q * q * q - q) / 2}, {"O52d", (q * q * q - q) / 2}};
        expect(special == special_want, "special line orbits at q=" + std::to_string(q));
        std::map<u64, u64> bysize;
        u64 ngen = 0, sd_quarter = 0, quarter = 0;
        u64 j1728 = F->from_int(1728);
        for (auto& o : C.orbits) {
            if (o.label.rfind("gen:", 0) != 0) continue;
            ++ngen;
            bysize[o.size]++;
            Line L = line_from_plucker(
                *F, {o.rep[0], o.rep[1], o.rep[2], o.rep[3], o.rep[4], o.rep[5]});
            Quartic f = pi_of_line(L);
            if (discriminant(f) != 0 && j_invariant(f) == j1728 && o.size == order / 4) {
                ++quarter;
                if (o.self_dual) ++sd_quarter;
            }
        }
        expect_eq(expected_generic[q], ngen, "generic orbit count at q=" + std::to_string(q));
        std::map<u64, u64> want;
        want[order] = (q - mu) / 3;
        want[order / 2] = q - 1;
        if (mu == 1) {
            want[order / 3] = 2;
            want[order / 12] = 1;
        }
        u64 quarter_cnt = mu == 1 ? (2 * q - 11) / 3 : (2 * q - 10) / 3;
        if (quarter_cnt) want[order / 4] = quarter_cnt;
        for (auto& [k, v] : want)
            expect(bysize.count(k) && bysize[k] == v,
                   "generic size column |G|/" + std::to_string(order / k) + " at q=" +
                       std::to_string(q));
        for (auto& [k, v] : bysize)
            expect(want.count(k) && want[k] == v,
                   "unexpected generic size " + std::to_string(k) + " at q=" + std::to_string(q));
        if (q == 13) {
            expect_eq(4, quarter, "j=1728 quarter-size orbits at q=13");
            expect_eq(2, sd_quarter, "self-dual j=1728 quarter-size orbits at q=13");
        }
    }
}

void criterion4_representatives() {
    for (u64 q : {5ull, 7ull, 11ull, 13ull}) {
        FieldPtr F = field_q(q);
        Tower T = Tower::make(F);
        for (const std::string& label : quartic_orbit_labels(T)) {
            Quartic f = representative(T, label);
            QuarticClass qc = classify(T, f);
            expect(qc.label == label, "quartic round trip failed for " + label);
            StabilizerInfo st = quartic_stabilizer_scan(T, f);
            expect_eq(qc.stab_order, st.elements.size(), "stabilizer order for " + label);
            if (!qc.disc_zero)
                expect(st.label == qc.stab_label,
                       "stabilizer type for " + label + ": scan found " + st.label);
        }
        for (const std::string& label : line_orbit_labels(T)) {
            if (label.rfind("gen:", 0) != 0) continue;
            Line L = line_representative(T, label);
            LineClass lc = classify_line(T, L);
            expect(lc.label == label, "line round trip failed for " + label);
            expect(lc.generic, "representative not generic for " + label);
            u64 stab = 0;
            for (const Pgl2& g : T.group())
                if (act_line(g, L) == L) ++stab;
            expect_eq(lc.stab_order, stab, "line stabilizer order for " + label);
        }
    }
}

void criterion5_parameter_sets() {
    for (u64 q = 5; q <= 101; ++q) {
        auto fac = factorize_u64(q);
        if (fac.size() != 1) continue;
        u64 p = fac.begin()->first;
        if (p == 2 || p == 3) continue;
        FieldPtr F = make_field(p, static_cast<unsigned>(fac.begin()->second));
        int mu = mu_of(*F);
        JSets J = j_sets(*F);
        JSets Jp = j_plus_sets(*F);
        expect_eq((q - mu) / 3, J.J1.size(), "J1 size at q=" + std::to_string(q));
        expect_eq((q - 2 + mu) / 2, J.J2.size(), "J2 size at q=" + std::to_string(q));
        expect_eq((q - 6 - mu) / 6, J.J4.size(), "J4 size at q=" + std::to_string(q));
        expect_eq((q - mu) / 6, Jp.J1.size(), "J1+ size at q=" + std::to_string(q));
        u64 ell = q % 12 == 1 ? 13 : q % 12;
        expect_eq((q - ell) / 12, Jp.J4.size(), "J4+ size at q=" + std::to_string(q));
        u64 j2p = q % 12 == 1 ? (q - 1) / 4 : (q % 12 == 5 ? (q - 5) / 4 : (q - 3) / 4);
        expect_eq(j2p, Jp.J2.size(), "J2+ size at q=" + std::to_string(q));
    }
}

void criterion6_identities() {
    for (u64 q : {5ull, 7ull, 13ull}) {
        FieldPtr F = field_q(q);
        Tower T = Tower::make(F);
        std::mt19937_64 rng(q * 1000 + 9);
        for (int i = 0; i < 200; ++i) {
            Quartic f = random_quartic(*F, rng);
            Pgl2 g = random_map(*F, rng);
            Quartic gf = act_linear(g, f);
            expect(F->mul(invariant_I(gf), F->pow(g.det, 4)) == invariant_I(f),
                   "I weight law failed");
            expect(F->mul(invariant_J(gf), F->pow(g.det, 6)) == invariant_J(f),
                   "J weight law failed");
            u64 I = invariant_I(f), Jv = invariant_J(f);
            expect(discriminant(f) == F->sub(F->pow(I, 3), F->mul(Jv, Jv)),
                   "discriminant identity failed");
        }
        for (int i = 0; i < 300; ++i) {
            Line L = random_line(*F, rng);
            Pgl2 g = random_map(*F, rng);
            expect(same_orbit_point(pi_of_line(act_line(g, L)), act(g, pi_of_line(L))),
                   "pi equivariance failed");
            expect(act_line(g, hodge_star(L)) == hodge_star(act_line(g, L)),
                   "star equivariance failed");
        }
        int done = 0;
        while (done < 200) {
            u64 u1 = rng() % q, u2 = rng() % q, v1 = rng() % q, v2 = rng() % q;
            std::set<u64> pts = {u1, u2, v1, v2};
            if (pts.size() != 4) continue;
            Quadratic qa = {1, F->neg(F->add(u1, u2)), F->mul(u1, u2)};
            Quadratic qb = {1, F->neg(F->add(v1, v2)), F->mul(v1, v2)};
            u64 lam = cross_ratio(proj_value(*F, u1), proj_value(*F, u2), proj_value(*F, v1),
                                  proj_value(*F, v2));
            u64 lhs = F->mul(F->from_int(36), invariant_I(mul_quadratics(*F, qa, qb)));
            u64 rhs =
                F->mul(F->sub(F->add(lam, F->inv(lam)), 1), resultant_quadratics(*F, qa, qb));
            expect(lhs == rhs, "resultant identity failed");
            ++done;
        }
        done = 0;
        while (done < 6) {
            Quartic f = random_quartic(*F, rng);
            if (discriminant(f) == 0) continue;
            u64 I = invariant_I(f);
            if (I == 0 || !F->is_square(I)) continue;
            Line L = lift(*F, f)[0];
            RestrictedOrdering ro = restricted_ordering(T, f);
            StabilizerInfo st = quartic_stabilizer_scan(T, f);
            for (const Pgl2& g : st.elements) {
                auto sigma = root_permutation(g, ro);
                Line img = act_line(g, L);
                bool swaps = img == hodge_star(L);
                if (!swaps) expect(img == L, "stabilizer left the fiber");
                expect(swaps == (perm_sign(sigma) == -1), "sign criterion failed");
            }
            ++done;
        }
    }
    FieldPtr F = field_q(5);
    for (const Line& L : all_lines(*F)) {
        auto z = z_coords(L);
        Quartic f = pi_of_line(L);
        expect(F->mul(z[5], z[5]) == invariant_I(f), "z5^2 = I failed");
        expect(meets_tangent(L, 0, 1) == (quartic_eval(f, 0, 1) == 0), "incidence failed at oo");
        for (u64 t = 0; t < 5; ++t)
            expect(meets_tangent(L, 1, t) == (quartic_eval(f, 1, t) == 0), "incidence failed");
    }
}

void criterion7_appendix_grid() {
    for (u64 q : {5ull, 7ull, 13ull, 25ull}) {
        FieldPtr F = field_q(q);
        for (int m = 1; m <= 8; ++m) {
            if (static_cast<u64>(m) + 2 > q) continue;
            auto row = rep::rep_check(*F, m);
            expect(row.all_agree,
                   "conditions disagree at m=" + std::to_string(m) + " q=" + std::to_string(q));
            if (m <= 6)
                expect(row.dim_a == 1 && row.dim_t == 1,
                       "hom dimension != 1 at m=" + std::to_string(m) + " q=" +
                           std::to_string(q));
        }
    }
}

void criterion8_determinism() {
    FieldPtr F = field_q(7);
    VerifyOptions one, many;
    one.nthreads = 1;
    many.nthreads = 8;
    std::string a = render_report(verify_tables(F, one));
    std::string b = render_report(verify_tables(F, many));
    std::string c = render_report(verify_tables(F, one));
    expect(a == b && a == c, "verify reports differ across runs or thread counts");
    auto r1 = sweep({5, 7}, 1, one);
    auto r8 = sweep({5, 7}, 8, many);
    expect(r1.size() == r8.size(), "sweep result count differs");
    for (size_t i = 0; i < r1.size(); ++i)
        expect(render_report(r1[i]) == render_report(r8[i]),
               "sweep reports differ across parallelism");
}

} // namespace

int main() {
    criterion(1, "quartic census matches the nonzero-discriminant orbit table, q in {5,7,11,13,25}",
              criterion1_quartic_census);
    criterion(2, "degenerate quartic census: 6 orbits with the stated sizes, q in {5,7,11,13}",
              criterion2_degenerate_census);
    criterion(3, "line census matches the generic orbit table and special orbit sizes, q in {5,7,11,13}",
              criterion3_line_census);
    criterion(4, "representative round trips with stabilizers, q in {5,7,11,13}",
              criterion4_representatives);
    criterion(5, "J_i and J_i+ set sizes for every admissible q <= 101", criterion5_parameter_sets);
    criterion(6, "identity suite (weight laws, equivariance, resultant, sign criterion)",
              criterion6_identities);
    criterion(7, "divided-power equivalence grid and hom dimensions", criterion7_appendix_grid);
    criterion(8, "byte-identical reports across runs and parallelism", criterion8_determinism);
    if (g_failures) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
