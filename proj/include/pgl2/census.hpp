#pragma once

// Exhaustive orbit enumeration over the projective spaces of quartic forms,
// cubic forms and the line set of PG(3,q), plus the verification harness
// that compares every census against the closed-form orbit tables.
//
// Orbits are computed as connected components of the successor graph under
// the three generators {t -> t+1, t -> gamma t, t -> 1/t}: successor arrays
// are filled (chunk-parallel, content independent of scheduling) and then a
// single-threaded union-find pass with min-index roots merges them, so the
// partition and all canonical representatives are deterministic. Orbit
// labels come from the classification routines and are verified against the
// partition element by element; the tables under test are never assumed.

#include <map>
#include <sstream>
#include <thread>

#include "klein.hpp"

namespace pgl2 {

struct OrbitRecord {
    std::string label;
    u64 size = 0;
    u64 stab_order = 0;
    std::vector<u64> rep; // canonical (least) representative tuple
    bool self_dual = false; // lines only: orbit is setwise polar-self-dual
};

struct OrbitCensus {
    std::string ground; // "quartics" | "lines" | "cubics"
    u64 q = 0;
    u64 total = 0;
    std::vector<OrbitRecord> orbits;           // ordered by representative
    std::vector<std::string> problems;         // hard consistency failures
};

namespace census_detail {

// --- deterministic union-find over the sorted ground set -------------------

struct UnionFind {
    std::vector<u32> parent;
    explicit UnionFind(size_t n) : parent(n) {
        for (size_t i = 0; i < n; ++i) parent[i] = static_cast<u32>(i);
    }
    u32 find(u32 x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(u32 a, u32 b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) parent[b] = a;
        else parent[a] = b;
    }
    void flatten() {
        for (size_t i = 0; i < parent.size(); ++i) parent[i] = find(static_cast<u32>(i));
    }
};

template <size_t N>
u64 pack(const std::array<u64, N>& t, u64 base) {
    u64 key = 0;
    for (size_t i = 0; i < N; ++i) key = key * base + t[i];
    return key;
}

template <size_t N>
std::array<u64, N> unpack(u64 key, u64 base) {
    std::array<u64, N> t{};
    for (size_t i = N; i-- > 0;) {
        t[i] = key % base;
        key /= base;
    }
    return t;
}

template <size_t N>
std::array<u64, N> normalize_tuple(const Field& F, std::array<u64, N> t) {
    for (size_t i = 0; i < N; ++i) {
        if (t[i] != 0) {
            if (t[i] != 1) {
                u64 s = F.inv(t[i]);
                for (auto& c : t) c = F.mul(c, s);
            }
            return t;
        }
    }
    fail("zero_tuple", "zero tuple in projective ground set");
}

inline size_t index_of(const std::vector<u64>& keys, u64 key) {
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    require(it != keys.end() && *it == key, "census_internal", "successor left the ground set");
    return static_cast<size_t>(it - keys.begin());
}

// Partition of the sorted key set under nsucc successor maps.
template <class SuccFn>
UnionFind partition(const std::vector<u64>& keys, int nsucc, const SuccFn& succ, int nthreads) {
    size_t n = keys.size();
    std::vector<u32> succs(static_cast<size_t>(nsucc) * n);
    int jobs = std::max(1, nthreads);
    std::vector<std::thread> pool;
    auto work = [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i)
            for (int s = 0; s < nsucc; ++s)
                succs[s * n + i] = static_cast<u32>(index_of(keys, succ(keys[i], s)));
    };
    size_t chunk = (n + jobs - 1) / jobs;
    for (int t = 0; t < jobs; ++t) {
        size_t lo = std::min(n, t * chunk), hi = std::min(n, lo + chunk);
        if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
    UnionFind uf(n);
    for (size_t i = 0; i < n; ++i)
        for (int s = 0; s < nsucc; ++s) uf.unite(static_cast<u32>(i), succs[s * n + i]);
    uf.flatten();
    return uf;
}

struct RawOrbits {
    std::vector<u64> keys;
    std::vector<u32> root_of;        // flattened union-find parents
    std::vector<u32> orbit_index;    // per element, index into roots
    std::vector<u32> roots;          // ascending
    std::vector<u64> sizes;
};

template <class SuccFn>
RawOrbits raw_orbits(std::vector<u64> keys, int nsucc, const SuccFn& succ, int nthreads) {
    RawOrbits out;
    out.keys = std::move(keys);
    UnionFind uf = partition(out.keys, nsucc, succ, nthreads);
    out.root_of = std::move(uf.parent);
    std::vector<u32> orbit_id(out.keys.size());
    for (size_t i = 0; i < out.keys.size(); ++i) {
        u32 r = out.root_of[i];
        if (r == i) {
            orbit_id[i] = static_cast<u32>(out.roots.size());
            out.roots.push_back(static_cast<u32>(i));
            out.sizes.push_back(0);
        }
    }
    out.orbit_index.resize(out.keys.size());
    for (size_t i = 0; i < out.keys.size(); ++i) {
        u32 ix = orbit_id[out.root_of[i]];
        out.orbit_index[i] = ix;
        out.sizes[ix]++;
    }
    return out;
}

inline std::vector<Pgl2> census_generators(const Field& F) {
    return {make_pgl2(F, 1, 0, 1, 1), make_pgl2(F, 1, 0, 0, F.generator()), make_pgl2(F, 0, 1, 1, 0)};
}

} // namespace census_detail

// ---------------------------------------------------------------------------

inline u64 quartic_space_size(u64 q) { return q * q * q * q + q * q * q + q * q + q + 1; }
inline u64 line_space_size(u64 q) { return (q * q + 1) * (q * q + q + 1); }

// Exhaustive census of the projective space of quartic forms. When
// check_all_elements is set, every single form is classified and compared
// against its orbit's label (the oracle-vs-theory check).
inline OrbitCensus census_quartics(const Tower& T, int nthreads = 1,
                                   bool check_all_elements = true, u64 bound = 31) {
    const Field& F = T.F();
    require_classification_field(F);
    u64 q = F.q();
    require(q <= bound, "bound_exceeded",
            "census bound " + std::to_string(bound) + " exceeded (q = " + std::to_string(q) + ")");
    namespace cd = census_detail;
    OrbitCensus out;
    out.ground = "quartics";
    out.q = q;

    std::vector<u64> keys;
    keys.reserve(quartic_space_size(q));
    for (int lead = 4; lead >= 0; --lead) {
        std::array<u64, 5> t{};
        t[lead] = 1;
        u64 free_digits = 4 - lead;
        u64 count = 1;
        for (u64 i = 0; i < free_digits; ++i) count *= q;
        for (u64 m = 0; m < count; ++m) {
            u64 v = m;
            for (int i = 4; i > lead; --i) {
                t[i] = v % q;
                v /= q;
            }
            keys.push_back(cd::pack<5>(t, q));
        }
    }
    std::sort(keys.begin(), keys.end());
    out.total = keys.size();
    require(out.total == quartic_space_size(q), "census_internal", "quartic ground set size");

    std::vector<rep::Mat> mats;
    for (auto& g : cd::census_generators(F)) mats.push_back(rep::dm_matrix(F, g, 4));
    auto succ = [&](u64 key, int s) {
        auto z = cd::unpack<5>(key, q);
        std::array<u64, 5> zn{};
        const rep::Mat& M = mats[s];
        for (int i = 0; i < 5; ++i) {
            u64 acc = 0;
            for (int j = 0; j < 5; ++j) acc = F.add(acc, F.mul(M[i][j], z[j]));
            zn[i] = acc;
        }
        return cd::pack<5>(cd::normalize_tuple<5>(F, zn), q);
    };
    cd::RawOrbits ro = cd::raw_orbits(std::move(keys), 3, succ, nthreads);

    u64 order = T.group_order();
    for (size_t ix = 0; ix < ro.roots.size(); ++ix) {
        auto z = cd::unpack<5>(ro.keys[ro.roots[ix]], q);
        Quartic f = quartic_from_z(F, z);
        QuarticClass qc = classify(T, f);
        OrbitRecord rec;
        rec.label = qc.label;
        rec.size = ro.sizes[ix];
        rec.rep = {z.begin(), z.end()};
        if (order % rec.size != 0) {
            out.problems.push_back("orbit size " + std::to_string(rec.size) +
                                   " does not divide |G| (label " + rec.label + ")");
        } else {
            rec.stab_order = order / rec.size;
        }
        if (qc.orbit_size != rec.size)
            out.problems.push_back("label " + rec.label + ": predicted size " +
                                   std::to_string(qc.orbit_size) + " but BFS found " +
                                   std::to_string(rec.size));
        out.orbits.push_back(std::move(rec));
    }

    if (check_all_elements) {
        size_t n = ro.keys.size();
        int jobs = std::max(1, nthreads);
        size_t chunk = (n + jobs - 1) / jobs;
        std::vector<std::vector<std::string>> probs(jobs);
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) {
            size_t lo = std::min(n, t * chunk), hi = std::min(n, lo + chunk);
            if (lo >= hi) continue;
            pool.emplace_back([&, t, lo, hi] {
                for (size_t i = lo; i < hi; ++i) {
                    auto z = cd::unpack<5>(ro.keys[i], q);
                    QuarticClass qc = classify(T, quartic_from_z(F, z));
                    const std::string& want = out.orbits[ro.orbit_index[i]].label;
                    if (qc.label != want) {
                        probs[t].push_back("element " + std::to_string(ro.keys[i]) +
                                           " classifies as " + qc.label + " but lies in orbit " +
                                           want);
                        if (probs[t].size() > 5) return;
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& pv : probs)
            for (auto& s : pv) out.problems.push_back(s);
    }
    return out;
}

// Census of the projective space of binary cubic forms (y-coordinates).
inline OrbitCensus census_cubics(const Tower& T, int nthreads = 1) {
    const Field& F = T.F();
    require_classification_field(F);
    u64 q = F.q();
    namespace cd = census_detail;
    OrbitCensus out;
    out.ground = "cubics";
    out.q = q;
    std::vector<u64> keys;
    for (int lead = 3; lead >= 0; --lead) {
        std::array<u64, 4> t{};
        t[lead] = 1;
        u64 count = 1;
        for (int i = lead + 1; i <= 3; ++i) count *= q;
        for (u64 m = 0; m < count; ++m) {
            u64 v = m;
            for (int i = 3; i > lead; --i) {
                t[i] = v % q;
                v /= q;
            }
            keys.push_back(cd::pack<4>(t, q));
        }
    }
    std::sort(keys.begin(), keys.end());
    out.total = keys.size();

    std::vector<rep::Mat> mats;
    for (auto& g : cd::census_generators(F)) mats.push_back(rep::dm_matrix(F, g, 3));
    auto succ = [&](u64 key, int s) {
        auto y = cd::unpack<4>(key, q);
        std::array<u64, 4> yn{};
        const rep::Mat& M = mats[s];
        for (int i = 0; i < 4; ++i) {
            u64 acc = 0;
            for (int j = 0; j < 4; ++j) acc = F.add(acc, F.mul(M[i][j], y[j]));
            yn[i] = acc;
        }
        return cd::pack<4>(cd::normalize_tuple<4>(F, yn), q);
    };
    cd::RawOrbits ro = cd::raw_orbits(std::move(keys), 3, succ, nthreads);
    u64 order = T.group_order();
    for (size_t ix = 0; ix < ro.roots.size(); ++ix) {
        auto y = cd::unpack<4>(ro.keys[ro.roots[ix]], q);
        CubicClass cc = classify_cubic(F, cubic_from_y(F, y));
        OrbitRecord rec;
        rec.label = cc.label;
        rec.size = ro.sizes[ix];
        rec.stab_order = order % rec.size == 0 ? order / rec.size : 0;
        rec.rep = {y.begin(), y.end()};
        if (cc.orbit_size != rec.size)
            out.problems.push_back("cubic label " + rec.label + ": predicted size " +
                                   std::to_string(cc.orbit_size) + " but BFS found " +
                                   std::to_string(rec.size));
        out.orbits.push_back(std::move(rec));
    }
    return out;
}

// Census of all lines of PG(3,q).
inline OrbitCensus census_lines(const Tower& T, int nthreads = 1,
                                bool check_all_elements = true, u64 bound = 31) {
    const Field& F = T.F();
    require_classification_field(F);
    u64 q = F.q();
    require(q <= bound, "bound_exceeded",
            "census bound " + std::to_string(bound) + " exceeded (q = " + std::to_string(q) + ")");
    namespace cd = census_detail;
    OrbitCensus out;
    out.ground = "lines";
    out.q = q;

    // ground set: reduced 2x4 generator matrices, one per line
    std::vector<u64> keys;
    keys.reserve(line_space_size(q));
    auto push_line = [&](const std::array<u64, 4>& r1, const std::array<u64, 4>& r2) {
        std::array<u64, 6> p{};
        int idx = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                p[idx++] = F.sub(F.mul(r1[i], r2[j]), F.mul(r1[j], r2[i]));
        keys.push_back(cd::pack<6>(cd::normalize_tuple<6>(F, p), q));
    };
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
                    push_line(r1, r2);
                }
        }
    std::sort(keys.begin(), keys.end());
    require(keys.size() == line_space_size(q) &&
                std::adjacent_find(keys.begin(), keys.end()) == keys.end(),
            "census_internal", "line ground set enumeration");
    out.total = keys.size();

    std::vector<rep::Mat> mats;
    std::vector<u64> det2;
    for (auto& g : cd::census_generators(F)) {
        mats.push_back(rep::dm_matrix(F, g, 4));
        det2.push_back(F.mul(g.det, g.det));
    }
    u64 half = F.inv(F.from_int(2));
    u64 third = F.inv(F.from_int(3));
    u64 two = F.from_int(2), three = F.from_int(3);
    auto succ = [&](u64 key, int s) {
        auto p = cd::unpack<6>(key, q);
        u64 p03_3 = F.mul(p[2], third);
        std::array<u64, 6> z = {p[0],
                                F.mul(p[1], half),
                                F.mul(F.add(p03_3, p[3]), half),
                                F.mul(p[4], half),
                                p[5],
                                F.mul(F.sub(p03_3, p[3]), half)};
        const rep::Mat& M = mats[s];
        std::array<u64, 6> zn{};
        for (int i = 0; i < 5; ++i) {
            u64 acc = 0;
            for (int j = 0; j < 5; ++j) acc = F.add(acc, F.mul(M[i][j], z[j]));
            zn[i] = acc;
        }
        zn[5] = F.mul(det2[s], z[5]);
        std::array<u64, 6> pn = {zn[0],
                                 F.mul(two, zn[1]),
                                 F.mul(three, F.add(zn[2], zn[5])),
                                 F.sub(zn[2], zn[5]),
                                 F.mul(two, zn[3]),
                                 zn[4]};
        return cd::pack<6>(cd::normalize_tuple<6>(F, pn), q);
    };
    cd::RawOrbits ro = cd::raw_orbits(std::move(keys), 3, succ, nthreads);

    // orbit-backed resolver for the duality branch tags
    auto orbit_min = [&](const Line& L) -> std::array<u64, 6> {
        u64 key = cd::pack<6>(L.p, q);
        size_t i = cd::index_of(ro.keys, key);
        return cd::unpack<6>(ro.keys[ro.root_of[i]], q);
    };
    OrbitMinFn resolver = orbit_min;

    u64 order = T.group_order();
    for (size_t ix = 0; ix < ro.roots.size(); ++ix) {
        auto p = cd::unpack<6>(ro.keys[ro.roots[ix]], q);
        Line L = line_from_plucker(F, p);
        LineClass lc = classify_line(T, L, resolver);
        OrbitRecord rec;
        rec.label = lc.label;
        rec.size = ro.sizes[ix];
        rec.stab_order = order % rec.size == 0 ? order / rec.size : 0;
        rec.rep = {p.begin(), p.end()};
        Line D = hodge_star(L);
        rec.self_dual = orbit_min(D) == cd::unpack<6>(ro.keys[ro.roots[ix]], q);
        if (lc.orbit_size != rec.size)
            out.problems.push_back("line label " + rec.label + ": predicted size " +
                                   std::to_string(lc.orbit_size) + " but BFS found " +
                                   std::to_string(rec.size));
        if (lc.generic && rec.self_dual != (lc.dual_tag == 0))
            out.problems.push_back("line label " + rec.label +
                                   ": self-duality disagrees with the lifting rule");
        out.orbits.push_back(std::move(rec));
    }

    if (check_all_elements) {
        size_t n = ro.keys.size();
        int jobs = std::max(1, nthreads);
        size_t chunk = (n + jobs - 1) / jobs;
        std::vector<std::vector<std::string>> probs(jobs);
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) {
            size_t lo = std::min(n, t * chunk), hi = std::min(n, lo + chunk);
            if (lo >= hi) continue;
            pool.emplace_back([&, t, lo, hi] {
                for (size_t i = lo; i < hi; ++i) {
                    auto p = cd::unpack<6>(ro.keys[i], q);
                    LineClass lc = classify_line(T, line_from_plucker(F, p), resolver);
                    const std::string& want = out.orbits[ro.orbit_index[i]].label;
                    if (lc.label != want) {
                        probs[t].push_back("line " + std::to_string(ro.keys[i]) +
                                           " classifies as " + lc.label + " but lies in orbit " +
                                           want);
                        if (probs[t].size() > 5) return;
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& pv : probs)
            for (auto& s : pv) out.problems.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification against the closed-form tables.

struct CheckLine {
    std::string name;
    std::string expected, actual;
    bool pass = false;
};

struct VerificationReport {
    u64 p = 0;
    unsigned k = 0;
    u64 q = 0;
    std::string field_header;
    std::string error; // nonempty when the field is unsupported
    std::vector<CheckLine> checks;
    OrbitCensus quartics, lines, cubics;
    bool passed() const {
        if (!error.empty()) return false;
        for (auto& c : checks)
            if (!c.pass) return false;
        return quartics.problems.empty() && lines.problems.empty() && cubics.problems.empty();
    }
};

namespace census_detail {

inline void check_eq(VerificationReport& R, const std::string& name, u64 expected, u64 actual) {
    R.checks.push_back(
        {name, std::to_string(expected), std::to_string(actual), expected == actual});
}

inline void check_true(VerificationReport& R, const std::string& name, bool ok,
                       const std::string& detail = "") {
    R.checks.push_back({name, "true", ok ? "true" : ("false" + (detail.empty() ? "" : " " + detail)),
                        ok});
}

} // namespace census_detail

struct VerifyOptions {
    int nthreads = 1;
    u64 census_bound = 31; // largest q for which the exhaustive censuses run
    bool check_all_elements = true;
};

inline VerificationReport verify_tables(FieldPtr Fp, const VerifyOptions& opt = {}) {
    namespace cd = census_detail;
    VerificationReport R;
    const Field& F = *Fp;
    R.p = F.characteristic();
    R.k = F.absolute_degree();
    R.q = F.q();
    {
        std::ostringstream os;
        os << "p=" << R.p << " k=" << R.k << " q=" << R.q << " modulus=";
        const auto& mod = F.modulus();
        for (size_t i = 0; i < mod.size(); ++i) os << (i ? "," : "") << mod[i];
        if (F.characteristic() != 2) os << " gamma=" << F.generator() << " eps=" << F.nonresidue();
        if (auto w = F.cube_root_unity()) os << " omega=" << *w;
        else os << " omega=-";
        R.field_header = os.str();
    }
    try {
        require_classification_field(F);
        require(F.q() <= opt.census_bound, "bound_exceeded",
                "census bound " + std::to_string(opt.census_bound) + " exceeded");
    } catch (const Error& e) {
        R.error = std::string(e.code()) + ": " + e.what();
        return R;
    }
    u64 q = R.q;
    int mu = mu_of(F);
    u64 order = q * q * q - q;
    u64 j1728 = F.from_int(1728);
    Tower T = Tower::make(Fp);

    // --- parameter set sizes -------------------------------------------
    JSets J = j_sets(F);
    JSets Jp = j_plus_sets(F);
    cd::check_eq(R, "size(J1)", (q - mu) / 3, J.J1.size());
    cd::check_eq(R, "size(J2)", (q - 2 + mu) / 2, J.J2.size());
    cd::check_eq(R, "size(J4)", (q - 6 - mu) / 6, J.J4.size());
    cd::check_eq(R, "size(J1+)", (q - mu) / 6, Jp.J1.size());
    u64 ell = q % 12;
    if (ell == 1) ell = 13; // q = 1 mod 12 uses ell = 13 in (q - ell)/12
    cd::check_eq(R, "size(J4+)", (q - ell) / 12, Jp.J4.size());
    u64 expected_j2p = q % 12 == 1 ? (q - 1) / 4 : (q % 12 == 5 ? (q - 5) / 4 : (q - 3) / 4);
    cd::check_eq(R, "size(J2+)", expected_j2p, Jp.J2.size());
    {
        std::vector<bool> seen(q, false);
        bool disjoint = true;
        u64 members = 0;
        for (auto* v : {&J.J1, &J.J2, &J.J4})
            for (u64 r : *v) {
                if (seen[r]) disjoint = false;
                seen[r] = true;
                ++members;
            }
        cd::check_true(R, "J-sets partition F_q minus {0,1728}",
                       disjoint && members == q - 2 && !seen[0] && !seen[j1728]);
    }

    // --- cubic census ----------------------------------------------------
    R.cubics = census_cubics(T, opt.nthreads);
    {
        std::map<std::string, u64> expect = {{"c3:m3", q + 1},
                                             {"c3:m21", q * (q + 1)},
                                             {"c3:m111", (q * q * q - q) / 6},
                                             {"c3:m1c", q * (q * q - 1) / 2},
                                             {"c3:irr", (q * q * q - q) / 3}};
        cd::check_eq(R, "cubic orbit count", 5, R.cubics.orbits.size());
        std::map<std::string, u64> actual;
        for (auto& o : R.cubics.orbits) actual[o.label] += o.size;
        for (auto& [lbl, sz] : expect)
            cd::check_eq(R, "cubic orbit size " + lbl, sz, actual.count(lbl) ? actual[lbl] : 0);
    }

    // --- quartic census ----------------------------------------------------
    R.quartics = census_quartics(T, opt.nthreads, opt.check_all_elements);
    {
        u64 total = 0;
        for (auto& o : R.quartics.orbits) total += o.size;
        cd::check_eq(R, "quartic orbit sizes sum", quartic_space_size(q), total);

        std::map<std::string, u64> d0_expect = {
            {"d0:m4", q + 1},          {"d0:m31", q * (q + 1)},
            {"d0:m22", q * (q + 1) / 2}, {"d0:m22c", q * (q - 1) / 2},
            {"d0:m211", (q * q * q - q) / 2}, {"d0:m211c", (q * q * q - q) / 2}};
        u64 d0_orbits = 0, d0_total = 0;
        bool d0_sizes_ok = true;
        for (auto& o : R.quartics.orbits) {
            if (o.label.rfind("d0:", 0) != 0) continue;
            ++d0_orbits;
            d0_total += o.size;
            if (!d0_expect.count(o.label) || d0_expect[o.label] != o.size) d0_sizes_ok = false;
        }
        cd::check_eq(R, "disc-zero orbit count", 6, d0_orbits);
        cd::check_true(R, "disc-zero orbit sizes", d0_sizes_ok);
        cd::check_eq(R, "disc-zero total", q * q * q + 2 * q * q + q + 1, d0_total);
        cd::check_eq(R, "nonzero-disc size sum", q * q * q * q - q * q,
                     total - d0_total);

        // Table of orbits with nonzero discriminant: rows by the j category,
        // columns by orbit size.
        auto jrow = [&](u64 j) -> std::string {
            if (j == 0) return "j=0";
            if (j == j1728) return "j=1728";
            for (u64 r : J.J4)
                if (r == j) return "J4";
            for (u64 r : J.J2)
                if (r == j) return "J2";
            return "J1";
        };
        std::vector<u64> cols = {order, order / 2, order / 3, order / 4, order / 12, order / 8};
        std::map<std::pair<std::string, u64>, u64> cells;
        u64 nondeg_orbits = 0;
        bool col_ok = true;
        for (auto& o : R.quartics.orbits) {
            if (o.label.rfind("d0:", 0) == 0) continue;
            ++nondeg_orbits;
            Quartic f = quartic_from_z(F, {o.rep[0], o.rep[1], o.rep[2], o.rep[3], o.rep[4]});
            u64 j = j_invariant(f);
            bool found = false;
            for (u64 c : cols) found = found || c == o.size;
            if (!found) col_ok = false;
            cells[{jrow(j), o.size}]++;
        }
        cd::check_true(R, "quartic orbit sizes are |G|/{1,2,3,4,8,12}", col_ok);
        cd::check_eq(R, "quartic orbits with nonzero disc", 2 * q + 2 + mu, nondeg_orbits);
        std::map<std::pair<std::string, u64>, u64> expect;
        expect[{"J4", order / 4}] = 4 * J.J4.size();
        expect[{"J2", order / 2}] = 2 * J.J2.size();
        expect[{"J1", order}] = J.J1.size();
        expect[{"j=1728", order / 4}] = 3;
        expect[{"j=1728", order / 8}] = 2;
        if (mu == -1) expect[{"j=0", order / 2}] = 2;
        if (mu == 1) {
            expect[{"j=0", order / 3}] = 2;
            expect[{"j=0", order / 4}] = 1;
            expect[{"j=0", order / 12}] = 1;
        }
        for (auto& [key, cnt] : expect) {
            cd::check_eq(R,
                         "quartic cell " + key.first + " size=|G|/" +
                             std::to_string(order / key.second),
                         cnt, cells.count(key) ? cells[key] : 0);
        }
        for (auto& [key, cnt] : cells) {
            if (!expect.count(key))
                cd::check_true(R,
                               "unexpected quartic cell " + key.first + " size=" +
                                   std::to_string(key.second),
                               false);
        }
        // label set must match the predicted catalogue exactly
        std::vector<std::string> expect_labels = quartic_orbit_labels(T);
        std::vector<std::string> got_labels;
        for (auto& o : R.quartics.orbits) got_labels.push_back(o.label);
        std::sort(expect_labels.begin(), expect_labels.end());
        std::sort(got_labels.begin(), got_labels.end());
        cd::check_true(R, "quartic label catalogue matches census", expect_labels == got_labels);
    }

    // --- line census -------------------------------------------------------
    R.lines = census_lines(T, opt.nthreads, opt.check_all_elements);
    {
        u64 total = 0;
        for (auto& o : R.lines.orbits) total += o.size;
        cd::check_eq(R, "line orbit sizes sum", line_space_size(q), total);

        std::map<std::string, u64> special_expect = {
            {"O2", q + 1},           {"O4", q * (q + 1)},
            {"O1", q * (q + 1) / 2}, {"O1d", q * (q + 1) / 2},
            {"O3", q * (q - 1) / 2}, {"O3d", q * (q - 1) / 2},
            {"O51", (q * q * q - q) / 2}, {"O51d", (q * q * q - q) / 2},
            {"O52", (q * q * q - q) / 2}, {"O52d", (q * q * q - q) / 2}};
        u64 nspecial = 0;
        bool special_ok = true;
        for (auto& o : R.lines.orbits) {
            if (o.label.rfind("gen:", 0) == 0) continue;
            ++nspecial;
            if (!special_expect.count(o.label) || special_expect[o.label] != o.size)
                special_ok = false;
        }
        cd::check_eq(R, "special line orbit count", 10, nspecial);
        cd::check_true(R, "special line orbit sizes", special_ok);

        // generic: totals per size column, branching on q mod 6
        std::map<u64, u64> col_expect;
        col_expect[order] = (q - mu) / 3;
        col_expect[order / 2] = q - 1;
        if (mu == 1) col_expect[order / 3] = 2;
        col_expect[order / 4] = mu == 1 ? (2 * q - 11) / 3 : (2 * q - 10) / 3;
        if (mu == 1) col_expect[order / 12] = 1;
        // the two closed forms for the |G|/4 column total must coincide
        cd::check_eq(R, "|G|/4 column total, both closed forms",
                     col_expect[order / 4], (2 * q - 10 - (1 + mu) / 2) / 3);
        std::map<u64, u64> col_actual;
        u64 ngeneric = 0;
        for (auto& o : R.lines.orbits) {
            if (o.label.rfind("gen:", 0) != 0) continue;
            ++ngeneric;
            col_actual[o.size]++;
        }
        for (auto& [sz, cnt] : col_expect) {
            if (cnt == 0) continue;
            cd::check_eq(R, "generic orbits of size |G|/" + std::to_string(order / sz), cnt,
                         col_actual.count(sz) ? col_actual[sz] : 0);
        }
        for (auto& [sz, cnt] : col_actual) {
            if (!col_expect.count(sz) || col_expect[sz] == 0)
                cd::check_true(R, "unexpected generic orbit size " + std::to_string(sz), false);
        }
        cd::check_eq(R, "generic orbit count", 2 * q - 3 + mu, ngeneric);

        // fine-grained: rows by J-category of j(pi(L))
        std::map<std::pair<std::string, u64>, u64> cells;
        u64 sd_1728_quarter = 0, all_1728_quarter = 0;
        for (auto& o : R.lines.orbits) {
            if (o.label.rfind("gen:", 0) != 0) continue;
            Line L = line_from_plucker(F, {o.rep[0], o.rep[1], o.rep[2], o.rep[3], o.rep[4],
                                           o.rep[5]});
            u64 j = j_invariant(pi_of_line(L));
            std::string row;
            if (j == 0) row = "j=0";
            else if (j == j1728) {
                row = "j=1728";
                if (o.size == order / 4) {
                    ++all_1728_quarter;
                    if (o.self_dual) ++sd_1728_quarter;
                }
            } else {
                row = "J1+";
                for (u64 r : Jp.J4)
                    if (r == j) row = "J4+";
                for (u64 r : Jp.J2)
                    if (r == j) row = "J2+";
            }
            cells[{row, o.size}]++;
        }
        std::map<std::pair<std::string, u64>, u64> expect;
        expect[{"J4+", order / 4}] = 8 * Jp.J4.size();
        expect[{"J2+", order / 2}] = 4 * Jp.J2.size();
        expect[{"J1+", order}] = 2 * Jp.J1.size();
        bool sqrt3 = q % 12 == 1 || q % 12 == 11;
        if (sqrt3) expect[{"j=1728", order / 4}] = 4;
        else expect[{"j=1728", order / 2}] = 2;
        if (mu == -1) expect[{"j=0", order / 2}] = 2;
        if (mu == 1) {
            expect[{"j=0", order / 3}] = 2;
            expect[{"j=0", order / 4}] = 1;
            expect[{"j=0", order / 12}] = 1;
        }
        for (auto& [key, cnt] : expect) {
            if (cnt == 0) continue;
            cd::check_eq(R,
                         "line cell " + key.first + " size=|G|/" + std::to_string(order / key.second),
                         cnt, cells.count(key) ? cells[key] : 0);
        }
        for (auto& [key, cnt] : cells) {
            if (!expect.count(key) || expect[key] == 0)
                cd::check_true(R,
                               "unexpected line cell " + key.first + " size=" +
                                   std::to_string(key.second),
                               false);
        }
        if (sqrt3) {
            cd::check_eq(R, "self-dual among the four j=1728 |G|/4 orbits", 2, sd_1728_quarter);
            cd::check_eq(R, "j=1728 orbits of size |G|/4", 4, all_1728_quarter);
        }
        std::vector<std::string> expect_labels = line_orbit_labels(T);
        std::vector<std::string> got_labels;
        for (auto& o : R.lines.orbits) got_labels.push_back(o.label);
        std::sort(expect_labels.begin(), expect_labels.end());
        std::sort(got_labels.begin(), got_labels.end());
        cd::check_true(R, "line label catalogue matches census", expect_labels == got_labels);
    }

    cd::check_true(R, "no quartic census inconsistencies", R.quartics.problems.empty());
    cd::check_true(R, "no line census inconsistencies", R.lines.problems.empty());
    cd::check_true(R, "no cubic census inconsistencies", R.cubics.problems.empty());
    return R;
}

// ---------------------------------------------------------------------------
// Stable text rendering (golden-file friendly: fixed field order, decimal
// codes, one record per orbit).

inline std::string render_report(const VerificationReport& R) {
    std::ostringstream os;
    os << "pgl2census verification report\n";
    os << "field " << R.field_header << "\n";
    if (!R.error.empty()) {
        os << "error " << R.error << "\n";
        os << "result ERROR\n";
        return os.str();
    }
    os << "group order=" << (R.q * R.q * R.q - R.q) << "\n";
    for (auto& c : R.checks) {
        os << "check " << c.name << " expected=" << c.expected << " actual=" << c.actual << " "
           << (c.pass ? "PASS" : "FAIL") << "\n";
    }
    for (const OrbitCensus* cen : {&R.cubics, &R.quartics, &R.lines}) {
        if (cen->q == 0) continue;
        os << "census " << cen->ground << " total=" << cen->total
           << " orbits=" << cen->orbits.size() << "\n";
        for (auto& o : cen->orbits) {
            os << "orbit " << cen->ground << " label=" << o.label << " size=" << o.size
               << " stab=" << o.stab_order;
            if (cen->ground == "lines") os << " selfdual=" << (o.self_dual ? 1 : 0);
            os << " rep=";
            for (size_t i = 0; i < o.rep.size(); ++i) os << (i ? "," : "") << o.rep[i];
            os << "\n";
        }
        for (auto& p : cen->problems) os << "problem " << cen->ground << " " << p << "\n";
    }
    os << "result " << (R.passed() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

// One report per q, computed with a worker pool; report contents are
// independent of the parallelism.
inline std::vector<VerificationReport> sweep(const std::vector<u64>& qs, int jobs,
                                             const VerifyOptions& opt = {}) {
    std::vector<VerificationReport> reports(qs.size());
    std::vector<std::thread> pool;
    std::mutex mx;
    size_t next = 0;
    auto worker = [&] {
        for (;;) {
            size_t i;
            {
                std::lock_guard<std::mutex> lk(mx);
                if (next >= qs.size()) return;
                i = next++;
            }
            VerificationReport R;
            R.q = qs[i];
            try {
                auto fac = factorize_u64(qs[i]);
                require(qs[i] >= 2 && fac.size() == 1, "not_prime_power",
                        "q must be a prime power");
                u64 p = fac.begin()->first;
                unsigned k = static_cast<unsigned>(fac.begin()->second);
                FieldPtr F = make_field(p, k);
                VerifyOptions inner = opt;
                R = verify_tables(F, inner);
            } catch (const Error& e) {
                R.field_header = "q=" + std::to_string(qs[i]);
                R.error = std::string(e.code()) + ": " + e.what();
            }
            reports[i] = std::move(R);
        }
    };
    int nw = std::max(1, jobs);
    for (int t = 0; t < nw; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return reports;
}

} // namespace pgl2
