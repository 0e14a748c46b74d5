#include <catch_amalgamated.hpp>

#include <map>

#include "pgl2/census.hpp"

using namespace pgl2;

TEST_CASE("verification passes at q = 5") {
    FieldPtr F = make_field(5, 1);
    VerifyOptions opt;
    opt.nthreads = 2;
    VerificationReport R = verify_tables(F, opt);
    for (auto& c : R.checks) {
        INFO(c.name << " expected=" << c.expected << " actual=" << c.actual);
        CHECK(c.pass);
    }
    REQUIRE(R.passed());
    // 11 orbits with nonzero discriminant plus the 6 degenerate ones
    REQUIRE(R.quartics.orbits.size() == 17);
    // 6 generic line orbits: two of size |G| and four of size |G|/2
    std::map<u64, int> generic;
    for (auto& o : R.lines.orbits)
        if (o.label.rfind("gen:", 0) == 0) generic[o.size]++;
    REQUIRE(generic == std::map<u64, int>{{120, 2}, {60, 4}});
    REQUIRE(R.cubics.orbits.size() == 5);
}

TEST_CASE("verification passes at q = 7") {
    FieldPtr F = make_field(7, 1);
    VerificationReport R = verify_tables(F, {});
    REQUIRE(R.passed());
    u64 nondeg = 0, generic = 0, generic_total = 0;
    for (auto& o : R.quartics.orbits)
        if (o.label.rfind("d0:", 0) != 0) ++nondeg;
    for (auto& o : R.lines.orbits)
        if (o.label.rfind("gen:", 0) == 0) {
            ++generic;
            generic_total += o.size;
        }
    REQUIRE(nondeg == 17); // 2q + 2 + mu with mu = 1
    REQUIRE(generic == 12);
    REQUIRE(generic_total == 2016);
}

TEST_CASE("census representatives are canonical minima and labels are unique") {
    FieldPtr F = make_field(5, 1);
    Tower T = Tower::make(F);
    OrbitCensus C = census_quartics(T, 1);
    REQUIRE(C.problems.empty());
    std::map<std::string, int> labels;
    u64 prev_key = 0;
    bool first = true;
    for (auto& o : C.orbits) {
        labels[o.label]++;
        u64 key = 0;
        for (u64 c : o.rep) key = key * 5 + c;
        if (!first) REQUIRE(key > prev_key);
        prev_key = key;
        first = false;
    }
    for (auto& [lbl, cnt] : labels) REQUIRE(cnt == 1);
}

TEST_CASE("generic non-self-dual orbits pair up under the star") {
    FieldPtr F = make_field(7, 1);
    Tower T = Tower::make(F);
    OrbitCensus C = census_lines(T, 2);
    REQUIRE(C.problems.empty());
    std::map<std::string, std::vector<u64>> by_label;
    for (auto& o : C.orbits) by_label[o.label] = o.rep;
    for (auto& o : C.orbits) {
        if (o.label.rfind("gen:", 0) != 0) continue;
        Line L = line_from_plucker(*F, {o.rep[0], o.rep[1], o.rep[2], o.rep[3], o.rep[4],
                                        o.rep[5]});
        if (o.self_dual) continue;
        // the dual of a "+" orbit member classifies into the "-" partner
        std::string partner = o.label;
        partner.back() = partner.back() == '+' ? '-' : '+';
        REQUIRE(by_label.count(partner) == 1);
        LineClass lc = classify_line(T, hodge_star(L));
        REQUIRE(lc.label == partner);
    }
}

TEST_CASE("reports are deterministic across thread counts") {
    FieldPtr F = make_field(5, 1);
    VerifyOptions a, b;
    a.nthreads = 1;
    b.nthreads = 4;
    std::string ra = render_report(verify_tables(F, a));
    std::string rb = render_report(verify_tables(F, b));
    REQUIRE(ra == rb);
    std::string rc = render_report(verify_tables(F, a));
    REQUIRE(ra == rc);
}

TEST_CASE("sweep records unsupported fields without failing the others") {
    VerifyOptions opt;
    auto reports = sweep({5, 9, 8}, 2, opt);
    REQUIRE(reports.size() == 3);
    REQUIRE(reports[0].passed());
    REQUIRE(!reports[1].error.empty()); // characteristic 3
    REQUIRE(!reports[2].error.empty()); // characteristic 2
    REQUIRE(render_report(reports[1]).find("unsupported") != std::string::npos);
    // determinism across parallelism
    auto again = sweep({5, 9, 8}, 1, opt);
    for (int i = 0; i < 3; ++i)
        REQUIRE(render_report(reports[i]) == render_report(again[i]));
}

TEST_CASE("census rejects fields beyond the bound") {
    FieldPtr F = make_field(37, 1);
    VerifyOptions opt;
    opt.census_bound = 31;
    VerificationReport R = verify_tables(F, opt);
    REQUIRE(!R.error.empty());
}
