// Command-line front end: classification of binary quartic forms and of
// lines of PG(3,q) relative to the twisted cubic, orbit censuses, the
// closed-form table verification, and the divided-power representation
// checks.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 unsupported field (characteristic 2/3 or q <= 4).

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pgl2/census.hpp"

using namespace pgl2;

namespace {

std::vector<u64> split_u64s(const std::string& s) {
    std::vector<u64> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ';' || c == ' ') {
            if (!cur.empty()) out.push_back(std::stoull(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::stoull(cur));
    return out;
}

int exit_code_for(const Error& e) {
    const std::string& c = e.code();
    if (c == "unsupported_characteristic" || c == "unsupported_field") return 3;
    return 2;
}

struct Options {
    u64 p = 0;
    unsigned k = 1;
    bool structured = false;
    int jobs = 1;
};

FieldPtr open_field(const Options& o) {
    require(o.p != 0, "usage", "--p is required");
    return make_field(o.p, o.k);
}

void emit(const std::string& text, const std::string& outfile) {
    if (outfile.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(outfile, std::ios::binary);
    require(os.good(), "io_error", "cannot open output file " + outfile);
    os << text;
}

std::string field_info_text(const Field& F, bool structured) {
    std::ostringstream os;
    auto mods = [](const std::vector<u64>& m) {
        std::string s;
        for (size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
        return s;
    };
    if (structured) {
        os << "q=" << F.q() << "\n";
        os << "p=" << F.characteristic() << "\n";
        os << "k=" << F.absolute_degree() << "\n";
        os << "modulus=" << mods(F.modulus()) << "\n";
        os << "gamma=" << F.generator() << "\n";
        if (F.characteristic() != 2) os << "eps=" << F.nonresidue() << "\n";
        if (auto w = F.cube_root_unity()) os << "omega=" << *w << "\n";
        else os << "omega=-\n";
    } else {
        os << F.name() << ": q=" << F.q() << ", modulus [" << mods(F.modulus())
           << "] (little-endian over the prime field)\n";
        os << "  generator gamma = " << F.generator() << "\n";
        if (F.characteristic() != 2) os << "  non-residue eps = " << F.nonresidue() << "\n";
        if (auto w = F.cube_root_unity())
            os << "  primitive cube root of unity omega = " << *w << "\n";
        else os << "  omega: none (q != 1 mod 3)\n";
    }
    return os.str();
}

std::string tower_moduli_text(FieldPtr F) {
    std::ostringstream os;
    for (unsigned d : {2u, 3u, 4u}) {
        FieldPtr E = extend(F, d);
        os << "  relative modulus of F_q^" << d << ": [";
        const auto& m = E->modulus();
        for (size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
        os << "]\n";
    }
    return os.str();
}

std::string quartic_class_text(const Tower& T, const Quartic& f, const QuarticClass& qc,
                               bool structured) {
    std::ostringstream os;
    u64 I = invariant_I(f), J = invariant_J(f), D = discriminant(f);
    if (structured) {
        os << "label=" << qc.label << "\n";
        os << "I=" << I << "\nJ=" << J << "\ndisc=" << D << "\n";
        os << "I_square=" << (qc.I_square ? 1 : 0) << "\n";
        if (!qc.disc_zero) {
            os << "type=" << qtype_name(qc.type) << "\n";
            os << "j=" << qc.j << "\n";
        } else {
            os << "degenerate_orbit=" << qc.d0_orbit << "\n";
        }
        os << "orbit_size=" << qc.orbit_size << "\n";
        os << "stab_order=" << qc.stab_order << "\n";
        if (!qc.disc_zero) os << "stab=" << qc.stab_label << "\n";
    } else {
        os << "orbit label: " << qc.label << "\n";
        os << "  I = " << I << ", J = " << J << ", disc = " << D
           << (qc.I_square ? " (I is a square)" : " (I is a non-square)") << "\n";
        if (qc.disc_zero) {
            os << "  repeated roots: degenerate orbit " << qc.d0_orbit << " of 6\n";
        } else {
            os << "  type " << qtype_name(qc.type) << ", j = " << qc.j << ", stabilizer "
               << qc.stab_label << " (order " << qc.stab_order << ")\n";
        }
        os << "  orbit size " << qc.orbit_size << " of |G| = " << T.group_order() << "\n";
    }
    return os.str();
}

std::string census_text(const OrbitCensus& c) {
    std::ostringstream os;
    os << "census " << c.ground << " q=" << c.q << " total=" << c.total
       << " orbits=" << c.orbits.size() << "\n";
    for (auto& o : c.orbits) {
        os << "orbit " << c.ground << " label=" << o.label << " size=" << o.size
           << " stab=" << o.stab_order;
        if (c.ground == "lines") os << " selfdual=" << (o.self_dual ? 1 : 0);
        os << " rep=";
        for (size_t i = 0; i < o.rep.size(); ++i) os << (i ? "," : "") << o.rep[i];
        os << "\n";
    }
    for (auto& p : c.problems) os << "problem " << p << "\n";
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"PGL2(q)-orbit classification of binary quartic forms and of lines of PG(3,q)"};
    app.require_subcommand(1);

    Options opt;
    std::string out_path, z_arg, points_arg, plucker_arg, label_arg, qlist_arg, format;
    int m_max = 8;

    auto add_field_opts = [&](CLI::App* cmd, bool need_field = true) {
        auto* po = cmd->add_option("--p", opt.p, "field characteristic");
        cmd->add_option("--k", opt.k, "extension degree over the prime field");
        cmd->add_option("--format", format, "output format: human (default) or structured")
            ->check(CLI::IsMember({"human", "structured"}));
        if (need_field) po->required();
    };

    auto* c_field = app.add_subcommand("field", "field context commands");
    auto* c_field_info = c_field->add_subcommand("info", "canonical constants of F_q");
    add_field_opts(c_field_info);

    auto* c_form = app.add_subcommand("form", "binary quartic form commands");
    auto* c_form_classify = c_form->add_subcommand("classify", "classify a quartic form");
    add_field_opts(c_form_classify);
    c_form_classify->add_option("--z", z_arg, "coefficients z0,z1,z2,z3,z4")->required();
    auto* c_form_rep = c_form->add_subcommand("rep", "orbit representative for a label");
    add_field_opts(c_form_rep);
    c_form_rep->add_option("--label", label_arg, "orbit label")->required();
    auto* c_form_census = c_form->add_subcommand("census", "exhaustive quartic orbit census");
    add_field_opts(c_form_census);
    c_form_census->add_option("--jobs", opt.jobs, "worker threads");
    c_form_census->add_option("--out", out_path, "output file");

    auto* c_line = app.add_subcommand("line", "line-of-PG(3,q) commands");
    auto* c_line_classify = c_line->add_subcommand("classify", "classify a line");
    add_field_opts(c_line_classify);
    c_line_classify->add_option("--points", points_arg, "two generator points a,b,c,d;e,f,g,h");
    c_line_classify->add_option("--plucker", plucker_arg, "p01,p02,p03,p12,p13,p23");
    auto* c_line_rep = c_line->add_subcommand("rep", "generator matrix for a generic orbit");
    add_field_opts(c_line_rep);
    c_line_rep->add_option("--label", label_arg, "orbit label")->required();
    auto* c_line_census = c_line->add_subcommand("census", "exhaustive line orbit census");
    add_field_opts(c_line_census);
    c_line_census->add_option("--jobs", opt.jobs, "worker threads");
    c_line_census->add_option("--out", out_path, "output file");

    auto* c_verify = app.add_subcommand("verify", "verify all orbit tables at one q");
    add_field_opts(c_verify);
    c_verify->add_option("--jobs", opt.jobs, "worker threads");
    c_verify->add_option("--out", out_path, "output file");

    auto* c_repcheck = app.add_subcommand("rep-check", "divided-power representation checks");
    c_repcheck->add_option("--m-max", m_max, "largest symmetric-power degree m");
    c_repcheck->add_option("--q-list", qlist_arg, "comma-separated field sizes (default 5,7,13,25)");

    auto* c_sweep = app.add_subcommand("sweep", "verify a list of field sizes");
    c_sweep->add_option("--q-list", qlist_arg, "comma-separated field sizes")->required();
    c_sweep->add_option("--jobs", opt.jobs, "worker threads");
    c_sweep->add_option("--out", out_path, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    opt.structured = format == "structured";

    try {
        if (c_field_info->parsed()) {
            FieldPtr F = open_field(opt);
            std::string text = field_info_text(*F, opt.structured);
            if (!opt.structured) text += tower_moduli_text(F);
            emit(text, out_path);
            return 0;
        }
        if (c_form_classify->parsed()) {
            FieldPtr F = open_field(opt);
            Tower T = Tower::make(F);
            auto z = split_u64s(z_arg);
            require(z.size() == 5, "usage", "--z needs exactly five coefficients");
            for (u64 c : z) require(c < F->q(), "usage", "coefficient out of range");
            Quartic f = quartic_from_z(*F, {z[0], z[1], z[2], z[3], z[4]});
            QuarticClass qc = classify(T, f);
            emit(quartic_class_text(T, f, qc, opt.structured), out_path);
            return 0;
        }
        if (c_form_rep->parsed()) {
            FieldPtr F = open_field(opt);
            Tower T = Tower::make(F);
            Quartic f = representative(T, label_arg);
            auto plain = quartic_to_plain(f);
            std::ostringstream os;
            if (opt.structured) {
                os << "label=" << label_arg << "\nz=";
                for (int i = 0; i < 5; ++i) os << (i ? "," : "") << f.z[i];
                os << "\nplain=";
                for (int i = 0; i < 5; ++i) os << (i ? "," : "") << plain[i];
                os << "\n";
            } else {
                os << "representative of " << label_arg << ":\n  z = (";
                for (int i = 0; i < 5; ++i) os << (i ? "," : "") << f.z[i];
                os << ")\n  coefficients of X^i Y^(4-i): (";
                for (int i = 0; i < 5; ++i) os << (i ? "," : "") << plain[i];
                os << ")\n";
            }
            emit(os.str(), out_path);
            return 0;
        }
        if (c_form_census->parsed()) {
            FieldPtr F = open_field(opt);
            Tower T = Tower::make(F);
            emit(census_text(census_quartics(T, opt.jobs)), out_path);
            return 0;
        }
        if (c_line_classify->parsed()) {
            FieldPtr F = open_field(opt);
            Tower T = Tower::make(F);
            Line L;
            // accepted forms: "a,b,c,d;e,f,g,h" generator points, or
            // "plucker:p01,p02,p03,p12,p13,p23"
            std::string coords = !points_arg.empty() ? points_arg : plucker_arg;
            require(!coords.empty(), "usage", "provide --points or --plucker");
            if (coords.rfind("plucker:", 0) == 0) coords = coords.substr(8);
            auto v = split_u64s(coords);
            if (!points_arg.empty() && points_arg.rfind("plucker:", 0) != 0) {
                require(v.size() == 8, "usage", "--points needs two 4-tuples");
                L = line_through(point3(*F, {v[0], v[1], v[2], v[3]}),
                                 point3(*F, {v[4], v[5], v[6], v[7]}));
            } else {
                require(v.size() == 6, "usage", "--plucker needs six coordinates");
                L = line_from_plucker(*F, {v[0], v[1], v[2], v[3], v[4], v[5]});
            }
            LineClass lc = classify_line(T, L);
            Quartic f = pi_of_line(L);
            Line D = hodge_star(L);
            auto z = z_coords(L);
            std::ostringstream os;
            if (opt.structured) {
                os << "label=" << lc.label << "\n";
                os << "plucker=";
                for (int i = 0; i < 6; ++i) os << (i ? "," : "") << L.p[i];
                os << "\nz=";
                for (int i = 0; i < 6; ++i) os << (i ? "," : "") << z[i];
                os << "\nI=" << invariant_I(f) << "\n";
                if (!lc.pi_class.disc_zero) os << "j=" << lc.pi_class.j << "\n";
                os << "orbit_size=" << lc.orbit_size << "\nstab_order=" << lc.stab_order << "\n";
                os << "dual=";
                for (int i = 0; i < 6; ++i) os << (i ? "," : "") << D.p[i];
                os << "\n";
            } else {
                os << "orbit label: " << lc.label << "\n  plucker (p01,p02,p03,p12,p13,p23) = (";
                for (int i = 0; i < 6; ++i) os << (i ? "," : "") << L.p[i];
                os << ")\n  z-coordinates = (";
                for (int i = 0; i < 6; ++i) os << (i ? "," : "") << z[i];
                os << ")\n  covered quartic f_L has I = " << invariant_I(f);
                if (!lc.pi_class.disc_zero) os << ", j = " << lc.pi_class.j;
                os << "\n  orbit size " << lc.orbit_size << ", stabilizer order " << lc.stab_order
                   << "\n  polar dual = (";
                for (int i = 0; i < 6; ++i) os << (i ? "," : "") << D.p[i];
                os << ")" << (D == L ? " [self-dual line]" : "") << "\n";
            }
            emit(os.str(), out_path);
            return 0;
        }
        if (c_line_rep->parsed()) {
            FieldPtr F = open_field(opt);
            Tower T = Tower::make(F);
            Line L = line_representative(T, label_arg);
            auto [P, Q] = line_generators(L);
            std::ostringstream os;
            if (opt.structured) {
                os << "label=" << label_arg << "\nrow1=";
                for (int i = 0; i < 4; ++i) os << (i ? "," : "") << P.x[i];
                os << "\nrow2=";
                for (int i = 0; i < 4; ++i) os << (i ? "," : "") << Q.x[i];
                os << "\nplucker=";
                for (int i = 0; i < 6; ++i) os << (i ? "," : "") << L.p[i];
                os << "\n";
            } else {
                os << "generator matrix for " << label_arg << ":\n  [";
                for (int i = 0; i < 4; ++i) os << (i ? " " : "") << P.x[i];
                os << "]\n  [";
                for (int i = 0; i < 4; ++i) os << (i ? " " : "") << Q.x[i];
                os << "]\n  plucker = (";
                for (int i = 0; i < 6; ++i) os << (i ? "," : "") << L.p[i];
                os << ")\n";
            }
            emit(os.str(), out_path);
            return 0;
        }
        if (c_line_census->parsed()) {
            FieldPtr F = open_field(opt);
            Tower T = Tower::make(F);
            emit(census_text(census_lines(T, opt.jobs)), out_path);
            return 0;
        }
        if (c_verify->parsed()) {
            FieldPtr F = open_field(opt);
            VerifyOptions vo;
            vo.nthreads = opt.jobs;
            VerificationReport R = verify_tables(F, vo);
            emit(render_report(R), out_path);
            return R.passed() ? 0 : 1;
        }
        if (c_repcheck->parsed()) {
            std::vector<u64> qs = qlist_arg.empty() ? std::vector<u64>{5, 7, 13, 25}
                                                    : split_u64s(qlist_arg);
            std::ostringstream os;
            os << "m q binomials arith osculating irreducible isomorphic dimA dimT agree\n";
            bool all_ok = true;
            for (u64 q : qs) {
                auto fac = factorize_u64(q);
                require(fac.size() == 1, "usage", "q must be a prime power");
                FieldPtr F = make_field(fac.begin()->first,
                                        static_cast<unsigned>(fac.begin()->second));
                for (int m = 1; m <= m_max; ++m) {
                    if (static_cast<u64>(m) + 2 > q) continue;
                    auto row = rep::rep_check(*F, m);
                    os << m << " " << q << " " << row.binomials << " " << row.arith << " "
                       << row.osculating << " " << row.irreducible << " " << row.isomorphic << " "
                       << row.dim_a << " " << row.dim_t << " " << row.all_agree << "\n";
                    all_ok = all_ok && row.all_agree;
                }
            }
            os << "result " << (all_ok ? "PASS" : "FAIL") << "\n";
            emit(os.str(), out_path);
            return all_ok ? 0 : 1;
        }
        if (c_sweep->parsed()) {
            std::vector<u64> qs = split_u64s(qlist_arg);
            VerifyOptions vo;
            vo.nthreads = 1;
            std::filesystem::create_directories(out_path);
            auto reports = sweep(qs, opt.jobs, vo);
            bool all_ok = true;
            for (size_t i = 0; i < qs.size(); ++i) {
                std::string file = out_path + "/verify_q" + std::to_string(qs[i]) + ".txt";
                std::ofstream os(file, std::ios::binary);
                os << render_report(reports[i]);
                bool ok = reports[i].passed();
                all_ok = all_ok && ok;
                std::cout << "q=" << qs[i] << " "
                          << (ok ? "PASS" : (reports[i].error.empty() ? "FAIL" : "ERROR"))
                          << " -> " << file << "\n";
            }
            return all_ok ? 0 : 1;
        }
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
