#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "steklov/bounds.hpp"
#include "steklov/errors.hpp"
#include "steklov/experiments.hpp"
#include "steklov/jsonout.hpp"
#include "steklov/profile_io.hpp"
#include "steklov/solver.hpp"

namespace steklov::cli {

// Exit codes: 0 success, 2 validation error, 3 numerical failure.
inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 2;
inline constexpr int exit_numerical = 3;

namespace detail {

inline std::string branch_json(const Branch& b) {
    return jsonout::Object().field("branch", b.to_string()).str();
}

inline std::string critical_length_json(const CriticalLength& c) {
    return jsonout::Object()
        .field("L", c.L)
        .field("equation", c.equation)
        .field("residual", c.residual)
        .raw("bracket", jsonout::Array().add(c.lo).add(c.hi).str())
        .str();
}

inline std::string spectrum_json(const Spectrum& s, std::int64_t K) {
    jsonout::Array entries;
    std::int64_t emitted = 0;
    for (const auto& e : s.entries()) {
        if (emitted >= K) break;
        entries.raw(jsonout::Object()
                        .field("sigma", e.sigma)
                        .field("k", e.k)
                        .field("parity", to_string(e.parity))
                        .field("mult", e.mult)
                        .str());
        emitted += e.mult;
    }
    jsonout::Array values;
    for (double v : s.values_with_multiplicity(K)) values.add(v);
    return jsonout::Object().raw("entries", entries.str()).raw("values", values.str()).str();
}

} // namespace detail

/**
 * Runs the command line given argv-style arguments (without the program
 * name). All regular output goes to `out`, error records to `err` as
 * single-line machine-parsable JSON. Never throws; errors become exit codes.
 */
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Steklov spectra of hypersurfaces of revolution: solver, sharp bounds, "
                 "critical lengths and theorem checks"};
    app.require_subcommand(1);
    int digits = 17;
    app.add_option("--digits", digits, "significant digits in numeric output (default 17)")
        ->check(CLI::Range(1, 17));
    app.set_config("--config", "", "read defaults from a config file (flags win)");

    // --- spectrum
    auto* sp = app.add_subcommand("spectrum", "first K Steklov eigenvalues of a profile");
    std::string sp_profile;
    int sp_n = 3, sp_N = 4096;
    std::int64_t sp_K = 6;
    sp->add_option("--profile", sp_profile, "profile spec JSON file")->required();
    sp->add_option("--n", sp_n, "ambient dimension (>= 3)")->required();
    sp->add_option("-K,--count", sp_K, "number of eigenvalues (with multiplicity)");
    sp->add_option("--N", sp_N, "grid elements");

    // --- mixed
    auto* mx = app.add_subcommand("mixed", "mixed SD/SN eigenvalue on the half profile");
    std::string mx_profile, mx_end = "dirichlet";
    int mx_n = 3, mx_k = 0, mx_N = 4096;
    mx->add_option("--profile", mx_profile, "profile spec JSON file (symmetric)")->required();
    mx->add_option("--n", mx_n, "ambient dimension (>= 3)")->required();
    mx->add_option("--k", mx_k, "mode index");
    mx->add_option("--end", mx_end, "inner condition: dirichlet | neumann")
        ->check(CLI::IsMember({"dirichlet", "neumann"}));
    mx->add_option("--N", mx_N, "grid elements");

    // --- bound
    auto* bd = app.add_subcommand("bound", "closed-form eigenvalue bounds");
    std::string bd_which;
    int bd_n = 3;
    double bd_L = 0.0;
    bd->add_option("which", bd_which, "sigma1 | sigma2-m1 | m1plus1 | m1plus1-global")
        ->required()
        ->check(CLI::IsMember({"sigma1", "sigma2-m1", "m1plus1", "m1plus1-global"}));
    bd->add_option("--n", bd_n, "ambient dimension (>= 3)")->required();
    bd->add_option("--L", bd_L, "meridian length (required except m1plus1-global)");

    // --- critical-length
    auto* cl = app.add_subcommand("critical-length", "roots of the defining equations");
    std::string cl_which;
    int cl_n = 3, cl_i = 1;
    cl->add_option("which", cl_which, "L1 | L2 | Li-star | appendix")
        ->required()
        ->check(CLI::IsMember({"L1", "L2", "Li-star", "appendix"}));
    cl->add_option("--n", cl_n, "ambient dimension (>= 3)")->required();
    cl->add_option("--i", cl_i, "index i for Li-star");

    // --- stability
    auto* st = app.add_subcommand("stability", "stability constants and gaps");
    std::string st_which;
    int st_n = 3, st_N = 4096;
    double st_L = 0.0, st_m = -1.0, st_delta = 0.1;
    st->add_option("which", st_which, "constants | gap")
        ->required()
        ->check(CLI::IsMember({"constants", "gap"}));
    st->add_option("--n", st_n, "ambient dimension (>= 3)")->required();
    st->add_option("--L", st_L, "meridian length (gap)");
    st->add_option("--m", st_m, "plateau height m (gap C(n,L,m); omit for C(n,L))");
    st->add_option("--delta", st_delta, "plateau smoothing");
    st->add_option("--N", st_N, "grid elements");

    // --- verify
    auto* vf = app.add_subcommand("verify", "run a scripted experiment by id");
    std::string vf_which, vf_out;
    int vf_n = 3, vf_K = 5, vf_N = 2048;
    double vf_L = 2.0;
    std::vector<double> vf_deltas{0.4, 0.2, 0.1, 0.05};
    vf->add_option("which", vf_which, "sharpness | monotonicity | stability")
        ->required()
        ->check(CLI::IsMember({"sharpness", "monotonicity", "stability"}));
    vf->add_option("--n", vf_n, "ambient dimension (>= 3)")->required();
    vf->add_option("--L", vf_L, "meridian length");
    vf->add_option("--K", vf_K, "eigenvalues per chain element (monotonicity)");
    vf->add_option("--N", vf_N, "grid elements");
    vf->add_option("--deltas", vf_deltas, "cap half-widths, decreasing (sharpness)");
    vf->add_option("--out", vf_out, "directory to write the CSV + JSON report");

    // --- figure
    auto* fg = app.add_subcommand("figure", "emit figure curve data");
    std::string fg_which, fg_out, fg_format = "json";
    int fg_n = 5, fg_points = 200;
    double fg_Lmin = 0.05, fg_Lmax = 12.0;
    fg->add_option("which", fg_which, "Bn_of_L | Bn_m1plus1_of_L | appendix_curves")
        ->required()
        ->check(CLI::IsMember({"Bn_of_L", "Bn_m1plus1_of_L", "appendix_curves"}));
    fg->add_option("--n", fg_n, "ambient dimension (>= 3)")->required();
    fg->add_option("--L-min", fg_Lmin, "grid start");
    fg->add_option("--L-max", fg_Lmax, "grid end");
    fg->add_option("--points", fg_points, "grid size");
    fg->add_option("--format", fg_format, "stdout format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    fg->add_option("--out", fg_out, "directory to write the CSV file");

    std::vector<const char*> argv;
    argv.push_back("steklov");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << jsonout::Object().field("error", "validation").field("detail", e.what()).str() << "\n";
        return exit_validation;
    }

    struct DigitsGuard {
        int saved = jsonout::output_digits();
        ~DigitsGuard() { jsonout::output_digits() = saved; }
    } digits_guard;
    jsonout::output_digits() = digits;

    try {
        if (sp->parsed()) {
            const Profile p = load_profile_spec(sp_profile);
            const Spectrum s = steklov_spectrum(p, Dim(sp_n), sp_K, sp_N);
            out << jsonout::Object()
                       .field("op", "spectrum")
                       .field("n", sp_n)
                       .field("K", sp_K)
                       .field("N", sp_N)
                       .field("profile", p.family())
                       .raw("spectrum", detail::spectrum_json(s, sp_K))
                       .str()
                << "\n";
        } else if (mx->parsed()) {
            const Profile p = load_profile_spec(mx_profile);
            const auto [hd, hn] = halves(p);
            const auto& hp = (mx_end == "dirichlet") ? hd : hn;
            const double v = mixed_eigenvalue(hp, Dim(mx_n), mx_k, mx_N);
            out << jsonout::Object()
                       .field("op", "mixed")
                       .field("n", mx_n)
                       .field("k", mx_k)
                       .field("end", mx_end)
                       .field("N", mx_N)
                       .field("sigma", v)
                       .str()
                << "\n";
        } else if (bd->parsed()) {
            const Dim dim(bd_n);
            jsonout::Object o;
            o.field("op", "bound").field("which", bd_which).field("n", bd_n);
            if (bd_which == "m1plus1-global") {
                const auto b = bound_m1_plus_1_global(dim);
                o.field("value", b.value).field("branch", b.branch.to_string());
            } else {
                if (!(bd_L > 0.0)) {
                    throw domain_error("bound " + bd_which + " requires --L > 0");
                }
                BoundValue b;
                if (bd_which == "sigma1") b = bound_sigma1(dim, bd_L);
                else if (bd_which == "sigma2-m1") b = bound_sigma2_to_m1(dim, bd_L);
                else b = bound_m1_plus_1(dim, bd_L);
                o.field("L", bd_L)
                    .field("value", b.value)
                    .field("branch", b.branch.to_string())
                    .field("R", b.R);
            }
            out << o.str() << "\n";
        } else if (cl->parsed()) {
            const Dim dim(cl_n);
            jsonout::Object o;
            o.field("op", "critical-length").field("which", cl_which).field("n", cl_n);
            if (cl_which == "L1") {
                const auto [c, b] = critical_length_L1(dim);
                o.raw("L1", detail::critical_length_json(c)).field("B_n", b.value);
            } else if (cl_which == "L2") {
                o.raw("L2", detail::critical_length_json(critical_length_L2(dim)));
            } else if (cl_which == "Li-star") {
                // L_i* bounds the i-th finite critical length L_i from above;
                // the exact L_i is not computed here
                o.field("i", cl_i)
                    .field("role", "upper_bound_for_L_i")
                    .raw("Li_star", detail::critical_length_json(critical_length_Li_star(dim, cl_i)))
                    .field("bracket_bound", li_star_upper_bound(dim, cl_i));
            } else {
                const auto [cd, cn, br] = appendix_comparator(dim);
                o.raw("L_D", detail::critical_length_json(cd))
                    .raw("L_N", detail::critical_length_json(cn))
                    .field("branch", br.to_string());
            }
            out << o.str() << "\n";
        } else if (st->parsed()) {
            const Dim dim(st_n);
            jsonout::Object o;
            o.field("op", "stability").field("which", st_which).field("n", st_n);
            if (st_which == "constants") {
                const auto c = stability_constants(dim);
                o.field("C1", c.C1).field("C2", c.C2).field("C", c.C);
            } else if (st_m >= 0.0) {
                if (!(st_L > 0.0)) throw domain_error("stability gap requires --L > 0");
                o.field("L", st_L).field("m", st_m).field(
                    "gap", stability_gap_CnLm(dim, st_L, st_m, st_delta, st_N));
            } else {
                if (!(st_L > 0.0)) throw domain_error("stability gap requires --L > 0");
                o.field("L", st_L).field("gap", stability_gap_CnL(dim, st_L));
            }
            out << o.str() << "\n";
        } else if (vf->parsed()) {
            const Dim dim(vf_n);
            ExperimentReport rep;
            if (vf_which == "sharpness") {
                rep = sharpness_experiment(dim, vf_L, vf_deltas, std::max(vf_N, 4096));
            } else if (vf_which == "monotonicity") {
                rep = monotonicity_experiment(dim, vf_L, vf_K, 3, vf_N);
            } else {
                rep = stability_experiment(dim, vf_N);
            }
            if (!vf_out.empty()) rep.save(vf_out);
            rep.write_json(out);
            if (!rep.all_pass()) return exit_numerical;
        } else if (fg->parsed()) {
            const Dim dim(fg_n);
            FigureKind kind = FigureKind::BnOfL;
            if (fg_which == "Bn_m1plus1_of_L") kind = FigureKind::BnM1Plus1OfL;
            else if (fg_which == "appendix_curves") kind = FigureKind::AppendixCurves;
            if (!(fg_Lmin > 0.0 && fg_Lmax > fg_Lmin && fg_points >= 2)) {
                throw domain_error("figure: need 0 < L-min < L-max and points >= 2");
            }
            std::vector<double> grid;
            for (int i = 0; i < fg_points; ++i) {
                grid.push_back(fg_Lmin * std::pow(fg_Lmax / fg_Lmin,
                                                  static_cast<double>(i) / (fg_points - 1)));
            }
            const FigureData f = figure_data(kind, dim, grid);
            if (!fg_out.empty()) {
                std::ofstream csv(fg_out + "/" + f.id + "_n" + std::to_string(fg_n) + ".csv");
                if (!csv) throw domain_error("cannot write figure CSV under " + fg_out);
                f.write_csv(csv);
            }
            if (fg_format == "csv") {
                f.write_csv(out);
            } else {
                jsonout::Object o;
                o.field("op", "figure").field("which", f.id).field("n", fg_n);
                jsonout::Array cols;
                for (const auto& c : f.columns) cols.add(c);
                o.raw("columns", cols.str());
                jsonout::Array rows;
                for (const auto& row : f.rows) {
                    jsonout::Array r;
                    for (double v : row) r.add(v);
                    rows.raw(r.str());
                }
                o.raw("rows", rows.str());
                jsonout::Object cr;
                for (const auto& [name, v] : f.crossings) cr.field(name, v);
                o.raw("crossings", cr.str());
                out << o.str() << "\n";
            }
        }
    } catch (const domain_error& e) {
        err << jsonout::Object().field("error", "validation").field("detail", e.what()).str() << "\n";
        return exit_validation;
    } catch (const numerical_error& e) {
        err << jsonout::Object().field("error", "numerical").field("detail", e.what()).str() << "\n";
        return exit_numerical;
    } catch (const std::exception& e) {
        err << jsonout::Object().field("error", "internal").field("detail", e.what()).str() << "\n";
        return exit_numerical;
    }
    return exit_ok;
}

} // namespace steklov::cli
