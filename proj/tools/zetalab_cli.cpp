// zetalab command-line laboratory: zero tables, correlation statistics, GUE
// predictions, closed-form asymptotics, and the end-to-end verification
// pipeline with JSON/CSV reports.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "zetalab/harness.hpp"

using namespace zetalab;

namespace {

nlohmann::ordered_json asymptotic_to_json(const AsymptoticValue& v) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& t : v.terms()) {
        nlohmann::ordered_json jt;
        jt["num"] = t.coeff.num;
        jt["den"] = t.coeff.den;
        jt["pi_pow"] = t.pi_pow;
        jt["T_pow"] = t.T_pow;
        jt["a_pow"] = t.a_pow;
        jt["L_pow"] = t.L_pow;
        jt["decay_k"] = t.decay_k;
        terms.push_back(std::move(jt));
    }
    return terms;
}

ExperimentConfig load_config(const std::string& config_path, double tmax, double c,
                             std::uint64_t seed, const std::string& out_dir,
                             const std::string& zeros_file) {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = ExperimentConfig::from_file(config_path);
    if (tmax > 0.0) {
        cfg.T_values.clear();
        if (tmax > 1e3) cfg.T_values.push_back(1e3);
        cfg.T_values.push_back(tmax);
    }
    if (c > 0.0) cfg.c = c;
    if (seed != 0) cfg.seed = seed;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (!zeros_file.empty()) {
        cfg.zeros_source = "file";
        cfg.zeros_path = zeros_file;
    }
    cfg.validate();
    return cfg;
}

TestFunction kernel_by_name(const std::string& name, double a, double L) {
    double scale = std::max(1.0, L * a / kPi);
    if (name == "f2_pair")
        return make_pair_fn([a, L](double d) { return kernel_f2_pair(d, 0, a, L); }, 2.0,
                            scale);
    if (name == "f1_pair")
        return make_pair_fn([a, L](double d) { return kernel_f1_pair(d, 0, a, L); }, 4.0,
                            scale);
    if (name == "gauss")
        return make_pair_fn([](double d) { return std::exp(-d * d); }, 4.0, 1.0);
    TestFunction f;
    f.arity = 3;
    f.scale_hint = scale;
    if (name == "f1_triple") {
        f.decay_exponent = 4.0;
        f.eval = [a, L](const double* x) { return kernel_f1_triple(x[0], x[1], x[2], a, L); };
        return f;
    }
    if (name == "f2_triple") {
        f.decay_exponent = 2.0;
        f.eval = [a, L](const double* x) { return kernel_f2_triple(x[0], x[1], x[2], a, L); };
        return f;
    }
    throw CLI::ValidationError("kernel must be f1_pair|f2_pair|f1_triple|f2_triple|gauss");
}

int run_checks(Laboratory& lab, const std::vector<std::string>& checks) {
    ExperimentReport rep;
    rep.seed = lab.config().seed;
    rep.config_echo = lab.config().to_json();
    for (const std::string& chk : checks) {
        if (chk == "all") {
            rep = lab.run_all();
            break;
        } else if (chk == "theorem1") {
            lab.verify_theorem1(rep);
        } else if (chk == "prop3") {
            lab.verify_prop3_consistency(rep);
            lab.verify_trick(rep);
            lab.verify_prop3(rep);
        } else if (chk == "lemma5") {
            lab.verify_lemma5(rep);
        } else if (chk == "decomp") {
            lab.verify_decomp(rep);
        } else if (chk == "gue-mc") {
            lab.verify_gue_mc(rep);
        } else {
            std::cerr << "unknown check: " << chk << "\n";
            return 2;
        }
    }
    write_report_files(rep, lab.config().output_dir);
    long fails = 0, flags = 0;
    for (const auto& r : rep.records) {
        if (r.status == "fail") ++fails;
        if (r.status == "flag") ++flags;
        std::printf("%-8s %-40s computed=%.10g reference=%.10g rel=%.3g budget=%.3g\n",
                    r.status.c_str(), r.name.c_str(), r.computed, r.reference,
                    r.relative_error, r.budget);
    }
    std::printf("report written to %s (checks: %zu, failures: %ld, soft flags: %ld)\n",
                lab.config().output_dir.c_str(), rep.records.size(), fails, flags);
    return fails == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"zetalab: zeta-zero statistics versus GUE predictions"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags are accepted after subcommands too

    std::string config_path, out_dir, zeros_file;
    double tmax = 0.0, c = 0.0;
    std::uint64_t seed = 0;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--tmax", tmax, "override the top height T");
    app.add_option("--c", c, "override c = a log T");
    app.add_option("--seed", seed, "override the random seed");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--zeros", zeros_file, "zero table file (one ordinate per line)");

    // ---- zeros ----
    auto* zeros_cmd = app.add_subcommand("zeros", "compute or load zero tables");
    auto* compute_cmd = zeros_cmd->add_subcommand("compute", "scan for zeros up to tmax");
    double z_tmax = 100.0, z_tmin = 0.0, z_step = 0.05;
    std::string z_out = "zeros.txt";
    compute_cmd->add_option("--tmax", z_tmax, "upper height")->required();
    compute_cmd->add_option("--tmin", z_tmin, "lower height");
    compute_cmd->add_option("--step", z_step, "grid step (<= 0.1)");
    compute_cmd->add_option("--out", z_out, "output file");
    auto* load_cmd = zeros_cmd->add_subcommand("load", "load and validate a zero file");
    std::string l_file;
    std::string l_out;
    load_cmd->add_option("--file", l_file, "input file")->required();
    load_cmd->add_option("--out", l_out, "re-serialize canonically to this file");

    // ---- stats ----
    auto* stats_cmd = app.add_subcommand("stats", "empirical zero statistics");
    double s_tmax = 1e3, s_c = 1.0;
    stats_cmd->add_option("--tmax", s_tmax, "height T");
    stats_cmd->add_option("--c", s_c, "c = a log T");

    // ---- predict ----
    auto* predict_cmd = app.add_subcommand("predict", "GUE prediction quadrature");
    double p_T = 1e4, p_c = 1.0;
    std::string p_kernel = "f2_pair";
    predict_cmd->add_option("--T", p_T, "height T");
    predict_cmd->add_option("--c", p_c, "c = a log T");
    predict_cmd->add_option("--kernel", p_kernel, "f1_pair|f2_pair|f1_triple|f2_triple|gauss");

    // ---- asym ----
    auto* asym_cmd = app.add_subcommand("asym", "closed-form asymptotics");
    double a_T = 1e4, a_c = 1.0;
    bool a_json = false;
    asym_cmd->add_option("--T", a_T, "height T");
    asym_cmd->add_option("--c", a_c, "c = a log T");
    asym_cmd->add_flag("--json", a_json, "dump the structured term lists as JSON");

    // ---- verify / report ----
    auto* verify_cmd = app.add_subcommand("verify", "run verification checks");
    std::vector<std::string> v_checks = {"all"};
    verify_cmd->add_option("--check", v_checks,
                           "theorem1|prop3|lemma5|decomp|gue-mc|all");
    auto* report_cmd = app.add_subcommand("report", "full pipeline with report output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute_cmd->parsed()) {
            ZeroTable t = find_zeros(z_tmin, z_tmax, z_step);
            save_zeros(t, z_out);
            std::printf("%ld zeros in [%g, %g] written to %s\n", t.count(), z_tmin, z_tmax,
                        z_out.c_str());
            return 0;
        }
        if (load_cmd->parsed()) {
            ZeroTable t = load_zeros(l_file);
            std::printf("%s: %ld ordinates, t_max = %.9f\n", l_file.c_str(), t.count(),
                        t.t_max());
            if (!l_out.empty()) {
                save_zeros(t, l_out);
                std::printf("canonical form written to %s\n", l_out.c_str());
            }
            return 0;
        }
        if (stats_cmd->parsed()) {
            ExperimentConfig cfg =
                load_config(config_path, 0.0, c > 0 ? c : s_c, seed, out_dir, zeros_file);
            if (tmax > 0) s_tmax = tmax;
            double margin = std::max(160.0, 1000.0 * cfg.c / std::log(s_tmax) + 20.0);
            ZeroTable tbl = cfg.zeros_source == "file" ? load_zeros(cfg.zeros_path)
                                                       : find_zeros(0.0, s_tmax + margin, 0.05);
            double L = std::log(s_tmax);
            ShiftParam a = ShiftParam::from_c(cfg.c, s_tmax);
            std::printf("T = %g, c = %g, a = %g, zeros <= T: %ld\n", s_tmax, cfg.c, a.a,
                        count_N(tbl, s_tmax));
            for (double alpha : {0.0, 0.5, 1.0, 1.5, 2.0}) {
                double F = pair_correlation_F(alpha, tbl, s_tmax);
                std::printf("F(%.2f, T) = %.6f   [model T^-2a log T + a: %.6f]\n", alpha, F,
                            std::exp(-2.0 * alpha * L) * L + alpha);
            }
            for (int n : {1, 2, 3}) {
                double direct = sigma_moment_direct(n, a, s_tmax, tbl);
                std::printf("int Sigma^%d = %.8e   closed form %.8e\n", n, direct,
                            prop3_moment(n, a.a, s_tmax));
            }
            for (int n : {2, 3})
                std::printf("trick n=%d   = %.8e\n", n, sigma_moment_trick(n, a, s_tmax, tbl));
            return 0;
        }
        if (predict_cmd->parsed()) {
            if (tmax > 0) p_T = tmax;
            if (c > 0) p_c = c;
            double L = std::log(p_T), a = p_c / L;
            QuadratureSpec spec;
            TestFunction f = kernel_by_name(p_kernel, a, L);
            double pred = gue_prediction(f, p_T, L, spec);
            std::printf("gue_prediction(%s, T=%g, c=%g) = %.10e\n", p_kernel.c_str(), p_T,
                        p_c, pred);
            if (p_kernel != "gauss") {
                BlockKind kind = p_kernel == "f2_pair"     ? BlockKind::f2_pair
                                 : p_kernel == "f1_pair"   ? BlockKind::f1_pair
                                 : p_kernel == "f1_triple" ? BlockKind::f1_triple
                                                           : BlockKind::f2_triple;
                double closed = block_asym(kind).evaluate(p_T, a);
                std::printf("closed form                      = %.10e   (rel diff %.3e)\n",
                            closed, std::abs(pred - closed) / std::abs(closed));
            }
            return 0;
        }
        if (asym_cmd->parsed()) {
            if (tmax > 0) a_T = tmax;
            if (c > 0) a_c = c;
            double L = std::log(a_T), a = a_c / L;
            std::printf("T=%g c=%g a=%g\n", a_T, a_c, a);
            std::printf("theorem1_rhs        = %.10e\n", theorem1_rhs(a, a_T));
            std::printf("gg_second_moment    = %.10e\n", gg_second_moment(a, a_T));
            std::printf("eq31(a,a)           = %.10e\n", eq31(a, a, a_T));
            for (int n : {1, 2, 3})
                std::printf("prop3_moment(%d)     = %.10e\n", n, prop3_moment(n, a, a_T));
            std::printf("re_cubed_moment     = %.10e\n", re_cubed_moment(a, a_T));
            std::printf("re_sq = im_sq       = %.10e\n", re_sq_moment(a, a_T));
            auto cons = prop3_consistency(a, a_T);
            std::printf("prop3_consistency: assembled %.10e vs %.10e (rel %.3e, exact "
                        "term identity: %s)\n",
                        cons.assembled, cons.reference, cons.rel_discrepancy,
                        cons.exact_term_identity ? "yes" : "no");
            if (a_json) {
                nlohmann::ordered_json j;
                j["f1_triple"] = asymptotic_to_json(block_asym(BlockKind::f1_triple));
                j["f1_pair"] = asymptotic_to_json(block_asym(BlockKind::f1_pair));
                j["f2_triple"] = asymptotic_to_json(block_asym(BlockKind::f2_triple));
                j["f2_pair"] = asymptotic_to_json(block_asym(BlockKind::f2_pair));
                j["theorem1_rhs"] = asymptotic_to_json(theorem1_rhs_terms());
                j["prop3_n2"] = asymptotic_to_json(prop3_moment_terms(2));
                j["prop3_n3"] = asymptotic_to_json(prop3_moment_terms(3));
                std::cout << j.dump(2) << "\n";
            }
            return 0;
        }
        if (verify_cmd->parsed() || report_cmd->parsed()) {
            ExperimentConfig cfg = load_config(config_path, tmax, c, seed, out_dir, zeros_file);
            Laboratory lab(cfg);
            if (report_cmd->parsed()) return run_checks(lab, {"all"});
            return run_checks(lab, v_checks);
        }
        if (zeros_cmd->parsed()) {
            std::cerr << "zeros: use a subcommand (compute|load)\n";
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
