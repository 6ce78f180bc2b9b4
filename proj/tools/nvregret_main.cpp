// Command-line front end: worst-case regret certificates, experiment sweeps,
// sample-complexity scans, exploration-design optimization and verification
// oracles for data-driven newsvendor policies under censored demand.
//
// Exit codes: 0 success, 2 usage/parse error, 3 capacity exceeded, 4 I/O error.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nvregret/bsaa_regret.hpp"
#include "nvregret/csv.hpp"
#include "nvregret/design_opt.hpp"
#include "nvregret/km_regret.hpp"
#include "nvregret/literal.hpp"
#include "nvregret/oracle.hpp"
#include "nvregret/parallel.hpp"
#include "nvregret/policies.hpp"

namespace {

using namespace nvregret;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitIo = 4;

Policy parse_policy(const std::string& name) {
    if (name == "bsaa") return Policy::bsaa;
    if (name == "km") return Policy::km;
    throw invalid_input_error("policy must be bsaa or km");
}

void print_certificate(const RegretCertificate& cert) {
    std::printf("value %s\n", format_double(cert.value).c_str());
    std::printf("piece_index %d\n", cert.piece_index);
    std::printf("v_star %s\n", format_double(cert.v_star).c_str());
    std::printf("w_star %s\n", format_double(cert.w_star).c_str());
    if (cert.km_point) {
        std::printf("chain %s", format_double(cert.km_point->f0_plus).c_str());
        for (const auto& [f, fp] : cert.km_point->levels)
            std::printf(" %s %s", format_double(f).c_str(), format_double(fp).c_str());
        std::printf("\n");
    }
    std::printf("witness %s\n", distribution_literal(cert.witness).c_str());
    std::printf("grid_error_bound %s\n", format_double(cert.grid_error_bound).c_str());
}

CensoringDesign sweep_design(double x, long n, long m) {
    if (m == 0) return CensoringDesign({x}, {n});
    if (m == n) return CensoringDesign({1.0}, {n});
    return CensoringDesign({x, 1.0}, {n - m, m});
}

struct SweepOptions {
    std::string policy = "km";
    double cu = 0.8, co = 0.2;
    std::vector<std::string> x_tokens{"0.7", "0.8", "0.9"};
    std::vector<long> m_values{0, 1, 2, 5, 10};
    long n_min = 1, n_max = 100;
    double tol = 1e-3;
    double mesh = 1.0 / 200.0;
    std::string out;
};

int run_sweep(const SweepOptions& opt) {
    Policy policy = parse_policy(opt.policy);
    CostParameters cp(opt.cu, opt.co);
    if (opt.n_min < 1 || opt.n_max < opt.n_min)
        throw invalid_input_error("sweep: need 1 <= n-min <= n-max");
    std::vector<double> xs;
    for (const auto& t : opt.x_tokens) xs.push_back(std::stod(t));

    CsvTable table;
    table.header.push_back("n");
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
        for (long m : opt.m_values)
            table.header.push_back("wc_regret_" + std::to_string(m) + "_" + opt.x_tokens[xi]);
        table.header.push_back("wc_regret_full_info_" + opt.x_tokens[xi]);
    }

    const long rows = opt.n_max - opt.n_min + 1;
    table.rows.assign(static_cast<std::size_t>(rows),
                      std::vector<std::optional<double>>(table.header.size(), std::nullopt));

    // flat task list over (row, x, m | full-info); results land in fixed slots
    struct Task {
        std::size_t row, col;
        long n, m;
        double x;
        bool full_info;
    };
    std::vector<Task> tasks;
    for (long r = 0; r < rows; ++r) {
        long n = opt.n_min + r;
        table.rows[static_cast<std::size_t>(r)][0] = static_cast<double>(n);
        std::size_t col = 1;
        for (std::size_t xi = 0; xi < xs.size(); ++xi) {
            for (long m : opt.m_values) {
                if (m <= n) tasks.push_back({static_cast<std::size_t>(r), col, n, m, xs[xi], false});
                ++col;
            }
            tasks.push_back({static_cast<std::size_t>(r), col, n, 0, xs[xi], true});
            ++col;
        }
    }
    GridSpec grid{opt.mesh, opt.mesh, 0.02};
    parallel_for(tasks.size(), [&](std::size_t t) {
        const Task& task = tasks[t];
        CensoringDesign design =
            task.full_info ? CensoringDesign({1.0}, {task.n}) : sweep_design(task.x, task.n, task.m);
        double value = (policy == Policy::bsaa || task.full_info)
                           ? worst_case_regret_bsaa(design, cp, opt.tol).value
                           : worst_case_regret_km(design, cp, grid).value;
        table.rows[task.row][task.col] = value;
    });

    write_csv(table, opt.out);
    return kExitOk;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"worst-case regret toolkit for censored-demand newsvendor policies"};
    app.require_subcommand(1);

    // regret
    auto* regret_cmd = app.add_subcommand("regret", "worst-case regret certificate for a design");
    std::string design_lit, policy_name = "bsaa";
    double cu = 0.8, co = 0.2, tol = 1e-3, mesh = 1.0 / 200.0;
    regret_cmd->add_option("--design", design_lit, "design literal level:count[,...]")->required();
    regret_cmd->add_option("--policy", policy_name, "bsaa or km");
    regret_cmd->add_option("--cu", cu, "underage cost");
    regret_cmd->add_option("--co", co, "overage cost");
    regret_cmd->add_option("--tol", tol, "grid error tolerance (bsaa)");
    regret_cmd->add_option("--mesh", mesh, "lattice mesh (km)");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "worst-case regret vs sample size, CSV output");
    SweepOptions sopt;
    sweep_cmd->add_option("--policy", sopt.policy, "bsaa or km");
    sweep_cmd->add_option("--cu", sopt.cu, "underage cost");
    sweep_cmd->add_option("--co", sopt.co, "overage cost");
    sweep_cmd->add_option("--x", sopt.x_tokens, "base-stock levels")->delimiter(',');
    sweep_cmd->add_option("--m", sopt.m_values, "uncensored sample counts")->delimiter(',');
    sweep_cmd->add_option("--n-min", sopt.n_min, "first sample size");
    sweep_cmd->add_option("--n-max", sopt.n_max, "last sample size");
    sweep_cmd->add_option("--tol", sopt.tol, "grid error tolerance (bsaa)");
    sweep_cmd->add_option("--mesh", sopt.mesh, "lattice mesh (km)");
    sweep_cmd->add_option("--out", sopt.out, "output CSV path")->required();

    // sample-complexity
    auto* sc_cmd = app.add_subcommand("sample-complexity",
                                      "minimal n reaching a target regret per censoring level");
    double sc_q = 0.9, sc_frac = 0.25, sc_mesh = 1.0 / 200.0;
    double sc_x_lo = 0.70, sc_x_hi = 0.95, sc_x_step = 0.01;
    long sc_cap = 1000;
    std::string sc_out;
    sc_cmd->add_option("--q", sc_q, "critical fractile");
    sc_cmd->add_option("--target-frac", sc_frac, "target as a fraction of q(1-q), in (0,1)");
    sc_cmd->add_option("--x-min", sc_x_lo, "first censoring level");
    sc_cmd->add_option("--x-max", sc_x_hi, "last censoring level");
    sc_cmd->add_option("--x-step", sc_x_step, "censoring level step");
    sc_cmd->add_option("--n-cap", sc_cap, "scan cap per level");
    sc_cmd->add_option("--mesh", sc_mesh, "lattice mesh");
    sc_cmd->add_option("--out", sc_out, "output CSV path")->required();

    // design-opt
    auto* opt_cmd = app.add_subcommand("design-opt", "eps-optimal exploration design for a budget");
    long budget = 1;
    double dq = 0.8, eps = 0.02;
    long dcap = 10000;
    opt_cmd->add_option("--budget", budget, "total inventory budget")->required();
    opt_cmd->add_option("--q", dq, "critical fractile (>= 0.5)");
    opt_cmd->add_option("--eps", eps, "optimality gap");
    opt_cmd->add_option("--n-cap", dcap, "enumeration cap");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "expected regret under a known distribution");
    std::string o_design, o_dist, o_policy = "bsaa", o_mode = "exact";
    double o_cu = 0.8, o_co = 0.2;
    long o_trials = 100000;
    std::uint64_t o_seed = 1;
    oracle_cmd->add_option("--design", o_design, "design literal")->required();
    oracle_cmd->add_option("--dist", o_dist, "distribution literal point:prob[,...]")->required();
    oracle_cmd->add_option("--policy", o_policy, "bsaa or km");
    oracle_cmd->add_option("--mode", o_mode, "exact or mc");
    oracle_cmd->add_option("--cu", o_cu, "underage cost");
    oracle_cmd->add_option("--co", o_co, "overage cost");
    oracle_cmd->add_option("--trials", o_trials, "Monte-Carlo trials");
    oracle_cmd->add_option("--seed", o_seed, "Monte-Carlo seed");

    // decide
    auto* decide_cmd = app.add_subcommand("decide", "run a policy on explicit sample data");
    std::string d_data, d_policy = "km";
    double d_cu = 0.8, d_co = 0.2;
    decide_cmd->add_option("--data", d_data, "sample-set literal level|s1,s2u,...;...")->required();
    decide_cmd->add_option("--policy", d_policy, "bsaa or km");
    decide_cmd->add_option("--cu", d_cu, "underage cost");
    decide_cmd->add_option("--co", d_co, "overage cost");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (regret_cmd->parsed()) {
        CensoringDesign design = parse_design(design_lit);
        CostParameters cp(cu, co);
        RegretCertificate cert = parse_policy(policy_name) == Policy::bsaa
                                     ? worst_case_regret_bsaa(design, cp, tol)
                                     : worst_case_regret_km(design, cp, GridSpec{mesh, mesh, 0.02});
        print_certificate(cert);
        return kExitOk;
    }
    if (sweep_cmd->parsed()) return run_sweep(sopt);
    if (sc_cmd->parsed()) {
        if (!(sc_frac > 0.0) || !(sc_frac < 1.0))
            throw invalid_input_error("target-frac must lie in (0,1)");
        CostParameters cp(sc_q, 1.0 - sc_q);
        double target_raw = sc_frac * cp.q * (1.0 - cp.q);
        // snap the target so the column name and the threshold agree
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.10g", target_raw);
        double target = std::stod(buf);
        std::string target_name = buf;

        std::vector<double> xs;
        for (long i = 0;; ++i) {
            double x = sc_x_lo + static_cast<double>(i) * sc_x_step;
            if (x > sc_x_hi + 1e-12) break;
            std::snprintf(buf, sizeof(buf), "%.10g", x); // shed accumulated step drift
            xs.push_back(std::stod(buf));
        }
        CsvTable table;
        table.header = {"x", "num_sample_" + target_name};
        table.rows.assign(xs.size(), std::vector<std::optional<double>>(2, std::nullopt));
        GridSpec grid{sc_mesh, sc_mesh, 0.02};
        parallel_for(xs.size(), [&](std::size_t i) {
            table.rows[i][0] = xs[i];
            auto n = sample_complexity_km(xs[i], sc_q, target, sc_cap, grid);
            if (n) table.rows[i][1] = static_cast<double>(*n);
        });
        write_csv(table, sc_out);
        return kExitOk;
    }
    if (opt_cmd->parsed()) {
        DesignOptResult res = solve_design(budget, dq, eps, dcap);
        std::printf("n_star %ld\n", res.n_star);
        std::printf("levels ");
        for (std::size_t i = 0; i < res.levels.size(); ++i)
            std::printf("%s%s", i ? "," : "", format_double(res.levels[i]).c_str());
        std::printf("\n");
        std::printf("value %s\n", format_double(res.value).c_str());
        std::printf("u_bar %s\n", format_double(res.u_bar).c_str());
        std::printf("n_max %ld\n", res.n_max);
        return kExitOk;
    }
    if (oracle_cmd->parsed()) {
        CensoringDesign design = parse_design(o_design);
        StepCDF F = parse_distribution(o_dist);
        CostParameters cp(o_cu, o_co);
        Policy policy = parse_policy(o_policy);
        OracleEstimate est;
        if (o_mode == "exact")
            est = exact_expected_regret(policy, design, F, cp);
        else if (o_mode == "mc")
            est = mc_expected_regret(policy, design, F, cp, o_trials, o_seed);
        else
            throw invalid_input_error("mode must be exact or mc");
        std::printf("mean %s\n", format_double(est.mean).c_str());
        std::printf("std_error %s\n", format_double(est.std_error).c_str());
        std::printf("mode %s\n", est.mode == OracleMode::exact ? "exact" : "mc");
        std::printf("trials %ld\n", est.trials);
        return kExitOk;
    }
    if (decide_cmd->parsed()) {
        SampleSet samples = parse_sample_set(d_data);
        CostParameters cp(d_cu, d_co);
        double action = parse_policy(d_policy) == Policy::bsaa ? bsaa_decide(samples, cp.q)
                                                               : km_decide(samples, cp.q);
        std::printf("action %s\n", format_double(action).c_str());
        return kExitOk;
    }
    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const capacity_error& e) {
        std::fprintf(stderr, "capacity error: %s\n", e.what());
        return kExitCapacity;
    } catch (const invalid_input_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        // I/O failures surface here from the CSV writer
        return std::string(e.what()).find("csv:") == 0 ? kExitIo : kExitUsage;
    } catch (const unsupported_regime_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
