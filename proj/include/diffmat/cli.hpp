#pragma once

#include "diffmat/exact.hpp"
#include "diffmat/lattice.hpp"
#include "diffmat/quad.hpp"
#include "diffmat/report.hpp"
#include "diffmat/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

namespace diffmat {

namespace detail {

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

/// Command-line front end.  Exit codes: 0 success, 1 domain/usage error,
/// 2 resource or integrity error, 3 verification failure.
inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
    CLI::App app{"exact, stochastic, asymptotic and bounded counting of "
                 "(g,k;lambda)-difference matrices over Z_g"};
    app.require_subcommand(1);

    int g = 0, k = 0;
    long lambda = 1;
    Budget budget;

    const auto add_params = [&](CLI::App* cmd, bool with_lambda) {
        cmd->add_option("--g", g, "group order (>= 2)")->required();
        cmd->add_option("--k", k, "row count (>= 2)")->required();
        if (with_lambda) cmd->add_option("--lambda", lambda, "index lambda (>= 1)")->required();
    };
    const auto add_budget = [&](CLI::App* cmd) {
        cmd->add_option("--max-columns", budget.max_columns, "column enumeration budget");
        cmd->add_option("--max-nodes", budget.max_search_nodes, "brute-force search budget");
        cmd->add_option("--max-dft-work", budget.max_dft_work, "DFT grid work budget");
        cmd->add_option("--max-quad-points", budget.max_quad_points, "quadrature grid budget");
    };

    auto* count_cmd = app.add_subcommand("count", "exact matrix count");
    std::string method = "auto";
    add_params(count_cmd, true);
    count_cmd->add_option("--method", method, "brute | dft | auto")
        ->check(CLI::IsMember({"brute", "dft", "auto"}));
    add_budget(count_cmd);

    auto* estimate_cmd = app.add_subcommand("estimate", "Monte Carlo return probability");
    std::uint64_t samples = 1'000'000, seed = 1;
    add_params(estimate_cmd, true);
    estimate_cmd->add_option("--samples", samples, "number of sampled walks");
    estimate_cmd->add_option("--seed", seed, "RNG seed");

    auto* asymptotic_cmd = app.add_subcommand("asymptotic", "large-lambda formula value");
    add_params(asymptotic_cmd, true);

    auto* bounds_cmd = app.add_subcommand("bounds", "rigorous two-sided bounds");
    std::string delta_arg = "auto";
    add_params(bounds_cmd, true);
    bounds_cmd->add_option("--delta", delta_arg, "box radius, or 'auto' for t^(-5/12)");

    auto* lattice_cmd = app.add_subcommand("lattice", "full-modulus frequency census");
    bool list_elements = false, verify_elements = false;
    add_params(lattice_cmd, false);
    lattice_cmd->add_flag("--list", list_elements, "emit the elements");
    lattice_cmd->add_flag("--verify", verify_elements, "run membership and defect checks");
    add_budget(lattice_cmd);

    auto* integrate_cmd = app.add_subcommand("integrate", "box quadrature + sandwich report");
    double delta_val = 0.0;
    long grid = 9;
    std::uint64_t n_random = 2000, int_seed = 1;
    add_params(integrate_cmd, true);
    integrate_cmd->add_option("--delta", delta_val, "box radius")->required();
    integrate_cmd->add_option("--grid", grid, "grid points per axis (odd)");
    integrate_cmd->add_option("--random", n_random, "extra random points for the pointwise checks");
    integrate_cmd->add_option("--seed", int_seed, "RNG seed");
    add_budget(integrate_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "built-in verification suites");
    std::string suite = "all";
    std::uint64_t verify_seed = 1;
    verify_cmd->add_option("--suite", suite, "moments | lattice | inequalities | counts | all")
        ->check(CLI::IsMember({"moments", "lattice", "inequalities", "counts", "all"}));
    verify_cmd->add_option("--seed", verify_seed, "RNG seed");
    add_budget(verify_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep", "exact/asymptotic ratio table over lambda");
    long lambda_min = 1, lambda_max = 8;
    std::string out_path;
    sweep_cmd->add_option("--g", g, "group order (>= 2)")->required();
    sweep_cmd->add_option("--k", k, "row count (>= 2)")->required();
    sweep_cmd->add_option("--lambda-min", lambda_min, "first lambda")->required();
    sweep_cmd->add_option("--lambda-max", lambda_max, "last lambda")->required();
    sweep_cmd->add_option("--out", out_path, "CSV output path (default: stdout)");
    add_budget(sweep_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        if (*count_cmd) {
            const detail::Timer timer;
            const Params p = make_params(g, k, lambda);
            const CountMethod m = method == "brute"  ? CountMethod::brute
                                  : method == "dft" ? CountMethod::dft
                                                    : CountMethod::auto_select;
            std::string used;
            const BigCount count = count_matrices(p, m, budget, &used);
            const Rational prob(count, big_pow(p.g, static_cast<std::uint64_t>(p.k) * p.t));
            out << count_record(p, used, count, prob, timer.ms()).dump() << "\n";
        } else if (*estimate_cmd) {
            const detail::Timer timer;
            const Params p = make_params(g, k, lambda);
            const McEstimate e = mc_return_probability(p, samples, seed);
            out << estimate_record(p, e, timer.ms()).dump() << "\n";
        } else if (*asymptotic_cmd) {
            const detail::Timer timer;
            const Params p = make_params(g, k, lambda);
            out << asymptotic_record(p, timer.ms()).dump() << "\n";
        } else if (*bounds_cmd) {
            const detail::Timer timer;
            const Params p = make_params(g, k, lambda);
            const double delta = delta_arg == "auto"
                                     ? std::pow(static_cast<double>(p.t), -5.0 / 12.0)
                                     : std::stod(delta_arg);
            out << bounds_record(p, probability_bounds(p, delta), timer.ms()).dump() << "\n";
        } else if (*lattice_cmd) {
            const detail::Timer timer;
            const Params p = make_params(g, k, 1);
            const auto lambda0 = enumerate_lambda0(p, budget);
            bool verified = true;
            double worst_hom = 0.0, worst_row = 0.0;
            if (verify_elements) {
                const ColumnTable tab = make_column_table(p, budget);
                for (const Theta& eta : lambda0) {
                    if (!lambda_membership(p, eta, 1e-9, tab)) verified = false;
                    const StructureDefects d = structure_defects(p, eta);
                    worst_hom = std::max(worst_hom, d.hom_defect);
                    worst_row = std::max(worst_row, d.row_defect);
                }
                if (worst_hom > 1e-9 || worst_row > 1e-9) verified = false;
            }
            Json record = lattice_record(p, lambda0.size(), verified, worst_hom, worst_row, timer.ms());
            if (list_elements) {
                Json elements = Json::array();
                for (const Theta& eta : lambda0) {
                    // coefficients reported with 1-based pair labels
                    const LatticeCoeffs coeffs = decompose_lattice(p, eta, 1e-9, budget);
                    Json labeled = Json::array();
                    long idx = 0;
                    for (int i = 1; i < p.k; ++i)
                        for (int j = i + 1; j < p.k; ++j, ++idx)
                            labeled.push_back(Json{{"pair", {i, j}}, {"c", coeffs.c[idx]}});
                    Json e;
                    e["coeffs"] = labeled;
                    e["theta"] = eta;
                    elements.push_back(e);
                }
                record["elements"] = elements;
            }
            out << record.dump() << "\n";
            if (verify_elements && !verified) return 3;
        } else if (*integrate_cmd) {
            const detail::Timer timer;
            const Params p = make_params(g, k, lambda);
            QuadratureSpec spec;
            spec.grid_per_axis = grid;
            spec.delta = delta_val;
            spec.t = p.t;
            spec.max_points = budget.max_quad_points;
            const SandwichReport rep = sandwich_report(p, spec, n_random, int_seed, budget);
            const double gauss = integrate_box_gaussian(p, spec);
            out << integrate_record(p, rep, gauss, timer.ms()).dump() << "\n";
        } else if (*verify_cmd) {
            const auto results = verify_suite(suite, verify_seed, budget);
            std::uint64_t failures = 0;
            for (const CheckResult& r : results) {
                out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
                if (!r.detail.empty()) out << " (" << r.detail << ")";
                out << "\n";
                failures += r.pass ? 0 : 1;
            }
            Json summary;
            summary["schema_version"] = schema_version;
            summary["command"] = "verify";
            summary["suite"] = suite;
            summary["seed"] = verify_seed;
            summary["checks"] = results.size();
            summary["failures"] = failures;
            out << summary.dump() << "\n";
            if (failures > 0) return 3;
        } else if (*sweep_cmd) {
            if (lambda_min < 1 || lambda_max < lambda_min)
                throw std::domain_error("sweep: need 1 <= lambda-min <= lambda-max");
            std::ofstream file;
            std::ostream* csv = &out;
            if (!out_path.empty()) {
                file.open(out_path);
                if (!file) throw std::domain_error("sweep: cannot open " + out_path);
                csv = &file;
            }
            *csv << "lambda,t,count,log10_count,asymptotic_log10,ratio,delta,lower,upper,"
                    "rigorous,drake\n";
            for (long lam = lambda_min; lam <= lambda_max; ++lam) {
                const Params p = make_params(g, k, lam);
                const BigCount count = count_matrices(p, CountMethod::auto_select, budget);
                const double log10_count = big_log10(count);
                const double asym = asymptotic_count_log10(p);
                const double ratio = count == 0 ? 0.0 : std::pow(10.0, log10_count - asym);
                const double delta = std::pow(static_cast<double>(p.t), -5.0 / 12.0);
                const BoundsReport b = probability_bounds(p, delta);
                *csv << lam << ',' << p.t << ',' << count.str() << ','
                     << std::setprecision(12) << (count == 0 ? 0.0 : log10_count) << ',' << asym
                     << ',' << ratio << ',' << delta << ',' << b.lower << ',' << b.upper << ','
                     << (b.rigorous ? 1 : 0) << ',' << (p.drake_flag ? 1 : 0) << "\n";
            }
            if (!out_path.empty()) {
                Json record;
                record["schema_version"] = schema_version;
                record["command"] = "sweep";
                record["rows"] = lambda_max - lambda_min + 1;
                record["out"] = out_path;
                out << record.dump() << "\n";
            }
        }
        return 0;
    } catch (const resource_error& e) {
        err << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const integrity_error& e) {
        err << "integrity error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "domain error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace diffmat
