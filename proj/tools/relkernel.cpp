#include "relkernel/ab_kernel.hpp"
#include "relkernel/cli/commands.hpp"
#include "relkernel/cli/config.hpp"
#include "relkernel/errors.hpp"
#include "relkernel/specfun.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace relkernel;

namespace {

void print_table(const cli::VerifyReport& report)
{
    for (const cli::Check& c : report.checks) {
        std::printf("%-4s %-8s %-42s measured %-12.4g threshold %.4g%s%s\n", c.pass ? "PASS" : "FAIL", c.suite.c_str(),
                    c.name.c_str(), c.measured, c.threshold, c.detail.empty() ? "" : "  ", c.detail.c_str());
    }
    std::printf("%zu checks, %s, %.1f s\n", report.checks.size(), report.pass() ? "all passed" : "FAILURES",
                report.seconds);
}

void emit(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw cli::ConfigError(path + ": cannot open output file");
    out << text;
}

int run_specfun_eval()
{
    std::string line;
    int status = cli::kExitOk;
    for (int n = 1; std::getline(std::cin, line); ++n) {
        std::istringstream in(line);
        std::string name;
        if (!(in >> name) || name[0] == '#') continue;
        std::vector<double> a;
        for (double v; in >> v;) a.push_back(v);
        auto need = [&](std::size_t k) {
            if (a.size() != k)
                throw DomainError(name + " takes " + std::to_string(k) + " arguments");
        };
        try {
            double v = 0.0;
            if (name == "gamma") {
                need(1);
                v = specfun::gamma_fn(a[0]);
            } else if (name == "lgamma") {
                need(1);
                v = specfun::log_gamma(a[0]);
            } else if (name == "beta") {
                need(2);
                v = specfun::beta_fn(a[0], a[1]);
            } else if (name == "besselj") {
                need(2);
                v = specfun::bessel_j(specfun::BesselOrder(a[0]), a[1]);
            } else if (name == "besseli_scaled") {
                need(2);
                if (a[0] != static_cast<int>(a[0])) throw DomainError("order must be an integer");
                v = specfun::bessel_i_scaled(static_cast<int>(a[0]), a[1]);
            } else if (name == "hyp2f1") {
                need(4);
                v = specfun::gauss_2f1({a[0], a[1], a[2], a[3]});
            } else {
                throw DomainError("unknown function '" + name + "'");
            }
            std::printf("%.17g\n", v);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "line %d: %s\n", n, e.what());
            std::printf("nan\n");
            status = cli::kExitFailure;
        }
    }
    return status;
}

Vec2 parse_vec(const std::vector<double>& v) { return {v.at(0), v.at(1)}; }

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Heat and relativistic kernels of radial magnetic Schroedinger operators"};
    app.require_subcommand(1);
    int threads = 1;
    std::string config_path;
    std::string out_path;
    std::string suite = "all";
    std::string csv_in;

    auto* compute = app.add_subcommand("compute", "Evaluate kernels on the configured grid and write CSV");
    compute->add_option("--config", config_path, "Config file")->required();
    compute->add_option("--out", out_path, "CSV output path (default: [output] csv, else stdout)");
    compute->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "Run invariant suites and write a JSON report");
    verify->add_option("--suite", suite, "specfun, quad, ab, radial, bounds or all");
    verify->add_option("--config", config_path, "Config file (only its [output] json is used)");
    verify->add_option("--out", out_path, "JSON output path");
    verify->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    auto* fit = app.add_subcommand("fit", "Fit power-law decay to a kernel CSV");
    fit->add_option("csv", csv_in, "CSV written by compute")->required();
    fit->add_option("--out", out_path, "JSON output path");

    auto* ab_cmd = app.add_subcommand("ab", "Aharonov-Bohm kernels");
    ab_cmd->require_subcommand(1);
    double nu = 0.0, r = 1.0, rp = 1.0, t = 1.0, alpha = 0.5, eps = 0.25;
    std::string route = "euler";
    std::vector<double> xv{1.0, 0.0}, yv{1.0, 0.0}, radii{0.0, 1.0, 2.0, 5.0};
    int modes = 0;
    auto* ab_diag = ab_cmd->add_subcommand("diag", "Partial-wave kernel p_m(r, r', t)");
    ab_diag->add_option("--nu", nu, "Order |m + alpha|")->required();
    ab_diag->add_option("--r", r, "Radius r")->required();
    ab_diag->add_option("--rp", rp, "Radius r' (default r)");
    ab_diag->add_option("--t", t, "Time")->required();
    ab_diag->add_option("--route", route, "euler or hypergeometric (diagonal only)");
    auto* ab_kernel = ab_cmd->add_subcommand("kernel", "Full kernel K(x, y, t)");
    ab_kernel->add_option("--alpha", alpha, "Flux")->required();
    ab_kernel->add_option("--t", t, "Time")->required();
    ab_kernel->add_option("--x", xv, "x1 x2")->expected(2);
    ab_kernel->add_option("--y", yv, "y1 y2")->expected(2);
    ab_kernel->add_option("--modes", modes, "Mode cutoff (0: automatic)");
    auto* ab_sup = ab_cmd->add_subcommand("weighted-sup", "Weighted sup of the kernel over a radius grid");
    ab_sup->add_option("--alpha", alpha, "Flux")->required();
    ab_sup->add_option("--t", t, "Time")->required();
    ab_sup->add_option("--eps", eps, "Weight exponent in (0, eps0)");
    ab_sup->add_option("--radii", radii, "Radius grid")->delimiter(',');

    auto* quad_cmd = app.add_subcommand("quad", "Quadrature tools");
    quad_cmd->require_subcommand(1);
    auto* selftest = quad_cmd->add_subcommand("selftest", "Run the quadrature checks");

    auto* specfun_cmd = app.add_subcommand("specfun", "Special functions");
    specfun_cmd->require_subcommand(1);
    auto* eval = specfun_cmd->add_subcommand(
        "eval", "Read 'name args' lines from stdin: gamma, lgamma, beta, besselj, besseli_scaled, hyp2f1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kExitOk : cli::kExitConfig;
    }

    try {
        if (*compute) {
            const cli::RunConfig cfg = cli::load_config(config_path);
            std::ostringstream csv;
            cli::write_csv(csv, cli::cmd_compute(cfg, threads));
            emit(out_path.empty() ? cfg.output.csv_path : out_path, csv.str());
            return cli::kExitOk;
        }
        if (*verify) {
            const cli::Suite s = cli::suite_from_name(suite);
            if (!config_path.empty() && out_path.empty()) out_path = cli::load_config(config_path).output.json_path;
            const cli::VerifyReport report = cli::cmd_verify(s, threads);
            print_table(report);
            if (!out_path.empty()) emit(out_path, report.to_json().dump(2) + "\n");
            return report.pass() ? cli::kExitOk : cli::kExitFailure;
        }
        if (*fit) {
            std::ifstream in(csv_in);
            if (!in) throw cli::ConfigError(csv_in + ": cannot open CSV file");
            emit(out_path, cli::to_json(cli::cmd_fit(in)).dump(2) + "\n");
            return cli::kExitOk;
        }
        if (*ab_diag) {
            const specfun::BesselOrder order(nu);
            if (ab_diag->count("--rp") == 0) rp = r;
            const ab::ABModeArgs args{order, r, rp, t};
            double v = 0.0;
            if (r == rp) {
                if (route != "euler" && route != "hypergeometric") throw cli::ConfigError("--route: unknown route");
                v = ab::pm_diag(args, route == "euler" ? ab::DiagRoute::euler_integral : ab::DiagRoute::hypergeometric);
            } else {
                v = ab::pm_offdiag(args);
            }
            std::printf("%.17g\n", v);
            return cli::kExitOk;
        }
        if (*ab_kernel) {
            const ab::FullKernel k = ab::ab_full_kernel(alpha, t, parse_vec(xv), parse_vec(yv), modes);
            std::printf("%s\n", nlohmann::json{{"re", k.value.real()},
                                               {"im", k.value.imag()},
                                               {"tail", k.tail},
                                               {"modes", k.modes},
                                               {"cutoff_warning", k.cutoff_warning}}
                                    .dump()
                                    .c_str());
            return cli::kExitOk;
        }
        if (*ab_sup) {
            std::printf("%.17g\n", ab::weighted_sup(alpha, t, eps, radii));
            return cli::kExitOk;
        }
        if (*selftest) {
            const cli::VerifyReport report = cli::cmd_verify(cli::Suite::quad);
            print_table(report);
            return report.pass() ? cli::kExitOk : cli::kExitFailure;
        }
        if (*eval) return run_specfun_eval();
    } catch (const cli::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return cli::kExitConfig;
    } catch (const cli::CsvError& e) {
        std::fprintf(stderr, "csv error: %s\n", e.what());
        return cli::kExitConfig;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return cli::kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return cli::kExitFailure;
    }
    return cli::kExitOk;
}
