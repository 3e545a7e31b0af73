#include "relkernel/cli/commands.hpp"

#include "relkernel/ab_kernel.hpp"
#include "relkernel/errors.hpp"
#include "relkernel/radial_solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <map>
#include <memory>
#include <sstream>
#include <thread>
#include <tuple>

namespace relkernel::cli {

namespace {

// Runs body(i) for i < n on up to `threads` workers; the first failure by index is rethrown.
template <class Body>
void parallel_for(std::size_t n, int threads, Body body)
{
    const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), std::max<std::size_t>(n, 1));
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

radial::RadialGrid make_grid(const SolverConfig& s)
{
    return s.grid == GridKind::uniform ? radial::RadialGrid::uniform(s.r_max, s.n)
                                       : radial::RadialGrid::stretched(s.h0, s.growth, s.r_max);
}

} // namespace

std::vector<bounds::KernelSample> cmd_compute(const RunConfig& config, int threads)
{
    const std::vector<double> times = config.time.values();
    const std::size_t pairs = config.points.size();
    std::vector<bounds::KernelSample> out(times.size() * pairs);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].t = times[i / pairs];
        out[i].x = config.points[i % pairs].x;
        out[i].y = config.points[i % pairs].y;
    }

    const field::FieldKind kind = config.profile.kind();
    const bool exact = kind == field::FieldKind::aharonov_bohm || (kind == field::FieldKind::zero && config.mass == 0.0);
    if (exact) {
        const double alpha = kind == field::FieldKind::aharonov_bohm ? config.profile.ab_alpha() : 0.0;
        parallel_for(out.size(), threads, [&](std::size_t i) {
            bounds::KernelSample& s = out[i];
            const ab::FullKernel k = ab::ab_full_kernel(alpha, s.t, s.x, s.y, config.solver.mode_cutoff);
            s.value = k.value;
            s.error = k.tail;
            s.method = s.x.norm() == s.y.norm() ? "ab-closed" : "ab-quadrature";
        });
        return out;
    }

    radial::SolverOptions options;
    options.mode_cutoff = config.solver.mode_cutoff;
    options.threads = std::max(threads, 1);
    const radial::RadialSolver solver(field::make_flux_data(config.profile), make_grid(config.solver), options);
    parallel_for(out.size(), threads, [&](std::size_t i) {
        bounds::KernelSample& s = out[i];
        const radial::KernelValue k = solver.relativistic_kernel(s.x, s.y, s.t, config.mass, config.quad);
        s.value = k.value;
        s.error = k.error;
        s.method = "solver+subordination";
    });
    return out;
}

void write_csv(std::ostream& out, const std::vector<bounds::KernelSample>& samples)
{
    out << "t,x1,x2,y1,y2,re,im,err,method\n";
    char buf[512];
    for (const bounds::KernelSample& s : samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,", s.t, s.x.x1, s.x.x2,
                      s.y.x1, s.y.x2, s.value.real(), s.value.imag(), s.error);
        out << buf << s.method << '\n';
    }
}

std::vector<bounds::KernelSample> read_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) throw CsvError("row 1: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,x1,x2,y1,y2,re,im,err,method")
        throw CsvError("row 1: expected header t,x1,x2,y1,y2,re,im,err,method");
    std::vector<bounds::KernelSample> out;
    for (int row = 2; std::getline(in, line); ++row) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        if (cells.size() != 9) throw CsvError("row " + std::to_string(row) + ": expected 9 columns");
        double v[8];
        for (int c = 0; c < 8; ++c) {
            char* end = nullptr;
            v[c] = std::strtod(cells[c].c_str(), &end);
            if (cells[c].empty() || *end != '\0' || !std::isfinite(v[c]))
                throw CsvError("row " + std::to_string(row) + ": column " + std::to_string(c + 1) +
                               " is not a finite number");
        }
        if (!(v[0] > 0.0)) throw CsvError("row " + std::to_string(row) + ": t must be positive");
        out.push_back({v[0], {v[1], v[2]}, {v[3], v[4]}, {v[5], v[6]}, v[7], cells[8]});
    }
    return out;
}

std::vector<GroupFit> fit_samples(const std::vector<bounds::KernelSample>& samples)
{
    using Key = std::tuple<double, double, double, double>;
    std::vector<Key> order;
    std::map<Key, std::vector<std::pair<double, double>>> groups;
    for (const bounds::KernelSample& s : samples) {
        const Key key{s.x.x1, s.x.x2, s.y.x1, s.y.x2};
        if (!groups.count(key)) order.push_back(key);
        groups[key].emplace_back(s.t, std::abs(s.value));
    }
    std::vector<GroupFit> out;
    for (const Key& key : order) {
        auto& g = groups[key];
        std::stable_sort(g.begin(), g.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<double> t;
        std::vector<double> v;
        for (const auto& [ti, vi] : g) {
            t.push_back(ti);
            v.push_back(vi);
        }
        GroupFit gf;
        gf.pair = {{std::get<0>(key), std::get<1>(key)}, {std::get<2>(key), std::get<3>(key)}};
        gf.fit = bounds::fit_exponent(t, v);
        out.push_back(std::move(gf));
    }
    return out;
}

std::vector<GroupFit> cmd_fit(std::istream& csv) { return fit_samples(read_csv(csv)); }

nlohmann::json to_json(const bounds::DecayFit& fit)
{
    return {{"points", fit.times.size()},
            {"t_min", fit.times.front()},
            {"t_max", fit.times.back()},
            {"slope", fit.slope},
            {"intercept", fit.intercept},
            {"residual", fit.residual},
            {"stderr", fit.stderr_slope}};
}

nlohmann::json to_json(const std::vector<GroupFit>& fits)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const GroupFit& g : fits) {
        nlohmann::json j = to_json(g.fit);
        j["x"] = {g.pair.x.x1, g.pair.x.x2};
        j["y"] = {g.pair.y.x1, g.pair.y.x2};
        arr.push_back(std::move(j));
    }
    return {{"fits", arr}};
}

nlohmann::json to_json(const bounds::BoundReport& report)
{
    return {{"spec", bounds::kind_name(report.spec.kind)},
            {"fitted_constant", report.fitted_constant},
            {"max_ratio", report.max_ratio},
            {"training", report.training},
            {"held_out", report.held_out},
            {"pass", report.pass}};
}

bool VerifyReport::pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

nlohmann::json VerifyReport::to_json() const
{
    nlohmann::json arr = nlohmann::json::array();
    for (const Check& c : checks) {
        nlohmann::json j{{"suite", c.suite}, {"name", c.name}, {"pass", c.pass}};
        j["measured"] = std::isfinite(c.measured) ? nlohmann::json(c.measured) : nlohmann::json(nullptr);
        j["threshold"] = c.threshold;
        j["seconds"] = c.seconds;
        if (!c.detail.empty()) j["detail"] = c.detail;
        arr.push_back(std::move(j));
    }
    return {{"pass", pass()}, {"seconds", seconds}, {"checks", arr}};
}

Suite suite_from_name(const std::string& name)
{
    static const std::map<std::string, Suite> names{{"specfun", Suite::specfun}, {"quad", Suite::quad},
                                                    {"ab", Suite::ab},           {"radial", Suite::radial},
                                                    {"bounds", Suite::bounds},   {"all", Suite::all}};
    const auto it = names.find(name);
    if (it == names.end()) throw DomainError("unknown suite '" + name + "'");
    return it->second;
}

} // namespace relkernel::cli
