#include "relkernel/cli/config.hpp"

#include "relkernel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace relkernel::cli {

std::vector<double> TimeGrid::values() const
{
    std::vector<double> out(points);
    for (int i = 0; i < points; ++i) {
        const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        out[i] = spacing == Spacing::log ? std::exp(std::log(t_min) + f * (std::log(t_max) - std::log(t_min)))
                                         : t_min + f * (t_max - t_min);
    }
    out.front() = t_min;
    out.back() = t_max;
    return out;
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Entry {
    std::string value;
    int line = 0;
};

class Parser {
public:
    explicit Parser(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(int line, const std::string& field, const std::string& what) const
    {
        std::ostringstream msg;
        msg << source_;
        if (line > 0) msg << ":" << line;
        msg << ": " << field << ": " << what;
        throw ConfigError(msg.str());
    }

    std::map<std::string, Entry> entries;
    std::vector<Entry> pairs;

    void read(std::istream& in)
    {
        static const std::map<std::string, std::vector<std::string>> known{
            {"profile", {"kind", "b0", "radius", "sigma", "alpha", "file"}},
            {"physics", {"mass"}},
            {"time", {"t_min", "t_max", "points", "spacing"}},
            {"points", {"pair"}},
            {"solver", {"grid", "r_max", "n", "h0", "growth", "mode_cutoff"}},
            {"quad", {"abs_tol", "rel_tol", "max_subdivisions", "transform"}},
            {"output", {"csv", "json"}},
        };
        std::string section;
        std::string raw;
        for (int line = 1; std::getline(in, raw); ++line) {
            const auto hash = raw.find_first_of("#;");
            const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (text.empty()) continue;
            if (text.front() == '[') {
                if (text.back() != ']') fail(line, text, "unterminated section header");
                section = trim(text.substr(1, text.size() - 2));
                if (!known.count(section)) fail(line, "[" + section + "]", "unknown section");
                continue;
            }
            const auto eq = text.find('=');
            if (eq == std::string::npos) fail(line, text, "expected key = value");
            const std::string key = trim(text.substr(0, eq));
            const std::string value = trim(text.substr(eq + 1));
            if (section.empty()) fail(line, key, "key outside of a section");
            const auto& keys = known.at(section);
            if (std::find(keys.begin(), keys.end(), key) == keys.end())
                fail(line, section + "." + key, "unknown key");
            if (value.empty()) fail(line, section + "." + key, "missing value");
            if (key == "pair") {
                pairs.push_back({value, line});
                continue;
            }
            const std::string name = section + "." + key;
            if (entries.count(name)) fail(line, name, "duplicate key (first set on line " +
                                                          std::to_string(entries[name].line) + ")");
            entries[name] = {value, line};
        }
    }

    std::optional<double> number(const std::string& name) const
    {
        const auto it = entries.find(name);
        if (it == entries.end()) return std::nullopt;
        std::istringstream s(it->second.value);
        double v = 0.0;
        std::string rest;
        if (!(s >> v) || (s >> rest) || !std::isfinite(v)) fail(it->second.line, name, "not a finite number");
        return v;
    }

    std::optional<int> integer(const std::string& name) const
    {
        const auto v = number(name);
        if (!v) return std::nullopt;
        if (*v != std::floor(*v) || std::abs(*v) > 1e9) fail(line_of(name), name, "not an integer");
        return static_cast<int>(*v);
    }

    std::optional<std::string> text(const std::string& name) const
    {
        const auto it = entries.find(name);
        if (it == entries.end()) return std::nullopt;
        return it->second.value;
    }

    int line_of(const std::string& name) const
    {
        const auto it = entries.find(name);
        return it == entries.end() ? 0 : it->second.line;
    }

    void require(bool ok, const std::string& name, const std::string& what) const
    {
        if (!ok) fail(line_of(name), name, what);
    }

private:
    std::string source_;
};

double need(const Parser& p, const std::string& name)
{
    const auto v = p.number(name);
    if (!v) p.fail(0, name, "required for this profile kind");
    return *v;
}

field::FieldProfile parse_profile(const Parser& p)
{
    const std::string kind = p.text("profile.kind").value_or("zero");
    try {
        if (kind == "zero") return field::FieldProfile::zero();
        if (kind == "step") return field::FieldProfile::step(need(p, "profile.b0"), need(p, "profile.radius"));
        if (kind == "gaussian_truncated")
            return field::FieldProfile::gaussian_truncated(need(p, "profile.b0"), need(p, "profile.sigma"),
                                                           need(p, "profile.radius"));
        if (kind == "aharonov_bohm") return field::FieldProfile::aharonov_bohm(need(p, "profile.alpha"));
        if (kind == "table") {
            const auto file = p.text("profile.file");
            if (!file) p.fail(0, "profile.file", "required for this profile kind");
            return field::FieldProfile::table_from_csv(*file);
        }
    } catch (const DomainError& e) {
        p.fail(p.line_of("profile.kind"), "profile", e.what());
    }
    p.fail(p.line_of("profile.kind"), "profile.kind", "unknown kind '" + kind + "'");
}

Vec2 read_vec(std::istringstream& s, bool& ok)
{
    Vec2 v;
    ok = ok && static_cast<bool>(s >> v.x1 >> v.x2) && std::isfinite(v.x1) && std::isfinite(v.x2);
    return v;
}

} // namespace

RunConfig parse_config(std::istream& in, const std::string& source)
{
    Parser p(source);
    p.read(in);
    RunConfig cfg;
    cfg.profile = parse_profile(p);

    cfg.mass = p.number("physics.mass").value_or(0.0);
    p.require(cfg.mass >= 0.0, "physics.mass", "must be non-negative");
    p.require(!(cfg.mass > 0.0 && cfg.profile.kind() == field::FieldKind::aharonov_bohm), "physics.mass",
              "massive Aharonov-Bohm kernels are not supported");

    cfg.time.t_min = p.number("time.t_min").value_or(cfg.time.t_min);
    cfg.time.t_max = p.number("time.t_max").value_or(cfg.time.t_max);
    cfg.time.points = p.integer("time.points").value_or(cfg.time.points);
    const std::string spacing = p.text("time.spacing").value_or("log");
    p.require(spacing == "log" || spacing == "linear", "time.spacing", "must be log or linear");
    cfg.time.spacing = spacing == "log" ? Spacing::log : Spacing::linear;
    p.require(cfg.time.t_min > 0.0, "time.t_min", "must be positive");
    p.require(cfg.time.t_max >= cfg.time.t_min, "time.t_max", "must not be below t_min");
    p.require(cfg.time.points >= 2, "time.points", "must be at least 2");

    for (const Entry& e : p.pairs) {
        std::istringstream s(e.value);
        bool ok = true;
        PointPair pair;
        pair.x = read_vec(s, ok);
        pair.y = read_vec(s, ok);
        std::string rest;
        if (!ok || (s >> rest)) p.fail(e.line, "points.pair", "expected four numbers x1 x2 y1 y2");
        cfg.points.push_back(pair);
    }
    if (cfg.points.empty()) p.fail(0, "points.pair", "at least one evaluation pair is required");

    const std::string grid = p.text("solver.grid").value_or("uniform");
    p.require(grid == "uniform" || grid == "stretched", "solver.grid", "must be uniform or stretched");
    cfg.solver.grid = grid == "uniform" ? GridKind::uniform : GridKind::stretched;
    cfg.solver.r_max = p.number("solver.r_max").value_or(cfg.solver.r_max);
    cfg.solver.n = p.integer("solver.n").value_or(cfg.solver.n);
    cfg.solver.h0 = p.number("solver.h0").value_or(cfg.solver.h0);
    cfg.solver.growth = p.number("solver.growth").value_or(cfg.solver.growth);
    cfg.solver.mode_cutoff = p.integer("solver.mode_cutoff").value_or(0);
    p.require(cfg.solver.r_max > 0.0, "solver.r_max", "must be positive");
    p.require(cfg.solver.n >= 16, "solver.n", "must be at least 16");
    p.require(cfg.solver.h0 > 0.0, "solver.h0", "must be positive");
    p.require(cfg.solver.growth > 0.0, "solver.growth", "must be positive");
    p.require(cfg.solver.mode_cutoff >= 0, "solver.mode_cutoff", "must be non-negative");
    p.require(cfg.profile.support_radius() < cfg.solver.r_max, "solver.r_max", "must exceed the field support");

    cfg.quad.abs_tol = p.number("quad.abs_tol").value_or(cfg.quad.abs_tol);
    cfg.quad.rel_tol = p.number("quad.rel_tol").value_or(cfg.quad.rel_tol);
    cfg.quad.max_subdivisions = p.integer("quad.max_subdivisions").value_or(cfg.quad.max_subdivisions);
    const std::string transform = p.text("quad.transform").value_or("double_exponential");
    if (transform == "none")
        cfg.quad.transform = quad::Transform::none;
    else if (transform == "exp_substitution")
        cfg.quad.transform = quad::Transform::exp_substitution;
    else if (transform == "double_exponential")
        cfg.quad.transform = quad::Transform::double_exponential;
    else
        p.fail(p.line_of("quad.transform"), "quad.transform", "unknown transform '" + transform + "'");
    p.require(cfg.quad.abs_tol > 0.0, "quad.abs_tol", "must be positive");
    p.require(cfg.quad.rel_tol > 0.0, "quad.rel_tol", "must be positive");
    p.require(cfg.quad.max_subdivisions >= 1, "quad.max_subdivisions", "must be at least 1");

    cfg.output.csv_path = p.text("output.csv").value_or("");
    cfg.output.json_path = p.text("output.json").value_or("");
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    return parse_config(in, path);
}

} // namespace relkernel::cli
