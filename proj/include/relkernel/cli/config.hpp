#pragma once

#include "relkernel/field.hpp"
#include "relkernel/geometry.hpp"
#include "relkernel/quad.hpp"

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace relkernel::cli {

/// Invalid configuration; the message names the line and field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Spacing { log, linear };

struct TimeGrid {
    double t_min = 1.0;
    double t_max = 10.0;
    int points = 8;
    Spacing spacing = Spacing::log;

    std::vector<double> values() const;
};

struct PointPair {
    Vec2 x;
    Vec2 y;
};

enum class GridKind { uniform, stretched };

struct SolverConfig {
    GridKind grid = GridKind::uniform;
    double r_max = 20.0;
    int n = 800;
    double h0 = 0.02;
    double growth = 0.02;
    int mode_cutoff = 0;
};

struct OutputConfig {
    std::string csv_path;
    std::string json_path;
};

/// Parsed run configuration.
///
///   [profile]  kind = zero|step|gaussian_truncated|aharonov_bohm|table, b0, radius, sigma, alpha, file
///   [physics]  mass
///   [time]     t_min, t_max, points, spacing = log|linear
///   [points]   pair = x1 x2 y1 y2   (repeatable)
///   [solver]   grid = uniform|stretched, r_max, n, h0, growth, mode_cutoff
///   [quad]     abs_tol, rel_tol, max_subdivisions, transform = none|exp_substitution|double_exponential
///   [output]   csv, json
struct RunConfig {
    field::FieldProfile profile;
    double mass = 0.0;
    TimeGrid time;
    std::vector<PointPair> points;
    SolverConfig solver;
    quad::QuadratureSpec quad;
    OutputConfig output;
};

/// Throws ConfigError.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

} // namespace relkernel::cli
