#pragma once

#include "relkernel/bounds_fit.hpp"
#include "relkernel/cli/config.hpp"

#include <json.hpp>

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace relkernel::cli {

/// Malformed kernel CSV; the message names the row.
class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One sample per (t, pair), ordered by t and then by pair. Aharonov-Bohm profiles and the
/// massless zero field use the exact mode sum, everything else the radial solver with
/// subordination. Results do not depend on `threads`.
std::vector<bounds::KernelSample> cmd_compute(const RunConfig& config, int threads = 1);

/// Header t,x1,x2,y1,y2,re,im,err,method; numbers with 17 significant digits.
void write_csv(std::ostream& out, const std::vector<bounds::KernelSample>& samples);
/// Throws CsvError.
std::vector<bounds::KernelSample> read_csv(std::istream& in);

struct GroupFit {
    PointPair pair;
    bounds::DecayFit fit;
};

/// Power-law fit of |K| against t for each (x, y) pair, in order of first appearance.
/// Throws DomainError when a group has fewer than 4 times.
std::vector<GroupFit> fit_samples(const std::vector<bounds::KernelSample>& samples);
/// fit_samples(read_csv(in)).
std::vector<GroupFit> cmd_fit(std::istream& csv);

nlohmann::json to_json(const bounds::DecayFit& fit);
nlohmann::json to_json(const std::vector<GroupFit>& fits);
nlohmann::json to_json(const bounds::BoundReport& report);

struct Check {
    std::string suite;
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyReport {
    std::vector<Check> checks;
    double seconds = 0.0;

    bool pass() const;
    nlohmann::json to_json() const;
};

enum class Suite { specfun, quad, ab, radial, bounds, all };

/// Throws DomainError for unknown names.
Suite suite_from_name(const std::string& name);

/// Runs the invariant checks of one module (or all of them). Failing checks and checks that
/// throw are recorded, never rethrown.
VerifyReport cmd_verify(Suite suite, int threads = 1);

/// Exit codes of the command-line driver.
constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

} // namespace relkernel::cli
