#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tvam/geometry.hpp"
#include "tvam/osmo.hpp"
#include "tvam/penalty.hpp"
#include "tvam/projector.hpp"
#include "tvam/solver.hpp"

namespace tvam {

enum class SweepMethod { l2n, osp, ospw, osmo };

std::string to_string(SweepMethod m);
SweepMethod sweep_method_from_string(const std::string& s);

// w selection per threshold pair: either a fixed value or w = 1 - tau_upper
// (clamped at 0). Only meaningful for OSPW.
struct WRule {
    bool complement = false;
    double w = 0.0;
};
double apply_w_rule(double tau_upper, const WRule& rule);

// One record per admissible (tau_lower, tau_upper) pair. Thresholds are held
// as exact centi values (integer 100*tau) so CSV keys never drift.
struct SweepRecord {
    int tl_centi = 0, tu_centi = 0;
    double w = 0.0;
    bool failed = false;
    std::string fail_reason;
    double pw = 0.0, ipdr = 0.0, ver = 0.0;
    double max_dose = 0.0;  // over the printable region
};

struct SweepGrid {
    std::vector<int> tau_centi;  // ascending grid values, as 100*tau
    std::vector<SweepRecord> records;
    std::string method_tag, geometry_tag;
    double alpha = 0.0;
};

// The default 26-value grid 0.00, 0.04, ..., 1.00 giving C(26,2) = 325 pairs.
std::vector<int> default_tau_grid_centi();

struct SweepOptions {
    int iters = 1000;
    double alpha = 0.0;
    WRule w_rule;
    double osmo_min_projection_value = 0.0;
    int threads = 1;
    std::uint64_t seed = 0;
    std::vector<int> grid_centi;  // empty: default grid
    std::string geometry_tag;
};

// Run the method on every threshold pair of the grid; individual failures
// (e.g. OSMO collapse) are recorded per pair and never abort the sweep.
SweepGrid run_sweep(const TargetGeometry& geom, const ProjectionGeometry& pg,
                    SweepMethod method, const SweepOptions& opts);

// Admissible pair (not failed, max_dose <= 1 when excluding overdose) with
// maximal PW; ties broken by larger tau_upper, then larger tau_lower.
std::pair<double, double> select_pw_optimal(const SweepGrid& grid,
                                            bool exclude_overdose = true);

enum class SweepMetric { pw, ipdr, ver };

// Dense upper-triangular CSV matrix (rows tau_lower, columns tau_upper);
// inadmissible and failed cells stay blank. max_scale clamps values, the
// CSV analogue of restricting a colour map's range.
void export_colormap(const SweepGrid& grid, SweepMetric metric,
                     const std::filesystem::path& path,
                     std::optional<double> max_scale = std::nullopt);

void save_sweep_csv(const std::filesystem::path& path, const SweepGrid& grid);
SweepGrid load_sweep_csv(const std::filesystem::path& path);

void save_sweep_summary_json(const std::filesystem::path& path, const SweepGrid& grid,
                             bool exclude_overdose = true);

} // namespace tvam
