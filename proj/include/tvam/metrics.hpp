#pragma once

#include <cstddef>
#include <vector>

#include "tvam/geometry.hpp"
#include "tvam/projector.hpp"

namespace tvam {

// Percentile with linear interpolation between order statistics; p in [0,100].
double percentile(std::vector<double> values, double p);

struct MetricReport {
    double pw = 0.0;    // trimmed min(f_in) - trimmed max(f_out)
    double ipdr = 0.0;  // trimmed range of f_in
    double ver = 0.0;   // out-of-part voxels above the trimmed in-part minimum
    double alpha = 0.0; // percent trimmed at each extreme
    std::size_t n_in = 0, n_out = 0;
    int slice = -1;     // -1: whole volume
};

// PW = percentile(f_in, alpha) - percentile(f_out, 100 - alpha).
// alpha = 0 reduces exactly to min/max. alpha is a percentage in [0, 50).
double process_window(const DoseImage& dose, const TargetGeometry& geom,
                      double alpha, int slice = -1);

// IPDR = percentile(f_in, 100 - alpha) - percentile(f_in, alpha).
double in_part_dose_range(const DoseImage& dose, const TargetGeometry& geom,
                          double alpha, int slice = -1);

// VER = |{i in I_out : f_i > percentile(f_in, alpha)}| / (n_in + n_out).
double voxel_error_rate(const DoseImage& dose, const TargetGeometry& geom,
                        double alpha, int slice = -1);

MetricReport metric_report(const DoseImage& dose, const TargetGeometry& geom,
                           double alpha, int slice = -1);

// Fixed-width histograms of the in-part and out-of-part doses over
// [0, max dose over the printable region]; external voxels excluded.
struct DoseHistogram {
    double lo = 0.0, hi = 0.0;
    std::vector<std::size_t> in_counts, out_counts;
};
DoseHistogram histogram(const DoseImage& dose, const TargetGeometry& geom, int bins);

// Max dose over the printable region (in-part plus out-of-part voxels).
double max_printable_dose(const DoseImage& dose, const TargetGeometry& geom);

} // namespace tvam
