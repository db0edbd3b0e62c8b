#include "tvam/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tvam/errors.hpp"

namespace tvam {

double percentile(std::vector<double> values, double p) {
    if (values.empty()) throw parameter_error("percentile: empty sample");
    if (!(p >= 0.0 && p <= 100.0)) throw parameter_error("percentile: p outside [0, 100]");
    std::sort(values.begin(), values.end());
    if (values.size() == 1) return values[0];
    double rank = p / 100.0 * double(values.size() - 1);
    if (rank <= 0.0) return values.front();
    if (rank >= double(values.size() - 1)) return values.back();
    std::size_t lo = std::size_t(rank);
    double fr = rank - double(lo);
    return values[lo] * (1.0 - fr) + values[lo + 1] * fr;
}

namespace {

void check_inputs(const DoseImage& dose, const TargetGeometry& geom, double alpha) {
    if (dose.nx != geom.nx || dose.nz != geom.nz)
        throw shape_error("metrics: dose shape does not match geometry");
    if (!(alpha >= 0.0 && alpha < 50.0))
        throw parameter_error("metrics: alpha must lie in [0, 50)");
}

// Gather in-part and out-of-part doses, whole volume or one slice.
void gather(const DoseImage& dose, const TargetGeometry& geom, int slice,
            std::vector<double>& f_in, std::vector<double>& f_out) {
    std::size_t b = slice < 0 ? 0 : slice * geom.slice_size();
    std::size_t e = slice < 0 ? geom.size() : b + geom.slice_size();
    for (std::size_t i = b; i < e; ++i) {
        if (geom.labels[i] == Label::in_part) f_in.push_back(dose.values[i]);
        else if (geom.labels[i] == Label::out_part) f_out.push_back(dose.values[i]);
    }
    if (f_in.empty() || f_out.empty())
        throw degenerate_geometry_error("metrics: empty in-part or out-of-part set");
}

} // namespace

double process_window(const DoseImage& dose, const TargetGeometry& geom,
                      double alpha, int slice) {
    check_inputs(dose, geom, alpha);
    std::vector<double> f_in, f_out;
    gather(dose, geom, slice, f_in, f_out);
    if (alpha == 0.0) {
        return *std::min_element(f_in.begin(), f_in.end()) -
               *std::max_element(f_out.begin(), f_out.end());
    }
    return percentile(std::move(f_in), alpha) - percentile(std::move(f_out), 100.0 - alpha);
}

double in_part_dose_range(const DoseImage& dose, const TargetGeometry& geom,
                          double alpha, int slice) {
    check_inputs(dose, geom, alpha);
    std::vector<double> f_in, f_out;
    gather(dose, geom, slice, f_in, f_out);
    if (alpha == 0.0) {
        auto [mn, mx] = std::minmax_element(f_in.begin(), f_in.end());
        return *mx - *mn;
    }
    return percentile(f_in, 100.0 - alpha) - percentile(f_in, alpha);
}

double voxel_error_rate(const DoseImage& dose, const TargetGeometry& geom,
                        double alpha, int slice) {
    check_inputs(dose, geom, alpha);
    std::vector<double> f_in, f_out;
    gather(dose, geom, slice, f_in, f_out);
    double lo_in = alpha == 0.0 ? *std::min_element(f_in.begin(), f_in.end())
                                : percentile(f_in, alpha);
    std::size_t w = 0;
    for (double v : f_out)
        if (v > lo_in) ++w;
    // Normalised by |I_in u I_out|, the printable-region voxel count.
    return double(w) / double(f_in.size() + f_out.size());
}

MetricReport metric_report(const DoseImage& dose, const TargetGeometry& geom,
                           double alpha, int slice) {
    MetricReport r;
    r.alpha = alpha;
    r.slice = slice;
    r.pw = process_window(dose, geom, alpha, slice);
    r.ipdr = in_part_dose_range(dose, geom, alpha, slice);
    r.ver = voxel_error_rate(dose, geom, alpha, slice);
    r.n_in = geom.count(Label::in_part, slice);
    r.n_out = geom.count(Label::out_part, slice);
    return r;
}

DoseHistogram histogram(const DoseImage& dose, const TargetGeometry& geom, int bins) {
    check_inputs(dose, geom, 0.0);
    if (bins < 2) throw parameter_error("histogram: bins must be >= 2");
    std::vector<double> f_in, f_out;
    gather(dose, geom, -1, f_in, f_out);
    DoseHistogram h;
    h.lo = 0.0;
    h.hi = max_printable_dose(dose, geom);
    h.in_counts.assign(bins, 0);
    h.out_counts.assign(bins, 0);
    double width = h.hi > h.lo ? (h.hi - h.lo) / bins : 1.0;
    auto bin_of = [&](double v) {
        int b = int((v - h.lo) / width);
        if (b < 0) b = 0;
        if (b >= bins) b = bins - 1;  // top edge inclusive
        return b;
    };
    for (double v : f_in) ++h.in_counts[bin_of(v)];
    for (double v : f_out) ++h.out_counts[bin_of(v)];
    return h;
}

double max_printable_dose(const DoseImage& dose, const TargetGeometry& geom) {
    check_inputs(dose, geom, 0.0);
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < geom.size(); ++i)
        if (geom.labels[i] != Label::external && dose.values[i] > m) m = dose.values[i];
    return m;
}

} // namespace tvam
