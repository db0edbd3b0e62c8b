#include "tvam/osmo.hpp"

#include <cmath>
#include <string>

#include "tvam/errors.hpp"
#include "tvam/parallel.hpp"

namespace tvam {

void OsmoOptions::validate() const {
    if (!(tau_lower < tau_upper))
        throw parameter_error("osmo options: need tau_lower < tau_upper");
    if (max_iters < 1) throw parameter_error("osmo options: max_iters must be >= 1");
    if (min_projection_value < 0.0)
        throw parameter_error("osmo options: min_projection_value must be >= 0");
}

namespace {

void solve_osmo_slice(const TargetGeometry& geom, const ProjectionGeometry& pg,
                      const OsmoOptions& opts, int slice_index,
                      double* plan_out, double* dose_out) {
    const std::size_t ni = std::size_t(pg.nx) * pg.nx;
    const std::size_t ns = std::size_t(pg.n_angles) * pg.n_bins;

    std::vector<double> model = geom.target_image(0);
    std::vector<double> sino(ns), dose(ni);
    const double mpv = opts.min_projection_value;

    double norm = 0.0;
    for (int it = 1; it <= opts.max_iters; ++it) {
        forward_slice(model.data(), sino.data(), pg);
        for (double& v : sino)
            if (v < mpv) v = mpv;
        backward_slice(sino.data(), dose.data(), pg);
        norm = 0.0;
        for (double v : dose)
            if (v > norm) norm = v;
        if (!(norm > 0.0))
            throw collapse_error(
                "osmo: sinogram clamped to a zero-value matrix at iteration " +
                    std::to_string(it) + " (slice " + std::to_string(slice_index) + ")",
                it);
        for (double& v : dose) v /= norm;
        if (it == opts.max_iters) break;
        for (std::size_t i = 0; i < ni; ++i) {
            switch (geom.labels[i]) {
                case Label::out_part:
                    if (dose[i] > opts.tau_lower) model[i] -= dose[i] - opts.tau_lower;
                    break;
                case Label::in_part:
                    if (dose[i] < opts.tau_upper) model[i] += opts.tau_upper - dose[i];
                    break;
                case Label::external:
                    break;
            }
        }
    }
    // Scale the clamped sinogram by the normalisation so dose = backward(plan).
    for (std::size_t i = 0; i < ns; ++i) plan_out[i] = sino[i] / norm;
    for (std::size_t i = 0; i < ni; ++i) dose_out[i] = dose[i];
}

} // namespace

SolveResult solve_osmo(const TargetGeometry& geom, const ProjectionGeometry& pg,
                       const OsmoOptions& opts) {
    pg.validate();
    opts.validate();
    if (geom.nx != pg.nx)
        throw shape_error("osmo: geometry nx does not match projection geometry");
    {
        std::string bad;
        for (int iz = 0; iz < geom.nz; ++iz)
            if (geom.count(Label::in_part, iz) == 0 || geom.count(Label::out_part, iz) == 0) {
                if (!bad.empty()) bad += ",";
                bad += std::to_string(iz);
            }
        if (!bad.empty())
            throw degenerate_geometry_error("osmo: degenerate slices: " + bad);
    }

    SolveResult res;
    res.plan = Sinogram::zeros(pg, geom.nz);
    res.dose = DoseImage::zeros(geom.nx, geom.nz);
    res.iters_run = opts.max_iters;
    parallel_for(geom.nz, opts.threads, [&](std::size_t iz) {
        TargetGeometry sl = geom.slice(int(iz));
        solve_osmo_slice(sl, pg, opts, int(iz),
                         res.plan.values.data() + iz * res.plan.slice_size(),
                         res.dose.values.data() + iz * res.dose.slice_size());
    });
    return res;
}

} // namespace tvam
