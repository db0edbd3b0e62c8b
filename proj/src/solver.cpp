#include "tvam/solver.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tvam/errors.hpp"
#include "tvam/parallel.hpp"

namespace tvam {

void SolveOptions::validate() const {
    if (max_iters < 0) throw parameter_error("solve options: max_iters must be >= 0");
    if (record_every < 0 && record_every != 0)
        throw parameter_error("solve options: record_every must be >= 0");
}

double auto_step(const ProjectionGeometry& pg, int norm_iters, std::uint64_t seed) {
    double norm_sq = operator_norm(pg, norm_iters, seed);
    return 1.0 / (2.0 * 1.05 * norm_sq);
}

Sinogram clipped_fbp_plan(const TargetGeometry& geom, const ProjectionGeometry& pg) {
    Sinogram plan = Sinogram::zeros(pg, geom.nz);
    const int nb = pg.n_bins;
    // Ram-Lak kernel in the spatial domain.
    std::vector<double> h(nb, 0.0);
    h[0] = 0.25;
    for (int k = 1; k < nb; k += 2)
        h[k] = -1.0 / (std::numbers::pi * std::numbers::pi * k * k);
    for (int iz = 0; iz < geom.nz; ++iz) {
        std::vector<double> t = geom.target_image(iz);
        std::vector<double> sino(std::size_t(pg.n_angles) * nb);
        forward_slice(t.data(), sino.data(), pg);
        // forward carries a 1/n_angles factor and backward another; the
        // inverse-transform quadrature weight pi/n_angles then leaves a net
        // factor pi * n_angles on the filtered projections.
        const double s = std::numbers::pi * pg.n_angles;
        for (int ia = 0; ia < pg.n_angles; ++ia) {
            const double* row = sino.data() + std::size_t(ia) * nb;
            for (int ib = 0; ib < nb; ++ib) {
                double acc = 0.0;
                for (int k = 0; k < nb; ++k) {
                    int d = ib - k;
                    if (d < 0) d = -d;
                    acc += h[d] * row[k];
                }
                double v = acc * s;
                plan.values[plan.index(iz, ia, ib)] = v > 0.0 ? v : 0.0;
            }
        }
    }
    return plan;
}

namespace {

// Single-slice projected FISTA; geometry must have nz == 1.
SolveResult solve_slice(const TargetGeometry& geom, const ProjectionGeometry& pg,
                        const PenaltyConfig& cfg, const SolveOptions& opts,
                        double step, const Sinogram* init_plan) {
    const std::size_t ns = std::size_t(pg.n_angles) * pg.n_bins;
    const std::size_t ni = std::size_t(pg.nx) * pg.nx;

    std::vector<double> g(ns, 0.0), g_prev(ns), y(ns), grad(ns);
    std::vector<double> f(ni), slope(ni);
    if (init_plan) g = init_plan->values;
    g_prev = g;
    y = g;

    DoseImage fimg;
    fimg.nx = pg.nx;
    fimg.nz = 1;

    auto objective_of = [&](const std::vector<double>& v) {
        backward_slice(v.data(), f.data(), pg);
        fimg.values = f;
        return objective_dose(fimg, geom, cfg);
    };

    SolveResult res;
    res.history.emplace_back(0, objective_of(g));

    double t = 1.0;
    for (int it = 1; it <= opts.max_iters; ++it) {
        backward_slice(y.data(), f.data(), pg);
        for (std::size_t i = 0; i < ni; ++i) {
            switch (geom.labels[i]) {
                case Label::in_part: slope[i] = dp_in(f[i], cfg); break;
                case Label::out_part: slope[i] = dp_out(f[i], cfg); break;
                case Label::external: slope[i] = 0.0; break;
            }
        }
        forward_slice(slope.data(), grad.data(), pg);

        double t_new = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        const double beta = (t - 1.0) / t_new;
        double maxabs = 0.0;
        for (std::size_t i = 0; i < ns; ++i) {
            double gn = y[i] - step * grad[i];
            if (gn < 0.0) gn = 0.0;
            y[i] = gn + beta * (gn - g_prev[i]);
            g_prev[i] = gn;
            if (std::fabs(gn) > maxabs) maxabs = std::fabs(gn);
        }
        g = g_prev;  // g_prev now holds the new iterate (and stays as the
                     // previous iterate for the next momentum step)
        t = t_new;
        if (!std::isfinite(maxabs))
            throw divergence_error("solve: non-finite iterate at iteration " +
                                       std::to_string(it), it);
        if (opts.record_every > 0 && it % opts.record_every == 0 && it != opts.max_iters)
            res.history.emplace_back(it, objective_of(g));
    }
    if (opts.max_iters > 0)
        res.history.emplace_back(opts.max_iters, objective_of(g));

    res.plan.n_angles = pg.n_angles;
    res.plan.n_bins = pg.n_bins;
    res.plan.nz = 1;
    res.plan.values = std::move(g);
    backward_slice(res.plan.values.data(), f.data(), pg);
    res.dose.nx = pg.nx;
    res.dose.nz = 1;
    res.dose.values = std::move(f);
    res.iters_run = opts.max_iters;
    return res;
}

} // namespace

SolveResult solve(const TargetGeometry& geom, const ProjectionGeometry& pg,
                  const PenaltyConfig& cfg, const SolveOptions& opts) {
    if (geom.nz != 1) throw shape_error("solve: expected a single-slice geometry");
    return solve_volume(geom, pg, cfg, opts);
}

SolveResult solve_volume(const TargetGeometry& geom, const ProjectionGeometry& pg,
                         const PenaltyConfig& cfg, const SolveOptions& opts) {
    pg.validate();
    cfg.validate();
    opts.validate();
    if (geom.nx != pg.nx)
        throw shape_error("solve: geometry nx does not match projection geometry");
    {
        std::string bad;
        for (int iz = 0; iz < geom.nz; ++iz)
            if (geom.count(Label::in_part, iz) == 0 || geom.count(Label::out_part, iz) == 0) {
                if (!bad.empty()) bad += ",";
                bad += std::to_string(iz);
            }
        if (!bad.empty())
            throw degenerate_geometry_error("solve: degenerate slices: " + bad);
    }

    const double step = opts.step > 0.0 ? opts.step
                                        : auto_step(pg, opts.norm_iters, opts.seed);

    Sinogram init;
    const bool use_fbp = opts.init == InitScheme::clipped_fbp;
    if (use_fbp) init = clipped_fbp_plan(geom, pg);

    std::vector<SolveResult> parts(geom.nz);
    parallel_for(geom.nz, opts.threads, [&](std::size_t iz) {
        TargetGeometry sl = geom.slice(int(iz));
        const Sinogram* ip = nullptr;
        Sinogram slice_init;
        if (use_fbp) {
            slice_init.n_angles = pg.n_angles;
            slice_init.n_bins = pg.n_bins;
            slice_init.nz = 1;
            slice_init.values.assign(
                init.values.begin() + iz * init.slice_size(),
                init.values.begin() + (iz + 1) * init.slice_size());
            ip = &slice_init;
        }
        parts[iz] = solve_slice(sl, pg, cfg, opts, step, ip);
    });

    SolveResult res;
    res.plan = Sinogram::zeros(pg, geom.nz);
    res.dose = DoseImage::zeros(geom.nx, geom.nz);
    res.iters_run = opts.max_iters;
    for (int iz = 0; iz < geom.nz; ++iz) {
        std::copy(parts[iz].plan.values.begin(), parts[iz].plan.values.end(),
                  res.plan.values.begin() + iz * res.plan.slice_size());
        std::copy(parts[iz].dose.values.begin(), parts[iz].dose.values.end(),
                  res.dose.values.begin() + iz * res.dose.slice_size());
    }
    // Checkpoints are shared across slices; sum the per-slice objectives.
    res.history = parts[0].history;
    for (int iz = 1; iz < geom.nz; ++iz)
        for (std::size_t k = 0; k < res.history.size(); ++k)
            res.history[k].second += parts[iz].history[k].second;
    return res;
}

} // namespace tvam
