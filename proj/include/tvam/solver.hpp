#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tvam/geometry.hpp"
#include "tvam/penalty.hpp"
#include "tvam/projector.hpp"

namespace tvam {

enum class InitScheme { zeros, clipped_fbp };

struct SolveOptions {
    int max_iters = 1000;
    double step = 0.0;           // <= 0: auto, 1/(2 * 1.05 * ||A||^2 estimate)
    InitScheme init = InitScheme::zeros;
    int record_every = 0;        // <= 0: record initial and final objective only
    std::uint64_t seed = 0;      // power-iteration start for the auto step
    int norm_iters = 50;
    int threads = 1;             // slice parallelism in solve_volume

    void validate() const;
};

struct SolveResult {
    Sinogram plan;      // non-negative
    DoseImage dose;     // backward(plan)
    std::vector<std::pair<int, double>> history;  // (iter, objective)
    int iters_run = 0;
};

// Projected FISTA on F(g) = sum p(A^T g) with g >= 0, run for exactly
// max_iters iterations (no early stopping). Deterministic given options.
SolveResult solve(const TargetGeometry& geom, const ProjectionGeometry& pg,
                  const PenaltyConfig& cfg, const SolveOptions& opts);

// Slice-independent 3D solve; bit-identical to solving each slice alone.
// History holds the summed per-slice objectives at shared checkpoints.
SolveResult solve_volume(const TargetGeometry& geom, const ProjectionGeometry& pg,
                         const PenaltyConfig& cfg, const SolveOptions& opts);

// FISTA step size for the quadratic penalties (Lipschitz constant 2) with a
// 1.05 safety factor on the power-iteration estimate of ||A||^2.
double auto_step(const ProjectionGeometry& pg, int norm_iters, std::uint64_t seed);

// Clipped filtered back-projection of the binary target: the historical
// illumination plan, offered as an alternative initialiser.
Sinogram clipped_fbp_plan(const TargetGeometry& geom, const ProjectionGeometry& pg);

} // namespace tvam
