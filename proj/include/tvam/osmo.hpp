#pragma once

#include "tvam/geometry.hpp"
#include "tvam/projector.hpp"
#include "tvam/solver.hpp"

namespace tvam {

// Object Space Model Optimisation baseline. Thresholds are interpreted
// relative to the max-normalised dose, unlike the absolute thresholds of the
// penalty approaches.
struct OsmoOptions {
    double tau_lower = 0.85;
    double tau_upper = 0.90;
    int max_iters = 1000;
    double min_projection_value = 0.0;
    int threads = 1;

    void validate() const;
};

// Model-space iteration: forward-project the model, clamp the sinogram at
// min_projection_value, back-project, max-normalise the dose, then push the
// model away from threshold violations (subtract the out-of-part excess over
// tau_lower, add the in-part shortfall below tau_upper). Returns the final
// clamped sinogram scaled by the normalisation so that dose = backward(plan)
// and max(dose) = 1. Throws collapse_error when the clamped sinogram becomes
// identically zero and normalisation is undefined.
SolveResult solve_osmo(const TargetGeometry& geom, const ProjectionGeometry& pg,
                       const OsmoOptions& opts);

} // namespace tvam
