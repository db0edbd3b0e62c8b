#pragma once

#include <string>

#include "tvam/geometry.hpp"
#include "tvam/projector.hpp"

namespace tvam {

enum class PenaltyFamily { l2n, osp, ospw };

std::string to_string(PenaltyFamily f);
PenaltyFamily penalty_family_from_string(const std::string& s);

// Quadratic threshold penalties. tau_lower bounds the out-of-part dose from
// above, tau_upper bounds the in-part dose from below; OSPW additionally
// leaves a dead zone of width w above tau_upper before penalising high
// in-part doses. OSPW with w = 0 is the mixed one-sided-out / two-sided-in
// form.
struct PenaltyConfig {
    PenaltyFamily family = PenaltyFamily::ospw;
    double tau_lower = 0.70;
    double tau_upper = 0.90;
    double w = 0.0;  // OSPW only

    void validate() const;
};

double p_out(double x, const PenaltyConfig& cfg);
double dp_out(double x, const PenaltyConfig& cfg);
double p_in(double x, const PenaltyConfig& cfg);
double dp_in(double x, const PenaltyConfig& cfg);

// Objective evaluated on a dose image: sum of p_out over out-of-part voxels
// plus p_in over in-part voxels; external voxels contribute nothing.
double objective_dose(const DoseImage& f, const TargetGeometry& geom,
                      const PenaltyConfig& cfg);

// Elementwise penalty slope dp(f) with external voxels zeroed.
DoseImage penalty_slope_dose(const DoseImage& f, const TargetGeometry& geom,
                             const PenaltyConfig& cfg);

// F(g) = sum p(A^T g) and its gradient A dp(A^T g).
double objective(const Sinogram& g, const TargetGeometry& geom,
                 const ProjectionGeometry& pg, const PenaltyConfig& cfg);
Sinogram gradient(const Sinogram& g, const TargetGeometry& geom,
                  const ProjectionGeometry& pg, const PenaltyConfig& cfg);

} // namespace tvam
