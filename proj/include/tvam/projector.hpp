#pragma once

#include <cstdint>
#include <vector>

#include "tvam/geometry.hpp"

namespace tvam {

// Parallel-beam geometry: n_angles equally spaced angles in [0, pi),
// detector bins spaced one voxel apart and centred on the grid centre.
struct ProjectionGeometry {
    int n_angles = 0;
    int n_bins = 0;
    int nx = 0;
    double angle_offset = 0.0;

    // 360 angles over [0, pi); detector spanning the slice diagonal,
    // rounded up to an odd bin count so the central ray hits a bin centre.
    static ProjectionGeometry defaults_for(int nx);

    void validate() const;
    double angle(int ia) const;
};

struct Sinogram {
    int n_angles = 0;
    int n_bins = 0;
    int nz = 1;
    std::vector<double> values;  // ((iz*n_angles)+ia)*n_bins+ib

    static Sinogram zeros(const ProjectionGeometry& pg, int nz = 1);
    std::size_t index(int iz, int ia, int ib) const {
        return (std::size_t(iz) * n_angles + ia) * n_bins + ib;
    }
    std::size_t slice_size() const { return std::size_t(n_angles) * n_bins; }
};

struct DoseImage {
    int nx = 0;
    int nz = 1;
    std::vector<double> values;  // slice-row-major

    static DoseImage zeros(int nx, int nz = 1);
    std::size_t slice_size() const { return std::size_t(nx) * nx; }
};

// Joseph-style line-integral projection: march along the dominant axis,
// linear interpolation across it, scaled by the intersection length per
// step. Output is divided by n_angles so that the matching back-projection
// yields doses that are insensitive to the angle count.
Sinogram forward(const DoseImage& img, const ProjectionGeometry& pg);

// Exact transpose of forward (adjoint pair by construction), divided by
// n_angles. Preserves non-negativity.
DoseImage backward(const Sinogram& sino, const ProjectionGeometry& pg);

// Single-slice kernels; sino/img point at one slice. Outputs are overwritten.
void forward_slice(const double* img, double* sino, const ProjectionGeometry& pg);
void backward_slice(const double* sino, double* img, const ProjectionGeometry& pg);

// Largest eigenvalue of A^T A (i.e. sigma_max(A)^2) by power iteration with
// a seeded random start; the Rayleigh quotient is non-decreasing in iters.
double operator_norm(const ProjectionGeometry& pg, int iters, std::uint64_t seed = 0);

} // namespace tvam
