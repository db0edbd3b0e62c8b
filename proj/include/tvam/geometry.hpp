#pragma once

#include <cstdint>
#include <cstddef>
#include <filesystem>
#include <vector>

namespace tvam {

enum class Label : std::uint8_t {
    in_part = 0,   // cure
    out_part = 1,  // keep liquid
    external = 2   // outside the cylindrical cuvette
};

// Binary voxel target with its in/out/external partition. Square slices on a
// grid normalised to [-1,1]^2; all in/out voxels lie strictly inside the
// inscribed circle of the slice. Immutable after construction.
struct TargetGeometry {
    int nx = 0;                 // voxels per side
    int nz = 1;                 // slice count (1 for 2D)
    std::vector<Label> labels;  // slice-row-major: ((iz*nx)+iy)*nx+ix

    std::size_t size() const { return labels.size(); }
    std::size_t slice_size() const { return std::size_t(nx) * nx; }
    std::size_t index(int ix, int iy, int iz = 0) const {
        return (std::size_t(iz) * nx + iy) * nx + ix;
    }
    Label at(int ix, int iy, int iz = 0) const { return labels[index(ix, iy, iz)]; }

    std::size_t count(Label l, int slice = -1) const;
    TargetGeometry slice(int iz) const;

    // Binary target image for one slice: 1 on in-part, 0 elsewhere.
    std::vector<double> target_image(int iz = 0) const;

    std::uint64_t content_hash() const;
};

// True when the voxel centre lies strictly inside the inscribed circle.
bool inside_inscribed_circle(int ix, int iy, int nx);

TargetGeometry make_disk(int nx, double radius_fraction);

// Moderate-complexity multi-lobe test geometry (three capsule "dogbones").
TargetGeometry make_logo(int nx);

// High-complexity test geometry: bar groups and blocks of decreasing size.
TargetGeometry make_resolution_chart(int nx);

// Triply periodic gyroid shell inside the inscribed cylinder; the shell
// thickness is tuned by bisection so the in-part volume fraction inside the
// cylinder matches solid_fraction.
TargetGeometry make_gyroid(int nx, int nz, int cells, double solid_fraction);

// Label a grayscale volume (values in [0,1], slice-row-major): pixels at or
// above threshold inside the inscribed circle become in-part, pixels below
// become out-of-part, everything outside the circle is external.
TargetGeometry geometry_from_gray(const std::vector<double>& pixels,
                                  int nx, int ny, int nz, double threshold);

// Load a grayscale raster (8/16-bit PNG, or raw f32 with JSON sidecar) and
// threshold it. The threshold is a fraction of the dtype maximum.
TargetGeometry load_target(const std::filesystem::path& path, double threshold);

} // namespace tvam
