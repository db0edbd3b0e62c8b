#include "tvam/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tvam/errors.hpp"
#include "tvam/io.hpp"

namespace tvam {

namespace {

void check_slices_nondegenerate(const TargetGeometry& g) {
    std::string bad;
    for (int iz = 0; iz < g.nz; ++iz) {
        std::size_t n_in = g.count(Label::in_part, iz);
        std::size_t n_out = g.count(Label::out_part, iz);
        if (n_in == 0 || n_out == 0) {
            if (!bad.empty()) bad += ",";
            bad += std::to_string(iz);
        }
    }
    if (!bad.empty())
        throw degenerate_geometry_error(
            "degenerate geometry: slices without both in-part and out-of-part voxels: " + bad);
}

} // namespace

bool inside_inscribed_circle(int ix, int iy, int nx) {
    double c = (nx - 1) / 2.0;
    double dx = ix - c;
    double dy = iy - c;
    return dx * dx + dy * dy < (nx / 2.0) * (nx / 2.0);
}

std::size_t TargetGeometry::count(Label l, int slice) const {
    std::size_t n = 0;
    std::size_t b = slice < 0 ? 0 : slice * slice_size();
    std::size_t e = slice < 0 ? labels.size() : b + slice_size();
    for (std::size_t i = b; i < e; ++i)
        if (labels[i] == l) ++n;
    return n;
}

TargetGeometry TargetGeometry::slice(int iz) const {
    TargetGeometry s;
    s.nx = nx;
    s.nz = 1;
    s.labels.assign(labels.begin() + iz * slice_size(),
                    labels.begin() + (iz + 1) * slice_size());
    return s;
}

std::vector<double> TargetGeometry::target_image(int iz) const {
    std::vector<double> t(slice_size(), 0.0);
    std::size_t b = iz * slice_size();
    for (std::size_t i = 0; i < t.size(); ++i)
        if (labels[b + i] == Label::in_part) t[i] = 1.0;
    return t;
}

std::uint64_t TargetGeometry::content_hash() const {
    // FNV-1a over dims + labels
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        for (int k = 0; k < 8; ++k) {
            h ^= (v >> (8 * k)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(std::uint64_t(nx));
    mix(std::uint64_t(nz));
    for (Label l : labels) {
        h ^= std::uint64_t(l);
        h *= 1099511628211ull;
    }
    return h;
}

TargetGeometry make_disk(int nx, double radius_fraction) {
    if (nx < 8) throw parameter_error("make_disk: nx must be >= 8");
    if (!(radius_fraction > 0.0 && radius_fraction < 1.0))
        throw parameter_error("make_disk: radius_fraction must lie in (0,1)");
    TargetGeometry g;
    g.nx = nx;
    g.nz = 1;
    g.labels.resize(g.slice_size());
    double c = (nx - 1) / 2.0;
    double r_in = radius_fraction * (nx / 2.0);
    for (int iy = 0; iy < nx; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            Label l = Label::external;
            if (inside_inscribed_circle(ix, iy, nx)) {
                double dx = ix - c, dy = iy - c;
                l = (dx * dx + dy * dy < r_in * r_in) ? Label::in_part : Label::out_part;
            }
            g.labels[g.index(ix, iy)] = l;
        }
    check_slices_nondegenerate(g);
    return g;
}

TargetGeometry make_logo(int nx) {
    if (nx < 32) throw parameter_error("make_logo: nx must be >= 32");
    TargetGeometry g;
    g.nx = nx;
    g.nz = 1;
    g.labels.resize(g.slice_size());

    // Three capsules (bars with rounded ends) at different orientations plus
    // an off-centre disk: hard corners absent, thin necks present.
    struct Capsule { double cx, cy, hl, r, phi; };
    const Capsule caps[] = {
        {-0.35, 0.30, 0.32, 0.10, 0.3},
        {0.30, 0.40, 0.28, 0.08, -0.9},
        {0.05, -0.35, 0.38, 0.09, 1.2},
    };
    const double disk_cx = 0.52, disk_cy = -0.05, disk_r = 0.14;

    double c = (nx - 1) / 2.0;
    for (int iy = 0; iy < nx; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            Label l = Label::external;
            if (inside_inscribed_circle(ix, iy, nx)) {
                double x = (ix - c) / (nx / 2.0);
                double y = (iy - c) / (nx / 2.0);
                bool in = false;
                for (const Capsule& cp : caps) {
                    double dx = x - cp.cx, dy = y - cp.cy;
                    double u = dx * std::cos(cp.phi) + dy * std::sin(cp.phi);
                    double v = -dx * std::sin(cp.phi) + dy * std::cos(cp.phi);
                    double du = std::fabs(u) > cp.hl ? std::fabs(u) - cp.hl : 0.0;
                    if (du * du + v * v < cp.r * cp.r) { in = true; break; }
                }
                double ddx = x - disk_cx, ddy = y - disk_cy;
                if (ddx * ddx + ddy * ddy < disk_r * disk_r) in = true;
                l = in ? Label::in_part : Label::out_part;
            }
            g.labels[g.index(ix, iy)] = l;
        }
    check_slices_nondegenerate(g);
    return g;
}

TargetGeometry make_resolution_chart(int nx) {
    if (nx < 64) throw parameter_error("make_resolution_chart: nx must be >= 64");
    TargetGeometry g;
    g.nx = nx;
    g.nz = 1;
    g.labels.resize(g.slice_size());
    double c = (nx - 1) / 2.0;
    for (int iy = 0; iy < nx; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            Label l = Label::external;
            if (inside_inscribed_circle(ix, iy, nx)) {
                double x = (ix - c) / (nx / 2.0);
                double y = (iy - c) / (nx / 2.0);
                bool in = false;
                // Vertical bar groups of decreasing pitch, upper half.
                const double pitches[] = {0.16, 0.10, 0.07, 0.05};
                double gx = -0.62;
                for (double p : pitches) {
                    double gw = 5.0 * p;
                    if (x >= gx && x < gx + gw && y >= 0.18 && y < 0.62) {
                        double ph = std::fmod(x - gx, 2.0 * p);
                        if (ph < p) in = true;
                    }
                    gx += gw + 0.08;
                }
                // Horizontal bars with pitch growing along x, lower-left.
                if (y >= -0.66 && y < -0.14 && x >= -0.68 && x < -0.14) {
                    double p = 0.05 + 0.11 * (x + 0.68);
                    double ph = std::fmod(y + 0.66, 2.0 * p);
                    in = ph < p;
                }
                // Solid square, right of centre.
                if (x >= 0.22 && x < 0.62 && y >= -0.55 && y < -0.15) in = true;
                // Small isolated dots along the lower rim.
                const double dots[][3] = {
                    {0.62, 0.25, 0.050}, {0.52, 0.48, 0.035}, {0.36, 0.64, 0.022}};
                for (auto& d : dots) {
                    double dx = x - d[0], dy = y - d[1];
                    if (dx * dx + dy * dy < d[2] * d[2]) in = true;
                }
                l = in ? Label::in_part : Label::out_part;
            }
            g.labels[g.index(ix, iy)] = l;
        }
    check_slices_nondegenerate(g);
    return g;
}

namespace {

double gyroid_value(int ix, int iy, int iz, double kxy, double kz) {
    double sx = std::sin(kxy * ix), cx = std::cos(kxy * ix);
    double sy = std::sin(kxy * iy), cy = std::cos(kxy * iy);
    double sz = std::sin(kz * iz), cz = std::cos(kz * iz);
    return sx * cy + sy * cz + sz * cx;
}

} // namespace

TargetGeometry make_gyroid(int nx, int nz, int cells, double solid_fraction) {
    if (nx < 32) throw parameter_error("make_gyroid: nx must be >= 32");
    if (nz < 1) throw parameter_error("make_gyroid: nz must be >= 1");
    if (cells < 1) throw parameter_error("make_gyroid: cells must be >= 1");
    if (!(solid_fraction > 0.0 && solid_fraction < 1.0))
        throw parameter_error("make_gyroid: solid_fraction must lie in (0,1)");

    double kxy = 2.0 * std::numbers::pi * cells / nx;
    double kz = 2.0 * std::numbers::pi * cells / std::max(nz, 1);
    if (nz == 1) kz = 0.0;  // single slice: take the z=0 cross-section

    // Count cylinder voxels and bisect the shell half-width t so that the
    // fraction with |G| <= t matches solid_fraction.
    std::size_t n_cyl = 0;
    for (int iy = 0; iy < nx; ++iy)
        for (int ix = 0; ix < nx; ++ix)
            if (inside_inscribed_circle(ix, iy, nx)) ++n_cyl;
    n_cyl *= std::size_t(nz);

    auto frac_at = [&](double t) {
        std::size_t n_in = 0;
        for (int iz = 0; iz < nz; ++iz)
            for (int iy = 0; iy < nx; ++iy)
                for (int ix = 0; ix < nx; ++ix)
                    if (inside_inscribed_circle(ix, iy, nx) &&
                        std::fabs(gyroid_value(ix, iy, iz, kxy, kz)) <= t)
                        ++n_in;
        return double(n_in) / double(n_cyl);
    };

    double lo = 0.0, hi = 3.0;
    for (int it = 0; it < 40; ++it) {
        double mid = 0.5 * (lo + hi);
        if (frac_at(mid) < solid_fraction) lo = mid; else hi = mid;
    }
    double t = 0.5 * (lo + hi);

    TargetGeometry g;
    g.nx = nx;
    g.nz = nz;
    g.labels.resize(g.slice_size() * nz);
    for (int iz = 0; iz < nz; ++iz)
        for (int iy = 0; iy < nx; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
                Label l = Label::external;
                if (inside_inscribed_circle(ix, iy, nx))
                    l = std::fabs(gyroid_value(ix, iy, iz, kxy, kz)) <= t
                            ? Label::in_part
                            : Label::out_part;
                g.labels[g.index(ix, iy, iz)] = l;
            }
    check_slices_nondegenerate(g);
    return g;
}

TargetGeometry geometry_from_gray(const std::vector<double>& pixels,
                                  int nx, int ny, int nz, double threshold) {
    if (nx != ny)
        throw shape_error("geometry_from_gray: slices must be square (nx=" +
                          std::to_string(nx) + ", ny=" + std::to_string(ny) + ")");
    if (pixels.size() != std::size_t(nx) * ny * nz)
        throw shape_error("geometry_from_gray: pixel count does not match dimensions");
    TargetGeometry g;
    g.nx = nx;
    g.nz = nz;
    g.labels.resize(pixels.size());
    for (int iz = 0; iz < nz; ++iz)
        for (int iy = 0; iy < nx; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
                std::size_t i = g.index(ix, iy, iz);
                Label l = Label::external;
                if (inside_inscribed_circle(ix, iy, nx))
                    l = pixels[i] >= threshold ? Label::in_part : Label::out_part;
                g.labels[i] = l;
            }
    check_slices_nondegenerate(g);
    return g;
}

TargetGeometry load_target(const std::filesystem::path& path, double threshold) {
    GrayVolume v = read_raster(path);
    return geometry_from_gray(v.pixels, v.nx, v.ny, v.nz, threshold);
}

} // namespace tvam
