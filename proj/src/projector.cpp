#include "tvam/projector.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "tvam/errors.hpp"

namespace tvam {

ProjectionGeometry ProjectionGeometry::defaults_for(int nx) {
    ProjectionGeometry pg;
    pg.nx = nx;
    pg.n_angles = 360;
    int nb = int(std::ceil(nx * std::numbers::sqrt2));
    if (nb % 2 == 0) ++nb;
    pg.n_bins = nb;
    pg.angle_offset = 0.0;
    return pg;
}

void ProjectionGeometry::validate() const {
    if (n_angles < 1 || n_bins < 1 || nx < 1)
        throw parameter_error("projection geometry: n_angles, n_bins and nx must be >= 1");
}

double ProjectionGeometry::angle(int ia) const {
    return angle_offset + std::numbers::pi * ia / n_angles;
}

Sinogram Sinogram::zeros(const ProjectionGeometry& pg, int nz) {
    Sinogram s;
    s.n_angles = pg.n_angles;
    s.n_bins = pg.n_bins;
    s.nz = nz;
    s.values.assign(std::size_t(nz) * pg.n_angles * pg.n_bins, 0.0);
    return s;
}

DoseImage DoseImage::zeros(int nx, int nz) {
    DoseImage d;
    d.nx = nx;
    d.nz = nz;
    d.values.assign(std::size_t(nz) * nx * nx, 0.0);
    return d;
}

// Both kernels walk the same index/weight pattern so backward is the exact
// transpose of forward. Rays step one row (or column) at a time along the
// dominant axis; each step contributes the linear interpolation of the two
// straddled voxels times the per-step intersection length 1/max(|cos|,|sin|).

void forward_slice(const double* img, double* sino, const ProjectionGeometry& pg) {
    const int nx = pg.nx, nb = pg.n_bins;
    const double c = (nx - 1) / 2.0;
    const double b0 = (nb - 1) / 2.0;
    const double scale = 1.0 / pg.n_angles;
    for (int ia = 0; ia < pg.n_angles; ++ia) {
        const double th = pg.angle(ia);
        const double si = std::sin(th), co = std::cos(th);
        double* row = sino + std::size_t(ia) * nb;
        if (std::fabs(co) >= std::fabs(si)) {
            const double w = scale / std::fabs(co);
            for (int ib = 0; ib < nb; ++ib) {
                const double t = ib - b0;
                // x(y) = (t - y*sin)/cos, marching y over rows
                double x = (t - (0 - c) * si) / co + c;
                const double dx = -si / co;
                double acc = 0.0;
                for (int iy = 0; iy < nx; ++iy, x += dx) {
                    const double xf = std::floor(x);
                    const int ix0 = int(xf);
                    const double fr = x - xf;
                    const double* r = img + std::size_t(iy) * nx;
                    if (unsigned(ix0) < unsigned(nx)) acc += r[ix0] * (1.0 - fr);
                    if (unsigned(ix0 + 1) < unsigned(nx)) acc += r[ix0 + 1] * fr;
                }
                row[ib] = acc * w;
            }
        } else {
            const double w = scale / std::fabs(si);
            for (int ib = 0; ib < nb; ++ib) {
                const double t = ib - b0;
                // y(x) = (t - x*cos)/sin, marching x over columns
                double y = (t - (0 - c) * co) / si + c;
                const double dy = -co / si;
                double acc = 0.0;
                for (int ix = 0; ix < nx; ++ix, y += dy) {
                    const double yf = std::floor(y);
                    const int iy0 = int(yf);
                    const double fr = y - yf;
                    if (unsigned(iy0) < unsigned(nx)) acc += img[std::size_t(iy0) * nx + ix] * (1.0 - fr);
                    if (unsigned(iy0 + 1) < unsigned(nx)) acc += img[std::size_t(iy0 + 1) * nx + ix] * fr;
                }
                row[ib] = acc * w;
            }
        }
    }
}

void backward_slice(const double* sino, double* img, const ProjectionGeometry& pg) {
    const int nx = pg.nx, nb = pg.n_bins;
    const double c = (nx - 1) / 2.0;
    const double b0 = (nb - 1) / 2.0;
    const double scale = 1.0 / pg.n_angles;
    for (std::size_t i = 0; i < std::size_t(nx) * nx; ++i) img[i] = 0.0;
    for (int ia = 0; ia < pg.n_angles; ++ia) {
        const double th = pg.angle(ia);
        const double si = std::sin(th), co = std::cos(th);
        const double* row = sino + std::size_t(ia) * nb;
        if (std::fabs(co) >= std::fabs(si)) {
            const double w = scale / std::fabs(co);
            for (int ib = 0; ib < nb; ++ib) {
                const double v = row[ib] * w;
                if (v == 0.0) continue;
                const double t = ib - b0;
                double x = (t - (0 - c) * si) / co + c;
                const double dx = -si / co;
                for (int iy = 0; iy < nx; ++iy, x += dx) {
                    const double xf = std::floor(x);
                    const int ix0 = int(xf);
                    const double fr = x - xf;
                    double* r = img + std::size_t(iy) * nx;
                    if (unsigned(ix0) < unsigned(nx)) r[ix0] += v * (1.0 - fr);
                    if (unsigned(ix0 + 1) < unsigned(nx)) r[ix0 + 1] += v * fr;
                }
            }
        } else {
            const double w = scale / std::fabs(si);
            for (int ib = 0; ib < nb; ++ib) {
                const double v = row[ib] * w;
                if (v == 0.0) continue;
                const double t = ib - b0;
                double y = (t - (0 - c) * co) / si + c;
                const double dy = -co / si;
                for (int ix = 0; ix < nx; ++ix, y += dy) {
                    const double yf = std::floor(y);
                    const int iy0 = int(yf);
                    const double fr = y - yf;
                    if (unsigned(iy0) < unsigned(nx)) img[std::size_t(iy0) * nx + ix] += v * (1.0 - fr);
                    if (unsigned(iy0 + 1) < unsigned(nx)) img[std::size_t(iy0 + 1) * nx + ix] += v * fr;
                }
            }
        }
    }
}

Sinogram forward(const DoseImage& img, const ProjectionGeometry& pg) {
    pg.validate();
    if (img.nx != pg.nx)
        throw shape_error("forward: image nx=" + std::to_string(img.nx) +
                          " does not match projection geometry nx=" + std::to_string(pg.nx));
    Sinogram s = Sinogram::zeros(pg, img.nz);
    for (int iz = 0; iz < img.nz; ++iz)
        forward_slice(img.values.data() + iz * img.slice_size(),
                      s.values.data() + iz * s.slice_size(), pg);
    return s;
}

DoseImage backward(const Sinogram& sino, const ProjectionGeometry& pg) {
    pg.validate();
    if (sino.n_angles != pg.n_angles || sino.n_bins != pg.n_bins)
        throw shape_error("backward: sinogram shape does not match projection geometry");
    DoseImage d = DoseImage::zeros(pg.nx, sino.nz);
    for (int iz = 0; iz < sino.nz; ++iz)
        backward_slice(sino.values.data() + iz * sino.slice_size(),
                       d.values.data() + iz * d.slice_size(), pg);
    return d;
}

double operator_norm(const ProjectionGeometry& pg, int iters, std::uint64_t seed) {
    pg.validate();
    if (iters < 10) throw parameter_error("operator_norm: iters must be >= 10");
    const std::size_t n = std::size_t(pg.nx) * pg.nx;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(n), y(std::size_t(pg.n_angles) * pg.n_bins), z(n);
    for (double& v : x) v = u(rng);
    double lambda = 0.0;
    for (int it = 0; it < iters; ++it) {
        double nrm = 0.0;
        for (double v : x) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) throw divergence_error("operator_norm: zero iterate", it);
        for (double& v : x) v /= nrm;
        forward_slice(x.data(), y.data(), pg);
        backward_slice(y.data(), z.data(), pg);
        lambda = 0.0;
        for (std::size_t i = 0; i < n; ++i) lambda += x[i] * z[i];
        x.swap(z);
    }
    return lambda;
}

} // namespace tvam
