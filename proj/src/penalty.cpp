#include "tvam/penalty.hpp"

#include <string>

#include "tvam/errors.hpp"

namespace tvam {

std::string to_string(PenaltyFamily f) {
    switch (f) {
        case PenaltyFamily::l2n: return "l2n";
        case PenaltyFamily::osp: return "osp";
        case PenaltyFamily::ospw: return "ospw";
    }
    return "?";
}

PenaltyFamily penalty_family_from_string(const std::string& s) {
    if (s == "l2n") return PenaltyFamily::l2n;
    if (s == "osp") return PenaltyFamily::osp;
    if (s == "ospw") return PenaltyFamily::ospw;
    throw parameter_error("unknown penalty family: " + s);
}

void PenaltyConfig::validate() const {
    if (!(tau_lower >= 0.0 && tau_lower < tau_upper))
        throw parameter_error("penalty config: need 0 <= tau_lower < tau_upper");
    if (w < 0.0) throw parameter_error("penalty config: w must be >= 0");
}

double p_out(double x, const PenaltyConfig& cfg) {
    double d = x - cfg.tau_lower;
    if (cfg.family != PenaltyFamily::l2n && d <= 0.0) return 0.0;
    return d * d;
}

double dp_out(double x, const PenaltyConfig& cfg) {
    double d = x - cfg.tau_lower;
    if (cfg.family != PenaltyFamily::l2n && d <= 0.0) return 0.0;
    return 2.0 * d;
}

double p_in(double x, const PenaltyConfig& cfg) {
    double d = x - cfg.tau_upper;
    switch (cfg.family) {
        case PenaltyFamily::l2n:
            return d * d;
        case PenaltyFamily::osp:
            return d < 0.0 ? d * d : 0.0;
        case PenaltyFamily::ospw:
            if (d < 0.0) return d * d;
            if (d < cfg.w) return 0.0;
            return (d - cfg.w) * (d - cfg.w);
    }
    return 0.0;
}

double dp_in(double x, const PenaltyConfig& cfg) {
    double d = x - cfg.tau_upper;
    switch (cfg.family) {
        case PenaltyFamily::l2n:
            return 2.0 * d;
        case PenaltyFamily::osp:
            return d < 0.0 ? 2.0 * d : 0.0;
        case PenaltyFamily::ospw:
            if (d < 0.0) return 2.0 * d;
            if (d < cfg.w) return 0.0;
            return 2.0 * (d - cfg.w);
    }
    return 0.0;
}

namespace {

void check_dose_shape(const DoseImage& f, const TargetGeometry& geom) {
    if (f.nx != geom.nx || f.nz != geom.nz)
        throw shape_error("dose image shape does not match geometry");
}

} // namespace

double objective_dose(const DoseImage& f, const TargetGeometry& geom,
                      const PenaltyConfig& cfg) {
    check_dose_shape(f, geom);
    double sum = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        switch (geom.labels[i]) {
            case Label::in_part: sum += p_in(f.values[i], cfg); break;
            case Label::out_part: sum += p_out(f.values[i], cfg); break;
            case Label::external: break;
        }
    }
    return sum;
}

DoseImage penalty_slope_dose(const DoseImage& f, const TargetGeometry& geom,
                             const PenaltyConfig& cfg) {
    check_dose_shape(f, geom);
    DoseImage d = DoseImage::zeros(f.nx, f.nz);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        switch (geom.labels[i]) {
            case Label::in_part: d.values[i] = dp_in(f.values[i], cfg); break;
            case Label::out_part: d.values[i] = dp_out(f.values[i], cfg); break;
            case Label::external: break;
        }
    }
    return d;
}

double objective(const Sinogram& g, const TargetGeometry& geom,
                 const ProjectionGeometry& pg, const PenaltyConfig& cfg) {
    return objective_dose(backward(g, pg), geom, cfg);
}

Sinogram gradient(const Sinogram& g, const TargetGeometry& geom,
                  const ProjectionGeometry& pg, const PenaltyConfig& cfg) {
    DoseImage f = backward(g, pg);
    DoseImage slope = penalty_slope_dose(f, geom, cfg);
    return forward(slope, pg);
}

} // namespace tvam
