#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "tvam/geometry.hpp"
#include "tvam/metrics.hpp"
#include "tvam/projector.hpp"

namespace tvam {

inline constexpr int artifact_version = 1;
inline constexpr const char* tool_version = "0.1.0";

struct Provenance {
    std::string method;
    std::string config_hash;
    std::string tool = tool_version;
};

// Every binary artifact is raw little-endian data (f32 or u8, slice-row-major)
// next to a JSON sidecar `<path>.json` carrying kind, shape, dtype, version
// and provenance. Sidecars round-trip bit-exactly.
struct ArtifactHeader {
    std::string kind;             // geometry|sinogram|dose|history|metrics|sweep
    std::string dtype;            // "f32" or "u8"
    std::vector<int> shape;
    int version = artifact_version;
    Provenance provenance;
    double angle_offset = 0.0;    // sinogram only
};

void save_dose(const std::filesystem::path& path, const DoseImage& d,
               const Provenance& prov = {});
DoseImage load_dose(const std::filesystem::path& path);

void save_sinogram(const std::filesystem::path& path, const Sinogram& s,
                   double angle_offset = 0.0, const Provenance& prov = {});
std::pair<Sinogram, double> load_sinogram(const std::filesystem::path& path);

void save_geometry(const std::filesystem::path& path, const TargetGeometry& g,
                   const Provenance& prov = {});
TargetGeometry load_geometry(const std::filesystem::path& path);

void save_history_csv(const std::filesystem::path& path,
                      const std::vector<std::pair<int, double>>& history);

// One CSV row per report: geometry, method, tau_lower, tau_upper, w, alpha,
// pw, ipdr, ver, slice.
struct MetricRow {
    std::string geometry, method;
    double tau_lower = 0.0, tau_upper = 0.0, w = 0.0;
    MetricReport report;
};
void save_metrics_csv(const std::filesystem::path& path,
                      const std::vector<MetricRow>& rows);

void save_histogram_csv(const std::filesystem::path& path, const DoseHistogram& h);

// Grayscale raster input for load_target: PNG (8/16-bit) or raw f32 volume
// with sidecar {nx, ny, nz, dtype:"f32", order:"slice-row-major"}. Values are
// normalised to [0,1] as fractions of the dtype maximum.
struct GrayVolume {
    int nx = 0, ny = 0, nz = 1;
    std::vector<double> pixels;
};
GrayVolume read_raster(const std::filesystem::path& path);

void write_png_gray8(const std::filesystem::path& path,
                     const std::vector<unsigned char>& pixels, int w, int h);
void write_png_gray16(const std::filesystem::path& path,
                      const std::vector<std::uint16_t>& pixels, int w, int h);

// Locale-independent shortest-round-trip float formatting ('.' decimal point).
std::string format_double(double v);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

} // namespace tvam
