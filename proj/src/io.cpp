#include "tvam/io.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>

#include <png.h>

#include "json.hpp"
#include "tvam/errors.hpp"

namespace tvam {

using nlohmann::json;

static_assert(std::endian::native == std::endian::little,
              "artifact format assumes a little-endian host");

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open for writing: " + path.string());
    f << text;
    if (!f) throw io_error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open: " + path.string());
    std::string s((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return s;
}

namespace {

json header_to_json(const ArtifactHeader& h) {
    json j;
    j["kind"] = h.kind;
    j["dtype"] = h.dtype;
    j["shape"] = h.shape;
    j["version"] = h.version;
    j["provenance"] = {{"method", h.provenance.method},
                       {"config_hash", h.provenance.config_hash},
                       {"tool_version", h.provenance.tool}};
    if (h.kind == "sinogram") j["angle_offset"] = h.angle_offset;
    return j;
}

ArtifactHeader header_from_json(const json& j, const std::filesystem::path& ctx) {
    ArtifactHeader h;
    try {
        h.kind = j.at("kind").get<std::string>();
        h.dtype = j.at("dtype").get<std::string>();
        h.shape = j.at("shape").get<std::vector<int>>();
        h.version = j.at("version").get<int>();
        if (j.contains("provenance")) {
            const json& p = j["provenance"];
            h.provenance.method = p.value("method", "");
            h.provenance.config_hash = p.value("config_hash", "");
            h.provenance.tool = p.value("tool_version", "");
        }
        h.angle_offset = j.value("angle_offset", 0.0);
    } catch (const json::exception& e) {
        throw corrupt_sidecar_error("corrupt sidecar " + ctx.string() + ": " + e.what());
    }
    if (h.version != artifact_version)
        throw version_error("unsupported artifact version " + std::to_string(h.version) +
                            " in " + ctx.string());
    return h;
}

std::filesystem::path sidecar_path(const std::filesystem::path& data) {
    std::filesystem::path p = data;
    p += ".json";
    return p;
}

void write_sidecar(const std::filesystem::path& data, const ArtifactHeader& h) {
    write_text_file(sidecar_path(data), header_to_json(h).dump(2) + "\n");
}

ArtifactHeader read_sidecar(const std::filesystem::path& data) {
    std::filesystem::path sp = sidecar_path(data);
    json j;
    try {
        j = json::parse(read_text_file(sp));
    } catch (const json::exception& e) {
        throw corrupt_sidecar_error("corrupt sidecar " + sp.string() + ": " + e.what());
    }
    return header_from_json(j, sp);
}

void write_raw(const std::filesystem::path& path, const void* data, std::size_t bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open for writing: " + path.string());
    f.write(static_cast<const char*>(data), std::streamsize(bytes));
    if (!f) throw io_error("write failed: " + path.string());
}

std::vector<char> read_raw(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary | std::ios::ate);
    if (!f) throw io_error("cannot open: " + path.string());
    std::streamsize n = f.tellg();
    f.seekg(0);
    std::vector<char> buf(static_cast<std::size_t>(n));
    f.read(buf.data(), n);
    if (!f) throw io_error("read failed: " + path.string());
    return buf;
}

std::size_t shape_elems(const std::vector<int>& shape) {
    std::size_t n = 1;
    for (int d : shape) n *= std::size_t(d);
    return n;
}

void save_f32(const std::filesystem::path& path, const std::vector<double>& v,
              ArtifactHeader h) {
    std::vector<float> f(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) f[i] = float(v[i]);
    write_raw(path, f.data(), f.size() * sizeof(float));
    write_sidecar(path, h);
}

std::vector<double> load_f32(const std::filesystem::path& path, const ArtifactHeader& h) {
    if (h.dtype != "f32")
        throw corrupt_sidecar_error("expected dtype f32 in " + path.string());
    std::vector<char> raw = read_raw(path);
    std::size_t n = shape_elems(h.shape);
    if (raw.size() != n * sizeof(float))
        throw shape_error("payload size of " + path.string() +
                          " does not match sidecar shape");
    std::vector<double> v(n);
    const float* f = reinterpret_cast<const float*>(raw.data());
    for (std::size_t i = 0; i < n; ++i) v[i] = double(f[i]);
    return v;
}

} // namespace

void save_dose(const std::filesystem::path& path, const DoseImage& d,
               const Provenance& prov) {
    ArtifactHeader h;
    h.kind = "dose";
    h.dtype = "f32";
    h.shape = {d.nx, d.nx, d.nz};
    h.provenance = prov;
    save_f32(path, d.values, h);
}

DoseImage load_dose(const std::filesystem::path& path) {
    ArtifactHeader h = read_sidecar(path);
    if (h.kind != "dose") throw corrupt_sidecar_error("expected a dose artifact: " + path.string());
    if (h.shape.size() != 3 || h.shape[0] != h.shape[1])
        throw shape_error("dose artifact must have square slices: " + path.string());
    DoseImage d;
    d.nx = h.shape[0];
    d.nz = h.shape[2];
    d.values = load_f32(path, h);
    return d;
}

void save_sinogram(const std::filesystem::path& path, const Sinogram& s,
                   double angle_offset, const Provenance& prov) {
    ArtifactHeader h;
    h.kind = "sinogram";
    h.dtype = "f32";
    h.shape = {s.n_angles, s.n_bins, s.nz};
    h.angle_offset = angle_offset;
    h.provenance = prov;
    save_f32(path, s.values, h);
}

std::pair<Sinogram, double> load_sinogram(const std::filesystem::path& path) {
    ArtifactHeader h = read_sidecar(path);
    if (h.kind != "sinogram")
        throw corrupt_sidecar_error("expected a sinogram artifact: " + path.string());
    if (h.shape.size() != 3)
        throw shape_error("sinogram artifact needs a 3-entry shape: " + path.string());
    Sinogram s;
    s.n_angles = h.shape[0];
    s.n_bins = h.shape[1];
    s.nz = h.shape[2];
    s.values = load_f32(path, h);
    return {std::move(s), h.angle_offset};
}

void save_geometry(const std::filesystem::path& path, const TargetGeometry& g,
                   const Provenance& prov) {
    ArtifactHeader h;
    h.kind = "geometry";
    h.dtype = "u8";
    h.shape = {g.nx, g.nx, g.nz};
    h.provenance = prov;
    write_raw(path, g.labels.data(), g.labels.size());
    write_sidecar(path, h);
}

TargetGeometry load_geometry(const std::filesystem::path& path) {
    ArtifactHeader h = read_sidecar(path);
    if (h.kind != "geometry")
        throw corrupt_sidecar_error("expected a geometry artifact: " + path.string());
    if (h.dtype != "u8")
        throw corrupt_sidecar_error("geometry artifact must be u8: " + path.string());
    if (h.shape.size() != 3 || h.shape[0] != h.shape[1])
        throw shape_error("geometry artifact must have square slices: " + path.string());
    std::vector<char> raw = read_raw(path);
    if (raw.size() != shape_elems(h.shape))
        throw shape_error("payload size of " + path.string() +
                          " does not match sidecar shape");
    TargetGeometry g;
    g.nx = h.shape[0];
    g.nz = h.shape[2];
    g.labels.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        unsigned char c = (unsigned char)raw[i];
        if (c > 2) throw corrupt_sidecar_error("invalid label value in " + path.string());
        g.labels[i] = Label(c);
    }
    return g;
}

void save_history_csv(const std::filesystem::path& path,
                      const std::vector<std::pair<int, double>>& history) {
    std::string s = "iter,objective\n";
    for (auto& [it, obj] : history)
        s += std::to_string(it) + "," + format_double(obj) + "\n";
    write_text_file(path, s);
}

void save_metrics_csv(const std::filesystem::path& path,
                      const std::vector<MetricRow>& rows) {
    std::string s = "geometry,method,tau_lower,tau_upper,w,alpha,pw,ipdr,ver,slice\n";
    for (const MetricRow& r : rows) {
        s += r.geometry + "," + r.method + "," + format_double(r.tau_lower) + "," +
             format_double(r.tau_upper) + "," + format_double(r.w) + "," +
             format_double(r.report.alpha) + "," + format_double(r.report.pw) + "," +
             format_double(r.report.ipdr) + "," + format_double(r.report.ver) + "," +
             std::to_string(r.report.slice) + "\n";
    }
    write_text_file(path, s);
}

void save_histogram_csv(const std::filesystem::path& path, const DoseHistogram& h) {
    std::string s = "bin_lo,bin_hi,in_count,out_count\n";
    double width = (h.hi - h.lo) / double(h.in_counts.size());
    for (std::size_t b = 0; b < h.in_counts.size(); ++b) {
        s += format_double(h.lo + b * width) + "," + format_double(h.lo + (b + 1) * width) +
             "," + std::to_string(h.in_counts[b]) + "," + std::to_string(h.out_counts[b]) +
             "\n";
    }
    write_text_file(path, s);
}

namespace {

struct PngReadCloser {
    png_structp png = nullptr;
    png_infop info = nullptr;
    FILE* fp = nullptr;
    ~PngReadCloser() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (fp) std::fclose(fp);
    }
};

GrayVolume read_png_gray(const std::filesystem::path& path) {
    PngReadCloser c;
    c.fp = std::fopen(path.c_str(), "rb");
    if (!c.fp) throw io_error("cannot open: " + path.string());
    unsigned char sig[8];
    if (std::fread(sig, 1, 8, c.fp) != 8 || png_sig_cmp(sig, 0, 8))
        throw io_error("not a PNG file: " + path.string());
    c.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    c.info = png_create_info_struct(c.png);
    if (!c.png || !c.info) throw io_error("libpng init failed");
    if (setjmp(png_jmpbuf(c.png))) throw io_error("PNG decode failed: " + path.string());
    png_init_io(c.png, c.fp);
    png_set_sig_bytes(c.png, 8);
    png_read_info(c.png, c.info);

    png_set_expand(c.png);
    png_set_strip_alpha(c.png);
    int color = png_get_color_type(c.png, c.info);
    if (color & PNG_COLOR_MASK_COLOR)
        png_set_rgb_to_gray(c.png, PNG_ERROR_ACTION_NONE, -1, -1);
    png_read_update_info(c.png, c.info);

    int w = int(png_get_image_width(c.png, c.info));
    int h = int(png_get_image_height(c.png, c.info));
    int depth = png_get_bit_depth(c.png, c.info);
    double maxval = depth == 16 ? 65535.0 : 255.0;
    std::size_t rowbytes = png_get_rowbytes(c.png, c.info);
    std::vector<unsigned char> row(rowbytes);

    GrayVolume v;
    v.nx = w;
    v.ny = h;
    v.nz = 1;
    v.pixels.resize(std::size_t(w) * h);
    for (int iy = 0; iy < h; ++iy) {
        png_read_row(c.png, row.data(), nullptr);
        for (int ix = 0; ix < w; ++ix) {
            double val;
            if (depth == 16)
                val = double((row[2 * ix] << 8) | row[2 * ix + 1]);  // PNG is big-endian
            else
                val = double(row[ix]);
            v.pixels[std::size_t(iy) * w + ix] = val / maxval;
        }
    }
    return v;
}

GrayVolume read_raw_f32_volume(const std::filesystem::path& path) {
    json j;
    std::filesystem::path sp = sidecar_path(path);
    try {
        j = json::parse(read_text_file(sp));
    } catch (const json::exception& e) {
        throw corrupt_sidecar_error("corrupt sidecar " + sp.string() + ": " + e.what());
    }
    GrayVolume v;
    try {
        v.nx = j.at("nx").get<int>();
        v.ny = j.at("ny").get<int>();
        v.nz = j.value("nz", 1);
        if (j.at("dtype").get<std::string>() != "f32")
            throw corrupt_sidecar_error("raster sidecar dtype must be f32: " + sp.string());
    } catch (const json::exception& e) {
        throw corrupt_sidecar_error("corrupt sidecar " + sp.string() + ": " + e.what());
    }
    std::vector<char> raw = read_raw(path);
    std::size_t n = std::size_t(v.nx) * v.ny * v.nz;
    if (raw.size() != n * sizeof(float))
        throw shape_error("payload size of " + path.string() +
                          " does not match sidecar shape");
    const float* f = reinterpret_cast<const float*>(raw.data());
    v.pixels.resize(n);
    for (std::size_t i = 0; i < n; ++i) v.pixels[i] = double(f[i]);
    return v;
}

} // namespace

GrayVolume read_raster(const std::filesystem::path& path) {
    if (path.extension() == ".png") return read_png_gray(path);
    return read_raw_f32_volume(path);
}

namespace {

struct PngWriteCloser {
    png_structp png = nullptr;
    png_infop info = nullptr;
    FILE* fp = nullptr;
    ~PngWriteCloser() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        if (fp) std::fclose(fp);
    }
};

template <typename T>
void write_png_gray(const std::filesystem::path& path, const std::vector<T>& pixels,
                    int w, int h, int depth) {
    if (pixels.size() != std::size_t(w) * h)
        throw shape_error("write_png_gray: pixel count does not match dimensions");
    PngWriteCloser c;
    c.fp = std::fopen(path.c_str(), "wb");
    if (!c.fp) throw io_error("cannot open for writing: " + path.string());
    c.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    c.info = png_create_info_struct(c.png);
    if (!c.png || !c.info) throw io_error("libpng init failed");
    if (setjmp(png_jmpbuf(c.png))) throw io_error("PNG encode failed: " + path.string());
    png_init_io(c.png, c.fp);
    png_set_IHDR(c.png, c.info, w, h, depth, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(c.png, c.info);
    std::vector<unsigned char> row(std::size_t(w) * (depth / 8));
    for (int iy = 0; iy < h; ++iy) {
        for (int ix = 0; ix < w; ++ix) {
            if (depth == 8) {
                row[ix] = (unsigned char)pixels[std::size_t(iy) * w + ix];
            } else {
                std::uint16_t v = (std::uint16_t)pixels[std::size_t(iy) * w + ix];
                row[2 * ix] = (unsigned char)(v >> 8);
                row[2 * ix + 1] = (unsigned char)(v & 0xff);
            }
        }
        png_write_row(c.png, row.data());
    }
    png_write_end(c.png, nullptr);
}

} // namespace

void write_png_gray8(const std::filesystem::path& path,
                     const std::vector<unsigned char>& pixels, int w, int h) {
    write_png_gray(path, pixels, w, h, 8);
}

void write_png_gray16(const std::filesystem::path& path,
                      const std::vector<std::uint16_t>& pixels, int w, int h) {
    write_png_gray(path, pixels, w, h, 16);
}

} // namespace tvam
