#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "tvam/errors.hpp"
#include "tvam/geometry.hpp"
#include "tvam/io.hpp"

using namespace tvam;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {
fs::path tmp_dir() {
    fs::path p = fs::temp_directory_path() / "tvam_io_test";
    fs::create_directories(p);
    return p;
}
} // namespace

TEST_CASE("dose round-trips through f32 with sidecar") {
    DoseImage d = DoseImage::zeros(16, 2);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (double& v : d.values) v = u(rng);
    fs::path p = tmp_dir() / "dose.bin";
    save_dose(p, d, Provenance{"test", "cafe"});
    CHECK(fs::exists(p));
    CHECK(fs::exists(p.string() + ".json"));
    DoseImage back = load_dose(p);
    CHECK(back.nx == 16);
    CHECK(back.nz == 2);
    for (std::size_t i = 0; i < d.values.size(); ++i)
        CHECK(back.values[i] == double(float(d.values[i])));  // f32 precision, bit-exact
}

TEST_CASE("sinogram round-trips with its angle offset") {
    Sinogram s;
    s.n_angles = 4;
    s.n_bins = 7;
    s.nz = 2;
    s.values.assign(4 * 7 * 2, 0.0);
    for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] = double(i) * 0.125;
    fs::path p = tmp_dir() / "plan.bin";
    save_sinogram(p, s, 0.25);
    auto [back, offset] = load_sinogram(p);
    CHECK(offset == 0.25);
    CHECK(back.n_angles == 4);
    CHECK(back.n_bins == 7);
    CHECK(back.nz == 2);
    CHECK(back.values == s.values);  // eighths are f32-exact
}

TEST_CASE("geometry round-trips as u8 labels") {
    TargetGeometry g = make_logo(64);
    fs::path p = tmp_dir() / "geom.bin";
    save_geometry(p, g);
    TargetGeometry back = load_geometry(p);
    CHECK(back.nx == g.nx);
    CHECK(back.nz == g.nz);
    CHECK(back.labels == g.labels);
    CHECK(back.content_hash() == g.content_hash());
}

TEST_CASE("corrupt or mismatched sidecars raise distinct errors") {
    DoseImage d = DoseImage::zeros(8);
    fs::path p = tmp_dir() / "bad.bin";
    save_dose(p, d);
    fs::path side = p.string() + ".json";

    std::string good = read_text_file(side);

    write_text_file(side, "{ not json");
    CHECK_THROWS_AS(load_dose(p), corrupt_sidecar_error);

    json j = json::parse(good);
    j["version"] = 999;
    write_text_file(side, j.dump());
    CHECK_THROWS_AS(load_dose(p), version_error);

    j = json::parse(good);
    j["shape"] = {8, 8, 3};  // claims more data than the file holds
    write_text_file(side, j.dump());
    CHECK_THROWS_AS(load_dose(p), shape_error);

    write_text_file(side, good);
    CHECK_NOTHROW(load_dose(p));
    fs::remove(side);
    CHECK_THROWS_AS(load_dose(p), io_error);

    CHECK_THROWS_AS(load_dose(tmp_dir() / "missing.bin"), io_error);
}

TEST_CASE("loading the wrong kind is rejected") {
    TargetGeometry g = make_disk(16, 0.5);
    fs::path p = tmp_dir() / "geom2.bin";
    save_geometry(p, g);
    CHECK_THROWS_AS(load_dose(p), io_error);
}

TEST_CASE("format_double is locale-independent shortest form") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-0.25) == "-0.25");
    CHECK(format_double(0.1) == "0.1");
    // Round-trips exactly.
    for (double v : {0.1, 1.0 / 3.0, 12345.6789, 1e-30}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("history and metrics CSV formats") {
    fs::path p = tmp_dir() / "history.csv";
    save_history_csv(p, {{0, 12.5}, {10, 3.25}});
    std::ifstream in(p);
    std::string l0, l1, l2;
    std::getline(in, l0);
    std::getline(in, l1);
    std::getline(in, l2);
    CHECK(l0 == "iter,objective");
    CHECK(l1 == "0,12.5");
    CHECK(l2 == "10,3.25");

    MetricRow row;
    row.geometry = "disk";
    row.method = "ospw";
    row.tau_lower = 0.7;
    row.tau_upper = 0.9;
    row.report.pw = 0.125;
    row.report.ipdr = 0.0625;
    row.report.ver = 0.0;
    row.report.alpha = 2.5;
    row.report.slice = -1;
    fs::path m = tmp_dir() / "metrics.csv";
    save_metrics_csv(m, {row});
    std::ifstream min(m);
    std::getline(min, l0);
    std::getline(min, l1);
    CHECK(l0 == "geometry,method,tau_lower,tau_upper,w,alpha,pw,ipdr,ver,slice");
    CHECK(l1 == "disk,ospw,0.7,0.9,0,2.5,0.125,0.0625,0,-1");
}

TEST_CASE("png round-trip through read_raster") {
    int n = 32;
    std::vector<unsigned char> img(std::size_t(n) * n, 0);
    for (int iy = 10; iy < 20; ++iy)
        for (int ix = 10; ix < 20; ++ix) img[std::size_t(iy) * n + ix] = 255;
    fs::path p = tmp_dir() / "target.png";
    write_png_gray8(p, img, n, n);
    GrayVolume v = read_raster(p);
    CHECK(v.nx == n);
    CHECK(v.ny == n);
    CHECK(v.nz == 1);
    for (std::size_t i = 0; i < img.size(); ++i)
        CHECK(v.pixels[i] == doctest::Approx(img[i] / 255.0).epsilon(1e-12));
    TargetGeometry g = load_target(p, 0.5);
    CHECK(g.at(15, 15) == Label::in_part);
    CHECK(g.at(5, 15) == Label::out_part);
}

TEST_CASE("raw f32 volume with sidecar loads as a target") {
    int n = 16, nz = 3;
    std::vector<float> vox(std::size_t(n) * n * nz, 0.0f);
    for (int iz = 0; iz < nz; ++iz) vox[std::size_t(iz) * n * n + 8 * n + 8] = 1.0f;
    fs::path p = tmp_dir() / "vol.bin";
    {
        std::ofstream f(p, std::ios::binary);
        f.write(reinterpret_cast<const char*>(vox.data()), vox.size() * 4);
    }
    json side = {{"nx", n}, {"ny", n}, {"nz", nz}, {"dtype", "f32"},
                 {"order", "slice-row-major"}};
    write_text_file(p.string() + ".json", side.dump());
    TargetGeometry g = load_target(p, 0.5);
    CHECK(g.nz == nz);
    for (int iz = 0; iz < nz; ++iz) CHECK(g.at(8, 8, iz) == Label::in_part);
}
