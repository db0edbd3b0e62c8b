// tvamplan: illumination-plan optimiser for tomographic volumetric additive
// manufacturing. Subcommands: plan, sweep, compare, metrics, gen-geometry.
// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 I/O error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tvam/errors.hpp"
#include "tvam/geometry.hpp"
#include "tvam/io.hpp"
#include "tvam/metrics.hpp"
#include "tvam/osmo.hpp"
#include "tvam/penalty.hpp"
#include "tvam/projector.hpp"
#include "tvam/solver.hpp"
#include "tvam/sweep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tvam;

namespace {

struct GeometrySpec {
    std::string kind = "disk";  // disk|logo|resolution|gyroid|file
    int nx = 128;
    int nz = 1;
    double radius_fraction = 0.5;
    int cells = 2;
    double solid_fraction = 0.3;
    std::string path;
    double threshold = 0.5;
};

struct RunConfig {
    GeometrySpec geometry;
    int n_angles = 360;
    int n_bins = 0;  // 0: derive from nx
    double angle_offset = 0.0;
    std::string method = "ospw";  // l2n|osp|ospw|osmo
    double tau_lower = 0.70;
    double tau_upper = 0.90;
    double w = 0.0;
    double osmo_mpv = 0.0;
    int iters = 1000;
    double step = 0.0;
    std::string init = "zeros";  // zeros|clipped_fbp
    int record_every = 10;
    std::uint64_t seed = 0;
    double alpha = 0.0;
    int threads = 1;
    int histogram_bins = 100;
    std::string out = "out";
    // sweep-only
    std::vector<double> sweep_grid;
    std::string w_rule = "fixed";  // fixed|complement
    bool exclude_overdose = true;
};

json config_to_json(const RunConfig& c) {
    json j;
    j["geometry"] = {{"kind", c.geometry.kind},
                     {"nx", c.geometry.nx},
                     {"nz", c.geometry.nz},
                     {"radius_fraction", c.geometry.radius_fraction},
                     {"cells", c.geometry.cells},
                     {"solid_fraction", c.geometry.solid_fraction},
                     {"path", c.geometry.path},
                     {"threshold", c.geometry.threshold}};
    j["projection"] = {{"n_angles", c.n_angles},
                       {"n_bins", c.n_bins},
                       {"angle_offset", c.angle_offset}};
    j["method"] = c.method;
    j["tau_lower"] = c.tau_lower;
    j["tau_upper"] = c.tau_upper;
    j["w"] = c.w;
    j["osmo_min_projection_value"] = c.osmo_mpv;
    j["solve"] = {{"iters", c.iters},
                  {"step", c.step},
                  {"init", c.init},
                  {"record_every", c.record_every},
                  {"seed", c.seed}};
    j["alpha"] = c.alpha;
    j["threads"] = c.threads;
    j["histogram_bins"] = c.histogram_bins;
    j["out"] = c.out;
    j["sweep"] = {{"grid", c.sweep_grid},
                  {"w_rule", c.w_rule},
                  {"exclude_overdose", c.exclude_overdose}};
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    if (j.contains("geometry")) {
        const json& g = j["geometry"];
        c.geometry.kind = g.value("kind", c.geometry.kind);
        c.geometry.nx = g.value("nx", c.geometry.nx);
        c.geometry.nz = g.value("nz", c.geometry.nz);
        c.geometry.radius_fraction = g.value("radius_fraction", c.geometry.radius_fraction);
        c.geometry.cells = g.value("cells", c.geometry.cells);
        c.geometry.solid_fraction = g.value("solid_fraction", c.geometry.solid_fraction);
        c.geometry.path = g.value("path", c.geometry.path);
        c.geometry.threshold = g.value("threshold", c.geometry.threshold);
    }
    if (j.contains("projection")) {
        const json& p = j["projection"];
        c.n_angles = p.value("n_angles", c.n_angles);
        c.n_bins = p.value("n_bins", c.n_bins);
        c.angle_offset = p.value("angle_offset", c.angle_offset);
    }
    c.method = j.value("method", c.method);
    c.tau_lower = j.value("tau_lower", c.tau_lower);
    c.tau_upper = j.value("tau_upper", c.tau_upper);
    c.w = j.value("w", c.w);
    c.osmo_mpv = j.value("osmo_min_projection_value", c.osmo_mpv);
    if (j.contains("solve")) {
        const json& s = j["solve"];
        c.iters = s.value("iters", c.iters);
        c.step = s.value("step", c.step);
        c.init = s.value("init", c.init);
        c.record_every = s.value("record_every", c.record_every);
        c.seed = s.value("seed", c.seed);
    }
    c.alpha = j.value("alpha", c.alpha);
    c.threads = j.value("threads", c.threads);
    c.histogram_bins = j.value("histogram_bins", c.histogram_bins);
    c.out = j.value("out", c.out);
    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        c.sweep_grid = s.value("grid", c.sweep_grid);
        c.w_rule = s.value("w_rule", c.w_rule);
        c.exclude_overdose = s.value("exclude_overdose", c.exclude_overdose);
    }
    return c;
}

std::vector<std::string> validate_config(const RunConfig& c, bool for_sweep) {
    std::vector<std::string> errs;
    const std::string& k = c.geometry.kind;
    if (k != "disk" && k != "logo" && k != "resolution" && k != "gyroid" && k != "file")
        errs.push_back("geometry.kind must be disk|logo|resolution|gyroid|file");
    if (k == "file" && c.geometry.path.empty())
        errs.push_back("geometry.path required for kind=file");
    if (c.geometry.nx < 8) errs.push_back("geometry.nx must be >= 8");
    if (c.geometry.nz < 1) errs.push_back("geometry.nz must be >= 1");
    if (c.n_angles < 1) errs.push_back("projection.n_angles must be >= 1");
    if (c.method != "l2n" && c.method != "osp" && c.method != "ospw" && c.method != "osmo")
        errs.push_back("method must be l2n|osp|ospw|osmo");
    if (!for_sweep && !(c.tau_lower >= 0.0 && c.tau_lower < c.tau_upper))
        errs.push_back("thresholds must satisfy 0 <= tau_lower < tau_upper");
    if (c.w < 0.0) errs.push_back("w must be >= 0");
    if (c.iters < 0) errs.push_back("iters must be >= 0");
    if (c.init != "zeros" && c.init != "clipped_fbp")
        errs.push_back("init must be zeros|clipped_fbp");
    if (!(c.alpha >= 0.0 && c.alpha < 50.0)) errs.push_back("alpha must lie in [0,50)");
    if (c.threads < 1) errs.push_back("threads must be >= 1");
    if (c.w_rule != "fixed" && c.w_rule != "complement")
        errs.push_back("sweep.w_rule must be fixed|complement");
    return errs;
}

TargetGeometry build_geometry(const GeometrySpec& g) {
    if (g.kind == "disk") return make_disk(g.nx, g.radius_fraction);
    if (g.kind == "logo") return make_logo(g.nx);
    if (g.kind == "resolution") return make_resolution_chart(g.nx);
    if (g.kind == "gyroid") return make_gyroid(g.nx, g.nz, g.cells, g.solid_fraction);
    return load_target(g.path, g.threshold);
}

ProjectionGeometry build_projection(const RunConfig& c, int nx) {
    ProjectionGeometry pg = ProjectionGeometry::defaults_for(nx);
    pg.n_angles = c.n_angles;
    if (c.n_bins > 0) pg.n_bins = c.n_bins;
    pg.angle_offset = c.angle_offset;
    return pg;
}

std::string config_hash(const RunConfig& c) {
    std::string s = config_to_json(c).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (char ch : s) {
        h ^= (unsigned char)ch;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
    return buf;
}

struct config_error_report : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_valid(const RunConfig& c, bool for_sweep) {
    std::vector<std::string> errs = validate_config(c, for_sweep);
    if (errs.empty()) return;
    std::string msg = "invalid configuration:";
    for (const std::string& e : errs) msg += "\n  - " + e;
    throw config_error_report(msg);
}

void write_resolved_config(const RunConfig& c, const fs::path& dir) {
    write_text_file(dir / "config.json", config_to_json(c).dump(2) + "\n");
}

SolveResult run_method(const RunConfig& c, const TargetGeometry& geom,
                       const ProjectionGeometry& pg) {
    if (c.method == "osmo") {
        OsmoOptions oo;
        oo.tau_lower = c.tau_lower;
        oo.tau_upper = c.tau_upper;
        oo.max_iters = c.iters;
        oo.min_projection_value = c.osmo_mpv;
        oo.threads = c.threads;
        return solve_osmo(geom, pg, oo);
    }
    PenaltyConfig cfg;
    cfg.family = penalty_family_from_string(c.method);
    cfg.tau_lower = c.tau_lower;
    cfg.tau_upper = c.tau_upper;
    cfg.w = c.w;
    SolveOptions so;
    so.max_iters = c.iters;
    so.step = c.step;
    so.init = c.init == "zeros" ? InitScheme::zeros : InitScheme::clipped_fbp;
    so.record_every = c.record_every;
    so.seed = c.seed;
    so.threads = c.threads;
    return solve_volume(geom, pg, cfg, so);
}

int cmd_plan(const RunConfig& c) {
    require_valid(c, false);
    TargetGeometry geom = build_geometry(c.geometry);
    ProjectionGeometry pg = build_projection(c, geom.nx);
    fs::create_directories(c.out);
    write_resolved_config(c, c.out);

    SolveResult res = run_method(c, geom, pg);

    Provenance prov{c.method, config_hash(c)};
    save_sinogram(fs::path(c.out) / "plan.bin", res.plan, pg.angle_offset, prov);
    save_dose(fs::path(c.out) / "dose.bin", res.dose, prov);
    save_history_csv(fs::path(c.out) / "history.csv", res.history);

    std::vector<MetricRow> rows;
    MetricRow row{c.geometry.kind, c.method, c.tau_lower, c.tau_upper, c.w,
                  metric_report(res.dose, geom, c.alpha)};
    rows.push_back(row);
    if (geom.nz > 1)
        for (int iz = 0; iz < geom.nz; ++iz) {
            MetricRow r = row;
            r.report = metric_report(res.dose, geom, c.alpha, iz);
            rows.push_back(r);
        }
    save_metrics_csv(fs::path(c.out) / "metrics.csv", rows);
    save_histogram_csv(fs::path(c.out) / "histogram.csv",
                       histogram(res.dose, geom, c.histogram_bins));

    std::printf("plan geometry=%s method=%s tau=%s/%s pw=%s ipdr=%s ver=%s max_dose=%s\n",
                c.geometry.kind.c_str(), c.method.c_str(),
                format_double(c.tau_lower).c_str(), format_double(c.tau_upper).c_str(),
                format_double(row.report.pw).c_str(),
                format_double(row.report.ipdr).c_str(),
                format_double(row.report.ver).c_str(),
                format_double(max_printable_dose(res.dose, geom)).c_str());
    return 0;
}

int cmd_sweep(const RunConfig& c) {
    require_valid(c, true);
    TargetGeometry geom = build_geometry(c.geometry);
    ProjectionGeometry pg = build_projection(c, geom.nx);
    fs::create_directories(c.out);
    write_resolved_config(c, c.out);

    SweepOptions so;
    so.iters = c.iters;
    so.alpha = c.alpha;
    so.w_rule.complement = c.w_rule == "complement";
    so.w_rule.w = c.w;
    so.osmo_min_projection_value = c.osmo_mpv;
    so.threads = c.threads;
    so.seed = c.seed;
    so.geometry_tag = c.geometry.kind;
    for (double v : c.sweep_grid)
        so.grid_centi.push_back(int(std::lround(v * 100.0)));

    SweepGrid grid = run_sweep(geom, pg, sweep_method_from_string(c.method), so);
    save_sweep_csv(fs::path(c.out) / "sweep.csv", grid);
    export_colormap(grid, SweepMetric::pw, fs::path(c.out) / "colormap_pw.csv");
    export_colormap(grid, SweepMetric::ipdr, fs::path(c.out) / "colormap_ipdr.csv");
    export_colormap(grid, SweepMetric::ver, fs::path(c.out) / "colormap_ver.csv");
    save_sweep_summary_json(fs::path(c.out) / "summary.json", grid, c.exclude_overdose);

    std::size_t n_failed = 0;
    for (const SweepRecord& r : grid.records)
        if (r.failed) ++n_failed;
    std::printf("sweep method=%s geometry=%s records=%zu failed=%zu\n", c.method.c_str(),
                c.geometry.kind.c_str(), grid.records.size(), n_failed);
    try {
        auto [tl, tu] = select_pw_optimal(grid, c.exclude_overdose);
        std::printf("optimal pair tau_lower=%s tau_upper=%s\n", format_double(tl).c_str(),
                    format_double(tu).c_str());
    } catch (const selection_error& e) {
        std::printf("no admissible pair: %s\n", e.what());
    }
    return 0;
}

int cmd_compare(const fs::path& cfg_a, const fs::path& cfg_b, const fs::path& out) {
    RunConfig a = config_from_json(json::parse(read_text_file(cfg_a)));
    RunConfig b = config_from_json(json::parse(read_text_file(cfg_b)));
    require_valid(a, false);
    require_valid(b, false);
    TargetGeometry ga = build_geometry(a.geometry);
    TargetGeometry gb = build_geometry(b.geometry);
    if (ga.content_hash() != gb.content_hash())
        throw config_error_report("compare: configurations target different geometries");
    ProjectionGeometry pg = build_projection(a, ga.nx);
    fs::create_directories(out);

    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx", (unsigned long long)ga.content_hash());
    std::string s = "geometry_hash,method,tau_lower,tau_upper,w,alpha,pw,ipdr,ver,max_dose\n";
    for (const RunConfig* c : {&a, &b}) {
        SolveResult res = run_method(*c, ga, pg);
        MetricReport m = metric_report(res.dose, ga, c->alpha);
        s += std::string(hash) + "," + c->method + "," + format_double(c->tau_lower) + "," +
             format_double(c->tau_upper) + "," + format_double(c->w) + "," +
             format_double(c->alpha) + "," + format_double(m.pw) + "," +
             format_double(m.ipdr) + "," + format_double(m.ver) + "," +
             format_double(max_printable_dose(res.dose, ga)) + "\n";
    }
    write_text_file(out / "compare.csv", s);
    std::printf("compare written to %s\n", (out / "compare.csv").c_str());
    return 0;
}

int cmd_metrics(const fs::path& dose_path, const fs::path& geom_path, double alpha,
                const fs::path& out) {
    DoseImage dose = load_dose(dose_path);
    TargetGeometry geom = load_geometry(geom_path);
    std::vector<MetricRow> rows;
    MetricRow row{"file", "recomputed", 0, 0, 0, metric_report(dose, geom, alpha)};
    rows.push_back(row);
    if (geom.nz > 1)
        for (int iz = 0; iz < geom.nz; ++iz) {
            MetricRow r = row;
            r.report = metric_report(dose, geom, alpha, iz);
            rows.push_back(r);
        }
    if (!out.empty()) {
        fs::create_directories(out);
        save_metrics_csv(out / "metrics.csv", rows);
    }
    std::printf("metrics pw=%s ipdr=%s ver=%s\n", format_double(row.report.pw).c_str(),
                format_double(row.report.ipdr).c_str(),
                format_double(row.report.ver).c_str());
    return 0;
}

int cmd_gen_geometry(const RunConfig& c) {
    require_valid(c, true);
    TargetGeometry geom = build_geometry(c.geometry);
    fs::create_directories(c.out);
    write_resolved_config(c, c.out);
    save_geometry(fs::path(c.out) / "geometry.bin", geom,
                  Provenance{c.geometry.kind, config_hash(c)});
    // Slice-0 preview for quick inspection.
    std::vector<unsigned char> img(geom.slice_size());
    for (std::size_t i = 0; i < img.size(); ++i) {
        switch (geom.labels[i]) {
            case Label::in_part: img[i] = 255; break;
            case Label::out_part: img[i] = 0; break;
            case Label::external: img[i] = 128; break;
        }
    }
    write_png_gray8(fs::path(c.out) / "geometry.png", img, geom.nx, geom.nx);
    std::printf("geometry kind=%s nx=%d nz=%d in=%zu out=%zu ext=%zu\n",
                c.geometry.kind.c_str(), geom.nx, geom.nz,
                geom.count(Label::in_part), geom.count(Label::out_part),
                geom.count(Label::external));
    return 0;
}

void add_common_options(CLI::App* app, RunConfig& c, std::string& config_path) {
    app->add_option("--config", config_path, "JSON config file; flags override its values");
    app->add_option("--geometry", c.geometry.kind, "disk|logo|resolution|gyroid|file");
    app->add_option("--nx", c.geometry.nx);
    app->add_option("--nz", c.geometry.nz);
    app->add_option("--radius-fraction", c.geometry.radius_fraction);
    app->add_option("--cells", c.geometry.cells);
    app->add_option("--solid-fraction", c.geometry.solid_fraction);
    app->add_option("--geometry-path", c.geometry.path, "raster file for --geometry file");
    app->add_option("--threshold", c.geometry.threshold);
    app->add_option("--n-angles", c.n_angles);
    app->add_option("--n-bins", c.n_bins, "0 derives ceil(nx*sqrt(2)) rounded to odd");
    app->add_option("--angle-offset", c.angle_offset);
    app->add_option("--method", c.method, "l2n|osp|ospw|osmo");
    app->add_option("--tau-lower", c.tau_lower);
    app->add_option("--tau-upper", c.tau_upper);
    app->add_option("--w", c.w);
    app->add_option("--osmo-mpv", c.osmo_mpv, "OSMO minimum projection value");
    app->add_option("--iters", c.iters);
    app->add_option("--step", c.step, "FISTA step; 0 selects 1/(2*1.05*||A||^2)");
    app->add_option("--init", c.init, "zeros|clipped_fbp");
    app->add_option("--record-every", c.record_every);
    app->add_option("--seed", c.seed);
    app->add_option("--alpha", c.alpha, "percent trimmed at each histogram extreme");
    app->add_option("--threads", c.threads);
    app->add_option("--histogram-bins", c.histogram_bins);
    app->add_option("--out", c.out, "output directory");
}

// Re-parse argv so explicit flags override values loaded from --config.
RunConfig resolve_config(CLI::App* sub, const RunConfig& parsed, const std::string& config_path) {
    if (config_path.empty()) return parsed;
    RunConfig c = config_from_json(json::parse(read_text_file(config_path)));
    RunConfig merged = c;
    auto app = [&](const char* flag) -> std::size_t {
        const CLI::Option* o = sub->get_option_no_throw(flag);
        return o ? o->count() : 0;
    };
    if (app("--nx")) merged.geometry.nx = parsed.geometry.nx;
    if (app("--nz")) merged.geometry.nz = parsed.geometry.nz;
    if (app("--radius-fraction")) merged.geometry.radius_fraction = parsed.geometry.radius_fraction;
    if (app("--cells")) merged.geometry.cells = parsed.geometry.cells;
    if (app("--solid-fraction")) merged.geometry.solid_fraction = parsed.geometry.solid_fraction;
    if (app("--geometry-path")) merged.geometry.path = parsed.geometry.path;
    if (app("--threshold")) merged.geometry.threshold = parsed.geometry.threshold;
    if (app("--n-angles")) merged.n_angles = parsed.n_angles;
    if (app("--n-bins")) merged.n_bins = parsed.n_bins;
    if (app("--angle-offset")) merged.angle_offset = parsed.angle_offset;
    if (app("--method")) merged.method = parsed.method;
    if (app("--tau-lower")) merged.tau_lower = parsed.tau_lower;
    if (app("--tau-upper")) merged.tau_upper = parsed.tau_upper;
    if (app("--w")) merged.w = parsed.w;
    if (app("--osmo-mpv")) merged.osmo_mpv = parsed.osmo_mpv;
    if (app("--iters")) merged.iters = parsed.iters;
    if (app("--step")) merged.step = parsed.step;
    if (app("--init")) merged.init = parsed.init;
    if (app("--record-every")) merged.record_every = parsed.record_every;
    if (app("--seed")) merged.seed = parsed.seed;
    if (app("--alpha")) merged.alpha = parsed.alpha;
    if (app("--threads")) merged.threads = parsed.threads;
    if (app("--histogram-bins")) merged.histogram_bins = parsed.histogram_bins;
    if (app("--out")) merged.out = parsed.out;
    if (app("--grid")) merged.sweep_grid = parsed.sweep_grid;
    if (app("--w-rule")) merged.w_rule = parsed.w_rule;
    if (app("--exclude-overdose")) merged.exclude_overdose = parsed.exclude_overdose;
    return merged;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"TVAM illumination-plan optimiser"};
    app.require_subcommand(1);

    RunConfig plan_cfg, sweep_cfg, gen_cfg;
    std::string plan_config_path, sweep_config_path, gen_config_path;

    CLI::App* plan = app.add_subcommand("plan", "optimise one illumination plan");
    add_common_options(plan, plan_cfg, plan_config_path);

    CLI::App* sweep = app.add_subcommand("sweep", "threshold parameter sweep");
    add_common_options(sweep, sweep_cfg, sweep_config_path);
    sweep->add_option("--grid", sweep_cfg.sweep_grid,
                      "custom threshold grid values (default 0.00..1.00 step 0.04)");
    sweep->add_option("--w-rule", sweep_cfg.w_rule, "fixed|complement");
    sweep->add_flag("--exclude-overdose,!--no-exclude-overdose", sweep_cfg.exclude_overdose,
                    "exclude pairs with max dose > 1 from optimal-pair selection");

    CLI::App* compare = app.add_subcommand("compare", "run two configs on one geometry");
    std::string cfg_a, cfg_b, compare_out = "out";
    compare->add_option("--config-a", cfg_a)->required();
    compare->add_option("--config-b", cfg_b)->required();
    compare->add_option("--out", compare_out);

    CLI::App* metrics = app.add_subcommand("metrics", "recompute metrics from a saved dose");
    std::string dose_path, geom_path, metrics_out;
    double metrics_alpha = 0.0;
    metrics->add_option("--dose", dose_path)->required();
    metrics->add_option("--geometry-file", geom_path)->required();
    metrics->add_option("--alpha", metrics_alpha);
    metrics->add_option("--out", metrics_out);

    CLI::App* gen = app.add_subcommand("gen-geometry", "write a geometry artifact");
    add_common_options(gen, gen_cfg, gen_config_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*plan) return cmd_plan(resolve_config(plan, plan_cfg, plan_config_path));
        if (*sweep) return cmd_sweep(resolve_config(sweep, sweep_cfg, sweep_config_path));
        if (*compare) return cmd_compare(cfg_a, cfg_b, compare_out);
        if (*metrics) return cmd_metrics(dose_path, geom_path, metrics_alpha, metrics_out);
        if (*gen) return cmd_gen_geometry(resolve_config(gen, gen_cfg, gen_config_path));
    } catch (const config_error_report& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const parameter_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const degenerate_geometry_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const collapse_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const divergence_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const selection_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const shape_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const io_error& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 4;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
