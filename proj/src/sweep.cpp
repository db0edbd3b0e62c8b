#include "tvam/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "tvam/errors.hpp"
#include "tvam/io.hpp"
#include "tvam/metrics.hpp"
#include "tvam/parallel.hpp"

namespace tvam {

using nlohmann::json;

std::string to_string(SweepMethod m) {
    switch (m) {
        case SweepMethod::l2n: return "l2n";
        case SweepMethod::osp: return "osp";
        case SweepMethod::ospw: return "ospw";
        case SweepMethod::osmo: return "osmo";
    }
    return "?";
}

SweepMethod sweep_method_from_string(const std::string& s) {
    if (s == "l2n") return SweepMethod::l2n;
    if (s == "osp") return SweepMethod::osp;
    if (s == "ospw") return SweepMethod::ospw;
    if (s == "osmo") return SweepMethod::osmo;
    throw parameter_error("unknown method: " + s);
}

double apply_w_rule(double tau_upper, const WRule& rule) {
    if (!rule.complement) return rule.w;
    return tau_upper >= 1.0 ? 0.0 : 1.0 - tau_upper;
}

std::vector<int> default_tau_grid_centi() {
    std::vector<int> g;
    for (int k = 0; k <= 25; ++k) g.push_back(4 * k);
    return g;
}

SweepGrid run_sweep(const TargetGeometry& geom, const ProjectionGeometry& pg,
                    SweepMethod method, const SweepOptions& opts) {
    if (opts.iters < 1) throw parameter_error("sweep: iters must be >= 1");
    SweepGrid grid;
    grid.tau_centi = opts.grid_centi.empty() ? default_tau_grid_centi() : opts.grid_centi;
    std::sort(grid.tau_centi.begin(), grid.tau_centi.end());
    grid.method_tag = to_string(method);
    grid.geometry_tag = opts.geometry_tag;
    grid.alpha = opts.alpha;

    for (std::size_t i = 0; i < grid.tau_centi.size(); ++i)
        for (std::size_t j = i + 1; j < grid.tau_centi.size(); ++j) {
            SweepRecord r;
            r.tl_centi = grid.tau_centi[i];
            r.tu_centi = grid.tau_centi[j];
            grid.records.push_back(r);
        }

    // The FISTA step depends only on the operator, not on the thresholds.
    double step = 0.0;
    if (method != SweepMethod::osmo)
        step = auto_step(pg, 50, opts.seed);

    parallel_for(grid.records.size(), opts.threads, [&](std::size_t k) {
        SweepRecord& r = grid.records[k];
        const double tl = r.tl_centi / 100.0;
        const double tu = r.tu_centi / 100.0;
        try {
            SolveResult res;
            if (method == SweepMethod::osmo) {
                OsmoOptions oo;
                oo.tau_lower = tl;
                oo.tau_upper = tu;
                oo.max_iters = opts.iters;
                oo.min_projection_value = opts.osmo_min_projection_value;
                res = solve_osmo(geom, pg, oo);
            } else {
                PenaltyConfig cfg;
                cfg.family = method == SweepMethod::l2n ? PenaltyFamily::l2n
                             : method == SweepMethod::osp ? PenaltyFamily::osp
                                                          : PenaltyFamily::ospw;
                cfg.tau_lower = tl;
                cfg.tau_upper = tu;
                cfg.w = method == SweepMethod::ospw ? apply_w_rule(tu, opts.w_rule) : 0.0;
                r.w = cfg.w;
                SolveOptions so;
                so.max_iters = opts.iters;
                so.step = step;
                res = solve_volume(geom, pg, cfg, so);
            }
            MetricReport m = metric_report(res.dose, geom, opts.alpha);
            r.pw = m.pw;
            r.ipdr = m.ipdr;
            r.ver = m.ver;
            r.max_dose = max_printable_dose(res.dose, geom);
        } catch (const std::exception& e) {
            r.failed = true;
            r.fail_reason = e.what();
        }
    });
    return grid;
}

std::pair<double, double> select_pw_optimal(const SweepGrid& grid, bool exclude_overdose) {
    const SweepRecord* best = nullptr;
    for (const SweepRecord& r : grid.records) {
        if (r.failed) continue;
        if (exclude_overdose && r.max_dose > 1.0) continue;
        if (!best || r.pw > best->pw ||
            (r.pw == best->pw && (r.tu_centi > best->tu_centi ||
                                  (r.tu_centi == best->tu_centi && r.tl_centi > best->tl_centi))))
            best = &r;
    }
    if (!best) throw selection_error("select_pw_optimal: no admissible threshold pair");
    return {best->tl_centi / 100.0, best->tu_centi / 100.0};
}

void export_colormap(const SweepGrid& grid, SweepMetric metric,
                     const std::filesystem::path& path,
                     std::optional<double> max_scale) {
    if (grid.records.empty()) throw parameter_error("export_colormap: empty grid");
    std::string s = "tau_lower\\tau_upper";
    for (int tu : grid.tau_centi) s += "," + format_double(tu / 100.0);
    s += "\n";
    for (int tl : grid.tau_centi) {
        s += format_double(tl / 100.0);
        for (int tu : grid.tau_centi) {
            s += ",";
            if (tu <= tl) continue;
            auto it = std::find_if(grid.records.begin(), grid.records.end(),
                                   [&](const SweepRecord& r) {
                                       return r.tl_centi == tl && r.tu_centi == tu;
                                   });
            if (it == grid.records.end() || it->failed) continue;  // blank, not zero
            double v = metric == SweepMetric::pw ? it->pw
                       : metric == SweepMetric::ipdr ? it->ipdr
                                                     : it->ver;
            if (max_scale && v > *max_scale) v = *max_scale;
            s += format_double(v);
        }
        s += "\n";
    }
    write_text_file(path, s);
}

void save_sweep_csv(const std::filesystem::path& path, const SweepGrid& grid) {
    std::string s = "method,geometry,alpha,tau_lower,tau_upper,w,status,pw,ipdr,ver,max_dose\n";
    for (const SweepRecord& r : grid.records) {
        s += grid.method_tag + "," + grid.geometry_tag + "," + format_double(grid.alpha) +
             "," + format_double(r.tl_centi / 100.0) + "," +
             format_double(r.tu_centi / 100.0) + "," + format_double(r.w) + ",";
        if (r.failed) {
            s += "failed,,,,\n";
        } else {
            s += "ok," + format_double(r.pw) + "," + format_double(r.ipdr) + "," +
                 format_double(r.ver) + "," + format_double(r.max_dose) + "\n";
        }
    }
    write_text_file(path, s);
}

SweepGrid load_sweep_csv(const std::filesystem::path& path) {
    std::string text = read_text_file(path);
    SweepGrid grid;
    std::size_t pos = text.find('\n');
    if (pos == std::string::npos) throw io_error("sweep csv truncated: " + path.string());
    ++pos;
    auto split = [](const std::string& line) {
        std::vector<std::string> out;
        std::size_t b = 0;
        for (;;) {
            std::size_t e = line.find(',', b);
            out.push_back(line.substr(b, e == std::string::npos ? e : e - b));
            if (e == std::string::npos) break;
            b = e + 1;
        }
        return out;
    };
    std::vector<int> taus;
    while (pos < text.size()) {
        std::size_t e = text.find('\n', pos);
        if (e == std::string::npos) e = text.size();
        std::string line = text.substr(pos, e - pos);
        pos = e + 1;
        if (line.empty()) continue;
        std::vector<std::string> f = split(line);
        if (f.size() != 11) throw io_error("bad sweep csv row: " + line);
        grid.method_tag = f[0];
        grid.geometry_tag = f[1];
        grid.alpha = std::stod(f[2]);
        SweepRecord r;
        r.tl_centi = int(std::lround(std::stod(f[3]) * 100.0));
        r.tu_centi = int(std::lround(std::stod(f[4]) * 100.0));
        r.w = std::stod(f[5]);
        if (f[6] == "failed") {
            r.failed = true;
        } else {
            r.pw = std::stod(f[7]);
            r.ipdr = std::stod(f[8]);
            r.ver = std::stod(f[9]);
            r.max_dose = std::stod(f[10]);
        }
        taus.push_back(r.tl_centi);
        taus.push_back(r.tu_centi);
        grid.records.push_back(r);
    }
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
    grid.tau_centi = taus;
    return grid;
}

void save_sweep_summary_json(const std::filesystem::path& path, const SweepGrid& grid,
                             bool exclude_overdose) {
    json j;
    j["method"] = grid.method_tag;
    j["geometry"] = grid.geometry_tag;
    j["alpha"] = grid.alpha;
    std::size_t n_failed = 0;
    for (const SweepRecord& r : grid.records)
        if (r.failed) ++n_failed;
    j["n_failed"] = n_failed;
    try {
        auto [tl, tu] = select_pw_optimal(grid, exclude_overdose);
        j["optimal_pair"] = {tl, tu};
        for (const SweepRecord& r : grid.records)
            if (r.tl_centi == int(std::lround(tl * 100)) &&
                r.tu_centi == int(std::lround(tu * 100)))
                j["optimal_pw"] = r.pw;
    } catch (const selection_error&) {
        j["optimal_pair"] = nullptr;
        j["optimal_pw"] = nullptr;
    }
    write_text_file(path, j.dump(2) + "\n");
}

} // namespace tvam
