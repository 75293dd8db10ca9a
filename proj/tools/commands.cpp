#include "commands.hpp"

#include <sstream>

#include "opdeloc/battery.hpp"
#include "opdeloc/ensemble.hpp"
#include "opdeloc/io.hpp"

namespace opdeloc::cli {

namespace {

EnsembleSpec base_spec(const Config& cfg) {
    EnsembleSpec spec;
    spec.realizations = cfg.integer("general", "realizations");
    spec.master_seed = std::stoull(cfg.text("general", "seed"));
    spec.threads = cfg.integer("general", "threads");
    return spec;
}

std::vector<std::string> model_fields(const GraphFamily& f) {
    const bool ws = f.random();
    return {f.label(), ws ? std::to_string(f.ws.half_degree) : "", ws ? format_double(f.ws.rewire_prob) : ""};
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::string axis_name(Axis a) { return a == Axis::x ? "x" : "z"; }

std::string file_label(const GraphFamily& f) {
    if (!f.random()) return f.label();
    std::ostringstream s;
    s << "ws_k" << f.ws.half_degree << "_p" << f.ws.rewire_prob;
    return s.str();
}

}  // namespace

int cmd_ck_curves(const RunContext& ctx) {
    const auto& cfg = ctx.config;
    auto spec = base_spec(cfg);
    spec.task = TaskKind::ck_curve;
    spec.num_modes = cfg.integer("ck-curves", "L");
    spec.times = time_grid(cfg.real("ck-curves", "t_max"), cfg.real("ck-curves", "dt"));
    spec.max_krylov_dim = cfg.integer("ck-curves", "krylov_dim");
    std::vector<int> sizes;
    for (const auto& w : cfg.words("ck-curves", "sizes")) sizes.push_back(w == "half" ? spec.num_modes / 2 : std::stoi(w));

    std::ostringstream csv;
    CsvWriter out(csv, cfg.metadata("ck-curves"), {"model", "k", "p", "L", "size", "t", "ck_mean", "ck_stderr"});
    for (const auto& model : cfg.models("ck-curves", "models")) {
        spec.family = model;
        for (int s : sizes) {
            spec.size = s;
            ctx.log << "ck-curves: " << model.label() << " L=" << spec.num_modes << " size=" << s << '\n';
            const auto curve = run_ck_curve(spec);
            for (std::size_t i = 0; i < curve.times.size(); ++i)
                out.row(concat(model_fields(model),
                               {CsvWriter::cell(spec.num_modes), CsvWriter::cell(s), CsvWriter::cell(curve.times[i]),
                                CsvWriter::cell(curve.mean[i]), CsvWriter::cell(curve.stderr_[i])}));
        }
    }
    write_text_file(ctx.out_dir / "ck_curves.csv", csv.str());
    return 0;
}

int cmd_ratio_scaling(const RunContext& ctx) {
    const auto& cfg = ctx.config;
    auto spec = base_spec(cfg);
    spec.task = TaskKind::ratio;
    spec.t_lo = cfg.real("ratio-scaling", "t_lo");
    spec.t_hi = cfg.real("ratio-scaling", "t_hi");
    spec.times = time_grid(spec.t_hi, cfg.real("ratio-scaling", "dt"));

    std::ostringstream csv;
    CsvWriter out(csv, cfg.metadata("ratio-scaling"), {"model", "k", "p", "L", "R", "flatness", "stderr"});
    for (const auto& model : cfg.models("ratio-scaling", "models")) {
        spec.family = model;
        for (int l : cfg.integers("ratio-scaling", "L")) {
            spec.num_modes = l;
            ctx.log << "ratio-scaling: " << model.label() << " L=" << l << '\n';
            const auto r = run_ratio(spec);
            out.row(concat(model_fields(model), {CsvWriter::cell(l), CsvWriter::cell(r.ratio.ratio),
                                                 CsvWriter::cell(r.ratio.flatness), CsvWriter::cell(r.stderr_)}));
        }
    }
    write_text_file(ctx.out_dir / "ratio_scaling.csv", csv.str());
    return 0;
}

int cmd_battery(const RunContext& ctx) {
    const auto& cfg = ctx.config;
    auto spec = base_spec(cfg);
    spec.task = TaskKind::battery;
    spec.times = time_grid(cfg.real("battery", "t_max"), cfg.real("battery", "dt"));
    const auto path = cfg.text("battery", "path");
    if (path == "determinant") spec.path = AutocorrelationPath::free_determinant;
    else if (path == "krylov") spec.path = AutocorrelationPath::sector_krylov;
    else throw ConfigError("[battery] path must be 'determinant' or 'krylov'");
    std::vector<Axis> axes;
    for (const auto& a : cfg.words("battery", "axes")) {
        if (a == "x") axes.push_back(Axis::x);
        else if (a == "z") axes.push_back(Axis::z);
        else throw ConfigError("[battery] axes: unknown axis '" + a + "'");
    }
    const auto lengths = cfg.integers("battery", "L");
    const auto meta = cfg.metadata("battery");

    std::ostringstream csv;
    CsvWriter out(csv, meta, {"model", "k", "p", "L", "axis", "p_max", "p_max_stderr", "t_star"});
    nlohmann::json summary = nlohmann::json::array();
    for (const auto& model : cfg.models("battery", "models")) {
        spec.family = model;
        for (int l : lengths) {
            spec.num_modes = l;
            for (Axis axis : axes) {
                spec.axis = axis;
                ctx.log << "battery: " << model.label() << " L=" << l << " axis=" << axis_name(axis) << '\n';
                const auto b = run_battery(spec);
                out.row(concat(model_fields(model),
                               {CsvWriter::cell(l), axis_name(axis), CsvWriter::cell(b.p_max),
                                CsvWriter::cell(b.p_max_stderr), CsvWriter::cell(b.t_star)}));

                PowerSeries ps;
                ps.times = b.power.times;
                ps.power = b.power.mean;
                ps.energy.resize(ps.times.size());
                for (std::size_t i = 0; i < ps.times.size(); ++i) ps.energy[i] = ps.power[i] * ps.times[i];
                ps.p_max = b.p_max;
                ps.t_star = b.t_star;
                Metadata m = meta;
                m.emplace_back("model", model.label());
                m.emplace_back("L", std::to_string(l));
                m.emplace_back("axis", axis_name(axis));
                std::ostringstream power_csv;
                write_power_csv(power_csv, ps, m);
                write_text_file(ctx.out_dir / ("power_" + file_label(model) + "_L" + std::to_string(l) + "_" +
                                               axis_name(axis) + ".csv"),
                                power_csv.str());
                auto entry = power_summary_json(ps);
                entry["model"] = model.label();
                entry["L"] = l;
                entry["axis"] = axis_name(axis);
                entry["p_max_stderr"] = b.p_max_stderr;
                entry["realizations"] = b.power.realizations;
                summary.push_back(entry);
            }
        }
    }
    write_text_file(ctx.out_dir / "battery_pmax.csv", csv.str());
    write_text_file(ctx.out_dir / "pmax_summary.json", summary.dump(2) + "\n");

    if (cfg.flag("battery", "perturbative")) {
        // Mean unrescaled bandwidth of complete-graph SYK2 per L, fitted linearly.
        std::vector<std::pair<double, double>> samples;
        for (int l : lengths) {
            if (l < 4) continue;
            const Graph g = make_complete(l);
            const auto stats = run_realizations(
                spec.realizations, spec.master_seed,
                [&](int, Rng& rng) { return std::vector<double>{bandwidth(sample_couplings(g, rng))}; },
                spec.threads);
            samples.emplace_back(l, stats.mean[0]);
        }
        if (samples.size() >= 2) {
            const auto fit = bandwidth_fit(samples);
            std::ostringstream fit_csv;
            Metadata m = meta;
            m.emplace_back("mu_intercept", format_double(fit.intercept));
            m.emplace_back("mu_slope", format_double(fit.slope));
            CsvWriter w(fit_csv, m, {"L", "mu_mean", "mu_fit", "residual"});
            for (std::size_t i = 0; i < samples.size(); ++i)
                w.row({CsvWriter::cell(static_cast<int>(samples[i].first)), CsvWriter::cell(samples[i].second),
                       CsvWriter::cell(fit(samples[i].first)), CsvWriter::cell(fit.residuals[i])});
            write_text_file(ctx.out_dir / "bandwidth_fit.csv", fit_csv.str());
            for (const auto& [l, mu] : samples) {
                const int modes = static_cast<int>(l);
                const auto ps = perturbative_power(modes, fit(l), spec.times);
                Metadata pm = meta;
                pm.emplace_back("model", "full");
                pm.emplace_back("L", std::to_string(modes));
                pm.emplace_back("axis", "x");
                pm.emplace_back("mu", format_double(fit(l)));
                std::ostringstream pcsv;
                write_power_csv(pcsv, ps, pm);
                write_text_file(ctx.out_dir / ("perturbative_L" + std::to_string(modes) + ".csv"), pcsv.str());
            }
        }
    }
    return 0;
}

}  // namespace opdeloc::cli
