#include "heatbounds/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>

#include <nlohmann/json.hpp>

#include "heatbounds/csv.hpp"
#include "heatbounds/distance.hpp"
#include "heatbounds/errors.hpp"
#include "heatbounds/fit.hpp"
#include "heatbounds/quadrature.hpp"
#include "heatbounds/spectral.hpp"
#include "heatbounds/svg.hpp"
#include "heatbounds/torsion.hpp"

namespace heatbounds::runner {

namespace fs = std::filesystem;
using bounds::BoundId;
using bounds::BoundReport;
using bounds::Uncertain;
using io::format_double;

std::vector<double> TimeGridSpec::values() const {
    validate();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(points));
    const double ratio = std::pow(t_max / t_min, 1.0 / (points - 1));
    double t = t_min;
    for (int i = 0; i < points; ++i) {
        out.push_back(i == points - 1 ? t_max : t);
        t *= ratio;
    }
    return out;
}

void TimeGridSpec::validate() const {
    if (!(t_min > 0.0) || !(t_min < t_max)) {
        throw std::invalid_argument("t grid needs 0 < t_min < t_max");
    }
    if (points < 2) throw std::invalid_argument("t grid needs at least 2 points");
}

void ExperimentConfig::validate() const {
    t_grid.validate();
    if (!(h > 0.0)) throw std::invalid_argument("config: h must be positive");
    if (refine < 1) throw std::invalid_argument("config: refine must be >= 1");
    if (refine > 8) throw std::invalid_argument("config: refine > 8 is not supported");
    if (quadrature < 0) throw std::invalid_argument("config: quadrature size must be >= 0");
    for (double b : betas) {
        if (!(b > 0.0)) throw std::invalid_argument("config: betas must be positive");
    }
    if (!(horn_truncation > 0.0)) throw std::invalid_argument("config: truncation must be positive");
    if (!(exponent_tolerance > 0.0)) {
        throw std::invalid_argument("config: exponent_tolerance must be positive");
    }
    if (fit_window && !((*fit_window)[0] < (*fit_window)[1])) {
        throw std::invalid_argument("config: fit_window must be [lo, hi] with lo < hi");
    }
    if (out_dir.empty()) throw std::invalid_argument("config: out dir must not be empty");
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    static const std::set<std::string> known = {
        "domain", "h",      "refine",     "t_grid",    "bounds",
        "betas",  "quadrature", "seed",   "out",       "scheme",
        "alphas", "truncation", "fit_window", "exponent_tolerance"};
    for (const auto& [key, _] : j.items()) {
        if (!known.count(key)) throw std::invalid_argument("unknown config key: " + key);
    }
    ExperimentConfig c;
    if (j.contains("domain")) c.domain = j.at("domain").get<geo::Domain>();
    if (j.contains("h")) c.h = j.at("h").get<double>();
    if (j.contains("refine")) c.refine = j.at("refine").get<int>();
    if (j.contains("t_grid")) {
        const auto& tg = j.at("t_grid");
        for (const auto& [key, _] : tg.items()) {
            if (key != "min" && key != "max" && key != "points") {
                throw std::invalid_argument("unknown t_grid key: " + key);
            }
        }
        c.t_grid.t_min = tg.at("min").get<double>();
        c.t_grid.t_max = tg.at("max").get<double>();
        c.t_grid.points = tg.at("points").get<int>();
    }
    if (j.contains("bounds")) {
        for (const auto& s : j.at("bounds")) {
            c.bound_ids.push_back(bounds::bound_id_from_string(s.get<std::string>()));
        }
    }
    if (j.contains("betas")) c.betas = j.at("betas").get<std::vector<double>>();
    if (j.contains("quadrature")) c.quadrature = j.at("quadrature").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
    if (j.contains("scheme")) c.scheme = pde::time_scheme_from_string(j.at("scheme").get<std::string>());
    if (j.contains("alphas")) c.alphas = j.at("alphas").get<std::vector<double>>();
    if (j.contains("truncation")) c.horn_truncation = j.at("truncation").get<double>();
    if (j.contains("fit_window")) {
        const auto w = j.at("fit_window").get<std::vector<double>>();
        if (w.size() != 2) throw std::invalid_argument("fit_window must have exactly 2 entries");
        c.fit_window = std::array<double, 2>{w[0], w[1]};
    }
    if (j.contains("exponent_tolerance")) {
        c.exponent_tolerance = j.at("exponent_tolerance").get<double>();
    }
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::from_file(const fs::path& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open config file: " + path.string());
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config is not valid JSON: " + std::string(e.what()));
    }
    return from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    if (domain) j["domain"] = *domain;
    j["h"] = h;
    j["refine"] = refine;
    j["t_grid"] = {{"min", t_grid.t_min}, {"max", t_grid.t_max}, {"points", t_grid.points}};
    std::vector<std::string> ids;
    for (BoundId id : bound_ids) ids.push_back(bounds::to_string(id));
    j["bounds"] = ids;
    j["betas"] = betas;
    j["quadrature"] = quadrature;
    j["seed"] = seed;
    j["out"] = out_dir;
    j["scheme"] = pde::to_string(scheme);
    j["alphas"] = alphas;
    j["truncation"] = horn_truncation;
    if (fit_window) j["fit_window"] = std::vector<double>{(*fit_window)[0], (*fit_window)[1]};
    j["exponent_tolerance"] = exponent_tolerance;
    return j;
}

namespace {

const geo::Domain& require_domain(const ExperimentConfig& config) {
    if (!config.domain) throw std::invalid_argument("this command needs a \"domain\" in the config");
    return *config.domain;
}

std::vector<double> level_spacings(const ExperimentConfig& config) {
    std::vector<double> hs;
    for (int i = 0; i < config.refine; ++i) hs.push_back(config.h / std::pow(2.0, i));
    return hs;
}

geo::SphereQuadrature quadrature_for(const ExperimentConfig& config, int dim) {
    return geo::SphereQuadrature::for_dimension(dim, config.quadrature);
}

void write_meta(const ExperimentConfig& config, const std::string& command,
                const std::string& stem, const std::vector<std::string>& outputs) {
    nlohmann::json meta;
    meta["command"] = command;
    meta["config"] = config.to_json();
    meta["outputs"] = outputs;
    io::write_text_file(fs::path(config.out_dir) / (stem + ".meta.json"), meta.dump(2) + "\n");
}

double finite_tail(const pde::HeatContentCurve& curve) {
    return curve.tail_volume && std::isfinite(*curve.tail_volume) ? *curve.tail_volume : 0.0;
}

// Everything evaluate_bounds may need at one resolution.
struct LevelData {
    double h = 0;
    std::shared_ptr<const pde::Grid> grid;
    double vol_cells = 0;                      // midpoint-rule volume
    pde::HeatContentCurve curve;               // sampled at the union time grid
    std::vector<double> times;                 // the union time grid
    std::map<double, double> delta_moments;    // beta -> integral
    std::map<double, double> rho_moments;
    std::vector<double> delta_sublevel;        // per t-grid index, at (2 c t)^(1/gamma)
    std::vector<double> rho_sublevel;          // per t-grid index, at (m t / 2)^(1/2)
    double rigidity = 0;
    double sup_w = 0;
    double lambda = 0;
    std::vector<double> trace;                 // per t-grid index

    double q_at(double t) const {
        const auto it = std::lower_bound(curve.t.begin(), curve.t.end(), t);
        if (it == curve.t.end() || *it != t) {
            throw std::logic_error("internal: heat content was not sampled at the requested t");
        }
        return curve.q[static_cast<std::size_t>(it - curve.t.begin())];
    }
};

struct Needs {
    bool q = false;
    bool delta_moment = false;
    bool rho_moment_betas = false;
    bool rho_moment2 = false;
    bool delta_sublevel = false;
    bool rho_sublevel = false;
    bool torsion = false;
    bool lambda = false;
    bool trace = false;
    bool q_half = false;
};

Needs needs_for(const std::vector<BoundId>& ids) {
    Needs n;
    for (BoundId id : ids) {
        switch (id) {
            case BoundId::thm1:
                n.q = n.delta_moment = true;
                break;
            case BoundId::cor3:
                n.q = n.rho_moment_betas = true;
                break;
            case BoundId::thm2:
                n.q = n.delta_sublevel = true;
                break;
            case BoundId::cor4:
                n.q = n.rho_sublevel = true;
                break;
            case BoundId::thm6:
                n.torsion = n.rho_moment2 = true;
                break;
            case BoundId::cor7:
                n.q = n.q_half = n.trace = true;
                break;
            case BoundId::lem8:
            case BoundId::lem9:
                n.torsion = true;
                n.rho_moment2 = n.rho_moment2 || id == BoundId::lem9;
                break;
            case BoundId::eq72:
                n.lambda = n.rho_moment2 = true;
                break;
            case BoundId::horn_exponent:
                throw std::invalid_argument(
                    "horn-exponent reports are produced by the horn command, not verify");
        }
    }
    return n;
}

LevelData compute_level(const ExperimentConfig& config, const geo::Domain& domain, double h,
                        const Needs& needs, const std::vector<double>& ts) {
    LevelData lv;
    lv.h = h;
    const geo::SphereQuadrature quad = quadrature_for(config, domain.dim);

    if (needs.q || needs.torsion || needs.lambda || needs.trace) {
        lv.grid = pde::build_grid(domain, h);
    }
    if (needs.q) {
        std::vector<double> all = ts;
        if (needs.q_half) {
            for (double t : ts) all.push_back(t / 2.0);
        }
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        lv.times = all;
        pde::HeatOptions opts;
        opts.scheme = config.scheme;
        lv.curve = pde::heat_content(*lv.grid, all, opts);
    }
    lv.vol_cells = geo::moment_integral(domain, geo::FieldKind::delta, 0.0, h);
    const double cell_vol = std::pow(h, domain.dim);
    if (needs.delta_moment || needs.delta_sublevel) {
        const auto delta_cells = geo::cell_field_values(domain, geo::FieldKind::delta, h);
        if (needs.delta_moment) {
            for (double beta : config.betas) {
                lv.delta_moments[beta] = geo::moment_from_cells(delta_cells, cell_vol, beta);
            }
        }
        if (needs.delta_sublevel) {
            const auto params = bounds::hardy_parameters(domain, geo::FieldKind::delta);
            for (double t : ts) {
                const double threshold = std::pow(2.0 * params.c * t, 1.0 / params.gamma);
                lv.delta_sublevel.push_back(
                    geo::sublevel_from_cells(delta_cells, cell_vol, threshold));
            }
        }
    }
    if (needs.rho_moment_betas || needs.rho_moment2 || needs.rho_sublevel) {
        const auto rho_cells = geo::cell_field_values(domain, geo::FieldKind::rho, h, &quad);
        if (needs.rho_moment_betas) {
            for (double beta : config.betas) {
                lv.rho_moments[beta] = geo::moment_from_cells(rho_cells, cell_vol, beta);
            }
        }
        if (needs.rho_moment2 && !lv.rho_moments.count(2.0)) {
            lv.rho_moments[2.0] = geo::moment_from_cells(rho_cells, cell_vol, 2.0);
        }
        if (needs.rho_sublevel) {
            for (double t : ts) {
                const double threshold = std::sqrt(domain.dim * t / 2.0);
                lv.rho_sublevel.push_back(geo::sublevel_from_cells(rho_cells, cell_vol, threshold));
            }
        }
    }
    if (needs.torsion) {
        const auto tor = pde::torsion(lv.grid);
        lv.rigidity = tor.rigidity;
        lv.sup_w = tor.sup_norm;
    }
    if (needs.lambda) {
        lv.lambda = pde::principal_eigenvalue(*lv.grid);
    }
    if (needs.trace) {
        if (lv.grid->n_active() > pde::kDenseSpectrumCap) {
            throw CapacityError(
                "cor7 needs the dense spectrum: active nodes exceed 4096, use a coarser h");
        }
        const auto spectrum = pde::dirichlet_spectrum(*lv.grid);
        for (double t : ts) lv.trace.push_back(pde::trace_from_spectrum(spectrum, t));
    }
    return lv;
}

Uncertain with_margin(double fine, double prev, bool have_prev, double extra = 0.0) {
    return Uncertain{fine, (have_prev ? std::abs(fine - prev) : 0.0) + extra};
}

}  // namespace

std::vector<BoundReport> evaluate_bounds(const ExperimentConfig& config) {
    const geo::Domain& domain = require_domain(config);
    if (config.bound_ids.empty()) {
        throw std::invalid_argument("verify needs a nonempty \"bounds\" id list");
    }
    const Needs needs = needs_for(config.bound_ids);
    const std::vector<double> ts = config.t_grid.values();
    const std::vector<double> hs = level_spacings(config);

    std::vector<LevelData> levels;
    for (double h : hs) levels.push_back(compute_level(config, domain, h, needs, ts));
    const LevelData& fine = levels.back();
    const bool have_prev = levels.size() >= 2;
    const LevelData& prev = have_prev ? levels[levels.size() - 2] : fine;

    const double q_tail = needs.q ? finite_tail(fine.curve) : 0.0;
    auto q_unc = [&](double t) {
        return with_margin(fine.q_at(t), have_prev ? prev.q_at(t) : 0.0, have_prev, q_tail);
    };

    std::vector<BoundReport> reports;
    for (BoundId id : config.bound_ids) {
        switch (id) {
            case BoundId::thm1:
            case BoundId::cor3: {
                const auto mode = id == BoundId::thm1 ? geo::FieldKind::delta : geo::FieldKind::rho;
                const auto params = bounds::hardy_parameters(domain, mode);
                const auto& fine_moments =
                    mode == geo::FieldKind::delta ? fine.delta_moments : fine.rho_moments;
                const auto& prev_moments =
                    mode == geo::FieldKind::delta ? prev.delta_moments : prev.rho_moments;
                for (double beta : config.betas) {
                    const Uncertain moment = with_margin(fine_moments.at(beta),
                                                         prev_moments.at(beta), have_prev);
                    for (double t : ts) {
                        const double rhs = bounds::decay_bound_rhs(params, beta, moment.value, t);
                        const double rhs_err =
                            moment.value > 0.0 ? rhs * moment.err / moment.value : 0.0;
                        reports.push_back(bounds::verify(
                            id, q_unc(t), {rhs, rhs_err},
                            {{"t", t}, {"beta", beta}, {"h", fine.h}, {"moment", moment.value}}));
                    }
                }
                break;
            }
            case BoundId::thm2:
            case BoundId::cor4: {
                const auto mode = id == BoundId::thm2 ? geo::FieldKind::delta : geo::FieldKind::rho;
                const auto params = bounds::hardy_parameters(domain, mode);
                const auto& fine_sub =
                    mode == geo::FieldKind::delta ? fine.delta_sublevel : fine.rho_sublevel;
                const auto& prev_sub =
                    mode == geo::FieldKind::delta ? prev.delta_sublevel : prev.rho_sublevel;
                const Uncertain vol = with_margin(fine.vol_cells, prev.vol_cells, have_prev);
                for (std::size_t i = 0; i < ts.size(); ++i) {
                    const double t = ts[i];
                    const double threshold = std::pow(2.0 * params.c * t, 1.0 / params.gamma);
                    const double rhs = vol.value - 0.25 * fine_sub[i];
                    const double sub_err = have_prev ? std::abs(fine_sub[i] - prev_sub[i]) : 0.0;
                    reports.push_back(bounds::verify(
                        id, q_unc(t), {rhs, vol.err + 0.25 * sub_err},
                        {{"t", t}, {"h", fine.h}, {"threshold", threshold}}));
                }
                break;
            }
            case BoundId::thm6: {
                const Uncertain rho2 =
                    with_margin(fine.rho_moments.at(2.0), prev.rho_moments.at(2.0), have_prev);
                Uncertain lhs = with_margin(fine.rigidity, prev.rigidity, have_prev);
                if (domain.kind == geo::DomainKind::horn) {
                    // Torsion mass hiding beyond the truncation is at most
                    // tail volume times the squared tail half-width over 2.
                    const double tail = geo::horn_tail_volume(domain.alpha, domain.truncation);
                    if (std::isfinite(tail)) {
                        const double w = geo::horn_half_width(domain.alpha, domain.truncation);
                        lhs.err += tail * w * w / 2.0;
                    }
                }
                const double rhs = bounds::torsion_bound_rhs(domain.dim, rho2.value);
                reports.push_back(bounds::verify(
                    id, lhs, {rhs, 4.0 / domain.dim * rho2.err},
                    {{"h", fine.h}, {"rho_moment2", rho2.value}}));
                break;
            }
            case BoundId::cor7: {
                for (std::size_t i = 0; i < ts.size(); ++i) {
                    const double t = ts[i];
                    const Uncertain trace =
                        with_margin(fine.trace[i], have_prev ? prev.trace[i] : 0.0, have_prev);
                    const Uncertain q_half = q_unc(t / 2.0);
                    auto report = bounds::trace_bound_check(domain.dim, trace, q_half, t);
                    report.inputs["h"] = fine.h;
                    reports.push_back(std::move(report));
                }
                break;
            }
            case BoundId::lem8:
            case BoundId::lem9: {
                if (id == BoundId::lem8 && domain.dim < 3) {
                    throw std::invalid_argument("lem8 applies to m >= 3 domains");
                }
                if (id == BoundId::lem9 && domain.dim != 2) {
                    throw std::invalid_argument("lem9 applies to planar domains");
                }
                const Uncertain vol = with_margin(fine.vol_cells, prev.vol_cells, have_prev);
                const Uncertain lhs = with_margin(fine.sup_w, prev.sup_w, have_prev);
                double rhs, rhs_err;
                std::map<std::string, double> inputs{{"h", fine.h}, {"vol", vol.value}};
                if (id == BoundId::lem8) {
                    rhs = bounds::sup_torsion_bound_rhs(domain.dim, vol.value);
                    rhs_err = vol.value > 0.0 ? rhs * (2.0 / domain.dim) * vol.err / vol.value : 0.0;
                } else {
                    const Uncertain rho2 =
                        with_margin(fine.rho_moments.at(2.0), prev.rho_moments.at(2.0), have_prev);
                    rhs = bounds::sup_torsion_bound_rhs(2, vol.value, rho2.value);
                    const double rel = (vol.value > 0.0 ? vol.err / vol.value : 0.0) +
                                       (rho2.value > 0.0 ? rho2.err / rho2.value : 0.0);
                    rhs_err = 0.5 * rhs * rel;
                    inputs["rho_moment2"] = rho2.value;
                }
                reports.push_back(bounds::verify(id, lhs, {rhs, rhs_err}, std::move(inputs)));
                break;
            }
            case BoundId::eq72: {
                if (domain.dim != 2) throw std::invalid_argument("eq72 applies to planar domains");
                const Uncertain lambda = with_margin(fine.lambda, prev.lambda, have_prev);
                const Uncertain rho2 =
                    with_margin(fine.rho_moments.at(2.0), prev.rho_moments.at(2.0), have_prev);
                auto report = bounds::spectral_gap_check(lambda, rho2);
                report.inputs["h"] = fine.h;
                reports.push_back(std::move(report));
                break;
            }
            case BoundId::horn_exponent:
                break;  // rejected in needs_for
        }
    }
    return reports;
}

std::vector<std::string> run_heat(const ExperimentConfig& config) {
    const geo::Domain& domain = require_domain(config);
    fs::create_directories(config.out_dir);
    const std::vector<double> ts = config.t_grid.values();

    pde::HeatOptions opts;
    opts.scheme = config.scheme;
    std::vector<pde::HeatContentCurve> curves;
    for (double h : level_spacings(config)) {
        curves.push_back(pde::heat_content(*pde::build_grid(domain, h), ts, opts));
    }
    pde::HeatContentCurve& curve = curves.back();
    if (curves.size() >= 2) {
        const auto& prev = curves[curves.size() - 2];
        for (std::size_t i = 0; i < curve.size(); ++i) {
            curve.abs_uncertainty[i] += std::abs(curve.q[i] - prev.q[i]);
        }
    }

    io::CsvTable table;
    table.header = {"t", "value", "abs_uncertainty"};
    for (std::size_t i = 0; i < curve.size(); ++i) {
        table.add_row({format_double(curve.t[i]), format_double(curve.q[i]),
                       format_double(curve.abs_uncertainty[i])});
    }
    io::write_text_file(fs::path(config.out_dir) / "q_curve.csv", table.to_string());

    io::PlotOptions plot;
    plot.title = "Heat content";
    plot.x_label = "t";
    plot.y_label = "Q(t)";
    plot.log_x = true;
    plot.log_y = true;
    io::write_line_plot(fs::path(config.out_dir) / "q_curve.svg",
                        {{"Q", curve.t, curve.q}}, plot);

    const std::vector<std::string> outputs{"q_curve.csv", "q_curve.svg"};
    write_meta(config, "heat", "q_curve", outputs);
    return outputs;
}

std::vector<std::string> run_torsion(const ExperimentConfig& config) {
    const geo::Domain& domain = require_domain(config);
    fs::create_directories(config.out_dir);

    std::vector<pde::TorsionResult> results;
    for (double h : level_spacings(config)) {
        results.push_back(pde::torsion(pde::build_grid(domain, h)));
    }
    const auto& fine = results.back();
    const bool have_prev = results.size() >= 2;
    const double p_err = have_prev ? std::abs(fine.rigidity - results[results.size() - 2].rigidity) : 0.0;
    const double s_err = have_prev ? std::abs(fine.sup_norm - results[results.size() - 2].sup_norm) : 0.0;

    io::CsvTable summary;
    summary.header = {"h", "rigidity", "rigidity_err", "sup_w", "sup_w_err"};
    summary.add_row({format_double(fine.w.grid->h), format_double(fine.rigidity),
                     format_double(p_err), format_double(fine.sup_norm), format_double(s_err)});
    io::write_text_file(fs::path(config.out_dir) / "torsion.csv", summary.to_string());

    io::CsvTable field;
    const char* coords[] = {"x", "y", "z"};
    for (int k = 0; k < domain.dim; ++k) field.header.push_back(coords[k]);
    field.header.push_back("value");
    for (std::int64_t i = 0; i < fine.w.grid->n_active(); ++i) {
        const geo::Point p = fine.w.grid->point(i);
        std::vector<std::string> row;
        for (int k = 0; k < domain.dim; ++k) row.push_back(format_double(p[k]));
        row.push_back(format_double(fine.w.values[i]));
        field.add_row(std::move(row));
    }
    io::write_text_file(fs::path(config.out_dir) / "w_field.csv", field.to_string());

    const std::vector<std::string> outputs{"torsion.csv", "w_field.csv"};
    write_meta(config, "torsion", "torsion", outputs);
    return outputs;
}

std::vector<std::string> run_rho_field(const ExperimentConfig& config) {
    const geo::Domain& domain = require_domain(config);
    fs::create_directories(config.out_dir);
    const double h_fine = level_spacings(config).back();
    const auto grid = pde::build_grid(domain, h_fine);
    const auto quad = quadrature_for(config, domain.dim);
    const auto rho = geo::compute_distance_field(domain, grid, geo::FieldKind::rho, &quad);

    io::CsvTable field;
    const char* coords[] = {"x", "y", "z"};
    for (int k = 0; k < domain.dim; ++k) field.header.push_back(coords[k]);
    field.header.push_back("value");
    for (std::int64_t i = 0; i < grid->n_active(); ++i) {
        const geo::Point p = grid->point(i);
        std::vector<std::string> row;
        for (int k = 0; k < domain.dim; ++k) row.push_back(format_double(p[k]));
        row.push_back(format_double(rho.field.values[i]));
        field.add_row(std::move(row));
    }
    io::write_text_file(fs::path(config.out_dir) / "rho_field.csv", field.to_string());

    const std::vector<std::string> outputs{"rho_field.csv"};
    write_meta(config, "rho-field", "rho_field", outputs);
    return outputs;
}

std::vector<std::string> run_eigen(const ExperimentConfig& config) {
    const geo::Domain& domain = require_domain(config);
    fs::create_directories(config.out_dir);

    std::vector<double> lambdas;
    std::shared_ptr<const pde::Grid> fine_grid;
    for (double h : level_spacings(config)) {
        fine_grid = pde::build_grid(domain, h);
        lambdas.push_back(pde::principal_eigenvalue(*fine_grid));
    }
    const bool have_prev = lambdas.size() >= 2;
    const double err = have_prev ? std::abs(lambdas.back() - lambdas[lambdas.size() - 2]) : 0.0;

    io::CsvTable table;
    table.header = {"h", "lambda", "abs_uncertainty"};
    table.add_row({format_double(fine_grid->h), format_double(lambdas.back()), format_double(err)});
    io::write_text_file(fs::path(config.out_dir) / "eigen.csv", table.to_string());

    std::vector<std::string> outputs{"eigen.csv"};
    if (fine_grid->n_active() <= pde::kDenseSpectrumCap) {
        const auto spectrum = pde::dirichlet_spectrum(*fine_grid);
        io::CsvTable trace;
        trace.header = {"t", "value", "abs_uncertainty"};
        for (double t : config.t_grid.values()) {
            trace.add_row({format_double(t), format_double(pde::trace_from_spectrum(spectrum, t)),
                           format_double(0.0)});
        }
        io::write_text_file(fs::path(config.out_dir) / "trace.csv", trace.to_string());
        outputs.push_back("trace.csv");
    }
    write_meta(config, "eigen", "eigen", outputs);
    return outputs;
}

std::vector<std::string> run_verify(const ExperimentConfig& config) {
    fs::create_directories(config.out_dir);
    const std::vector<BoundReport> reports = evaluate_bounds(config);

    io::CsvTable table;
    table.header = {"id", "t", "lhs", "lhs_err", "rhs", "rhs_err", "verdict"};
    nlohmann::json jreports = nlohmann::json::array();
    for (const auto& r : reports) {
        const double t = r.inputs.count("t") ? r.inputs.at("t")
                                             : std::numeric_limits<double>::quiet_NaN();
        table.add_row({bounds::to_string(r.id), format_double(t), format_double(r.lhs.value),
                       format_double(r.lhs.err), format_double(r.rhs.value),
                       format_double(r.rhs.err), bounds::to_string(r.verdict)});
        nlohmann::json jr;
        bounds::to_json(jr, r);
        jreports.push_back(std::move(jr));
    }
    io::write_text_file(fs::path(config.out_dir) / "bounds.csv", table.to_string());
    io::write_text_file(fs::path(config.out_dir) / "bounds.json", jreports.dump(2) + "\n");

    const std::vector<std::string> outputs{"bounds.csv", "bounds.json"};
    write_meta(config, "verify", "bounds", outputs);
    return outputs;
}

std::vector<std::string> run_horn(const ExperimentConfig& config) {
    if (config.alphas.empty()) {
        throw std::invalid_argument("horn needs a nonempty \"alphas\" list");
    }
    fs::create_directories(config.out_dir);
    const std::vector<double> ts = config.t_grid.values();
    const std::array<double, 2> window =
        config.fit_window.value_or(std::array<double, 2>{config.t_grid.t_min, config.t_grid.t_max});

    io::CsvTable table;
    table.header = {"alpha", "status", "fitted", "fit_stderr", "predicted", "abs_gap"};
    const std::string nan = format_double(std::numeric_limits<double>::quiet_NaN());
    for (double alpha : config.alphas) {
        const bool admissible = alpha > 0.2 && alpha != 1.0;
        if (!admissible) {
            std::cerr << "warning: horn alpha " << alpha
                      << " is outside (1/5,1) u (1,inf); skipping\n";
            table.add_row({format_double(alpha), "skipped-inadmissible", nan, nan,
                           format_double(bounds::horn_predicted_exponent(alpha)), nan});
            continue;
        }
        const auto domain = geo::Domain::horn(alpha, config.horn_truncation);
        const auto grid = pde::build_grid(domain, config.h);
        pde::HeatOptions opts;
        opts.scheme = config.scheme;
        const auto curve = pde::heat_content(*grid, ts, opts);

        bounds::SlopeFit fit;
        if (alpha < 1.0) {
            fit = bounds::fit_decay_exponent(curve, window[0], window[1]);
        } else {
            // Finite volume: the sharp scaling shows in vol - Q(t).
            std::vector<double> lx, ly;
            for (std::size_t i = 0; i < curve.size(); ++i) {
                if (curve.t[i] < window[0] || curve.t[i] > window[1]) continue;
                const double deficit = curve.discrete_volume - curve.q[i];
                if (deficit > 0.0) {
                    lx.push_back(std::log(curve.t[i]));
                    ly.push_back(std::log(deficit));
                }
            }
            if (lx.size() < 5) {
                throw std::invalid_argument("fit window too narrow for the volume-deficit fit");
            }
            fit = bounds::least_squares_line(lx, ly);
        }
        const double predicted = bounds::horn_predicted_exponent(alpha);
        table.add_row({format_double(alpha), "ok", format_double(fit.slope),
                       format_double(fit.std_error), format_double(predicted),
                       format_double(std::abs(fit.slope - predicted))});
    }
    io::write_text_file(fs::path(config.out_dir) / "exponents.csv", table.to_string());

    const std::vector<std::string> outputs{"exponents.csv"};
    write_meta(config, "horn", "exponents", outputs);
    return outputs;
}

}  // namespace heatbounds::runner
