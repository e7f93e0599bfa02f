// Acceptance suite: runs every end-to-end criterion at its stated tolerance
// and prints one pass/fail line per criterion.
//
// Usage: acceptance --tool <cli binary> --configs <dir> --out <dir>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "heatbounds/bounds.hpp"
#include "heatbounds/distance.hpp"
#include "heatbounds/experiment.hpp"
#include "heatbounds/fit.hpp"
#include "heatbounds/heat.hpp"
#include "heatbounds/quadrature.hpp"
#include "heatbounds/spectral.hpp"
#include "heatbounds/torsion.hpp"

#include "../tests/oracles.hpp"

using namespace heatbounds;
using bounds::BoundId;
using bounds::Verdict;
using geo::Domain;
using geo::FieldKind;
using geo::SphereQuadrature;
namespace fs = std::filesystem;

namespace {

struct Args {
    fs::path tool;
    fs::path configs;
    fs::path out;
};

struct Failure {
    std::string detail;
};

using CheckFn = std::function<void(const Args&, std::string& note)>;

void require(bool ok, const std::string& detail) {
    if (!ok) throw Failure{detail};
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

std::vector<double> geometric(double lo, double hi, int n) {
    std::vector<double> out;
    const double r = std::pow(hi / lo, 1.0 / (n - 1));
    double t = lo;
    for (int i = 0; i < n; ++i) {
        out.push_back(i == n - 1 ? hi : t);
        t *= r;
    }
    return out;
}

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

void check_not_violated(const std::vector<bounds::BoundReport>& reports, const char* what) {
    for (const auto& r : reports) {
        if (r.verdict == Verdict::violated) {
            throw Failure{std::string(what) + ": violated row id=" + bounds::to_string(r.id) +
                          " lhs=" + fmt(r.lhs.value) + " rhs=" + fmt(r.rhs.value)};
        }
    }
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    require(f.good(), "missing file " + p.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int run_tool(const Args& args, const std::string& cmdline) {
    const std::string full = args.tool.string() + " " + cmdline;
    return std::system(full.c_str());
}

// --- criteria ---------------------------------------------------------------

void c1_interval_oracle(const Args&, std::string& note) {
    const auto start = std::chrono::steady_clock::now();
    const auto grid = pde::build_grid(Domain::interval(1.0), 1.0 / 256);
    const std::vector<double> ts{0.01, 0.05, 0.1};
    const auto curve = pde::heat_content(*grid, ts);
    double worst = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        worst = std::max(worst, rel_err(curve.q[i], oracles::q_interval(ts[i])));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    note = "max rel err " + fmt(worst) + ", " + fmt(secs) + " s";
    require(worst <= 0.01, "interval Q vs eigenseries: rel err " + fmt(worst) + " > 1%");
    require(secs < 10.0, "runtime " + fmt(secs) + " s exceeds 10 s");
}

void c2_disk_boundary_coefficient(const Args&, std::string& note) {
    const auto start = std::chrono::steady_clock::now();
    const auto grid = pde::build_grid(Domain::disk(1.0), 1.0 / 512);
    const auto ts = geometric(1e-5, 1e-3, 12);
    const auto curve = pde::heat_content(*grid, ts);
    std::vector<double> deficit;
    for (double q : curve.q) deficit.push_back(curve.discrete_volume - q);
    const auto fit = bounds::fit_sqrt_coefficient(ts, deficit);
    const double want = 4.0 * std::sqrt(M_PI);  // (2/sqrt(pi)) * perimeter
    const double err = rel_err(fit.sqrt_coefficient, want);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    note = "fit " + fmt(fit.sqrt_coefficient) + " vs " + fmt(want) + " (rel " + fmt(err) + "), " +
           fmt(secs) + " s";
    require(err <= 0.03, "sqrt(t) coefficient off by " + fmt(err) + " > 3%");
    require(secs < 120.0, "runtime " + fmt(secs) + " s exceeds 2 min");
}

void c3_torsion_oracles(const Args&, std::string& note) {
    const auto disk = pde::torsion(pde::build_grid(Domain::disk(1.0), 1.0 / 256));
    const double disk_err = rel_err(disk.rigidity, M_PI / 8.0);
    require(disk_err <= 0.01, "disk P rel err " + fmt(disk_err) + " > 1%");

    const auto iv = pde::torsion(pde::build_grid(Domain::interval(1.0), 1.0 / 512));
    const double iv_err = rel_err(iv.rigidity, 1.0 / 12.0);
    require(iv_err <= 0.005, "interval P rel err " + fmt(iv_err) + " > 0.5%");

    const auto sq =
        pde::torsion(pde::build_grid(Domain::rectangle(std::vector<double>{1.0, 1.0}), 1.0 / 256));
    const double sq_err = rel_err(sq.rigidity, oracles::kSquareRigidity);
    require(sq_err <= 0.005, "square P rel err " + fmt(sq_err) + " > 0.5%");
    note = "rel errs disk " + fmt(disk_err) + ", interval " + fmt(iv_err) + ", square " + fmt(sq_err);
}

void c4_rigidity_heat_identity(const Args&, std::string& note) {
    const auto grid = pde::build_grid(Domain::rectangle(std::vector<double>{1.0, 1.0}), 1.0 / 32);
    const double lambda = 2.0 * M_PI * M_PI;
    const auto ts = geometric(1e-4, 20.0 / lambda, 80);
    const auto curve = pde::heat_content(*grid, ts);
    double integral = 0.5 * ts.front() * (curve.discrete_volume + curve.q.front());
    for (std::size_t i = 1; i < ts.size(); ++i) {
        integral += 0.5 * (ts[i] - ts[i - 1]) * (curve.q[i] + curve.q[i - 1]);
    }
    const double p = pde::torsion(grid).rigidity;
    const double err = rel_err(integral, p);
    note = "int Q dt = " + fmt(integral) + ", P = " + fmt(p) + " (rel " + fmt(err) + ")";
    require(err <= 0.02, "time-integrated Q vs P rel err " + fmt(err) + " > 2%");
}

runner::ExperimentConfig square_bounds_config() {
    runner::ExperimentConfig config;
    config.domain = Domain::rectangle(std::vector<double>{1.0, 1.0});
    config.h = 1.0 / 64;
    config.refine = 2;
    config.t_grid = {1e-3, 1.0, 20};
    config.betas = {1.0, 2.0, 4.0};
    return config;
}

void c5_decay_bounds(const Args&, std::string& note) {
    auto config = square_bounds_config();
    config.bound_ids = {BoundId::thm1, BoundId::cor3};
    const auto reports = runner::evaluate_bounds(config);
    require(reports.size() == 2 * 3 * 20, "unexpected report count");
    check_not_violated(reports, "thm1/cor3 on the unit square");
    int margin_rows = 0;
    for (const auto& r : reports) {
        if (r.verdict == Verdict::holds_within_margin) ++margin_rows;
    }
    note = "120 rows, " + std::to_string(margin_rows) + " within margin";
}

void c6_cooling_bounds(const Args&, std::string& note) {
    int rows = 0;
    for (const Domain& dom :
         {Domain::rectangle(std::vector<double>{1.0, 1.0}), Domain::disk(1.0)}) {
        auto config = square_bounds_config();
        config.domain = dom;
        config.bound_ids = {BoundId::thm2, BoundId::cor4};
        const auto reports = runner::evaluate_bounds(config);
        check_not_violated(reports, "thm2/cor4");
        rows += static_cast<int>(reports.size());
    }
    note = std::to_string(rows) + " rows, none violated";
}

void c7_torsion_bound(const Args&, std::string& note) {
    std::string details;
    for (const Domain& dom : {Domain::rectangle(std::vector<double>{1.0, 1.0}), Domain::disk(1.0),
                              Domain::horn(2.0, 40.0)}) {
        auto config = square_bounds_config();
        config.domain = dom;
        config.bound_ids = {BoundId::thm6};
        const auto reports = runner::evaluate_bounds(config);
        check_not_violated(reports, "thm6");
        details += " P=" + fmt(reports[0].lhs.value) + "<=" + fmt(reports[0].rhs.value);
    }
    note = "square/disk/horn(alpha=2):" + details;
}

void c8_spectral_gap_and_sup(const Args&, std::string& note) {
    auto config = square_bounds_config();
    config.bound_ids = {BoundId::eq72, BoundId::lem9};
    const auto sq_reports = runner::evaluate_bounds(config);
    check_not_violated(sq_reports, "eq72/lem9 on the square");

    config.domain = Domain::disk(1.0);
    config.bound_ids = {BoundId::eq72};
    const auto disk_reports = runner::evaluate_bounds(config);
    check_not_violated(disk_reports, "eq72 on the disk");
    note = "square lambda>=" + fmt(sq_reports[0].lhs.value) + ", disk threshold " +
           fmt(disk_reports[0].lhs.value);
}

void c9_trace_bound(const Args&, std::string& note) {
    const std::vector<double> ts{0.05, 0.1, 0.2};
    std::vector<double> all{0.025, 0.05, 0.1, 0.2};

    struct Level {
        std::vector<double> trace;
        pde::HeatContentCurve curve;
    };
    std::vector<Level> levels;
    for (double h : {1.0 / 32, 1.0 / 64}) {
        const auto grid = pde::build_grid(Domain::rectangle(std::vector<double>{1.0, 1.0}), h);
        require(grid->n_active() <= pde::kDenseSpectrumCap,
                "grid exceeds the dense spectrum cap");
        Level lv;
        const auto spectrum = pde::dirichlet_spectrum(*grid);
        for (double t : ts) lv.trace.push_back(pde::trace_from_spectrum(spectrum, t));
        lv.curve = pde::heat_content(*grid, all);
        levels.push_back(std::move(lv));
    }
    auto q_at = [&](const pde::HeatContentCurve& c, double t) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c.t[i] == t) return c.q[i];
        }
        throw Failure{"missing sample"};
        return 0.0;
    };
    std::string details;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double t = ts[i];
        const bounds::Uncertain trace{levels[1].trace[i],
                                      std::abs(levels[1].trace[i] - levels[0].trace[i])};
        const double qf = q_at(levels[1].curve, t / 2.0);
        const bounds::Uncertain qh{qf, std::abs(qf - q_at(levels[0].curve, t / 2.0))};
        const auto report = bounds::trace_bound_check(2, trace, qh, t);
        require(report.verdict != Verdict::violated,
                "cor7 violated at t=" + fmt(t) + ": " + fmt(report.lhs.value) + " > " +
                    fmt(report.rhs.value));
        details += " t=" + fmt(t) + ":" + fmt(report.lhs.value) + "<=" + fmt(report.rhs.value);
    }
    note = details;
}

void c10_horn_sharpness(const Args& args, std::string& note) {
    for (const char* name : {"horn_alpha_half.json", "horn_alpha_34.json"}) {
        const auto start = std::chrono::steady_clock::now();
        const auto config = runner::ExperimentConfig::from_file(args.configs / name);
        require(config.alphas.size() == 1, std::string(name) + ": expected one alpha");
        const double alpha = config.alphas[0];
        const auto domain = Domain::horn(alpha, config.horn_truncation);
        const auto grid = pde::build_grid(domain, config.h);
        const auto curve = pde::heat_content(*grid, config.t_grid.values());
        const auto window = config.fit_window.value_or(
            std::array<double, 2>{config.t_grid.t_min, config.t_grid.t_max});
        const auto fit = bounds::fit_decay_exponent(curve, window[0], window[1]);
        const double predicted = bounds::horn_predicted_exponent(alpha);
        const double gap = std::abs(fit.slope - predicted);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        note += std::string(name) + ": fit " + fmt(fit.slope) + " vs " + fmt(predicted) +
                " (gap " + fmt(gap) + ", " + fmt(secs) + " s) ";
        require(gap <= 0.08, std::string(name) + ": exponent gap " + fmt(gap) + " > 0.08");
        require(secs < 600.0, std::string(name) + ": runtime " + fmt(secs) + " s exceeds 10 min");
    }
}

void c11_property_suites(const Args&, std::string& note) {
    // rho >= delta on 1000 random interior points per kind.
    std::mt19937 rng(20260810);
    const std::vector<Domain> kinds = {
        Domain::interval(1.0),
        Domain::rectangle(std::vector<double>{2.0, 1.0}),
        Domain::disk(1.0),
        Domain::convex_polygon({{0, 0}, {2, 0}, {2.5, 1.0}, {1.0, 1.8}, {-0.5, 0.9}}),
        Domain::horn(1.0, 20.0),
    };
    for (const auto& dom : kinds) {
        const auto quad = SphereQuadrature::for_dimension(dom.dim);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        int found = 0;
        while (found < 1000) {
            geo::Point p{0, 0, 0};
            for (int k = 0; k < dom.dim; ++k) {
                p[k] = dom.bbox.lo[k] + unit(rng) * dom.bbox.edge(k);
            }
            if (!geo::inside(dom, p)) continue;
            ++found;
            const double delta = geo::boundary_distance(dom, p);
            const double rho = geo::mean_distance(dom, p, quad);
            require(delta > 0.0, "delta must be positive inside");
            require(rho >= delta * (1.0 - 1e-12),
                    "rho < delta at kind " + geo::to_string(dom.kind));
        }
    }

    // Discrete maximum principle at every implicit Euler step, Q monotone.
    const auto grid = pde::build_grid(Domain::rectangle(std::vector<double>{1.0, 1.0}), 1.0 / 32);
    pde::HeatOptions opts;
    bool in_range = true;
    opts.step_observer = [&in_range](double, const Eigen::VectorXd& u) {
        in_range = in_range && u.minCoeff() >= 0.0 && u.maxCoeff() <= 1.0;
    };
    const auto curve = pde::heat_content(*grid, geometric(1e-3, 0.5, 12), opts);
    require(in_range, "solution left [0,1] during implicit Euler stepping");
    for (std::size_t i = 1; i < curve.size(); ++i) {
        require(curve.q[i] <= curve.q[i - 1], "heat content increased between samples");
    }

    // Scaling laws at lambda in {0.5, 2}.
    const auto base = Domain::rectangle(std::vector<double>{2.0, 1.0});
    const auto quad2 = SphereQuadrature::circle(256);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double lam : {0.5, 2.0}) {
        const auto scaled = Domain::rectangle(std::vector<double>{2.0 * lam, 1.0 * lam});
        for (int i = 0; i < 100; ++i) {
            geo::Point p{2.0 * unit(rng), unit(rng), 0};
            if (!geo::inside(base, p)) continue;
            const geo::Point q{lam * p[0], lam * p[1], 0};
            require(rel_err(geo::boundary_distance(scaled, q),
                            lam * geo::boundary_distance(base, p)) < 1e-10,
                    "delta scaling law failed");
            require(rel_err(geo::mean_distance(scaled, q, quad2),
                            lam * geo::mean_distance(base, p, quad2)) < 1e-10,
                    "rho scaling law failed");
        }
        const double m0 = geo::moment_integral(base, FieldKind::delta, 1.0, 1.0 / 32);
        const double m1 = geo::moment_integral(scaled, FieldKind::delta, 1.0, lam / 32);
        require(rel_err(m1, std::pow(lam, 3.0) * m0) < 1e-12, "moment scaling law failed");
    }

    // Reduction identities: Eq. 17 coefficient and Eq. 18 threshold.
    for (int m : {2, 3}) {
        const bounds::HardyParameters p{2.0, m / 4.0, bounds::Provenance::rho_form};
        for (int i = 1; i <= 50; ++i) {
            const double beta = 4.0 * i / 50.0;
            const double got = bounds::decay_bound_rhs(p, beta, 1.0, 1.0);
            const double want =
                std::pow((beta + 2.0) * (beta + 2.0) / (M_E * beta * m), beta / 2.0);
            require(rel_err(got, want) <= 1e-12, "Eq. 17 reduction identity failed");
        }
        for (double t : {1e-3, 0.37, 2.0}) {
            const auto cb = bounds::cooling_bound_rhs(p, 1.0, [](double) { return 0.0; }, t);
            require(cb.threshold == std::sqrt(m * t / 2.0), "Eq. 18 threshold identity failed");
        }
    }
    note = "rho>=delta (5 kinds x 1000), max principle, monotonicity, scaling, reductions";
}

void c12_determinism(const Args& args, std::string& note) {
    const fs::path config = args.configs / "square_quick.json";
    const fs::path out_a = args.out / "det_a";
    const fs::path out_b = args.out / "det_b";
    fs::remove_all(out_a);
    fs::remove_all(out_b);

    for (const char* cmd : {"heat", "verify"}) {
        const std::string base = std::string(cmd) + " --config " + config.string() +
                                 " --seed 42 --out ";
        require(run_tool(args, base + out_a.string() + " >/dev/null") == 0,
                std::string("cli ") + cmd + " run failed");
        require(run_tool(args, base + out_b.string() + " >/dev/null") == 0,
                std::string("cli ") + cmd + " rerun failed");
    }
    for (const char* file : {"q_curve.csv", "bounds.csv", "bounds.json"}) {
        require(slurp(out_a / file) == slurp(out_b / file),
                std::string(file) + " differs between identical runs");
    }
    note = "heat + verify reruns byte-identical";
}

}  // namespace

int main(int argc, char** argv) {
    Args args;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--tool") args.tool = argv[i + 1];
        else if (flag == "--configs") args.configs = argv[i + 1];
        else if (flag == "--out") args.out = argv[i + 1];
    }
    if (args.tool.empty() || args.configs.empty() || args.out.empty()) {
        std::cerr << "usage: acceptance --tool <cli> --configs <dir> --out <dir>\n";
        return 2;
    }
    fs::create_directories(args.out);

    const std::vector<std::pair<std::string, CheckFn>> criteria = {
        {"C1 interval heat content vs eigenseries (1%, <10s)", c1_interval_oracle},
        {"C2 disk boundary coefficient 4*sqrt(pi) (3%, <2min)", c2_disk_boundary_coefficient},
        {"C3 torsion oracles: disk 1%, interval 0.5%, square 0.5%", c3_torsion_oracles},
        {"C4 rigidity equals time-integrated heat content (2%)", c4_rigidity_heat_identity},
        {"C5 decay bounds thm1/cor3 on the unit square", c5_decay_bounds},
        {"C6 cooling bounds thm2/cor4 on square and disk", c6_cooling_bounds},
        {"C7 torsion bound thm6 on square, disk, horn alpha=2", c7_torsion_bound},
        {"C8 spectral gap eq72 and sup bound lem9", c8_spectral_gap_and_sup},
        {"C9 trace bound cor7 at t in {0.05,0.1,0.2}", c9_trace_bound},
        {"C10 horn sharpness alpha in {1/2,3/4} (|gap|<=0.08, <10min)", c10_horn_sharpness},
        {"C11 property suites", c11_property_suites},
        {"C12 determinism: byte-identical CSVs", c12_determinism},
    };

    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string note;
        try {
            fn(args, note);
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            std::cout << "[PASS] " << name << " -- " << note << " [" << fmt(secs) << "s]\n";
        } catch (const Failure& f) {
            ++failures;
            std::cout << "[FAIL] " << name << " -- " << f.detail << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "[FAIL] " << name << " -- exception: " << e.what() << "\n";
        }
        std::cout.flush();
    }
    if (failures == 0) {
        std::cout << "acceptance: all " << criteria.size() << " criteria passed\n";
    } else {
        std::cout << "acceptance: " << failures << " criteria failed\n";
    }
    return failures == 0 ? 0 : 1;
}
