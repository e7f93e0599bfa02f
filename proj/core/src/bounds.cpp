#include "heatbounds/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace heatbounds::bounds {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::convex: return "convex";
        case Provenance::simply_connected_planar: return "simply-connected-planar";
        case Provenance::rho_form: return "rho-form";
    }
    throw std::logic_error("unreachable provenance");
}

HardyParameters hardy_parameters(const geo::Domain& domain, geo::FieldKind mode) {
    if (mode == geo::FieldKind::rho) {
        return {2.0, static_cast<double>(domain.dim) / 4.0, Provenance::rho_form};
    }
    if (domain.is_convex) {
        return {2.0, 0.25, Provenance::convex};
    }
    if (domain.dim == 2 && domain.is_simply_connected) {
        return {2.0, 1.0 / 16.0, Provenance::simply_connected_planar};
    }
    throw std::invalid_argument(
        "no delta-form Hardy constant known: domain is neither convex nor simply connected planar");
}

double decay_bound_rhs(const HardyParameters& params, double beta, double moment, double t) {
    if (!(params.c > 0.0) || !(params.gamma > 0.0 && params.gamma <= 2.0)) {
        throw std::invalid_argument("Hardy parameters require c > 0 and gamma in (0,2]");
    }
    if (!(beta > 0.0 && beta <= 2.0 * params.gamma)) {
        throw std::invalid_argument("decay bound hypothesis needs beta in (0, 2*gamma]");
    }
    if (!(moment >= 0.0) || std::isinf(moment)) {
        throw std::invalid_argument("decay bound needs a finite moment integral");
    }
    if (!(t > 0.0)) throw std::invalid_argument("decay bound needs t > 0");
    const double g = params.gamma;
    const double coeff =
        std::pow((beta + g) * (beta + g) / (2.0 * M_E * beta * g * params.c), beta / g);
    return coeff * moment * std::pow(t, -beta / g);
}

CoolingBound cooling_bound_rhs(const HardyParameters& params, double vol,
                               const std::function<double(double)>& sublevel, double t) {
    if (!(vol >= 0.0) || std::isinf(vol)) {
        throw std::invalid_argument("cooling bound needs a finite volume");
    }
    if (!(t > 0.0)) throw std::invalid_argument("cooling bound needs t > 0");
    CoolingBound out;
    out.threshold = std::pow(2.0 * params.c * t, 1.0 / params.gamma);
    out.rhs = vol - 0.25 * sublevel(out.threshold);
    return out;
}

double torsion_bound_rhs(int m, double rho_moment2) {
    if (!(rho_moment2 >= 0.0) || std::isinf(rho_moment2)) {
        throw std::invalid_argument("torsion bound needs a finite rho second moment");
    }
    return 4.0 / static_cast<double>(m) * rho_moment2;
}

double sup_torsion_bound_rhs(int m, double vol_eps, std::optional<double> rho_moment2) {
    if (!(vol_eps >= 0.0) || std::isinf(vol_eps)) {
        throw std::invalid_argument("sup torsion bound needs a finite volume");
    }
    if (m >= 3) {
        return static_cast<double>(m) / (4.0 * M_PI * (m - 2)) * std::pow(vol_eps, 2.0 / m);
    }
    if (m == 2) {
        if (!rho_moment2) {
            throw std::invalid_argument("sup torsion bound in the plane needs int rho^2");
        }
        return std::sqrt(8.0 / M_PI * vol_eps * *rho_moment2);
    }
    throw std::invalid_argument("sup torsion bound is unsupported for m = 1");
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::holds_within_margin: return "holds-within-margin";
        case Verdict::violated: return "violated";
    }
    throw std::logic_error("unreachable verdict");
}

std::string to_string(BoundId id) {
    switch (id) {
        case BoundId::thm1: return "thm1";
        case BoundId::thm2: return "thm2";
        case BoundId::cor3: return "cor3";
        case BoundId::cor4: return "cor4";
        case BoundId::thm6: return "thm6";
        case BoundId::cor7: return "cor7";
        case BoundId::lem8: return "lem8";
        case BoundId::lem9: return "lem9";
        case BoundId::eq72: return "eq72";
        case BoundId::horn_exponent: return "horn-exponent";
    }
    throw std::logic_error("unreachable bound id");
}

BoundId bound_id_from_string(const std::string& s) {
    for (BoundId id : {BoundId::thm1, BoundId::thm2, BoundId::cor3, BoundId::cor4, BoundId::thm6,
                       BoundId::cor7, BoundId::lem8, BoundId::lem9, BoundId::eq72,
                       BoundId::horn_exponent}) {
        if (to_string(id) == s) return id;
    }
    throw std::invalid_argument("unknown bound id: " + s);
}

BoundReport verify(BoundId id, Uncertain lhs, Uncertain rhs, std::map<std::string, double> inputs) {
    if (lhs.err < 0.0 || rhs.err < 0.0) {
        throw std::invalid_argument("uncertainties must be nonnegative");
    }
    BoundReport report;
    report.id = id;
    report.lhs = lhs;
    report.rhs = rhs;
    report.inputs = std::move(inputs);
    if (lhs.value <= rhs.value) {
        report.verdict = Verdict::holds;
    } else if (lhs.value - lhs.err <= rhs.value + rhs.err) {
        report.verdict = Verdict::holds_within_margin;
    } else {
        report.verdict = Verdict::violated;
    }
    return report;
}

BoundReport trace_bound_check(int m, Uncertain trace_at_t, Uncertain q_at_half_t, double t) {
    if (!(t > 0.0) || !(trace_at_t.value > 0.0) || !(q_at_half_t.value > 0.0)) {
        throw std::invalid_argument("trace bound needs positive inputs");
    }
    const double g_half = std::pow(4.0 * M_PI * (t / 2.0), -0.5 * m);
    Uncertain rhs{g_half * q_at_half_t.value, g_half * q_at_half_t.err};
    return verify(BoundId::cor7, trace_at_t, rhs,
                  {{"t", t}, {"m", static_cast<double>(m)}, {"q_half_t", q_at_half_t.value}});
}

BoundReport spectral_gap_check(Uncertain lambda, Uncertain rho_moment2) {
    if (!(lambda.value > 0.0) || !(rho_moment2.value > 0.0)) {
        throw std::invalid_argument("spectral gap check needs positive inputs");
    }
    Uncertain threshold{0.5 / rho_moment2.value,
                        0.5 * rho_moment2.err / (rho_moment2.value * rho_moment2.value)};
    return verify(BoundId::eq72, threshold, lambda,
                  {{"rho_moment2", rho_moment2.value}, {"lambda", lambda.value}});
}

void to_json(nlohmann::json& j, const BoundReport& report) {
    j = nlohmann::json{
        {"id", to_string(report.id)},
        {"lhs", report.lhs.value},
        {"lhs_err", report.lhs.err},
        {"rhs", report.rhs.value},
        {"rhs_err", report.rhs.err},
        {"verdict", to_string(report.verdict)},
        {"inputs", report.inputs},
    };
}

}  // namespace heatbounds::bounds
