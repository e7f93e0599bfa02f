#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "heatbounds/distance.hpp"
#include "heatbounds/domain.hpp"

namespace heatbounds::bounds {

/// A numeric value together with an absolute uncertainty, typically the
/// two-resolution Richardson margin |value(h) - value(h/2)| plus any horn
/// tail-volume contribution.
struct Uncertain {
    double value = 0;
    double err = 0;
};

enum class Provenance { convex, simply_connected_planar, rho_form };

std::string to_string(Provenance p);

/// Constants of the quadratic-form inequality -Delta >= c / f^gamma, with
/// f = delta (boundary distance) or f = rho (mean distance).
struct HardyParameters {
    double gamma = 2.0;
    double c = 0.0;
    Provenance provenance = Provenance::convex;
};

/// The three constant sources: convex domains (gamma=2, c=1/4), simply
/// connected planar domains (gamma=2, c=1/16), and the rho-form inequality
/// (gamma=2, c=m/4) valid for every open Euclidean set.
HardyParameters hardy_parameters(const geo::Domain& domain, geo::FieldKind mode);

/// Heat content decay bound:
/// RHS(t) = ((beta+gamma)^2 / (2 e beta gamma c))^(beta/gamma) * moment * t^(-beta/gamma).
/// Requires beta in (0, 2*gamma]. With rho-form parameters this reduces to
/// ((beta+2)^2/(e beta m))^(beta/2) * moment * t^(-beta/2).
double decay_bound_rhs(const HardyParameters& params, double beta, double moment, double t);

struct CoolingBound {
    double rhs = 0;        // vol - sublevel(threshold)/4
    double threshold = 0;  // (2 c t)^(1/gamma); (m t / 2)^(1/2) in rho form
};

/// Cooling bound: Q(t) <= vol - 1/4 * vol{ f < (2ct)^(1/gamma) }.
CoolingBound cooling_bound_rhs(const HardyParameters& params, double vol,
                               const std::function<double(double)>& sublevel, double t);

/// Torsional rigidity bound P <= (4/m) * int rho^2.
double torsion_bound_rhs(int m, double rho_moment2);

/// Sup bound for the torsion function: m >= 3 uses
/// (m/(4 pi (m-2))) * vol^(2/m); m = 2 uses sqrt((8/pi) * vol * int rho^2).
/// m = 1 is unsupported.
double sup_torsion_bound_rhs(int m, double vol_eps, std::optional<double> rho_moment2 = {});

enum class Verdict { holds, holds_within_margin, violated };

std::string to_string(Verdict v);

enum class BoundId {
    thm1,
    thm2,
    cor3,
    cor4,
    thm6,
    cor7,
    lem8,
    lem9,
    eq72,
    horn_exponent,
};

std::string to_string(BoundId id);
BoundId bound_id_from_string(const std::string& s);

/// One verified inequality, oriented as LHS <= RHS.
struct BoundReport {
    BoundId id = BoundId::thm1;
    Uncertain lhs;
    Uncertain rhs;
    Verdict verdict = Verdict::holds;
    std::map<std::string, double> inputs;  // echo of t, beta, h, ...
};

/// Verdict policy: holds when LHS <= RHS; violated only when
/// LHS - lhs.err > RHS + rhs.err; holds-within-margin in between.
BoundReport verify(BoundId id, Uncertain lhs, Uncertain rhs,
                   std::map<std::string, double> inputs = {});

/// Corollary-7 style check: trace(t) <= (4 pi t/2)^(-m/2) * Q(t/2).
BoundReport trace_bound_check(int m, Uncertain trace_at_t, Uncertain q_at_half_t, double t);

/// Spectral gap check (m = 2): lambda >= 1/2 * (int rho^2)^(-1), reported as
/// LHS = 0.5 / int rho^2 <= RHS = lambda.
BoundReport spectral_gap_check(Uncertain lambda, Uncertain rho_moment2);

void to_json(nlohmann::json& j, const BoundReport& report);

}  // namespace heatbounds::bounds
