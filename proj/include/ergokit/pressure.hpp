#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ergokit/entropy.hpp"
#include "ergokit/measures.hpp"
#include "ergokit/space.hpp"

namespace ergokit {

// Locally constant additive potential: a total table on the allowed words of
// length r.  An optional error sequence eps_n >= 0 turns every report value
// v into the interval [v - eps_n/n, v + eps_n/n].
struct PotentialSpec {
    int r = 1;
    std::map<Word, double> table;
    std::vector<double> eps_n;  // empty = exactly additive

    double phi(const Word& w, std::size_t at) const;  // value on w[at..at+r)
    double phi_n(const Word& w, int n) const;         // needs |w| >= n+r-1
    double max_abs() const;
    void validate(const ShiftSpace& space) const;  // table total on L_r

    static PotentialSpec indicator(const Word& pattern, double c = 1.0);
    static PotentialSpec constant(double c, int alphabet);
    static PotentialSpec from_json(const json& j);
    json to_json() const;
};

struct PressureReport {
    int n_max = 0;
    int m = 1;
    std::vector<int> ns;
    std::vector<double> ln_over_n;  // (1/n) ln sum e^{phi_n}
    std::vector<double> lo, hi;     // interval when eps_n present, else = value
    double at_n_max = 0.0;
    std::optional<double> closed_form;   // full shift with r = 1
    std::optional<double> measure_side;  // h_mu + lyapunov when a measure is given
    bool variational_ok = true;          // measure_side <= at_n_max + slack
    json to_json() const;
    std::string to_csv() const;
};

// Exact expectation of phi under the depth-r cylinder weights.
double lyapunov(const CylinderMeasure& mu, const PotentialSpec& phi);

// h_mu + chi_phi(mu); requires a measure with computable entropy.
double measure_pressure(const CylinderMeasure& mu, const PotentialSpec& phi);

// Separated-set pressure on cylinder representatives; requires m >= r so
// phi_n is constant on (n+m-1)-cylinders.
PressureReport pressure_estimate(const ShiftSpace& space, const PotentialSpec& phi, int n_max,
                                 const EpsScale& scale,
                                 const CylinderMeasure* mu = nullptr,
                                 double variational_slack = 0.05);

enum class SpectrumTarget { Entropy, Exponent, Pressure };

struct SpectrumResult {
    SpectrumTarget target;
    double target_value = 0.0;
    double achieved = 0.0;
    double p = 0.0;  // Bernoulli parameter
    double range_lo = 0.0, range_hi = 0.0;
    json to_json() const;
};

// Bisection over the two-symbol Bernoulli(p) family on (p_lo, p_hi]; the
// objective is the exact closed form (binary entropy / lyapunov / their sum).
// Family bounds may be omitted: entropy and exponent default to (0, 1/2],
// pressure scans for the family maximizer first.  Targets outside the
// attained range raise validation_error reporting the range.
SpectrumResult spectrum_solve(const ShiftSpace& space, const PotentialSpec* phi,
                              SpectrumTarget target, double value,
                              std::optional<double> p_lo = std::nullopt,
                              std::optional<double> p_hi = std::nullopt);

// Bernoulli(p) measure over a two-symbol alphabet as a MarkovMeasure.
MarkovMeasure bernoulli2(double p);

// Desk form of the "P_inf equals the minimal exponent" boundary statement:
// scan boundary-approaching parameters, report the family infimum, the
// minimizing p, and the gap to the fixed-point minimum of phi.
struct PinfProbe {
    double family_inf = 0.0;
    double p_at = 0.0;
    double chi_min = 0.0;
    double gap = 0.0;
    bool ok = false;  // gap <= 1e-3 with p within 1e-3 of the boundary
    json to_json() const;
};
PinfProbe pinf_probe(const PotentialSpec& phi);

// Lipschitz envelope of lyapunov with respect to weak_metric at depth >= r.
double lyapunov_lipschitz(const PotentialSpec& phi, int alphabet);

}  // namespace ergokit
