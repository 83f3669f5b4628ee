#include "ergokit/pressure.hpp"

#include <algorithm>
#include <cmath>

#include "ergokit/lambda.hpp"

namespace ergokit {

double PotentialSpec::phi(const Word& w, std::size_t at) const {
    if (at + r > w.size()) throw validation_error("potential window exceeds word length");
    Word key(w.begin() + at, w.begin() + at + r);
    auto it = table.find(key);
    return it == table.end() ? 0.0 : it->second;  // sparse tables extend by zero
}

double PotentialSpec::phi_n(const Word& w, int n) const {
    if ((int)w.size() < n + r - 1) throw validation_error("word too short for the n-block sum");
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += phi(w, k);
    return s;
}

double PotentialSpec::max_abs() const {
    double m = 0.0;
    for (const auto& [w, v] : table) m = std::max(m, std::abs(v));
    return m;
}

void PotentialSpec::validate(const ShiftSpace& space) const {
    if (r < 1) throw validation_error("potential range must be >= 1");
    for (const auto& [w, v] : table) {
        (void)v;
        if ((int)w.size() != r) throw validation_error("potential table key has wrong length");
        if (!space.allowed(w))
            throw validation_error("potential table key is not in the language");
    }
    for (double e : eps_n)
        if (e < 0.0) throw validation_error("error bounds must be nonnegative");
}

PotentialSpec PotentialSpec::indicator(const Word& pattern, double c) {
    if (pattern.empty()) throw validation_error("indicator pattern must be nonempty");
    PotentialSpec p;
    p.r = (int)pattern.size();
    p.table[pattern] = c;
    return p;
}

PotentialSpec PotentialSpec::constant(double c, int alphabet) {
    if (alphabet < 1) throw validation_error("alphabet must be positive");
    PotentialSpec p;
    p.r = 1;
    for (int a = 0; a < alphabet; ++a)
        p.table.emplace_hint(p.table.end(), Word(1, (Symbol)a), c);
    return p;
}

PotentialSpec PotentialSpec::from_json(const json& j) {
    if (!j.is_object()) throw validation_error("potential spec must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() != "r" && it.key() != "table" && it.key() != "eps")
            throw validation_error("unknown potential key: " + it.key());
    }
    PotentialSpec p;
    if (!j.contains("r") || !j.contains("table"))
        throw validation_error("potential spec needs keys 'r' and 'table'");
    p.r = j.at("r").get<int>();
    if (p.r < 1) throw validation_error("potential range must be >= 1");
    for (auto it = j.at("table").begin(); it != j.at("table").end(); ++it) {
        Word w = parse_word(it.key());
        if ((int)w.size() != p.r) throw validation_error("potential table key has wrong length");
        p.table[w] = it.value().get<double>();
    }
    if (j.contains("eps")) {
        for (const auto& e : j.at("eps")) p.eps_n.push_back(e.get<double>());
        for (double e : p.eps_n)
            if (e < 0.0) throw validation_error("error bounds must be nonnegative");
    }
    return p;
}

json PotentialSpec::to_json() const {
    json j;
    j["r"] = r;
    json t = json::object();
    for (const auto& [w, v] : table) t[format_word(w)] = v;
    j["table"] = t;
    if (!eps_n.empty()) j["eps"] = eps_n;
    return j;
}

json PressureReport::to_json() const {
    json j;
    j["n_max"] = n_max;
    j["m"] = m;
    j["n"] = ns;
    j["ln_over_n"] = ln_over_n;
    j["lo"] = lo;
    j["hi"] = hi;
    j["at_n_max"] = at_n_max;
    if (closed_form) j["closed_form"] = *closed_form;
    if (measure_side) {
        j["measure_side"] = *measure_side;
        j["variational_ok"] = variational_ok;
    }
    return j;
}

std::string PressureReport::to_csv() const {
    std::string s = "n,ln_over_n,lo,hi\n";
    char buf[128];
    for (std::size_t i = 0; i < ns.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", ns[i], ln_over_n[i], lo[i],
                      hi[i]);
        s += buf;
    }
    return s;
}

namespace {

template <typename F>
void for_each_word(int alphabet, int len, F&& f) {
    Word w(len, 0);
    while (true) {
        f(w);
        int i = len - 1;
        while (i >= 0 && w[i] == alphabet - 1) w[i--] = 0;
        if (i < 0) break;
        ++w[i];
    }
}

}  // namespace

double lyapunov(const CylinderMeasure& mu, const PotentialSpec& phi) {
    double s = 0.0;
    for_each_word(mu.alphabet(), phi.r, [&](const Word& w) {
        double mass = mu.mass(w);
        if (mass > 0.0) s += mass * phi.phi(w, 0);
    });
    return s;
}

double measure_pressure(const CylinderMeasure& mu, const PotentialSpec& phi) {
    auto h = mu.entropy();
    if (!h) throw validation_error("measure entropy unavailable");
    return *h + lyapunov(mu, phi);
}

PressureReport pressure_estimate(const ShiftSpace& space, const PotentialSpec& phi, int n_max,
                                 const EpsScale& scale, const CylinderMeasure* mu,
                                 double variational_slack) {
    if (n_max < 1) throw validation_error("n_max must be >= 1");
    if (scale.m < phi.r)
        throw validation_error(
            "block sums are not constant on cylinders at this scale: need m >= r");
    phi.validate(space);
    PressureReport rep;
    rep.n_max = n_max;
    rep.m = scale.m;
    for (int n = 1; n <= n_max; ++n) {
        int len = window_length(n, scale);
        long double P = 0.0L;
        for (const Word& w : space.language(len)) P += std::exp((long double)phi.phi_n(w, n));
        double v = (double)(std::log(P) / n);
        rep.ns.push_back(n);
        rep.ln_over_n.push_back(v);
        double e = 0.0;
        if (!phi.eps_n.empty()) {
            if ((int)phi.eps_n.size() < n_max)
                throw validation_error("error-bound sequence shorter than n_max");
            e = phi.eps_n[n - 1] / n;
        }
        rep.lo.push_back(v - e);
        rep.hi.push_back(v + e);
    }
    rep.at_n_max = rep.ln_over_n.back();
    if (space.backend() == Backend::Full && phi.r == 1) {
        long double Z = 0.0L;
        for (int a = 0; a < space.alphabet(); ++a)
            Z += std::exp((long double)phi.phi(Word{(Symbol)a}, 0));
        rep.closed_form = (double)std::log(Z);
    }
    if (mu) {
        rep.measure_side = measure_pressure(*mu, phi);
        rep.variational_ok = *rep.measure_side <= rep.hi.back() + variational_slack;
    }
    return rep;
}

json SpectrumResult::to_json() const {
    json j;
    switch (target) {
        case SpectrumTarget::Entropy: j["target"] = "entropy"; break;
        case SpectrumTarget::Exponent: j["target"] = "exponent"; break;
        case SpectrumTarget::Pressure: j["target"] = "pressure"; break;
    }
    j["target_value"] = target_value;
    j["achieved"] = achieved;
    j["p"] = p;
    j["range_lo"] = range_lo;
    j["range_hi"] = range_hi;
    json m;
    m["kind"] = "bernoulli";
    m["p"] = json::array({1.0 - p, p});
    j["measure"] = m;
    return j;
}

MarkovMeasure bernoulli2(double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw validation_error("Bernoulli parameter must be in (0,1)");
    std::vector<std::vector<double>> P{{1.0 - p, p}, {1.0 - p, p}};
    return MarkovMeasure(P);
}

SpectrumResult spectrum_solve(const ShiftSpace& space, const PotentialSpec* phi,
                              SpectrumTarget target, double value, std::optional<double> p_lo,
                              std::optional<double> p_hi) {
    if (space.alphabet() != 2)
        throw validation_error("the Bernoulli solve family needs a two-symbol alphabet");
    if ((target == SpectrumTarget::Exponent || target == SpectrumTarget::Pressure) && !phi)
        throw validation_error("exponent and pressure targets need a potential");
    auto objective = [&](double p) -> double {
        MarkovMeasure mu = bernoulli2(p);
        switch (target) {
            case SpectrumTarget::Entropy: return markov_entropy(mu);
            case SpectrumTarget::Exponent: return lyapunov(mu, *phi);
            case SpectrumTarget::Pressure: return measure_pressure(mu, *phi);
        }
        return 0.0;
    };

    double lo = p_lo.value_or(1e-12);
    double hi;
    if (p_hi) {
        hi = *p_hi;
    } else if (target == SpectrumTarget::Pressure) {
        // bracket ends at the family maximizer so the objective is monotone
        hi = 0.5;
        double best = -1e300;
        for (int k = 1; k <= 4096; ++k) {
            double p = k / 4097.0;
            double v = objective(p);
            if (v > best) {
                best = v;
                hi = p;
            }
        }
    } else {
        hi = 0.5;
    }
    if (!(lo > 0.0) || !(hi < 1.0) || !(lo < hi))
        throw validation_error("family bracket must satisfy 0 < p_lo < p_hi < 1");

    double f_lo = objective(lo), f_hi = objective(hi);
    SpectrumResult res;
    res.target = target;
    res.target_value = value;
    res.range_lo = std::min(f_lo, f_hi);
    res.range_hi = std::max(f_lo, f_hi);
    if (value < res.range_lo - 1e-12 || value > res.range_hi + 1e-12) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "target %.17g outside the attained range [%.17g, %.17g]", value,
                      res.range_lo, res.range_hi);
        throw validation_error(buf);
    }
    bool increasing = f_hi >= f_lo;
    double a = lo, b = hi;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        double v = objective(mid);
        if ((v < value) == increasing)
            a = mid;
        else
            b = mid;
    }
    res.p = 0.5 * (a + b);
    res.achieved = objective(res.p);
    if (std::abs(res.achieved - value) > 1e-9)
        throw validation_error(
            "bisection did not attain the target; the family objective may be non-monotone on "
            "the given bracket");
    return res;
}

json PinfProbe::to_json() const {
    json j;
    j["family_inf"] = family_inf;
    j["p_at"] = p_at;
    j["chi_min"] = chi_min;
    j["gap"] = gap;
    j["ok"] = ok;
    return j;
}

PinfProbe pinf_probe(const PotentialSpec& phi) {
    PinfProbe pr;
    pr.chi_min = 1e300;
    for (int a = 0; a < 2; ++a) {
        Word w((std::size_t)phi.r, (Symbol)a);
        pr.chi_min = std::min(pr.chi_min, phi.phi(w, 0));
    }
    pr.family_inf = 1e300;
    for (int k = 1; k <= 9; ++k) {
        for (double p : {std::pow(10.0, -k), 1.0 - std::pow(10.0, -k)}) {
            double v = measure_pressure(bernoulli2(p), phi);
            if (v < pr.family_inf) {
                pr.family_inf = v;
                pr.p_at = p;
            }
        }
    }
    pr.gap = pr.family_inf - pr.chi_min;
    pr.ok = pr.gap <= 1e-3 && std::min(pr.p_at, 1.0 - pr.p_at) <= 1e-3;
    return pr;
}

double lyapunov_lipschitz(const PotentialSpec& phi, int alphabet) {
    return phi.max_abs() * std::ldexp(1.0, phi.r) * std::pow((double)alphabet, phi.r);
}

}  // namespace ergokit
