// Acceptance gate: ten numbered criteria, one PASS/FAIL line each, with the
// wall-clock budget enforced per criterion. Exits nonzero when any line fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "ergokit/entropy.hpp"
#include "ergokit/lambda.hpp"
#include "ergokit/measures.hpp"
#include "ergokit/pressure.hpp"
#include "ergokit/tracing.hpp"

using namespace ergokit;

namespace {

std::string g_fixtures = "fixtures";
std::string g_cli;

ShiftSpace fixture_space(const std::string& name) {
    std::ifstream in(g_fixtures + "/" + name);
    if (!in) throw validation_error("cannot open fixture " + name);
    json j;
    in >> j;
    return ShiftSpace::from_json(j);
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Check {
    Outcome& out;
    void operator()(bool ok, const std::string& what) {
        if (!ok && out.pass) {
            out.pass = false;
            out.detail = what;
        }
    }
};

const double kLn2 = std::log(2.0);
const double kLnPhi = std::log((1.0 + std::sqrt(5.0)) / 2.0);
const double kE = std::exp(1.0);

// ---- criterion 1: entropy oracles -----------------------------------------
Outcome c1() {
    Outcome out;
    Check ck{out};
    EntropyEstimate full = entropy_estimate(fixture_space("full2.json"), 12, EpsScale(1));
    for (std::size_t i = 0; i < full.ln_over_n.size(); ++i)
        ck(std::abs(full.ln_over_n[i] - kLn2) <= 1e-14,
           "full-shift value off ln 2 at n=" + std::to_string(full.ns[i]));
    EntropyEstimate gold = entropy_estimate(fixture_space("golden.json"), 12, EpsScale(1));
    ck(std::abs(gold.slope - kLnPhi) < 0.02, "golden slope misses ln phi by >= 0.02");
    ck(gold.spectral.has_value() && std::abs(*gold.spectral - kLnPhi) <= 1e-10,
       "transfer-matrix reference misses ln phi");
    return out;
}

// ---- criterion 2: separated/spanning reduction -----------------------------
Outcome c2() {
    Outcome out;
    Check ck{out};
    for (const char* name : {"full2.json", "golden.json", "hereditary96.json"}) {
        ShiftSpace s = fixture_space(name);
        for (int m = 1; m <= 12; ++m)
            for (int n = 1; n + m - 1 <= 12; ++n) {
                EpsScale sc(m);
                uint64_t brute = brute_separated_max(s, n, sc);
                uint64_t lang = s.count(window_length(n, sc));
                ck(brute == lang, std::string(name) + " brute != |L| at n=" +
                                      std::to_string(n) + " m=" + std::to_string(m));
                ck(separated_count(s, n, sc).count == lang,
                   std::string(name) + " shortcut mismatch");
            }
    }
    return out;
}

// ---- criterion 3: dense-subset count bound ---------------------------------
Outcome c3() {
    Outcome out;
    Check ck{out};
    for (int n = 1; n <= 24; ++n)
        for (int d = 1; d <= 9; ++d) {
            double delta = 0.05 * d;
            QBound q = q_count_and_bound(n, delta);
            ck(q.lhs <= q.rhs, "bound violated at n=" + std::to_string(n));
            ck(q.gap() > 0, "gap not positive at n=" + std::to_string(n));
        }
    return out;
}

// ---- criterion 4: tracing --------------------------------------------------
Outcome c4() {
    Outcome out;
    Check ck{out};
    EpsScale one(1);
    GapSearchOptions opts;
    opts.exhaustive_len = 6;

    GapEstimate full = estimate_gap(fixture_space("full2.json"), one, GapProperty{}, opts);
    ck(full.found && full.M == 1, "full-shift gluing constant is not 1");
    GapEstimate gold = estimate_gap(fixture_space("golden.json"), one, GapProperty{}, opts);
    ck(gold.found && gold.M == 2, "golden gluing constant is not 2");

    // bounded-mark space: the all-zeros word traces any single block of
    // length 12 because L(13)*1 = 3 < 0.3*12
    ShiftSpace hered = fixture_space("hereditary96.json");
    ck(3 * 1 < 0.3 * 12, "mark-budget precondition fails");
    const auto& lang12 = hered.language(12);
    std::mt19937_64 rng(0xC4);
    Word zeros(12, 0);
    for (int t = 0; t < 100; ++t) {
        Word pt = lang12[draw_below(rng, lang12.size())];
        OrbitTask task = OrbitTask::block({pt}, 12, {0}, 0.2, 0.3);
        if (!verify_trace(hered, zeros, task, one).ok) {
            ck(false, "all-zeros tracer rejected for point " + format_word(pt));
            break;
        }
    }

    ShiftSpace uni = fixture_space("union97.json");
    auto cross = find_tracer_gluing(uni, {parse_word("1"), parse_word("2")}, {1, 1}, one, 8);
    ck(!cross.has_value(), "cross-component segments glued unexpectedly");
    GapSearchOptions uopts;
    uopts.exhaustive_len = 2;
    uopts.samples = 5;
    uopts.M_cap = 4;
    GapEstimate ug = estimate_gap(uni, one, GapProperty{}, uopts);
    ck(!ug.found && ug.witness.contains("points"), "union space produced no failure witness");
    return out;
}

// ---- criterion 5: product gap composition and two-stage tracing -------------
Outcome c5() {
    Outcome out;
    Check ck{out};
    std::vector<int> logtab;
    for (int n = 1; n <= 14; ++n) logtab.push_back((int)std::floor(1.0 + std::log((double)n)));
    GapFunction L = GapFunction::from_table(logtab);
    GapFunction C = compose_tempered_gap(L, L);
    for (int n = 1; n <= C.horizon(); ++n)
        ck(C.at(n) == L.at(L.at(n)) + L.at(n) + L.at(n) - 1,
           "composition formula broken at n=" + std::to_string(n));
    GapFunction c1t = GapFunction::from_table(std::vector<int>(12, 1));
    GapFunction c2t = GapFunction::from_table(std::vector<int>(12, 2));
    GapFunction cc = compose_tempered_gap(c1t, c2t);
    for (int n = 1; n <= cc.horizon(); ++n)
        ck(cc.at(n) == 1 + 2 + 1 - 1, "constant-table composition wrong");

    ShiftSpace prod = fixture_space("product_full_golden.json");
    ShiftSpace gold = fixture_space("golden.json");
    const auto& glang = gold.language(12);
    std::mt19937_64 rng(0xC5);
    const int n = 10;
    const double d1 = 0.3, d2 = 0.4, d1p = 0.1, d2p = 0.3;  // (1.1)^2 < 1.3, 0.33 < 0.4
    for (int t = 0; t < 50; ++t) {
        std::vector<Word> pts;
        for (int k = 0; k < 2; ++k) {
            Word y = glang[draw_below(rng, glang.size())];
            Word p(12);
            for (int i = 0; i < 12; ++i)
                p[i] = (Symbol)(2 * (int)draw_below(rng, 2) + y[i]);
            pts.push_back(p);
        }
        auto res = product_two_stage_tracer(prod, pts, n, d1, d2, d1p, d2p, EpsScale(1));
        if (!res) {
            ck(false, "two-stage tracer failed on task " + std::to_string(t));
            break;
        }
        OrbitTask task = OrbitTask::block(pts, n, res->starts, d1, d2);
        if (!verify_trace(prod, res->z, task, EpsScale(1)).ok) {
            ck(false, "two-stage tracer failed verification on task " + std::to_string(t));
            break;
        }
    }
    return out;
}

// ---- criterion 6: measures -------------------------------------------------
Outcome c6() {
    Outcome out;
    Check ck{out};
    for (double p : {0.1, 0.25, 0.5, 0.73, 0.9})
        ck(std::abs(markov_entropy(bernoulli2(p)) - binary_entropy(p)) <= 1e-10,
           "Bernoulli entropy closed form misses");
    MarkovMeasure parry = MarkovMeasure::parry({{1, 1}, {1, 0}});
    ck(std::abs(markov_entropy(parry) - kLnPhi) <= 1e-10, "Parry entropy misses ln phi");

    ShiftSpace full = fixture_space("full2.json");
    MarkovMeasure half = MarkovMeasure::bernoulli({0.5, 0.5});
    MarkovMeasure b11 = MarkovMeasure::bernoulli({0.89, 0.11});
    double h11 = binary_entropy(0.11);
    for (double delta : {0.1, 0.2}) {
        double vhalf = katok_entropy_estimate(half, full, 14, EpsScale(1), delta).value;
        ck(std::abs(vhalf - kLn2) <= 0.08, "Katok estimate off for the fair coin");
        double v11 = katok_entropy_estimate(b11, full, 14, EpsScale(1), delta).value;
        ck(std::abs(v11 - h11) <= 0.08, "Katok estimate off for Bernoulli(0.11)");
    }

    std::mt19937_64 rng(0xC6);
    auto unit = [&rng]() { return (double)(rng() >> 11) * 0x1.0p-53; };
    auto rand_measure = [&]() -> MeasurePtr {
        if (rng() & 1) {
            double p = 0.05 + 0.9 * unit();
            return std::make_shared<MarkovMeasure>(MarkovMeasure::bernoulli({1.0 - p, p}));
        }
        double a = 0.05 + 0.9 * unit(), b = 0.05 + 0.9 * unit();
        return std::make_shared<MarkovMeasure>(
            MarkovMeasure(std::vector<std::vector<double>>{{1.0 - a, a}, {b, 1.0 - b}}));
    };
    for (int t = 0; t < 100; ++t) {
        MeasurePtr m1 = rand_measure(), m2 = rand_measure();
        MeasurePtr n1 = rand_measure(), n2 = rand_measure();
        double s = unit();
        MixtureMeasure mm({m1, m2}, {s, 1.0 - s});
        MixtureMeasure nn({n1, n2}, {s, 1.0 - s});
        double lhs = weak_metric(mm, nn);
        double rhs = s * weak_metric(*m1, *n1) + (1.0 - s) * weak_metric(*m2, *n2);
        ck(lhs <= rhs + 1e-12, "metric convexity violated");
    }

    // trapped-orbit bound: members of the depth-60 trap around the coin keep
    // every longer empirical average within delta + N D*/n
    const int N = 200, H = 60;
    const double delta = 0.25, Dstar = metric_diameter(2);
    for (uint64_t seed : {11ull, 12ull, 13ull}) {
        Word x = half.sample(N + H + kDefaultDepth - 1, seed);
        if (!z_membership(x, N, delta, half, H)) {
            ck(false, "sampled word left the trap (seed " + std::to_string(seed) + ")");
            continue;
        }
        for (int n = N; n <= N + H; ++n) {
            EmpiricalMeasure e(x, n, kDefaultDepth, 2);
            ck(weak_metric(e, half) < delta + N * Dstar / n,
               "trap bound violated at n=" + std::to_string(n));
        }
    }
    return out;
}

// ---- criterion 7: audited construction -------------------------------------
Outcome c7() {
    Outcome out;
    Check ck{out};
    ShiftSpace full = fixture_space("full2.json");
    MarkovMeasure half = MarkovMeasure::bernoulli({0.5, 0.5});
    ConstructionParams p = derive_params(full, half, 0.3, 0.15, 0.4, 10);
    bool ledger = p.feasible;
    for (const auto& r : p.rows)
        if (r.gated && !r.pass) ledger = false;
    ck(ledger, "parameter ledger violated: " + p.first_violation);  // (a)

    GammaSet g = build_gamma(full, half, p);
    ck(g.words.size() == 21, "core set size is not 21");  // (b)
    ck((double)g.words.size() >= std::exp(3.0) - 1.0 + 1e-9 &&
           (double)g.words.size() >= std::ceil(std::exp(3.0)) - 0.5,
       "core set below e^3");
    ck((double)g.words.size() < std::exp(10.0 * (0.3 + p.beta)), "core set breaches e^{M(h0+beta)}");

    LambdaApprox lam = lambda_language(full, p, g, 3);
    CountAudit a = count_bounds_check(full, half, p, lam, 12);
    ck(a.upper_ok && a.lower_ok && a.separation_ok, "count bounds failed");  // (c)
    ck(a.window_ok, "entropy window violated");                              // (d)
    ck(a.empirical_ok, "a factor empirical measure strays past 3 eta");      // (e)
    ck(a.factor_gap_ok && a.factor_count < a.ambient_count,
       "length-12 factor count not below the ambient language");             // (f)
    std::ostringstream margin;
    margin << "slack " << a.slack_lower << "/" << a.slack_upper << ", window ("
           << a.window_lo << ", " << a.window_hi << "), rates " << a.rate_lower << "/"
           << a.rate_upper << ", worst D " << a.worst_empirical_distance << ", factors "
           << a.factor_count << "/" << a.ambient_count;
    if (out.pass) out.detail = margin.str();
    return out;
}

// ---- criterion 8: pressure -------------------------------------------------
Outcome c8() {
    Outcome out;
    Check ck{out};
    ShiftSpace full = fixture_space("full2.json");
    PotentialSpec phi = PotentialSpec::indicator(parse_word("1"), 1.0);
    double want = std::log(1.0 + kE);
    PressureReport rep = pressure_estimate(full, phi, 14, EpsScale(1));
    for (std::size_t i = 0; i < rep.ln_over_n.size(); ++i)
        ck(std::abs(rep.ln_over_n[i] - want) <= 1e-12,
           "pressure identity off at n=" + std::to_string(rep.ns[i]));

    double pstar = kE / (1.0 + kE);
    ck(std::abs(measure_pressure(bernoulli2(pstar), phi) - want) <= 1e-10,
       "equilibrium pressure misses ln(1+e)");

    std::mt19937_64 rng(0xC8);
    auto unit = [&rng]() { return (double)(rng() >> 11) * 0x1.0p-53; };
    for (int t = 0; t < 20; ++t) {
        double a = 0.05 + 0.9 * unit(), b = 0.05 + 0.9 * unit();
        MarkovMeasure mu(std::vector<std::vector<double>>{{1.0 - a, a}, {b, 1.0 - b}});
        ck(measure_pressure(mu, phi) <= want + 1e-9, "variational inequality violated");
    }
    return out;
}

// ---- criterion 9: spectra --------------------------------------------------
Outcome c9() {
    Outcome out;
    Check ck{out};
    ShiftSpace full = fixture_space("full2.json");
    PotentialSpec phi = PotentialSpec::indicator(parse_word("1"), 1.0);

    for (int i = 0; i < 20; ++i) {
        double h = kLn2 * i / 20.0;
        SpectrumResult r = spectrum_solve(full, nullptr, SpectrumTarget::Entropy, h, 1e-15, 0.5);
        ck(std::abs(r.achieved - h) <= 1e-10, "entropy target missed at h=" + std::to_string(h));
    }
    for (int i = 0; i < 20; ++i) {
        double a = (double)i / 19.0;
        SpectrumResult r = spectrum_solve(full, &phi, SpectrumTarget::Exponent, a, 1e-15,
                                          1.0 - 1e-12);
        ck(std::abs(r.achieved - a) <= 1e-10, "exponent target missed at a=" + std::to_string(a));
    }
    double top = std::log(1.0 + kE);
    for (int j = 1; j <= 20; ++j) {
        double alpha = top * j / 20.0;
        SpectrumResult r = spectrum_solve(full, &phi, SpectrumTarget::Pressure, alpha,
                                          std::nullopt, kE / (1.0 + kE));
        ck(std::abs(r.achieved - alpha) <= 1e-10,
           "pressure target missed at alpha=" + std::to_string(alpha));
    }
    PinfProbe probe = pinf_probe(phi);
    ck(probe.ok && probe.gap <= 1e-3, "boundary pressure gap exceeds 1e-3");
    return out;
}

// ---- criterion 10: determinism ---------------------------------------------
Outcome c10() {
    Outcome out;
    Check ck{out};
    if (g_cli.empty()) {
        ck(false, "no --cli path given");
        return out;
    }
    auto run = [&](std::string& text) -> int {
        std::string cmd = g_cli + " verify --suite all 2>/dev/null";
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe) return -1;
        char buf[4096];
        std::size_t got;
        while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, got);
        int rc = pclose(pipe);
        return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    };
    std::string first, second;
    int rc1 = run(first);
    int rc2 = run(second);
    ck(rc1 == 0, "first verify run exited " + std::to_string(rc1));
    ck(rc2 == 0, "second verify run exited " + std::to_string(rc2));
    ck(!first.empty() && first == second, "verify reports are not byte-identical");
    return out;
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0 = no enforced budget
    std::function<Outcome()> fn;
};

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string flag = argv[i];
        if (flag == "--fixtures")
            g_fixtures = argv[i + 1];
        else if (flag == "--cli")
            g_cli = argv[i + 1];
        else {
            std::cerr << "unknown flag " << flag << "\n";
            return 2;
        }
    }

    std::vector<Criterion> cs{
        {1, "entropy-oracles", 5, c1},       {2, "separated-reduction", 60, c2},
        {3, "subset-count-bound", 1, c3},    {4, "orbit-tracing", 120, c4},
        {5, "product-composition", 60, c5},  {6, "measures", 60, c6},
        {7, "audited-construction", 600, c7},{8, "pressure", 30, c8},
        {9, "spectra", 10, c9},              {10, "determinism", 0, c10},
    };

    int failed = 0;
    for (auto& c : cs) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.fn();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (out.pass && c.budget_s > 0 && secs >= c.budget_s) {
            out.pass = false;
            out.detail = "runtime budget exceeded";
        }
        std::printf("criterion %2d %-22s %s (%.2fs)%s%s\n", c.id, c.name,
                    out.pass ? "PASS" : "FAIL", secs, out.detail.empty() ? "" : " -- ",
                    out.detail.c_str());
        std::fflush(stdout);
        if (!out.pass) ++failed;
    }
    if (failed) {
        std::printf("acceptance: %d of %zu criteria failed\n", failed, cs.size());
        return 1;
    }
    std::printf("acceptance: all %zu criteria passed\n", cs.size());
    return 0;
}
