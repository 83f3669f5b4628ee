// ergokit -- batch front door over the workbench library.
//
// Exit codes: 0 ok, 1 mathematical check failed, 2 usage/validation,
// 3 budget exhausted. Reports are deterministic: insertion-ordered keys,
// floats at 17 significant digits, seeds and budgets always echoed.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "ergokit/entropy.hpp"
#include "ergokit/lambda.hpp"
#include "ergokit/measures.hpp"
#include "ergokit/pressure.hpp"
#include "ergokit/report.hpp"
#include "ergokit/space.hpp"
#include "ergokit/tracing.hpp"
#include "ergokit/verify.hpp"

using namespace ergokit;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw validation_error("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

int read_threads() {
    const char* env = std::getenv("ERGOKIT_THREADS");
    if (!env) return 1;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
        throw validation_error("ERGOKIT_THREADS must be a positive integer");
    return (int)v;
}

struct Emitter {
    std::string out_path;
    void emit(const std::string& text) const {
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw validation_error("cannot open output file: " + out_path);
            f << text;
        }
    }
    void emit_json(const json& j) const { emit(dump_deterministic(j)); }
};

json config_echo(const std::string& command, const json& inputs, uint64_t budget,
                 std::optional<uint64_t> seed = std::nullopt) {
    json c;
    c["command"] = command;
    c["inputs"] = inputs;
    c["budget"] = budget;
    if (seed) c["seed"] = *seed;
    c["threads"] = read_threads();
    return c;
}

ShiftSpace load_space(const std::string& path, uint64_t budget) {
    ShiftSpace s = ShiftSpace::from_json(read_json_file(path));
    s.set_budget(budget);
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ergokit: finite-scale workbench for symbolic systems"};
    app.require_subcommand(1);

    std::string space_path, out_path, format = "json", measure_path, other_path, phi_path;
    std::string task_path, z_str, method = "cylinder-shortcut", kind = "gluing", op = "entropy";
    std::string target_str, family = "bernoulli", suite = "all", word_str;
    int n = 0, n_max = 12, scale_m = 1, depth = 3, M = 10, K = 6, factor_len = 12;
    int m_cap = 8, exhaustive_len = 0, samples = 20, block_count = 3, horizon = 5, length = 100;
    double delta = 0.1, delta1 = 0.0, delta2 = 0.0, h0 = 0.3, beta0 = 0.15, eta0 = 0.4;
    double slack = 0.05;
    std::optional<double> p_lo, p_hi;
    uint64_t budget = 1ull << 24, node_budget = 1ull << 20, seed = kDefaultSeed;
    bool count_only = false, find_mode = false, want_words = false, spanning = false;
    bool brute = false;

    auto* c_lang = app.add_subcommand("language", "enumerate or count allowed words");
    c_lang->add_option("--space", space_path)->required();
    c_lang->add_option("--n", n)->required();
    c_lang->add_flag("--count-only", count_only);
    c_lang->add_option("--budget", budget);
    c_lang->add_option("--out", out_path);

    auto* c_ent = app.add_subcommand("entropy", "separated-count growth estimate");
    c_ent->add_option("--space", space_path)->required();
    c_ent->add_option("--n", n_max)->required();
    c_ent->add_option("--scale", scale_m);
    c_ent->add_option("--budget", budget);
    c_ent->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    c_ent->add_option("--out", out_path);

    auto* c_sep = app.add_subcommand("separated", "maximal separated set size");
    c_sep->add_option("--space", space_path)->required();
    c_sep->add_option("--n", n)->required();
    c_sep->add_option("--scale", scale_m);
    c_sep->add_flag("--brute", brute);
    c_sep->add_flag("--spanning", spanning);
    c_sep->add_option("--budget", budget);
    c_sep->add_option("--out", out_path);

    auto* c_q = app.add_subcommand("qbound", "dense-subset count and its entropy bound");
    c_q->add_option("--n", n)->required();
    c_q->add_option("--delta", delta)->required();
    c_q->add_option("--out", out_path);

    auto* c_trace = app.add_subcommand("trace", "verify or search an orbit-tracing task");
    c_trace->add_option("--space", space_path)->required();
    c_trace->add_option("--task", task_path)->required();
    c_trace->add_option("--scale", scale_m);
    c_trace->add_option("--z", z_str);
    c_trace->add_flag("--find", find_mode);
    c_trace->add_option("--node-budget", node_budget);
    c_trace->add_option("--budget", budget);
    c_trace->add_option("--out", out_path);

    auto* c_gap = app.add_subcommand("gap", "estimate the smallest workable gap constant");
    c_gap->add_option("--space", space_path)->required();
    c_gap->add_option("--scale", scale_m);
    c_gap->add_option("--kind", kind)->check(CLI::IsMember({"gluing", "block"}));
    c_gap->add_option("--delta1", delta1);
    c_gap->add_option("--delta2", delta2);
    c_gap->add_option("--m-cap", m_cap);
    c_gap->add_option("--exhaustive-len", exhaustive_len);
    c_gap->add_option("--samples", samples);
    c_gap->add_option("--block-count", block_count);
    c_gap->add_option("--seed", seed);
    c_gap->add_option("--node-budget", node_budget);
    c_gap->add_option("--budget", budget);
    c_gap->add_option("--out", out_path);

    auto* c_con = app.add_subcommand("construct", "separated-set family with audited bounds");
    c_con->add_option("--space", space_path)->required();
    c_con->add_option("--h0", h0)->required();
    c_con->add_option("--beta0", beta0)->required();
    c_con->add_option("--eta0", eta0)->required();
    c_con->add_option("--depth", depth)->required();
    c_con->add_option("--M", M);
    c_con->add_option("--K", K);
    c_con->add_option("--measure", measure_path);
    c_con->add_option("--factor-len", factor_len);
    c_con->add_flag("--words", want_words);
    c_con->add_option("--budget", budget);
    c_con->add_option("--out", out_path);

    auto* c_meas = app.add_subcommand("measure", "measure diagnostics");
    c_meas->add_option("--measure", measure_path)->required();
    c_meas->add_option("--op", op)
        ->check(CLI::IsMember({"entropy", "mass", "dist", "katok", "sample", "membership"}));
    c_meas->add_option("--word", word_str);
    c_meas->add_option("--other", other_path);
    c_meas->add_option("--space", space_path);
    c_meas->add_option("--n", n);
    c_meas->add_option("--scale", scale_m);
    c_meas->add_option("--delta", delta);
    c_meas->add_option("--length", length);
    c_meas->add_option("--horizon", horizon);
    c_meas->add_option("--seed", seed);
    c_meas->add_option("--budget", budget);
    c_meas->add_option("--out", out_path);

    auto* c_pres = app.add_subcommand("pressure", "separated-set pressure series");
    c_pres->add_option("--space", space_path)->required();
    c_pres->add_option("--phi", phi_path)->required();
    c_pres->add_option("--n", n_max)->required();
    c_pres->add_option("--scale", scale_m);
    c_pres->add_option("--measure", measure_path);
    c_pres->add_option("--slack", slack);
    c_pres->add_option("--budget", budget);
    c_pres->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    c_pres->add_option("--out", out_path);

    auto* c_spec = app.add_subcommand("spectrum", "solve a Bernoulli family for a target");
    c_spec->add_option("--target", target_str)->required();
    c_spec->add_option("--family", family);
    c_spec->add_option("--space", space_path);
    c_spec->add_option("--phi", phi_path);
    c_spec->add_option("--p-lo", [&p_lo](const std::vector<std::string>& v) {
        p_lo = std::stod(v[0]);
        return true;
    });
    c_spec->add_option("--p-hi", [&p_hi](const std::vector<std::string>& v) {
        p_hi = std::stod(v[0]);
        return true;
    });
    c_spec->add_option("--out", out_path);

    auto* c_ver = app.add_subcommand("verify", "run module invariant suites");
    c_ver->add_option("--suite", suite);
    c_ver->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Emitter emit{out_path};
    try {
        read_threads();  // validate early so every command rejects bad values

        if (*c_lang) {
            ShiftSpace s = load_space(space_path, budget);
            json rep;
            json in;
            in["space"] = space_path;
            in["n"] = n;
            rep["config"] = config_echo("language", in, budget);
            rep["space"] = s.describe();
            rep["n"] = n;
            rep["count"] = s.count(n);
            if (!count_only) {
                json ws = json::array();
                for (const Word& w : s.language(n)) ws.push_back(format_word(w));
                rep["words"] = ws;
            }
            emit.emit_json(rep);
            return 0;
        }

        if (*c_ent) {
            ShiftSpace s = load_space(space_path, budget);
            EntropyEstimate e = entropy_estimate(s, n_max, EpsScale(scale_m));
            if (format == "csv") {
                emit.emit(e.to_csv());
                return 0;
            }
            json rep;
            json in;
            in["space"] = space_path;
            in["n"] = n_max;
            in["scale"] = scale_m;
            rep["config"] = config_echo("entropy", in, budget);
            rep["estimate"] = e.to_json();
            emit.emit_json(rep);
            return 0;
        }

        if (*c_sep) {
            ShiftSpace s = load_space(space_path, budget);
            EpsScale sc(scale_m);
            SeparationReport r =
                separated_count(s, n, sc, brute ? "brute-force" : "cylinder-shortcut");
            json rep;
            json in;
            in["space"] = space_path;
            in["n"] = n;
            in["scale"] = scale_m;
            rep["config"] = config_echo("separated", in, budget);
            rep["separated"] = r.to_json();
            if (spanning) rep["spanning"] = spanning_count(s, n, sc);
            emit.emit_json(rep);
            return 0;
        }

        if (*c_q) {
            QBound q = q_count_and_bound(n, delta);
            json rep;
            json in;
            in["n"] = n;
            in["delta"] = delta;
            rep["config"] = config_echo("qbound", in, budget);
            rep["qbound"] = q.to_json();
            emit.emit_json(rep);
            return 0;
        }

        if (*c_trace) {
            ShiftSpace s = load_space(space_path, budget);
            OrbitTask task = OrbitTask::from_json(read_json_file(task_path));
            EpsScale sc(scale_m);
            json rep;
            json in;
            in["space"] = space_path;
            in["task"] = task_path;
            in["scale"] = scale_m;
            in["node_budget"] = node_budget;
            rep["config"] = config_echo("trace", in, budget);
            rep["task"] = task.to_json();
            if (find_mode) {
                auto z = find_tracer(s, task, sc, node_budget);
                rep["found"] = (bool)z;
                if (z) {
                    rep["z"] = format_word(*z);
                    rep["report"] = verify_trace(s, *z, task, sc).to_json();
                }
            } else {
                if (z_str.empty())
                    throw validation_error("trace needs --z WORD unless --find is given");
                rep["z"] = z_str;
                rep["report"] = verify_trace(s, parse_word(z_str), task, sc).to_json();
            }
            emit.emit_json(rep);
            return 0;
        }

        if (*c_gap) {
            ShiftSpace s = load_space(space_path, budget);
            GapProperty prop;
            if (kind == "block") {
                prop.kind = GapProperty::Block;
                if (!(delta1 > 0) || !(delta2 > 0))
                    throw validation_error("block kind needs --delta1 > 0 and --delta2 > 0");
                prop.delta1 = delta1;
                prop.delta2 = delta2;
            }
            GapSearchOptions gopts;
            gopts.M_cap = m_cap;
            gopts.exhaustive_len = exhaustive_len;
            gopts.samples = samples;
            gopts.block_count = block_count;
            gopts.seed = seed;
            gopts.node_budget = node_budget;
            GapEstimate g = estimate_gap(s, EpsScale(scale_m), prop, gopts);
            json rep;
            json in;
            in["space"] = space_path;
            in["scale"] = scale_m;
            in["kind"] = kind;
            rep["config"] = config_echo("gap", in, budget, seed);
            rep["estimate"] = g.to_json();
            emit.emit_json(rep);
            return 0;
        }

        if (*c_con) {
            ShiftSpace s = load_space(space_path, budget);
            MeasurePtr mu;
            if (measure_path.empty()) {
                std::vector<double> p((std::size_t)s.alphabet(), 1.0 / s.alphabet());
                mu = std::make_shared<MarkovMeasure>(MarkovMeasure::bernoulli(p));
            } else {
                mu = measure_from_json(read_json_file(measure_path));
            }
            json rep;
            json in;
            in["space"] = space_path;
            in["h0"] = h0;
            in["beta0"] = beta0;
            in["eta0"] = eta0;
            in["depth"] = depth;
            in["M"] = M;
            in["K"] = K;
            in["measure"] = measure_path.empty() ? "uniform" : measure_path;
            rep["config"] = config_echo("construct", in, budget);
            ConstructionParams params = derive_params(s, *mu, h0, beta0, eta0, M, K);
            rep["params"] = params.to_json();
            if (!params.feasible) {
                emit.emit_json(rep);
                return 1;
            }
            GammaSet gamma = build_gamma(s, *mu, params);
            LambdaApprox lam = lambda_language(s, params, gamma, depth);
            CountAudit audit = count_bounds_check(s, *mu, params, lam, factor_len);
            rep["family"] = lam.to_json(want_words);
            rep["audit"] = audit.to_json();
            emit.emit_json(rep);
            return audit.all_ok() ? 0 : 1;
        }

        if (*c_meas) {
            MeasurePtr mu = measure_from_json(read_json_file(measure_path));
            json rep;
            json in;
            in["measure"] = measure_path;
            in["op"] = op;
            rep["config"] = config_echo("measure", in, budget, seed);
            rep["measure"] = mu->describe();
            if (op == "entropy") {
                auto h = mu->entropy();
                rep["entropy"] = h ? json(*h) : json(nullptr);
            } else if (op == "mass") {
                if (word_str.empty()) throw validation_error("mass needs --word");
                rep["word"] = word_str;
                rep["mass"] = mu->mass(parse_word(word_str));
            } else if (op == "dist") {
                if (other_path.empty()) throw validation_error("dist needs --other");
                MeasurePtr nu = measure_from_json(read_json_file(other_path));
                rep["other"] = nu->describe();
                rep["distance"] = weak_metric(*mu, *nu);
            } else if (op == "katok") {
                if (space_path.empty() || n < 1)
                    throw validation_error("katok needs --space and --n");
                ShiftSpace s = load_space(space_path, budget);
                rep["katok"] =
                    katok_entropy_estimate(*mu, s, n, EpsScale(scale_m), delta).to_json();
            } else if (op == "sample") {
                auto mk = std::dynamic_pointer_cast<const MarkovMeasure>(mu);
                if (!mk) throw validation_error("sample needs a markov or bernoulli measure");
                rep["length"] = length;
                rep["word"] = format_word(mk->sample(length, seed));
            } else if (op == "membership") {
                if (word_str.empty() || other_path.empty())
                    throw validation_error("membership needs --word and --other");
                MeasurePtr ref = measure_from_json(read_json_file(other_path));
                rep["inside"] =
                    z_membership(parse_word(word_str), n, delta, *ref, horizon);
            }
            emit.emit_json(rep);
            return 0;
        }

        if (*c_pres) {
            ShiftSpace s = load_space(space_path, budget);
            PotentialSpec phi = PotentialSpec::from_json(read_json_file(phi_path));
            MeasurePtr mu;
            if (!measure_path.empty()) mu = measure_from_json(read_json_file(measure_path));
            PressureReport r =
                pressure_estimate(s, phi, n_max, EpsScale(scale_m), mu.get(), slack);
            if (format == "csv") {
                emit.emit(r.to_csv());
                return r.variational_ok ? 0 : 1;
            }
            json rep;
            json in;
            in["space"] = space_path;
            in["phi"] = phi_path;
            in["n"] = n_max;
            in["scale"] = scale_m;
            if (!measure_path.empty()) in["measure"] = measure_path;
            rep["config"] = config_echo("pressure", in, budget);
            rep["pressure"] = r.to_json();
            emit.emit_json(rep);
            return r.variational_ok ? 0 : 1;
        }

        if (*c_spec) {
            if (family != "bernoulli")
                throw validation_error("unsupported family: " + family);
            auto eq = target_str.find('=');
            if (eq == std::string::npos)
                throw validation_error("--target must look like kind=value");
            std::string kind_s = target_str.substr(0, eq);
            double value = std::stod(target_str.substr(eq + 1));
            SpectrumTarget tgt;
            if (kind_s == "entropy")
                tgt = SpectrumTarget::Entropy;
            else if (kind_s == "exponent")
                tgt = SpectrumTarget::Exponent;
            else if (kind_s == "pressure")
                tgt = SpectrumTarget::Pressure;
            else
                throw validation_error("unknown target kind: " + kind_s);
            ShiftSpace s = space_path.empty() ? ShiftSpace::full(2)
                                              : load_space(space_path, budget);
            std::optional<PotentialSpec> phi;
            if (!phi_path.empty()) phi = PotentialSpec::from_json(read_json_file(phi_path));
            SpectrumResult r =
                spectrum_solve(s, phi ? &*phi : nullptr, tgt, value, p_lo, p_hi);
            json rep;
            json in;
            in["target"] = target_str;
            in["family"] = family;
            if (!phi_path.empty()) in["phi"] = phi_path;
            rep["config"] = config_echo("spectrum", in, budget);
            rep["solution"] = r.to_json();
            emit.emit_json(rep);
            return 0;
        }

        if (*c_ver) {
            std::vector<std::string> names =
                suite == "all" ? suite_names() : std::vector<std::string>{suite};
            json rep;
            json in;
            in["suite"] = suite;
            rep["config"] = config_echo("verify", in, budget);
            json res = run_suites(names);
            rep["suites"] = res["suites"];
            rep["all_pass"] = res["all_pass"];
            emit.emit_json(rep);
            return res["all_pass"].get<bool>() ? 0 : 1;
        }
    } catch (const budget_error& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const validation_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
