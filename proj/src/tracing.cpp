#include "ergokit/tracing.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ergokit {

namespace {

// Strict upper bounds with a guard for exact-integer boundary values.
// Largest integer < bound.
int strict_below(double bound) {
    double r = std::round(bound);
    if (std::fabs(bound - r) < 1e-9) return (int)r - 1;
    return (int)std::floor(bound);
}

int max_mismatches_allowed(double delta2, int n) { return strict_below(delta2 * n); }

}  // namespace

OrbitTask OrbitTask::exact(std::vector<Word> points, std::vector<int> lengths,
                           std::vector<int> gaps) {
    OrbitTask t;
    t.mode = TraceMode::Exact;
    t.points = std::move(points);
    t.lengths = std::move(lengths);
    t.gaps = std::move(gaps);
    if (t.points.empty() || t.points.size() != t.lengths.size())
        throw validation_error("task needs matching points and lengths");
    if (t.gaps.size() + 1 < t.points.size())
        throw validation_error("task needs at least one gap per junction");
    for (int m : t.lengths)
        if (m < 1) throw validation_error("segment lengths must be >= 1");
    for (size_t i = 0; i + 1 < t.points.size(); ++i)
        if (t.gaps[i] < 1) throw validation_error("gaps must be >= 1");
    return t;
}

OrbitTask OrbitTask::block(std::vector<Word> points, int n, std::vector<int> starts, double delta1,
                           double delta2) {
    OrbitTask t;
    t.mode = TraceMode::Block;
    t.points = std::move(points);
    t.n = n;
    t.starts = std::move(starts);
    t.delta1 = delta1;
    t.delta2 = delta2;
    if (t.points.empty()) throw validation_error("task needs points");
    if (n < 1) throw validation_error("block length must be >= 1");
    if (!(delta1 > 0 && delta2 > 0)) throw validation_error("delta1, delta2 must be > 0");
    if (!t.starts.empty()) {
        if (t.starts.size() != t.points.size())
            throw validation_error("start times must match points");
        if (t.starts[0] != 0) throw validation_error("start times must begin at 0");
        for (size_t k = 0; k + 1 < t.starts.size(); ++k) {
            int inc = t.starts[k + 1] - t.starts[k];
            if (inc < n || inc > strict_below((double)n * (1.0 + delta1)))
                throw validation_error("start times violate the spaced condition");
        }
    }
    return t;
}

OrbitTask OrbitTask::from_json(const json& desc) {
    std::vector<Word> points;
    for (const auto& p : desc.at("points")) points.push_back(parse_word(p.get<std::string>()));
    if (desc.contains("lengths")) {
        auto lengths = desc.at("lengths").get<std::vector<int>>();
        auto gaps = desc.contains("gaps") ? desc.at("gaps").get<std::vector<int>>()
                                          : std::vector<int>{};
        return exact(std::move(points), std::move(lengths), std::move(gaps));
    }
    if (desc.contains("delta1")) {
        auto starts = desc.contains("starts") ? desc.at("starts").get<std::vector<int>>()
                                              : std::vector<int>{};
        return block(std::move(points), desc.at("n").get<int>(), std::move(starts),
                     desc.at("delta1").get<double>(), desc.at("delta2").get<double>());
    }
    throw validation_error("task needs either lengths/gaps or n/delta1/delta2");
}

json OrbitTask::to_json() const {
    json pts = json::array();
    for (const Word& p : points) pts.push_back(format_word(p));
    if (mode == TraceMode::Exact)
        return json{{"points", pts}, {"lengths", lengths}, {"gaps", gaps}};
    json j{{"points", pts}, {"n", n}, {"delta1", delta1}, {"delta2", delta2}};
    if (!starts.empty()) j["starts"] = starts;
    return j;
}

std::vector<int> start_times(const std::vector<int>& lengths, const std::vector<int>& gaps) {
    if (lengths.empty()) throw validation_error("start times need at least one segment");
    if (gaps.size() + 1 < lengths.size())
        throw validation_error("start times need a gap per junction");
    std::vector<int> s(lengths.size());
    s[0] = 0;
    for (size_t k = 1; k < lengths.size(); ++k)
        s[k] = s[k - 1] + lengths[k - 1] + gaps[k - 1] - 1;
    return s;
}

int trace_length(const OrbitTask& task, const EpsScale& scale) {
    if (task.mode == TraceMode::Exact) {
        auto s = start_times(task.lengths, task.gaps);
        return s.back() + task.lengths.back() + scale.m - 1;
    }
    if (task.starts.empty())
        throw validation_error("block task without start times has no fixed length");
    return task.starts.back() + task.n + scale.m - 1;
}

namespace {

bool window_differs(const Word& z, int zpos, const Word& x, int xpos, int m) {
    for (int i = 0; i < m; ++i)
        if (z[zpos + i] != x[xpos + i]) return true;
    return false;
}

}  // namespace

TraceReport verify_trace(const ShiftSpace& space, const Word& z, const OrbitTask& task,
                         const EpsScale& scale) {
    int m = scale.m;
    TraceReport rep;
    if (!space.allowed(z)) throw validation_error("tracer word is not in the language");
    if (task.mode == TraceMode::Exact) {
        auto s = start_times(task.lengths, task.gaps);
        for (size_t k = 0; k < task.points.size(); ++k)
            if ((int)task.points[k].size() < task.lengths[k] + m - 1)
                throw validation_error("point too short for its segment length plus margin");
        if ((int)z.size() < s.back() + task.lengths.back() + m - 1)
            throw validation_error("tracer word too short for the task");
        rep.ok = true;
        for (size_t k = 0; k < task.points.size(); ++k)
            for (int j = 0; j < task.lengths[k]; ++j)
                if (window_differs(z, s[k] + j, task.points[k], j, m)) {
                    rep.ok = false;
                    rep.mismatches.emplace_back((int)k, j);
                }
        return rep;
    }
    // Block mode.
    if (task.starts.empty()) throw validation_error("block verification needs start times");
    OrbitTask::block(task.points, task.n, task.starts, task.delta1, task.delta2);  // revalidate
    for (const Word& p : task.points)
        if ((int)p.size() < task.n + m - 1)
            throw validation_error("point too short for the block length plus margin");
    if ((int)z.size() < task.starts.back() + task.n + m - 1)
        throw validation_error("tracer word too short for the task");
    int allowed = max_mismatches_allowed(task.delta2, task.n);
    rep.ok = true;
    for (size_t k = 0; k < task.points.size(); ++k) {
        int cnt = 0;
        std::vector<std::pair<int, int>> local;
        for (int j = 0; j < task.n; ++j)
            if (window_differs(z, task.starts[k] + j, task.points[k], j, m)) {
                ++cnt;
                local.emplace_back((int)k, j);
            }
        rep.per_block.push_back(cnt);
        if (cnt > allowed) {
            rep.ok = false;
            rep.mismatches.insert(rep.mismatches.end(), local.begin(), local.end());
        }
    }
    return rep;
}

json TraceReport::to_json() const {
    json mm = json::array();
    for (auto [k, j] : mismatches) mm.push_back(json::array({k, j}));
    json j{{"ok", ok}, {"mismatches", mm}};
    if (!per_block.empty()) j["per_block"] = per_block;
    return j;
}

namespace {

struct DfsState {
    const ShiftSpace& space;
    uint64_t nodes = 0;
    uint64_t budget;
    DfsState(const ShiftSpace& s, uint64_t b) : space(s), budget(b) {}
    void tick() {
        if (++nodes > budget) throw budget_error("tracer search exceeded its node budget");
    }
};

// DFS for a word of the given length matching fixed coordinates; -1 = free.
bool dfs_exact(DfsState& st, Word& z, const std::vector<int>& fixed, size_t pos) {
    if (pos == fixed.size()) return true;
    for (int a = 0; a < st.space.alphabet(); ++a) {
        if (fixed[pos] >= 0 && a != fixed[pos]) continue;
        st.tick();
        z.push_back((Symbol)a);
        if (st.space.allowed(z) && dfs_exact(st, z, fixed, pos + 1)) return true;
        z.pop_back();
    }
    return false;
}

std::optional<Word> solve_exact(const ShiftSpace& space, const OrbitTask& task,
                                const EpsScale& scale, uint64_t node_budget) {
    int m = scale.m;
    auto s = start_times(task.lengths, task.gaps);
    int L = s.back() + task.lengths.back() + m - 1;
    std::vector<int> fixed(L, -1);
    for (size_t k = 0; k < task.points.size(); ++k) {
        const Word& x = task.points[k];
        if ((int)x.size() < task.lengths[k] + m - 1)
            throw validation_error("point too short for its segment length plus margin");
        for (int t = 0; t < task.lengths[k] + m - 1; ++t) {
            int want = x[t];
            int& slot = fixed[s[k] + t];
            if (slot >= 0 && slot != want) return std::nullopt;  // overlapping contradiction
            slot = want;
        }
    }
    DfsState st(space, node_budget);
    Word z;
    z.reserve(L);
    if (dfs_exact(st, z, fixed, 0)) return z;
    return std::nullopt;
}

// Block-mode DFS: mismatch windows [t_k+j, t_k+j+m) are checked as soon as
// their last coordinate is assigned; block budgets prune the search.
struct BlockSearch {
    const ShiftSpace& space;
    const std::vector<Word>& points;
    int n, m, allowed;
    const std::vector<int>& starts;
    int L;
    std::vector<std::vector<std::pair<int, int>>> ending_at;  // pos -> (block, j)
    std::vector<int> count;
    DfsState st;

    BlockSearch(const ShiftSpace& sp, const std::vector<Word>& pts, int n_, int m_, int allowed_,
                const std::vector<int>& starts_, uint64_t budget)
        : space(sp), points(pts), n(n_), m(m_), allowed(allowed_), starts(starts_),
          L(starts_.back() + n_ + m_ - 1), ending_at(L), count(pts.size(), 0), st(sp, budget) {
        for (size_t k = 0; k < points.size(); ++k)
            for (int j = 0; j < n; ++j) ending_at[starts[k] + j + m - 1].emplace_back((int)k, j);
    }

    bool dfs(Word& z, int pos) {
        if (pos == L) return true;
        for (int a = 0; a < space.alphabet(); ++a) {
            st.tick();
            z.push_back((Symbol)a);
            if (!space.allowed(z)) {
                z.pop_back();
                continue;
            }
            std::vector<int> bumped;
            bool over = false;
            for (auto [k, j] : ending_at[pos]) {
                if (window_differs(z, starts[k] + j, points[k], j, m)) {
                    bumped.push_back(k);
                    if (++count[k] > allowed) {
                        over = true;
                        break;
                    }
                }
            }
            if (!over && dfs(z, pos + 1)) return true;
            for (int k : bumped) --count[k];
            z.pop_back();
        }
        return false;
    }
};

std::optional<std::pair<Word, std::vector<int>>> solve_block(const ShiftSpace& space,
                                                             const OrbitTask& task,
                                                             const EpsScale& scale,
                                                             uint64_t node_budget) {
    int m = scale.m;
    for (const Word& p : task.points)
        if ((int)p.size() < task.n + m - 1)
            throw validation_error("point too short for the block length plus margin");
    int allowed = max_mismatches_allowed(task.delta2, task.n);
    if (allowed < 0) return std::nullopt;  // delta2*n <= 0 mismatches permitted but >= 0 needed

    auto attempt = [&](const std::vector<int>& starts)
        -> std::optional<std::pair<Word, std::vector<int>>> {
        BlockSearch bs(space, task.points, task.n, m, allowed, starts, node_budget);
        Word z;
        z.reserve(bs.L);
        if (bs.dfs(z, 0)) return std::make_pair(z, starts);
        return std::nullopt;
    };

    if (!task.starts.empty()) return attempt(task.starts);

    // Search spaced start times: increments in [n, n(1+delta1)), minimal
    // first so the lexicographically earliest layout wins.
    int K = (int)task.points.size();
    int inc_max = strict_below((double)task.n * (1.0 + task.delta1));
    if (inc_max < task.n) return std::nullopt;
    std::vector<int> incs(std::max(0, K - 1), task.n);
    for (;;) {
        std::vector<int> starts(K, 0);
        for (int k = 1; k < K; ++k) starts[k] = starts[k - 1] + incs[k - 1];
        if (auto got = attempt(starts)) return got;
        int i = K - 2;
        while (i >= 0 && incs[i] == inc_max) incs[i--] = task.n;
        if (i < 0) return std::nullopt;
        ++incs[i];
    }
}

}  // namespace

std::optional<Word> find_tracer(const ShiftSpace& space, const OrbitTask& task,
                                const EpsScale& scale, uint64_t node_budget) {
    if (task.mode == TraceMode::Exact) return solve_exact(space, task, scale, node_budget);
    auto got = solve_block(space, task, scale, node_budget);
    if (!got) return std::nullopt;
    return got->first;
}

std::optional<Word> find_tracer_gluing(const ShiftSpace& space, const std::vector<Word>& points,
                                       const std::vector<int>& lengths, const EpsScale& scale,
                                       int max_gap, std::vector<int>* gaps_out,
                                       uint64_t node_budget) {
    if (max_gap < 1) throw validation_error("max gap must be >= 1");
    int K = (int)points.size();
    std::vector<int> gaps(std::max(0, K - 1), 1);
    for (;;) {
        auto task = OrbitTask::exact(points, lengths, gaps.empty() ? std::vector<int>{1} : gaps);
        if (auto z = solve_exact(space, task, scale, node_budget)) {
            if (gaps_out) *gaps_out = gaps;
            return z;
        }
        int i = K - 2;
        while (i >= 0 && gaps[i] == max_gap) gaps[i--] = 1;
        if (i < 0) return std::nullopt;
        ++gaps[i];
    }
}

namespace {

Word sample_word(const ShiftSpace& space, int len, std::mt19937_64& rng) {
    const auto& lang = space.language(len);
    if (lang.empty()) throw validation_error("cannot sample from an empty language");
    return lang[draw_below(rng, lang.size())];
}

struct Probe {
    std::vector<Word> points;
    std::vector<int> lengths;  // gluing
    int n = 0;                 // block
};

}  // namespace

GapEstimate estimate_gap(const ShiftSpace& space, const EpsScale& scale, const GapProperty& prop,
                         const GapSearchOptions& opts) {
    GapEstimate est;
    est.probes = json{{"seed", opts.seed},
                      {"samples", opts.samples},
                      {"M_cap", opts.M_cap},
                      {"exhaustive_len", opts.exhaustive_len}};
    json first_fail;

    auto gluing_probes = [&]() {
        std::vector<Probe> probes;
        for (int l1 = 1; l1 <= opts.exhaustive_len; ++l1)
            for (int l2 = 1; l2 <= opts.exhaustive_len; ++l2)
                for (const Word& u : space.language(l1 + scale.m - 1))
                    for (const Word& v : space.language(l2 + scale.m - 1))
                        probes.push_back(Probe{{u, v}, {l1, l2}, 0});
        std::mt19937_64 rng(opts.seed);
        for (int s = 0; s < opts.samples; ++s) {
            int segs = 2 + (int)draw_below(rng, opts.max_segments - 1);
            Probe p;
            for (int k = 0; k < segs; ++k) {
                int len = 1 + (int)draw_below(rng, opts.max_seg_len);
                p.lengths.push_back(len);
                p.points.push_back(sample_word(space, len + scale.m - 1, rng));
            }
            probes.push_back(std::move(p));
        }
        return probes;
    };

    auto block_probes = [&](int n) {
        std::vector<Probe> probes;
        // Adversarial deterministic probe: densest (lexicographically last)
        // word repeated.
        const auto& lang = space.language(n + scale.m - 1);
        Probe adv;
        adv.n = n;
        for (int k = 0; k < opts.block_count; ++k) adv.points.push_back(lang.back());
        probes.push_back(std::move(adv));
        std::mt19937_64 rng(opts.seed ^ (uint64_t)n);
        for (int s = 0; s < opts.samples; ++s) {
            Probe p;
            p.n = n;
            for (int k = 0; k < opts.block_count; ++k)
                p.points.push_back(sample_word(space, n + scale.m - 1, rng));
            probes.push_back(std::move(p));
        }
        return probes;
    };

    auto probe_to_json = [&](const Probe& p) {
        json pts = json::array();
        for (const Word& w : p.points) pts.push_back(format_word(w));
        json j{{"points", pts}};
        if (p.n) j["n"] = p.n;
        else j["lengths"] = p.lengths;
        return j;
    };

    if (prop.kind == GapProperty::Gluing) {
        auto probes = gluing_probes();
        for (int M = 1; M <= opts.M_cap; ++M) {
            bool all_ok = true;
            for (const Probe& p : probes) {
                bool ok;
                try {
                    ok = find_tracer_gluing(space, p.points, p.lengths, scale, M, nullptr,
                                            opts.node_budget)
                             .has_value();
                } catch (const budget_error&) {
                    ok = false;
                }
                if (!ok) {
                    all_ok = false;
                    first_fail = probe_to_json(p);
                    first_fail["M"] = M;
                    break;
                }
            }
            if (all_ok) {
                est.found = true;
                est.M = M;
                est.witness = first_fail;  // what ruled out M-1 (empty if M == 1)
                return est;
            }
        }
        est.found = false;
        est.witness = first_fail;
        return est;
    }

    // Block property: smallest M whose following block lengths all admit
    // tracers on the probes.
    for (int M = 1; M <= opts.M_cap; ++M) {
        bool all_ok = true;
        for (int n = M + 1; n <= M + 2 && all_ok; ++n) {
            for (const Probe& p : block_probes(n)) {
                auto task = OrbitTask::block(p.points, n, {}, prop.delta1, prop.delta2);
                bool ok;
                try {
                    ok = find_tracer(space, task, scale, opts.node_budget).has_value();
                } catch (const budget_error&) {
                    ok = false;
                }
                if (!ok) {
                    all_ok = false;
                    first_fail = probe_to_json(p);
                    first_fail["M"] = M;
                    break;
                }
            }
        }
        if (all_ok) {
            est.found = true;
            est.M = M;
            est.witness = first_fail;
            return est;
        }
    }
    est.found = false;
    est.witness = first_fail;
    return est;
}

json GapEstimate::to_json() const {
    return json{{"found", found}, {"M", M}, {"witness", witness}, {"probes", probes}};
}

int GapFunction::at(int n) const {
    if (n < 1 || n > horizon())
        throw validation_error("gap table has no entry for n = " + std::to_string(n));
    return table[n - 1];
}

GapFunction GapFunction::from_table(std::vector<int> table, double threshold) {
    if (table.empty()) throw validation_error("gap table must be nonempty");
    GapFunction g;
    g.table = std::move(table);
    g.threshold = threshold;
    for (int i = 0; i < g.horizon(); ++i) {
        if (g.table[i] < 1) throw validation_error("gap values must be >= 1");
        if (i && g.table[i] < g.table[i - 1])
            throw validation_error("gap table must be nondecreasing");
    }
    // Largest suffix on which L(n)/n is nonincreasing.
    int from = g.horizon();
    for (int n = g.horizon() - 1; n >= 1; --n) {
        double here = (double)g.table[n - 1] / n;
        double next = (double)g.table[n] / (n + 1);
        if (here + 1e-15 < next) break;
        from = n;
    }
    g.monotone_from = from;
    double tail = (double)g.table.back() / g.horizon();
    g.tempered = from < g.horizon() && tail < threshold;
    return g;
}

json GapFunction::to_json() const {
    return json{{"table", table},
                {"tempered", tempered},
                {"monotone_from", monotone_from},
                {"threshold", threshold},
                {"horizon", horizon()}};
}

GapFunction compose_tempered_gap(const GapFunction& LX, const GapFunction& LY) {
    int H = 0;
    for (int n = 1; n <= std::min(LX.horizon(), LY.horizon()); ++n) {
        if (LY.at(n) > LX.horizon()) break;
        H = n;
    }
    if (H == 0) throw validation_error("gap tables too short to compose");
    std::vector<int> table(H);
    for (int n = 1; n <= H; ++n) table[n - 1] = LX.at(LY.at(n)) + LY.at(n) + LX.at(n) - 1;
    GapFunction g = GapFunction::from_table(std::move(table), std::max(LX.threshold, LY.threshold));
    g.tempered = LX.tempered && LY.tempered;
    return g;
}

std::optional<ProductTraceResult> product_two_stage_tracer(const ShiftSpace& product,
                                                           const std::vector<Word>& points, int n,
                                                           double delta1, double delta2,
                                                           double delta1p, double delta2p,
                                                           const EpsScale& scale,
                                                           uint64_t node_budget) {
    if (product.backend() != Backend::Product)
        throw validation_error("two-stage tracing needs a product space");
    if (!((1.0 + delta1p) * (1.0 + delta1p) < 1.0 + delta1))
        throw validation_error("stage parameters need (1+delta1')^2 < 1+delta1");
    if (!(delta2p * (1.0 + delta1p) < delta2))
        throw validation_error("stage parameters need delta2'(1+delta1') < delta2");
    const ShiftSpace& X = product.component(0);
    const ShiftSpace& Y = product.component(1);
    int AY = Y.alphabet();
    int m = scale.m;
    int np = (int)std::floor((1.0 + delta1p) * n + 1e-9);

    std::vector<Word> xs, ys;
    for (const Word& p : points) {
        if ((int)p.size() < np + m - 1)
            throw validation_error("product points must cover the inflated stage length");
        Word x(p.size()), y(p.size());
        for (size_t i = 0; i < p.size(); ++i) {
            x[i] = (Symbol)(p[i] / AY);
            y[i] = (Symbol)(p[i] % AY);
        }
        xs.push_back(std::move(x));
        ys.push_back(std::move(y));
    }
    int K = (int)points.size();
    int allowed = max_mismatches_allowed(delta2p, np);
    if (allowed < 0) return std::nullopt;

    int inc_max = strict_below((double)np * (1.0 + delta1p));
    if (inc_max < np) return std::nullopt;
    std::vector<int> incs(std::max(0, K - 1), np);
    for (;;) {
        std::vector<int> starts(K, 0);
        for (int k = 1; k < K; ++k) starts[k] = starts[k - 1] + incs[k - 1];
        // Stage one: block-trace the X parts at the inflated block length.
        auto stage1 = [&]() -> std::optional<Word> {
            BlockSearch bs(X, xs, np, m, allowed, starts, node_budget);
            Word z;
            z.reserve(bs.L);
            if (bs.dfs(z, 0)) return z;
            return std::nullopt;
        }();
        if (stage1) {
            // Stage two: exact-trace the Y parts through the same offsets.
            bool gaps_ok = true;
            std::vector<int> gaps;
            for (int k = 0; k + 1 < K; ++k) {
                int t = starts[k + 1] - starts[k] - (n - 1);
                if (t < 1) gaps_ok = false;
                gaps.push_back(t);
            }
            if (gaps_ok) {
                auto ytask = OrbitTask::exact(ys, std::vector<int>(K, n),
                                              gaps.empty() ? std::vector<int>{1} : gaps);
                if (auto zy = solve_exact(Y, ytask, scale, node_budget)) {
                    int L = starts.back() + n + m - 1;
                    Word z(L);
                    for (int i = 0; i < L; ++i)
                        z[i] = (Symbol)((*stage1)[i] * AY + (*zy)[i]);
                    return ProductTraceResult{std::move(z), std::move(starts)};
                }
            }
        }
        int i = K - 2;
        while (i >= 0 && incs[i] == inc_max) incs[i--] = np;
        if (i < 0) return std::nullopt;
        ++incs[i];
    }
}

}  // namespace ergokit
