// tracing.hpp -- orbit tracing: exact gapped matching, block matching with a
// per-block mismatch budget, tracer search, gap-constant estimation, and gap
// composition for products.
//
// Conventions: exact mode requires d <= eps at every shifted coordinate,
// which at scale m means agreement on a window of m symbols; start offsets
// are s_1 = 0, s_k = sum_{i<k} (m_i + t_i - 1) with gaps t_i >= 1 (t = 1 is
// abutting). Block mode uses start times with t_1 = 0, increments in
// [n, n(1+delta1)), and a strict per-block bound: mismatch count < delta2*n
// where a mismatch at j is a differing m-window.
#pragma once

#include "ergokit/entropy.hpp"
#include "ergokit/space.hpp"

namespace ergokit {

enum class TraceMode { Exact, Block };

struct OrbitTask {
    TraceMode mode = TraceMode::Exact;
    std::vector<Word> points;

    // Exact mode.
    std::vector<int> lengths;  // m_k
    std::vector<int> gaps;     // t_k; entries beyond k = K-1 are unused

    // Block mode.
    int n = 0;
    std::vector<int> starts;  // t_k with t_1 = 0
    double delta1 = 0;
    double delta2 = 0;

    static OrbitTask exact(std::vector<Word> points, std::vector<int> lengths,
                           std::vector<int> gaps);
    static OrbitTask block(std::vector<Word> points, int n, std::vector<int> starts,
                           double delta1, double delta2);
    static OrbitTask from_json(const json& desc);
    json to_json() const;
};

std::vector<int> start_times(const std::vector<int>& lengths, const std::vector<int>& gaps);

struct TraceReport {
    bool ok = false;
    // Exact mode: every violating (k, j). Block mode: (k, j) pairs counted
    // against the budget in blocks that overflow it.
    std::vector<std::pair<int, int>> mismatches;
    std::vector<int> per_block;  // block mode: mismatch count per block
    json to_json() const;
};

TraceReport verify_trace(const ShiftSpace& space, const Word& z, const OrbitTask& task,
                         const EpsScale& scale);

// Required tracer length for the task at this scale.
int trace_length(const OrbitTask& task, const EpsScale& scale);

// Lexicographically first allowed z passing verify_trace, by DFS over
// coordinates; block mode additionally searches the start times over
// increments in [n, n(1+delta1)) when the task has none. node_budget caps
// the DFS; exceeding it raises budget_error.
std::optional<Word> find_tracer(const ShiftSpace& space, const OrbitTask& task,
                                const EpsScale& scale, uint64_t node_budget = 1 << 20);

// Exact-mode tracer with every gap searched in [1, max_gap]; on success the
// chosen gaps are written to *gaps_out when non-null.
std::optional<Word> find_tracer_gluing(const ShiftSpace& space, const std::vector<Word>& points,
                                       const std::vector<int>& lengths, const EpsScale& scale,
                                       int max_gap, std::vector<int>* gaps_out = nullptr,
                                       uint64_t node_budget = 1 << 20);

struct GapProperty {
    enum Kind { Gluing, Block } kind = Gluing;
    double delta1 = 0;  // block kind only
    double delta2 = 0;
};

struct GapEstimate {
    bool found = false;
    int M = 0;
    json witness;     // task that forced M (or defeated the cap)
    json probes;      // what was tested, for reproducibility
    json to_json() const;
};

struct GapSearchOptions {
    int M_cap = 8;
    int exhaustive_len = 0;   // gluing: all segment pairs up to this length
    int samples = 20;         // sampled tasks per candidate M
    uint64_t seed = kDefaultSeed;
    int max_segments = 5;     // sampled task size (gluing)
    int max_seg_len = 8;
    int block_count = 3;      // block kind: segments per task
    uint64_t node_budget = 1 << 20;
};

// Smallest M <= M_cap such that every probed task admits a tracer under the
// property; found = false reports the defeating witness instead.
GapEstimate estimate_gap(const ShiftSpace& space, const EpsScale& scale, const GapProperty& prop,
                         const GapSearchOptions& opts = {});

struct GapFunction {
    std::vector<int> table;  // table[i] = L(i+1)
    int horizon() const { return (int)table.size(); }
    int at(int n) const;
    // Finite temperedness proxy: nondecreasing, L(n)/n nonincreasing from
    // some recorded index on, and L(horizon)/horizon below the threshold.
    bool tempered = false;
    int monotone_from = 0;
    double threshold = 0.5;
    static GapFunction from_table(std::vector<int> table, double threshold = 0.5);
    json to_json() const;
};

// L(n) = L_X(L_Y(n)) + L_Y(n) + L_X(n) - 1 pointwise; horizon shrinks to
// what both tables support; tempered iff both inputs are.
GapFunction compose_tempered_gap(const GapFunction& LX, const GapFunction& LY);

// Two-stage tracer for a product space: stage one block-traces the first
// components at inflated block length n' = floor((1+delta1p) n) with budgets
// (delta1p, delta2p) satisfying (1+delta1p)^2 < 1+delta1 and
// delta2p(1+delta1p) < delta2; stage two exact-traces the second components
// through the stage-one start times. Returns the paired word and the start
// times used.
struct ProductTraceResult {
    Word z;
    std::vector<int> starts;
};
std::optional<ProductTraceResult> product_two_stage_tracer(const ShiftSpace& product,
                                                           const std::vector<Word>& points, int n,
                                                           double delta1, double delta2,
                                                           double delta1p, double delta2p,
                                                           const EpsScale& scale,
                                                           uint64_t node_budget = 1 << 22);

}  // namespace ergokit
