#include "ergokit/entropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

namespace ergokit {

json SeparationReport::to_json() const {
    return json{{"n", n}, {"m", m}, {"count", count}, {"method", method}};
}

namespace {

// First coordinate where u and v differ, or -1 if equal on [0, len).
int first_diff(const Word& u, const Word& v, int len) {
    for (int i = 0; i < len; ++i)
        if (u[i] != v[i]) return i;
    return -1;
}

// d_n(u, v) > 2^{-m} iff some window of length m inside the first n shifted
// comparisons differs, which collapses to a difference in the first n+m-1
// symbols.
bool separated(const Word& u, const Word& v, int n, int m) {
    int d = first_diff(u, v, std::min<int>({(int)u.size(), (int)v.size(), n + m - 1}));
    return d >= 0 && d < n + m - 1;
}

}  // namespace

SeparationReport separated_count(const ShiftSpace& space, int n, const EpsScale& scale,
                                 const std::string& method) {
    if (n < 1) throw validation_error("n must be >= 1");
    if (scale.m < 1) throw validation_error("separation scale needs m >= 1");
    SeparationReport rep;
    rep.n = n;
    rep.m = scale.m;
    if (method == "cylinder-shortcut") {
        rep.count = space.count(window_length(n, scale));
        rep.method = method;
        return rep;
    }
    if (method == "brute-force") {
        rep.count = brute_separated_max(space, n, scale);
        rep.method = method;
        return rep;
    }
    throw validation_error("unknown separation method '" + method + "'");
}

uint64_t spanning_count(const ShiftSpace& space, int n, const EpsScale& scale) {
    if (n < 1) throw validation_error("n must be >= 1");
    return space.count(window_length(n, scale));
}

uint64_t brute_separated_max(const ShiftSpace& space, int n, const EpsScale& scale) {
    int len = window_length(n, scale);
    if (space.count(len) > (uint64_t{1} << 14))
        throw validation_error("brute-force separated search limited to tiny languages");
    const auto& words = space.language(len);
    // Greedy maximal set. Distinct words of length n+m-1 are always
    // separated, so greedy keeps everything; the point of this path is that
    // it evaluates the metric predicate literally.
    std::vector<const Word*> kept;
    for (const Word& w : words) {
        bool ok = true;
        for (const Word* k : kept)
            if (!separated(*k, w, n, scale.m)) { ok = false; break; }
        if (ok) kept.push_back(&w);
    }
    return kept.size();
}

uint64_t brute_spanning_min(const ShiftSpace& space, int n, const EpsScale& scale) {
    int len = window_length(n, scale);
    const auto& words = space.language(len);
    size_t W = words.size();
    if (W > 4096) throw validation_error("brute-force spanning search limited to tiny languages");
    // Closed d_n-ball of radius 2^{-m} around word i covers word j iff they
    // agree on the full window. Greedy set cover; the balls partition the
    // language here, so greedy attains the optimum (asserted by tests).
    std::vector<bool> covered(W, false);
    uint64_t picked = 0;
    for (size_t i = 0; i < W; ++i) {
        if (covered[i]) continue;
        ++picked;
        for (size_t j = i; j < W; ++j)
            if (!covered[j] && first_diff(words[i], words[j], len) == -1) covered[j] = true;
    }
    return picked;
}

double lsq_slope(const std::vector<int>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw validation_error("least squares needs >= 2 points");
    double n = (double)xs.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += (double)xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

EntropyEstimate entropy_estimate(const ShiftSpace& space, int n_max, const EpsScale& scale) {
    if (n_max < 2) throw validation_error("n_max must be >= 2");
    EntropyEstimate est;
    est.n_max = n_max;
    est.m = scale.m;
    for (int n = 1; n <= n_max; ++n) {
        uint64_t c = space.count(window_length(n, scale));
        if (c == 0) throw validation_error("empty language: entropy undefined");
        est.ns.push_back(n);
        est.counts.push_back(c);
        est.ln_over_n.push_back(std::log((double)c) / n);
    }
    est.at_n_max = est.ln_over_n.back();
    std::vector<int> xs;
    std::vector<double> ys;
    for (int n = n_max / 2; n <= n_max; ++n) {
        xs.push_back(n);
        ys.push_back(std::log((double)est.counts[n - 1]));
    }
    est.slope = lsq_slope(xs, ys);
    if (space.has_transfer()) est.spectral = space.spectral_entropy();
    return est;
}

json EntropyEstimate::to_json() const {
    json series = json::array();
    for (size_t i = 0; i < ns.size(); ++i)
        series.push_back(json{{"n", ns[i]}, {"count", counts[i]}, {"ln_count_over_n", ln_over_n[i]}});
    json j{{"n_max", n_max}, {"m", m},      {"at_n_max", at_n_max},
           {"slope", slope}, {"series", series}};
    if (spectral) j["spectral"] = *spectral;
    return j;
}

std::string EntropyEstimate::to_csv() const {
    std::ostringstream os;
    os << "n,count,ln_count_over_n\n";
    char buf[64];
    for (size_t i = 0; i < ns.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%d,%llu,%.17g\n", ns[i],
                      (unsigned long long)counts[i], ln_over_n[i]);
        os << buf;
    }
    return os.str();
}

namespace {

// Smallest integer strictly greater than (1-delta)*n, with a guard against
// floating error when (1-delta)*n is an exact integer.
int min_subset_size(int n, double delta) {
    double v = (1.0 - delta) * n;
    double r = std::round(v);
    if (std::fabs(v - r) < 1e-9) return (int)r + 1;
    return (int)std::floor(v) + 1;
}

}  // namespace

QBound q_count_and_bound(int n, double delta) {
    if (n < 1) throw validation_error("n must be >= 1");
    if (!(delta > 0.0 && delta < 0.5))
        throw validation_error("delta must lie in (0, 1/2)");
    // Pascal row for C(n, j); n <= 62 keeps every entry and the sum in range.
    if (n > 62) throw validation_error("subset count limited to n <= 62");
    std::vector<uint64_t> row(n + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j >= 1; --j) row[j] += row[j - 1];
    QBound qb;
    qb.n = n;
    qb.delta = delta;
    for (int j = min_subset_size(n, delta); j <= n; ++j) qb.q += row[j];
    qb.lhs = qb.q == 0 ? -std::numeric_limits<double>::infinity()
                       : std::log((double)qb.q) / n;
    qb.rhs = -delta * std::log(delta) - (1.0 - delta) * std::log(1.0 - delta);
    qb.ok = qb.lhs <= qb.rhs;
    return qb;
}

uint64_t q_brute(int n, double delta) {
    if (n < 1 || n > 20) throw validation_error("subset enumeration limited to n <= 20");
    uint64_t q = 0;
    int need = min_subset_size(n, delta);
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask)
        if (std::popcount(mask) >= need) ++q;
    return q;
}

json QBound::to_json() const {
    return json{{"n", n},     {"delta", delta}, {"q", q},
                {"lhs", lhs}, {"rhs", rhs},     {"ok", ok},
                {"gap", gap()}};
}

int hamming_window_mismatches(const Word& u, const Word& v, int M, int m) {
    if ((int)u.size() < M + m - 1 || (int)v.size() < M + m - 1)
        throw validation_error("words too short for the separation window");
    int c = 0;
    for (int k = 0; k < M; ++k) {
        for (int i = 0; i < m; ++i) {
            if (u[k + i] != v[k + i]) {
                ++c;
                break;
            }
        }
    }
    return c;
}

HammingSetResult hamming_separated_set(const ShiftSpace& space, int M, double delta0,
                                       const EpsScale& scale, const HammingSetOptions& opts) {
    if (M < 1) throw validation_error("M must be >= 1");
    if (scale.m < 1) throw validation_error("separation scale needs m >= 1");
    if (!(delta0 > 0.0 && delta0 < 1.0)) throw validation_error("delta0 must lie in (0,1)");
    int base_len = M + scale.m - 1;
    int cand_len = opts.candidate_len.value_or(base_len);
    if (cand_len < base_len)
        throw validation_error("candidate length shorter than the separation window");

    HammingSetResult res;
    res.M = M;
    res.m = scale.m;
    res.delta0 = delta0;

    std::vector<const Word*> cands;
    for (const Word& w : space.language(cand_len)) {
        if (opts.filter && !opts.filter(w)) continue;
        cands.push_back(&w);
    }
    res.candidate_count = cands.size();

    double threshold = delta0 * M;
    auto sep = [&](const Word& a, const Word& b) {
        return (double)hamming_window_mismatches(a, b, M, scale.m) > threshold;
    };

    for (const Word* c : cands) {
        bool ok = true;
        for (const Word& k : res.words)
            if (!sep(k, *c)) { ok = false; break; }
        if (ok) {
            res.words.push_back(*c);
            if (opts.target && res.words.size() >= *opts.target) break;
        }
    }
    res.reached_target = !opts.target || res.words.size() >= *opts.target;

    if (opts.exact_check) {
        if (cands.size() > 64)
            throw validation_error("exact separated maximum limited to <= 64 candidates");
        // Branch and bound over candidate indices in lexicographic order.
        size_t C = cands.size();
        std::vector<uint64_t> compat(C, 0);
        for (size_t i = 0; i < C; ++i)
            for (size_t j = 0; j < C; ++j)
                if (i != j && sep(*cands[i], *cands[j])) compat[i] |= uint64_t{1} << j;
        uint64_t best = 0;
        auto rec = [&](auto&& self, uint64_t avail, uint64_t size) -> void {
            if (size + (uint64_t)std::popcount(avail) <= best) return;
            if (!avail) {
                best = std::max(best, size);
                return;
            }
            int i = std::countr_zero(avail);
            self(self, (avail & ~(uint64_t{1} << i)) & compat[i], size + 1);  // take i
            self(self, avail & ~(uint64_t{1} << i), size);                    // skip i
        };
        rec(rec, C == 64 ? ~uint64_t{0} : (uint64_t{1} << C) - 1, 0);
        res.exact_max = best;
    }
    return res;
}

json HammingSetResult::to_json() const {
    json ws = json::array();
    for (const Word& w : words) ws.push_back(format_word(w));
    json j{{"M", M},
           {"m", m},
           {"delta0", delta0},
           {"size", words.size()},
           {"candidates", candidate_count},
           {"reached_target", reached_target},
           {"words", ws}};
    if (exact_max) j["exact_max"] = *exact_max;
    return j;
}

}  // namespace ergokit
