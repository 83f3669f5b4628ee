// entropy.hpp -- separated/spanning counting, entropy estimation, the
// subset-count bound, and greedy Hamming-separated word sets.
//
// Scale convention: eps = 2^{-m} under d(x,y) = 2^{-min{k: x_k != y_k}}.
// Two points are (n, 2^{-m})-separated iff their first n+m-1 symbols differ,
// and an (n, 2^{-m})-ball is an (n+m-1)-cylinder, so maximal separated =
// minimal spanning = |L_{n+m-1}|. Both brute-force paths exist to check the
// shortcut rather than assume it.
#pragma once

#include <functional>
#include <optional>

#include "ergokit/space.hpp"

namespace ergokit {

struct EpsScale {
    int m = 1;
    explicit EpsScale(int m_) : m(m_) {
        if (m < 0) throw validation_error("scale exponent m must be >= 0");
    }
    double eps() const { return std::ldexp(1.0, -m); }
};

// Symbol window length that decides (n, 2^{-m})-separation.
inline int window_length(int n, const EpsScale& scale) { return n + scale.m - 1; }

struct SeparationReport {
    int n = 0;
    int m = 0;
    uint64_t count = 0;
    std::string method;  // "cylinder-shortcut" or "brute-force"
    json to_json() const;
};

SeparationReport separated_count(const ShiftSpace& space, int n, const EpsScale& scale,
                                 const std::string& method = "cylinder-shortcut");
uint64_t spanning_count(const ShiftSpace& space, int n, const EpsScale& scale);

// Literal-predicate reference paths. Separated: grow a maximal set greedily
// (greedy is maximal, and for this metric maximal = maximum, which the tests
// assert against the shortcut). Spanning: greedy cover by closed balls.
uint64_t brute_separated_max(const ShiftSpace& space, int n, const EpsScale& scale);
uint64_t brute_spanning_min(const ShiftSpace& space, int n, const EpsScale& scale);

struct EntropyEstimate {
    int n_max = 0;
    int m = 1;
    std::vector<int> ns;
    std::vector<uint64_t> counts;
    std::vector<double> ln_over_n;
    double at_n_max = 0;       // ln(count)/n at n_max
    double slope = 0;          // least-squares slope of ln(count) over [n_max/2, n_max]
    std::optional<double> spectral;  // log Perron root when a transfer matrix exists
    json to_json() const;
    std::string to_csv() const;  // columns n, count, ln_count_over_n
};

EntropyEstimate entropy_estimate(const ShiftSpace& space, int n_max, const EpsScale& scale);

struct QBound {
    int n = 0;
    double delta = 0;
    uint64_t q = 0;
    double lhs = 0;   // ln(Q)/n
    double rhs = 0;   // -delta ln delta - (1-delta) ln(1-delta)
    bool ok = false;
    double gap() const { return rhs - lhs; }
    json to_json() const;
};

// Q = #{A subset of Z_n : |A| > (1-delta) n} via binomial sums.
QBound q_count_and_bound(int n, double delta);
// Direct subset enumeration, n <= 20.
uint64_t q_brute(int n, double delta);

// Mismatch count |{k in Z_M : u and v disagree somewhere in [k, k+m)}|.
// Words must have length >= M+m-1.
int hamming_window_mismatches(const Word& u, const Word& v, int M, int m);

struct HammingSetOptions {
    // Candidate words are language(candidate_len); must be >= M+m-1. The
    // extra tail beyond the separation window lets callers filter on
    // empirical statistics that need more symbols.
    std::optional<int> candidate_len;
    std::function<bool(const Word&)> filter;  // keep candidate iff true
    bool exact_check = false;                 // brute maximum for small candidate sets
    std::optional<uint64_t> target;           // stop after this many picks
};

struct HammingSetResult {
    std::vector<Word> words;
    int M = 0;
    int m = 1;
    double delta0 = 0;
    uint64_t candidate_count = 0;
    bool reached_target = true;
    std::optional<uint64_t> exact_max;  // filled in exact mode
    json to_json() const;
};

// Greedy lexicographic construction of a pairwise (M, delta0, 2^{-m})-separated
// set: mismatch count must exceed delta0*M for every kept pair.
HammingSetResult hamming_separated_set(const ShiftSpace& space, int M, double delta0,
                                       const EpsScale& scale,
                                       const HammingSetOptions& opts = {});

double lsq_slope(const std::vector<int>& xs, const std::vector<double>& ys);

}  // namespace ergokit
