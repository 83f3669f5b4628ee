#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ergokit/base.hpp"
#include "ergokit/entropy.hpp"
#include "ergokit/measures.hpp"
#include "ergokit/space.hpp"

namespace ergokit {

// Binary entropy H(d) = -d ln d - (1-d) ln(1-d), and its inverse on (0, 1/2].
double binary_entropy(double d);
double binary_entropy_inverse(double target);

// One named constraint row of the parameter ledger.
struct LedgerRow {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string relation;  // "<", "<=", ">", ">="
    bool pass = false;
    bool gated = true;  // advisory rows do not gate feasibility
    std::string note;

    json to_json() const;
};

// Scale-and-budget package for the separated-set construction.  All numeric
// choices are recorded in `rows` with margins; infeasibility reports the
// first violated gated row.
struct ConstructionParams {
    double h0 = 0.0;
    double beta0 = 0.0;
    double eta0 = 0.0;
    double h_mu = 0.0;
    double h_top = 0.0;

    double eta = 0.0;
    double beta = 0.0;
    double Dstar = 0.0;  // metric diameter at depth K
    int K = kDefaultDepth;
    int T = 0;
    int m_build = 1;   // scale used for the actual word-level construction
    int m_ledger = 1;  // finest scale satisfying the oscillation budget
    int m_gamma = 0;   // coarser companion scale for the shadowing radius
    double gamma0 = 0.0;
    double delta1 = 0.0;
    double delta0 = 0.0;
    double delta2 = 0.0;
    int M = 0;
    int M1 = 0;
    double N0 = 0.0;  // horizon past which spanning growth stays under h+beta

    std::vector<LedgerRow> rows;
    bool feasible = false;
    std::string first_violation;

    json to_json() const;
};

// Derives every budget from (h0, beta0, eta0, M) against the space and the
// reference measure; delta0 comes from a downward grid search driven by the
// same greedy set builder used by build_gamma.
ConstructionParams derive_params(const ShiftSpace& space, const CylinderMeasure& mu,
                                 double h0, double beta0, double eta0, int M,
                                 int K = kDefaultDepth);

// Hamming-separated core set: ceil(exp(M*h0)) words of length M whose
// empirical measures lie eta-close to mu.  Throws validation_error when the
// greedy set cannot reach the target or the target breaches exp(M*(h0+beta)).
struct GammaSet {
    std::vector<Word> words;  // truncated to length M
    int M = 0;
    double delta0 = 0.0;
    std::size_t target = 0;
    std::size_t greedy_total = 0;  // full greedy size before truncation

    json to_json() const;
};
GammaSet build_gamma(const ShiftSpace& space, const CylinderMeasure& mu,
                     const ConstructionParams& p);

// Concatenation stage.  For each gap pattern xi in {0..M1-1}^n the Y-words
// are the allowed words of length n*M + sum(xi) whose k-th M-block differs
// from some Gamma word in fewer than delta2*M positions; Lambda-words are
// their factors at offsets 0..M+M1-1.
struct LambdaApprox {
    GammaSet gamma;
    int n = 0;
    int M = 0;
    int M1 = 0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    std::map<std::vector<int>, std::vector<Word>> y_by_xi;
    std::vector<Word> lambda_words;  // deduplicated, sorted
    std::size_t y_total = 0;

    json to_json(bool include_words) const;
};
LambdaApprox lambda_language(const ShiftSpace& space, const ConstructionParams& p,
                             const GammaSet& gamma, int n);

// Counting and entropy-window audit of a finished instance.
struct CountAudit {
    // upper family: distinct (np*M - 1)-prefixes vs (M+M1) * B^(np+2)
    double logB = 0.0;
    std::vector<json> upper_rows;
    bool upper_ok = false;
    // lower: best gap pattern's distinct-tuple word count vs |Gamma|^n / M1^(n-1)
    std::size_t lower_count = 0;
    double lower_bound = 0.0;
    bool lower_ok = false;
    std::string separation_method;
    bool separation_ok = false;
    // entropy window
    double rate_lower = 0.0;
    double rate_upper = 0.0;
    double slack_lower = 0.0;
    double slack_upper = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    bool window_ok = false;
    // empirical proximity of Lambda-words to mu
    double worst_empirical_distance = 0.0;
    bool empirical_ok = false;
    // factor statistics
    int factor_len = 0;
    std::size_t factor_count = 0;
    std::size_t ambient_count = 0;
    bool factor_gap_ok = false;
    bool shift_closed = false;

    bool all_ok() const;
    json to_json() const;
};
CountAudit count_bounds_check(const ShiftSpace& space, const CylinderMeasure& mu,
                              const ConstructionParams& p, const LambdaApprox& lam,
                              int factor_len = 12);

// Distinct factors of the given length across all Lambda-words.
std::size_t lambda_factor_count(const LambdaApprox& lam, int len);

}  // namespace ergokit
