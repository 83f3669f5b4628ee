// measures.hpp -- Markov/Bernoulli/periodic/mixture measures through their
// cylinder masses, empirical measures of finite words, the weighted-L1
// weak-* metric on depth-K marginals, Katok's entropy estimator, and the
// trapped-orbit membership test.
//
// Metric: D(mu, nu) = sum_{k=1..K} 2^{-k} (1/A^k) sum_{|w|=k} |mu[w]-nu[w]|.
// Its diameter and the one-step variation var(2^{-m}) have closed forms that
// the verify suite cross-checks against brute maximization.
#pragma once

#include <memory>

#include "ergokit/entropy.hpp"
#include "ergokit/space.hpp"

namespace ergokit {

inline constexpr int kDefaultDepth = 6;

class CylinderMeasure {
  public:
    virtual ~CylinderMeasure() = default;
    virtual int alphabet() const = 0;
    // Mass of the cylinder [w]; mass of the empty word is 1.
    virtual double mass(const Word& w) const = 0;
    virtual std::string kind() const = 0;
    virtual json describe() const = 0;
    // Exact entropy when a closed form exists for this measure.
    virtual std::optional<double> entropy() const { return std::nullopt; }
};

using MeasurePtr = std::shared_ptr<const CylinderMeasure>;

class MarkovMeasure : public CylinderMeasure {
  public:
    // Row-stochastic P; pi defaults to the stationary vector (unique when the
    // support graph is irreducible, else solved with the normalization
    // constraint). Rows must sum to 1 within 1e-12 and pi P = pi within 1e-10.
    MarkovMeasure(std::vector<std::vector<double>> P, std::optional<std::vector<double>> pi = {});

    static MarkovMeasure bernoulli(const std::vector<double>& p);
    // Maximal-entropy Markov measure of a 0/1 transition matrix via its
    // Perron data: P_ij = A_ij v_j / (lambda v_i), pi_i = u_i v_i.
    static MarkovMeasure parry(const std::vector<std::vector<int>>& transitions);
    static MarkovMeasure from_json(const json& desc);

    int alphabet() const override { return (int)P_.size(); }
    double mass(const Word& w) const override;
    std::string kind() const override { return bernoulli_ ? "bernoulli" : "markov"; }
    json describe() const override;
    std::optional<double> entropy() const override;  // -sum pi_i P_ij ln P_ij

    const std::vector<std::vector<double>>& matrix() const { return P_; }
    const std::vector<double>& stationary() const { return pi_; }
    bool is_bernoulli() const { return bernoulli_; }
    // Checks P is supported on the space's allowed transitions.
    void check_support(const ShiftSpace& space) const;
    // Markov-chain sample of the given length, deterministic in the seed.
    Word sample(int length, uint64_t seed) const;

  private:
    std::vector<std::vector<double>> P_;
    std::vector<double> pi_;
    bool bernoulli_ = false;
};

class EmpiricalMeasure : public CylinderMeasure {
  public:
    // E(x, n) down to depth K: level-k weight of w is the frequency of w
    // among the n windows x[j..j+k), j < n. Requires |x| >= n + K - 1 so no
    // window is truncated.
    EmpiricalMeasure(const Word& x, int n, int K, int alphabet);

    int alphabet() const override { return alphabet_; }
    double mass(const Word& w) const override;  // depth <= K only
    std::string kind() const override { return "empirical"; }
    json describe() const override;
    int depth() const { return K_; }
    int base_length() const { return n_; }

  private:
    int alphabet_;
    int n_;
    int K_;
    std::vector<std::map<Word, double>> levels_;  // levels_[k-1]: length-k table
};

class PeriodicOrbitMeasure : public CylinderMeasure {
  public:
    PeriodicOrbitMeasure(const Word& period, int alphabet);
    int alphabet() const override { return alphabet_; }
    double mass(const Word& w) const override;
    std::string kind() const override { return "periodic"; }
    json describe() const override;
    std::optional<double> entropy() const override { return 0.0; }

  private:
    Word period_;
    int alphabet_;
};

class MixtureMeasure : public CylinderMeasure {
  public:
    MixtureMeasure(std::vector<MeasurePtr> components, std::vector<double> weights);
    int alphabet() const override;
    double mass(const Word& w) const override;
    std::string kind() const override { return "mixture"; }
    json describe() const override;
    // Entropy is affine over the ergodic decomposition, which is exactly the
    // component list here.
    std::optional<double> entropy() const override;
    const std::vector<MeasurePtr>& components() const { return components_; }
    const std::vector<double>& weights() const { return weights_; }

  private:
    std::vector<MeasurePtr> components_;
    std::vector<double> weights_;
};

MeasurePtr measure_from_json(const json& desc);

double markov_entropy(const MarkovMeasure& mu);

// D at depth K; both measures must share the alphabet. The sum runs over all
// A^k words; measures vanish off their support.
double weak_metric(const CylinderMeasure& mu, const CylinderMeasure& nu, int K = kDefaultDepth);

// Closed-form diameter sum_{k<=K} 2^{1-k} / A^k and one-step variation
// var(2^{-m}) = sum_{k=m+1..K} 2^{1-k} / A^k.
double metric_diameter(int alphabet, int K = kDefaultDepth);
double metric_var(int m, int alphabet, int K = kDefaultDepth);

struct KatokEstimate {
    int n = 0;
    int m = 1;
    double delta = 0;
    uint64_t ball_count = 0;
    double value = 0;  // ln(ball_count)/n
    json to_json() const;
};

// Minimal number of (n, 2^{-m})-balls, i.e. (n+m-1)-cylinders, of total mass
// > 1-delta, from exactly sorted cylinder masses.
KatokEstimate katok_entropy_estimate(const CylinderMeasure& mu, const ShiftSpace& space, int n,
                                     const EpsScale& scale, double delta);

// True iff D(E(sigma^k x, N), mu_ref) <= delta for all 0 <= k <= horizon.
bool z_membership(const Word& x, int N, double delta, const CylinderMeasure& mu_ref, int horizon,
                  int K = kDefaultDepth);

}  // namespace ergokit
