#include "ergokit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ergokit {

namespace {

// Solve pi P = pi, sum pi = 1 by Gaussian elimination on (P^T - I) with the
// normalization row appended.
std::vector<double> stationary_of(const std::vector<std::vector<double>>& P) {
    int n = (int)P.size();
    // rows 0..n-1: (P^T - I) pi = 0; last row: sum = 1.
    std::vector<std::vector<double>> A(n + 1, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) A[i][j] = P[j][i] - (i == j ? 1.0 : 0.0);
        A[n][i] = 1.0;
    }
    A[n][n] = 1.0;
    // Least-squares-free elimination with partial pivoting over the (n+1) x n
    // system; the homogeneous rows are rank n-1, so one of them drops out.
    std::vector<double> x(n, 0.0);
    int row = 0;
    std::vector<int> pivot_rows;
    for (int col = 0; col < n && row <= n; ++col) {
        int best = -1;
        double mag = 1e-13;
        for (int r = row; r <= n; ++r)
            if (std::fabs(A[r][col]) > mag) {
                mag = std::fabs(A[r][col]);
                best = r;
            }
        if (best < 0) continue;
        std::swap(A[row], A[best]);
        for (int r = 0; r <= n; ++r) {
            if (r == row || std::fabs(A[r][col]) < 1e-300) continue;
            double f = A[r][col] / A[row][col];
            for (int c = col; c <= n; ++c) A[r][c] -= f * A[row][c];
        }
        pivot_rows.push_back(col);
        ++row;
    }
    if ((int)pivot_rows.size() < n)
        throw validation_error("stationary vector underdetermined (reducible chain)");
    for (int r = 0; r < n; ++r) x[pivot_rows[r]] = A[r][n] / A[r][pivot_rows[r]];
    return x;
}

void check_stochastic(const std::vector<std::vector<double>>& P) {
    int n = (int)P.size();
    if (n < 1) throw validation_error("transition matrix must be nonempty");
    for (const auto& row : P) {
        if ((int)row.size() != n) throw validation_error("transition matrix must be square");
        double s = 0;
        for (double v : row) {
            if (v < 0) throw validation_error("transition probabilities must be >= 0");
            s += v;
        }
        if (std::fabs(s - 1.0) > 1e-12)
            throw validation_error("transition rows must sum to 1 within 1e-12");
    }
}

}  // namespace

MarkovMeasure::MarkovMeasure(std::vector<std::vector<double>> P,
                             std::optional<std::vector<double>> pi)
    : P_(std::move(P)) {
    check_stochastic(P_);
    int n = (int)P_.size();
    if (pi) {
        if ((int)pi->size() != n) throw validation_error("pi size mismatch");
        pi_ = *pi;
    } else {
        pi_ = stationary_of(P_);
    }
    double s = 0;
    for (double v : pi_) {
        if (v < -1e-12) throw validation_error("stationary vector must be >= 0");
        s += v;
    }
    if (std::fabs(s - 1.0) > 1e-10) throw validation_error("pi must sum to 1");
    for (int j = 0; j < n; ++j) {
        double v = 0;
        for (int i = 0; i < n; ++i) v += pi_[i] * P_[i][j];
        if (std::fabs(v - pi_[j]) > 1e-10)
            throw validation_error("pi is not stationary for P within 1e-10");
    }
    bernoulli_ = true;
    for (int i = 1; i < n && bernoulli_; ++i)
        for (int j = 0; j < n; ++j)
            if (std::fabs(P_[i][j] - P_[0][j]) > 1e-15) {
                bernoulli_ = false;
                break;
            }
}

MarkovMeasure MarkovMeasure::bernoulli(const std::vector<double>& p) {
    std::vector<std::vector<double>> P(p.size(), p);
    return MarkovMeasure(std::move(P), p);
}

MarkovMeasure MarkovMeasure::parry(const std::vector<std::vector<int>>& A) {
    int n = (int)A.size();
    for (const auto& row : A)
        if ((int)row.size() != n) throw validation_error("transition matrix must be square");
    // Perron vectors of A via power iteration on (A + I), right and left.
    auto iterate = [&](bool left) {
        std::vector<long double> v(n, 1.0L), nv(n);
        long double lambda = 0;
        for (int it = 0; it < 50000; ++it) {
            for (int i = 0; i < n; ++i) {
                long double s = v[i];
                for (int j = 0; j < n; ++j) s += (left ? A[j][i] : A[i][j]) * v[j];
                nv[i] = s;
            }
            long double norm = 0;
            for (int i = 0; i < n; ++i) norm = std::max(norm, nv[i]);
            if (norm <= 0) throw validation_error("transition matrix is nilpotent");
            for (int i = 0; i < n; ++i) nv[i] /= norm;
            bool settled = it > 64 && std::fabs((double)(norm - lambda)) < 1e-18;
            lambda = norm;
            v.swap(nv);
            if (settled) break;
        }
        return std::pair<std::vector<long double>, long double>(v, lambda - 1.0L);
    };
    auto [v, lam] = iterate(false);
    auto [u, lam2] = iterate(true);
    (void)lam2;
    std::vector<std::vector<double>> P(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (A[i][j]) P[i][j] = (double)(A[i][j] * v[j] / (lam * v[i]));
    // Renormalize rows exactly to absorb iteration residue.
    for (int i = 0; i < n; ++i) {
        double s = 0;
        for (double x : P[i]) s += x;
        if (s <= 0) throw validation_error("transition matrix has a dead row");
        for (double& x : P[i]) x /= s;
    }
    long double dot = 0;
    for (int i = 0; i < n; ++i) dot += u[i] * v[i];
    std::vector<double> pi(n);
    for (int i = 0; i < n; ++i) pi[i] = (double)(u[i] * v[i] / dot);
    return MarkovMeasure(std::move(P), pi);
}

MarkovMeasure MarkovMeasure::from_json(const json& desc) {
    if (!desc.is_object() || !desc.contains("kind"))
        throw validation_error("measure description needs a 'kind'");
    std::string kind = desc.at("kind").get<std::string>();
    if (kind == "bernoulli") return bernoulli(desc.at("p").get<std::vector<double>>());
    if (kind == "markov") {
        auto P = desc.at("P").get<std::vector<std::vector<double>>>();
        std::optional<std::vector<double>> pi;
        if (desc.contains("pi")) pi = desc.at("pi").get<std::vector<double>>();
        return MarkovMeasure(std::move(P), pi);
    }
    if (kind == "parry") return parry(desc.at("transitions").get<std::vector<std::vector<int>>>());
    throw validation_error("not a markov-family measure kind: '" + kind + "'");
}

double MarkovMeasure::mass(const Word& w) const {
    if (w.empty()) return 1.0;
    for (Symbol a : w)
        if (a >= P_.size()) throw validation_error("symbol out of range for measure");
    double p = pi_[w[0]];
    for (size_t i = 0; i + 1 < w.size(); ++i) p *= P_[w[i]][w[i + 1]];
    return p;
}

std::optional<double> MarkovMeasure::entropy() const { return markov_entropy(*this); }

json MarkovMeasure::describe() const {
    if (bernoulli_) return json{{"kind", "bernoulli"}, {"p", P_[0]}};
    json P = json::array();
    for (const auto& row : P_) P.push_back(row);
    return json{{"kind", "markov"}, {"P", P}, {"pi", pi_}};
}

void MarkovMeasure::check_support(const ShiftSpace& space) const {
    if (space.alphabet() != alphabet())
        throw validation_error("measure alphabet does not match space");
    for (int i = 0; i < alphabet(); ++i)
        for (int j = 0; j < alphabet(); ++j)
            if (P_[i][j] > 0 &&
                !space.allowed(Word{(Symbol)i, (Symbol)j}))
                throw validation_error("transition mass on a forbidden word");
}

Word MarkovMeasure::sample(int length, uint64_t seed) const {
    if (length < 1) throw validation_error("sample length must be >= 1");
    std::mt19937_64 rng(seed);
    // Uniform double in [0,1) from the top 53 bits, identical on every
    // platform, unlike the distribution adapters.
    auto unit = [&]() { return (double)(rng() >> 11) * 0x1.0p-53; };
    auto pick = [&](const std::vector<double>& probs) {
        double u = unit(), acc = 0;
        for (size_t i = 0; i < probs.size(); ++i) {
            acc += probs[i];
            if (u < acc) return (Symbol)i;
        }
        return (Symbol)(probs.size() - 1);
    };
    Word w;
    w.reserve(length);
    w.push_back(pick(pi_));
    for (int i = 1; i < length; ++i) w.push_back(pick(P_[w.back()]));
    return w;
}

EmpiricalMeasure::EmpiricalMeasure(const Word& x, int n, int K, int alphabet)
    : alphabet_(alphabet), n_(n), K_(K) {
    if (n < 1 || K < 1) throw validation_error("empirical measure needs n >= 1, K >= 1");
    if ((int)x.size() < n + K - 1)
        throw validation_error("word too short: empirical measure needs length >= n+K-1");
    for (Symbol a : x)
        if (a >= alphabet) throw validation_error("symbol out of range for empirical measure");
    levels_.resize(K);
    for (int k = 1; k <= K; ++k) {
        auto& tab = levels_[k - 1];
        for (int j = 0; j < n; ++j) {
            Word w(x.begin() + j, x.begin() + j + k);
            tab[w] += 1.0 / n;
        }
    }
}

double EmpiricalMeasure::mass(const Word& w) const {
    if (w.empty()) return 1.0;
    if ((int)w.size() > K_)
        throw validation_error("empirical measure truncated below requested depth");
    const auto& tab = levels_[w.size() - 1];
    auto it = tab.find(w);
    return it == tab.end() ? 0.0 : it->second;
}

json EmpiricalMeasure::describe() const {
    json levels = json::object();
    for (int k = 1; k <= K_; ++k) {
        json tab = json::object();
        for (const auto& [w, p] : levels_[k - 1]) tab[format_word(w)] = p;
        levels[std::to_string(k)] = tab;
    }
    return json{{"kind", "empirical"}, {"n", n_}, {"K", K_}, {"levels", levels}};
}

PeriodicOrbitMeasure::PeriodicOrbitMeasure(const Word& period, int alphabet)
    : period_(period), alphabet_(alphabet) {
    if (period.empty()) throw validation_error("periodic orbit needs a nonempty word");
    for (Symbol a : period)
        if (a >= alphabet) throw validation_error("symbol out of range for periodic orbit");
}

double PeriodicOrbitMeasure::mass(const Word& w) const {
    if (w.empty()) return 1.0;
    int p = (int)period_.size();
    int hits = 0;
    for (int j = 0; j < p; ++j) {
        bool eq = true;
        for (size_t i = 0; i < w.size(); ++i)
            if (period_[(j + i) % p] != w[i]) {
                eq = false;
                break;
            }
        if (eq) ++hits;
    }
    return (double)hits / p;
}

json PeriodicOrbitMeasure::describe() const {
    return json{{"kind", "periodic"}, {"word", format_word(period_)}, {"alphabet", alphabet_}};
}

MixtureMeasure::MixtureMeasure(std::vector<MeasurePtr> components, std::vector<double> weights)
    : components_(std::move(components)), weights_(std::move(weights)) {
    if (components_.empty() || components_.size() != weights_.size())
        throw validation_error("mixture needs matching nonempty components and weights");
    double s = 0;
    for (double w : weights_) {
        if (w < 0) throw validation_error("mixture weights must be >= 0");
        s += w;
    }
    if (std::fabs(s - 1.0) > 1e-12) throw validation_error("mixture weights must sum to 1");
    for (const auto& c : components_)
        if (c->alphabet() != components_[0]->alphabet())
            throw validation_error("mixture components must share an alphabet");
}

int MixtureMeasure::alphabet() const { return components_[0]->alphabet(); }

double MixtureMeasure::mass(const Word& w) const {
    double s = 0;
    for (size_t i = 0; i < components_.size(); ++i) s += weights_[i] * components_[i]->mass(w);
    return s;
}

std::optional<double> MixtureMeasure::entropy() const {
    double s = 0;
    for (size_t i = 0; i < components_.size(); ++i) {
        auto h = components_[i]->entropy();
        if (!h) return std::nullopt;
        s += weights_[i] * *h;
    }
    return s;
}

json MixtureMeasure::describe() const {
    json comps = json::array();
    for (const auto& c : components_) comps.push_back(c->describe());
    return json{{"kind", "mixture"}, {"components", comps}, {"weights", weights_}};
}

MeasurePtr measure_from_json(const json& desc) {
    if (!desc.is_object() || !desc.contains("kind"))
        throw validation_error("measure description needs a 'kind'");
    std::string kind = desc.at("kind").get<std::string>();
    if (kind == "bernoulli") {
        auto p = desc.at("p").get<std::vector<double>>();
        return std::make_shared<MarkovMeasure>(MarkovMeasure::bernoulli(p));
    }
    if (kind == "markov") {
        auto P = desc.at("P").get<std::vector<std::vector<double>>>();
        std::optional<std::vector<double>> pi;
        if (desc.contains("pi")) pi = desc.at("pi").get<std::vector<double>>();
        return std::make_shared<MarkovMeasure>(std::move(P), pi);
    }
    if (kind == "parry") {
        auto A = desc.at("transitions").get<std::vector<std::vector<int>>>();
        return std::make_shared<MarkovMeasure>(MarkovMeasure::parry(A));
    }
    if (kind == "periodic") {
        Word w = parse_word(desc.at("word").get<std::string>());
        int a = desc.at("alphabet").get<int>();
        return std::make_shared<PeriodicOrbitMeasure>(w, a);
    }
    if (kind == "mixture") {
        std::vector<MeasurePtr> comps;
        for (const auto& c : desc.at("components")) comps.push_back(measure_from_json(c));
        auto w = desc.at("weights").get<std::vector<double>>();
        return std::make_shared<MixtureMeasure>(std::move(comps), std::move(w));
    }
    throw validation_error("unknown measure kind '" + kind + "'");
}

double markov_entropy(const MarkovMeasure& mu) {
    double h = 0;
    const auto& P = mu.matrix();
    const auto& pi = mu.stationary();
    for (size_t i = 0; i < P.size(); ++i)
        for (double p : P[i])
            if (p > 0) h -= pi[i] * p * std::log(p);
    return h;
}

namespace {

void for_each_word(int alphabet, int k, const std::function<void(const Word&)>& fn) {
    Word w(k, 0);
    for (;;) {
        fn(w);
        int i = k - 1;
        while (i >= 0 && w[i] == alphabet - 1) w[i--] = 0;
        if (i < 0) return;
        ++w[i];
    }
}

}  // namespace

double weak_metric(const CylinderMeasure& mu, const CylinderMeasure& nu, int K) {
    if (mu.alphabet() != nu.alphabet())
        throw validation_error("weak metric needs a shared alphabet");
    int A = mu.alphabet();
    double total = 0;
    for (int k = 1; k <= K; ++k) {
        double level = 0;
        for_each_word(A, k, [&](const Word& w) { level += std::fabs(mu.mass(w) - nu.mass(w)); });
        total += std::ldexp(1.0, -k) * level / std::pow((double)A, k);
    }
    return total;
}

double metric_diameter(int alphabet, int K) {
    double s = 0;
    for (int k = 1; k <= K; ++k) s += std::ldexp(2.0, -k) / std::pow((double)alphabet, k);
    return s;
}

double metric_var(int m, int alphabet, int K) {
    double s = 0;
    for (int k = m + 1; k <= K; ++k) s += std::ldexp(2.0, -k) / std::pow((double)alphabet, k);
    return s;
}

KatokEstimate katok_entropy_estimate(const CylinderMeasure& mu, const ShiftSpace& space, int n,
                                     const EpsScale& scale, double delta) {
    if (n < 1) throw validation_error("n must be >= 1");
    if (!(delta > 0 && delta < 1)) throw validation_error("delta must lie in (0,1)");
    int len = window_length(n, scale);
    const auto& words = space.language(len);
    std::vector<double> masses;
    masses.reserve(words.size());
    for (const Word& w : words) masses.push_back(mu.mass(w));
    std::sort(masses.begin(), masses.end(), std::greater<double>());
    long double acc = 0;
    uint64_t cnt = 0;
    for (double p : masses) {
        acc += p;
        ++cnt;
        if ((double)acc > 1.0 - delta) break;
    }
    if ((double)acc <= 1.0 - delta)
        throw validation_error("measure mass on the language does not reach 1-delta");
    KatokEstimate est;
    est.n = n;
    est.m = scale.m;
    est.delta = delta;
    est.ball_count = cnt;
    est.value = std::log((double)cnt) / n;
    return est;
}

json KatokEstimate::to_json() const {
    return json{{"n", n}, {"m", m}, {"delta", delta}, {"ball_count", ball_count}, {"value", value}};
}

bool z_membership(const Word& x, int N, double delta, const CylinderMeasure& mu_ref, int horizon,
                  int K) {
    if ((int)x.size() < horizon + N + K - 1)
        throw validation_error("word too short for the requested membership horizon");
    for (int k = 0; k <= horizon; ++k) {
        Word tail(x.begin() + k, x.end());
        EmpiricalMeasure e(tail, N, K, mu_ref.alphabet());
        if (weak_metric(e, mu_ref, K) > delta) return false;
    }
    return true;
}

}  // namespace ergokit
