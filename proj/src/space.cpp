// space.cpp -- backend implementations and language enumeration.
#include "ergokit/space.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ergokit {

Word parse_word(const std::string& s) {
    Word w;
    w.reserve(s.size());
    for (char c : s) {
        if (c < '0' || c > '9')
            throw validation_error("word string must be decimal digits, got '" + s + "'");
        w.push_back(static_cast<Symbol>(c - '0'));
    }
    return w;
}

std::string format_word(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (Symbol a : w) {
        if (a > 9) throw validation_error("alphabet too large for digit-string output");
        s.push_back(static_cast<char>('0' + a));
    }
    return s;
}

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::Full: return "full";
        case Backend::Sft: return "sft";
        case Backend::Beta: return "beta";
        case Backend::Hereditary: return "hereditary";
        case Backend::Product: return "product";
        case Backend::Union: return "union";
    }
    return "?";
}

// ---------------------------------------------------------------------------

class SpaceImpl {
  public:
    virtual ~SpaceImpl() = default;
    virtual int alphabet() const = 0;
    virtual Backend backend() const = 0;
    virtual json describe() const = 0;
    // Membership with symbols already range-checked by the caller.
    virtual bool allowed_raw(const Word& w) const = 0;
    virtual bool has_transfer() const { return false; }
    virtual uint64_t transfer_count(int) const {
        throw validation_error("transfer counts only available for full/sft backends");
    }
    virtual double spectral_entropy() const {
        throw validation_error("spectral entropy only available for full/sft backends");
    }
    virtual const ShiftSpace& component(int) const {
        throw validation_error("space has no components");
    }

    uint64_t budget = uint64_t{1} << 24;
    mutable std::mutex cache_mu;
    mutable std::map<int, std::vector<Word>> lang_cache;
    mutable std::map<int, uint64_t> count_cache;
};

namespace {

void check_symbols(const Word& w, int alphabet) {
    for (Symbol a : w)
        if (a >= alphabet)
            throw validation_error("symbol " + std::to_string(int(a)) +
                                   " out of range for alphabet " + std::to_string(alphabet));
}

// Depth-first enumeration over a factorial language: a disallowed prefix has
// no allowed extension, so the recursion prunes on the membership test.
void enumerate_rec(const SpaceImpl& sp, Word& cur, int n, std::vector<Word>& out,
                   uint64_t budget) {
    if ((int)cur.size() == n) {
        if (out.size() >= budget)
            throw budget_error("language enumeration exceeds word budget " +
                               std::to_string(budget));
        out.push_back(cur);
        return;
    }
    for (int a = 0; a < sp.alphabet(); ++a) {
        cur.push_back(static_cast<Symbol>(a));
        if (sp.allowed_raw(cur)) enumerate_rec(sp, cur, n, out, budget);
        cur.pop_back();
    }
}

uint64_t count_rec(const SpaceImpl& sp, Word& cur, int n, uint64_t budget, uint64_t& seen) {
    if ((int)cur.size() == n) {
        if (++seen > budget)
            throw budget_error("language count exceeds word budget " + std::to_string(budget));
        return 1;
    }
    uint64_t total = 0;
    for (int a = 0; a < sp.alphabet(); ++a) {
        cur.push_back(static_cast<Symbol>(a));
        if (sp.allowed_raw(cur)) total += count_rec(sp, cur, n, budget, seen);
        cur.pop_back();
    }
    return total;
}

// -- full ------------------------------------------------------------------

class FullImpl : public SpaceImpl {
  public:
    explicit FullImpl(int a) : a_(a) {
        if (a < 1) throw validation_error("alphabet must be >= 1");
    }
    int alphabet() const override { return a_; }
    Backend backend() const override { return Backend::Full; }
    json describe() const override { return json{{"backend", "full"}, {"alphabet", a_}}; }
    bool allowed_raw(const Word&) const override { return true; }
    bool has_transfer() const override { return true; }
    uint64_t transfer_count(int n) const override {
        uint64_t c = 1;
        for (int i = 0; i < n; ++i) {
            c *= a_;
            if (c > budget) throw budget_error("transfer count exceeds budget");
        }
        return c;
    }
    double spectral_entropy() const override { return std::log(double(a_)); }

  private:
    int a_;
};

// -- sft ---------------------------------------------------------------------

// De Bruijn automaton over clean (r-1)-blocks where r is the longest
// forbidden word. A state is nonblocking when an infinite clean extension
// exists; words whose end state blocks are not factors of any point and are
// excluded from the language.
class SftImpl : public SpaceImpl {
  public:
    SftImpl(int a, std::vector<Word> forbidden, std::optional<json> matrix_desc)
        : a_(a), forbidden_(std::move(forbidden)), matrix_desc_(std::move(matrix_desc)) {
        if (a < 1) throw validation_error("alphabet must be >= 1");
        r_ = 2;
        for (const Word& f : forbidden_) {
            if (f.size() < 1) throw validation_error("forbidden word must be nonempty");
            check_symbols(f, a_);
            r_ = std::max<int>(r_, (int)f.size());
        }
        build_automaton();
    }

    int alphabet() const override { return a_; }
    Backend backend() const override { return Backend::Sft; }

    json describe() const override {
        if (matrix_desc_) return *matrix_desc_;
        json fs = json::array();
        for (const Word& f : forbidden_) fs.push_back(format_word(f));
        return json{{"backend", "sft"}, {"alphabet", a_}, {"forbidden", fs}};
    }

    bool allowed_raw(const Word& w) const override {
        if (!clean(w)) return false;
        if ((int)w.size() >= r_ - 1) {
            Word tail(w.end() - (r_ - 1), w.end());
            auto it = state_index_.find(tail);
            return it != state_index_.end() && nonblocking_[it->second];
        }
        // Short word: allowed iff it extends to a clean nonblocking state.
        return extends_to_state(w);
    }

    bool has_transfer() const override { return true; }

    // Number of allowed n-words as automaton paths: clean n-words ending in a
    // nonblocking state. Independent of the enumerator above.
    uint64_t transfer_count(int n) const override {
        if (n < r_ - 1) {
            uint64_t c = 0;
            Word w;
            for (uint64_t code = 0;; ++code) {
                if (!next_word(code, n, w)) break;
                if (allowed_raw(w)) ++c;
            }
            return c;
        }
        size_t S = states_.size();
        std::vector<uint64_t> v(S);
        for (size_t i = 0; i < S; ++i) v[i] = 1;  // each state = one clean (r-1)-word
        for (int step = r_ - 1; step < n; ++step) {
            std::vector<uint64_t> nv(S, 0);
            for (size_t i = 0; i < S; ++i)
                if (v[i])
                    for (size_t j : succ_[i]) {
                        nv[j] += v[i];
                        if (nv[j] > budget) throw budget_error("transfer count exceeds budget");
                    }
            v.swap(nv);
        }
        uint64_t total = 0;
        for (size_t i = 0; i < S; ++i)
            if (nonblocking_[i]) total += v[i];
        return total;
    }

    // log Perron root of the automaton restricted to nonblocking states.
    // Power iteration on (A + I); the shift makes the dominant eigenvalue
    // unique in modulus even for periodic graphs.
    double spectral_entropy() const override {
        std::vector<size_t> keep;
        for (size_t i = 0; i < states_.size(); ++i)
            if (nonblocking_[i]) keep.push_back(i);
        if (keep.empty()) throw validation_error("empty subshift has no entropy");
        std::vector<size_t> pos(states_.size(), SIZE_MAX);
        for (size_t k = 0; k < keep.size(); ++k) pos[keep[k]] = k;
        size_t S = keep.size();
        std::vector<long double> v(S, 1.0L), nv(S);
        long double lambda = 1.0L;
        for (int it = 0; it < 20000; ++it) {
            for (size_t k = 0; k < S; ++k) nv[k] = v[k];  // the +I part
            for (size_t k = 0; k < S; ++k)
                for (size_t j : succ_[keep[k]])
                    if (pos[j] != SIZE_MAX) nv[pos[j]] += v[k];
            long double norm = 0;
            for (size_t k = 0; k < S; ++k) norm = std::max(norm, nv[k]);
            for (size_t k = 0; k < S; ++k) nv[k] /= norm;
            bool settled = std::fabs((double)(norm - lambda)) < 1e-16 && it > 64;
            lambda = norm;
            v.swap(nv);
            if (settled) break;
        }
        return std::log((double)(lambda - 1.0L));
    }

  private:
    bool clean(const Word& w) const {
        for (const Word& f : forbidden_) {
            if (f.size() > w.size()) continue;
            for (size_t i = 0; i + f.size() <= w.size(); ++i)
                if (std::equal(f.begin(), f.end(), w.begin() + i)) return false;
        }
        return true;
    }

    bool next_word(uint64_t code, int n, Word& w) const {
        w.assign(n, 0);
        for (int i = n - 1; i >= 0; --i) {
            w[i] = static_cast<Symbol>(code % a_);
            code /= a_;
        }
        return code == 0;
    }

    bool extends_to_state(const Word& w) const {
        Word cur = w;
        return extend_rec(cur);
    }
    bool extend_rec(Word& cur) const {
        if ((int)cur.size() == r_ - 1) {
            auto it = state_index_.find(cur);
            return it != state_index_.end() && nonblocking_[it->second];
        }
        for (int a = 0; a < a_; ++a) {
            cur.push_back(static_cast<Symbol>(a));
            bool ok = clean(cur) && extend_rec(cur);
            cur.pop_back();
            if (ok) return true;
        }
        return false;
    }

    void build_automaton() {
        // states: all clean (r-1)-words
        Word w;
        uint64_t code = 0;
        for (;;) {
            if (!next_word(code, r_ - 1, w)) break;
            if (clean(w)) {
                state_index_[w] = states_.size();
                states_.push_back(w);
            }
            ++code;
        }
        succ_.assign(states_.size(), {});
        for (size_t i = 0; i < states_.size(); ++i) {
            for (int a = 0; a < a_; ++a) {
                Word ext = states_[i];
                ext.push_back(static_cast<Symbol>(a));
                if (!clean(ext)) continue;
                Word nxt(ext.begin() + 1, ext.end());
                auto it = state_index_.find(nxt);
                if (it != state_index_.end()) succ_[i].push_back(it->second);
            }
        }
        // Nonblocking = can step forever. Iteratively strip states with no
        // successor; what survives contains all cycles.
        nonblocking_.assign(states_.size(), true);
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < states_.size(); ++i) {
                if (!nonblocking_[i]) continue;
                bool any = false;
                for (size_t j : succ_[i])
                    if (nonblocking_[j]) { any = true; break; }
                if (!any) { nonblocking_[i] = false; changed = true; }
            }
        }
    }

    int a_;
    int r_;
    std::vector<Word> forbidden_;
    std::optional<json> matrix_desc_;
    std::vector<Word> states_;
    std::map<Word, size_t> state_index_;
    std::vector<std::vector<size_t>> succ_;
    std::vector<bool> nonblocking_;
};

// -- beta --------------------------------------------------------------------

class BetaImpl : public SpaceImpl {
  public:
    BetaImpl(double beta, int precision) : beta_(beta), precision_(precision) {
        if (!(beta > 1.0)) throw validation_error("beta must exceed 1");
        if (precision < 8) throw validation_error("beta precision must be >= 8");
        digits_ = beta_expansion_digits(beta, precision);
        double ip;
        integral_ = std::modf(beta, &ip) == 0.0;
        a_ = integral_ ? (int)ip : (int)std::floor(beta) + 1;
    }

    int alphabet() const override { return a_; }
    Backend backend() const override { return Backend::Beta; }
    json describe() const override {
        return json{{"backend", "beta"}, {"beta", beta_}, {"precision", precision_}};
    }

    // Admissible iff every suffix compares lexicographically <= the digit
    // sequence of 1. A comparison that exhausts the computed digits while
    // still tied cannot be decided at this precision and errors out.
    bool allowed_raw(const Word& w) const override {
        if (integral_) return true;  // integer base: full shift
        for (size_t k = 0; k < w.size(); ++k) {
            size_t len = w.size() - k;
            bool decided = false;
            for (size_t i = 0; i < len; ++i) {
                if (i >= digits_.size())
                    throw validation_error("beta expansion precision exhausted; raise precision");
                int d = digits_[i];
                int c = (int)w[k + i];
                if (c < d) { decided = true; break; }
                if (c > d) return false;
            }
            (void)decided;  // full tie with the expansion prefix is admissible
        }
        return true;
    }

  private:
    double beta_;
    int precision_;
    bool integral_;
    int a_;
    std::vector<int> digits_;
};

// -- hereditary ---------------------------------------------------------------

class HereditaryImpl : public SpaceImpl {
  public:
    HereditaryImpl(int a, std::vector<int> L_table, bool log_form, std::vector<int> marked,
                   std::vector<int> symbols)
        : a_(a), L_(std::move(L_table)), log_form_(log_form) {
        if (a < 1) throw validation_error("alphabet must be >= 1");
        if (marked.empty()) throw validation_error("hereditary space needs marked symbols");
        marked_.assign(a_, false);
        for (int m : marked) {
            if (m < 0 || m >= a_) throw validation_error("marked symbol out of range");
            marked_[m] = true;
            marked_list_.push_back(m);
        }
        usable_.assign(a_, true);
        if (!symbols.empty()) {
            usable_.assign(a_, false);
            for (int s : symbols) {
                if (s < 0 || s >= a_) throw validation_error("usable symbol out of range");
                usable_[s] = true;
                symbol_list_.push_back(s);
            }
        }
        if (!log_form_) {
            if (L_.empty()) throw validation_error("hereditary L table empty");
            int prev = 0;
            for (size_t i = 0; i < L_.size(); ++i) {
                if (L_[i] < prev) throw validation_error("hereditary L must be nondecreasing");
                prev = L_[i];
            }
            if (L_[0] < 1) throw validation_error("hereditary L(1) must be >= 1");
        }
    }

    int alphabet() const override { return a_; }
    Backend backend() const override { return Backend::Hereditary; }

    json describe() const override {
        json j{{"backend", "hereditary"}, {"alphabet", a_}};
        if (log_form_)
            j["L"] = json{{"form", "log"}};
        else
            j["L"] = L_;
        j["marked"] = marked_list_;
        if (!symbol_list_.empty()) j["symbols"] = symbol_list_;
        return j;
    }

    int L_of(int n) const {
        if (log_form_) return (int)std::floor(1.0 + std::log((double)n));
        if (n < 1 || n > (int)L_.size())
            throw validation_error("hereditary L table has no entry for window length " +
                                   std::to_string(n));
        return L_[n - 1];
    }

    bool allowed_raw(const Word& w) const override {
        for (Symbol s : w)
            if (!usable_[s]) return false;
        int n = (int)w.size();
        // prefix counts of marked symbols for O(n^2) window checks
        std::vector<int> pre(n + 1, 0);
        for (int i = 0; i < n; ++i) pre[i + 1] = pre[i] + (marked_[w[i]] ? 1 : 0);
        for (int len = 1; len <= n; ++len) {
            int bound = L_of(len);
            for (int st = 0; st + len <= n; ++st)
                if (pre[st + len] - pre[st] > bound) return false;
        }
        return true;
    }

  private:
    int a_;
    std::vector<int> L_;
    bool log_form_;
    std::vector<bool> marked_;
    std::vector<bool> usable_;
    std::vector<int> marked_list_;
    std::vector<int> symbol_list_;
};

// -- product / union ----------------------------------------------------------

class ProductImpl : public SpaceImpl {
  public:
    ProductImpl(ShiftSpace a, ShiftSpace b) : a_(std::move(a)), b_(std::move(b)) {}
    int alphabet() const override { return a_.alphabet() * b_.alphabet(); }
    Backend backend() const override { return Backend::Product; }
    json describe() const override {
        return json{{"backend", "product"}, {"first", a_.describe()}, {"second", b_.describe()}};
    }
    bool allowed_raw(const Word& w) const override {
        int A2 = b_.alphabet();
        Word u(w.size()), v(w.size());
        for (size_t i = 0; i < w.size(); ++i) {
            u[i] = static_cast<Symbol>(w[i] / A2);
            v[i] = static_cast<Symbol>(w[i] % A2);
        }
        return a_.allowed(u) && b_.allowed(v);
    }
    const ShiftSpace& component(int i) const override {
        if (i == 0) return a_;
        if (i == 1) return b_;
        throw validation_error("component index must be 0 or 1");
    }

  private:
    ShiftSpace a_, b_;
};

class UnionImpl : public SpaceImpl {
  public:
    UnionImpl(ShiftSpace a, ShiftSpace b) : a_(std::move(a)), b_(std::move(b)) {}
    int alphabet() const override { return std::max(a_.alphabet(), b_.alphabet()); }
    Backend backend() const override { return Backend::Union; }
    json describe() const override {
        return json{{"backend", "union"}, {"first", a_.describe()}, {"second", b_.describe()}};
    }
    bool allowed_raw(const Word& w) const override {
        return in_component(a_, w) || in_component(b_, w);
    }
    const ShiftSpace& component(int i) const override {
        if (i == 0) return a_;
        if (i == 1) return b_;
        throw validation_error("component index must be 0 or 1");
    }

  private:
    static bool in_component(const ShiftSpace& s, const Word& w) {
        for (Symbol c : w)
            if (c >= s.alphabet()) return false;  // foreign symbol, not in this component
        return s.allowed(w);
    }
    ShiftSpace a_, b_;
};

}  // namespace

// ---------------------------------------------------------------------------

std::vector<int> beta_expansion_digits(double beta, int precision) {
    if (!(beta > 1.0)) throw validation_error("beta must exceed 1");
    std::vector<int> digits;
    digits.reserve(precision);
    long double r = beta;
    for (int i = 0; i < precision; ++i) {
        long double d = std::floor(r);
        digits.push_back((int)d);
        r = (r - d) * (long double)beta;
    }
    return digits;
}

ShiftSpace::ShiftSpace(std::shared_ptr<SpaceImpl> impl) : impl_(std::move(impl)) {}

ShiftSpace ShiftSpace::full(int a) { return ShiftSpace(std::make_shared<FullImpl>(a)); }

ShiftSpace ShiftSpace::sft(int a, const std::vector<Word>& forbidden) {
    return ShiftSpace(std::make_shared<SftImpl>(a, forbidden, std::nullopt));
}

ShiftSpace ShiftSpace::sft_matrix(const std::vector<std::vector<int>>& t) {
    int a = (int)t.size();
    if (a < 1) throw validation_error("transition matrix must be nonempty");
    std::vector<Word> forbidden;
    json desc{{"backend", "sft"}, {"alphabet", a}};
    json rows = json::array();
    for (int i = 0; i < a; ++i) {
        if ((int)t[i].size() != a) throw validation_error("transition matrix must be square");
        json row = json::array();
        for (int j = 0; j < a; ++j) {
            if (t[i][j] != 0 && t[i][j] != 1)
                throw validation_error("transition matrix entries must be 0 or 1");
            row.push_back(t[i][j]);
            if (t[i][j] == 0)
                forbidden.push_back(Word{static_cast<Symbol>(i), static_cast<Symbol>(j)});
        }
        rows.push_back(row);
    }
    desc["transitions"] = rows;
    return ShiftSpace(std::make_shared<SftImpl>(a, forbidden, desc));
}

ShiftSpace ShiftSpace::beta(double b, int precision) {
    return ShiftSpace(std::make_shared<BetaImpl>(b, precision));
}

ShiftSpace ShiftSpace::hereditary(int a, const std::vector<int>& L, const std::vector<int>& marked,
                                  const std::vector<int>& symbols) {
    return ShiftSpace(std::make_shared<HereditaryImpl>(a, L, false, marked, symbols));
}

ShiftSpace ShiftSpace::hereditary_log(int a, const std::vector<int>& marked,
                                      const std::vector<int>& symbols) {
    return ShiftSpace(std::make_shared<HereditaryImpl>(a, std::vector<int>{}, true, marked, symbols));
}

ShiftSpace ShiftSpace::product(const ShiftSpace& a, const ShiftSpace& b) {
    return ShiftSpace(std::make_shared<ProductImpl>(a, b));
}

ShiftSpace ShiftSpace::union_of(const ShiftSpace& a, const ShiftSpace& b) {
    return ShiftSpace(std::make_shared<UnionImpl>(a, b));
}

namespace {

const json& require_key(const json& j, const std::string& key) {
    if (!j.contains(key)) throw validation_error("space description missing key '" + key + "'");
    return j.at(key);
}

void reject_unknown(const json& j, std::initializer_list<const char*> known) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) { ok = true; break; }
        if (!ok) throw validation_error("unknown key '" + it.key() + "' in space description");
    }
}

}  // namespace

ShiftSpace ShiftSpace::from_json(const json& desc) {
    if (!desc.is_object()) throw validation_error("space description must be a JSON object");
    std::string b = require_key(desc, "backend").get<std::string>();
    if (b == "full") {
        reject_unknown(desc, {"backend", "alphabet"});
        return full(require_key(desc, "alphabet").get<int>());
    }
    if (b == "sft") {
        reject_unknown(desc, {"backend", "alphabet", "forbidden", "transitions"});
        if (desc.contains("transitions")) {
            auto rows = desc.at("transitions").get<std::vector<std::vector<int>>>();
            return sft_matrix(rows);
        }
        int a = require_key(desc, "alphabet").get<int>();
        std::vector<Word> forbidden;
        for (const auto& f : require_key(desc, "forbidden"))
            forbidden.push_back(parse_word(f.get<std::string>()));
        return sft(a, forbidden);
    }
    if (b == "beta") {
        reject_unknown(desc, {"backend", "beta", "precision"});
        int prec = desc.contains("precision") ? desc.at("precision").get<int>() : 64;
        return beta(require_key(desc, "beta").get<double>(), prec);
    }
    if (b == "hereditary") {
        reject_unknown(desc, {"backend", "alphabet", "L", "marked", "symbols"});
        int a = require_key(desc, "alphabet").get<int>();
        auto marked = require_key(desc, "marked").get<std::vector<int>>();
        std::vector<int> symbols;
        if (desc.contains("symbols")) symbols = desc.at("symbols").get<std::vector<int>>();
        const json& L = require_key(desc, "L");
        if (L.is_object()) {
            if (!L.contains("form") || L.at("form").get<std::string>() != "log")
                throw validation_error("hereditary L object form must be {\"form\":\"log\"}");
            return hereditary_log(a, marked, symbols);
        }
        return hereditary(a, L.get<std::vector<int>>(), marked, symbols);
    }
    if (b == "product" || b == "union") {
        reject_unknown(desc, {"backend", "first", "second"});
        ShiftSpace s1 = from_json(require_key(desc, "first"));
        ShiftSpace s2 = from_json(require_key(desc, "second"));
        return b == "product" ? product(s1, s2) : union_of(s1, s2);
    }
    throw validation_error("unknown backend '" + b + "'");
}

int ShiftSpace::alphabet() const { return impl_->alphabet(); }
Backend ShiftSpace::backend() const { return impl_->backend(); }
json ShiftSpace::describe() const { return impl_->describe(); }

bool ShiftSpace::allowed(const Word& w) const {
    check_symbols(w, impl_->alphabet());
    return impl_->allowed_raw(w);
}

const std::vector<Word>& ShiftSpace::language(int n) const {
    if (n < 0) throw validation_error("word length must be >= 0");
    std::lock_guard<std::mutex> lk(impl_->cache_mu);
    auto it = impl_->lang_cache.find(n);
    if (it != impl_->lang_cache.end()) return it->second;
    std::vector<Word> out;
    Word cur;
    if (impl_->allowed_raw(cur)) enumerate_rec(*impl_, cur, n, out, impl_->budget);
    return impl_->lang_cache.emplace(n, std::move(out)).first->second;
}

uint64_t ShiftSpace::count(int n) const {
    if (n < 0) throw validation_error("word length must be >= 0");
    {
        std::lock_guard<std::mutex> lk(impl_->cache_mu);
        auto it = impl_->count_cache.find(n);
        if (it != impl_->count_cache.end()) return it->second;
        auto lit = impl_->lang_cache.find(n);
        if (lit != impl_->lang_cache.end()) return lit->second.size();
    }
    Word cur;
    uint64_t seen = 0;
    uint64_t c = impl_->allowed_raw(cur) ? count_rec(*impl_, cur, n, impl_->budget, seen) : 0;
    std::lock_guard<std::mutex> lk(impl_->cache_mu);
    impl_->count_cache[n] = c;
    return c;
}

void ShiftSpace::set_budget(uint64_t b) { impl_->budget = b; }
uint64_t ShiftSpace::budget() const { return impl_->budget; }

bool ShiftSpace::has_transfer() const { return impl_->has_transfer(); }
uint64_t ShiftSpace::transfer_count(int n) const { return impl_->transfer_count(n); }
double ShiftSpace::spectral_entropy() const { return impl_->spectral_entropy(); }
const ShiftSpace& ShiftSpace::component(int i) const { return impl_->component(i); }

}  // namespace ergokit
