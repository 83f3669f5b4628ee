// space.hpp -- one-sided subshifts presented through their finite languages.
//
// A space is a factorial language with a membership test. Backends:
//   full        full shift on A symbols
//   sft         subshift of finite type, forbidden word list or 0-1
//               transition matrix; words that cannot extend to an infinite
//               point are not part of the language
//   beta        greedy beta-expansion admissibility: every suffix must stay
//               lexicographically <= the digit sequence of 1
//   hereditary  density-bounded marked symbols: every window of length n
//               carries at most L(n) marked symbols
//   product     coordinatewise pairing, symbol s = a * A2 + b
//   union       union of two languages over the larger alphabet
//
// Languages are memoized per length under an explicit word-count budget so
// enumeration stays exact and bounded.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ergokit/base.hpp"

#include "json.hpp"

namespace ergokit {

using json = nlohmann::ordered_json;

enum class Backend { Full, Sft, Beta, Hereditary, Product, Union };

std::string backend_name(Backend b);

class SpaceImpl;

class ShiftSpace {
  public:
    // Build from a JSON description {"backend": ..., ...}. Unknown keys and
    // malformed fields raise validation_error.
    static ShiftSpace from_json(const json& desc);

    static ShiftSpace full(int alphabet);
    static ShiftSpace sft(int alphabet, const std::vector<Word>& forbidden);
    static ShiftSpace sft_matrix(const std::vector<std::vector<int>>& transitions);
    static ShiftSpace beta(double beta, int precision = 64);
    // L_table[i] bounds windows of length i+1; marked lists the counted
    // symbols; symbols restricts the usable alphabet (empty = all).
    static ShiftSpace hereditary(int alphabet, const std::vector<int>& L_table,
                                 const std::vector<int>& marked,
                                 const std::vector<int>& symbols = {});
    // log_form: L(n) = floor(1 + ln n), defined for every n.
    static ShiftSpace hereditary_log(int alphabet, const std::vector<int>& marked,
                                     const std::vector<int>& symbols = {});
    static ShiftSpace product(const ShiftSpace& a, const ShiftSpace& b);
    static ShiftSpace union_of(const ShiftSpace& a, const ShiftSpace& b);

    int alphabet() const;
    Backend backend() const;
    json describe() const;

    // Membership of w in the language. Symbols >= alphabet() raise
    // validation_error. The language is factorial, so a false result prunes
    // all extensions.
    bool allowed(const Word& w) const;

    // All allowed words of length n, lexicographic. Memoized. Raises
    // budget_error if the count would exceed the budget.
    const std::vector<Word>& language(int n) const;
    uint64_t count(int n) const;

    void set_budget(uint64_t max_words);
    uint64_t budget() const;

    // Transfer-matrix facilities, available for full and sft backends:
    // exact path-count of the de Bruijn automaton and the log spectral
    // radius of its nonblocking part.
    bool has_transfer() const;
    uint64_t transfer_count(int n) const;
    double spectral_entropy() const;

    // Components of product/union backends.
    const ShiftSpace& component(int i) const;

  private:
    explicit ShiftSpace(std::shared_ptr<SpaceImpl> impl);
    std::shared_ptr<SpaceImpl> impl_;
};

// Greedy expansion digits of 1 in base beta (first `precision` digits).
std::vector<int> beta_expansion_digits(double beta, int precision);

}  // namespace ergokit
