#include <cmath>
#include <cstdlib>
#include <fstream>

#include "doctest.h"
#include "ergokit/entropy.hpp"

using namespace ergokit;

namespace {

ShiftSpace fixture_space(const std::string& name) {
    const char* dir = std::getenv("ERGOKIT_FIXTURES");
    std::string path = std::string(dir ? dir : "fixtures") + "/" + name;
    std::ifstream in(path);
    REQUIRE(in.good());
    json j;
    in >> j;
    return ShiftSpace::from_json(j);
}

}  // namespace

TEST_CASE("separated shortcut equals brute force equals spanning") {
    std::vector<ShiftSpace> spaces;
    spaces.push_back(ShiftSpace::full(2));
    spaces.push_back(fixture_space("golden.json"));
    spaces.push_back(fixture_space("beta15.json"));
    spaces.push_back(fixture_space("union97.json"));
    for (const ShiftSpace& s : spaces) {
        for (int m : {1, 2, 3}) {
            EpsScale scale(m);
            for (int n = 1; n + m - 1 <= 8; ++n) {
                auto rep = separated_count(s, n, scale);
                CHECK(rep.method == "cylinder-shortcut");
                CHECK(rep.count == s.count(window_length(n, scale)));
                CHECK(rep.count == brute_separated_max(s, n, scale));
                CHECK(rep.count == spanning_count(s, n, scale));
                CHECK(rep.count == brute_spanning_min(s, n, scale));
                auto rep2 = separated_count(s, n, scale, "brute-force");
                CHECK(rep2.method == "brute-force");
                CHECK(rep2.count == rep.count);
            }
        }
    }
}

TEST_CASE("entropy estimates on the reference spaces") {
    EpsScale one(1);

    auto full = entropy_estimate(ShiftSpace::full(2), 12, one);
    CHECK(full.at_n_max == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(full.slope == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    REQUIRE(full.spectral.has_value());
    CHECK(*full.spectral == doctest::Approx(std::log(2.0)).epsilon(1e-10));

    auto golden = entropy_estimate(fixture_space("golden.json"), 12, one);
    double phi = std::log((1.0 + std::sqrt(5.0)) / 2.0);
    CHECK(golden.counts.back() == 377);
    CHECK(golden.at_n_max == doctest::Approx(std::log(377.0) / 12.0).epsilon(1e-12));
    CHECK(std::abs(golden.slope - phi) < 5e-4);
    REQUIRE(golden.spectral.has_value());
    CHECK(std::abs(*golden.spectral - phi) < 1e-10);

    auto hered = entropy_estimate(fixture_space("hereditary96.json"), 14, one);
    CHECK(hered.counts.back() == 261);
    CHECK(hered.slope == doctest::Approx(0.34987).epsilon(1e-3));
    CHECK(!hered.spectral.has_value());

    // csv has a header plus one row per n
    std::string csv = golden.to_csv();
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
}

TEST_CASE("subset-count bound") {
    CHECK(q_count_and_bound(4, 0.3).q == 5);
    CHECK(q_count_and_bound(20, 0.1).q == 21);
    CHECK(q_count_and_bound(1, 0.4).q == 1);
    for (int n = 1; n <= 12; ++n)
        for (double delta : {0.05, 0.1, 0.2, 0.3, 0.45}) {
            QBound b = q_count_and_bound(n, delta);
            CHECK(b.q == q_brute(n, delta));
            CHECK(b.ok);
            CHECK(b.lhs <= b.rhs);
            CHECK(b.gap() > 0);
        }
    CHECK_THROWS_AS(q_count_and_bound(4, 0.7), validation_error);
    CHECK_THROWS_AS(q_count_and_bound(4, 0.0), validation_error);
    CHECK_THROWS_AS(q_count_and_bound(4, 0.5), validation_error);
}

TEST_CASE("window mismatch counting") {
    CHECK(hamming_window_mismatches(parse_word("0000"), parse_word("0101"), 4, 1) == 2);
    CHECK(hamming_window_mismatches(parse_word("00000"), parse_word("01010"), 4, 2) == 4);
    CHECK(hamming_window_mismatches(parse_word("0000"), parse_word("0000"), 4, 1) == 0);
    CHECK_THROWS_AS(hamming_window_mismatches(parse_word("000"), parse_word("000"), 4, 1),
                    validation_error);
}

TEST_CASE("greedy separated sets match the exact maximum on small candidate pools") {
    ShiftSpace f = ShiftSpace::full(2);
    EpsScale one(1);

    HammingSetOptions exact;
    exact.exact_check = true;
    auto strict = hamming_separated_set(f, 4, 0.6, one, exact);
    CHECK(strict.candidate_count == 16);
    CHECK(strict.words.size() == 2);  // binary code, length 4, min distance 3
    REQUIRE(strict.exact_max.has_value());
    CHECK(*strict.exact_max == 2);
    CHECK(format_word(strict.words[0]) == "0000");
    CHECK(format_word(strict.words[1]) == "0111");

    auto loose = hamming_separated_set(f, 4, 0.24, one, exact);
    CHECK(loose.words.size() == 16);  // any single mismatch separates
    CHECK(*loose.exact_max == 16);

    // longer candidates + statistic filter shrink the pool before the greedy pass
    HammingSetOptions filt;
    filt.candidate_len = 6;
    filt.filter = [](const Word& w) { return w[0] == 0; };
    auto res = hamming_separated_set(f, 4, 0.6, one, filt);
    CHECK(res.candidate_count == 32);
    for (const Word& w : res.words) CHECK(w.size() == 6);

    HammingSetOptions capped;
    capped.target = 1;
    auto one_pick = hamming_separated_set(f, 4, 0.6, one, capped);
    CHECK(one_pick.words.size() == 1);
    CHECK(one_pick.reached_target);
}

TEST_CASE("least squares slope") {
    std::vector<int> xs{1, 2, 3, 4};
    std::vector<double> ys{2.0, 4.0, 6.0, 8.0};
    CHECK(lsq_slope(xs, ys) == doctest::Approx(2.0).epsilon(1e-12));
}
