#include <cmath>
#include <cstdlib>
#include <fstream>

#include "doctest.h"
#include "ergokit/measures.hpp"

using namespace ergokit;

namespace {

json load_fixture(const std::string& name) {
    const char* dir = std::getenv("ERGOKIT_FIXTURES");
    std::string path = std::string(dir ? dir : "fixtures") + "/" + name;
    std::ifstream in(path);
    REQUIRE(in.good());
    json j;
    in >> j;
    return j;
}

const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

}  // namespace

TEST_CASE("markov construction and validation") {
    CHECK_THROWS_AS(MarkovMeasure({{0.5, 0.4}, {0.5, 0.5}}), validation_error);
    CHECK_THROWS_AS(MarkovMeasure({{0.5, 0.5}, {0.5, -0.1}}), validation_error);
    CHECK_THROWS_AS(MarkovMeasure({{0.5, 0.5}, {0.5, 0.5}},
                                  std::vector<double>{0.9, 0.1}),
                    validation_error);
    // two closed classes: stationary vector is not unique
    CHECK_THROWS_AS(MarkovMeasure({{1.0, 0.0}, {0.0, 1.0}}), validation_error);

    MarkovMeasure fixed = MarkovMeasure::from_json(load_fixture("markov_fixed0.json"));
    CHECK(fixed.mass(parse_word("0000")) == doctest::Approx(1.0));
    CHECK(fixed.mass(parse_word("01")) == doctest::Approx(0.0));
    CHECK(*fixed.entropy() == doctest::Approx(0.0));

    MarkovMeasure b = MarkovMeasure::bernoulli({0.25, 0.75});
    CHECK(b.is_bernoulli());
    CHECK(b.kind() == "bernoulli");
    CHECK(b.mass(parse_word("01")) == doctest::Approx(0.25 * 0.75).epsilon(1e-14));
    CHECK(b.stationary()[1] == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("parry measure of the golden mean graph") {
    MarkovMeasure parry = MarkovMeasure::parry({{1, 1}, {1, 0}});
    double phi2 = kPhi * kPhi;
    CHECK(parry.matrix()[0][1] == doctest::Approx(1.0 / phi2).epsilon(1e-12));
    CHECK(parry.matrix()[0][0] == doctest::Approx(1.0 / kPhi).epsilon(1e-12));
    CHECK(parry.matrix()[1][0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(parry.stationary()[0] == doctest::Approx(phi2 / (1.0 + phi2)).epsilon(1e-12));
    CHECK(*parry.entropy() == doctest::Approx(std::log(kPhi)).epsilon(1e-12));
    CHECK(parry.mass(parse_word("11")) == doctest::Approx(0.0));

    ShiftSpace golden = ShiftSpace::from_json(load_fixture("golden.json"));
    CHECK_NOTHROW(parry.check_support(golden));
    MarkovMeasure half = MarkovMeasure::bernoulli({0.5, 0.5});
    CHECK_THROWS_AS(half.check_support(golden), validation_error);
}

TEST_CASE("empirical measures of a finite word") {
    Word x;
    for (int i = 0; i < 205; ++i) x.push_back((Symbol)(i % 2));
    EmpiricalMeasure e(x, 200, 6, 2);
    CHECK(e.mass(parse_word("0")) == doctest::Approx(0.5));
    CHECK(e.mass(parse_word("01")) == doctest::Approx(0.5));
    CHECK(e.mass(parse_word("11")) == doctest::Approx(0.0));
    CHECK(e.mass(parse_word("010101")) == doctest::Approx(0.5));
    CHECK_THROWS_AS(e.mass(parse_word("0101010")), validation_error);  // beyond depth
    CHECK_THROWS_AS(EmpiricalMeasure(x, 201, 6, 2), validation_error);  // word too short
}

TEST_CASE("periodic orbit masses wrap around") {
    PeriodicOrbitMeasure p(parse_word("01"), 2);
    CHECK(p.mass(parse_word("0")) == doctest::Approx(0.5));
    CHECK(p.mass(parse_word("01")) == doctest::Approx(0.5));
    CHECK(p.mass(parse_word("10")) == doctest::Approx(0.5));
    CHECK(p.mass(parse_word("11")) == doctest::Approx(0.0));
    CHECK(p.mass(parse_word("0101")) == doctest::Approx(0.5));
    CHECK(*p.entropy() == doctest::Approx(0.0));
}

TEST_CASE("mixtures are affine in mass and entropy") {
    MeasurePtr mix = measure_from_json(load_fixture("mixture.json"));
    MarkovMeasure half = MarkovMeasure::bernoulli({0.5, 0.5});
    MarkovMeasure parry = MarkovMeasure::parry({{1, 1}, {1, 0}});
    for (const char* s : {"0", "01", "11", "010", "0110"}) {
        Word w = parse_word(s);
        CHECK(mix->mass(w) ==
              doctest::Approx(0.3 * half.mass(w) + 0.7 * parry.mass(w)).epsilon(1e-12));
    }
    auto h = std::dynamic_pointer_cast<const MixtureMeasure>(mix)->entropy();
    REQUIRE(h.has_value());
    CHECK(*h == doctest::Approx(0.3 * std::log(2.0) + 0.7 * std::log(kPhi)).epsilon(1e-12));

    CHECK_THROWS_AS(MixtureMeasure({mix}, {0.5}), validation_error);
}

TEST_CASE("weak metric closed forms") {
    CHECK(metric_diameter(2) == doctest::Approx(0.666503906250).epsilon(1e-15));
    CHECK(metric_var(1, 2) == doctest::Approx(0.16650390625).epsilon(1e-15));
    CHECK(metric_var(3, 2) == doctest::Approx(0.01025390625).epsilon(1e-15));
    CHECK(metric_var(6, 2) == doctest::Approx(0.0));

    // diameter is attained by the two fixed points
    PeriodicOrbitMeasure zero(parse_word("0"), 2);
    PeriodicOrbitMeasure one(parse_word("1"), 2);
    CHECK(weak_metric(zero, one) == doctest::Approx(metric_diameter(2)).epsilon(1e-15));
    CHECK(weak_metric(zero, zero) == doctest::Approx(0.0));

    MarkovMeasure b3 = MarkovMeasure::bernoulli({0.3, 0.7});
    CHECK_THROWS_AS(weak_metric(b3, PeriodicOrbitMeasure(parse_word("012"), 3)),
                    validation_error);
}

TEST_CASE("katok entropy estimates at fixed counts") {
    ShiftSpace full = ShiftSpace::full(2);
    MarkovMeasure half = MarkovMeasure::bernoulli({0.5, 0.5});
    EpsScale one(1);

    auto k10 = katok_entropy_estimate(half, full, 10, one, 0.1);
    CHECK(k10.ball_count == 922);

    auto k12 = katok_entropy_estimate(half, full, 12, one, 0.1);
    CHECK(k12.ball_count == 3687);
    CHECK(k12.value == doctest::Approx(0.684381).epsilon(1e-5));

    MarkovMeasure b11 = MarkovMeasure::from_json(load_fixture("bernoulli_011.json"));
    auto k14a = katok_entropy_estimate(b11, full, 14, one, 0.1);
    CHECK(k14a.ball_count == 361);
    CHECK(k14a.value == doctest::Approx(0.42063).epsilon(1e-4));
    auto k14b = katok_entropy_estimate(b11, full, 14, one, 0.2);
    CHECK(k14b.ball_count == 104);
    CHECK(k14b.value == doctest::Approx(0.33174).epsilon(1e-4));

    CHECK_THROWS_AS(katok_entropy_estimate(half, full, 10, one, 0.0), validation_error);
    // measure supported off the space: mass never reaches 1-delta
    PeriodicOrbitMeasure ones(parse_word("1"), 2);
    ShiftSpace golden = ShiftSpace::from_json(load_fixture("golden.json"));
    CHECK_THROWS_AS(katok_entropy_estimate(ones, golden, 6, one, 0.1), validation_error);
}

TEST_CASE("markov sampling is deterministic and plausible") {
    MarkovMeasure parry = MarkovMeasure::parry({{1, 1}, {1, 0}});
    Word a = parry.sample(260, 99);
    Word b = parry.sample(260, 99);
    CHECK(a == b);
    CHECK(a.size() == 260);
    ShiftSpace golden = ShiftSpace::from_json(load_fixture("golden.json"));
    CHECK(golden.allowed(a));
    CHECK(parry.sample(260, 100) != a);
}

TEST_CASE("trapped-orbit membership threshold") {
    Word x;
    for (int i = 0; i < 210; ++i) x.push_back((Symbol)(i % 2));
    MarkovMeasure half = MarkovMeasure::bernoulli({0.5, 0.5});
    // exact distance of the alternating empirical measure from the coin at
    // depth 6 is 0.0950775146...
    EmpiricalMeasure e(x, 200, 6, 2);
    CHECK(weak_metric(e, half) == doctest::Approx(0.095077514648).epsilon(1e-9));
    CHECK(z_membership(x, 200, 0.10, half, 5));
    CHECK(!z_membership(x, 200, 0.09, half, 5));
    CHECK_THROWS_AS(z_membership(x, 200, 0.10, half, 6), validation_error);
}

TEST_CASE("measure json round trips") {
    for (const char* name : {"bernoulli_half.json", "bernoulli_011.json", "parry_golden.json",
                             "periodic01.json", "markov_fixed0.json", "mixture.json"}) {
        MeasurePtr mu = measure_from_json(load_fixture(name));
        MeasurePtr nu = measure_from_json(mu->describe());
        CHECK(weak_metric(*mu, *nu) == doctest::Approx(0.0));
    }
    CHECK_THROWS_AS(measure_from_json(json{{"kind", "nope"}}), validation_error);
}
