#include <cmath>
#include <cstdlib>
#include <fstream>

#include "doctest.h"
#include "ergokit/pressure.hpp"

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

const double kPhiRoot = (1.0 + std::sqrt(5.0)) / 2.0;

}  // namespace

TEST_CASE("potential tables validate and round trip") {
    PotentialSpec ind = PotentialSpec::from_json(load_fixture("phi_ind1.json"));
    CHECK(ind.r == 1);
    CHECK(ind.phi(parse_word("10"), 0) == doctest::Approx(1.0));
    CHECK(ind.phi(parse_word("10"), 1) == doctest::Approx(0.0));  // sparse: off-table is 0
    CHECK(ind.phi_n(parse_word("1101"), 4) == doctest::Approx(3.0));
    CHECK_THROWS_AS(ind.phi(parse_word("1"), 1), validation_error);
    CHECK(PotentialSpec::from_json(ind.to_json()).to_json() == ind.to_json());

    ShiftSpace golden = ShiftSpace::sft(2, {parse_word("11")});
    CHECK_NOTHROW(PotentialSpec::indicator(parse_word("01")).validate(golden));
    CHECK_THROWS_AS(PotentialSpec::indicator(parse_word("11")).validate(golden),
                    validation_error);
    CHECK_THROWS_AS(PotentialSpec::from_json(json{{"r", 1}, {"table", json::object()},
                                                  {"bogus", 1}}),
                    validation_error);
    CHECK_THROWS_AS(PotentialSpec::from_json(json{{"r", 2}, {"table", {{"1", 0.5}}}}),
                    validation_error);
    PotentialSpec neg = PotentialSpec::constant(0.0, 2);
    neg.eps_n = {-0.1};
    CHECK_THROWS_AS(neg.validate(ShiftSpace::full(2)), validation_error);
}

TEST_CASE("binomial closed form on the full shift") {
    ShiftSpace full = ShiftSpace::full(2);
    for (double c : {1.0, -0.7, 0.3}) {
        PotentialSpec phi = PotentialSpec::indicator(parse_word("1"), c);
        PressureReport rep = pressure_estimate(full, phi, 14, EpsScale(1));
        double want = std::log(1.0 + std::exp(c));
        REQUIRE(rep.closed_form.has_value());
        CHECK(*rep.closed_form == doctest::Approx(want).epsilon(1e-14));
        for (double v : rep.ln_over_n) CHECK(std::abs(v - want) < 1e-12);
    }
}

TEST_CASE("expected potential values") {
    PotentialSpec ind1 = PotentialSpec::indicator(parse_word("1"));
    CHECK(lyapunov(MarkovMeasure::bernoulli({0.7, 0.3}), ind1) == doctest::Approx(0.3));
    CHECK(lyapunov(MarkovMeasure::bernoulli({0.7, 0.3}), PotentialSpec::constant(2.5, 2)) ==
          doctest::Approx(2.5));

    MarkovMeasure parry = MarkovMeasure::parry({{1, 1}, {1, 0}});
    PotentialSpec ind01 = PotentialSpec::indicator(parse_word("01"));
    double chi = lyapunov(parry, ind01);
    CHECK(chi == doctest::Approx(1.0 / (1.0 + kPhiRoot * kPhiRoot)).epsilon(1e-12));

    // long-run frequency of the pattern in a sampled trajectory agrees
    Word x = parry.sample(20000, 7);
    int hits = 0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) hits += (x[i] == 0 && x[i + 1] == 1);
    CHECK(std::abs((double)hits / (double)(x.size() - 1) - chi) < 0.01);
}

TEST_CASE("measure-side pressure") {
    MarkovMeasure half = MarkovMeasure::bernoulli({0.5, 0.5});
    CHECK(measure_pressure(half, PotentialSpec::constant(0.0, 2)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));

    double e = std::exp(1.0);
    double pstar = e / (1.0 + e);
    MarkovMeasure eq = bernoulli2(pstar);
    PotentialSpec ind1 = PotentialSpec::indicator(parse_word("1"));
    CHECK(measure_pressure(eq, ind1) == doctest::Approx(std::log(1.0 + e)).epsilon(1e-10));

    MarkovMeasure fixed = MarkovMeasure::from_json(load_fixture("markov_fixed0.json"));
    CHECK(measure_pressure(fixed, ind1) == doctest::Approx(0.0));

    ShiftSpace full = ShiftSpace::full(2);
    PressureReport rep = pressure_estimate(full, ind1, 10, EpsScale(1), &eq);
    REQUIRE(rep.measure_side.has_value());
    CHECK(rep.variational_ok);
    CHECK(std::abs(*rep.measure_side - rep.at_n_max) < 1e-10);

    MarkovMeasure parry = MarkovMeasure::parry({{1, 1}, {1, 0}});
    ShiftSpace golden = ShiftSpace::sft(2, {parse_word("11")});
    PressureReport grep = pressure_estimate(golden, PotentialSpec::constant(0.0, 2), 12,
                                            EpsScale(1), &parry);
    CHECK(grep.variational_ok);
    CHECK(*grep.measure_side == doctest::Approx(std::log(kPhiRoot)).epsilon(1e-10));
}

TEST_CASE("scale must dominate the potential range") {
    ShiftSpace full = ShiftSpace::full(2);
    PotentialSpec ind01 = PotentialSpec::indicator(parse_word("01"));
    CHECK_THROWS_WITH_AS(pressure_estimate(full, ind01, 6, EpsScale(1)),
                         doctest::Contains("need m >= r"), validation_error);
    CHECK_NOTHROW(pressure_estimate(full, ind01, 6, EpsScale(2)));
}

TEST_CASE("error-bound intervals divide by n") {
    ShiftSpace full = ShiftSpace::full(2);
    PotentialSpec phi = PotentialSpec::indicator(parse_word("1"));
    phi.eps_n.assign(8, 0.1);
    PressureReport rep = pressure_estimate(full, phi, 8, EpsScale(1));
    for (std::size_t i = 0; i < rep.ns.size(); ++i) {
        CHECK(rep.hi[i] - rep.lo[i] == doctest::Approx(0.2 / rep.ns[i]).epsilon(1e-12));
        CHECK(rep.lo[i] <= rep.ln_over_n[i]);
    }
    phi.eps_n.assign(3, 0.1);
    CHECK_THROWS_AS(pressure_estimate(full, phi, 8, EpsScale(1)), validation_error);
}

TEST_CASE("bernoulli family solves") {
    ShiftSpace full = ShiftSpace::full(2);
    PotentialSpec ind1 = PotentialSpec::indicator(parse_word("1"));

    SpectrumResult h = spectrum_solve(full, nullptr, SpectrumTarget::Entropy,
                                      0.5 * std::log(2.0));
    CHECK(h.p == doctest::Approx(0.1100278644383595).epsilon(1e-9));
    CHECK(h.achieved == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-10));

    SpectrumResult x = spectrum_solve(full, &ind1, SpectrumTarget::Exponent, 0.25);
    CHECK(x.p == doctest::Approx(0.25).epsilon(1e-10));

    SpectrumResult pr = spectrum_solve(full, &ind1, SpectrumTarget::Pressure, 1.2);
    CHECK(pr.achieved == doctest::Approx(1.2).epsilon(1e-10));
    CHECK(pr.p <= std::exp(1.0) / (1.0 + std::exp(1.0)) + 1e-6);

    // exponent range past 1/2 needs an explicit upper bracket
    CHECK_THROWS_AS(spectrum_solve(full, &ind1, SpectrumTarget::Exponent, 0.9),
                    validation_error);
    SpectrumResult wide = spectrum_solve(full, &ind1, SpectrumTarget::Exponent, 0.9,
                                         std::nullopt, 1.0 - 1e-12);
    CHECK(wide.p == doctest::Approx(0.9).epsilon(1e-10));

    CHECK_THROWS_WITH_AS(spectrum_solve(full, nullptr, SpectrumTarget::Entropy, 0.8),
                         doctest::Contains("outside the attained range"), validation_error);
    CHECK_THROWS_AS(spectrum_solve(full, nullptr, SpectrumTarget::Exponent, 0.2),
                    validation_error);  // needs a potential
    CHECK_THROWS_AS(spectrum_solve(ShiftSpace::full(3), nullptr, SpectrumTarget::Entropy, 0.5),
                    validation_error);
    CHECK_THROWS_AS(bernoulli2(0.0), validation_error);
}

TEST_CASE("boundary pressure probe and expectation regularity") {
    PotentialSpec ind1 = PotentialSpec::indicator(parse_word("1"));
    PinfProbe probe = pinf_probe(ind1);
    CHECK(probe.chi_min == doctest::Approx(0.0));
    CHECK(probe.ok);
    CHECK(probe.gap <= 1e-3);

    PotentialSpec neg = PotentialSpec::indicator(parse_word("1"), -2.0);
    PinfProbe nprobe = pinf_probe(neg);
    CHECK(nprobe.chi_min == doctest::Approx(-2.0));
    CHECK(nprobe.ok);

    CHECK(lyapunov_lipschitz(PotentialSpec::indicator(parse_word("1"), 2.0), 2) ==
          doctest::Approx(8.0));
    double C = lyapunov_lipschitz(ind1, 2);
    MarkovMeasure a = MarkovMeasure::bernoulli({0.7, 0.3});
    MarkovMeasure b = MarkovMeasure::bernoulli({0.4, 0.6});
    CHECK(std::abs(lyapunov(a, ind1) - lyapunov(b, ind1)) <= C * weak_metric(a, b));
}
