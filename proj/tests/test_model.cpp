// Copyright 2026 The redtime Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "redtime/model.hpp"

#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"

using namespace redtime;
using doctest::Approx;

TEST_CASE("gap_density values") {
    CHECK(gap_density(0.0, 1.0) == 2.0);
    CHECK(gap_density(1.0, 1.0) == 0.0);
    CHECK(gap_density(0.5, 2.0) == Approx(0.75).epsilon(1e-15));
}

TEST_CASE("gap_density domain errors") {
    CHECK_THROWS_AS(gap_density(-0.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(gap_density(1.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(gap_density(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(gap_density(0.0, -1.0), std::domain_error);
}

TEST_CASE("gap_density integrates to one") {
    for (double window : {1.0, 2.0, 1e-9, 37.5}) {
        const double total = oracle::integrate([&](double y) { return gap_density(y, window); }, 0.0, window);
        CHECK(total == Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("overlap_probability values") {
    CHECK(overlap_probability(0.0) == 0.0);
    CHECK(overlap_probability(1.0) == 1.0);
    CHECK(overlap_probability(0.01) == Approx(0.0199).epsilon(1e-14));
    CHECK_THROWS_AS(overlap_probability(-1e-9), std::domain_error);
    CHECK_THROWS_AS(overlap_probability(1.5), std::domain_error);
}

TEST_CASE("overlap_probability equals the integrated gap density") {
    for (double window : {1.0, 3.0, 1e-9}) {
        for (double tau : {0.0, 0.001, 0.01, 0.1, 0.5, 0.9, 1.0}) {
            const double integral =
                oracle::integrate([&](double y) { return gap_density(y, window); }, 0.0, tau * window);
            CHECK(overlap_probability(tau) == Approx(integral).epsilon(1e-10));
        }
    }
}

TEST_CASE("overlap_probability is monotone") {
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
        const double p = overlap_probability(i / 1000.0);
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("rho_collapse is the unpolarized mixture") {
    const auto s = rho_collapse();
    CHECK(s.p_plus == 0.5);
    CHECK(s.p_minus == 0.5);
    CHECK(s.trace() == 1.0);
    CHECK(s.sigma3_expectation() == 0.0);
}

TEST_CASE("rho_reduced examples") {
    auto s = rho_reduced(0.0, 0.695);
    CHECK(s.p_plus == 0.5);
    CHECK(s.p_minus == 0.5);

    s = rho_reduced(0.01, 0.695);
    CHECK(s.p_plus == Approx(0.50194025).epsilon(1e-12));

    CHECK_THROWS_AS(rho_reduced(1.2, 0.5), std::domain_error);
    CHECK_THROWS_AS(rho_reduced(0.1, -0.1), std::domain_error);
}

TEST_CASE("rho_reduced properties over the domain box") {
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            const double tau = i / 20.0;
            const double gamma = j / 20.0;
            const auto plus = rho_reduced(tau, gamma, InitialSign::plus);
            const auto minus = rho_reduced(tau, gamma, InitialSign::minus);
            CHECK(plus.trace() == Approx(1.0).epsilon(1e-15));
            CHECK(plus.p_plus >= 0.0);
            CHECK(plus.p_plus <= 1.0);
            CHECK(plus.p_minus >= 0.0);
            CHECK(plus.p_minus <= 1.0);
            CHECK(minus.p_plus == plus.p_minus);
            CHECK(minus.p_minus == plus.p_plus);

            const auto half = rho_reduced(tau, 0.5, i % 2 ? InitialSign::plus : InitialSign::minus);
            CHECK(half.p_plus == rho_collapse().p_plus);
            CHECK(half.p_minus == rho_collapse().p_minus);
        }
    }
}

TEST_CASE("expected_delta_n examples") {
    CHECK(expected_delta_n(0.01, 0.695, 800000) == Approx(3104.4).epsilon(1e-12));
    CHECK(expected_delta_n(0.01, 0.735, 800000) == Approx(3741.2).epsilon(1e-12));
    for (double tau : {0.0, 0.3, 1.0}) {
        CHECK(expected_delta_n(tau, 0.5, 12345) == 0.0);
    }
    CHECK(expected_delta_n(0.01, 0.6, 10) > 0.0);
    CHECK(expected_delta_n(0.01, 0.4, 10) < 0.0);
}

TEST_CASE("expected_delta_n matches N(2 p3_plus - 1)") {
    for (double tau : {0.0, 0.01, 0.2, 0.7, 1.0}) {
        for (double gamma : {0.0, 0.3, 0.5, 0.695, 1.0}) {
            const std::uint64_t n = 800000;
            const double via_state = static_cast<double>(n) * (2.0 * rho_reduced(tau, gamma).p_plus - 1.0);
            CHECK(expected_delta_n(tau, gamma, n) == Approx(via_state).epsilon(1e-9));
        }
    }
}

TEST_CASE("small_tau_delta_n") {
    CHECK(small_tau_delta_n(0.01, 0.695, 800000) == Approx(3120.0).epsilon(1e-12));
    CHECK(small_tau_delta_n(0.0, 0.8, 800000) == 0.0);
    const double exact = expected_delta_n(0.01, 0.695, 800000);
    const double approx = small_tau_delta_n(0.01, 0.695, 800000);
    CHECK((approx - exact) / exact == Approx(0.005 / 0.995).epsilon(1e-10));
    for (double tau : {1e-4, 1e-3, 1e-2, 0.1}) {
        const double rel = (small_tau_delta_n(tau, 0.7, 1000) - expected_delta_n(tau, 0.7, 1000)) /
                           expected_delta_n(tau, 0.7, 1000);
        CHECK(rel <= tau / 2.0 + tau * tau);
    }
}

TEST_CASE("ExperimentConfig validation") {
    ExperimentConfig c;
    c.window_duration = 1e-9;
    c.reduction_time = 1e-11;
    c.trials = 10;
    CHECK_NOTHROW(c.validate());
    CHECK(c.tau() == Approx(0.01));

    c.reduction_time = 2e-9;
    CHECK_THROWS_AS(c.validate(), std::domain_error);
    c.reduction_time = -1.0;
    CHECK_THROWS_AS(c.validate(), std::domain_error);
    c.reduction_time = 0.0;
    c.trials = 0;
    CHECK_THROWS_AS(c.validate(), std::domain_error);
    CHECK(tau_from_times(1e-9, 1e-11) == Approx(0.01));
}

TEST_CASE("predict bundles the closed forms") {
    const auto p = predict(0.01, 0.695, 800000);
    CHECK(p.overlap_probability == overlap_probability(0.01));
    CHECK(p.p3_plus == rho_reduced(0.01, 0.695).p_plus);
    CHECK(p.expected_delta_n == expected_delta_n(0.01, 0.695, 800000));
}
