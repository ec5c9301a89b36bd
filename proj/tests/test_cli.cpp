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

// Runs the installed command-line tool as a subprocess.

#include <algorithm>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

using doctest::Approx;

namespace {

struct Result {
    int status;
    std::string out;
};

Result run(const std::string &args) {
    const std::string cmd = std::string(REDTIME_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::map<std::string, std::string> key_values(const std::string &text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq != std::string::npos && line[0] != '#') kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

std::vector<std::vector<std::string>> csv_rows(const std::string &text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

std::string tmp(const std::string &name) { return std::string(REDTIME_TEST_TMP) + "/" + name; }

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("analytic worked example") {
    const auto r = run("analytic --tau 0.01 --profile exponential --trials 800000");
    REQUIRE(r.status == 0);
    auto kv = key_values(r.out);
    CHECK(std::stod(kv["gamma"]) == Approx(0.695).epsilon(0.003));
    CHECK(std::stod(kv["expected_delta_n"]) == Approx(3104).epsilon(0.01));
    CHECK(std::stod(kv["min_trials"]) == Approx(65750).epsilon(0.01));
    CHECK(std::stod(kv["overlap_probability"]) == Approx(0.0199));
    CHECK(std::stod(kv["gamma_quadrature_error"]) <= 1e-9);
}

TEST_CASE("analytic edge cases") {
    auto kv = key_values(run("analytic --tau 0").out);
    CHECK(std::stod(kv["expected_delta_n"]) == 0.0);
    CHECK(kv["min_trials"] == "none");

    kv = key_values(run("analytic --tau 0.01 --profile linear").out);
    CHECK(std::stod(kv["gamma"]) == Approx(0.7361).epsilon(1e-3));

    kv = key_values(run("analytic --dt 1ns --delta-t 10ps --gamma 0.695 --trials 800000").out);
    CHECK(std::stod(kv["tau"]) == Approx(0.01));
    CHECK(std::stod(kv["expected_delta_n"]) == Approx(3104.4));

    kv = key_values(run("analytic --tau 0.01 --initial -").out);
    CHECK(std::stod(kv["p3_minus"]) > 0.5);
    CHECK(std::stod(kv["expected_delta_n"]) < 0.0);

    CHECK(run("analytic --tau 1.5").status == 1);
    CHECK(run("analytic --dt 1ns --delta-t 2ns").status == 1);
    CHECK(run("analytic").status == 1);
    CHECK(run("analytic --tau 0.1 --profile nope").status == 1);
    CHECK(run("--bogus-flag analytic").status == 1);
}

TEST_CASE("simulate is deterministic and consistent") {
    const std::string args = "simulate --seed 7 --tau 0.01 --trials 800000 --profile exponential --check";
    const auto a = run(args + " --threads 1");
    const auto b = run(args + " --threads 6");
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    auto kv = key_values(a.out);
    CHECK(std::abs(std::stod(kv["delta_n"]) - 3104.0) <= 3.0 * std::sqrt(800000.0));
    CHECK(kv["check"] == "pass");

    kv = key_values(run("simulate --seed 3 --tau 0.3 --trials 1000000 --profile sudden").out);
    CHECK(std::abs(std::stod(kv["z_score"])) < 4.0);
}

TEST_CASE("simulate check failure sets exit status 2") {
    // A zero-width band fails any run whose estimate is not exactly on the prediction.
    const auto r = run("simulate --seed 1 --tau 0.5 --trials 100001 --check --check-band 0");
    CHECK(r.status == 2);
    CHECK(key_values(r.out)["check"] == "fail");

    CHECK(run("simulate --tau 0.1 --trials 1000 --probing exp:0.2 --check").status == 1);
    CHECK(run("simulate --tau 0.1 --trials 1e12").status == 1);
}

TEST_CASE("simulate writes the trial log and stats CSV") {
    const auto log = tmp("cli_trials.csv");
    const auto out = tmp("cli_stats.csv");
    const auto r = run("simulate --tau 0.5 --trials 200 --log-trials " + log + " --out " + out);
    REQUIRE(r.status == 0);
    const auto rows = csv_rows(slurp(log));
    CHECK(rows.size() == 201);
    CHECK(rows[0].size() == 7);
    const auto stats = csv_rows(slurp(out));
    REQUIRE(stats.size() == 2);
    CHECK(stats[0][0] == "trials");
    CHECK(stats[1][0] == "200");
}

TEST_CASE("simulate repetitions") {
    const auto out = tmp("cli_reps.csv");
    const auto r = run("simulate --tau 0 --trials 20000 --seed 11 --reps 5 --out " + out);
    REQUIRE(r.status == 0);
    auto kv = key_values(r.out);
    CHECK(kv["reps"] == "5");
    CHECK(std::stoi(kv["reps_abs_z_below_4"]) + std::stoi(kv["reps_abs_z_above_3"]) >= 5);
    const auto rows = csv_rows(slurp(out));
    REQUIRE(rows.size() == 6);
    CHECK(rows[1][1] == "11");
    CHECK(rows[5][1] == "15");

    // Repetition r matches a plain run at seed + r.
    kv = key_values(run("simulate --tau 0 --trials 20000 --seed 14").out);
    CHECK(rows[4][6] == kv["delta_n"]);
    CHECK(run("simulate --tau 0 --trials 100 --reps 0").status == 1);
}

TEST_CASE("sweep rows") {
    auto r = run("sweep --taus 0.001,0.01,0.1 --profile exponential");
    REQUIRE(r.status == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 4);
    const auto h = rows[0];
    const auto col = [&](const std::string &name) {
        return static_cast<size_t>(std::find(h.begin(), h.end(), name) - h.begin());
    };
    for (size_t i = 1; i < rows.size(); ++i) {
        const double tau = std::stod(rows[i][col("tau")]);
        const double gamma = std::stod(rows[i][col("gamma")]);
        CHECK(std::stod(rows[i][col("delta_n_per_n")]) ==
              Approx((tau - tau * tau / 2) * (2 * gamma - 1)).epsilon(1e-12));
    }

    // A single point agrees with the analytic report.
    r = run("sweep --taus 0.01 --profile linear --trials-grid 800000");
    rows = csv_rows(r.out);
    REQUIRE(rows.size() == 2);
    auto kv = key_values(run("analytic --tau 0.01 --profile linear --trials 800000").out);
    CHECK(rows[1][col("gamma")] == kv["gamma"]);
    CHECK(rows[1][col("expected_delta_n")] == kv["expected_delta_n"]);
    CHECK(rows[1][col("min_trials")] == kv["min_trials"]);

    // z grows as √N.
    r = run("sweep --taus 0.01 --trials-grid 10000,40000,160000");
    rows = csv_rows(r.out);
    REQUIRE(rows.size() == 4);
    const double z1 = std::stod(rows[1][col("z_expected")]);
    CHECK(std::stod(rows[2][col("z_expected")]) == Approx(2 * z1));
    CHECK(std::stod(rows[3][col("z_expected")]) == Approx(4 * z1));

    r = run("sweep --taus 0.1 --gammas 0.5,0.7 --profiles sudden");
    CHECK(csv_rows(r.out).size() == 4);

    r = run("sweep --taus 0.1,0.5 --profiles linear --trials-grid 20000 --mc --seed 4");
    rows = csv_rows(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].back() == "mc_z");
    CHECK(rows[1].size() == rows[0].size());

    CHECK(run("sweep").status == 1);
    CHECK(run("sweep --taus 0.1 --gammas 0.7 --mc").status == 1);
}

TEST_CASE("gap-hist") {
    const auto r = run("gap-hist --samples 1000000 --bins 20 --seed 3");
    REQUIRE(r.status == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 21);
    CHECK(std::stod(rows[1][3]) == Approx(0.0975).epsilon(0.02));
    for (size_t i = 1; i < rows.size(); ++i) CHECK(std::abs(std::stod(rows[i][6])) < 4.0);

    const auto e = run("gap-hist --samples 20000 --probing exp:0.3");
    REQUIRE(e.status == 0);
    CHECK(csv_rows(e.out)[1][5].empty());
    CHECK(run("gap-hist --samples 10").status == 1);
}

TEST_CASE("power report") {
    const auto out = tmp("cli_power.csv");
    const auto r = run("power --tau 0.01 --gamma 0.695 --trials 800000 --observed 3100 --out " + out);
    REQUIRE(r.status == 0);
    auto kv = key_values(r.out);
    CHECK(std::stod(kv["fluctuation_scale"]) == Approx(894.427191));
    CHECK(std::stod(kv["worst_case_margin"]) == Approx(2210).epsilon(0.01));
    CHECK(std::stod(kv["observed_p_value_two_sided"]) == Approx(5.284e-4).epsilon(1e-3));
    CHECK(kv["n_required_strict"] == "65747");
    const auto rows = csv_rows(slurp(out));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].size() == rows[1].size());
}

TEST_CASE("config files and emit round trip") {
    const auto cfg = tmp("cli.cfg");
    {
        std::ofstream f(cfg);
        f << "# worked example\ntau=0.02\ntrials=800000\nprofile=linear\n";
    }
    const auto first = run("--config " + cfg + " --tau 0.01 --emit-config");
    REQUIRE(first.status == 0);
    CHECK(first.out == "tau=0.01\ntrials=800000\nprofile=linear\n");

    const auto emitted = tmp("cli_emitted.cfg");
    {
        std::ofstream f(emitted);
        f << first.out;
    }
    CHECK(run("--config " + emitted + " --emit-config").out == first.out);

    // Flags override the file.
    auto kv = key_values(run("analytic --config " + cfg + " --tau 0.01").out);
    CHECK(std::stod(kv["tau"]) == 0.01);
    CHECK(run("analytic --config /nonexistent.cfg").status == 1);
}
