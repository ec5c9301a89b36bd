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

#include "redtime/config.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "text.hpp"

namespace redtime {

namespace {

constexpr std::array<std::string_view, 24> kKeys = {
    "window",  "window3", "reduction_time", "tau",     "trials",      "seed",    "initial", "profile",
    "gamma",   "probing", "probing3",       "safety_factor", "observed", "taus", "gammas", "profiles",
    "trials_grid", "mc",  "reps",           "samples", "bins",        "out",     "log_trials", "check",
};

std::invalid_argument bad_value(std::string_view key, std::string_view value) {
    return std::invalid_argument("invalid value '" + std::string(value) + "' for " + std::string(key));
}

}  // namespace

double parse_time_seconds(std::string_view text) {
    auto v = detail::parse_time(text);
    if (!v) throw std::invalid_argument("cannot parse time '" + std::string(text) + "'");
    return *v;
}

std::span<const std::string_view> RunSpec::keys() { return kKeys; }

bool RunSpec::is_key(std::string_view key) {
    return std::find(kKeys.begin(), kKeys.end(), key) != kKeys.end();
}

void RunSpec::set(std::string_view key, std::string_view value) {
    key = detail::trim(key);
    if (!is_key(key)) throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
    values_[std::string(key)] = std::string(detail::trim(value));
}

void RunSpec::unset(std::string_view key) {
    if (auto it = values_.find(key); it != values_.end()) values_.erase(it);
}

std::optional<std::string> RunSpec::get(std::string_view key) const {
    if (auto it = values_.find(key); it != values_.end()) return it->second;
    return std::nullopt;
}

void RunSpec::parse(std::string_view text) {
    std::size_t line_no = 0;
    for (auto line : detail::split_lines(text)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
        }
        set(line.substr(0, eq), line.substr(eq + 1));
    }
}

void RunSpec::load(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    parse(buf.str());
}

std::string RunSpec::emit() const {
    std::string out;
    for (auto key : kKeys) {
        if (auto v = get(key)) {
            out.append(key);
            out += '=';
            out += *v;
            out += '\n';
        }
    }
    return out;
}

double RunSpec::get_double(std::string_view key, double fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    auto d = detail::parse_double(*v);
    if (!d) throw bad_value(key, *v);
    return *d;
}

std::uint64_t RunSpec::get_u64(std::string_view key, std::uint64_t fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    auto n = detail::parse_u64(*v);
    if (!n) throw bad_value(key, *v);
    return *n;
}

bool RunSpec::get_bool(std::string_view key, bool fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    if (*v == "1" || *v == "true" || *v == "yes") return true;
    if (*v == "0" || *v == "false" || *v == "no") return false;
    throw bad_value(key, *v);
}

std::string RunSpec::get_string(std::string_view key, std::string_view fallback) const {
    return get(key).value_or(std::string(fallback));
}

std::vector<std::string> RunSpec::get_list(std::string_view key) const {
    std::vector<std::string> out;
    auto v = get(key);
    if (!v || v->empty()) return out;
    for (auto item : detail::split(*v, ',')) {
        if (item.empty()) throw bad_value(key, *v);
        out.emplace_back(item);
    }
    return out;
}

ExperimentConfig RunSpec::experiment() const {
    ExperimentConfig c;
    const auto window = get("window");
    const auto reduction = get("reduction_time");
    const auto tau = get("tau");
    if (reduction && tau) throw std::invalid_argument("give either reduction_time or tau, not both");
    if (reduction) {
        if (!window) throw std::invalid_argument("reduction_time needs a window duration");
        c.window_duration = parse_time_seconds(*window);
        c.reduction_time = parse_time_seconds(*reduction);
    } else if (tau) {
        // Only τ matters to the model, so a bare τ runs in units of the window.
        c.window_duration = window ? parse_time_seconds(*window) : 1.0;
        auto t = detail::parse_double(*tau);
        if (!t) throw bad_value("tau", *tau);
        if (!(*t >= 0.0 && *t <= 1.0)) throw std::domain_error("tau must lie in [0, 1]");
        c.reduction_time = *t * c.window_duration;
    } else {
        throw std::invalid_argument("a reduction time (reduction_time or tau) is required");
    }
    c.trials = get_u64("trials", 1'000'000);
    if (c.trials > kMaxTrials) {
        throw std::domain_error("trial count " + std::to_string(c.trials) + " exceeds the supported bound of " +
                                std::to_string(kMaxTrials));
    }
    c.seed = get_u64("seed", 1);
    const auto initial = get_string("initial", "+");
    if (initial == "+" || initial == "+1" || initial == "plus") {
        c.initial_sign = InitialSign::plus;
    } else if (initial == "-" || initial == "-1" || initial == "minus") {
        c.initial_sign = InitialSign::minus;
    } else {
        throw bad_value("initial", initial);
    }
    c.validate();
    return c;
}

ProbingPair RunSpec::devices() const {
    const double window = has("window") ? parse_time_seconds(*get("window")) : 1.0;
    const double window3 = has("window3") ? parse_time_seconds(*get("window3")) : window;
    const auto sigma1 = ProbingModel::from_name(get_string("probing", "uniform"), window);
    const auto sigma3 = ProbingModel::from_name(get_string("probing3", get_string("probing", "uniform")), window3);
    return {sigma1, sigma3};
}

}  // namespace redtime
