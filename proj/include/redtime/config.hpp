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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "redtime/mc.hpp"
#include "redtime/model.hpp"

namespace redtime {

/// Trial counts above this are rejected before any simulation starts.
inline constexpr std::uint64_t kMaxTrials = 100'000'000'000ULL;

/// Flat `key=value` run description with `#` comments.
///
/// Values are kept as text. Emitting a parsed file reproduces it
/// byte for byte, and typed accessors interpret values on demand. Later `set`
/// calls override earlier ones, which is how command-line flags take
/// precedence over a config file.
class RunSpec {
public:
    /// Known keys, in emission order.
    static std::span<const std::string_view> keys();
    static bool is_key(std::string_view key);

    void set(std::string_view key, std::string_view value);
    void unset(std::string_view key);
    std::optional<std::string> get(std::string_view key) const;
    bool has(std::string_view key) const { return get(key).has_value(); }

    void parse(std::string_view text);
    void load(const std::filesystem::path &path);
    std::string emit() const;

    /// Window, reduction time (from `reduction_time` or `tau`), trials,
    /// initial sign and seed. Throws std::invalid_argument on missing or
    /// malformed values and std::domain_error on out-of-range ones.
    ExperimentConfig experiment() const;

    /// σ₁ device from `probing`; σ₃ from `probing3` when present, otherwise the same.
    ProbingPair devices() const;

    double get_double(std::string_view key, double fallback) const;
    std::uint64_t get_u64(std::string_view key, std::uint64_t fallback) const;
    bool get_bool(std::string_view key, bool fallback) const;
    std::string get_string(std::string_view key, std::string_view fallback) const;
    /// Comma-separated list; empty when unset.
    std::vector<std::string> get_list(std::string_view key) const;

private:
    std::map<std::string, std::string, std::less<>> values_;
};

/// Seconds from text such as "1ns", "10ps" or "2.5e-9".
double parse_time_seconds(std::string_view text);

}  // namespace redtime
