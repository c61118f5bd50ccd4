// Copyright 2026 The qramforge Authors
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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace qramforge {

/// A computational basis string over a fixed number of qubits. Bit i is the
/// value of physical qubit i.
class BasisBits {
   public:
    BasisBits() = default;
    explicit BasisBits(std::size_t width);

    std::size_t width() const noexcept {
        return width_;
    }

    bool get(std::size_t i) const noexcept {
        return (words_[i >> 6] >> (i & 63)) & 1U;
    }
    void set(std::size_t i, bool value) noexcept {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }
    void flip(std::size_t i) noexcept {
        words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
    }
    void swap_bits(std::size_t i, std::size_t j) noexcept {
        const bool a = get(i);
        const bool b = get(j);
        if (a != b) {
            flip(i);
            flip(j);
        }
    }

    /// Reads `count` consecutive bits starting at `start` as a little-endian
    /// integer. `count` must be at most 64.
    std::uint64_t read_range(std::size_t start, std::size_t count) const noexcept;
    void write_range(std::size_t start, std::size_t count, std::uint64_t value) noexcept;
    bool any_in_range(std::size_t start, std::size_t count) const noexcept;

    /// One character per qubit, qubit 0 first.
    std::string to_string() const;
    static BasisBits from_string(std::string_view text);

    std::size_t hash() const noexcept;

    friend bool operator==(const BasisBits &, const BasisBits &) = default;
    friend std::strong_ordering operator<=>(const BasisBits &a, const BasisBits &b) {
        if (auto c = a.width_ <=> b.width_; c != 0) {
            return c;
        }
        return a.words_ <=> b.words_;
    }

   private:
    std::size_t width_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace qramforge

template <>
struct std::hash<qramforge::BasisBits> {
    std::size_t operator()(const qramforge::BasisBits &bits) const noexcept {
        return bits.hash();
    }
};
