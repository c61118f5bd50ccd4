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

#include "qramforge/basis_bits.hpp"

#include "qramforge/error.hpp"

namespace qramforge {

BasisBits::BasisBits(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {
}

std::uint64_t BasisBits::read_range(std::size_t start, std::size_t count) const noexcept {
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < count; ++i) {
        value |= static_cast<std::uint64_t>(get(start + i)) << i;
    }
    return value;
}

void BasisBits::write_range(std::size_t start, std::size_t count, std::uint64_t value) noexcept {
    for (std::size_t i = 0; i < count; ++i) {
        set(start + i, (value >> i) & 1U);
    }
}

bool BasisBits::any_in_range(std::size_t start, std::size_t count) const noexcept {
    for (std::size_t i = 0; i < count; ++i) {
        if (get(start + i)) {
            return true;
        }
    }
    return false;
}

std::string BasisBits::to_string() const {
    std::string out(width_, '0');
    for (std::size_t i = 0; i < width_; ++i) {
        if (get(i)) {
            out[i] = '1';
        }
    }
    return out;
}

BasisBits BasisBits::from_string(std::string_view text) {
    BasisBits bits(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1') {
            bits.set(i, true);
        } else if (text[i] != '0') {
            throw Error(ErrorCode::InvalidParameter, "basis string may only contain '0' and '1'");
        }
    }
    return bits;
}

std::size_t BasisBits::hash() const noexcept {
    // splitmix-style mixing over the words
    std::uint64_t h = width_ * 0x9E3779B97F4A7C15ULL;
    for (std::uint64_t w : words_) {
        h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        h = (h ^ (h >> 31)) * 0xBF58476D1CE4E5B9ULL;
    }
    return static_cast<std::size_t>(h);
}

}  // namespace qramforge
