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

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qramforge/basis_bits.hpp"
#include "qramforge/circuit.hpp"
#include "qramforge/unitary.hpp"

namespace qramforge {

inline constexpr double kDefaultPruneTolerance = 1e-14;

/// A state stored as basis strings with their amplitudes. Entries hold
/// distinct basis strings and no amplitude of magnitude <= the pruning
/// tolerance. Entry order is unspecified; `sorted_entries` gives a canonical
/// order.
class SparseState {
   public:
    struct Entry {
        BasisBits bits;
        Amplitude amplitude;
    };

    explicit SparseState(std::size_t width, double prune_tolerance = kDefaultPruneTolerance);

    static SparseState basis(BasisBits bits, double prune_tolerance = kDefaultPruneTolerance);

    std::size_t width() const noexcept {
        return width_;
    }
    double prune_tolerance() const noexcept {
        return prune_tolerance_;
    }
    std::size_t support_size() const noexcept {
        return entries_.size();
    }
    std::span<const Entry> entries() const noexcept {
        return entries_;
    }
    std::vector<Entry> sorted_entries() const;

    /// Amplitude of `bits`, zero when absent.
    Amplitude amplitude(const BasisBits &bits) const;
    double norm_squared() const;

    /// Adds `amplitude` to the entry for `bits` (merging and pruning).
    void add(const BasisBits &bits, Amplitude amplitude);
    void scale(Amplitude factor);

    /// Applies a basis permutation to every entry in place.
    template <typename Fn>
    void permute(Fn &&fn) {
        for (Entry &e : entries_) {
            fn(e.bits);
        }
    }

    /// Replaces the contents by `entries`, merging duplicates and pruning.
    void assign(std::vector<Entry> entries);

   private:
    std::size_t width_;
    double prune_tolerance_;
    std::vector<Entry> entries_;
};

/// <a|b>, conjugating `a`.
Amplitude inner_product(const SparseState &a, const SparseState &b);
double fidelity(const SparseState &a, const SparseState &b);

/// Leaf-indexed view of the unitaries a circuit's opaque gates refer to.
class UnitaryTable {
   public:
    UnitaryTable() = default;
    explicit UnitaryTable(std::span<const UnitarySpec> unitaries);

    /// Throws a configuration error when the leaf has no unitary.
    const UnitarySpec &at(const NodeLabel &leaf) const;

   private:
    std::vector<const UnitarySpec *> by_leaf_;
    std::uint32_t leaf_length_ = 0;
};

SparseState apply_gate(SparseState state, const Gate &gate, const UnitaryTable &unitaries);

/// Applies every moment in order; within a moment gates run in stored order.
SparseState run_circuit(SparseState state, const Circuit &circuit, const UnitaryTable &unitaries);

/// Register values of a basis input. Every value must fit its register.
struct BasisAssignment {
    std::uint64_t address = 0;
    std::uint64_t result = 0;
    /// One value per leaf (ascending), or empty for all zero.
    std::vector<std::uint64_t> mem;
};

/// Basis state over `layout` with the given data registers and every
/// ancilla at 0.
SparseState basis_state(const RegisterMap &layout, const BasisAssignment &assignment);

/// sum_i amplitude_i * state_i. The amplitude vector must have unit norm.
SparseState superpose(std::span<const std::pair<Amplitude, SparseState>> terms);

}  // namespace qramforge
