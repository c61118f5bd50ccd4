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
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "qramforge/tree_layout.hpp"

namespace qramforge {

enum class GateKind { PauliX, CNOT, Toffoli, Fredkin, ControlledOpaque };

std::string_view to_string(GateKind kind);
GateKind parse_gate_kind(std::string_view text);

/// One gate of the tree circuit.
///
/// ControlledOpaque is |0><0| (x) I + |1><1| (x) U^leaf on (control; targets),
/// with targets listed as res_leaf then mem_leaf. `dagger` selects U^dagger.
struct Gate {
    GateKind kind = GateKind::PauliX;
    std::vector<Qubit> controls;
    std::vector<Qubit> targets;
    NodeLabel leaf;
    bool dagger = false;
    std::uint32_t declared_depth = 1;

    static Gate x(Qubit target);
    static Gate cnot(Qubit control, Qubit target);
    static Gate toffoli(Qubit control0, Qubit control1, Qubit target);
    static Gate fredkin(Qubit control, Qubit a, Qubit b);
    static Gate controlled_opaque(Qubit control, std::vector<Qubit> targets, NodeLabel leaf,
                                  std::uint32_t declared_depth = 1);

    /// Depth this gate contributes to its moment.
    std::uint32_t depth() const noexcept {
        return kind == GateKind::ControlledOpaque ? declared_depth : 1;
    }

    friend bool operator==(const Gate &, const Gate &) = default;
};

using Moment = std::vector<Gate>;

enum class AppendPolicy {
    /// Earliest moment after every earlier gate sharing a qubit.
    Asap,
    /// Always opens a fresh moment at the end.
    NewMoment,
};

/// Ordered list of moments over a shared register layout. Within a moment no
/// qubit is used twice, controls included.
class Circuit {
   public:
    explicit Circuit(std::shared_ptr<const RegisterMap> layout);
    explicit Circuit(RegisterMap layout);

    const RegisterMap &layout() const noexcept {
        return *layout_;
    }
    const std::shared_ptr<const RegisterMap> &layout_ptr() const noexcept {
        return layout_;
    }

    Circuit &append(Gate gate, AppendPolicy policy = AppendPolicy::Asap);
    /// Appends a whole moment at the end; its gates must be qubit-disjoint.
    Circuit &append_moment(Moment moment);

    std::span<const Moment> moments() const noexcept {
        return moments_;
    }
    std::size_t gate_count() const noexcept;
    bool empty() const noexcept {
        return moments_.empty();
    }

    friend bool operator==(const Circuit &a, const Circuit &b) {
        return *a.layout_ == *b.layout_ && a.moments_ == b.moments_;
    }

   private:
    void validate(const Gate &gate) const;

    std::shared_ptr<const RegisterMap> layout_;
    std::vector<Moment> moments_;
    // Per qubit: one past the index of the last moment using it (0 = unused).
    std::vector<std::uint32_t> frontier_;
};

struct GateCounts {
    std::uint64_t pauli_x = 0;
    std::uint64_t cnot = 0;
    std::uint64_t toffoli = 0;
    std::uint64_t fredkin = 0;
    std::uint64_t controlled_opaque = 0;

    std::uint64_t total() const noexcept {
        return pauli_x + cnot + toffoli + fredkin + controlled_opaque;
    }
    friend bool operator==(const GateCounts &, const GateCounts &) = default;
};

/// Sum over moments of the largest gate depth in the moment.
std::uint64_t depth(const Circuit &circuit);
/// Largest number of gates in any moment.
std::uint64_t width(const Circuit &circuit);
GateCounts gate_counts(const Circuit &circuit);

/// Reversed moments; opaque gates have their dagger flag toggled, the
/// remaining kinds are self-inverse.
Circuit adjoint(const Circuit &circuit);

/// Appends the gates of `second` to `first`. With NewMoment the moment
/// structure of `second` is kept as is; with Asap each gate is rescheduled.
/// Both circuits must share the same layout.
Circuit concat(const Circuit &first, const Circuit &second, AppendPolicy policy = AppendPolicy::NewMoment);

}  // namespace qramforge
