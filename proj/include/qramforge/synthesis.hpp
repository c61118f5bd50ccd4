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

#include "qramforge/circuit.hpp"
#include "qramforge/tree_layout.hpp"
#include "qramforge/unitary.hpp"

namespace qramforge {

enum class Variant {
    /// Result hand-down one result qubit at a time per node.
    Sequential,
    /// Result hand-down split into blocks of s qubits, each block controlled
    /// by its own CNOT copy of the child's life qubit.
    Fanout,
};

std::string_view to_string(Variant variant);
Variant parse_variant(std::string_view text);

struct SynthesisOptions {
    Variant variant = Variant::Sequential;
    /// Fan-out block size s; 0 selects ceil(sqrt(m)).
    std::uint32_t block_size = 0;
    /// Emit X on life of the root as the first moment (and, in Up, the last).
    bool include_preparation = true;
};

/// Resolved block size for result width m; throws unless 1 <= s <= m.
std::uint32_t effective_block_size(const SynthesisOptions &options, std::uint32_t m);

/// Copy ancillas per non-root node the variant needs (ceil(m/s) - 1 for
/// fan-out, 0 for sequential).
std::uint32_t copies_needed(const SynthesisOptions &options, std::uint32_t m);

/// The layout all phases are synthesized over: `layout` itself, or `layout`
/// extended with fan-out copy registers.
std::shared_ptr<const RegisterMap> synthesis_layout(const RegisterMap &layout, const SynthesisOptions &options);

/// Down phase: routes the address into per-node life flags and hands the
/// result register down the live path to res of the addressed leaf.
///
/// The address-routing gates (adr copies and life Toffolis) of every level are
/// emitted before the result hand-down of any level. The hand-down only reads
/// life qubits as controls, so this is the same unitary as the level-by-level
/// order, and ASAP scheduling then pipelines the hand-down across levels.
Circuit synth_down(const RegisterMap &layout, const SynthesisOptions &options = {});

/// Run phase: one moment of controlled U^z, controlled on life_z.
Circuit synth_run(const RegisterMap &layout, std::span<const std::uint32_t> declared_depths);
Circuit synth_run(const RegisterMap &layout, std::span<const UnitarySpec> unitaries);

/// Up phase, the exact adjoint of the Down phase.
Circuit synth_up(const RegisterMap &layout, const SynthesisOptions &options = {});

/// Down, Run and Up concatenated moment by moment.
Circuit synth_access(const RegisterMap &layout, std::span<const UnitarySpec> unitaries,
                     const SynthesisOptions &options = {});
Circuit synth_access(const RegisterMap &layout, std::span<const std::uint32_t> declared_depths,
                     const SynthesisOptions &options = {});

/// Result hand-down from every node of one level into its children, one
/// result qubit at a time.
Circuit sequential_handdown(std::span<const NodeLabel> level_nodes, const std::shared_ptr<const RegisterMap> &layout);

/// Result hand-down from every node of one level using a chain of life copies:
/// copy j is CNOT-ed from copy j-1 (copy 0 is the life qubit itself), block j
/// of s result qubits is swapped under copy j, then the chain is undone in
/// reverse. The layout must carry at least ceil(m/s)-1 copies per node.
Circuit fanout_handdown(std::span<const NodeLabel> level_nodes, const std::shared_ptr<const RegisterMap> &layout,
                        std::uint32_t block_size);

}  // namespace qramforge
