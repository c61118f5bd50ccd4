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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qramforge/circuit.hpp"
#include "qramforge/simulator.hpp"
#include "qramforge/synthesis.hpp"
#include "qramforge/unitary.hpp"

namespace qramforge {

inline constexpr std::string_view kCircuitFormat = "qramforge-circuit/1";
inline constexpr std::string_view kStateFormat = "qramforge-state/1";

/// Provenance recorded alongside a circuit.
struct DocumentInfo {
    Variant variant = Variant::Sequential;
    /// Fan-out block size actually used; 0 for the sequential variant.
    std::uint32_t block_size = 0;
    std::string family;
    std::optional<std::uint64_t> seed;

    friend bool operator==(const DocumentInfo &, const DocumentInfo &) = default;
};

struct CircuitDocument {
    DocumentInfo info;
    Circuit circuit;
    /// Present only when the document was written with matrices.
    std::vector<UnitarySpec> unitaries;
};

/// Serializes the layout table and the moments, with a metrics block. Keys
/// appear in a fixed order, so the output is byte-stable. Matrices are
/// written row-major as [re, im] pairs when `unitaries` is non-empty.
std::string emit_json(const Circuit &circuit, const DocumentInfo &info = {},
                      std::span<const UnitarySpec> unitaries = {});

/// Inverse of emit_json. Schema problems raise ErrorCode::Schema with the
/// offending field path (e.g. "moments[3][0].kind") or the line and column
/// of a syntax error.
CircuitDocument parse_json(std::string_view text);

/// Register layout on its own, in the same shape as the "registers" block of
/// a circuit document.
std::string layout_to_json(const RegisterMap &layout);

/// OpenQASM 2.0 text. One qreg per register, opaque gate declarations for
/// the per-leaf unitaries ("cu_z<label>", "cu_z<label>_dg" for the adjoint),
/// and a comment line before every moment.
std::string emit_qasm(const Circuit &circuit);

/// {format, width, entries: [{bitstring, re, im}]} with entries sorted by
/// basis string; bit i of the string is qubit i.
std::string state_to_json(const SparseState &state);

}  // namespace qramforge
