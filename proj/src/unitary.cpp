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

#include "qramforge/unitary.hpp"

#include <bit>
#include <string>

#include "qramforge/error.hpp"

namespace qramforge {

UnitarySpec::UnitarySpec(NodeLabel leaf, Matrix matrix, std::uint32_t declared_depth, double tolerance)
    : leaf_(leaf), matrix_(std::move(matrix)), declared_depth_(declared_depth) {
    const auto rows = static_cast<std::uint64_t>(matrix_.rows());
    if (rows == 0 || matrix_.rows() != matrix_.cols() || !std::has_single_bit(rows)) {
        throw Error(ErrorCode::Shape, "unitary for leaf '" + leaf_.to_string() +
                                          "' must be square with a power-of-two dimension");
    }
    if (declared_depth_ == 0) {
        throw Error(ErrorCode::InvalidParameter, "declared depth must be positive");
    }
    num_qubits_ = static_cast<std::uint32_t>(std::countr_zero(rows));
    const double err = unitarity_error(matrix_);
    if (!(err <= tolerance)) {
        throw Error(ErrorCode::Shape, "matrix for leaf '" + leaf_.to_string() + "' is not unitary (error " +
                                          std::to_string(err) + ")");
    }
}

double unitarity_error(const Matrix &u) {
    const Matrix gram = u.adjoint() * u;
    return (gram - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

void check_unitaries_match(const RegisterMap &layout, std::span<const UnitarySpec> unitaries) {
    if (unitaries.size() != layout.num_leaves()) {
        throw Error(ErrorCode::Shape, "expected " + std::to_string(layout.num_leaves()) + " unitaries, got " +
                                          std::to_string(unitaries.size()));
    }
    for (std::uint64_t z = 0; z < layout.num_leaves(); ++z) {
        const UnitarySpec &u = unitaries[z];
        const NodeLabel leaf(layout.address_width(), z);
        if (u.leaf() != leaf) {
            throw Error(ErrorCode::Shape, "unitary " + std::to_string(z) + " is attached to leaf '" +
                                              u.leaf().to_string() + "', expected '" + leaf.to_string() + "'");
        }
        const std::uint64_t want = std::uint64_t{layout.result_width()} + layout.mem_sizes()[z];
        if (u.num_qubits() != want) {
            throw Error(ErrorCode::Shape, "unitary for leaf '" + leaf.to_string() + "' acts on " +
                                              std::to_string(u.num_qubits()) + " qubits, expected " +
                                              std::to_string(want));
        }
    }
}

std::vector<std::uint32_t> declared_depths(std::span<const UnitarySpec> unitaries) {
    std::vector<std::uint32_t> out;
    out.reserve(unitaries.size());
    for (const auto &u : unitaries) {
        out.push_back(u.declared_depth());
    }
    return out;
}

}  // namespace qramforge
