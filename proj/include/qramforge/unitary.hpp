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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qramforge/tree_layout.hpp"

namespace qramforge {

using Amplitude = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// The per-leaf unitary U^z acting on (res_z, mem_z).
///
/// Basis index convention: the local index of a basis string is
/// sum_t bit(target t) << t over the target list res_z[0..m-1] followed by
/// mem_z[0..k_z-1], so index = result_value | (mem_value << m).
class UnitarySpec {
   public:
    UnitarySpec(NodeLabel leaf, Matrix matrix, std::uint32_t declared_depth = 1, double tolerance = 1e-10);

    const NodeLabel &leaf() const noexcept {
        return leaf_;
    }
    const Matrix &matrix() const noexcept {
        return matrix_;
    }
    std::uint32_t declared_depth() const noexcept {
        return declared_depth_;
    }
    std::uint32_t num_qubits() const noexcept {
        return num_qubits_;
    }
    Eigen::Index dimension() const noexcept {
        return matrix_.rows();
    }

   private:
    NodeLabel leaf_;
    Matrix matrix_;
    std::uint32_t declared_depth_;
    std::uint32_t num_qubits_;
};

/// max_ij |(U^dagger U - I)_ij|
double unitarity_error(const Matrix &u);

/// Checks that `unitaries` holds exactly one spec per leaf of `layout`, in
/// ascending leaf order, each of dimension 2^(m + k_z).
void check_unitaries_match(const RegisterMap &layout, std::span<const UnitarySpec> unitaries);

std::vector<std::uint32_t> declared_depths(std::span<const UnitarySpec> unitaries);

}  // namespace qramforge
