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
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qramforge/simulator.hpp"
#include "qramforge/synthesis.hpp"
#include "qramforge/unitary.hpp"

namespace qramforge {

enum class Family { Qram, TableLookup, Rotation, Random, Custom };

std::string_view to_string(Family family);
/// Accepts "qram", "lookup" (or "table_lookup"), "rotation", "random", "custom".
Family parse_family(std::string_view text);

/// An access problem: tree shape plus one unitary per leaf.
struct InstanceSpec {
    std::uint32_t n = 0;
    std::uint32_t m = 0;
    std::vector<std::uint32_t> k;
    Family family = Family::Custom;
    std::optional<std::uint64_t> seed;
    /// f(z) per leaf for the table-lookup family.
    std::vector<std::uint64_t> table;
    std::vector<UnitarySpec> unitaries;

    RegisterMap layout() const;
    std::string summary() const;
};

/// k_z = m and U^z XORs mem_z into the result: |r, s> -> |r ^ s, s>.
InstanceSpec build_qram_instance(std::uint32_t n, std::uint32_t m);

/// k_z = 0 and U^z = X^{f(z)} on the result bits, so the access maps r to
/// r ^ f(y). `f` has one m-bit value per leaf.
InstanceSpec build_table_lookup(std::uint32_t n, std::uint32_t m, std::vector<std::uint64_t> f);
InstanceSpec build_random_table_lookup(std::uint32_t n, std::uint32_t m, std::uint64_t seed);

/// Result width 1, k_z = mem_width. For each basis value of mem_z read as the
/// fixed-point fraction mu = sum_i mem[i] 2^-(i+1), applies exactly
/// exp(-i pi mu X) = cos(pi mu) I - i sin(pi mu) X to the result qubit.
InstanceSpec build_rotation_instance(std::uint32_t n, std::uint32_t mem_width);

/// Seeded Haar-like unitaries: a complex Gaussian matrix orthonormalized by
/// QR, with the phases of R's diagonal divided out.
InstanceSpec build_random_instance(std::uint32_t n, std::uint32_t m, std::vector<std::uint32_t> k,
                                   std::uint64_t seed, std::uint32_t declared_depth = 1);

InstanceSpec build_custom_instance(std::uint32_t n, std::uint32_t m, std::vector<std::uint32_t> k,
                                   std::vector<UnitarySpec> unitaries);

Matrix random_unitary(Eigen::Index dimension, std::mt19937_64 &rng);

/// Register shape a family induces from user parameters: qram forces
/// k_z = m, lookup forces k_z = 0, rotation uses result width 1 with
/// k_z = m, random keeps `k`. Custom instances have no implied shape.
struct InstanceShape {
    std::uint32_t n = 0;
    std::uint32_t m = 0;
    std::vector<std::uint32_t> k;
};
InstanceShape family_shape(Family family, std::uint32_t n, std::uint32_t m, std::vector<std::uint32_t> k);

/// Dispatches to the family builders. The lookup family draws f from `seed`.
InstanceSpec build_instance(Family family, std::uint32_t n, std::uint32_t m, std::vector<std::uint32_t> k,
                            std::uint64_t seed, std::uint32_t declared_depth = 1);

/// Width of the data-register state: n + m + sum k_z. Bit order is address,
/// result, then mem_z for ascending z.
std::size_t data_width(const InstanceSpec &instance);

/// |y> U^y(|r>|mem_y>) with every other mem_z untouched, over the data
/// registers only. Computed directly from the matrices, without circuits.
SparseState oracle_effect(const InstanceSpec &instance, const BasisAssignment &input);

struct Projection {
    SparseState data;
    /// Probability mass on strings with some ancilla qubit set.
    double ancilla_residual = 0.0;
};

/// Drops the ancilla qubits of a circuit-level state, keeping only strings
/// whose ancillas are all zero.
Projection project_to_data(const SparseState &state, const RegisterMap &layout);

struct Tolerances {
    double fidelity = 1e-10;
    double residual = 1e-12;
    /// Largest allowed |amplitude difference| in amplitude-level comparisons.
    double amplitude = 1e-10;
};

enum class CaseMode { Exhaustive, Random };

struct CaseSet {
    CaseMode mode = CaseMode::Exhaustive;
    /// Random mode: number of cases. Exhaustive mode: minimum per address.
    std::size_t count = 8;
    std::uint64_t seed = 1;
};

/// Exhaustive: for every address, all (result, mem) assignments when there
/// are at most 64 of them; otherwise all (result, mem_y) pairs (up to 64)
/// with the other mem registers filled pseudo-randomly, topped up with random
/// assignments to at least `count`.
std::vector<BasisAssignment> enumerate_cases(const InstanceSpec &instance, const CaseSet &cases);

struct CaseResult {
    std::string label;
    double fidelity = 0.0;
    double ancilla_residual = 0.0;
    /// Largest |amplitude difference| against the reference, where computed.
    double distance = 0.0;
    bool address_preserved = true;
    bool memory_preserved = true;
    bool passed = false;
    std::string error;
};

struct VerificationReport {
    std::string check;
    std::string instance;
    Tolerances tolerances;
    std::vector<CaseResult> cases;
    double min_fidelity = 1.0;
    double max_residual = 0.0;
    double max_distance = 0.0;
    bool passed = true;
    double seconds = 0.0;

    std::size_t failures() const;
    std::string to_json() const;
    std::string to_table() const;
};

/// Simulates the access circuit on every case and compares against the
/// oracle: fidelity, ancilla restoration, address and non-selected memory
/// preservation.
VerificationReport check_proposition(const InstanceSpec &instance, const SynthesisOptions &options,
                                     const CaseSet &cases, const Tolerances &tolerances = {});

/// Same checks on a caller-supplied circuit (e.g. one read from a file). The
/// circuit's layout must match the instance's n, m and k.
VerificationReport check_proposition(const InstanceSpec &instance, const Circuit &circuit, const CaseSet &cases,
                                     const Tolerances &tolerances = {});

/// Linearity over addresses: one uniform superposition over all addresses
/// plus `two_term_cases` random two-term superpositions.
VerificationReport check_superposition(const InstanceSpec &instance, const SynthesisOptions &options,
                                       std::size_t two_term_cases, std::uint64_t seed,
                                       const Tolerances &tolerances = {});

/// Sequential and fan-out circuits agree amplitude by amplitude.
VerificationReport check_variant_agreement(const InstanceSpec &instance, const CaseSet &cases,
                                           const Tolerances &tolerances = {}, std::uint32_t block_size = 0);

/// Running the access circuit twice returns every basis input (for
/// involutive instances such as qram).
VerificationReport check_double_access(const InstanceSpec &instance, const SynthesisOptions &options,
                                       const CaseSet &cases, const Tolerances &tolerances = {});

}  // namespace qramforge
