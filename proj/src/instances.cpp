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

// Instance families and the direct oracle for the access map.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>

#include "qramforge/error.hpp"
#include "qramforge/verifier.hpp"

namespace qramforge {

namespace {

// Dense matrices are only built for small targets.
constexpr std::uint32_t kMaxUnitaryQubits = 12;

void check_shape(std::uint32_t n, std::uint32_t m) {
    if (n == 0 || n > kMaxAddressWidth) {
        throw Error(ErrorCode::InvalidParameter, "address width n must be in [1, " + std::to_string(kMaxAddressWidth) +
                                                     "], got " + std::to_string(n));
    }
    if (m == 0) {
        throw Error(ErrorCode::InvalidParameter, "result width m must be at least 1");
    }
}

void check_target_qubits(std::uint64_t qubits) {
    if (qubits > kMaxUnitaryQubits) {
        throw Error(ErrorCode::ResourceLimit, "dense unitary on " + std::to_string(qubits) +
                                                  " qubits exceeds the limit of " +
                                                  std::to_string(kMaxUnitaryQubits));
    }
}

Matrix permutation_matrix(Eigen::Index dim, auto &&image) {
    Matrix u = Matrix::Zero(dim, dim);
    for (Eigen::Index in = 0; in < dim; ++in) {
        u(static_cast<Eigen::Index>(image(static_cast<std::uint64_t>(in))), in) = 1.0;
    }
    return u;
}

}  // namespace

std::string_view to_string(Family family) {
    switch (family) {
        case Family::Qram:
            return "qram";
        case Family::TableLookup:
            return "lookup";
        case Family::Rotation:
            return "rotation";
        case Family::Random:
            return "random";
        case Family::Custom:
            return "custom";
    }
    return "?";
}

Family parse_family(std::string_view text) {
    if (text == "qram") {
        return Family::Qram;
    }
    if (text == "lookup" || text == "table_lookup") {
        return Family::TableLookup;
    }
    if (text == "rotation") {
        return Family::Rotation;
    }
    if (text == "random") {
        return Family::Random;
    }
    if (text == "custom") {
        return Family::Custom;
    }
    throw Error(ErrorCode::InvalidParameter, "unknown instance family '" + std::string(text) + "'");
}

RegisterMap InstanceSpec::layout() const {
    return RegisterMap::allocate(n, m, k);
}

std::string InstanceSpec::summary() const {
    std::ostringstream out;
    out << to_string(family) << " n=" << n << " m=" << m << " k=";
    const bool uniform = std::adjacent_find(k.begin(), k.end(), std::not_equal_to<>()) == k.end();
    if (uniform && !k.empty()) {
        out << k.front();
    } else {
        for (std::size_t i = 0; i < k.size(); ++i) {
            out << (i ? "," : "") << k[i];
        }
    }
    if (seed) {
        out << " seed=" << *seed;
    }
    return out.str();
}

InstanceSpec build_qram_instance(std::uint32_t n, std::uint32_t m) {
    check_shape(n, m);
    check_target_qubits(2ULL * m);
    InstanceSpec inst;
    inst.n = n;
    inst.m = m;
    inst.k.assign(std::size_t{1} << n, m);
    inst.family = Family::Qram;
    const std::uint64_t low = (std::uint64_t{1} << m) - 1;
    const Matrix u = permutation_matrix(Eigen::Index{1} << (2 * m), [&](std::uint64_t in) {
        const std::uint64_t r = in & low;
        const std::uint64_t s = in >> m;
        return (r ^ s) | (s << m);
    });
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
        inst.unitaries.emplace_back(NodeLabel(n, z), u);
    }
    return inst;
}

InstanceSpec build_table_lookup(std::uint32_t n, std::uint32_t m, std::vector<std::uint64_t> f) {
    check_shape(n, m);
    check_target_qubits(m);
    const std::uint64_t leaves = std::uint64_t{1} << n;
    if (f.size() != leaves) {
        throw Error(ErrorCode::Shape,
                    "lookup table needs " + std::to_string(leaves) + " entries, got " + std::to_string(f.size()));
    }
    InstanceSpec inst;
    inst.n = n;
    inst.m = m;
    inst.k.assign(leaves, 0);
    inst.family = Family::TableLookup;
    for (std::uint64_t z = 0; z < leaves; ++z) {
        if ((f[z] >> m) != 0) {
            throw Error(ErrorCode::Shape, "f(" + std::to_string(z) + ") = " + std::to_string(f[z]) +
                                              " is wider than m=" + std::to_string(m) + " bits");
        }
        const std::uint64_t mask = f[z];
        inst.unitaries.emplace_back(
            NodeLabel(n, z), permutation_matrix(Eigen::Index{1} << m, [&](std::uint64_t r) { return r ^ mask; }));
    }
    inst.table = std::move(f);
    return inst;
}

InstanceSpec build_random_table_lookup(std::uint32_t n, std::uint32_t m, std::uint64_t seed) {
    check_shape(n, m);
    check_target_qubits(m);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> value(0, (std::uint64_t{1} << m) - 1);
    std::vector<std::uint64_t> f(std::size_t{1} << n);
    for (auto &v : f) {
        v = value(rng);
    }
    InstanceSpec inst = build_table_lookup(n, m, std::move(f));
    inst.seed = seed;
    return inst;
}

InstanceSpec build_rotation_instance(std::uint32_t n, std::uint32_t mem_width) {
    check_shape(n, mem_width);
    check_target_qubits(1ULL + mem_width);
    InstanceSpec inst;
    inst.n = n;
    inst.m = 1;
    inst.k.assign(std::size_t{1} << n, mem_width);
    inst.family = Family::Rotation;
    const Eigen::Index dim = Eigen::Index{2} << mem_width;
    Matrix u = Matrix::Zero(dim, dim);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << mem_width); ++v) {
        double mu = 0.0;
        for (std::uint32_t i = 0; i < mem_width; ++i) {
            if ((v >> i) & 1U) {
                mu += std::ldexp(1.0, -static_cast<int>(i) - 1);
            }
        }
        const double c = std::cos(std::numbers::pi * mu);
        const double s = std::sin(std::numbers::pi * mu);
        const auto base = static_cast<Eigen::Index>(v << 1);
        u(base, base) = c;
        u(base + 1, base + 1) = c;
        u(base, base + 1) = Amplitude(0.0, -s);
        u(base + 1, base) = Amplitude(0.0, -s);
    }
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
        inst.unitaries.emplace_back(NodeLabel(n, z), u);
    }
    return inst;
}

Matrix random_unitary(Eigen::Index dimension, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix z(dimension, dimension);
    for (Eigen::Index c = 0; c < dimension; ++c) {
        for (Eigen::Index r = 0; r < dimension; ++r) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            z(r, c) = Amplitude(re, im) / std::numbers::sqrt2;
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ() * Matrix::Identity(dimension, dimension);
    const Matrix &packed = qr.matrixQR();
    for (Eigen::Index i = 0; i < dimension; ++i) {
        const Amplitude d = packed(i, i);
        const double mag = std::abs(d);
        q.col(i) *= mag > 0.0 ? d / mag : Amplitude(1.0);
    }
    return q;
}

InstanceSpec build_random_instance(std::uint32_t n, std::uint32_t m, std::vector<std::uint32_t> k,
                                   std::uint64_t seed, std::uint32_t declared_depth) {
    check_shape(n, m);
    const std::uint64_t leaves = std::uint64_t{1} << n;
    if (k.size() != leaves) {
        throw Error(ErrorCode::Shape,
                    "expected " + std::to_string(leaves) + " memory sizes, got " + std::to_string(k.size()));
    }
    InstanceSpec inst;
    inst.n = n;
    inst.m = m;
    inst.family = Family::Random;
    inst.seed = seed;
    std::mt19937_64 rng(seed);
    for (std::uint64_t z = 0; z < leaves; ++z) {
        check_target_qubits(std::uint64_t{m} + k[z]);
        inst.unitaries.emplace_back(NodeLabel(n, z), random_unitary(Eigen::Index{1} << (m + k[z]), rng),
                                    declared_depth);
    }
    inst.k = std::move(k);
    return inst;
}

InstanceSpec build_custom_instance(std::uint32_t n, std::uint32_t m, std::vector<std::uint32_t> k,
                                   std::vector<UnitarySpec> unitaries) {
    check_shape(n, m);
    InstanceSpec inst;
    inst.n = n;
    inst.m = m;
    inst.k = std::move(k);
    inst.family = Family::Custom;
    inst.unitaries = std::move(unitaries);
    check_unitaries_match(inst.layout(), inst.unitaries);
    return inst;
}

InstanceShape family_shape(Family family, std::uint32_t n, std::uint32_t m, std::vector<std::uint32_t> k) {
    check_shape(n, m);
    const std::size_t leaves = std::size_t{1} << n;
    switch (family) {
        case Family::Qram:
            return {n, m, std::vector<std::uint32_t>(leaves, m)};
        case Family::TableLookup:
            return {n, m, std::vector<std::uint32_t>(leaves, 0)};
        case Family::Rotation:
            return {n, 1, std::vector<std::uint32_t>(leaves, m)};
        case Family::Random:
            if (k.empty()) {
                k.assign(leaves, 0);
            }
            if (k.size() != leaves) {
                throw Error(ErrorCode::Shape,
                            "expected " + std::to_string(leaves) + " memory sizes, got " + std::to_string(k.size()));
            }
            return {n, m, std::move(k)};
        case Family::Custom:
            break;
    }
    throw Error(ErrorCode::Configuration, "custom instances carry their own matrices and have no implied shape");
}

InstanceSpec build_instance(Family family, std::uint32_t n, std::uint32_t m, std::vector<std::uint32_t> k,
                            std::uint64_t seed, std::uint32_t declared_depth) {
    InstanceSpec inst;
    switch (family) {
        case Family::Qram:
            inst = build_qram_instance(n, m);
            break;
        case Family::TableLookup:
            inst = build_random_table_lookup(n, m, seed);
            break;
        case Family::Rotation:
            inst = build_rotation_instance(n, m);
            break;
        case Family::Random: {
            InstanceShape shape = family_shape(family, n, m, std::move(k));
            return build_random_instance(n, m, std::move(shape.k), seed, declared_depth);
        }
        case Family::Custom:
            throw Error(ErrorCode::Configuration, "custom instances must be built from explicit matrices");
    }
    if (declared_depth != 1) {
        std::vector<UnitarySpec> redeclared;
        for (const UnitarySpec &u : inst.unitaries) {
            redeclared.emplace_back(u.leaf(), u.matrix(), declared_depth);
        }
        inst.unitaries = std::move(redeclared);
    }
    return inst;
}

std::size_t data_width(const InstanceSpec &instance) {
    return std::size_t{instance.n} + instance.m +
           std::accumulate(instance.k.begin(), instance.k.end(), std::size_t{0});
}

SparseState oracle_effect(const InstanceSpec &instance, const BasisAssignment &input) {
    const std::uint64_t leaves = std::uint64_t{1} << instance.n;
    if (input.address >= leaves) {
        throw Error(ErrorCode::InvalidParameter, "address " + std::to_string(input.address) + " is out of range for n=" +
                                                     std::to_string(instance.n));
    }
    if (instance.m < 64 && (input.result >> instance.m) != 0) {
        throw Error(ErrorCode::Shape, "result value does not fit m=" + std::to_string(instance.m) + " bits");
    }
    if (!input.mem.empty() && input.mem.size() != leaves) {
        throw Error(ErrorCode::Shape, "expected " + std::to_string(leaves) + " mem values");
    }
    auto mem_of = [&](std::uint64_t z) -> std::uint64_t { return input.mem.empty() ? 0 : input.mem[z]; };

    // Data bit offsets: address, result, then each mem_z in leaf order.
    std::vector<std::size_t> mem_offset(leaves);
    std::size_t offset = std::size_t{instance.n} + instance.m;
    for (std::uint64_t z = 0; z < leaves; ++z) {
        mem_offset[z] = offset;
        offset += instance.k[z];
        if (instance.k[z] < 64 && (mem_of(z) >> instance.k[z]) != 0) {
            throw Error(ErrorCode::Shape, "mem value for leaf " + std::to_string(z) + " does not fit its register");
        }
    }

    BasisBits base(offset);
    base.write_range(0, instance.n, input.address);
    for (std::uint64_t z = 0; z < leaves; ++z) {
        base.write_range(mem_offset[z], instance.k[z], mem_of(z));
    }

    const std::uint64_t y = input.address;
    const UnitarySpec &u = instance.unitaries.at(y);
    const std::uint32_t ky = instance.k[y];
    const std::uint64_t column = input.result | (mem_of(y) << instance.m);
    const std::uint64_t result_mask = (std::uint64_t{1} << instance.m) - 1;

    SparseState out(offset);
    for (Eigen::Index row = 0; row < u.dimension(); ++row) {
        const Amplitude a = u.matrix()(row, static_cast<Eigen::Index>(column));
        if (std::abs(a) <= out.prune_tolerance()) {
            continue;
        }
        const auto r = static_cast<std::uint64_t>(row);
        BasisBits bits = base;
        bits.write_range(instance.n, instance.m, r & result_mask);
        bits.write_range(mem_offset[y], ky, r >> instance.m);
        out.add(bits, a);
    }
    return out;
}

Projection project_to_data(const SparseState &state, const RegisterMap &layout) {
    const std::vector<Qubit> data = layout.data_qubits();
    std::vector<bool> is_data(layout.num_qubits(), false);
    for (Qubit q : data) {
        is_data[index_of(q)] = true;
    }
    Projection p{SparseState(data.size(), state.prune_tolerance()), 0.0};
    std::vector<SparseState::Entry> kept;
    for (const auto &e : state.entries()) {
        bool clean = true;
        for (std::size_t q = 0; q < layout.num_qubits() && clean; ++q) {
            clean = is_data[q] || !e.bits.get(q);
        }
        if (!clean) {
            p.ancilla_residual += std::norm(e.amplitude);
            continue;
        }
        BasisBits bits(data.size());
        for (std::size_t i = 0; i < data.size(); ++i) {
            bits.set(i, e.bits.get(index_of(data[i])));
        }
        kept.push_back(SparseState::Entry{std::move(bits), e.amplitude});
    }
    p.data.assign(std::move(kept));
    return p;
}

}  // namespace qramforge
