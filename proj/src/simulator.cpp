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

#include "qramforge/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <unordered_map>

#include "qramforge/error.hpp"

namespace qramforge {

SparseState::SparseState(std::size_t width, double prune_tolerance)
    : width_(width), prune_tolerance_(prune_tolerance) {
}

SparseState SparseState::basis(BasisBits bits, double prune_tolerance) {
    SparseState s(bits.width(), prune_tolerance);
    s.entries_.push_back(Entry{std::move(bits), Amplitude{1.0, 0.0}});
    return s;
}

std::vector<SparseState::Entry> SparseState::sorted_entries() const {
    std::vector<Entry> out = entries_;
    std::sort(out.begin(), out.end(), [](const Entry &a, const Entry &b) { return a.bits < b.bits; });
    return out;
}

Amplitude SparseState::amplitude(const BasisBits &bits) const {
    for (const Entry &e : entries_) {
        if (e.bits == bits) {
            return e.amplitude;
        }
    }
    return {};
}

double SparseState::norm_squared() const {
    double total = 0.0;
    for (const Entry &e : entries_) {
        total += std::norm(e.amplitude);
    }
    return total;
}

void SparseState::add(const BasisBits &bits, Amplitude amplitude) {
    if (bits.width() != width_) {
        throw Error(ErrorCode::Shape, "basis string width " + std::to_string(bits.width()) +
                                          " does not match state width " + std::to_string(width_));
    }
    for (auto it = entries_.begin(); it != entries_.end(); ++it) {
        if (it->bits == bits) {
            it->amplitude += amplitude;
            if (std::abs(it->amplitude) <= prune_tolerance_) {
                entries_.erase(it);
            }
            return;
        }
    }
    if (std::abs(amplitude) > prune_tolerance_) {
        entries_.push_back(Entry{bits, amplitude});
    }
}

void SparseState::scale(Amplitude factor) {
    for (Entry &e : entries_) {
        e.amplitude *= factor;
    }
    std::erase_if(entries_, [&](const Entry &e) { return std::abs(e.amplitude) <= prune_tolerance_; });
}

void SparseState::assign(std::vector<Entry> entries) {
    std::map<BasisBits, Amplitude> merged;
    for (Entry &e : entries) {
        merged[std::move(e.bits)] += e.amplitude;
    }
    entries_.clear();
    for (auto &[bits, amp] : merged) {
        if (std::abs(amp) > prune_tolerance_) {
            entries_.push_back(Entry{bits, amp});
        }
    }
}

Amplitude inner_product(const SparseState &a, const SparseState &b) {
    std::unordered_map<BasisBits, Amplitude> index;
    index.reserve(a.support_size());
    for (const auto &e : a.entries()) {
        index.emplace(e.bits, e.amplitude);
    }
    Amplitude total{};
    for (const auto &e : b.entries()) {
        if (auto it = index.find(e.bits); it != index.end()) {
            total += std::conj(it->second) * e.amplitude;
        }
    }
    return total;
}

double fidelity(const SparseState &a, const SparseState &b) {
    return std::norm(inner_product(a, b));
}

UnitaryTable::UnitaryTable(std::span<const UnitarySpec> unitaries) {
    if (unitaries.empty()) {
        return;
    }
    leaf_length_ = unitaries.front().leaf().length();
    by_leaf_.assign(std::size_t{1} << leaf_length_, nullptr);
    for (const UnitarySpec &u : unitaries) {
        if (u.leaf().length() != leaf_length_) {
            throw Error(ErrorCode::Configuration, "unitaries are attached to leaves of different depths");
        }
        by_leaf_[u.leaf().value()] = &u;
    }
}

const UnitarySpec &UnitaryTable::at(const NodeLabel &leaf) const {
    if (leaf.length() != leaf_length_ || leaf.value() >= by_leaf_.size() || by_leaf_[leaf.value()] == nullptr) {
        throw Error(ErrorCode::Configuration, "no unitary supplied for leaf '" + leaf.to_string() + "'");
    }
    return *by_leaf_[leaf.value()];
}

namespace {

void apply_opaque(SparseState &state, const Gate &gate, const UnitaryTable &unitaries) {
    const UnitarySpec &spec = unitaries.at(gate.leaf);
    if (spec.num_qubits() != gate.targets.size()) {
        throw Error(ErrorCode::Shape, "unitary for leaf '" + gate.leaf.to_string() + "' acts on " +
                                          std::to_string(spec.num_qubits()) + " qubits, gate has " +
                                          std::to_string(gate.targets.size()) + " targets");
    }
    const std::size_t control = index_of(gate.controls[0]);
    const Eigen::Index dim = spec.dimension();

    // Strings with the control set are grouped by their non-target bits; each
    // group is one input vector for the dense matrix.
    std::vector<SparseState::Entry> out;
    std::map<BasisBits, Eigen::VectorXcd> groups;
    for (const auto &e : state.entries()) {
        if (!e.bits.get(control)) {
            out.push_back(e);
            continue;
        }
        BasisBits rest = e.bits;
        std::uint64_t local = 0;
        for (std::size_t t = 0; t < gate.targets.size(); ++t) {
            const std::size_t q = index_of(gate.targets[t]);
            local |= static_cast<std::uint64_t>(rest.get(q)) << t;
            rest.set(q, false);
        }
        auto [it, fresh] = groups.try_emplace(std::move(rest));
        if (fresh) {
            it->second = Eigen::VectorXcd::Zero(dim);
        }
        it->second[static_cast<Eigen::Index>(local)] += e.amplitude;
    }
    for (const auto &[rest, input] : groups) {
        const Eigen::VectorXcd output = gate.dagger ? Eigen::VectorXcd(spec.matrix().adjoint() * input)
                                                    : Eigen::VectorXcd(spec.matrix() * input);
        for (Eigen::Index local = 0; local < dim; ++local) {
            if (std::abs(output[local]) <= state.prune_tolerance()) {
                continue;
            }
            BasisBits bits = rest;
            for (std::size_t t = 0; t < gate.targets.size(); ++t) {
                bits.set(index_of(gate.targets[t]), (static_cast<std::uint64_t>(local) >> t) & 1U);
            }
            out.push_back(SparseState::Entry{std::move(bits), output[local]});
        }
    }
    state.assign(std::move(out));
}

}  // namespace

SparseState apply_gate(SparseState state, const Gate &gate, const UnitaryTable &unitaries) {
    for (const auto *list : {&gate.controls, &gate.targets}) {
        for (Qubit q : *list) {
            if (index_of(q) >= state.width()) {
                throw Error(ErrorCode::Structure,
                            "gate touches qubit " + std::to_string(index_of(q)) + " outside the state");
            }
        }
    }
    switch (gate.kind) {
        case GateKind::PauliX: {
            const std::size_t t = index_of(gate.targets[0]);
            state.permute([&](BasisBits &b) { b.flip(t); });
            break;
        }
        case GateKind::CNOT: {
            const std::size_t c = index_of(gate.controls[0]);
            const std::size_t t = index_of(gate.targets[0]);
            state.permute([&](BasisBits &b) {
                if (b.get(c)) {
                    b.flip(t);
                }
            });
            break;
        }
        case GateKind::Toffoli: {
            const std::size_t c0 = index_of(gate.controls[0]);
            const std::size_t c1 = index_of(gate.controls[1]);
            const std::size_t t = index_of(gate.targets[0]);
            state.permute([&](BasisBits &b) {
                if (b.get(c0) && b.get(c1)) {
                    b.flip(t);
                }
            });
            break;
        }
        case GateKind::Fredkin: {
            const std::size_t c = index_of(gate.controls[0]);
            const std::size_t a = index_of(gate.targets[0]);
            const std::size_t t = index_of(gate.targets[1]);
            state.permute([&](BasisBits &b) {
                if (b.get(c)) {
                    b.swap_bits(a, t);
                }
            });
            break;
        }
        case GateKind::ControlledOpaque:
            apply_opaque(state, gate, unitaries);
            break;
    }
    return state;
}

SparseState run_circuit(SparseState state, const Circuit &circuit, const UnitaryTable &unitaries) {
    if (state.width() != circuit.layout().num_qubits()) {
        throw Error(ErrorCode::Shape, "state has " + std::to_string(state.width()) + " qubits, circuit has " +
                                          std::to_string(circuit.layout().num_qubits()));
    }
    for (const Moment &moment : circuit.moments()) {
        for (const Gate &gate : moment) {
            state = apply_gate(std::move(state), gate, unitaries);
        }
    }
    return state;
}

namespace {

void write_register(BasisBits &bits, const Register &reg, std::uint64_t value, std::string_view name) {
    if (reg.size < 64 && (value >> reg.size) != 0) {
        throw Error(ErrorCode::Shape, "value " + std::to_string(value) + " does not fit " + std::string(name) +
                                          " register of " + std::to_string(reg.size) + " qubits");
    }
    bits.write_range(reg.start, std::min<std::uint32_t>(reg.size, 64), value);
}

}  // namespace

SparseState basis_state(const RegisterMap &layout, const BasisAssignment &assignment) {
    BasisBits bits(layout.num_qubits());
    write_register(bits, layout.address(), assignment.address, "address");
    write_register(bits, layout.result(), assignment.result, "result");
    if (!assignment.mem.empty()) {
        if (assignment.mem.size() != layout.num_leaves()) {
            throw Error(ErrorCode::Shape, "expected " + std::to_string(layout.num_leaves()) + " mem values, got " +
                                              std::to_string(assignment.mem.size()));
        }
        for (std::uint64_t z = 0; z < layout.num_leaves(); ++z) {
            const NodeLabel leaf(layout.address_width(), z);
            write_register(bits, layout.mem(leaf), assignment.mem[z], "mem_" + leaf.to_string());
        }
    }
    return SparseState::basis(std::move(bits));
}

SparseState superpose(std::span<const std::pair<Amplitude, SparseState>> terms) {
    if (terms.empty()) {
        throw Error(ErrorCode::InvalidParameter, "superpose needs at least one term");
    }
    double norm = 0.0;
    for (const auto &[amp, s] : terms) {
        norm += std::norm(amp);
    }
    if (std::abs(norm - 1.0) > 1e-10) {
        throw Error(ErrorCode::InvalidParameter, "superposition amplitudes are not normalized (sum |a|^2 = " +
                                                     std::to_string(norm) + ")");
    }
    const std::size_t width = terms.front().second.width();
    std::vector<SparseState::Entry> entries;
    for (const auto &[amp, s] : terms) {
        if (s.width() != width) {
            throw Error(ErrorCode::Shape, "superposed states have different widths");
        }
        for (const auto &e : s.entries()) {
            entries.push_back(SparseState::Entry{e.bits, amp * e.amplitude});
        }
    }
    SparseState out(width, terms.front().second.prune_tolerance());
    out.assign(std::move(entries));
    return out;
}

}  // namespace qramforge
