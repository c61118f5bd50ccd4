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

#include "qramforge/circuit.hpp"

#include <algorithm>
#include <string>

#include "qramforge/error.hpp"

namespace qramforge {

std::string_view to_string(GateKind kind) {
    switch (kind) {
        case GateKind::PauliX:
            return "x";
        case GateKind::CNOT:
            return "cnot";
        case GateKind::Toffoli:
            return "toffoli";
        case GateKind::Fredkin:
            return "fredkin";
        case GateKind::ControlledOpaque:
            return "controlled_opaque";
    }
    return "?";
}

GateKind parse_gate_kind(std::string_view text) {
    for (auto kind :
         {GateKind::PauliX, GateKind::CNOT, GateKind::Toffoli, GateKind::Fredkin, GateKind::ControlledOpaque}) {
        if (to_string(kind) == text) {
            return kind;
        }
    }
    throw Error(ErrorCode::Schema, "unknown gate kind '" + std::string(text) + "'");
}

Gate Gate::x(Qubit target) {
    Gate g;
    g.targets = {target};
    return g;
}

Gate Gate::cnot(Qubit control, Qubit target) {
    Gate g;
    g.kind = GateKind::CNOT;
    g.controls = {control};
    g.targets = {target};
    return g;
}

Gate Gate::toffoli(Qubit control0, Qubit control1, Qubit target) {
    Gate g;
    g.kind = GateKind::Toffoli;
    g.controls = {control0, control1};
    g.targets = {target};
    return g;
}

Gate Gate::fredkin(Qubit control, Qubit a, Qubit b) {
    Gate g;
    g.kind = GateKind::Fredkin;
    g.controls = {control};
    g.targets = {a, b};
    return g;
}

Gate Gate::controlled_opaque(Qubit control, std::vector<Qubit> targets, NodeLabel leaf,
                             std::uint32_t declared_depth) {
    Gate g;
    g.kind = GateKind::ControlledOpaque;
    g.controls = {control};
    g.targets = std::move(targets);
    g.leaf = leaf;
    g.declared_depth = declared_depth;
    return g;
}

Circuit::Circuit(std::shared_ptr<const RegisterMap> layout)
    : layout_(std::move(layout)), frontier_(layout_->num_qubits(), 0) {
}

Circuit::Circuit(RegisterMap layout) : Circuit(std::make_shared<const RegisterMap>(std::move(layout))) {
}

void Circuit::validate(const Gate &gate) const {
    std::size_t want_controls = 0;
    std::size_t want_targets = 1;
    switch (gate.kind) {
        case GateKind::PauliX:
            break;
        case GateKind::CNOT:
            want_controls = 1;
            break;
        case GateKind::Toffoli:
            want_controls = 2;
            break;
        case GateKind::Fredkin:
            want_controls = 1;
            want_targets = 2;
            break;
        case GateKind::ControlledOpaque:
            want_controls = 1;
            want_targets = gate.targets.size();
            if (gate.declared_depth == 0) {
                throw Error(ErrorCode::Structure, "controlled opaque gate needs a positive declared depth");
            }
            break;
    }
    if (gate.controls.size() != want_controls || gate.targets.size() != want_targets || want_targets == 0) {
        throw Error(ErrorCode::Structure, std::string(to_string(gate.kind)) + " gate has the wrong number of qubits");
    }
    std::vector<std::uint32_t> seen;
    seen.reserve(gate.controls.size() + gate.targets.size());
    for (const auto *list : {&gate.controls, &gate.targets}) {
        for (Qubit q : *list) {
            if (index_of(q) >= layout_->num_qubits()) {
                throw Error(ErrorCode::Structure, "gate references unallocated qubit " + std::to_string(index_of(q)));
            }
            seen.push_back(index_of(q));
        }
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw Error(ErrorCode::Structure, std::string(to_string(gate.kind)) + " gate uses a qubit twice");
    }
}

Circuit &Circuit::append(Gate gate, AppendPolicy policy) {
    validate(gate);
    std::uint32_t slot = static_cast<std::uint32_t>(moments_.size());
    if (policy == AppendPolicy::Asap) {
        slot = 0;
        for (const auto *list : {&gate.controls, &gate.targets}) {
            for (Qubit q : *list) {
                slot = std::max(slot, frontier_[index_of(q)]);
            }
        }
    }
    if (slot == moments_.size()) {
        moments_.emplace_back();
    }
    for (const auto *list : {&gate.controls, &gate.targets}) {
        for (Qubit q : *list) {
            frontier_[index_of(q)] = slot + 1;
        }
    }
    moments_[slot].push_back(std::move(gate));
    return *this;
}

Circuit &Circuit::append_moment(Moment moment) {
    std::vector<std::uint32_t> used;
    for (const Gate &g : moment) {
        validate(g);
        for (const auto *list : {&g.controls, &g.targets}) {
            for (Qubit q : *list) {
                used.push_back(index_of(q));
            }
        }
    }
    std::sort(used.begin(), used.end());
    if (std::adjacent_find(used.begin(), used.end()) != used.end()) {
        throw Error(ErrorCode::Structure, "moment " + std::to_string(moments_.size()) + " uses a qubit twice");
    }
    moments_.push_back(std::move(moment));
    const auto slot = static_cast<std::uint32_t>(moments_.size());
    for (std::uint32_t q : used) {
        frontier_[q] = slot;
    }
    return *this;
}

std::size_t Circuit::gate_count() const noexcept {
    std::size_t total = 0;
    for (const Moment &m : moments_) {
        total += m.size();
    }
    return total;
}

std::uint64_t depth(const Circuit &circuit) {
    std::uint64_t total = 0;
    for (const Moment &moment : circuit.moments()) {
        std::uint32_t d = 1;
        for (const Gate &g : moment) {
            d = std::max(d, g.depth());
        }
        total += d;
    }
    return total;
}

std::uint64_t width(const Circuit &circuit) {
    std::uint64_t w = 0;
    for (const Moment &moment : circuit.moments()) {
        w = std::max<std::uint64_t>(w, moment.size());
    }
    return w;
}

GateCounts gate_counts(const Circuit &circuit) {
    GateCounts c;
    for (const Moment &moment : circuit.moments()) {
        for (const Gate &g : moment) {
            switch (g.kind) {
                case GateKind::PauliX:
                    ++c.pauli_x;
                    break;
                case GateKind::CNOT:
                    ++c.cnot;
                    break;
                case GateKind::Toffoli:
                    ++c.toffoli;
                    break;
                case GateKind::Fredkin:
                    ++c.fredkin;
                    break;
                case GateKind::ControlledOpaque:
                    ++c.controlled_opaque;
                    break;
            }
        }
    }
    return c;
}

Circuit adjoint(const Circuit &circuit) {
    Circuit out(circuit.layout_ptr());
    auto moments = circuit.moments();
    for (auto it = moments.rbegin(); it != moments.rend(); ++it) {
        Moment m = *it;
        for (Gate &g : m) {
            if (g.kind == GateKind::ControlledOpaque) {
                g.dagger = !g.dagger;
            }
        }
        out.append_moment(std::move(m));
    }
    return out;
}

Circuit concat(const Circuit &first, const Circuit &second, AppendPolicy policy) {
    if (!(first.layout() == second.layout())) {
        throw Error(ErrorCode::Structure, "cannot concatenate circuits over different layouts");
    }
    Circuit out = first;
    for (const Moment &m : second.moments()) {
        if (policy == AppendPolicy::NewMoment) {
            out.append_moment(m);
        } else {
            for (const Gate &g : m) {
                out.append(g, AppendPolicy::Asap);
            }
        }
    }
    return out;
}

}  // namespace qramforge
