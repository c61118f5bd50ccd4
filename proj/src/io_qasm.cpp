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

#include <algorithm>
#include <map>
#include <sstream>

#include "qramforge/io.hpp"

namespace qramforge {

namespace {

std::string register_name(const Register &r) {
    switch (r.kind) {
        case RegisterKind::Address:
            return "address";
        case RegisterKind::Result:
            return "result";
        default:
            break;
    }
    return std::string(to_string(r.kind)) + "_" + (r.owner.is_root() ? std::string("e") : r.owner.to_string());
}

std::string opaque_name(const Gate &g) {
    return "cu_z" + g.leaf.to_string() + (g.dagger ? "_dg" : "");
}

}  // namespace

std::string emit_qasm(const Circuit &circuit) {
    const RegisterMap &layout = circuit.layout();
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";

    // name -> arity, in name order for stable output
    std::map<std::string, std::size_t> opaques;
    bool any_fredkin = false;
    for (const Moment &moment : circuit.moments()) {
        for (const Gate &g : moment) {
            if (g.kind == GateKind::ControlledOpaque) {
                opaques.emplace(opaque_name(g), 1 + g.targets.size());
            }
            any_fredkin = any_fredkin || g.kind == GateKind::Fredkin;
        }
    }
    // The original qelib1.inc has no controlled swap.
    if (any_fredkin) {
        out << "gate cswap c, a, b { cx b, a; ccx c, a, b; cx b, a; }\n";
    }
    for (const auto &[name, arity] : opaques) {
        out << "opaque " << name << " c";
        for (std::size_t t = 0; t + 1 < arity; ++t) {
            out << ", t" << t;
        }
        out << ";\n";
    }

    std::vector<std::string> names;
    for (const Register &r : layout.registers()) {
        names.push_back(register_name(r));
        out << "qreg " << names.back() << "[" << r.size << "];\n";
    }
    auto qubit = [&](Qubit q) {
        const QubitId id = layout.identify(q);
        const std::uint32_t start = index_of(q) - id.index;
        const auto &regs = layout.registers();
        const auto it = std::lower_bound(regs.begin(), regs.end(), start,
                                         [](const Register &r, std::uint32_t s) { return r.start < s; });
        return names[static_cast<std::size_t>(it - regs.begin())] + "[" + std::to_string(id.index) + "]";
    };

    std::size_t index = 0;
    for (const Moment &moment : circuit.moments()) {
        out << "// moment " << index++ << "\n";
        for (const Gate &g : moment) {
            switch (g.kind) {
                case GateKind::PauliX:
                    out << "x " << qubit(g.targets[0]);
                    break;
                case GateKind::CNOT:
                    out << "cx " << qubit(g.controls[0]) << ", " << qubit(g.targets[0]);
                    break;
                case GateKind::Toffoli:
                    out << "ccx " << qubit(g.controls[0]) << ", " << qubit(g.controls[1]) << ", "
                        << qubit(g.targets[0]);
                    break;
                case GateKind::Fredkin:
                    out << "cswap " << qubit(g.controls[0]) << ", " << qubit(g.targets[0]) << ", "
                        << qubit(g.targets[1]);
                    break;
                case GateKind::ControlledOpaque:
                    out << opaque_name(g) << " " << qubit(g.controls[0]);
                    for (Qubit t : g.targets) {
                        out << ", " << qubit(t);
                    }
                    break;
            }
            out << ";\n";
        }
    }
    return out.str();
}

}  // namespace qramforge
