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
#include <string>

#include <nlohmann/json.hpp>
#include "qramforge/error.hpp"
#include "qramforge/io.hpp"

namespace qramforge {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string &path, const std::string &what) {
    throw Error(ErrorCode::Schema, "schema error at " + path + ": " + what);
}

const Json &field(const Json &object, const char *key, const std::string &path) {
    if (!object.is_object()) {
        schema_error(path, "expected an object");
    }
    auto it = object.find(key);
    if (it == object.end()) {
        schema_error(path + "." + key, "missing field");
    }
    return *it;
}

std::uint64_t as_uint(const Json &value, const std::string &path) {
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
        schema_error(path, "expected a non-negative integer");
    }
    return value.get<std::uint64_t>();
}

std::uint32_t as_u32(const Json &value, const std::string &path) {
    const std::uint64_t v = as_uint(value, path);
    if (v > UINT32_MAX) {
        schema_error(path, "value out of range");
    }
    return static_cast<std::uint32_t>(v);
}

const std::string &as_string(const Json &value, const std::string &path) {
    if (!value.is_string()) {
        schema_error(path, "expected a string");
    }
    return value.get_ref<const std::string &>();
}

const Json &as_array(const Json &value, const std::string &path) {
    if (!value.is_array()) {
        schema_error(path, "expected an array");
    }
    return value;
}

double as_double(const Json &value, const std::string &path) {
    if (!value.is_number()) {
        schema_error(path, "expected a number");
    }
    return value.get<double>();
}

Json qubit_list(const std::vector<Qubit> &qubits) {
    Json out = Json::array();
    for (Qubit q : qubits) {
        out.push_back(index_of(q));
    }
    return out;
}

Json registers_json(const RegisterMap &layout) {
    Json out = Json::array();
    for (const Register &r : layout.registers()) {
        Json item;
        item["kind"] = std::string(to_string(r.kind));
        item["owner"] = r.owner.to_string();
        item["start"] = r.start;
        item["size"] = r.size;
        out.push_back(std::move(item));
    }
    return out;
}

Json gate_json(const Gate &g) {
    Json item;
    item["kind"] = std::string(to_string(g.kind));
    item["controls"] = qubit_list(g.controls);
    item["targets"] = qubit_list(g.targets);
    if (g.kind == GateKind::ControlledOpaque) {
        item["leaf"] = g.leaf.to_string();
        item["dagger"] = g.dagger;
        item["declared_depth"] = g.declared_depth;
    }
    return item;
}

Gate parse_gate(const Json &item, const std::string &path) {
    Gate g;
    try {
        g.kind = parse_gate_kind(as_string(field(item, "kind", path), path + ".kind"));
    } catch (const Error &e) {
        if (e.code() == ErrorCode::Schema && std::string_view(e.what()).starts_with("unknown gate kind")) {
            schema_error(path + ".kind", e.what());
        }
        throw;
    }
    auto parse_qubits = [&](const char *key) {
        std::vector<Qubit> out;
        const std::string p = path + "." + key;
        const Json &list = as_array(field(item, key, path), p);
        for (std::size_t i = 0; i < list.size(); ++i) {
            out.push_back(static_cast<Qubit>(as_u32(list[i], p + "[" + std::to_string(i) + "]")));
        }
        return out;
    };
    g.controls = parse_qubits("controls");
    g.targets = parse_qubits("targets");
    if (g.kind == GateKind::ControlledOpaque) {
        try {
            g.leaf = NodeLabel::parse(as_string(field(item, "leaf", path), path + ".leaf"));
        } catch (const Error &e) {
            if (e.code() != ErrorCode::InvalidParameter) {
                throw;
            }
            schema_error(path + ".leaf", e.what());
        }
        const Json &dagger = field(item, "dagger", path);
        if (!dagger.is_boolean()) {
            schema_error(path + ".dagger", "expected a boolean");
        }
        g.dagger = dagger.get<bool>();
        g.declared_depth = as_u32(field(item, "declared_depth", path), path + ".declared_depth");
    }
    return g;
}

Json metrics_json(const Circuit &circuit) {
    const GateCounts gc = gate_counts(circuit);
    const AncillaCounts ac = circuit.layout().counts();
    Json metrics;
    metrics["depth"] = depth(circuit);
    metrics["width"] = width(circuit);
    metrics["moments"] = circuit.moments().size();
    metrics["qubits"] = circuit.layout().num_qubits();
    metrics["gate_counts"] = {{"x", gc.pauli_x},
                              {"cnot", gc.cnot},
                              {"toffoli", gc.toffoli},
                              {"fredkin", gc.fredkin},
                              {"controlled_opaque", gc.controlled_opaque},
                              {"total", gc.total()}};
    metrics["ancillas"] = {{"life", ac.life},
                           {"adr", ac.adr},
                           {"res", ac.res},
                           {"copy", std::uint64_t{circuit.layout().copies_per_node()} *
                                        ((circuit.layout().num_leaves() << 1) - 2)},
                           {"mem", ac.mem},
                           {"total", ac.total}};
    return metrics;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
    return 1 + static_cast<std::size_t>(
                   std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(std::min(byte, text.size())), '\n'));
}

}  // namespace

std::string layout_to_json(const RegisterMap &layout) {
    Json doc;
    doc["n"] = layout.address_width();
    doc["m"] = layout.result_width();
    doc["k"] = std::vector<std::uint32_t>(layout.mem_sizes().begin(), layout.mem_sizes().end());
    doc["copies_per_node"] = layout.copies_per_node();
    doc["qubits"] = layout.num_qubits();
    doc["registers"] = registers_json(layout);
    return doc.dump(2) + "\n";
}

std::string emit_json(const Circuit &circuit, const DocumentInfo &info, std::span<const UnitarySpec> unitaries) {
    const RegisterMap &layout = circuit.layout();
    Json doc;
    doc["format"] = std::string(kCircuitFormat);
    Json params;
    params["n"] = layout.address_width();
    params["m"] = layout.result_width();
    params["k"] = std::vector<std::uint32_t>(layout.mem_sizes().begin(), layout.mem_sizes().end());
    params["variant"] = std::string(to_string(info.variant));
    params["s"] = info.block_size;
    params["copies_per_node"] = layout.copies_per_node();
    params["family"] = info.family;
    params["seed"] = info.seed ? Json(*info.seed) : Json(nullptr);
    doc["parameters"] = std::move(params);
    doc["registers"] = registers_json(layout);
    Json moments = Json::array();
    for (const Moment &moment : circuit.moments()) {
        Json list = Json::array();
        for (const Gate &g : moment) {
            list.push_back(gate_json(g));
        }
        moments.push_back(std::move(list));
    }
    doc["moments"] = std::move(moments);
    doc["metrics"] = metrics_json(circuit);
    if (!unitaries.empty()) {
        Json list = Json::array();
        for (const UnitarySpec &u : unitaries) {
            Json item;
            item["leaf"] = u.leaf().to_string();
            item["declared_depth"] = u.declared_depth();
            item["dimension"] = u.dimension();
            Json matrix = Json::array();
            for (Eigen::Index r = 0; r < u.dimension(); ++r) {
                for (Eigen::Index c = 0; c < u.dimension(); ++c) {
                    matrix.push_back(Json::array({u.matrix()(r, c).real(), u.matrix()(r, c).imag()}));
                }
            }
            item["matrix"] = std::move(matrix);
            list.push_back(std::move(item));
        }
        doc["unitaries"] = std::move(list);
    }
    return doc.dump(2) + "\n";
}

CircuitDocument parse_json(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(ErrorCode::Schema,
                    "JSON syntax error at line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
    }
    const std::string &format = as_string(field(doc, "format", "$"), "$.format");
    if (format != kCircuitFormat) {
        throw Error(ErrorCode::Schema,
                    "unsupported format '" + format + "', expected '" + std::string(kCircuitFormat) + "'");
    }

    const Json &params = field(doc, "parameters", "$");
    const std::uint32_t n = as_u32(field(params, "n", "$.parameters"), "$.parameters.n");
    const std::uint32_t m = as_u32(field(params, "m", "$.parameters"), "$.parameters.m");
    std::vector<std::uint32_t> k;
    const Json &klist = as_array(field(params, "k", "$.parameters"), "$.parameters.k");
    for (std::size_t i = 0; i < klist.size(); ++i) {
        k.push_back(as_u32(klist[i], "$.parameters.k[" + std::to_string(i) + "]"));
    }
    const std::uint32_t copies =
        as_u32(field(params, "copies_per_node", "$.parameters"), "$.parameters.copies_per_node");

    DocumentInfo info;
    try {
        info.variant = parse_variant(as_string(field(params, "variant", "$.parameters"), "$.parameters.variant"));
    } catch (const Error &e) {
        if (e.code() != ErrorCode::InvalidParameter) {
            throw;
        }
        schema_error("$.parameters.variant", e.what());
    }
    info.block_size = as_u32(field(params, "s", "$.parameters"), "$.parameters.s");
    info.family = as_string(field(params, "family", "$.parameters"), "$.parameters.family");
    const Json &seed = field(params, "seed", "$.parameters");
    if (!seed.is_null()) {
        info.seed = as_uint(seed, "$.parameters.seed");
    }

    RegisterMap layout = [&] {
        try {
            RegisterMap base = RegisterMap::allocate(n, m, k);
            return copies == 0 ? base : base.with_copy_extension(copies);
        } catch (const Error &e) {
            schema_error("$.parameters", e.what());
        }
    }();

    const Json &registers = as_array(field(doc, "registers", "$"), "$.registers");
    if (registers.size() != layout.registers().size()) {
        schema_error("$.registers", "expected " + std::to_string(layout.registers().size()) +
                                        " registers for these parameters, found " + std::to_string(registers.size()));
    }
    for (std::size_t i = 0; i < registers.size(); ++i) {
        const std::string path = "$.registers[" + std::to_string(i) + "]";
        const Register &want = layout.registers()[i];
        Register got{parse_register_kind(as_string(field(registers[i], "kind", path), path + ".kind")),
                     NodeLabel::parse(as_string(field(registers[i], "owner", path), path + ".owner")),
                     as_u32(field(registers[i], "start", path), path + ".start"),
                     as_u32(field(registers[i], "size", path), path + ".size")};
        if (!(got == want)) {
            schema_error(path, "does not match the layout implied by the parameters");
        }
    }

    Circuit circuit(std::move(layout));
    const Json &moments = as_array(field(doc, "moments", "$"), "$.moments");
    for (std::size_t i = 0; i < moments.size(); ++i) {
        const std::string mpath = "moments[" + std::to_string(i) + "]";
        const Json &list = as_array(moments[i], mpath);
        Moment moment;
        for (std::size_t j = 0; j < list.size(); ++j) {
            moment.push_back(parse_gate(list[j], mpath + "[" + std::to_string(j) + "]"));
        }
        try {
            circuit.append_moment(std::move(moment));
        } catch (const Error &e) {
            schema_error(mpath, e.what());
        }
    }

    CircuitDocument out{std::move(info), std::move(circuit), {}};
    if (auto it = doc.find("unitaries"); it != doc.end()) {
        const Json &list = as_array(*it, "$.unitaries");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string path = "$.unitaries[" + std::to_string(i) + "]";
            const NodeLabel leaf = NodeLabel::parse(as_string(field(list[i], "leaf", path), path + ".leaf"));
            const std::uint32_t d = as_u32(field(list[i], "declared_depth", path), path + ".declared_depth");
            const std::uint64_t dim = as_uint(field(list[i], "dimension", path), path + ".dimension");
            const Json &values = as_array(field(list[i], "matrix", path), path + ".matrix");
            if (dim == 0 || dim > (1U << 14) || values.size() != dim * dim) {
                schema_error(path + ".matrix", "expected " + std::to_string(dim * dim) + " entries");
            }
            Matrix u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
            for (std::size_t e = 0; e < values.size(); ++e) {
                const std::string epath = path + ".matrix[" + std::to_string(e) + "]";
                const Json &pair = as_array(values[e], epath);
                if (pair.size() != 2) {
                    schema_error(epath, "expected [re, im]");
                }
                u(static_cast<Eigen::Index>(e / dim), static_cast<Eigen::Index>(e % dim)) =
                    Amplitude(as_double(pair[0], epath + "[0]"), as_double(pair[1], epath + "[1]"));
            }
            out.unitaries.emplace_back(leaf, std::move(u), d);
        }
        check_unitaries_match(out.circuit.layout(), out.unitaries);
    }
    return out;
}

std::string state_to_json(const SparseState &state) {
    Json doc;
    doc["format"] = std::string(kStateFormat);
    doc["width"] = state.width();
    Json entries = Json::array();
    for (const auto &e : state.sorted_entries()) {
        Json item;
        item["bitstring"] = e.bits.to_string();
        item["re"] = e.amplitude.real();
        item["im"] = e.amplitude.imag();
        entries.push_back(std::move(item));
    }
    doc["entries"] = std::move(entries);
    return doc.dump(2) + "\n";
}

}  // namespace qramforge
