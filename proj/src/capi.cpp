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
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include "qramforge/error.hpp"
#include "qramforge/io.hpp"
#include "qramforge/qramforge.h"
#include "qramforge/synthesis.hpp"
#include "qramforge/verifier.hpp"

using namespace qramforge;

struct qf_instance {
    InstanceSpec spec;
};

struct qf_circuit {
    Circuit circuit;
    DocumentInfo info;
    std::vector<UnitarySpec> unitaries;
};

namespace {

thread_local std::string last_error;

qf_status status_of(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidParameter:
            return QF_ERR_INVALID_PARAMETER;
        case ErrorCode::ResourceLimit:
            return QF_ERR_RESOURCE_LIMIT;
        case ErrorCode::Structure:
            return QF_ERR_STRUCTURE;
        case ErrorCode::Shape:
            return QF_ERR_SHAPE;
        case ErrorCode::Schema:
            return QF_ERR_SCHEMA;
        case ErrorCode::Configuration:
            return QF_ERR_CONFIGURATION;
    }
    return QF_ERR_INTERNAL;
}

template <typename Fn>
qf_status guarded(Fn &&fn) {
    last_error.clear();
    try {
        fn();
        return QF_OK;
    } catch (const Error &e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc &) {
        last_error = "out of memory";
        return QF_ERR_RESOURCE_LIMIT;
    } catch (const std::exception &e) {
        last_error = e.what();
        return QF_ERR_INTERNAL;
    }
}

void require(bool ok, const char *what) {
    if (!ok) {
        throw Error(ErrorCode::InvalidParameter, what);
    }
}

char *duplicate(const std::string &text) {
    char *out = static_cast<char *>(std::malloc(text.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

Family family_of(qf_family family) {
    switch (family) {
        case QF_FAMILY_QRAM:
            return Family::Qram;
        case QF_FAMILY_LOOKUP:
            return Family::TableLookup;
        case QF_FAMILY_ROTATION:
            return Family::Rotation;
        case QF_FAMILY_RANDOM:
            return Family::Random;
    }
    throw Error(ErrorCode::InvalidParameter, "unknown family");
}

SynthesisOptions options_of(const qf_synth_options *options) {
    SynthesisOptions out;
    if (options != nullptr) {
        switch (options->variant) {
            case QF_VARIANT_SEQUENTIAL:
                out.variant = Variant::Sequential;
                break;
            case QF_VARIANT_FANOUT:
                out.variant = Variant::Fanout;
                break;
            default:
                throw Error(ErrorCode::InvalidParameter, "unknown variant");
        }
        out.block_size = options->block_size;
        out.include_preparation = options->include_preparation != 0;
    }
    return out;
}

std::vector<std::uint32_t> mem_sizes_of(const qf_instance_params &p) {
    require(p.n <= kMaxAddressWidth, "address width exceeds the supported maximum");
    const std::uint64_t leaves = std::uint64_t{1} << p.n;
    if (p.k != nullptr && p.k_len > 0) {
        require(p.k_len == leaves, "k must hold one entry per leaf");
        return {p.k, p.k + p.k_len};
    }
    return std::vector<std::uint32_t>(leaves, p.k_uniform);
}

const std::vector<UnitarySpec> &unitaries_for(const qf_circuit *circuit, const qf_instance *instance) {
    if (instance != nullptr) {
        const RegisterMap &a = circuit->circuit.layout();
        const InstanceSpec &s = instance->spec;
        const bool same = a.address_width() == s.n && a.result_width() == s.m &&
                          std::vector<std::uint32_t>(a.mem_sizes().begin(), a.mem_sizes().end()) == s.k;
        if (!same) {
            throw Error(ErrorCode::Shape, "instance shape does not match the circuit layout");
        }
        return s.unitaries;
    }
    return circuit->unitaries;
}

void emit_reports(const InstanceSpec &spec, const std::vector<VerificationReport> &reports, char **report_json,
                  char **report_table, int *passed) {
    bool ok = true;
    nlohmann::ordered_json doc;
    doc["format"] = "qramforge-verification/1";
    doc["instance"] = spec.summary();
    doc["reports"] = nlohmann::ordered_json::array();
    std::string table;
    for (const VerificationReport &r : reports) {
        ok = ok && r.passed;
        doc["reports"].push_back(nlohmann::ordered_json::parse(r.to_json()));
        table += r.to_table();
    }
    doc["passed"] = ok;
    table += ok ? "PASS\n" : "FAIL\n";

    char *json_out = report_json != nullptr ? duplicate(doc.dump(2) + "\n") : nullptr;
    char *table_out = nullptr;
    if (report_table != nullptr) {
        try {
            table_out = duplicate(table);
        } catch (...) {
            std::free(json_out);
            throw;
        }
    }
    if (report_json != nullptr) {
        *report_json = json_out;
    }
    if (report_table != nullptr) {
        *report_table = table_out;
    }
    if (passed != nullptr) {
        *passed = ok ? 1 : 0;
    }
}

CaseSet case_set_of(const qf_verify_options &v) {
    CaseSet cases;
    cases.mode = v.exhaustive != 0 ? CaseMode::Exhaustive : CaseMode::Random;
    cases.count = v.cases;
    cases.seed = v.seed;
    require(cases.mode == CaseMode::Exhaustive || cases.count > 0, "random mode needs at least one case");
    return cases;
}

Tolerances tolerances_of(const qf_verify_options &v) {
    require(v.fidelity_tolerance >= 0.0 && v.residual_tolerance >= 0.0, "tolerances must be non-negative");
    Tolerances tol;
    tol.fidelity = v.fidelity_tolerance;
    tol.residual = v.residual_tolerance;
    return tol;
}

qf_verify_options verify_options_or_default(const qf_verify_options *verify) {
    qf_verify_options v;
    qf_verify_options_init(&v);
    if (verify != nullptr) {
        v = *verify;
    }
    return v;
}

}  // namespace

extern "C" {

const char *qf_version(void) {
    return "1.0.0";
}

const char *qf_last_error(void) {
    return last_error.c_str();
}

void qf_string_free(char *text) {
    std::free(text);
}

void qf_instance_params_init(qf_instance_params *params) {
    if (params == nullptr) {
        return;
    }
    *params = qf_instance_params{};
    params->n = 1;
    params->m = 1;
    params->family = QF_FAMILY_QRAM;
    params->seed = 1;
    params->declared_depth = 1;
}

void qf_synth_options_init(qf_synth_options *options) {
    if (options == nullptr) {
        return;
    }
    options->variant = QF_VARIANT_SEQUENTIAL;
    options->block_size = 0;
    options->include_preparation = 1;
}

void qf_verify_options_init(qf_verify_options *options) {
    if (options == nullptr) {
        return;
    }
    const Tolerances defaults;
    *options = qf_verify_options{};
    options->exhaustive = 1;
    options->cases = 8;
    options->seed = 1;
    options->fidelity_tolerance = defaults.fidelity;
    options->residual_tolerance = defaults.residual;
    options->superposition_cases = 20;
}

qf_status qf_ancilla_counts_compute(uint32_t n, uint32_t m, const uint32_t *k, size_t k_len,
                                    qf_ancilla_counts *out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        require(k != nullptr || k_len == 0, "k is null");
        const AncillaCounts c = ancilla_counts(n, m, std::span<const std::uint32_t>(k, k_len));
        *out = qf_ancilla_counts{c.life, c.adr, c.res, c.mem, c.total};
    });
}

qf_status qf_instance_create(const qf_instance_params *params, qf_instance **out) {
    return guarded([&] {
        require(params != nullptr && out != nullptr, "null argument");
        *out = nullptr;
        require(params->declared_depth >= 1, "declared depth must be at least 1");
        auto instance = std::make_unique<qf_instance>();
        instance->spec = build_instance(family_of(params->family), params->n, params->m, mem_sizes_of(*params),
                                        params->seed, params->declared_depth);
        *out = instance.release();
    });
}

qf_status qf_instance_from_circuit(const qf_circuit *circuit, qf_instance **out) {
    return guarded([&] {
        require(circuit != nullptr && out != nullptr, "null argument");
        *out = nullptr;
        const RegisterMap &layout = circuit->circuit.layout();
        std::vector<std::uint32_t> k(layout.mem_sizes().begin(), layout.mem_sizes().end());
        auto instance = std::make_unique<qf_instance>();
        if (!circuit->unitaries.empty()) {
            instance->spec = build_custom_instance(layout.address_width(), layout.result_width(), std::move(k),
                                                   circuit->unitaries);
        } else {
            if (circuit->info.family.empty() || circuit->info.family == "custom") {
                throw Error(ErrorCode::Configuration,
                            "circuit carries neither matrices nor a reproducible family; pass an instance");
            }
            const Family family = parse_family(circuit->info.family);
            const std::uint32_t m = family == Family::Rotation ? (k.empty() ? 0 : k[0]) : layout.result_width();
            std::uint32_t depth = 1;
            for (const Moment &moment : circuit->circuit.moments()) {
                for (const Gate &g : moment) {
                    if (g.kind == GateKind::ControlledOpaque) {
                        depth = g.declared_depth;
                    }
                }
            }
            instance->spec = build_instance(family, layout.address_width(), m, std::move(k),
                                            circuit->info.seed.value_or(1), depth);
            const RegisterMap rebuilt = instance->spec.layout();
            if (rebuilt.result_width() != layout.result_width() ||
                !std::equal(rebuilt.mem_sizes().begin(), rebuilt.mem_sizes().end(), layout.mem_sizes().begin(),
                            layout.mem_sizes().end())) {
                throw Error(ErrorCode::Shape, "recorded family does not reproduce the circuit's register shape");
            }
        }
        *out = instance.release();
    });
}

void qf_instance_free(qf_instance *instance) {
    delete instance;
}

qf_status qf_instance_summary(const qf_instance *instance, char **out) {
    return guarded([&] {
        require(instance != nullptr && out != nullptr, "null argument");
        *out = duplicate(instance->spec.summary());
    });
}

qf_status qf_synthesize(const qf_instance_params *params, const qf_synth_options *options, qf_phase phase,
                        qf_circuit **out) {
    return guarded([&] {
        require(params != nullptr && out != nullptr, "null argument");
        *out = nullptr;
        require(params->declared_depth >= 1, "declared depth must be at least 1");
        const SynthesisOptions opts = options_of(options);
        const InstanceShape shape = family_shape(family_of(params->family), params->n, params->m,
                                                 mem_sizes_of(*params));
        const RegisterMap base = RegisterMap::allocate(shape.n, shape.m, shape.k);
        const std::vector<std::uint32_t> depths(base.num_leaves(), params->declared_depth);
        std::optional<Circuit> circuit;
        switch (phase) {
            case QF_PHASE_ACCESS:
                circuit.emplace(synth_access(base, depths, opts));
                break;
            case QF_PHASE_DOWN:
                circuit.emplace(synth_down(base, opts));
                break;
            case QF_PHASE_RUN:
                circuit.emplace(synth_run(base, depths));
                break;
            case QF_PHASE_UP:
                circuit.emplace(synth_up(base, opts));
                break;
            default:
                throw Error(ErrorCode::InvalidParameter, "unknown phase");
        }
        DocumentInfo info;
        info.variant = opts.variant;
        info.block_size = opts.variant == Variant::Fanout ? effective_block_size(opts, shape.m) : 0;
        info.family = std::string(to_string(family_of(params->family)));
        if (params->family != QF_FAMILY_QRAM) {
            info.seed = params->seed;
        }
        *out = new qf_circuit{std::move(*circuit), std::move(info), {}};
    });
}

void qf_circuit_free(qf_circuit *circuit) {
    delete circuit;
}

qf_status qf_circuit_metrics(const qf_circuit *circuit, qf_metrics *out) {
    return guarded([&] {
        require(circuit != nullptr && out != nullptr, "null argument");
        const Circuit &c = circuit->circuit;
        const GateCounts g = gate_counts(c);
        const AncillaCounts a = c.layout().counts();
        *out = qf_metrics{};
        out->depth = depth(c);
        out->width = width(c);
        out->moments = c.moments().size();
        out->qubits = c.layout().num_qubits();
        out->gates_x = g.pauli_x;
        out->gates_cnot = g.cnot;
        out->gates_toffoli = g.toffoli;
        out->gates_fredkin = g.fredkin;
        out->gates_opaque = g.controlled_opaque;
        out->gates_total = g.total();
        out->n = c.layout().address_width();
        out->m = c.layout().result_width();
        out->copies_per_node = c.layout().copies_per_node();
        out->ancillas = qf_ancilla_counts{a.life, a.adr, a.res, a.mem, a.total};
    });
}

qf_status qf_circuit_to_json(const qf_circuit *circuit, const qf_instance *instance, char **out) {
    return guarded([&] {
        require(circuit != nullptr && out != nullptr, "null argument");
        std::span<const UnitarySpec> unitaries;
        if (instance != nullptr) {
            unitaries = unitaries_for(circuit, instance);
        }
        *out = duplicate(emit_json(circuit->circuit, circuit->info, unitaries));
    });
}

qf_status qf_circuit_from_json(const char *text, qf_circuit **out) {
    return guarded([&] {
        require(text != nullptr && out != nullptr, "null argument");
        *out = nullptr;
        CircuitDocument doc = parse_json(text);
        *out = new qf_circuit{std::move(doc.circuit), std::move(doc.info), std::move(doc.unitaries)};
    });
}

qf_status qf_circuit_to_qasm(const qf_circuit *circuit, char **out) {
    return guarded([&] {
        require(circuit != nullptr && out != nullptr, "null argument");
        *out = duplicate(emit_qasm(circuit->circuit));
    });
}

qf_status qf_circuit_layout_json(const qf_circuit *circuit, char **out) {
    return guarded([&] {
        require(circuit != nullptr && out != nullptr, "null argument");
        *out = duplicate(layout_to_json(circuit->circuit.layout()));
    });
}

qf_status qf_simulate(const qf_circuit *circuit, const qf_instance *instance, uint64_t address, uint64_t result,
                      const uint64_t *mem, size_t mem_len, char **state_json, char **data_state_json,
                      double *ancilla_residual) {
    return guarded([&] {
        require(circuit != nullptr, "circuit is null");
        require(mem != nullptr || mem_len == 0, "mem is null");
        const RegisterMap &layout = circuit->circuit.layout();
        BasisAssignment input;
        input.address = address;
        input.result = result;
        input.mem.assign(mem, mem + mem_len);
        const UnitaryTable table(unitaries_for(circuit, instance));
        const SparseState final_state = run_circuit(basis_state(layout, input), circuit->circuit, table);
        const Projection projection = project_to_data(final_state, layout);
        std::string full;
        std::string data;
        if (state_json != nullptr) {
            full = state_to_json(final_state);
        }
        if (data_state_json != nullptr) {
            data = state_to_json(projection.data);
        }
        // Allocate only once every conversion succeeded, so nothing leaks.
        if (state_json != nullptr) {
            *state_json = duplicate(full);
        }
        if (data_state_json != nullptr) {
            try {
                *data_state_json = duplicate(data);
            } catch (...) {
                if (state_json != nullptr) {
                    std::free(*state_json);
                    *state_json = nullptr;
                }
                throw;
            }
        }
        if (ancilla_residual != nullptr) {
            *ancilla_residual = projection.ancilla_residual;
        }
    });
}

qf_status qf_verify(const qf_instance *instance, const qf_synth_options *options, const qf_verify_options *verify,
                    char **report_json, char **report_table, int *passed) {
    return guarded([&] {
        require(instance != nullptr, "instance is null");
        const qf_verify_options v = verify_options_or_default(verify);
        const SynthesisOptions opts = options_of(options);
        const Tolerances tol = tolerances_of(v);
        const CaseSet cases = case_set_of(v);

        std::vector<VerificationReport> reports;
        reports.push_back(check_proposition(instance->spec, opts, cases, tol));
        if (v.check_superposition != 0) {
            reports.push_back(check_superposition(instance->spec, opts, v.superposition_cases, v.seed, tol));
        }
        if (v.check_variants != 0) {
            reports.push_back(check_variant_agreement(instance->spec, cases, tol, opts.block_size));
        }

        emit_reports(instance->spec, reports, report_json, report_table, passed);
    });
}

qf_status qf_verify_circuit(const qf_circuit *circuit, const qf_instance *instance, const qf_verify_options *verify,
                            char **report_json, char **report_table, int *passed) {
    return guarded([&] {
        require(circuit != nullptr, "circuit is null");
        const qf_verify_options v = verify_options_or_default(verify);
        const Tolerances tol = tolerances_of(v);
        const CaseSet cases = case_set_of(v);
        qf_instance *owned = nullptr;
        if (instance == nullptr) {
            const qf_status status = qf_instance_from_circuit(circuit, &owned);
            if (status != QF_OK) {
                throw Error(status == QF_ERR_SHAPE ? ErrorCode::Shape : ErrorCode::Configuration, last_error);
            }
        }
        const std::unique_ptr<qf_instance, decltype(&qf_instance_free)> guard(owned, qf_instance_free);
        const InstanceSpec &spec = instance != nullptr ? instance->spec : owned->spec;
        std::vector<VerificationReport> reports;
        reports.push_back(check_proposition(spec, circuit->circuit, cases, tol));
        emit_reports(spec, reports, report_json, report_table, passed);
    });
}

}  // extern "C"
