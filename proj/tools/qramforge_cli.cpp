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

// Command-line front end. Talks to the library only through the C interface.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qramforge/qramforge.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

// Thrown for any library or I/O error; always maps to exit code 2.
struct CliError {
    std::string message;
};

void check(qf_status status, const char *what) {
    if (status != QF_OK) {
        throw CliError{std::string(what) + ": " + qf_last_error()};
    }
}

struct OwnedString {
    char *text = nullptr;
    ~OwnedString() {
        qf_string_free(text);
    }
    std::string str() const {
        return text == nullptr ? std::string() : std::string(text);
    }
};

using CircuitPtr = std::unique_ptr<qf_circuit, decltype(&qf_circuit_free)>;
using InstancePtr = std::unique_ptr<qf_instance, decltype(&qf_instance_free)>;

CircuitPtr no_circuit() {
    return {nullptr, qf_circuit_free};
}
InstancePtr no_instance() {
    return {nullptr, qf_instance_free};
}

struct ShapeFlags {
    std::uint32_t n = 1;
    std::uint32_t m = 1;
    std::vector<std::uint32_t> k;
    std::string family = "qram";
    std::uint64_t seed = 1;
    std::uint32_t declared_depth = 1;
    std::string variant = "sequential";
    std::uint32_t s = 0;
    bool no_prep = false;
};

void add_shape_flags(CLI::App *cmd, ShapeFlags &f) {
    cmd->add_option("--n", f.n, "Address width")->check(CLI::Range(0u, 24u));
    cmd->add_option("--m", f.m, "Result width (memory width for the rotation family)");
    cmd->add_option("--k", f.k, "Memory size per leaf: one value for all leaves or 2^n values")->delimiter(',');
    cmd->add_option("--family", f.family, "Instance family")
        ->check(CLI::IsMember({"qram", "lookup", "rotation", "random"}));
    cmd->add_option("--seed", f.seed, "Seed for the lookup table and random unitaries");
    cmd->add_option("--declared-depth", f.declared_depth, "Depth charged to each leaf unitary")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--variant", f.variant, "Result hand-down variant")
        ->check(CLI::IsMember({"sequential", "fanout"}));
    cmd->add_option("--s", f.s, "Fan-out block size (0: ceil(sqrt(m)))");
    cmd->add_flag("--no-prep", f.no_prep, "Omit the X on the root life qubit");
}

qf_family family_of(const std::string &name) {
    static const std::map<std::string, qf_family> names = {
        {"qram", QF_FAMILY_QRAM}, {"lookup", QF_FAMILY_LOOKUP}, {"rotation", QF_FAMILY_ROTATION},
        {"random", QF_FAMILY_RANDOM}};
    return names.at(name);
}

qf_instance_params params_of(const ShapeFlags &f) {
    qf_instance_params p;
    qf_instance_params_init(&p);
    p.n = f.n;
    p.m = f.m;
    p.family = family_of(f.family);
    p.seed = f.seed;
    p.declared_depth = f.declared_depth;
    if (f.k.size() == 1) {
        p.k_uniform = f.k[0];
    } else if (!f.k.empty()) {
        p.k = f.k.data();
        p.k_len = f.k.size();
    }
    return p;
}

qf_synth_options options_of(const ShapeFlags &f) {
    qf_synth_options o;
    qf_synth_options_init(&o);
    o.variant = f.variant == "fanout" ? QF_VARIANT_FANOUT : QF_VARIANT_SEQUENTIAL;
    o.block_size = f.s;
    o.include_preparation = f.no_prep ? 0 : 1;
    return o;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CliError{"cannot open " + path};
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw CliError{"cannot write " + path};
    }
}

CircuitPtr load_circuit(const std::string &path) {
    qf_circuit *raw = nullptr;
    check(qf_circuit_from_json(read_file(path).c_str(), &raw), path.c_str());
    return {raw, qf_circuit_free};
}

CircuitPtr synthesize(const ShapeFlags &f, qf_phase phase) {
    const qf_instance_params p = params_of(f);
    const qf_synth_options o = options_of(f);
    qf_circuit *raw = nullptr;
    check(qf_synthesize(&p, &o, phase, &raw), "synthesis failed");
    return {raw, qf_circuit_free};
}

InstancePtr make_instance(const ShapeFlags &f) {
    const qf_instance_params p = params_of(f);
    qf_instance *raw = nullptr;
    check(qf_instance_create(&p, &raw), "instance construction failed");
    return {raw, qf_instance_free};
}

struct SynthFlags {
    ShapeFlags shape;
    std::string out;
    std::string format = "json";
    std::string phase = "access";
    bool include_matrices = false;
};

int run_synth(const SynthFlags &f) {
    static const std::map<std::string, qf_phase> phases = {
        {"access", QF_PHASE_ACCESS}, {"down", QF_PHASE_DOWN}, {"run", QF_PHASE_RUN}, {"up", QF_PHASE_UP}};
    CircuitPtr circuit = synthesize(f.shape, phases.at(f.phase));
    OwnedString text;
    if (f.format == "qasm") {
        check(qf_circuit_to_qasm(circuit.get(), &text.text), "QASM export failed");
    } else {
        InstancePtr instance = no_instance();
        if (f.include_matrices) {
            instance = make_instance(f.shape);
        }
        check(qf_circuit_to_json(circuit.get(), instance.get(), &text.text), "JSON export failed");
    }
    write_output(f.out, text.str());
    return kExitOk;
}

struct AnalyzeFlags {
    ShapeFlags shape;
    std::string in;
    bool csv = false;
};

int run_analyze(const AnalyzeFlags &f) {
    CircuitPtr circuit = f.in.empty() ? synthesize(f.shape, QF_PHASE_ACCESS) : load_circuit(f.in);
    qf_metrics mt;
    check(qf_circuit_metrics(circuit.get(), &mt), "metrics failed");
    const std::vector<std::pair<std::string, std::uint64_t>> rows = {
        {"n", mt.n},
        {"m", mt.m},
        {"depth", mt.depth},
        {"width", mt.width},
        {"moments", mt.moments},
        {"qubits", mt.qubits},
        {"gates_x", mt.gates_x},
        {"gates_cnot", mt.gates_cnot},
        {"gates_toffoli", mt.gates_toffoli},
        {"gates_fredkin", mt.gates_fredkin},
        {"gates_opaque", mt.gates_opaque},
        {"gates_total", mt.gates_total},
        {"copies_per_node", mt.copies_per_node},
        {"ancilla_life", mt.ancillas.life},
        {"ancilla_adr", mt.ancillas.adr},
        {"ancilla_res", mt.ancillas.res},
        {"ancilla_copy", std::uint64_t{mt.copies_per_node} * ((std::uint64_t{2} << mt.n) - 2)},
        {"mem", mt.ancillas.mem},
        {"ancilla_total", mt.ancillas.total},
    };
    if (f.csv) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::cout << (i ? "," : "") << rows[i].first;
        }
        std::cout << "\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::cout << (i ? "," : "") << rows[i].second;
        }
        std::cout << "\n";
    } else {
        for (const auto &[name, value] : rows) {
            std::printf("%-16s %llu\n", name.c_str(), static_cast<unsigned long long>(value));
        }
    }
    return kExitOk;
}

struct SimulateFlags {
    ShapeFlags shape;
    std::string in;
    std::uint64_t address = 0;
    std::uint64_t result = 0;
    std::vector<std::uint64_t> mem;
    std::string state_out;
    bool full = false;
};

int run_simulate(const SimulateFlags &f) {
    CircuitPtr circuit = no_circuit();
    InstancePtr instance = no_instance();
    if (f.in.empty()) {
        circuit = synthesize(f.shape, QF_PHASE_ACCESS);
        instance = make_instance(f.shape);
    } else {
        circuit = load_circuit(f.in);
        qf_instance *raw = nullptr;
        check(qf_instance_from_circuit(circuit.get(), &raw), "cannot reconstruct the leaf unitaries");
        instance.reset(raw);
    }
    OwnedString full;
    OwnedString data;
    double residual = 0.0;
    check(qf_simulate(circuit.get(), instance.get(), f.address, f.result, f.mem.empty() ? nullptr : f.mem.data(),
                      f.mem.size(), f.full ? &full.text : nullptr, &data.text, &residual),
          "simulation failed");
    write_output(f.state_out, f.full ? full.str() : data.str());
    std::cerr << "ancilla residual " << residual << "\n";
    return kExitOk;
}

struct VerifyFlags {
    ShapeFlags shape;
    std::string in;
    bool exhaustive = false;
    std::size_t cases = 0;
    double tolerance = 1e-10;
    double residual = 1e-12;
    std::string report;
    bool superposition = false;
    std::size_t superposition_cases = 20;
    bool variants = false;
};

int run_verify(const VerifyFlags &f) {
    qf_verify_options v;
    qf_verify_options_init(&v);
    v.exhaustive = f.cases == 0 || f.exhaustive ? 1 : 0;
    v.cases = f.cases == 0 ? 8 : f.cases;
    v.seed = f.shape.seed;
    v.fidelity_tolerance = f.tolerance;
    v.residual_tolerance = f.residual;
    v.check_superposition = f.superposition ? 1 : 0;
    v.superposition_cases = f.superposition_cases;
    v.check_variants = f.variants ? 1 : 0;
    OwnedString json;
    OwnedString table;
    int passed = 0;
    char **json_out = f.report.empty() ? nullptr : &json.text;
    if (f.in.empty()) {
        InstancePtr instance = make_instance(f.shape);
        const qf_synth_options o = options_of(f.shape);
        check(qf_verify(instance.get(), &o, &v, json_out, &table.text, &passed), "verification could not run");
    } else {
        CircuitPtr circuit = load_circuit(f.in);
        check(qf_verify_circuit(circuit.get(), nullptr, &v, json_out, &table.text, &passed),
              "verification could not run");
    }
    std::cout << table.str();
    if (!f.report.empty()) {
        write_output(f.report, json.str());
    }
    return passed != 0 ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qramforge: binary-tree access circuit synthesis, analysis and verification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qf_version()));

    SynthFlags synth;
    CLI::App *synth_cmd = app.add_subcommand("synth", "Synthesize a circuit");
    add_shape_flags(synth_cmd, synth.shape);
    synth_cmd->add_option("--out", synth.out, "Output file (default stdout)");
    synth_cmd->add_option("--format", synth.format, "Output format")->check(CLI::IsMember({"json", "qasm"}));
    synth_cmd->add_option("--phase", synth.phase, "Phase to emit")
        ->check(CLI::IsMember({"access", "down", "run", "up"}));
    synth_cmd->add_flag("--include-matrices", synth.include_matrices, "Embed leaf matrices in the JSON document");

    AnalyzeFlags analyze;
    CLI::App *analyze_cmd = app.add_subcommand("analyze", "Print depth, width and ancilla counts");
    add_shape_flags(analyze_cmd, analyze.shape);
    analyze_cmd->add_option("--in", analyze.in, "Analyze a circuit document instead of synthesizing");
    analyze_cmd->add_flag("--csv", analyze.csv, "CSV header and one data row");

    SimulateFlags simulate;
    CLI::App *simulate_cmd = app.add_subcommand("simulate", "Run the access circuit on a basis input");
    add_shape_flags(simulate_cmd, simulate.shape);
    simulate_cmd->add_option("--in", simulate.in, "Circuit document (default: synthesize from the flags)");
    simulate_cmd->add_option("--address", simulate.address, "Address register value");
    simulate_cmd->add_option("--result", simulate.result, "Result register value");
    simulate_cmd->add_option("--mem", simulate.mem, "Memory value per leaf, comma separated")->delimiter(',');
    simulate_cmd->add_option("--state-out", simulate.state_out, "State output file (default stdout)");
    simulate_cmd->add_flag("--full", simulate.full, "Write the state over all qubits instead of the data registers");

    VerifyFlags verify;
    CLI::App *verify_cmd = app.add_subcommand("verify", "Check the access circuit against the direct oracle");
    add_shape_flags(verify_cmd, verify.shape);
    CLI::Option *exhaustive = verify_cmd->add_flag("--exhaustive", verify.exhaustive, "Exhaustive case set");
    CLI::Option *cases = verify_cmd->add_option("--cases", verify.cases, "Number of random cases")
                             ->check(CLI::PositiveNumber);
    exhaustive->excludes(cases);
    verify_cmd->add_option("--tolerance", verify.tolerance, "Allowed 1 - fidelity")->check(CLI::NonNegativeNumber);
    verify_cmd->add_option("--residual-tolerance", verify.residual, "Allowed ancilla residual")
        ->check(CLI::NonNegativeNumber);
    verify_cmd->add_option("--in", verify.in, "Verify this access-circuit document instead of synthesizing");
    verify_cmd->add_option("--report", verify.report, "JSON report output file");
    verify_cmd->add_flag("--superposition", verify.superposition, "Also check linearity over addresses");
    verify_cmd->add_option("--superposition-cases", verify.superposition_cases, "Two-term superpositions");
    verify_cmd->add_flag("--variants", verify.variants, "Also compare the sequential and fan-out circuits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (synth_cmd->parsed()) {
            return run_synth(synth);
        }
        if (analyze_cmd->parsed()) {
            return run_analyze(analyze);
        }
        if (simulate_cmd->parsed()) {
            return run_simulate(simulate);
        }
        return run_verify(verify);
    } catch (const CliError &e) {
        std::cerr << "error: " << e.message << "\n";
        return kExitUsage;
    }
}
