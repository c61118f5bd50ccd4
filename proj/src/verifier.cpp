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

#include "qramforge/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include <nlohmann/json.hpp>
#include "qramforge/error.hpp"

namespace qramforge {

namespace {

constexpr std::size_t kExhaustiveLimit = 64;

std::uint64_t random_bits(std::mt19937_64 &rng, std::uint32_t width) {
    if (width == 0) {
        return 0;
    }
    const std::uint64_t v = rng();
    return width >= 64 ? v : v & ((std::uint64_t{1} << width) - 1);
}

std::string describe(const BasisAssignment &a) {
    std::ostringstream out;
    out << "y=" << a.address << " r=" << a.result << " mem=[";
    for (std::size_t i = 0; i < a.mem.size(); ++i) {
        out << (i ? "," : "") << a.mem[i];
    }
    out << "]";
    return out.str();
}

double max_distance(const SparseState &a, const SparseState &b) {
    double worst = 0.0;
    for (const auto &e : a.entries()) {
        worst = std::max(worst, std::abs(e.amplitude - b.amplitude(e.bits)));
    }
    for (const auto &e : b.entries()) {
        worst = std::max(worst, std::abs(e.amplitude - a.amplitude(e.bits)));
    }
    return worst;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void finalize(VerificationReport &report) {
    report.passed = true;
    report.min_fidelity = 1.0;
    report.max_residual = 0.0;
    report.max_distance = 0.0;
    for (const CaseResult &c : report.cases) {
        report.passed = report.passed && c.passed;
        report.min_fidelity = std::min(report.min_fidelity, c.fidelity);
        report.max_residual = std::max(report.max_residual, c.ancilla_residual);
        report.max_distance = std::max(report.max_distance, c.distance);
    }
}

// Runs `body` and converts library errors into a failed case entry.
template <typename Fn>
void run_case(VerificationReport &report, std::string label, Fn &&body) {
    CaseResult c;
    c.label = std::move(label);
    try {
        body(c);
    } catch (const Error &e) {
        c.passed = false;
        c.error = e.what();
    }
    report.cases.push_back(std::move(c));
}

class AccessRunner {
   public:
    AccessRunner(const InstanceSpec &instance, const SynthesisOptions &options)
        : circuit_(synth_access(instance.layout(), instance.unitaries, options)), table_(instance.unitaries) {
    }

    AccessRunner(const InstanceSpec &instance, Circuit circuit)
        : circuit_(std::move(circuit)), table_(instance.unitaries) {
        const RegisterMap &layout = circuit_.layout();
        if (layout.address_width() != instance.n || layout.result_width() != instance.m ||
            !std::equal(layout.mem_sizes().begin(), layout.mem_sizes().end(), instance.k.begin(), instance.k.end())) {
            throw Error(ErrorCode::Shape, "circuit layout does not match instance " + instance.summary());
        }
    }

    const Circuit &circuit() const {
        return circuit_;
    }

    SparseState input(const BasisAssignment &a) const {
        return basis_state(circuit_.layout(), a);
    }

    Projection run(SparseState state) const {
        return project_to_data(run_circuit(std::move(state), circuit_, table_), circuit_.layout());
    }

   private:
    Circuit circuit_;
    UnitaryTable table_;
};

}  // namespace

std::vector<BasisAssignment> enumerate_cases(const InstanceSpec &instance, const CaseSet &cases) {
    const std::uint64_t leaves = std::uint64_t{1} << instance.n;
    std::mt19937_64 rng(cases.seed);
    auto random_assignment = [&](std::uint64_t y) {
        BasisAssignment a;
        a.address = y;
        a.result = random_bits(rng, instance.m);
        a.mem.resize(leaves);
        for (std::uint64_t z = 0; z < leaves; ++z) {
            a.mem[z] = random_bits(rng, instance.k[z]);
        }
        return a;
    };

    std::vector<BasisAssignment> out;
    if (cases.mode == CaseMode::Random) {
        for (std::size_t i = 0; i < cases.count; ++i) {
            out.push_back(random_assignment(random_bits(rng, instance.n)));
        }
        return out;
    }

    std::uint64_t free_bits = instance.m;
    for (std::uint32_t kz : instance.k) {
        free_bits += kz;
    }
    for (std::uint64_t y = 0; y < leaves; ++y) {
        std::set<std::tuple<std::uint64_t, std::vector<std::uint64_t>>> seen;
        auto push = [&](BasisAssignment a) {
            if (seen.emplace(a.result, a.mem).second) {
                out.push_back(std::move(a));
            }
        };
        if (free_bits < 63 && (std::uint64_t{1} << free_bits) <= kExhaustiveLimit) {
            for (std::uint64_t word = 0; word < (std::uint64_t{1} << free_bits); ++word) {
                BasisAssignment a;
                a.address = y;
                a.result = word & ((std::uint64_t{1} << instance.m) - 1);
                std::uint64_t rest = word >> instance.m;
                a.mem.resize(leaves);
                for (std::uint64_t z = 0; z < leaves; ++z) {
                    a.mem[z] = rest & ((std::uint64_t{1} << instance.k[z]) - 1);
                    rest >>= instance.k[z];
                }
                push(std::move(a));
            }
            continue;
        }
        const std::uint64_t local_bits = std::uint64_t{instance.m} + instance.k[y];
        if (local_bits < 63 && (std::uint64_t{1} << local_bits) <= kExhaustiveLimit) {
            for (std::uint64_t word = 0; word < (std::uint64_t{1} << local_bits); ++word) {
                BasisAssignment a = random_assignment(y);
                a.result = word & ((std::uint64_t{1} << instance.m) - 1);
                a.mem[y] = word >> instance.m;
                push(std::move(a));
            }
        }
        const std::size_t target = std::max<std::size_t>(cases.count, seen.size() + cases.count);
        for (std::size_t tries = 0; seen.size() < target && tries < 16 * target; ++tries) {
            push(random_assignment(y));
        }
    }
    return out;
}

std::size_t VerificationReport::failures() const {
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const CaseResult &c) {
        return !c.passed;
    }));
}

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["format"] = "qramforge-report/1";
    doc["check"] = check;
    doc["instance"] = instance;
    doc["tolerances"] = {{"fidelity", tolerances.fidelity},
                         {"residual", tolerances.residual},
                         {"amplitude", tolerances.amplitude}};
    doc["passed"] = passed;
    doc["num_cases"] = cases.size();
    doc["failures"] = failures();
    doc["min_fidelity"] = min_fidelity;
    doc["max_ancilla_residual"] = max_residual;
    doc["max_distance"] = max_distance;
    doc["seconds"] = seconds;
    auto &list = doc["cases"] = nlohmann::ordered_json::array();
    for (const CaseResult &c : cases) {
        nlohmann::ordered_json item;
        item["label"] = c.label;
        item["fidelity"] = c.fidelity;
        item["ancilla_residual"] = c.ancilla_residual;
        item["distance"] = c.distance;
        item["address_preserved"] = c.address_preserved;
        item["memory_preserved"] = c.memory_preserved;
        item["passed"] = c.passed;
        if (!c.error.empty()) {
            item["error"] = c.error;
        }
        list.push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

std::string VerificationReport::to_table() const {
    std::ostringstream out;
    out << check << ": " << instance << "\n";
    out << "  cases        " << cases.size() << " (" << failures() << " failed)\n";
    out << std::scientific << std::setprecision(3);
    out << "  min fidelity " << min_fidelity << "  (>= 1 - " << tolerances.fidelity << ")\n";
    out << "  max residual " << max_residual << "  (<= " << tolerances.residual << ")\n";
    out << "  max distance " << max_distance << "\n";
    out << std::fixed << std::setprecision(3) << "  wall clock   " << seconds << " s\n";
    std::size_t shown = 0;
    for (const CaseResult &c : cases) {
        if (!c.passed && shown++ < 10) {
            out << "  FAIL " << c.label << std::scientific << " fidelity=" << c.fidelity
                << " residual=" << c.ancilla_residual << (c.error.empty() ? "" : " error=" + c.error) << "\n";
        }
    }
    out << "  result       " << (passed ? "PASS" : "FAIL") << "\n";
    return out.str();
}

namespace {

VerificationReport proposition_report(const InstanceSpec &instance, const AccessRunner &runner, std::string label,
                                      const CaseSet &cases, const Tolerances &tolerances) {
    Timer timer;
    VerificationReport report;
    report.check = "proposition";
    report.instance = std::move(label);
    report.tolerances = tolerances;
    const std::uint64_t leaves = std::uint64_t{1} << instance.n;

    for (const BasisAssignment &a : enumerate_cases(instance, cases)) {
        run_case(report, describe(a), [&](CaseResult &c) {
            const Projection got = runner.run(runner.input(a));
            const SparseState want = oracle_effect(instance, a);
            c.fidelity = fidelity(want, got.data);
            c.ancilla_residual = got.ancilla_residual;
            c.distance = max_distance(want, got.data);

            // Address and the unselected memories must come back bit-identical.
            std::size_t offset = std::size_t{instance.n} + instance.m;
            for (const auto &e : got.data.entries()) {
                c.address_preserved = c.address_preserved && e.bits.read_range(0, instance.n) == a.address;
            }
            for (std::uint64_t z = 0; z < leaves; ++z) {
                const std::uint32_t kz = instance.k[z];
                if (z != a.address && kz > 0) {
                    for (const auto &e : got.data.entries()) {
                        const std::uint32_t chunk = std::min<std::uint32_t>(kz, 64);
                        c.memory_preserved = c.memory_preserved && e.bits.read_range(offset, chunk) == a.mem[z];
                    }
                }
                offset += kz;
            }
            c.passed = c.fidelity >= 1.0 - tolerances.fidelity && c.ancilla_residual <= tolerances.residual &&
                       c.address_preserved && c.memory_preserved;
        });
    }
    finalize(report);
    report.seconds = timer.seconds();
    return report;
}

}  // namespace

VerificationReport check_proposition(const InstanceSpec &instance, const SynthesisOptions &options,
                                     const CaseSet &cases, const Tolerances &tolerances) {
    const AccessRunner runner(instance, options);
    return proposition_report(instance, runner,
                              instance.summary() + " variant=" + std::string(to_string(options.variant)), cases,
                              tolerances);
}

VerificationReport check_proposition(const InstanceSpec &instance, const Circuit &circuit, const CaseSet &cases,
                                     const Tolerances &tolerances) {
    const AccessRunner runner(instance, circuit);
    return proposition_report(instance, runner, instance.summary() + " circuit=supplied", cases, tolerances);
}

VerificationReport check_superposition(const InstanceSpec &instance, const SynthesisOptions &options,
                                       std::size_t two_term_cases, std::uint64_t seed,
                                       const Tolerances &tolerances) {
    Timer timer;
    VerificationReport report;
    report.check = "superposition";
    report.instance = instance.summary() + " variant=" + std::string(to_string(options.variant));
    report.tolerances = tolerances;
    const AccessRunner runner(instance, options);
    const std::uint64_t leaves = std::uint64_t{1} << instance.n;
    std::mt19937_64 rng(seed);

    auto random_data = [&](std::uint64_t y) {
        BasisAssignment a;
        a.address = y;
        a.result = random_bits(rng, instance.m);
        a.mem.resize(leaves);
        for (std::uint64_t z = 0; z < leaves; ++z) {
            a.mem[z] = random_bits(rng, instance.k[z]);
        }
        return a;
    };

    auto compare = [&](CaseResult &c, const std::vector<std::pair<Amplitude, BasisAssignment>> &terms) {
        std::vector<std::pair<Amplitude, SparseState>> inputs;
        std::vector<std::pair<Amplitude, SparseState>> expected;
        for (const auto &[amp, a] : terms) {
            inputs.emplace_back(amp, runner.input(a));
            expected.emplace_back(amp, oracle_effect(instance, a));
        }
        const Projection got = runner.run(superpose(inputs));
        SparseState want(data_width(instance));
        for (const auto &[amp, s] : expected) {
            for (const auto &e : s.entries()) {
                want.add(e.bits, amp * e.amplitude);
            }
        }
        c.fidelity = fidelity(want, got.data);
        c.ancilla_residual = got.ancilla_residual;
        c.distance = max_distance(want, got.data);
        c.passed = c.fidelity >= 1.0 - tolerances.fidelity && c.ancilla_residual <= tolerances.residual &&
                   c.distance <= tolerances.amplitude;
    };

    run_case(report, "uniform over all addresses", [&](CaseResult &c) {
        BasisAssignment shared = random_data(0);
        const Amplitude amp(1.0 / std::sqrt(static_cast<double>(leaves)), 0.0);
        std::vector<std::pair<Amplitude, BasisAssignment>> terms;
        for (std::uint64_t y = 0; y < leaves; ++y) {
            BasisAssignment a = shared;
            a.address = y;
            terms.emplace_back(amp, std::move(a));
        }
        compare(c, terms);
    });

    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < two_term_cases; ++i) {
        const std::uint64_t y1 = random_bits(rng, instance.n);
        std::uint64_t y2 = random_bits(rng, instance.n);
        if (y2 == y1) {
            y2 ^= 1;
        }
        BasisAssignment a1 = random_data(y1);
        BasisAssignment a2 = random_data(y2);
        const double theta = angle(rng) / 4.0;
        const Amplitude alpha = std::polar(std::cos(theta), angle(rng));
        const Amplitude beta = std::polar(std::sin(theta), angle(rng));
        run_case(report, "two-term " + describe(a1) + " + " + describe(a2), [&](CaseResult &c) {
            compare(c, {{alpha, a1}, {beta, a2}});
        });
    }
    finalize(report);
    report.seconds = timer.seconds();
    return report;
}

VerificationReport check_variant_agreement(const InstanceSpec &instance, const CaseSet &cases,
                                           const Tolerances &tolerances, std::uint32_t block_size) {
    Timer timer;
    VerificationReport report;
    report.check = "variant-agreement";
    report.instance = instance.summary();
    report.tolerances = tolerances;
    SynthesisOptions sequential;
    SynthesisOptions fanout;
    fanout.variant = Variant::Fanout;
    fanout.block_size = block_size;
    const AccessRunner seq(instance, sequential);
    const AccessRunner fan(instance, fanout);

    for (const BasisAssignment &a : enumerate_cases(instance, cases)) {
        run_case(report, describe(a), [&](CaseResult &c) {
            const Projection p = seq.run(seq.input(a));
            const Projection q = fan.run(fan.input(a));
            c.fidelity = fidelity(p.data, q.data);
            c.ancilla_residual = std::max(p.ancilla_residual, q.ancilla_residual);
            c.distance = max_distance(p.data, q.data);
            c.passed = c.distance <= tolerances.amplitude && c.fidelity >= 1.0 - tolerances.fidelity &&
                       c.ancilla_residual <= tolerances.residual;
        });
    }
    finalize(report);
    report.seconds = timer.seconds();
    return report;
}

VerificationReport check_double_access(const InstanceSpec &instance, const SynthesisOptions &options,
                                       const CaseSet &cases, const Tolerances &tolerances) {
    Timer timer;
    VerificationReport report;
    report.check = "double-access";
    report.instance = instance.summary() + " variant=" + std::string(to_string(options.variant));
    report.tolerances = tolerances;
    const Circuit once = synth_access(instance.layout(), instance.unitaries, options);
    const Circuit twice = concat(once, once);
    const UnitaryTable table(instance.unitaries);

    for (const BasisAssignment &a : enumerate_cases(instance, cases)) {
        run_case(report, describe(a), [&](CaseResult &c) {
            const SparseState in = basis_state(twice.layout(), a);
            const SparseState out = run_circuit(in, twice, table);
            c.fidelity = fidelity(in, out);
            c.distance = max_distance(in, out);
            c.ancilla_residual = project_to_data(out, twice.layout()).ancilla_residual;
            c.passed = c.fidelity >= 1.0 - tolerances.fidelity && c.ancilla_residual <= tolerances.residual;
        });
    }
    finalize(report);
    report.seconds = timer.seconds();
    return report;
}

}  // namespace qramforge
