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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "qramforge/error.hpp"
#include "qramforge/simulator.hpp"
#include "qramforge/synthesis.hpp"
#include "qramforge/verifier.hpp"
#include "test_support.hpp"

namespace qf = qramforge;
namespace qt = qramforge::testing;
using qf::NodeLabel;

namespace {

qf::SynthesisOptions variant(qf::Variant v, std::uint32_t s = 0) {
    qf::SynthesisOptions o;
    o.variant = v;
    o.block_size = s;
    return o;
}

std::uint64_t read(const qf::BasisBits &bits, const qf::Register &r) {
    return bits.read_range(r.start, r.size);
}

std::set<std::uint32_t> touched(const qf::Circuit &c) {
    std::set<std::uint32_t> out;
    for (const qf::Moment &m : c.moments()) {
        for (const qf::Gate &g : m) {
            for (qf::Qubit q : g.controls) {
                out.insert(qf::index_of(q));
            }
            for (qf::Qubit q : g.targets) {
                out.insert(qf::index_of(q));
            }
        }
    }
    return out;
}

// Life, adr and res postconditions of Down on one basis input, checked on the
// library simulator's output and on the reference simulation.
void check_down_contract(std::uint32_t n, std::uint32_t m, const qf::SynthesisOptions &options) {
    const auto base = qf::RegisterMap::allocate_uniform(n, m, 1);
    const qf::Circuit down = qf::synth_down(base, options);
    const qf::RegisterMap &lay = down.layout();
    const auto levels = qf::enumerate_nodes(n);
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
        for (std::uint64_t r = 0; r < (std::uint64_t{1} << m); ++r) {
            qf::BasisAssignment a;
            a.address = y;
            a.result = r;
            const qf::SparseState in = qf::basis_state(lay, a);
            const qf::SparseState out = qf::run_circuit(in, down, {});
            ASSERT_EQ(out.support_size(), 1U);
            EXPECT_LT(qt::ref_distance(qt::ref_from(out), qt::ref_run(qt::ref_from(in), down, {})), 1e-14);
            const qf::BasisBits &bits = out.entries()[0].bits;
            const NodeLabel target(n, y);
            for (const auto &level : levels) {
                for (const NodeLabel &x : level) {
                    const bool on_path = x.is_prefix_of(target);
                    EXPECT_EQ(read(bits, lay.life(x)), on_path ? 1U : 0U) << "life " << x.to_string() << " y=" << y;
                    if (x.length() < n) {
                        const std::uint32_t keep = n - x.length();
                        const std::uint64_t mask = (std::uint64_t{1} << keep) - 1;
                        EXPECT_EQ(read(bits, lay.adr(x)), y & mask) << "adr " << x.to_string();
                    }
                    if (!x.is_root()) {
                        const bool holds = x == target;
                        EXPECT_EQ(read(bits, lay.res(x)), holds ? r : 0U) << "res " << x.to_string();
                        if (lay.copies_per_node() > 0) {
                            EXPECT_EQ(read(bits, lay.copies(x)), 0U);
                        }
                    }
                }
            }
            EXPECT_EQ(read(bits, lay.result()), 0U);
        }
    }
}

}  // namespace

TEST(Down, ContractExhaustiveSequential) {
    for (std::uint32_t n = 1; n <= 3; ++n) {
        for (std::uint32_t m = 1; m <= 2; ++m) {
            check_down_contract(n, m, variant(qf::Variant::Sequential));
        }
    }
}

TEST(Down, ContractExhaustiveFanout) {
    for (std::uint32_t n = 1; n <= 3; ++n) {
        for (std::uint32_t m = 1; m <= 2; ++m) {
            check_down_contract(n, m, variant(qf::Variant::Fanout));
            check_down_contract(n, m, variant(qf::Variant::Fanout, 1));
        }
    }
    check_down_contract(2, 5, variant(qf::Variant::Fanout, 2));
    check_down_contract(2, 5, variant(qf::Variant::Fanout, 3));
}

TEST(Down, SmallestSequentialByHand) {
    const auto map = qf::RegisterMap::allocate_uniform(1, 1, 0);
    const qf::Circuit down = qf::synth_down(map);
    const qf::GateCounts c = qf::gate_counts(down);
    EXPECT_EQ(c.pauli_x, 3U);  // prep plus one sandwich
    EXPECT_EQ(c.cnot, 0U);
    EXPECT_EQ(c.toffoli, 2U);
    EXPECT_EQ(c.fredkin, 2U);
    const std::set<std::uint32_t> expected = {
        qf::index_of(map.address()[0]), qf::index_of(map.result()[0]),
        qf::index_of(map.life(NodeLabel::root())[0]), qf::index_of(map.life(NodeLabel::parse("0"))[0]),
        qf::index_of(map.life(NodeLabel::parse("1"))[0]), qf::index_of(map.res(NodeLabel::parse("0"))[0]),
        qf::index_of(map.res(NodeLabel::parse("1"))[0])};
    EXPECT_EQ(touched(down), expected);
    EXPECT_EQ(down.moments()[0].size(), 1U);
    EXPECT_EQ(down.moments()[0][0], qf::Gate::x(map.life(NodeLabel::root())[0]));
}

TEST(Down, LifePathForAddressTwoOfFour) {
    const auto map = qf::RegisterMap::allocate_uniform(2, 1, 0);
    qf::BasisAssignment a;
    a.address = 0b10;
    const qf::SparseState out = qf::run_circuit(qf::basis_state(map, a), qf::synth_down(map), {});
    const qf::BasisBits &bits = out.entries()[0].bits;
    std::set<std::string> live;
    for (const auto &level : qf::enumerate_nodes(2)) {
        for (const NodeLabel &x : level) {
            if (bits.get(qf::index_of(map.life(x)[0]))) {
                live.insert(x.to_string());
            }
        }
    }
    EXPECT_EQ(live, (std::set<std::string>{"", "1", "10"}));
}

TEST(Down, NoPreparationLeavesTreeDark) {
    qf::SynthesisOptions o;
    o.include_preparation = false;
    const auto map = qf::RegisterMap::allocate_uniform(2, 1, 0);
    const qf::SparseState out = qf::run_circuit(qf::basis_state(map, {3, 1, {}}), qf::synth_down(map, o), {});
    const qf::BasisBits &bits = out.entries()[0].bits;
    // Address copies still happen; nothing lights up and the result stays put.
    EXPECT_EQ(read(bits, map.result()), 1U);
    for (const auto &level : qf::enumerate_nodes(2)) {
        for (const NodeLabel &x : level) {
            EXPECT_EQ(read(bits, map.life(x)), 0U);
            if (!x.is_root()) {
                EXPECT_EQ(read(bits, map.res(x)), 0U);
            }
        }
    }
}

TEST(Up, EqualsAdjointOfDownGateForGate) {
    for (std::uint32_t n = 1; n <= 4; ++n) {
        for (std::uint32_t m : {1U, 2U, 5U}) {
            const auto map = qf::RegisterMap::allocate_uniform(n, m, 1);
            for (const auto &o : {variant(qf::Variant::Sequential), variant(qf::Variant::Fanout)}) {
                const qf::Circuit down = qf::synth_down(map, o);
                const qf::Circuit up = qf::synth_up(map, o);
                EXPECT_EQ(up, qf::adjoint(down));
                EXPECT_EQ(up.gate_count(), down.gate_count());
                ASSERT_EQ(up.moments().size(), down.moments().size());
                for (std::size_t i = 0; i < up.moments().size(); ++i) {
                    EXPECT_EQ(up.moments()[i], down.moments()[down.moments().size() - 1 - i]);
                }
            }
        }
    }
}

TEST(Up, DownThenUpIsIdentity) {
    std::mt19937_64 rng(11);
    for (std::uint32_t n = 1; n <= 3; ++n) {
        for (std::uint32_t m = 1; m <= 2; ++m) {
            const std::vector<std::uint32_t> k(std::size_t{1} << n, 2);
            const auto map = qf::RegisterMap::allocate(n, m, k);
            const qf::Circuit round = qf::concat(qf::synth_down(map), qf::synth_up(map));
            for (int i = 0; i < 100; ++i) {
                const qf::SparseState in = qf::basis_state(map, qt::random_assignment(n, m, k, rng));
                const qf::SparseState out = qf::run_circuit(in, round, {});
                ASSERT_EQ(out.support_size(), 1U);
                EXPECT_EQ(out.entries()[0].bits, in.entries()[0].bits);
            }
        }
    }
}

TEST(Run, OneMomentOfOpaqueGates) {
    const auto map = qf::RegisterMap::allocate_uniform(1, 1, 1);
    const std::vector<std::uint32_t> depths = {3, 7};
    const qf::Circuit run = qf::synth_run(map, depths);
    ASSERT_EQ(run.moments().size(), 1U);
    EXPECT_EQ(run.moments()[0].size(), 2U);
    EXPECT_EQ(qf::depth(run), 7U);
    for (const qf::Gate &g : run.moments()[0]) {
        EXPECT_EQ(g.kind, qf::GateKind::ControlledOpaque);
        EXPECT_EQ(g.controls[0], map.life(g.leaf)[0]);
        EXPECT_EQ(g.targets, (std::vector<qf::Qubit>{map.res(g.leaf)[0], map.mem(g.leaf)[0]}));
    }
}

TEST(Run, IdentityUnitariesAreIdentity) {
    const auto map = qf::RegisterMap::allocate_uniform(2, 1, 1);
    std::vector<qf::UnitarySpec> ids;
    for (std::uint64_t z = 0; z < 4; ++z) {
        ids.emplace_back(NodeLabel(2, z), qf::Matrix::Identity(4, 4));
    }
    const qf::Circuit access = qf::synth_access(map, ids);
    std::mt19937_64 rng(5);
    const std::vector<std::uint32_t> k(4, 1);
    for (int i = 0; i < 30; ++i) {
        const qf::SparseState in = qf::basis_state(map, qt::random_assignment(2, 1, k, rng));
        EXPECT_EQ(qf::run_circuit(in, access, qf::UnitaryTable(ids)).entries()[0].bits, in.entries()[0].bits);
    }
}

TEST(Run, RejectsWrongShapes) {
    const auto map = qf::RegisterMap::allocate_uniform(1, 1, 1);
    std::vector<qf::UnitarySpec> bad = {qf::UnitarySpec(NodeLabel(1, 0), qf::Matrix::Identity(4, 4)),
                                        qf::UnitarySpec(NodeLabel(1, 1), qf::Matrix::Identity(2, 2))};
    try {
        qf::synth_run(map, bad);
        ADD_FAILURE();
    } catch (const qf::Error &e) {
        EXPECT_EQ(e.code(), qf::ErrorCode::Shape);
        EXPECT_NE(std::string(e.what()).find("'1'"), std::string::npos) << e.what();
    }
    const std::vector<std::uint32_t> one = {1};
    EXPECT_THROW(qf::synth_run(map, one), qf::Error);
}

// Full access with CNOT (mem -> result) leaves against the reference oracle.
TEST(Access, QramTwoLevelsAgainstReference) {
    const qf::InstanceSpec inst = qf::build_qram_instance(2, 1);
    const qf::RegisterMap map = inst.layout();
    const qf::Circuit access = qf::synth_access(map, inst.unitaries);
    for (std::uint64_t y = 0; y < 4; ++y) {
        for (std::uint64_t r = 0; r < 2; ++r) {
            for (std::uint64_t mem = 0; mem < 16; ++mem) {
                qf::BasisAssignment a{y, r, {mem & 1, (mem >> 1) & 1, (mem >> 2) & 1, (mem >> 3) & 1}};
                const qf::SparseState out = qf::run_circuit(qf::basis_state(map, a), access,
                                                            qf::UnitaryTable(inst.unitaries));
                ASSERT_EQ(out.support_size(), 1U);
                const qf::BasisBits &bits = out.entries()[0].bits;
                EXPECT_EQ(read(bits, map.result()), r ^ a.mem[y]);
                EXPECT_EQ(read(bits, map.address()), y);
                // Ancillas back to zero.
                for (std::uint32_t q = 0; q < map.num_qubits(); ++q) {
                    if (!map.is_data(qf::Qubit{q})) {
                        EXPECT_FALSE(bits.get(q));
                    }
                }
            }
        }
    }
}

TEST(Access, SupportBoundedByOneLeaf) {
    const qf::InstanceSpec inst = qf::build_random_instance(2, 1, {1, 2, 0, 1}, 9);
    const qf::Circuit access = qf::synth_access(inst.layout(), inst.unitaries);
    for (std::uint64_t y = 0; y < 4; ++y) {
        const qf::SparseState out = qf::run_circuit(qf::basis_state(inst.layout(), {y, 1, {1, 3, 0, 1}}), access,
                                                    qf::UnitaryTable(inst.unitaries));
        EXPECT_LE(out.support_size(), std::size_t{1} << (1 + inst.k[y]));
    }
}

TEST(Access, DepthLinearInAddressWidth) {
    for (std::uint32_t m : {1U, 4U, 16U}) {
        std::vector<std::uint64_t> d;
        for (std::uint32_t n = 1; n <= 8; ++n) {
            const auto map = qf::RegisterMap::allocate_uniform(n, m, 0);
            const std::vector<std::uint32_t> depths(std::size_t{1} << n, 1);
            d.push_back(qf::depth(qf::synth_access(map, depths)));
        }
        const std::uint64_t slope = d[2] - d[1];
        EXPECT_GE(slope, 1U);
        EXPECT_LE(slope, 12U);
        for (std::size_t i = 2; i < d.size(); ++i) {
            EXPECT_EQ(d[i] - d[i - 1], slope) << "m=" << m << " n=" << i + 1;
        }
        EXPECT_LE(d[1] - d[0], slope + 2);
    }
}

TEST(Access, DeclaredDepthAdds) {
    const auto map = qf::RegisterMap::allocate_uniform(2, 1, 0);
    std::vector<std::uint32_t> depths(4, 1);
    const std::uint64_t base = qf::depth(qf::synth_access(map, depths));
    depths[2] = 9;
    EXPECT_EQ(qf::depth(qf::synth_access(map, depths)), base + 8);
}

TEST(Fanout, SingleResultQubitNeedsNoCopies) {
    const auto map = qf::RegisterMap::allocate_uniform(2, 1, 0);
    const auto o = variant(qf::Variant::Fanout);
    EXPECT_EQ(qf::copies_needed(o, 1), 0U);
    const auto lay = qf::synthesis_layout(map, o);
    const auto levels = qf::enumerate_nodes(2);
    const qf::Circuit frag = qf::fanout_handdown(levels[0], lay, 1);
    const qf::GateCounts c = qf::gate_counts(frag);
    EXPECT_EQ(c.fredkin, 2U);
    EXPECT_EQ(c.total(), 2U);
    EXPECT_EQ(qf::synth_down(map, o), qf::synth_down(map));
}

TEST(Fanout, FragmentDepthBoundAndCrossover) {
    std::uint32_t crossover = 0;
    for (std::uint32_t m = 1; m <= 64; ++m) {
        const auto base = qf::RegisterMap::allocate_uniform(1, m, 0);
        const auto o = variant(qf::Variant::Fanout);
        const std::uint32_t s = qf::effective_block_size(o, m);
        const auto levels = qf::enumerate_nodes(1);
        const std::uint64_t fan = qf::depth(qf::fanout_handdown(levels[0], qf::synthesis_layout(base, o), s));
        const std::uint64_t seq =
            qf::depth(qf::sequential_handdown(levels[0], std::make_shared<const qf::RegisterMap>(base)));
        EXPECT_LE(fan, 2 * ((m + s - 1) / s) + s + 1) << "m=" << m;
        if (fan < seq && crossover == 0) {
            crossover = m;
        }
        if (m >= 9) {
            EXPECT_LT(fan, seq) << "m=" << m;
        }
    }
    EXPECT_GT(crossover, 0U);
    EXPECT_LE(crossover, 9U);
}

TEST(Fanout, FragmentRestoresCopies) {
    const std::uint32_t m = 7;
    const auto base = qf::RegisterMap::allocate_uniform(2, m, 0);
    const auto lay = qf::synthesis_layout(base, variant(qf::Variant::Fanout, 3));
    ASSERT_EQ(lay->copies_per_node(), 2U);
    const auto levels = qf::enumerate_nodes(2);
    const qf::Circuit frag = qf::fanout_handdown(levels[1], lay, 3);
    // Light node "1" and its child "10"; load res_1 with a pattern.
    qf::BasisBits bits(lay->num_qubits());
    bits.set(qf::index_of(lay->life(NodeLabel::parse("1"))[0]), true);
    bits.set(qf::index_of(lay->life(NodeLabel::parse("10"))[0]), true);
    bits.write_range(lay->res(NodeLabel::parse("1")).start, m, 0b1011001);
    const qf::SparseState out = qf::run_circuit(qf::SparseState::basis(bits), frag, {});
    const qf::BasisBits &o = out.entries()[0].bits;
    EXPECT_EQ(read(o, lay->res(NodeLabel::parse("10"))), 0b1011001U);
    EXPECT_EQ(read(o, lay->res(NodeLabel::parse("1"))), 0U);
    EXPECT_EQ(read(o, lay->res(NodeLabel::parse("11"))), 0U);
    for (const auto &level : levels) {
        for (const NodeLabel &x : level) {
            if (!x.is_root()) {
                EXPECT_EQ(read(o, lay->copies(x)), 0U) << x.to_string();
            }
        }
    }
}

TEST(Fanout, RejectsBadBlockSize) {
    const auto map = qf::RegisterMap::allocate_uniform(1, 4, 0);
    EXPECT_THROW(qf::synth_down(map, variant(qf::Variant::Fanout, 5)), qf::Error);
    const auto levels = qf::enumerate_nodes(1);
    EXPECT_THROW(qf::fanout_handdown(levels[1], std::make_shared<const qf::RegisterMap>(map), 2), qf::Error);
}

TEST(Variant, NamesRoundTrip) {
    EXPECT_EQ(qf::parse_variant("fanout"), qf::Variant::Fanout);
    EXPECT_EQ(qf::parse_variant(qf::to_string(qf::Variant::Sequential)), qf::Variant::Sequential);
    EXPECT_THROW(qf::parse_variant("parallel"), qf::Error);
}
