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

#include "qramforge/synthesis.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <vector>

#include "qramforge/error.hpp"

namespace qramforge {

namespace {

std::uint32_t ceil_sqrt(std::uint32_t m) {
    std::uint32_t s = 0;
    while (std::uint64_t{s} * s < m) {
        ++s;
    }
    return s;
}

// Steps 1-4 for one level: hand the remaining address bits to both children
// and set the child life flags from the bit this level examines.
void route_address(Circuit &c, std::span<const NodeLabel> level_nodes) {
    const RegisterMap &layout = c.layout();
    const std::uint32_t n = layout.address_width();
    // Nodes sharing an adr register (the root alone, else sibling pairs) are
    // routed together so the X pair on the examined bit is emitted once.
    const std::size_t group = level_nodes.front().is_root() ? 1 : 2;
    for (std::size_t g = 0; g < level_nodes.size(); g += group) {
        const std::span<const NodeLabel> nodes = level_nodes.subspan(g, group);
        const std::uint32_t k = nodes.front().length();
        const Register adr = layout.adr(nodes.front());
        const std::uint32_t examined = n - k - 1;
        if (k + 1 < n) {
            for (const NodeLabel &x : nodes) {
                const Register adr_child = layout.adr(x.child(0));
                for (std::uint32_t j = 0; j < examined; ++j) {
                    c.append(Gate::cnot(adr[j], adr_child[j]));
                }
            }
        }
        const Qubit bit = adr[examined];
        for (const NodeLabel &x : nodes) {
            c.append(Gate::toffoli(bit, layout.life(x)[0], layout.life(x.child(1))[0]));
        }
        c.append(Gate::x(bit));
        for (const NodeLabel &x : nodes) {
            c.append(Gate::toffoli(bit, layout.life(x)[0], layout.life(x.child(0))[0]));
        }
        c.append(Gate::x(bit));
    }
}

void append_sequential_handdown(Circuit &c, std::span<const NodeLabel> level_nodes) {
    const RegisterMap &layout = c.layout();
    for (std::uint32_t i = 0; i < layout.result_width(); ++i) {
        for (const NodeLabel &x : level_nodes) {
            const Register res = layout.res(x);
            for (unsigned side = 0; side < 2; ++side) {
                const NodeLabel child = x.child(side);
                c.append(Gate::fredkin(layout.life(child)[0], res[i], layout.res(child)[i]));
            }
        }
    }
}

void append_fanout_handdown(Circuit &c, std::span<const NodeLabel> level_nodes, std::uint32_t s) {
    const RegisterMap &layout = c.layout();
    const std::uint32_t m = layout.result_width();
    const std::uint32_t blocks = (m + s - 1) / s;
    if (layout.copies_per_node() < blocks - 1) {
        throw Error(ErrorCode::Structure, "layout has " + std::to_string(layout.copies_per_node()) +
                                              " copy qubits per node, fan-out with block size " + std::to_string(s) +
                                              " needs " + std::to_string(blocks - 1));
    }
    auto control = [&](const NodeLabel &child, std::uint32_t j) {
        return j == 0 ? layout.life(child)[0] : layout.copies(child)[j - 1];
    };
    for (const NodeLabel &x : level_nodes) {
        for (std::uint32_t j = 1; j < blocks; ++j) {
            for (unsigned side = 0; side < 2; ++side) {
                const NodeLabel child = x.child(side);
                c.append(Gate::cnot(control(child, j - 1), control(child, j)));
            }
        }
        // Step t of block j: side 0 swaps offset r+t, side 1 offset r+t+1 (mod
        // block length), so both sides share the s steps. At most one child's
        // life is set on any reachable state, hence the order per index is free.
        // r = popcount(x) makes every node read res in the order it was written.
        const std::uint32_t r = static_cast<std::uint32_t>(std::popcount(x.value()));
        const Register res = layout.res(x);
        const Register res0 = layout.res(x.child(0));
        const Register res1 = layout.res(x.child(1));
        for (std::uint32_t t = 0; t < s; ++t) {
            for (std::uint32_t j = 0; j < blocks; ++j) {
                const std::uint32_t len = std::min(s, m - j * s);
                if (t >= len) {
                    continue;
                }
                const std::uint32_t i0 = j * s + (t + r) % len;
                const std::uint32_t i1 = j * s + (t + r + 1) % len;
                c.append(Gate::fredkin(control(x.child(0), j), res[i0], res0[i0]));
                c.append(Gate::fredkin(control(x.child(1), j), res[i1], res1[i1]));
            }
        }
        for (std::uint32_t j = blocks; j-- > 1;) {
            for (unsigned side = 0; side < 2; ++side) {
                const NodeLabel child = x.child(side);
                c.append(Gate::cnot(control(child, j - 1), control(child, j)));
            }
        }
    }
}

void check_level(std::span<const NodeLabel> level_nodes, const RegisterMap &layout) {
    for (const NodeLabel &x : level_nodes) {
        if (x.length() >= layout.address_width()) {
            throw Error(ErrorCode::Structure, "leaf '" + x.to_string() + "' has no children to hand down to");
        }
    }
}

}  // namespace

std::string_view to_string(Variant variant) {
    return variant == Variant::Sequential ? "sequential" : "fanout";
}

Variant parse_variant(std::string_view text) {
    if (text == "sequential") {
        return Variant::Sequential;
    }
    if (text == "fanout") {
        return Variant::Fanout;
    }
    throw Error(ErrorCode::InvalidParameter, "unknown variant '" + std::string(text) + "'");
}

std::uint32_t effective_block_size(const SynthesisOptions &options, std::uint32_t m) {
    const std::uint32_t s = options.block_size == 0 ? ceil_sqrt(m) : options.block_size;
    if (s < 1 || s > m) {
        throw Error(ErrorCode::InvalidParameter,
                    "fan-out block size must be in [1, m=" + std::to_string(m) + "], got " + std::to_string(s));
    }
    return s;
}

std::uint32_t copies_needed(const SynthesisOptions &options, std::uint32_t m) {
    if (options.variant == Variant::Sequential) {
        return 0;
    }
    const std::uint32_t s = effective_block_size(options, m);
    return (m + s - 1) / s - 1;
}

std::shared_ptr<const RegisterMap> synthesis_layout(const RegisterMap &layout, const SynthesisOptions &options) {
    const std::uint32_t need = copies_needed(options, layout.result_width());
    if (need == 0 || layout.copies_per_node() == need) {
        return std::make_shared<const RegisterMap>(layout);
    }
    if (layout.copies_per_node() != 0) {
        throw Error(ErrorCode::Structure, "layout carries " + std::to_string(layout.copies_per_node()) +
                                              " copies per node, the fan-out options need " + std::to_string(need));
    }
    return std::make_shared<const RegisterMap>(layout.with_copy_extension(need));
}

Circuit synth_down(const RegisterMap &layout, const SynthesisOptions &options) {
    const std::uint32_t s =
        options.variant == Variant::Fanout ? effective_block_size(options, layout.result_width()) : 1;
    Circuit c(synthesis_layout(layout, options));
    const RegisterMap &lay = c.layout();
    if (options.include_preparation) {
        c.append(Gate::x(lay.life(NodeLabel::root())[0]), AppendPolicy::NewMoment);
    }
    const auto levels = enumerate_nodes(lay.address_width());
    for (std::uint32_t k = 0; k < lay.address_width(); ++k) {
        route_address(c, levels[k]);
    }
    for (std::uint32_t k = 0; k < lay.address_width(); ++k) {
        if (options.variant == Variant::Sequential) {
            append_sequential_handdown(c, levels[k]);
        } else {
            append_fanout_handdown(c, levels[k], s);
        }
    }
    return c;
}

Circuit synth_run(const RegisterMap &layout, std::span<const std::uint32_t> declared_depths) {
    if (declared_depths.size() != layout.num_leaves()) {
        throw Error(ErrorCode::Shape, "expected " + std::to_string(layout.num_leaves()) + " declared depths, got " +
                                          std::to_string(declared_depths.size()));
    }
    Circuit c(layout);
    Moment moment;
    moment.reserve(declared_depths.size());
    for (std::uint64_t z = 0; z < layout.num_leaves(); ++z) {
        const NodeLabel leaf(layout.address_width(), z);
        std::vector<Qubit> targets;
        const Register res = layout.res(leaf);
        const Register mem = layout.mem(leaf);
        for (std::uint32_t i = 0; i < res.size; ++i) {
            targets.push_back(res[i]);
        }
        for (std::uint32_t i = 0; i < mem.size; ++i) {
            targets.push_back(mem[i]);
        }
        moment.push_back(Gate::controlled_opaque(layout.life(leaf)[0], std::move(targets), leaf, declared_depths[z]));
    }
    c.append_moment(std::move(moment));
    return c;
}

Circuit synth_run(const RegisterMap &layout, std::span<const UnitarySpec> unitaries) {
    check_unitaries_match(layout, unitaries);
    const auto depths = declared_depths(unitaries);
    return synth_run(layout, depths);
}

Circuit synth_up(const RegisterMap &layout, const SynthesisOptions &options) {
    return adjoint(synth_down(layout, options));
}

Circuit synth_access(const RegisterMap &layout, std::span<const UnitarySpec> unitaries,
                     const SynthesisOptions &options) {
    check_unitaries_match(layout, unitaries);
    const auto depths = declared_depths(unitaries);
    return synth_access(layout, depths, options);
}

Circuit synth_access(const RegisterMap &layout, std::span<const std::uint32_t> declared_depths,
                     const SynthesisOptions &options) {
    Circuit down = synth_down(layout, options);
    const Circuit run = synth_run(down.layout(), declared_depths);
    const Circuit up = adjoint(down);
    return concat(concat(down, run), up);
}

Circuit sequential_handdown(std::span<const NodeLabel> level_nodes, const std::shared_ptr<const RegisterMap> &layout) {
    check_level(level_nodes, *layout);
    Circuit c(layout);
    append_sequential_handdown(c, level_nodes);
    return c;
}

Circuit fanout_handdown(std::span<const NodeLabel> level_nodes, const std::shared_ptr<const RegisterMap> &layout,
                        std::uint32_t block_size) {
    check_level(level_nodes, *layout);
    SynthesisOptions options;
    options.variant = Variant::Fanout;
    options.block_size = block_size;
    Circuit c(layout);
    append_fanout_handdown(c, level_nodes, effective_block_size(options, layout->result_width()));
    return c;
}

}  // namespace qramforge
