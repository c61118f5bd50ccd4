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

#include "qramforge/tree_layout.hpp"

#include <algorithm>
#include <numeric>

#include "qramforge/error.hpp"

namespace qramforge {

namespace {

void check_address_width(std::uint32_t n) {
    if (n == 0 || n > kMaxAddressWidth) {
        throw Error(ErrorCode::InvalidParameter, "address width n must be in [1, " + std::to_string(kMaxAddressWidth) +
                                                     "], got " + std::to_string(n));
    }
}

}  // namespace

NodeLabel::NodeLabel(std::uint32_t length, std::uint64_t value) : length_(length), value_(value) {
    if (length > 63 || (length < 64 && (value >> length) != 0)) {
        throw Error(ErrorCode::InvalidParameter, "node label value does not fit its length");
    }
}

NodeLabel NodeLabel::parse(std::string_view bits) {
    if (bits == "e") {
        return root();
    }
    if (bits.size() > 63) {
        throw Error(ErrorCode::InvalidParameter, "node label too long");
    }
    std::uint64_t value = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw Error(ErrorCode::InvalidParameter, "node label must be a bit-string, got '" + std::string(bits) + "'");
        }
        value = (value << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return NodeLabel(static_cast<std::uint32_t>(bits.size()), value);
}

NodeLabel NodeLabel::child(unsigned bit) const {
    return NodeLabel(length_ + 1, (value_ << 1) | (bit & 1U));
}

bool NodeLabel::is_prefix_of(const NodeLabel &other) const noexcept {
    if (length_ > other.length_) {
        return false;
    }
    return (other.value_ >> (other.length_ - length_)) == value_;
}

std::string NodeLabel::to_string() const {
    std::string out(length_, '0');
    for (std::uint32_t i = 0; i < length_; ++i) {
        if ((value_ >> (length_ - 1 - i)) & 1U) {
            out[i] = '1';
        }
    }
    return out;
}

std::vector<std::vector<NodeLabel>> enumerate_nodes(std::uint32_t n) {
    check_address_width(n);
    std::vector<std::vector<NodeLabel>> levels(n + 1);
    for (std::uint32_t k = 0; k <= n; ++k) {
        const std::uint64_t count = std::uint64_t{1} << k;
        levels[k].reserve(count);
        for (std::uint64_t v = 0; v < count; ++v) {
            levels[k].emplace_back(k, v);
        }
    }
    return levels;
}

std::string_view to_string(RegisterKind kind) {
    switch (kind) {
        case RegisterKind::Address:
            return "address";
        case RegisterKind::Result:
            return "result";
        case RegisterKind::Life:
            return "life";
        case RegisterKind::Adr:
            return "adr";
        case RegisterKind::Res:
            return "res";
        case RegisterKind::Mem:
            return "mem";
        case RegisterKind::Copy:
            return "copy";
    }
    return "?";
}

RegisterKind parse_register_kind(std::string_view text) {
    for (auto kind : {RegisterKind::Address, RegisterKind::Result, RegisterKind::Life, RegisterKind::Adr,
                      RegisterKind::Res, RegisterKind::Mem, RegisterKind::Copy}) {
        if (to_string(kind) == text) {
            return kind;
        }
    }
    throw Error(ErrorCode::Schema, "unknown register kind '" + std::string(text) + "'");
}

Qubit Register::operator[](std::uint32_t i) const {
    if (i >= size) {
        throw Error(ErrorCode::Structure, std::string(to_string(kind)) + "_" + owner.to_string() + "[" +
                                              std::to_string(i) + "] is out of range (size " +
                                              std::to_string(size) + ")");
    }
    return static_cast<Qubit>(start + i);
}

AncillaCounts ancilla_counts(std::uint32_t n, std::uint32_t m, std::span<const std::uint32_t> mem_sizes) {
    check_address_width(n);
    if (m == 0) {
        throw Error(ErrorCode::InvalidParameter, "result width m must be at least 1");
    }
    const std::uint64_t leaves = std::uint64_t{1} << n;
    if (mem_sizes.size() != leaves) {
        throw Error(ErrorCode::InvalidParameter, "expected " + std::to_string(leaves) + " memory sizes, got " +
                                                     std::to_string(mem_sizes.size()));
    }
    AncillaCounts c;
    c.life = (leaves << 1) - 1;
    c.adr = leaves - n - 1;
    c.res = std::uint64_t{m} * ((leaves << 1) - 2);
    c.mem = std::accumulate(mem_sizes.begin(), mem_sizes.end(), std::uint64_t{0});
    c.total = c.life + c.adr + c.res;
    return c;
}

RegisterMap RegisterMap::allocate(std::uint32_t n, std::uint32_t m, std::vector<std::uint32_t> mem_sizes,
                                  std::uint64_t qubit_limit) {
    RegisterMap map;
    map.n_ = n;
    map.m_ = m;
    map.mem_sizes_ = std::move(mem_sizes);
    map.build(qubit_limit);
    return map;
}

RegisterMap RegisterMap::allocate_uniform(std::uint32_t n, std::uint32_t m, std::uint32_t mem_size,
                                          std::uint64_t qubit_limit) {
    check_address_width(n);
    return allocate(n, m, std::vector<std::uint32_t>(std::size_t{1} << n, mem_size), qubit_limit);
}

RegisterMap RegisterMap::with_copy_extension(std::uint32_t copies_per_node, std::uint64_t qubit_limit) const {
    if (copies_per_node_ != 0) {
        throw Error(ErrorCode::Structure, "register map already carries a copy extension");
    }
    RegisterMap map;
    map.n_ = n_;
    map.m_ = m_;
    map.mem_sizes_ = mem_sizes_;
    map.copies_per_node_ = copies_per_node;
    map.build(qubit_limit);
    return map;
}

void RegisterMap::build(std::uint64_t qubit_limit) {
    const AncillaCounts counts = ancilla_counts(n_, m_, mem_sizes_);
    const std::uint64_t leaves = num_leaves();
    const std::uint64_t nodes = (leaves << 1) - 1;
    const std::uint64_t total =
        n_ + std::uint64_t{m_} + counts.total + counts.mem + std::uint64_t{copies_per_node_} * (nodes - 1);
    if (total > qubit_limit || total > UINT32_MAX) {
        throw Error(ErrorCode::ResourceLimit, "layout needs " + std::to_string(total) +
                                                  " qubits, exceeding the limit of " +
                                                  std::to_string(std::min<std::uint64_t>(qubit_limit, UINT32_MAX)));
    }

    registers_.clear();
    life_slot_.assign(nodes, -1);
    adr_slot_.assign(nodes, -1);
    res_slot_.assign(nodes, -1);
    mem_slot_.assign(leaves, -1);
    copy_slot_.assign(nodes, -1);

    std::uint32_t next = 0;
    auto push = [&](RegisterKind kind, NodeLabel owner, std::uint32_t size) -> std::int64_t {
        if (size == 0) {
            return -1;
        }
        registers_.push_back(Register{kind, owner, next, size});
        next += size;
        return static_cast<std::int64_t>(registers_.size() - 1);
    };

    push(RegisterKind::Address, NodeLabel::root(), n_);
    push(RegisterKind::Result, NodeLabel::root(), m_);
    for (std::uint32_t k = 0; k <= n_; ++k) {
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v) {
            const NodeLabel x(k, v);
            const std::size_t id = node_index(x);
            life_slot_[id] = push(RegisterKind::Life, x, 1);
            if (k >= 1 && k < n_) {
                // Siblings always hold the same address bits: the right child
                // reuses the left child's register.
                adr_slot_[id] = (v & 1) == 0 ? push(RegisterKind::Adr, x, n_ - k) : adr_slot_[id - 1];
            }
            if (k >= 1) {
                res_slot_[id] = push(RegisterKind::Res, x, m_);
            }
        }
    }
    for (std::uint64_t z = 0; z < leaves; ++z) {
        mem_slot_[z] = push(RegisterKind::Mem, NodeLabel(n_, z), mem_sizes_[z]);
    }
    if (copies_per_node_ > 0) {
        for (std::uint32_t k = 1; k <= n_; ++k) {
            for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v) {
                const NodeLabel x(k, v);
                copy_slot_[node_index(x)] = push(RegisterKind::Copy, x, copies_per_node_);
            }
        }
    }
    num_qubits_ = next;
}

std::size_t RegisterMap::node_index(const NodeLabel &x) const {
    if (x.length() > n_) {
        throw Error(ErrorCode::Structure, "node '" + x.to_string() + "' is deeper than the tree");
    }
    return static_cast<std::size_t>((std::uint64_t{1} << x.length()) - 1 + x.value());
}

const Register &RegisterMap::find(std::int64_t slot, RegisterKind kind, const NodeLabel &x) const {
    if (slot < 0) {
        throw Error(ErrorCode::Structure,
                    "node '" + x.to_string() + "' has no " + std::string(to_string(kind)) + " register");
    }
    return registers_[static_cast<std::size_t>(slot)];
}

Register RegisterMap::address() const {
    return registers_[0];
}

Register RegisterMap::result() const {
    return registers_[1];
}

Register RegisterMap::life(const NodeLabel &x) const {
    return find(life_slot_[node_index(x)], RegisterKind::Life, x);
}

Register RegisterMap::adr(const NodeLabel &x) const {
    if (x.is_root()) {
        return address();
    }
    return find(adr_slot_[node_index(x)], RegisterKind::Adr, x);
}

Register RegisterMap::res(const NodeLabel &x) const {
    if (x.is_root()) {
        return result();
    }
    return find(res_slot_[node_index(x)], RegisterKind::Res, x);
}

Register RegisterMap::mem(const NodeLabel &leaf) const {
    if (leaf.length() != n_) {
        throw Error(ErrorCode::Structure, "mem registers exist only for leaves, got '" + leaf.to_string() + "'");
    }
    const std::int64_t slot = mem_slot_[leaf.value()];
    if (slot < 0) {
        return Register{RegisterKind::Mem, leaf, 0, 0};
    }
    return registers_[static_cast<std::size_t>(slot)];
}

Register RegisterMap::copies(const NodeLabel &x) const {
    const std::int64_t slot = copy_slot_[node_index(x)];
    if (slot < 0) {
        return Register{RegisterKind::Copy, x, 0, 0};
    }
    return registers_[static_cast<std::size_t>(slot)];
}

QubitId RegisterMap::identify(Qubit q) const {
    const std::uint32_t i = index_of(q);
    if (i >= num_qubits_) {
        throw Error(ErrorCode::Structure, "qubit " + std::to_string(i) + " is not allocated");
    }
    auto it = std::upper_bound(registers_.begin(), registers_.end(), i,
                               [](std::uint32_t idx, const Register &r) { return idx < r.start; });
    const Register &reg = *std::prev(it);
    return QubitId{reg.kind, reg.owner, i - reg.start};
}

bool RegisterMap::is_data(Qubit q) const {
    const RegisterKind kind = identify(q).kind;
    return kind == RegisterKind::Address || kind == RegisterKind::Result || kind == RegisterKind::Mem;
}

std::vector<Qubit> RegisterMap::data_qubits() const {
    std::vector<Qubit> out;
    for (const Register &r : registers_) {
        if (r.kind == RegisterKind::Address || r.kind == RegisterKind::Result || r.kind == RegisterKind::Mem) {
            for (std::uint32_t i = 0; i < r.size; ++i) {
                out.push_back(r[i]);
            }
        }
    }
    return out;
}

AncillaCounts RegisterMap::counts() const {
    AncillaCounts c;
    for (const Register &r : registers_) {
        switch (r.kind) {
            case RegisterKind::Life:
                c.life += r.size;
                break;
            case RegisterKind::Adr:
                c.adr += r.size;
                break;
            case RegisterKind::Res:
                c.res += r.size;
                break;
            case RegisterKind::Mem:
                c.mem += r.size;
                break;
            default:
                break;
        }
    }
    c.total = c.life + c.adr + c.res;
    return c;
}

}  // namespace qramforge
