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

#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qramforge {

/// Largest supported address width. Node counts are 2^(n+1)-1 and must stay
/// representable in 32-bit qubit indices together with their registers.
inline constexpr std::uint32_t kMaxAddressWidth = 24;

/// Default ceiling on the number of physical qubits a layout may allocate.
inline constexpr std::uint64_t kDefaultQubitLimit = std::uint64_t{1} << 26;

/// Physical qubit index.
enum class Qubit : std::uint32_t {};

constexpr std::uint32_t index_of(Qubit q) noexcept {
    return static_cast<std::uint32_t>(q);
}

/// A node of the binary address tree: a bit-string of `length` bits whose
/// integer value is `value` (most significant bit first, i.e. leftmost).
/// The root is the empty string. Children append one bit on the right.
class NodeLabel {
   public:
    constexpr NodeLabel() = default;
    NodeLabel(std::uint32_t length, std::uint64_t value);

    static constexpr NodeLabel root() noexcept {
        return NodeLabel();
    }
    /// Parses "", "0", "101", ... ; "e" is accepted for the root.
    static NodeLabel parse(std::string_view bits);

    constexpr std::uint32_t length() const noexcept {
        return length_;
    }
    constexpr std::uint64_t value() const noexcept {
        return value_;
    }
    constexpr bool is_root() const noexcept {
        return length_ == 0;
    }

    NodeLabel child(unsigned bit) const;
    bool is_prefix_of(const NodeLabel &other) const noexcept;

    /// Bit-string form; the root renders as "".
    std::string to_string() const;

    friend constexpr bool operator==(const NodeLabel &, const NodeLabel &) = default;
    friend constexpr std::strong_ordering operator<=>(const NodeLabel &, const NodeLabel &) = default;

   private:
    std::uint32_t length_ = 0;
    std::uint64_t value_ = 0;
};

/// Level k holds the 2^k labels of length k in ascending order.
std::vector<std::vector<NodeLabel>> enumerate_nodes(std::uint32_t n);

enum class RegisterKind { Address, Result, Life, Adr, Res, Mem, Copy };

std::string_view to_string(RegisterKind kind);
RegisterKind parse_register_kind(std::string_view text);

/// A contiguous run of physical qubits owned by one tree node.
struct Register {
    RegisterKind kind;
    NodeLabel owner;
    std::uint32_t start = 0;
    std::uint32_t size = 0;

    Qubit operator[](std::uint32_t i) const;
    friend bool operator==(const Register &, const Register &) = default;
};

/// Logical name of a single physical qubit.
struct QubitId {
    RegisterKind kind;
    NodeLabel owner;
    std::uint32_t index = 0;

    friend bool operator==(const QubitId &, const QubitId &) = default;
};

struct AncillaCounts {
    std::uint64_t life = 0;
    std::uint64_t adr = 0;
    std::uint64_t res = 0;
    std::uint64_t mem = 0;
    /// life + adr + res; the memory registers are data, not ancillas.
    std::uint64_t total = 0;

    friend bool operator==(const AncillaCounts &, const AncillaCounts &) = default;
};

/// Closed-form register sizes for the tree of address width n and result width m.
AncillaCounts ancilla_counts(std::uint32_t n, std::uint32_t m, std::span<const std::uint32_t> mem_sizes);

/// Allocation of every qubit the access circuit touches.
///
/// Physical numbering is fixed: address (n), result (m), then level by level
/// and within a level by ascending label, each node's life qubit, its adr
/// register (internal non-root left children only) and its res register (non-root
/// nodes only); then mem_z for every leaf in ascending order; finally the
/// optional copy extension used by the fan-out hand-down, one register per
/// non-root node in the same node order.
///
/// adr of the root aliases the address register and res of the root aliases
/// the result register. Sibling nodes x0 and x1 share one physical adr
/// register (owned by x0), since both hold the same low address bits.
class RegisterMap {
   public:
    static RegisterMap allocate(std::uint32_t n, std::uint32_t m, std::vector<std::uint32_t> mem_sizes,
                                std::uint64_t qubit_limit = kDefaultQubitLimit);
    static RegisterMap allocate_uniform(std::uint32_t n, std::uint32_t m, std::uint32_t mem_size,
                                        std::uint64_t qubit_limit = kDefaultQubitLimit);

    /// Copy of this map with `copies_per_node` extra qubits for every non-root
    /// node. Only valid on a map without an extension.
    RegisterMap with_copy_extension(std::uint32_t copies_per_node,
                                    std::uint64_t qubit_limit = kDefaultQubitLimit) const;

    std::uint32_t address_width() const noexcept {
        return n_;
    }
    std::uint32_t result_width() const noexcept {
        return m_;
    }
    std::uint64_t num_leaves() const noexcept {
        return std::uint64_t{1} << n_;
    }
    std::span<const std::uint32_t> mem_sizes() const noexcept {
        return mem_sizes_;
    }
    std::uint32_t copies_per_node() const noexcept {
        return copies_per_node_;
    }
    std::uint32_t num_qubits() const noexcept {
        return num_qubits_;
    }

    Register address() const;
    Register result() const;
    Register life(const NodeLabel &x) const;
    /// Root resolves to the address register; x1 resolves to adr of x0.
    Register adr(const NodeLabel &x) const;
    /// Root resolves to the result register.
    Register res(const NodeLabel &x) const;
    Register mem(const NodeLabel &leaf) const;
    Register copies(const NodeLabel &x) const;

    /// Registers in allocation order (no aliases, empty registers omitted).
    const std::vector<Register> &registers() const noexcept {
        return registers_;
    }

    QubitId identify(Qubit q) const;
    bool is_data(Qubit q) const;

    /// Data qubits (address, result, all mem) in allocation order.
    std::vector<Qubit> data_qubits() const;

    AncillaCounts counts() const;

    friend bool operator==(const RegisterMap &a, const RegisterMap &b) {
        return a.n_ == b.n_ && a.m_ == b.m_ && a.mem_sizes_ == b.mem_sizes_ &&
               a.copies_per_node_ == b.copies_per_node_;
    }

   private:
    RegisterMap() = default;
    std::size_t node_index(const NodeLabel &x) const;
    const Register &find(std::int64_t slot, RegisterKind kind, const NodeLabel &x) const;
    void build(std::uint64_t qubit_limit);

    std::uint32_t n_ = 0;
    std::uint32_t m_ = 0;
    std::vector<std::uint32_t> mem_sizes_;
    std::uint32_t copies_per_node_ = 0;
    std::uint32_t num_qubits_ = 0;

    std::vector<Register> registers_;
    // Per node (heap order): index into registers_, or -1.
    std::vector<std::int64_t> life_slot_;
    std::vector<std::int64_t> adr_slot_;
    std::vector<std::int64_t> res_slot_;
    std::vector<std::int64_t> mem_slot_;
    std::vector<std::int64_t> copy_slot_;
};

}  // namespace qramforge
