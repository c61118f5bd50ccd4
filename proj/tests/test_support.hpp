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

// Reference implementations used as oracles by the tests. They are written
// independently of the library code they check: plain std::map states, direct
// bit loops and truncated power series.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qramforge/circuit.hpp"
#include "qramforge/simulator.hpp"
#include "qramforge/unitary.hpp"
#include "qramforge/verifier.hpp"

namespace qramforge::testing {

using Cplx = std::complex<double>;
/// Bit-vector keyed state; bit i is qubit i.
using RefState = std::map<std::vector<bool>, Cplx>;

inline RefState ref_from(const SparseState &s) {
    RefState out;
    for (const auto &e : s.entries()) {
        std::vector<bool> bits(s.width());
        for (std::size_t i = 0; i < s.width(); ++i) {
            bits[i] = e.bits.get(i);
        }
        out[bits] += e.amplitude;
    }
    return out;
}

/// max |a - b| over the union of supports.
inline double ref_distance(const RefState &a, const RefState &b) {
    double worst = 0.0;
    for (const auto &[k, v] : a) {
        const auto it = b.find(k);
        worst = std::max(worst, std::abs(v - (it == b.end() ? Cplx{} : it->second)));
    }
    for (const auto &[k, v] : b) {
        const auto it = a.find(k);
        worst = std::max(worst, std::abs(v - (it == a.end() ? Cplx{} : it->second)));
    }
    return worst;
}

/// Gate-by-gate reference simulation with no sparsity tricks.
inline RefState ref_apply(const RefState &in, const Gate &g, const std::map<std::string, const UnitarySpec *> &us) {
    RefState out;
    auto q = [](Qubit x) { return static_cast<std::size_t>(index_of(x)); };
    for (const auto &[bits_in, amp] : in) {
        std::vector<bool> bits = bits_in;
        switch (g.kind) {
            case GateKind::PauliX:
                bits[q(g.targets[0])] = !bits[q(g.targets[0])];
                out[bits] += amp;
                break;
            case GateKind::CNOT:
                if (bits[q(g.controls[0])]) {
                    bits[q(g.targets[0])] = !bits[q(g.targets[0])];
                }
                out[bits] += amp;
                break;
            case GateKind::Toffoli:
                if (bits[q(g.controls[0])] && bits[q(g.controls[1])]) {
                    bits[q(g.targets[0])] = !bits[q(g.targets[0])];
                }
                out[bits] += amp;
                break;
            case GateKind::Fredkin:
                if (bits[q(g.controls[0])]) {
                    const bool a = bits[q(g.targets[0])];
                    bits[q(g.targets[0])] = bits[q(g.targets[1])];
                    bits[q(g.targets[1])] = a;
                }
                out[bits] += amp;
                break;
            case GateKind::ControlledOpaque: {
                if (!bits[q(g.controls[0])]) {
                    out[bits] += amp;
                    break;
                }
                const Matrix &u = us.at(g.leaf.to_string())->matrix();
                std::size_t col = 0;
                for (std::size_t t = 0; t < g.targets.size(); ++t) {
                    col |= static_cast<std::size_t>(bits[q(g.targets[t])]) << t;
                }
                for (std::size_t row = 0; row < (std::size_t{1} << g.targets.size()); ++row) {
                    const Cplx entry = g.dagger ? std::conj(u(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(row)))
                                                : u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
                    for (std::size_t t = 0; t < g.targets.size(); ++t) {
                        bits[q(g.targets[t])] = (row >> t) & 1U;
                    }
                    out[bits] += amp * entry;
                }
                break;
            }
        }
    }
    RefState pruned;
    for (const auto &[k, v] : out) {
        if (std::abs(v) > 1e-14) {
            pruned[k] = v;
        }
    }
    return pruned;
}

inline RefState ref_run(RefState s, const Circuit &c, const std::vector<UnitarySpec> &unitaries) {
    std::map<std::string, const UnitarySpec *> us;
    for (const UnitarySpec &u : unitaries) {
        us[u.leaf().to_string()] = &u;
    }
    for (const Moment &moment : c.moments()) {
        for (const Gate &g : moment) {
            s = ref_apply(s, g, us);
        }
    }
    return s;
}

/// |y> U^y(|r>|mem_y>) over data bits (address, result, mem by leaf), computed
/// by looping over the matrix column with explicit bit packing.
inline RefState ref_access(const InstanceSpec &inst, const BasisAssignment &a) {
    const std::size_t leaves = std::size_t{1} << inst.n;
    std::size_t width = inst.n + inst.m;
    std::vector<std::size_t> mem_at(leaves);
    for (std::size_t z = 0; z < leaves; ++z) {
        mem_at[z] = width;
        width += inst.k[z];
    }
    std::vector<bool> base(width, false);
    for (std::uint32_t j = 0; j < inst.n; ++j) {
        base[j] = (a.address >> j) & 1U;
    }
    for (std::size_t z = 0; z < leaves; ++z) {
        const std::uint64_t v = a.mem.empty() ? 0 : a.mem[z];
        for (std::uint32_t j = 0; j < inst.k[z]; ++j) {
            base[mem_at[z] + j] = (v >> j) & 1U;
        }
    }
    const std::size_t y = a.address;
    const std::uint32_t ky = inst.k[y];
    const std::uint64_t mem_y = a.mem.empty() ? 0 : a.mem[y];
    const Matrix &u = inst.unitaries[y].matrix();
    const auto col = static_cast<Eigen::Index>(a.result + (mem_y << inst.m));
    RefState out;
    for (Eigen::Index row = 0; row < u.rows(); ++row) {
        if (std::abs(u(row, col)) <= 1e-14) {
            continue;
        }
        std::vector<bool> bits = base;
        const auto r = static_cast<std::uint64_t>(row);
        for (std::uint32_t j = 0; j < inst.m; ++j) {
            bits[inst.n + j] = (r >> j) & 1U;
        }
        for (std::uint32_t j = 0; j < ky; ++j) {
            bits[mem_at[y] + j] = (r >> (inst.m + j)) & 1U;
        }
        out[bits] += u(row, col);
    }
    return out;
}

/// exp(A) by scaling and squaring around a 30-term Taylor series.
inline Matrix expm_taylor(const Matrix &a) {
    int squarings = 0;
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    while (norm > 0.5) {
        norm /= 2.0;
        ++squarings;
    }
    const Matrix scaled = a / std::pow(2.0, squarings);
    Matrix term = Matrix::Identity(a.rows(), a.cols());
    Matrix sum = term;
    for (int i = 1; i <= 30; ++i) {
        term = term * scaled / static_cast<double>(i);
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) {
        sum = sum * sum;
    }
    return sum;
}

/// Sum over levels k < n of (n-k-1) * 2^k, one term at a time.
inline std::uint64_t adr_term_sum(std::uint32_t n) {
    std::uint64_t total = 0;
    for (std::uint32_t k = 0; k < n; ++k) {
        total += std::uint64_t{n - k - 1} << k;
    }
    return total;
}

/// Random basis assignment for an instance shape.
inline BasisAssignment random_assignment(std::uint32_t n, std::uint32_t m, const std::vector<std::uint32_t> &k,
                                         std::mt19937_64 &rng) {
    auto draw = [&](std::uint32_t bits) -> std::uint64_t {
        return bits == 0 ? 0 : rng() & ((std::uint64_t{1} << bits) - 1);
    };
    BasisAssignment a;
    a.address = draw(n);
    a.result = draw(m);
    for (std::uint32_t kz : k) {
        a.mem.push_back(draw(kz));
    }
    return a;
}

}  // namespace qramforge::testing
