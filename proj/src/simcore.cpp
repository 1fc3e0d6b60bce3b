// Copyright 2026 The stabenc Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stabenc/simcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "stabenc/errors.hpp"
#include "stabenc/random.hpp"

namespace stabenc {

namespace {

constexpr double kNormTol = 1e-9;
constexpr double kUnitaryTol = 1e-12;

void check_qubit_count(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw InputError("qubit count " + std::to_string(n_qubits) +
                         " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
}

void check_qubit_index(int qubit, int n_qubits, const char *what) {
    if (qubit < 1 || qubit > n_qubits) {
        throw InputError(std::string(what) + " qubit " +
                         std::to_string(qubit) + " out of range [1, " +
                         std::to_string(n_qubits) + "]");
    }
}

/// Inserts `bit` at position `pos` (0-based) of `index`, shifting the
/// higher bits up by one.
std::uint64_t insert_bit(std::uint64_t index, int pos, int bit) {
    const std::uint64_t low_mask = (std::uint64_t{1} << pos) - 1;
    const std::uint64_t low = index & low_mask;
    const std::uint64_t high = index >> pos;
    return low | (static_cast<std::uint64_t>(bit) << pos) | (high << (pos + 1));
}

void apply_single_qubit(Eigen::VectorXcd &amps, int target_bit,
                        const Eigen::Matrix2cd &u) {
    const std::uint64_t dim = static_cast<std::uint64_t>(amps.size());
    const std::uint64_t mask = std::uint64_t{1} << target_bit;
    for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & mask) == 0) {
            const Complex a = amps(static_cast<Eigen::Index>(i));
            const Complex b = amps(static_cast<Eigen::Index>(i | mask));
            amps(static_cast<Eigen::Index>(i)) = u(0, 0) * a + u(0, 1) * b;
            amps(static_cast<Eigen::Index>(i | mask)) =
                u(1, 0) * a + u(1, 1) * b;
        }
    }
}

struct InPlaceVisitor {
    Eigen::VectorXcd &amps;
    int n_qubits;

    void operator()(const RyGate &g) const {
        apply_single_qubit(amps, g.target - 1, ry_matrix(g.angle));
    }
    void operator()(const PauliZGate &g) const {
        const std::uint64_t dim = static_cast<std::uint64_t>(amps.size());
        const std::uint64_t mask = std::uint64_t{1} << (g.target - 1);
        for (std::uint64_t i = 0; i < dim; ++i) {
            if (i & mask) {
                amps(static_cast<Eigen::Index>(i)) = -amps(static_cast<Eigen::Index>(i));
            }
        }
    }
    void operator()(const PauliXGate &g) const {
        const std::uint64_t dim = static_cast<std::uint64_t>(amps.size());
        const std::uint64_t mask = std::uint64_t{1} << (g.target - 1);
        for (std::uint64_t i = 0; i < dim; ++i) {
            if ((i & mask) == 0) {
                std::swap(amps(static_cast<Eigen::Index>(i)),
                          amps(static_cast<Eigen::Index>(i | mask)));
            }
        }
    }
    void operator()(const HadamardGate &g) const {
        static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        Eigen::Matrix2cd h;
        h << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
        apply_single_qubit(amps, g.target - 1, h);
    }
    void operator()(const McuGate &g) const {
        std::uint64_t control_mask = 0;
        std::uint64_t control_value = 0;
        for (const auto &c : g.controls) {
            control_mask |= std::uint64_t{1} << (c.qubit - 1);
            if (c.value) {
                control_value |= std::uint64_t{1} << (c.qubit - 1);
            }
        }
        const std::uint64_t dim = static_cast<std::uint64_t>(amps.size());
        const std::uint64_t target_mask = std::uint64_t{1} << (g.target - 1);
        for (std::uint64_t i = 0; i < dim; ++i) {
            if ((i & target_mask) == 0 && (i & control_mask) == control_value) {
                const Complex a = amps(static_cast<Eigen::Index>(i));
                const Complex b =
                    amps(static_cast<Eigen::Index>(i | target_mask));
                amps(static_cast<Eigen::Index>(i)) =
                    g.u(0, 0) * a + g.u(0, 1) * b;
                amps(static_cast<Eigen::Index>(i | target_mask)) =
                    g.u(1, 0) * a + g.u(1, 1) * b;
            }
        }
    }
    void operator()(const ControlledSub &g) const {
        const int control_bit = g.control - 1;
        const std::uint64_t sub_dim =
            static_cast<std::uint64_t>(amps.size()) >> 1;
        Eigen::VectorXcd sub(static_cast<Eigen::Index>(sub_dim));
        for (std::uint64_t s = 0; s < sub_dim; ++s) {
            sub(static_cast<Eigen::Index>(s)) = amps(static_cast<Eigen::Index>(
                insert_bit(s, control_bit, g.value)));
        }
        detail::apply_ops_in_place(sub, n_qubits - 1, g.body->ops());
        for (std::uint64_t s = 0; s < sub_dim; ++s) {
            amps(static_cast<Eigen::Index>(insert_bit(s, control_bit, g.value))) =
                sub(static_cast<Eigen::Index>(s));
        }
    }
};

struct ValidateVisitor {
    int n_qubits;

    void operator()(const RyGate &g) const {
        check_qubit_index(g.target, n_qubits, "target");
    }
    void operator()(const PauliZGate &g) const {
        check_qubit_index(g.target, n_qubits, "target");
    }
    void operator()(const PauliXGate &g) const {
        check_qubit_index(g.target, n_qubits, "target");
    }
    void operator()(const HadamardGate &g) const {
        check_qubit_index(g.target, n_qubits, "target");
    }
    void operator()(const McuGate &g) const {
        check_qubit_index(g.target, n_qubits, "target");
        std::uint64_t seen = 0;
        for (const auto &c : g.controls) {
            check_qubit_index(c.qubit, n_qubits, "control");
            if (c.qubit == g.target) {
                throw InputError("MCU control coincides with its target");
            }
            const std::uint64_t bit = std::uint64_t{1} << (c.qubit - 1);
            if (seen & bit) {
                throw InputError("duplicate MCU control qubit " +
                                 std::to_string(c.qubit));
            }
            seen |= bit;
            if (c.value != 0 && c.value != 1) {
                throw InputError("control value must be 0 or 1");
            }
        }
        const Eigen::Matrix2cd residual =
            g.u.adjoint() * g.u - Eigen::Matrix2cd::Identity();
        if (residual.cwiseAbs().maxCoeff() > kUnitaryTol) {
            throw NumericError("non-unitary MCU payload");
        }
    }
    void operator()(const ControlledSub &g) const {
        check_qubit_index(g.control, n_qubits, "control");
        if (g.value != 0 && g.value != 1) {
            throw InputError("control value must be 0 or 1");
        }
        if (!g.body) {
            throw InputError("controlled subcircuit without a body");
        }
        if (g.body->n_qubits() != n_qubits - 1) {
            throw InputError("controlled subcircuit body must act on n-1 qubits");
        }
    }
};

struct AdjointVisitor {
    CircuitOp operator()(const RyGate &g) const {
        return RyGate{g.target, -g.angle};
    }
    CircuitOp operator()(const PauliZGate &g) const { return g; }
    CircuitOp operator()(const PauliXGate &g) const { return g; }
    CircuitOp operator()(const HadamardGate &g) const { return g; }
    CircuitOp operator()(const McuGate &g) const {
        return McuGate{g.controls, g.target, g.u.adjoint()};
    }
    CircuitOp operator()(const ControlledSub &g) const {
        return ControlledSub{g.control, g.value,
                             std::make_shared<const Circuit>(g.body->adjoint())};
    }
};

} // namespace

StateVector::StateVector(int n_qubits, Eigen::VectorXcd amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    check_qubit_count(n_qubits_);
    const Eigen::Index expected = Eigen::Index{1} << n_qubits_;
    if (amps_.size() != expected) {
        throw InputError("amplitude vector has " + std::to_string(amps_.size()) +
                         " entries, expected 2^" + std::to_string(n_qubits_));
    }
    const double norm2 = amps_.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-6) {
        throw InputError("amplitudes are not normalized (|a|^2 = " +
                         std::to_string(norm2) + ")");
    }
    // Pin the invariant exactly; tolerated drift comes from callers that
    // assemble amplitudes numerically.
    amps_ /= std::sqrt(norm2);
}

StateVector StateVector::zero(int n_qubits) {
    check_qubit_count(n_qubits);
    Eigen::VectorXcd amps =
        Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
    amps(0) = 1.0;
    return StateVector(n_qubits, std::move(amps));
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
    check_qubit_count(n_qubits);
    const std::uint64_t dim = std::uint64_t{1} << n_qubits;
    if (index >= dim) {
        throw InputError("basis index out of range");
    }
    Eigen::VectorXcd amps =
        Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    amps(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(n_qubits, std::move(amps));
}

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
    check_qubit_count(n_qubits_);
}

void Circuit::append(CircuitOp op) {
    std::visit(ValidateVisitor{n_qubits_}, op);
    ops_.push_back(std::move(op));
    ++depth_units_;
}

std::size_t Circuit::op_count() const {
    std::size_t count = 0;
    for (const auto &op : ops_) {
        count += 1;
        if (const auto *sub = std::get_if<ControlledSub>(&op)) {
            count += sub->body->op_count();
        }
    }
    return count;
}

Circuit Circuit::adjoint() const {
    Circuit inverse(n_qubits_);
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
        inverse.append(std::visit(AdjointVisitor{}, *it));
    }
    inverse.set_depth_units(depth_units_);
    return inverse;
}

namespace detail {
void apply_ops_in_place(Eigen::VectorXcd &amps, int n_qubits,
                        const std::vector<CircuitOp> &ops) {
    for (const auto &op : ops) {
        std::visit(InPlaceVisitor{amps, n_qubits}, op);
    }
}
} // namespace detail

StateVector apply(const Circuit &circuit, const StateVector &state) {
    if (circuit.n_qubits() != state.n_qubits()) {
        throw InputError("circuit acts on " +
                         std::to_string(circuit.n_qubits()) +
                         " qubits but the state has " +
                         std::to_string(state.n_qubits()));
    }
    Eigen::VectorXcd amps = state.amplitudes();
    detail::apply_ops_in_place(amps, state.n_qubits(), circuit.ops());
    const double norm2 = amps.squaredNorm();
    if (std::abs(norm2 - 1.0) > kNormTol) {
        throw NumericError("state norm drifted to " + std::to_string(norm2) +
                           " after circuit application");
    }
    return StateVector(state.n_qubits(), std::move(amps));
}

double expectation_z(const StateVector &state, int qubit) {
    check_qubit_index(qubit, state.n_qubits(), "measured");
    const std::uint64_t mask = std::uint64_t{1} << (qubit - 1);
    const auto &amps = state.amplitudes();
    double value = 0.0;
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps(i));
        value += (static_cast<std::uint64_t>(i) & mask) ? -p : p;
    }
    return value;
}

std::vector<BitstringCount> sample_bitstrings(const StateVector &state,
                                              std::uint64_t shots,
                                              std::uint64_t rng_seed) {
    if (shots < 1) {
        throw InputError("shots must be >= 1");
    }
    const auto &amps = state.amplitudes();
    std::vector<double> cdf(static_cast<std::size_t>(amps.size()));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        acc += std::norm(amps(i));
        cdf[static_cast<std::size_t>(i)] = acc;
    }
    cdf.back() = 1.0;

    std::mt19937_64 rng(rng_seed);
    std::unordered_map<std::uint64_t, std::uint64_t> hist;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = uniform_double(rng);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::uint64_t j =
            static_cast<std::uint64_t>(std::distance(cdf.begin(), it));
        ++hist[std::min<std::uint64_t>(j, cdf.size() - 1)];
    }

    std::vector<BitstringCount> counts;
    counts.reserve(hist.size());
    for (const auto &[bitstring, count] : hist) {
        counts.push_back({bitstring, count});
    }
    std::sort(counts.begin(), counts.end(),
              [](const BitstringCount &a, const BitstringCount &b) {
                  return a.bitstring < b.bitstring;
              });
    return counts;
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw InputError("inner product between states of different size");
    }
    return a.amplitudes().dot(b.amplitudes());
}

double state_fidelity(const StateVector &a, const StateVector &b) {
    return std::norm(inner_product(a, b));
}

Eigen::Matrix2cd ry_matrix(double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    Eigen::Matrix2cd m;
    m << c, -s, s, c;
    return m;
}

Eigen::Matrix2cd pauli_z_matrix() {
    Eigen::Matrix2cd m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

} // namespace stabenc
