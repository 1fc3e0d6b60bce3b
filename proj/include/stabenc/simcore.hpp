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
/**
 * @file
 * Dense statevector simulation of n-qubit circuits.
 *
 * Conventions used throughout the library:
 *  - Qubits are 1-based, q = 1..n. Qubit 1 is the least significant bit of
 *    a basis index j, so |j> = |j_n ... j_1> with j_n the top qubit.
 *  - R_y(angle)|0> = cos(angle/2)|0> + sin(angle/2)|1>.
 *  - StateVector and Circuit are immutable values once built; apply()
 *    returns a fresh state, so independent circuits can be evaluated
 *    concurrently without shared mutable state.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace stabenc {

using Complex = std::complex<double>;

/// Hard cap on the register width; 2^20 amplitudes keeps a state under
/// ~16 MB and guards against runaway allocations from bad input sizes.
inline constexpr int kMaxQubits = 20;

/// Normalized amplitude vector over n qubits.
class StateVector {
  public:
    StateVector(int n_qubits, Eigen::VectorXcd amplitudes);

    /// |0...0>
    static StateVector zero(int n_qubits);
    /// Computational basis state |index>.
    static StateVector basis(int n_qubits, std::uint64_t index);

    int n_qubits() const { return n_qubits_; }
    Eigen::Index dim() const { return amps_.size(); }
    const Eigen::VectorXcd &amplitudes() const { return amps_; }
    Complex amplitude(std::uint64_t index) const {
        return amps_(static_cast<Eigen::Index>(index));
    }

  private:
    int n_qubits_;
    Eigen::VectorXcd amps_;
};

class Circuit;

/// One (control qubit, required value) term of a multi-controlled gate.
struct ControlBit {
    int qubit;
    int value; // 0 or 1
};

struct RyGate {
    int target;
    double angle; // radians; R_y(2*lambda) prepares (cos lambda, sin lambda)
};

struct PauliZGate {
    int target;
};

struct PauliXGate {
    int target;
};

struct HadamardGate {
    int target;
};

/// Multi-qubit-controlled single-qubit gate: applies the 2x2 unitary `u`
/// to `target` on the subspace where every control matches its value.
/// Applied directly as a sparse action on the statevector; never
/// decomposed into elementary two-qubit gates.
struct McuGate {
    std::vector<ControlBit> controls;
    int target;
    Eigen::Matrix2cd u;
};

/// Whole subcircuit conditioned on one qubit. The body acts on the
/// remaining n-1 qubits; body qubit i maps to parent qubit i for
/// i < control and to parent qubit i+1 otherwise.
struct ControlledSub {
    int control;
    int value;
    std::shared_ptr<const Circuit> body;
};

using CircuitOp = std::variant<RyGate, PauliZGate, PauliXGate, HadamardGate,
                               McuGate, ControlledSub>;

/**
 * Ordered list of gate descriptors on a fixed register width.
 *
 * `depth_units` is the logical-depth accounting used by the encoding
 * algorithms (one unit per multi-controlled block, eta units for a sparse
 * loader); builders override it when the logical cost differs from the
 * raw op count. `op_count()` is always the literal number of gate
 * descriptors, nested subcircuit bodies included.
 */
class Circuit {
  public:
    explicit Circuit(int n_qubits);

    /// Validates qubit indices (and unitarity of MCU payloads, within
    /// 1e-12) before appending. Raises InputError / NumericError.
    void append(CircuitOp op);

    int n_qubits() const { return n_qubits_; }
    const std::vector<CircuitOp> &ops() const { return ops_; }
    bool empty() const { return ops_.empty(); }

    std::size_t op_count() const;

    std::int64_t depth_units() const { return depth_units_; }
    void set_depth_units(std::int64_t units) { depth_units_ = units; }

    /// Inverse circuit: ops reversed and individually inverted.
    Circuit adjoint() const;

  private:
    int n_qubits_;
    std::vector<CircuitOp> ops_;
    std::int64_t depth_units_ = 0;
};

/// Applies the circuit to the state and returns the new state. The norm
/// is checked after application; a deviation beyond 1e-9 raises
/// NumericError (cannot happen with validated unitary payloads).
StateVector apply(const Circuit &circuit, const StateVector &state);

/// <Z_qubit> = sum_j |a_j|^2 * (+1 if bit(qubit, j) = 0 else -1).
double expectation_z(const StateVector &state, int qubit);

struct BitstringCount {
    std::uint64_t bitstring;
    std::uint64_t count;
};

/// Draws `shots` measurements of all qubits in the Z basis. Counts sum to
/// `shots`; the result is sorted by bitstring index and deterministic
/// given the seed (own uniform-bits sampling, no std distributions).
std::vector<BitstringCount> sample_bitstrings(const StateVector &state,
                                              std::uint64_t shots,
                                              std::uint64_t rng_seed);

/// <a|b>; requires equal qubit counts.
Complex inner_product(const StateVector &a, const StateVector &b);

/// |<a|b>|^2
double state_fidelity(const StateVector &a, const StateVector &b);

Eigen::Matrix2cd ry_matrix(double angle);
Eigen::Matrix2cd pauli_z_matrix();

namespace detail {
/// In-place kernel used by apply() and by ControlledSub recursion; does
/// not validate or normalize.
void apply_ops_in_place(Eigen::VectorXcd &amps, int n_qubits,
                        const std::vector<CircuitOp> &ops);
} // namespace detail

} // namespace stabenc
