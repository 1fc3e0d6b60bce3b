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
 * Exact amplitude encoding of a real vector of length 2^n into an n-qubit
 * circuit.
 *
 * The encoder splits the vector recursively into upper/lower halves. Each
 * split contributes a multi-controlled R_y(2*lambda) on the split qubit
 * with cos(lambda) = N_u / sqrt(N_u^2 + N_d^2); each final 2x1 block is
 * loaded by one multi-controlled Z^alpha * R_y(2*beta) so that the
 * produced pair equals (x, x') / sqrt(x^2 + x'^2) exactly, for any sign
 * combination. The upper amplitude always maps to cos and the lower to
 * sin.
 */

#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stabenc/simcore.hpp"

namespace stabenc {

/// Real data vector prepared for encoding: power-of-two length and no
/// all-zero aligned pair (which would make a 2x1 block unnormalizable).
struct InputVector {
    Eigen::VectorXd values;
    int n_qubits = 0;
    double epsilon = 0.0;
    /// Entries introduced by padding or overwritten by zero-block repair.
    std::vector<Eigen::Index> modified_indices;
};

/// Pads `raw` with epsilon entries up to the next power of two, then
/// overwrites every all-zero aligned pair with (epsilon, epsilon).
/// epsilon must be > 0; the repair is lossy by design (reconstruction
/// returns epsilon, not 0, for repaired entries).
InputVector pad_and_repair(const Eigen::VectorXd &raw, double epsilon = 1e-6);

/// Wraps `values` already satisfying the InputVector invariants (used for
/// sparse vectors whose zeros are structural and must stay zero).
InputVector input_from_prepared(Eigen::VectorXd values);

/// Invertible elementwise filter applied before encoding (optional
/// preprocessing stage); the inverse undoes it after reconstruction.
struct MonotoneMap {
    std::string name;
    std::function<double(double)> forward;
    std::function<double(double)> inverse;

    static MonotoneMap identity();
    static MonotoneMap sigmoid(double steepness = 1.0);
};

/// Applies map.forward elementwise. All-zero outputs still require
/// pad_and_repair before encoding; this function does not repair.
Eigen::VectorXd adjust_input(const Eigen::VectorXd &raw,
                             const MonotoneMap &map);

/// One leaf block action: Z^alpha * R_y(2*beta) on qubit 1.
struct LeafRotation {
    double beta = 0.0;
    int alpha = 0; // 0 -> identity, 1 -> Z
};

/**
 * All rotation angles of the exact encoding, organized by split level.
 * Level q in [2, n] holds the 2^(n-q) lambda angles that split length-2^q
 * segments in half (level n is the single top split); the leaf level
 * holds the 2^(n-1) (beta, alpha) block rotations. Every lambda lies in
 * [0, pi/2].
 */
struct AngleTree {
    int n_qubits = 0;
    /// lambda_levels[q - 2] are the angles of level q, ordered by segment.
    std::vector<std::vector<double>> lambda_levels;
    std::vector<LeafRotation> leaves;

    const std::vector<double> &lambdas(int level) const {
        return lambda_levels.at(static_cast<std::size_t>(level - 2));
    }
};

/// Computes the angle tree of a repaired input. Raises NumericError on a
/// zero-norm 2x1 block (impossible after pad_and_repair).
AngleTree compute_angles(const InputVector &x);

struct ExactEncoding {
    Circuit circuit;
    double norm = 0.0; // N = ||x||_2, so x_k = N * <k|U|0>
};

/**
 * Builds the n-qubit circuit U with apply(U, |0^n>) * N reproducing x
 * exactly (within 1e-10). Blocks whose amplitudes are structurally zero
 * are pruned, so an eta-sparse vector costs O(eta * n) gates; the
 * circuit's depth_units is set to the number of nonzero components, the
 * unit in which the depth formulas of the recursive scheme are stated.
 */
ExactEncoding build_exact_circuit(const InputVector &x);

/// N * amplitudes of apply(encoding.circuit, |0^n>), as a real vector.
Eigen::VectorXd reconstruct(const ExactEncoding &encoding);

} // namespace stabenc
