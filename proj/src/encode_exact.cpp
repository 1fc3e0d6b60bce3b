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

#include "stabenc/encode_exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "stabenc/errors.hpp"

namespace stabenc {

namespace {

int qubits_for_length(Eigen::Index length) {
    const auto u = static_cast<std::uint64_t>(length);
    if (u < 2 || !std::has_single_bit(u)) {
        throw InputError("length " + std::to_string(length) +
                         " is not a power of two >= 2");
    }
    return std::countr_zero(u);
}

double clamped_arccos(double ratio) {
    return std::acos(std::clamp(ratio, -1.0, 1.0));
}

/// Angle of the split of one segment: cos(lambda) = ||upper|| / ||segment||.
/// A fully zero segment maps to lambda = 0, which the builder prunes.
double split_lambda(const Eigen::VectorXd &values, Eigen::Index start,
                    Eigen::Index half) {
    const double norm_u = values.segment(start, half).norm();
    const double norm_d = values.segment(start + half, half).norm();
    const double total = std::hypot(norm_u, norm_d);
    if (total == 0.0) {
        return 0.0;
    }
    return clamped_arccos(norm_u / total);
}

LeafRotation leaf_rotation(double x, double x_prime) {
    const double r = std::hypot(x, x_prime);
    if (r == 0.0) {
        return {0.0, 0};
    }
    const double a = x / r;
    const double b = x_prime / r;
    // Z^alpha R_y(2 beta)|0> = (cos beta, (-1)^alpha sin beta); beta in
    // [0, pi] reaches every unit pair with the lower sign carried by alpha.
    if (b >= 0.0) {
        return {std::atan2(b, a), 0};
    }
    return {std::atan2(-b, a), 1};
}

std::vector<ControlBit> prefix_controls(int n_qubits, int level,
                                        std::uint64_t segment) {
    // Segment index bits select qubits n..level+1; bit (n - level - 1 - i)
    // of `segment` is the value of qubit (n - i).
    std::vector<ControlBit> controls;
    controls.reserve(static_cast<std::size_t>(n_qubits - level));
    for (int qubit = n_qubits; qubit > level; --qubit) {
        const int bit_pos = qubit - level - 1;
        const int value = static_cast<int>((segment >> bit_pos) & 1U);
        controls.push_back({qubit, value});
    }
    return controls;
}

} // namespace

InputVector pad_and_repair(const Eigen::VectorXd &raw, double epsilon) {
    if (raw.size() == 0) {
        throw InputError("cannot encode an empty vector");
    }
    if (!(epsilon > 0.0)) {
        throw InputError("epsilon must be positive");
    }
    const auto raw_len = static_cast<std::uint64_t>(raw.size());
    const std::uint64_t padded_len = std::max<std::uint64_t>(2, std::bit_ceil(raw_len));

    InputVector out;
    out.epsilon = epsilon;
    out.values = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(padded_len),
                                           epsilon);
    out.values.head(raw.size()) = raw;
    for (Eigen::Index k = raw.size();
         k < static_cast<Eigen::Index>(padded_len); ++k) {
        out.modified_indices.push_back(k);
    }
    for (Eigen::Index k = 0; k < out.values.size(); k += 2) {
        if (out.values(k) == 0.0 && out.values(k + 1) == 0.0) {
            out.values(k) = epsilon;
            out.values(k + 1) = epsilon;
            if (k < raw.size()) {
                out.modified_indices.push_back(k);
            }
            if (k + 1 < raw.size()) {
                out.modified_indices.push_back(k + 1);
            }
        }
    }
    std::sort(out.modified_indices.begin(), out.modified_indices.end());
    out.n_qubits = qubits_for_length(out.values.size());
    return out;
}

InputVector input_from_prepared(Eigen::VectorXd values) {
    InputVector out;
    out.n_qubits = qubits_for_length(values.size());
    out.values = std::move(values);
    return out;
}

MonotoneMap MonotoneMap::identity() {
    return {"identity", [](double x) { return x; }, [](double y) { return y; }};
}

MonotoneMap MonotoneMap::sigmoid(double steepness) {
    return {"sigmoid",
            [steepness](double x) { return 1.0 / (1.0 + std::exp(-steepness * x)); },
            [steepness](double y) { return std::log(y / (1.0 - y)) / steepness; }};
}

Eigen::VectorXd adjust_input(const Eigen::VectorXd &raw,
                             const MonotoneMap &map) {
    return raw.unaryExpr(map.forward);
}

AngleTree compute_angles(const InputVector &x) {
    const int n = x.n_qubits;
    if (x.values.norm() == 0.0) {
        throw NumericError("cannot encode a zero-norm vector");
    }
    AngleTree tree;
    tree.n_qubits = n;
    tree.lambda_levels.assign(static_cast<std::size_t>(std::max(0, n - 1)), {});
    for (int level = n; level >= 2; --level) {
        const Eigen::Index seg_len = Eigen::Index{1} << level;
        const std::uint64_t seg_count = std::uint64_t{1}
                                        << (n - level);
        auto &lambdas = tree.lambda_levels[static_cast<std::size_t>(level - 2)];
        lambdas.reserve(seg_count);
        for (std::uint64_t s = 0; s < seg_count; ++s) {
            lambdas.push_back(split_lambda(
                x.values, static_cast<Eigen::Index>(s) * seg_len, seg_len / 2));
        }
    }
    tree.leaves.reserve(static_cast<std::size_t>(x.values.size() / 2));
    for (Eigen::Index k = 0; k < x.values.size(); k += 2) {
        tree.leaves.push_back(leaf_rotation(x.values(k), x.values(k + 1)));
    }
    return tree;
}

ExactEncoding build_exact_circuit(const InputVector &x) {
    const int n = x.n_qubits;
    const double norm = x.values.norm();
    if (norm == 0.0) {
        throw NumericError("cannot encode a zero-norm vector");
    }
    const AngleTree tree = compute_angles(x);

    Circuit circuit(n);
    // Split rotations, top level first so that every control pattern is
    // already populated when its gate fires.
    for (int level = n; level >= 2; --level) {
        const auto &lambdas = tree.lambdas(level);
        for (std::uint64_t s = 0; s < lambdas.size(); ++s) {
            const double lambda = lambdas[s];
            if (lambda == 0.0) {
                continue; // R_y(0): segment is upper-only or fully zero
            }
            if (level == n) {
                circuit.append(RyGate{n, 2.0 * lambda});
            } else {
                circuit.append(
                    McuGate{prefix_controls(n, level, s), level,
                            ry_matrix(2.0 * lambda)});
            }
        }
    }
    // Leaf blocks: one MCU per nonzero 2x1 block.
    for (std::uint64_t k = 0; k < tree.leaves.size(); ++k) {
        const LeafRotation &leaf = tree.leaves[k];
        if (leaf.beta == 0.0 && leaf.alpha == 0) {
            continue; // block is (x, 0) with x >= 0, or fully zero
        }
        Eigen::Matrix2cd u = ry_matrix(2.0 * leaf.beta);
        if (leaf.alpha == 1) {
            u = pauli_z_matrix() * u;
        }
        circuit.append(McuGate{prefix_controls(n, 1, k), 1, u});
    }

    const auto nonzero =
        (x.values.array() != 0.0).count();
    circuit.set_depth_units(static_cast<std::int64_t>(nonzero));
    return {std::move(circuit), norm};
}

Eigen::VectorXd reconstruct(const ExactEncoding &encoding) {
    const StateVector state =
        apply(encoding.circuit, StateVector::zero(encoding.circuit.n_qubits()));
    return encoding.norm * state.amplitudes().real();
}

} // namespace stabenc
