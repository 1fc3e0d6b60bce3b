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
 * Recursive approximate-scheme encoder: blockwise exact seeding, shot- or
 * statevector-based approximation of U^dagger V |0>, and level-by-level
 * fusion into a single n-qubit circuit with polynomial logical depth.
 *
 * Depth accounting follows the scheme's own units: an encode circuit
 * costs one unit per nonzero component it loads, each fuse adds one R_y
 * unit plus eta units for the sparse loader. The closed-form predictions
 * (depth_report) cap each level's eta term at the subspace dimension
 * 2^(q-1), which they can never exceed.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "stabenc/encode_exact.hpp"
#include "stabenc/simcore.hpp"

namespace stabenc {

enum class ApproxMode {
    shot_sampled,     // estimate |c_j| from chi circuit executions
    exact_amplitudes, // read |c_j| from the statevector directly
};

struct RasaParams {
    int alpha = 1; // truncation keeps the q^alpha largest components
    int p = 2;     // significant figures kept when rounding |c_j|
    int q_in = 2;  // block scale seeding the recursion, 1 < q_in <= n
    ApproxMode mode = ApproxMode::shot_sampled;
    /// Fixed shot budget; when unset the per-level rule
    /// chi = q^alpha * 10^(2p) applies.
    std::optional<std::uint64_t> chi_override;
    double epsilon = 1e-6;
    std::uint64_t rng_seed = 0;
    int threads = 1;

    void validate(int n_qubits) const;
    std::uint64_t chi_for_level(int q) const;
};

/// (U, V, N_u, N_v) tuple carried between levels: circuits preparing the
/// normalized upper/lower segments plus the segment norms.
struct EncodedBlock {
    Circuit u;
    Circuit v;
    double norm_u = 0.0;
    double norm_v = 0.0;
};

struct SparseComponent {
    std::uint64_t bitstring;
    Complex coeff;
};

/// Truncated, renormalized approximation of U^dagger V |0>.
struct SparseApproxState {
    std::vector<SparseComponent> components;
    int eta() const { return static_cast<int>(components.size()); }
};

/// Normalized upper/lower segments of one block plus their norms.
struct SegmentPair {
    Eigen::VectorXd upper;
    Eigen::VectorXd lower;
    double norm_u = 0.0;
    double norm_d = 0.0;
};

struct ApproxOutcome {
    SparseApproxState state;
    Circuit u_delta; // prepares the sparse state; depth_units = eta
};

struct FuseOutcome {
    Circuit u_tilde;
    double norm = 0.0; // sqrt(N_u^2 + N_v^2)
    int eta = 0;
};

struct LevelStat {
    int q = 0;
    int eta = 0; // largest eta among the level's approx calls
    std::uint64_t chi = 0;
    std::int64_t depth_measured = 0; // depth_units of the level's output
    std::int64_t op_count = 0;       // raw gate count, for transparency
};

struct DepthReport {
    std::vector<LevelStat> levels;
    std::int64_t approx_depth_formula = 0;
    std::int64_t exact_depth_formula = 0;
    int crossover_q = 0;

    nlohmann::json to_json() const;
};

/// Closed-form depth predictions plus the crossover level: the last q at
/// which q^alpha >= 2^(q-1), i.e. beyond which the approximation becomes
/// strictly cheaper than exact encoding. When eta_per_level (one entry
/// per level q_in..n) is supplied, measured_depth accumulates
/// (n - q_in + 1) + sum(eta) + 2^(q_in - 1).
struct DepthSummary {
    std::int64_t approx_depth = 0;
    std::int64_t exact_depth = 0;
    int crossover_q = 0;
    std::optional<std::int64_t> measured_depth;
};

DepthSummary depth_report(int n, int q_in, int alpha,
                          const std::vector<int> &eta_per_level = {});

/// Splits x into 2^(n - q_in) blocks of two length-2^(q_in - 1)
/// segments each, normalized, with norms recorded. Concatenating
/// norm * segment over all blocks reproduces x exactly.
std::vector<SegmentPair> prepare_input(const InputVector &x, int q_in);

/// Encodes every segment exactly on q_in - 1 qubits.
std::vector<EncodedBlock> initial_unitaries(const std::vector<SegmentPair> &blocks,
                                            int q_in);

/**
 * Approximates U^dagger V |0> at level q (U, V on q - 1 qubits).
 *
 * shot_sampled: executes the contrast circuit chi times, keeps the
 * q^alpha most frequent bitstrings (ties broken by ascending index),
 * sets |c_j| = sqrt(n_j / chi) rounded to p significant figures, then
 * renormalizes; signs come from the exact statevector, as the reference
 * numerics do in place of the hardware phase-estimation subroutine.
 *
 * exact_amplitudes: truncates the statevector itself to the top q^alpha
 * magnitudes, rounds, renormalizes, and keeps exact signs.
 */
ApproxOutcome approx(const Circuit &u, const Circuit &v,
                     const RasaParams &params, int level_q,
                     std::uint64_t block_seed);

/// Fuses one block into a q-qubit circuit:
/// u_tilde = [I (x) U] [|1><1| (x) U_delta + |0><0| (x) I] [R_y(2 lambda) (x) I]
/// with lambda = arccos(N_u / sqrt(N_u^2 + N_v^2)).
FuseOutcome fuse(const EncodedBlock &block, const RasaParams &params,
                 int level_q, std::uint64_t block_seed);

struct RasaResult {
    Circuit circuit;
    double norm = 0.0;
    DepthReport report;
};

/// Runs the full recursion q = q_in .. n. Blocks within a level are
/// independent and fan out across params.threads; per-block RNG streams
/// are derived as mix_seed(rng_seed, q, block), so results do not depend
/// on scheduling.
RasaResult run_rasa(const InputVector &x, const RasaParams &params);

} // namespace stabenc
