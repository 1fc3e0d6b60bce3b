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

#include "stabenc/rasa.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "stabenc/errors.hpp"
#include "stabenc/parallel.hpp"
#include "stabenc/random.hpp"

namespace stabenc {

namespace {

constexpr std::uint64_t kDepthCap = std::uint64_t{1} << 62;

std::uint64_t ipow_saturating(std::uint64_t base, int exp) {
    std::uint64_t result = 1;
    for (int i = 0; i < exp; ++i) {
        if (result > kDepthCap / std::max<std::uint64_t>(base, 1)) {
            return kDepthCap;
        }
        result *= base;
    }
    return result;
}

/// Rounds |x| to p significant figures.
double round_significant(double x, int p) {
    if (x == 0.0) {
        return 0.0;
    }
    const double magnitude = std::floor(std::log10(std::abs(x)));
    const double scale = std::pow(10.0, p - 1 - magnitude);
    return std::round(x * scale) / scale;
}

struct Candidate {
    std::uint64_t bitstring;
    double weight; // count (shot mode) or |amplitude| (exact mode)
    double magnitude;
};

/// Shared tail of both modes: sort by weight (ties by ascending
/// bitstring), truncate to the top q^alpha, round magnitudes to p
/// significant figures, drop anything rounded to zero, renormalize.
std::vector<Candidate> truncate_and_round(std::vector<Candidate> candidates,
                                          std::uint64_t cutoff, int p) {
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate &a, const Candidate &b) {
                  if (a.weight != b.weight) {
                      return a.weight > b.weight;
                  }
                  return a.bitstring < b.bitstring;
              });
    if (candidates.size() > cutoff) {
        candidates.resize(static_cast<std::size_t>(cutoff));
    }
    std::erase_if(candidates, [p](Candidate &c) {
        c.magnitude = round_significant(c.magnitude, p);
        return c.magnitude == 0.0;
    });
    double norm2 = 0.0;
    for (const auto &c : candidates) {
        norm2 += c.magnitude * c.magnitude;
    }
    if (norm2 > 0.0) {
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto &c : candidates) {
            c.magnitude *= inv;
        }
    }
    return candidates;
}

Complex phase_of(Complex amplitude) {
    const double mag = std::abs(amplitude);
    if (mag == 0.0) {
        return Complex{1.0, 0.0};
    }
    return amplitude / mag;
}

} // namespace

void RasaParams::validate(int n_qubits) const {
    if (alpha < 1) {
        throw InputError("alpha must be >= 1");
    }
    if (p < 1) {
        throw InputError("p must be >= 1");
    }
    if (q_in <= 1 || q_in > n_qubits) {
        throw InputError("q_in must satisfy 1 < q_in <= n (= " +
                         std::to_string(n_qubits) + ")");
    }
    if (chi_override && *chi_override < 1) {
        throw InputError("chi must be >= 1");
    }
    if (threads < 1) {
        throw InputError("threads must be >= 1");
    }
}

std::uint64_t RasaParams::chi_for_level(int q) const {
    if (chi_override) {
        return *chi_override;
    }
    const std::uint64_t budget = ipow_saturating(static_cast<std::uint64_t>(q), alpha);
    const std::uint64_t precision = ipow_saturating(10, 2 * p);
    if (budget > kDepthCap / precision) {
        return kDepthCap;
    }
    return budget * precision;
}

DepthSummary depth_report(int n, int q_in, int alpha,
                          const std::vector<int> &eta_per_level) {
    if (n < 1 || q_in < 1 || q_in > n || alpha < 1) {
        throw InputError("inconsistent depth report inputs");
    }
    DepthSummary summary;
    const std::int64_t rotations = n - q_in + 1;
    const std::int64_t base = std::int64_t{1} << (q_in - 1);
    std::int64_t approx_sum = 0;
    std::int64_t exact_sum = 0;
    for (int q = q_in; q <= n; ++q) {
        const std::uint64_t budget = ipow_saturating(static_cast<std::uint64_t>(q), alpha);
        const std::uint64_t dim = std::uint64_t{1} << (q - 1);
        approx_sum += static_cast<std::int64_t>(std::min(budget, dim));
        exact_sum += static_cast<std::int64_t>(dim);
    }
    summary.approx_depth = rotations + approx_sum + base;
    summary.exact_depth = rotations + exact_sum + base;

    int crossover = 1;
    for (int q = 1; q <= 63; ++q) {
        if (ipow_saturating(static_cast<std::uint64_t>(q), alpha) >=
            (std::uint64_t{1} << (q - 1))) {
            crossover = q;
        }
    }
    summary.crossover_q = crossover;

    if (!eta_per_level.empty()) {
        if (static_cast<int>(eta_per_level.size()) != n - q_in + 1) {
            throw InputError("eta_per_level must have one entry per level");
        }
        std::int64_t measured = rotations + base;
        for (int eta : eta_per_level) {
            measured += eta;
        }
        summary.measured_depth = measured;
    }
    return summary;
}

nlohmann::json DepthReport::to_json() const {
    nlohmann::json levels_json = nlohmann::json::array();
    for (const auto &level : levels) {
        levels_json.push_back({{"q", level.q},
                               {"eta", level.eta},
                               {"chi", level.chi},
                               {"depth_measured", level.depth_measured},
                               {"op_count", level.op_count}});
    }
    return {{"levels", levels_json},
            {"approx_depth_formula", approx_depth_formula},
            {"exact_depth_formula", exact_depth_formula},
            {"crossover_q", crossover_q}};
}

std::vector<SegmentPair> prepare_input(const InputVector &x, int q_in) {
    const int n = x.n_qubits;
    if (q_in <= 1 || q_in > n) {
        throw InputError("prepare_input requires 1 < q_in <= n");
    }
    const Eigen::Index seg_len = Eigen::Index{1} << (q_in - 1);
    const Eigen::Index block_count = x.values.size() / (2 * seg_len);
    std::vector<SegmentPair> blocks;
    blocks.reserve(static_cast<std::size_t>(block_count));
    for (Eigen::Index b = 0; b < block_count; ++b) {
        SegmentPair pair;
        const Eigen::Index start = b * 2 * seg_len;
        pair.norm_u = x.values.segment(start, seg_len).norm();
        pair.norm_d = x.values.segment(start + seg_len, seg_len).norm();
        if (pair.norm_u == 0.0 || pair.norm_d == 0.0) {
            throw NumericError("zero-norm segment in block " +
                               std::to_string(b) +
                               " (input must be repaired first)");
        }
        pair.upper = x.values.segment(start, seg_len) / pair.norm_u;
        pair.lower = x.values.segment(start + seg_len, seg_len) / pair.norm_d;
        blocks.push_back(std::move(pair));
    }
    return blocks;
}

std::vector<EncodedBlock> initial_unitaries(const std::vector<SegmentPair> &blocks,
                                            int q_in) {
    std::vector<EncodedBlock> encoded;
    encoded.reserve(blocks.size());
    for (const auto &block : blocks) {
        ExactEncoding u = build_exact_circuit(input_from_prepared(block.upper));
        ExactEncoding v = build_exact_circuit(input_from_prepared(block.lower));
        encoded.push_back({std::move(u.circuit), std::move(v.circuit),
                           block.norm_u, block.norm_d});
    }
    if (!encoded.empty() && encoded.front().u.n_qubits() != q_in - 1) {
        throw InputError("blocks do not match q_in");
    }
    return encoded;
}

ApproxOutcome approx(const Circuit &u, const Circuit &v,
                     const RasaParams &params, int level_q,
                     std::uint64_t block_seed) {
    if (u.n_qubits() != v.n_qubits() || u.n_qubits() != level_q - 1) {
        throw InputError("approx at level q expects circuits on q-1 qubits");
    }
    const int m = u.n_qubits();

    // Contrast circuit: |psi> = U^dagger V |0>.
    Circuit contrast(m);
    for (const auto &op : v.ops()) {
        contrast.append(op);
    }
    const Circuit u_dagger = u.adjoint();
    for (const auto &op : u_dagger.ops()) {
        contrast.append(op);
    }
    const StateVector psi = apply(contrast, StateVector::zero(m));

    const std::uint64_t cutoff =
        ipow_saturating(static_cast<std::uint64_t>(level_q), params.alpha);

    std::vector<Candidate> candidates;
    if (params.mode == ApproxMode::shot_sampled) {
        const std::uint64_t chi = params.chi_for_level(level_q);
        const auto counts = sample_bitstrings(psi, chi, block_seed);
        candidates.reserve(counts.size());
        for (const auto &c : counts) {
            const double magnitude =
                std::sqrt(static_cast<double>(c.count) / static_cast<double>(chi));
            candidates.push_back(
                {c.bitstring, static_cast<double>(c.count), magnitude});
        }
    } else {
        const auto &amps = psi.amplitudes();
        candidates.reserve(static_cast<std::size_t>(amps.size()));
        for (Eigen::Index j = 0; j < amps.size(); ++j) {
            const double magnitude = std::abs(amps(j));
            if (magnitude > 0.0) {
                candidates.push_back(
                    {static_cast<std::uint64_t>(j), magnitude, magnitude});
            }
        }
    }

    candidates = truncate_and_round(std::move(candidates), cutoff, params.p);
    if (candidates.empty()) {
        throw NumericError(
            "approx kept no components at level q=" + std::to_string(level_q) +
            " (chi too small for the requested precision)");
    }

    ApproxOutcome outcome{SparseApproxState{}, Circuit(m)};
    Eigen::VectorXd sparse = Eigen::VectorXd::Zero(Eigen::Index{1} << m);
    for (const auto &c : candidates) {
        const Complex coeff =
            c.magnitude *
            phase_of(psi.amplitude(c.bitstring)); // sign oracle: exact state
        outcome.state.components.push_back({c.bitstring, coeff});
        if (std::abs(coeff.imag()) > 1e-9) {
            throw NumericError("complex component phases are outside the "
                               "real-data scope of this encoder");
        }
        sparse(static_cast<Eigen::Index>(c.bitstring)) = coeff.real();
    }

    ExactEncoding loader = build_exact_circuit(input_from_prepared(sparse));
    outcome.u_delta = std::move(loader.circuit);
    // d[U_delta] = eta in the scheme's accounting (the builder already
    // counts nonzero components, which is the same number here).
    outcome.u_delta.set_depth_units(outcome.state.eta());
    return outcome;
}

FuseOutcome fuse(const EncodedBlock &block, const RasaParams &params,
                 int level_q, std::uint64_t block_seed) {
    if (block.norm_u == 0.0 && block.norm_v == 0.0) {
        throw NumericError("fuse called with N_u = N_v = 0");
    }
    ApproxOutcome delta = approx(block.u, block.v, params, level_q, block_seed);

    const double lambda =
        std::acos(std::clamp(block.norm_u / std::hypot(block.norm_u, block.norm_v),
                             -1.0, 1.0));

    FuseOutcome out{Circuit(level_q), std::hypot(block.norm_u, block.norm_v),
                    delta.state.eta()};
    out.u_tilde.append(RyGate{level_q, 2.0 * lambda});
    out.u_tilde.append(ControlledSub{
        level_q, 1, std::make_shared<const Circuit>(std::move(delta.u_delta))});
    for (const auto &op : block.u.ops()) {
        out.u_tilde.append(op);
    }
    out.u_tilde.set_depth_units(1 + delta.state.eta() + block.u.depth_units());
    return out;
}

RasaResult run_rasa(const InputVector &x, const RasaParams &params) {
    const int n = x.n_qubits;
    params.validate(n);

    std::vector<EncodedBlock> blocks =
        initial_unitaries(prepare_input(x, params.q_in), params.q_in);

    DepthReport report;
    Circuit final_circuit(n);
    double final_norm = 0.0;

    for (int q = params.q_in; q <= n; ++q) {
        std::vector<FuseOutcome> fused(blocks.size());
        parallel_for(blocks.size(), params.threads, [&](std::size_t b) {
            try {
                fused[b] = fuse(blocks[b], params, q,
                                mix_seed(params.rng_seed,
                                         static_cast<std::uint64_t>(q), b));
            } catch (const std::exception &e) {
                throw NumericError("level q=" + std::to_string(q) + ", block " +
                                   std::to_string(b) + ": " + e.what());
            }
        });

        LevelStat stat;
        stat.q = q;
        stat.chi = params.mode == ApproxMode::shot_sampled
                       ? params.chi_for_level(q)
                       : 0;
        for (const auto &f : fused) {
            stat.eta = std::max(stat.eta, f.eta);
            stat.depth_measured =
                std::max(stat.depth_measured, f.u_tilde.depth_units());
            stat.op_count = std::max(
                stat.op_count, static_cast<std::int64_t>(f.u_tilde.op_count()));
        }
        report.levels.push_back(stat);

        if (q == n) {
            final_circuit = std::move(fused.front().u_tilde);
            final_norm = fused.front().norm;
            break;
        }
        std::vector<EncodedBlock> next;
        next.reserve(fused.size() / 2);
        for (std::size_t b = 0; b + 1 < fused.size(); b += 2) {
            next.push_back({std::move(fused[b].u_tilde),
                            std::move(fused[b + 1].u_tilde), fused[b].norm,
                            fused[b + 1].norm});
        }
        blocks = std::move(next);
    }

    const DepthSummary formulas = depth_report(n, params.q_in, params.alpha);
    report.approx_depth_formula = formulas.approx_depth;
    report.exact_depth_formula = formulas.exact_depth;
    report.crossover_q = formulas.crossover_q;

    return {std::move(final_circuit), final_norm, std::move(report)};
}

} // namespace stabenc
