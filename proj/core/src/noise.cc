// Copyright 2026 The clinr Authors
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


#include "clinr/noise.h"

#include <algorithm>
#include <cmath>
#include <thread>

#include "clinr/error.h"

namespace clinr {

NoiseModel NoiseModel::standard(double p, bool idle) {
    NoiseModel m;
    m.p2 = p;
    m.p1 = p / 10;
    m.p_meas = p / 10;
    m.p_idle = idle ? p / 1000 : 0;
    m.validate();
    return m;
}

void NoiseModel::validate() const {
    for (double r : {p2, p1, p_meas, p_idle}) {
        if (!(r >= 0 && r < 1)) {
            fail(ErrorCode::InvalidArgument, "noise rates must lie in [0, 1)");
        }
    }
}

Fault sample_fault(const Gate &gate, const NoiseModel &noise, Rng &rng) {
    Fault f;
    if (gate.kind == GateKind::M) {
        f.measurement_flip = uniform01(rng) < noise.p_meas;
    } else if (is_two_qubit(gate.kind)) {
        if (uniform01(rng) < noise.p2) {
            uint8_t c = static_cast<uint8_t>(1 + rng() % 15);
            f.q0_pauli = c & 3;
            f.q1_pauli = c >> 2;
        }
    } else if (uniform01(rng) < noise.p1) {
        f.q0_pauli = static_cast<uint8_t>(1 + rng() % 3);
    }
    return f;
}

bool judge_logical(const PauliOperator &frame, const StabilizerGroupView &stabilizers) {
    for (const auto &g : stabilizers.generators) {
        if (!frame.commutes(g)) {
            return true;
        }
    }
    return false;
}

FrameSimulator::FrameSimulator(const CliNRProgram &program, const NoiseModel &noise, uint64_t seed,
                               SimOptions options)
    : program_(program), noise_(noise), options_(options), rng_(seed) {
    noise_.validate();
    rsp_of_block_.assign(program.blocks.size(), 0);
    for (size_t k = 0; k < program.blocks.size(); k++) {
        if (program.blocks[k].kind != BlockKind::RSI) {
            continue;
        }
        for (size_t j = k; j-- > 0;) {
            if (program.blocks[j].kind == BlockKind::RSP && program.blocks[j].vertex == program.blocks[k].vertex) {
                rsp_of_block_[k] = j;
                break;
            }
        }
    }
    reset_shot();
}

void FrameSimulator::reseed(uint64_t seed) {
    rng_.seed(seed);
    reset_shot();
}

void FrameSimulator::reset_shot() {
    size_t nq = program_.total_qubits;
    fx_.assign(nq, 0);
    fz_.assign(nq, 0);
    active_.assign(nq, 0);
    last_tick_.assign(nq, 0);
    restart_count_.assign(program_.blocks.size(), 0);
    for (uint32_t q : program_.input_rails) {
        active_[q] = 1;
    }
    tick_ = 0;
    position_ = 0;
    result_ = ShotResult{};
    uint32_t max_r = 0;
    for (const auto &b : program_.blocks) {
        if (b.kind == BlockKind::CHECK) {
            max_r = std::max(max_r, b.check_index + 1);
        }
    }
    result_.restarts_per_check.assign(max_r, 0);
}

bool FrameSimulator::done() const {
    return result_.aborted || position_ >= program_.blocks.size();
}

void FrameSimulator::apply_fault(uint32_t q, uint8_t code) {
    fx_[q] ^= code & 1;
    fz_[q] ^= code >> 1;
}

void FrameSimulator::touch(uint32_t q) {
    if (active_[q] && noise_.p_idle > 0) {
        uint64_t idle = tick_ - last_tick_[q] - 1;
        if (idle > 0) {
            std::binomial_distribution<uint64_t> dist(idle, noise_.p_idle);
            for (uint64_t c = dist(rng_); c > 0; c--) {
                apply_fault(q, static_cast<uint8_t>(1 + rng_() % 3));
            }
        }
    }
    last_tick_[q] = tick_;
}

void FrameSimulator::apply_op(const Gate &g, bool *flip) {
    tick_++;
    uint32_t a = g.q0, b = g.q1;
    switch (g.kind) {
        case GateKind::R:
        case GateKind::RX:
            fx_[a] = fz_[a] = 0;
            active_[a] = 1;
            last_tick_[a] = tick_;
            if (uniform01(rng_) < noise_.p1) {
                apply_fault(a, static_cast<uint8_t>(1 + rng_() % 3));
            }
            return;
        case GateKind::M:
            touch(a);
            *flip = fx_[a] ^ (uniform01(rng_) < noise_.p_meas);
            fx_[a] = fz_[a] = 0;
            active_[a] = 0;
            return;
        default:
            break;
    }
    touch(a);
    if (is_two_qubit(g.kind)) {
        touch(b);
    }
    switch (g.kind) {
        case GateKind::H:
            std::swap(fx_[a], fz_[a]);
            break;
        case GateKind::S:
        case GateKind::S_DAG:
            fz_[a] ^= fx_[a];
            break;
        case GateKind::CX:
            fx_[b] ^= fx_[a];
            fz_[a] ^= fz_[b];
            break;
        case GateKind::CY:
            fz_[b] ^= fx_[b];
            fx_[b] ^= fx_[a];
            fz_[a] ^= fz_[b];
            fz_[b] ^= fx_[b];
            break;
        case GateKind::CZ:
            fz_[a] ^= fx_[b];
            fz_[b] ^= fx_[a];
            break;
        default:
            break;
    }
    if (is_two_qubit(g.kind)) {
        if (uniform01(rng_) < noise_.p2) {
            uint8_t c = static_cast<uint8_t>(1 + rng_() % 15);
            apply_fault(a, c & 3);
            apply_fault(b, c >> 2);
        }
    } else if (uniform01(rng_) < noise_.p1) {
        apply_fault(a, static_cast<uint8_t>(1 + rng_() % 3));
    }
}

void FrameSimulator::correction_op(uint32_t q) {
    tick_++;
    touch(q);
    if (uniform01(rng_) < noise_.p1) {
        apply_fault(q, static_cast<uint8_t>(1 + rng_() % 3));
    }
}

void FrameSimulator::run_gates(const std::vector<Gate> &gates, std::vector<uint8_t> *record) {
    for (const auto &g : gates) {
        bool flip = false;
        apply_op(g, &flip);
        if (g.kind == GateKind::M && record != nullptr) {
            record->push_back(flip);
        }
    }
    result_.executed_gates += gates.size();
}

bool FrameSimulator::step() {
    if (done()) {
        return false;
    }
    const Block &b = program_.blocks[position_];
    switch (b.kind) {
        case BlockKind::RSP:
        case BlockKind::PLAIN:
            run_gates(b.gates, nullptr);
            position_++;
            return false;
        case BlockKind::CHECK: {
            const std::vector<Gate> *gates = &b.gates;
            if (!b.fixed_stabilizer.has_value()) {
                const auto &grp = program_.groups[b.group];
                gadget_ = check_gadget_gates(random_group_element(grp.group, rng_), grp.rails, program_.check_ancilla);
                gates = &gadget_;
            }
            record_.clear();
            run_gates(*gates, &record_);
            if (!record_.back()) {
                position_++;
                return false;
            }
            result_.restarts++;
            result_.restarts_per_check[b.check_index]++;
            if (++restart_count_[b.restart_target] > options_.restart_cap) {
                result_.aborted = true;
            }
            position_ = b.restart_target;
            return true;
        }
        case BlockKind::RSI: {
            record_.clear();
            run_gates(b.gates, &record_);
            const auto &inj = b.injection;
            for (size_t i = 0; i < inj.output_rails.size(); i++) {
                // A flipped outcome means the applied correction differs from
                // the ideal one by the corresponding image.
                for (int which = 0; which < 2; which++) {
                    bool flipped = which == 0 ? record_[2 * i + 1] : record_[2 * i];
                    if (!flipped) {
                        continue;
                    }
                    const auto &img = which == 0 ? inj.x_corrections[i] : inj.z_corrections[i];
                    for (size_t q = 0; q < inj.output_rails.size(); q++) {
                        fx_[inj.output_rails[q]] ^= img.x(q);
                        fz_[inj.output_rails[q]] ^= img.z(q);
                    }
                }
            }
            for (uint32_t q : inj.output_rails) {
                correction_op(q);
            }
            result_.executed_gates += inj.output_rails.size();
            restart_count_[rsp_of_block_[position_]] = 0;
            position_++;
            return false;
        }
    }
    return false;
}

void FrameSimulator::inject(const PauliOperator &error) {
    if (error.num_qubits() != program_.total_qubits) {
        fail(ErrorCode::Dimension, "injected error must span all physical qubits");
    }
    for (size_t q = 0; q < program_.total_qubits; q++) {
        fx_[q] ^= error.x(q);
        fz_[q] ^= error.z(q);
    }
}

ShotResult FrameSimulator::finish() {
    while (!done()) {
        step();
    }
    size_t n = program_.output_rails.size();
    PauliOperator residual(n);
    if (!result_.aborted) {
        tick_++;
        for (size_t i = 0; i < n; i++) {
            uint32_t q = program_.output_rails[i];
            touch(q);
            residual.set(i, fx_[q], fz_[q]);
        }
        result_.logical_error = judge_logical(residual, program_.ideal_output);
    }
    result_.residual_frame = std::move(residual);
    return result_;
}

ShotResult FrameSimulator::run_shot() {
    reset_shot();
    return finish();
}

std::string_view provenance_name(Provenance p) {
    switch (p) {
        case Provenance::MonteCarlo:
            return "monte-carlo";
        case Provenance::Markov:
            return "markov";
        case Provenance::Bound:
            return "bound";
    }
    return "?";
}

EstimateResult estimate(const CliNRProgram &program, const NoiseModel &noise, const EstimateOptions &options) {
    if (options.shots == 0) {
        fail(ErrorCode::InvalidArgument, "shots must be at least 1");
    }
    noise.validate();
    struct Tally {
        bool logical = false;
        bool aborted = false;
        uint64_t gates = 0;
        uint64_t restarts = 0;
    };
    std::vector<Tally> tallies(options.shots);
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<uint64_t>(threads, options.shots));
    auto work = [&](unsigned worker) {
        FrameSimulator sim(program, noise, 0, options.sim);
        for (uint64_t k = worker; k < options.shots; k += threads) {
            sim.reseed(derive_seed(options.seed, {k}));
            ShotResult r = sim.finish();
            tallies[k] = {r.logical_error, r.aborted, r.executed_gates, r.restarts};
        }
    };
    if (threads <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; w++) {
            pool.emplace_back(work, w);
        }
        for (auto &t : pool) {
            t.join();
        }
    }

    EstimateResult out;
    out.provenance = Provenance::MonteCarlo;
    out.shots = options.shots;
    out.omega_space = static_cast<double>(program.total_qubits) / static_cast<double>(program.n);
    double sum_g = 0, sum_g2 = 0, restarts = 0;
    uint64_t kept = 0;
    for (const auto &t : tallies) {
        if (t.aborted) {
            out.aborted++;
            continue;
        }
        kept++;
        out.logical_errors += t.logical;
        double g = static_cast<double>(t.gates);
        sum_g += g;
        sum_g2 += g * g;
        restarts += static_cast<double>(t.restarts);
    }
    if (kept > 0) {
        double kd = static_cast<double>(kept);
        out.p_log = static_cast<double>(out.logical_errors) / kd;
        out.p_log_stderr = std::sqrt(out.p_log * (1 - out.p_log) / kd);
        double s = static_cast<double>(std::max<uint64_t>(program.circuit_size, 1));
        double mean = sum_g / kd;
        double var = kept > 1 ? std::max(0.0, (sum_g2 - kd * mean * mean) / (kd - 1)) : 0.0;
        out.omega_time = mean / s;
        out.omega_time_stderr = std::sqrt(var / kd) / s;
        out.mean_restarts = restarts / kd;
    }
    return out;
}

}  // namespace clinr
