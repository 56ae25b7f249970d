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


#ifndef CLINR_NOISE_H
#define CLINR_NOISE_H

#include <cstdint>
#include <string_view>
#include <vector>

#include "clinr/circuit.h"
#include "clinr/pauli.h"
#include "clinr/program.h"
#include "clinr/random.h"
#include "clinr/stabilizer.h"

namespace clinr {

/// Circuit-level Pauli noise. Every counted operation is followed by a
/// uniformly random non-identity Pauli on its support with the rate of its
/// class: p2 for two-qubit gates, p1 for single-qubit gates, resets and
/// classical corrections. Measurements report a flipped outcome with rate
/// p_meas. Each allocated qubit that is not acted on during an operation
/// suffers a depolarizing fault with rate p_idle.
struct NoiseModel {
    double p2 = 0;
    double p1 = 0;
    double p_meas = 0;
    double p_idle = 0;

    /// p2 = p, p1 = p_meas = p / 10, p_idle = p / 1000 (or 0 without idling).
    static NoiseModel standard(double p, bool idle);
    void validate() const;
    bool operator==(const NoiseModel &other) const = default;
};

/// A sampled fault. Pauli codes use bit 0 for X and bit 1 for Z (3 is Y);
/// q1_pauli is unused for single-qubit operations.
struct Fault {
    bool measurement_flip = false;
    uint8_t q0_pauli = 0;
    uint8_t q1_pauli = 0;

    bool is_none() const {
        return !measurement_flip && q0_pauli == 0 && q1_pauli == 0;
    }
};

Fault sample_fault(const Gate &gate, const NoiseModel &noise, Rng &rng);

/// Whether a residual error acts non-trivially on the ideal output, i.e.
/// anticommutes with some stabilizer generator.
bool judge_logical(const PauliOperator &frame, const StabilizerGroupView &stabilizers);

struct SimOptions {
    /// Restarts allowed per RSP before the shot is aborted. The counter of a
    /// vertex is cleared whenever its injection completes.
    uint64_t restart_cap = 10000;
};

struct ShotResult {
    bool logical_error = false;
    bool aborted = false;
    /// Counted operations executed, restarts included.
    uint64_t executed_gates = 0;
    /// Detections by check index within a vertex.
    std::vector<uint64_t> restarts_per_check;
    uint64_t restarts = 0;
    /// Frame on the output rails at the end of the shot.
    PauliOperator residual_frame;
};

/// Pauli-frame execution of a compiled program, one operation per tick.
///
/// The step interface lets tests drive execution block by block and inject
/// errors between blocks.
class FrameSimulator {
   public:
    FrameSimulator(const CliNRProgram &program, const NoiseModel &noise, uint64_t seed, SimOptions options = {});

    /// Clears the frame and statistics and returns to the first block.
    void reset_shot();
    /// Restarts the random stream and calls reset_shot().
    void reseed(uint64_t seed);
    bool done() const;
    size_t position() const {
        return position_;
    }
    /// Executes the block at position(). Returns true when a check fired and
    /// control jumped back to its RSP.
    bool step();
    /// Multiplies a Pauli on the physical qubits into the frame.
    void inject(const PauliOperator &error);
    /// Runs the remaining blocks and judges the output.
    ShotResult finish();
    /// reset_shot() followed by finish().
    ShotResult run_shot();

   private:
    void touch(uint32_t q);
    void apply_op(const Gate &g, bool *flip);
    void apply_fault(uint32_t q, uint8_t code);
    void correction_op(uint32_t q);
    void run_gates(const std::vector<Gate> &gates, std::vector<uint8_t> *record);

    const CliNRProgram &program_;
    NoiseModel noise_;
    SimOptions options_;
    Rng rng_;
    std::vector<size_t> rsp_of_block_;
    std::vector<uint8_t> fx_;
    std::vector<uint8_t> fz_;
    std::vector<uint8_t> active_;
    std::vector<uint64_t> last_tick_;
    std::vector<uint64_t> restart_count_;
    uint64_t tick_ = 0;
    size_t position_ = 0;
    ShotResult result_;
    std::vector<uint8_t> record_;
    std::vector<Gate> gadget_;
};

enum class Provenance : uint8_t {
    MonteCarlo,
    Markov,
    Bound,
};
std::string_view provenance_name(Provenance p);

struct EstimateResult {
    double p_log = 0;
    double p_log_stderr = 0;
    double omega_time = 0;
    double omega_time_stderr = 0;
    double omega_space = 0;
    uint64_t shots = 0;
    uint64_t aborted = 0;
    uint64_t logical_errors = 0;
    uint64_t circuits = 1;
    double mean_restarts = 0;
    Provenance provenance = Provenance::MonteCarlo;
};

struct EstimateOptions {
    uint64_t shots = 1000;
    uint64_t seed = 0;
    /// Worker threads; 0 picks the hardware concurrency. Results do not
    /// depend on this value.
    unsigned threads = 0;
    SimOptions sim;
};

/// Monte Carlo aggregate over independent shots. Shot k uses the seed
/// derive_seed(seed, {k}). Aborted shots are excluded from p_log and the
/// overhead mean and are counted separately.
EstimateResult estimate(const CliNRProgram &program, const NoiseModel &noise, const EstimateOptions &options);

}  // namespace clinr

#endif
