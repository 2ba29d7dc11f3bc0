#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "starq/embed.hpp"
#include "starq/qubit_css.hpp"
#include "starq/transversal.hpp"

namespace starq {

/// Physical CCZ schedule on three code blocks: apply CCZ to qubits
/// (a, b, c) = (reg*r + t, reg*r + pi2[t], reg*r + pi3[t]) for every register
/// and every slot t with the parity mask P set. Qubit index = register * r +
/// slot.
struct CczSchedule {
    size_t n3 = 0;
    size_t k3 = 0;
    size_t r = 0;
    std::vector<uint8_t> p_mask; // length r
    struct Triple {
        std::array<size_t, 3> qubits;
        size_t reg;
        size_t slot;
    };
    std::vector<Triple> triples;
};

struct PipelineParams {
    size_t n0 = 0, k0 = 0; // qudit code
    int m = 0;
    int s = 0;
    size_t r = 0;
    size_t n3 = 0, k3 = 0;
};

struct PipelineResult {
    QuditCssCode q0;
    QubitCssCode q1, q2, q3;
    SelfDualBasis sdb;
    Rmfe rmfe;
    Mfe mfe;
    CczSchedule schedule;
    PipelineParams params;
};

/// Step 1: binary expansion under the self-dual basis (delegates to
/// qubitize_css); logical qubit (i, j) = row i*m + j.
QubitCssCode step1(const QuditCssCode& q0, const SelfDualBasis& sdb);

/// Step 2: per logical block, add the m-s logical-Z combinations annihilating
/// the expanded RMFE image as Z stabilizers, keeping s logical qubits per
/// block. All added stabilizers fix the all-zero logical state (+1 signs),
/// which is asserted.
QubitCssCode step2(const QubitCssCode& q1, size_t k0, const Rmfe& rmfe, const SelfDualBasis& sdb);

/// f(a) = parity of psi_RMF(a): the f-mask (polynomial basis) of the
/// functional driving the pipeline's phase gate.
uint32_t f_mask_from_rmfe(const Rmfe& rmfe);

/// Step 3: concatenate with the MFE image code (inner Z stabilizers only,
/// an [[r, m, 1]] register code); outer X-type vectors map through
/// sigma' = sigma * (self-dual -> polynomial change of basis), Z-type vectors
/// through a fixed right inverse of sigma'^T. Returns the code and the CCZ
/// schedule derived from the parity mask of psi_RMF o psi_MF.
std::pair<QubitCssCode, CczSchedule> step3(const QubitCssCode& q2, size_t n0, const Mfe& mfe,
                                           const Rmfe& rmfe, const SelfDualBasis& sdb);

struct RmfeMode {
    enum class Kind { trivial, search };
    Kind kind = Kind::trivial;
    int s = 1;
    uint64_t seed = 0;
    uint64_t budget = uint64_t(1) << 20;
    static RmfeMode trivial() { return RmfeMode{}; }
    static RmfeMode search(int s, uint64_t seed = 0, uint64_t budget = uint64_t(1) << 20) {
        return RmfeMode{Kind::search, s, seed, budget};
    }
};

PipelineResult run_pipeline(const LinearCode& c, size_t K, const RmfeMode& rmfe_mode,
                            uint64_t distance_cap = kDefaultDistanceCap);

/// Basis-state phase check of the end-to-end claim: for logical bit blocks
/// (u, v, w) and qudit coset choices (h, h', h''), the schedule parity on the
/// encoded bit strings equals sum_{i,j} u_{i,j} v_{i,j} w_{i,j} mod 2.
struct PipelineWitness {
    std::vector<uint32_t> u, v, w; // k0 * s bits
    uint64_t coset_index = 0;
    uint32_t physical = 0, logical = 0;
};

struct PipelineVerifyResult {
    bool pass = false;
    uint64_t checks = 0;
    std::optional<PipelineWitness> witness;
};

PipelineVerifyResult verify_pipeline(const PipelineResult& result, const VerifyMode& mode);
PipelineVerifyResult verify_pipeline_serial(const PipelineResult& result, const VerifyMode& mode);
/// Same check with an explicit schedule (used to probe tampered schedules).
PipelineVerifyResult verify_pipeline_with_schedule(const PipelineResult& result,
                                                   const CczSchedule& schedule,
                                                   const VerifyMode& mode, bool parallel = true);

/// One CSS distance of a binary code: the minimum weight of a vector that
/// commutes with the opposing stabilizers but acts nontrivially on the
/// logicals. Exact when either the enumeration space or the increasing-weight
/// search stays within budget; otherwise a lower bound from the exhausted
/// search depth.
struct DistanceReport {
    bool exact = false;
    size_t value = 0;       // distance when exact, else largest fully searched weight + 1
    uint64_t work = 0;      // vectors examined
};

struct CssDistances {
    DistanceReport dx; // X-type logicals (commute with Z stabilizers)
    DistanceReport dz; // Z-type logicals (commute with X stabilizers)
    std::optional<size_t> d0_claim; // the qudit-level distance floor, when known
};

CssDistances q3_distance(const PipelineResult& result, uint64_t budget = uint64_t(1) << 26);
DistanceReport css_distance_x(const QubitCssCode& code, uint64_t budget);
DistanceReport css_distance_z(const QubitCssCode& code, uint64_t budget);

} // namespace starq
