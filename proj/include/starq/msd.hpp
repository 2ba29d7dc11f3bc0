#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "starq/qubit_css.hpp"
#include "starq/qubitize.hpp"

namespace starq {
namespace msd {

/// Family-level inputs for the overhead estimate: rate rho = K/N, relative
/// distance delta = D/N, and the user-supplied suppression constant c in
/// eps = exp(-c * D). The constants are inputs, not baked-in assumptions.
struct Family {
    double rate = 0.25;
    double delta = 0.25;
    double c = 1.0;
};

struct Plan {
    size_t n = 0; // physical qudits per block
    size_t k = 0; // distilled states per round
    size_t d = 0;
    double target_eps = 0;
    int blocks = 3;
    size_t noisy_states = 0;   // one noisy resource state per physical CCZ
    size_t expected_yield = 0; // = k
    double input_noise_bound = 0; // must sit below the relative distance
    double overhead = 0;          // 3N/K at formula level = 3 / rate
};

/// N = ceil(ln(1/eps) / (c * delta)), K = floor(rate * N), D = floor(delta * N).
Plan estimate(const Family& family, double eps);

/// Minimum-weight coset-leader decoder for one error type of a CSS code,
/// driven by the syndrome of the opposing stabilizers. Strategy depends on
/// the shape: when the commutant (same-syndrome coset) is small, the leader
/// is found by walking error + commutant directly; small codes with small
/// syndrome spaces get a precomputed table; everything else falls back to an
/// increasing-weight search per decode. Either way the correction is a true
/// coset leader.
class BruteDecoder {
  public:
    /// stab: syndrome-defining stabilizer matrix; logicals: pairing rows that
    /// detect a residual logical operator.
    BruteDecoder(const Mat& stab, const Mat& logicals);

    /// True iff error + decode(syndrome(error)) acts nontrivially on the
    /// logicals.
    bool residual_logical(const std::vector<uint64_t>& error_bits) const;

    size_t n() const { return n_; }
    std::vector<uint64_t> syndrome(const std::vector<uint64_t>& error_bits) const;

  private:
    size_t n_ = 0;
    size_t stab_rows_ = 0;
    size_t syn_words_ = 0;
    size_t err_words_ = 0;
    bool table_mode_ = false;
    bool coset_mode_ = false;
    std::vector<uint64_t> col_syndrome_; // per position
    std::vector<uint64_t> col_pairing_;  // per position, logical pairing bits
    std::vector<uint64_t> leader_pairing_table_; // table mode: pairing of the leader per syndrome
    std::vector<uint64_t> commutant_rows_;       // coset mode: packed nullspace basis
    std::vector<uint64_t> commutant_pairing_;    // pairing bits per basis row
    uint64_t leader_pairing(const std::vector<uint64_t>& syn) const;
    bool residual_logical_coset(const std::vector<uint64_t>& error_bits) const;
};

struct SimResult {
    uint64_t trials = 0;
    uint64_t failures = 0;   // trials with any residual logical
    uint64_t x_failures = 0; // trials with a residual logical from X flips
    uint64_t z_failures = 0; // trials with a residual logical from Z flips
    double rate = 0;
    double wilson_low = 0;
    double wilson_high = 0;
};

/// Monte Carlo of the distillation round: three blocks of the code receive
/// i.i.d. X and Z flips at rate p (the stochastic-Pauli stand-in for noisy
/// resource-state consumption); each block is decoded per error type by the
/// coset-leader decoder; a trial fails if any block keeps a residual logical
/// operator. Per-trial generators are derived from (seed, trial), so the
/// result is independent of execution order.
SimResult simulate(const QubitCssCode& code, double p, uint64_t trials, uint64_t seed);
SimResult simulate_serial(const QubitCssCode& code, double p, uint64_t trials, uint64_t seed);
SimResult simulate(const PipelineResult& pipeline, double p, uint64_t trials, uint64_t seed);

/// Qudit variant: with probability p per qudit an X_a (uniform nonzero a) is
/// applied, likewise Z_b; decoding is q-ary minimum-weight over the
/// same-syndrome coset, which must be within budget.
SimResult simulate(const QuditCssCode& code, double p, uint64_t trials, uint64_t seed,
                   uint64_t coset_budget = uint64_t(1) << 16);

/// Wilson score interval (95%).
std::pair<double, double> wilson_interval(uint64_t failures, uint64_t trials);

/// Exact failure probability restricted to error patterns of weight <= wmax
/// per block and error type (a lower bound on the true probability, with the
/// neglected tail mass reported separately). Used as the oracle for the
/// Monte Carlo estimate.
struct TruncatedExact {
    double probability = 0;
    double neglected_mass = 0; // probability of any block/type exceeding wmax
};

TruncatedExact exact_failure_truncated(const QubitCssCode& code, double p, size_t wmax);

} // namespace msd
} // namespace starq
