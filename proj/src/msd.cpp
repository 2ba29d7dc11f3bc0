#include "starq/msd.hpp"

#include <cmath>
#include <stdexcept>

#include "starq/errors.hpp"
#include "starq/kernels.hpp"
#include "starq/prng.hpp"

namespace starq {
namespace msd {

Plan estimate(const Family& family, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("estimate: eps must be in (0, 1)");
    if (!(family.rate > 0.0 && family.rate <= 1.0))
        throw std::invalid_argument("estimate: rate must be in (0, 1]");
    if (!(family.delta > 0.0 && family.delta <= 1.0))
        throw std::invalid_argument("estimate: delta must be in (0, 1]");
    if (!(family.c > 0.0)) throw std::invalid_argument("estimate: c must be positive");

    Plan plan;
    plan.n = static_cast<size_t>(std::ceil(std::log(1.0 / eps) / (family.c * family.delta)));
    if (plan.n == 0) plan.n = 1;
    plan.k = static_cast<size_t>(std::floor(family.rate * static_cast<double>(plan.n)));
    plan.d = static_cast<size_t>(std::floor(family.delta * static_cast<double>(plan.n)));
    plan.target_eps = eps;
    plan.blocks = 3;
    plan.noisy_states = plan.n;
    plan.expected_yield = plan.k;
    plan.input_noise_bound = family.delta;
    plan.overhead = 3.0 / family.rate;
    return plan;
}

namespace {

constexpr uint64_t kDecodeBudget = uint64_t(1) << 31;

} // namespace

BruteDecoder::BruteDecoder(const Mat& stab, const Mat& logicals) {
    n_ = logicals.cols();
    stab_rows_ = stab.rows();
    if (stab.rows() && stab.cols() != n_)
        throw std::invalid_argument("BruteDecoder: stabilizer/logical width mismatch");
    if (logicals.rows() > 64) throw std::invalid_argument("BruteDecoder: too many logicals");
    syn_words_ = (stab_rows_ + 63) / 64;
    if (syn_words_ == 0) syn_words_ = 1;
    err_words_ = (n_ + 63) / 64;

    col_syndrome_.assign(n_ * syn_words_, 0);
    col_pairing_.assign(n_, 0);
    for (size_t j = 0; j < n_; ++j) {
        for (size_t i = 0; i < stab_rows_; ++i)
            if (stab.at(i, j)) col_syndrome_[j * syn_words_ + i / 64] |= uint64_t(1) << (i % 64);
        for (size_t l = 0; l < logicals.rows(); ++l)
            if (logicals.at(l, j)) col_pairing_[j] |= uint64_t(1) << l;
    }

    // When the same-syndrome coset (error + nullspace of the stabilizers) is
    // small, the leader can be found by walking it directly per decode.
    if (stab_rows_ > 0 && n_ - stab_rows_ <= 20) {
        Mat commutant = nullspace(stab);
        coset_mode_ = true;
        commutant_rows_.assign(commutant.rows() * err_words_, 0);
        commutant_pairing_.assign(commutant.rows(), 0);
        for (size_t i = 0; i < commutant.rows(); ++i) {
            for (size_t j = 0; j < n_; ++j)
                if (commutant.at(i, j))
                    commutant_rows_[i * err_words_ + j / 64] |= uint64_t(1) << (j % 64);
            for (size_t l = 0; l < logicals.rows(); ++l) {
                uint64_t acc = 0;
                for (size_t j = 0; j < n_; ++j) acc ^= commutant.at(i, j) & logicals.at(l, j);
                commutant_pairing_[i] |= (acc & 1) << l;
            }
        }
        return;
    }

    table_mode_ = n_ <= 26 && stab_rows_ <= 23 && logicals.rows() <= 8;
    if (table_mode_ && stab_rows_ == 0) {
        // No syndrome information: the leader is the zero vector.
        leader_pairing_table_.assign(1, 0);
    } else if (table_mode_) {
        // Coset-leader table via a gray-code sweep over every error pattern:
        // per syndrome keep the first minimum-weight pattern's pairing.
        const uint64_t syndromes = uint64_t(1) << stab_rows_;
        std::vector<uint16_t> best(syndromes, 0xffff); // (weight << 8) | pairing
        uint64_t syndrome = 0, pairing = 0;
        uint64_t pattern = 0;
        int weight = 0;
        best[0] = 0;
        const uint64_t total = uint64_t(1) << n_;
        for (uint64_t g = 1; g < total; ++g) {
            size_t flip = static_cast<size_t>(__builtin_ctzll(g));
            uint64_t bit = uint64_t(1) << flip;
            weight += (pattern & bit) ? -1 : 1;
            pattern ^= bit;
            syndrome ^= col_syndrome_[flip * syn_words_];
            pairing ^= col_pairing_[flip];
            uint16_t packed = static_cast<uint16_t>((weight << 8) | (pairing & 0xff));
            if ((packed >> 8) < (best[syndrome] >> 8)) best[syndrome] = packed;
        }
        leader_pairing_table_.assign(syndromes, 0);
        for (uint64_t s = 0; s < syndromes; ++s) {
            if (best[s] == 0xffff)
                throw std::logic_error("BruteDecoder: syndrome space not fully covered");
            leader_pairing_table_[s] = best[s] & 0xff;
        }
    }
}

std::vector<uint64_t> BruteDecoder::syndrome(const std::vector<uint64_t>& error_bits) const {
    std::vector<uint64_t> syn(syn_words_, 0);
    for (size_t j = 0; j < n_; ++j)
        if (error_bits[j / 64] >> (j % 64) & 1)
            for (size_t w = 0; w < syn_words_; ++w) syn[w] ^= col_syndrome_[j * syn_words_ + w];
    return syn;
}

uint64_t BruteDecoder::leader_pairing(const std::vector<uint64_t>& syn) const {
    if (table_mode_) return leader_pairing_table_[syn[0]];

    bool zero = true;
    for (uint64_t w : syn)
        if (w) { zero = false; break; }
    if (zero) return 0;

    // Increasing-weight search for a minimum-weight error with this syndrome.
    uint64_t examined = 0;
    for (size_t w = 1; w <= n_; ++w) {
        long double count = 1.0L;
        for (size_t i = 0; i < w; ++i) count = count * (n_ - i) / (i + 1);
        if (static_cast<long double>(examined) + count > static_cast<long double>(kDecodeBudget))
            throw BudgetExceeded("BruteDecoder: coset-leader search exceeded its budget");

        std::vector<size_t> support(w);
        std::vector<uint64_t> acc((w + 1) * syn_words_, 0);
        std::vector<uint64_t> pair_acc(w + 1, 0);
        size_t depth = 0;
        support[0] = 0;
        while (true) {
            if (support[depth] < n_) {
                size_t j = support[depth];
                for (size_t t = 0; t < syn_words_; ++t)
                    acc[(depth + 1) * syn_words_ + t] =
                        acc[depth * syn_words_ + t] ^ col_syndrome_[j * syn_words_ + t];
                pair_acc[depth + 1] = pair_acc[depth] ^ col_pairing_[j];
                if (depth + 1 == w) {
                    ++examined;
                    bool match = true;
                    for (size_t t = 0; t < syn_words_; ++t)
                        if (acc[(depth + 1) * syn_words_ + t] != syn[t]) { match = false; break; }
                    if (match) return pair_acc[depth + 1];
                    ++support[depth];
                } else {
                    ++depth;
                    support[depth] = support[depth - 1] + 1;
                }
            } else {
                if (depth == 0) break;
                --depth;
                ++support[depth];
            }
        }
    }
    throw std::logic_error("BruteDecoder: no error matches the syndrome");
}

bool BruteDecoder::residual_logical_coset(const std::vector<uint64_t>& error_bits) const {
    // The residual is the commutant element v minimizing |error + v| (ties:
    // first in the gray walk); it is logical iff its pairing is nonzero.
    const size_t dim = commutant_pairing_.size();
    std::vector<uint64_t> current(error_bits);
    size_t best_weight = 0;
    for (size_t w = 0; w < err_words_; ++w)
        best_weight += static_cast<size_t>(__builtin_popcountll(current[w]));
    uint64_t best_pairing = 0;
    uint64_t pairing = 0;
    const uint64_t total = uint64_t(1) << dim;
    for (uint64_t g = 1; g < total; ++g) {
        size_t flip = static_cast<size_t>(__builtin_ctzll(g));
        const uint64_t* row = commutant_rows_.data() + flip * err_words_;
        size_t weight = 0;
        for (size_t w = 0; w < err_words_; ++w) {
            current[w] ^= row[w];
            weight += static_cast<size_t>(__builtin_popcountll(current[w]));
        }
        pairing ^= commutant_pairing_[flip];
        if (weight < best_weight) {
            best_weight = weight;
            best_pairing = pairing;
        }
    }
    return best_pairing != 0;
}

bool BruteDecoder::residual_logical(const std::vector<uint64_t>& error_bits) const {
    if (coset_mode_) return residual_logical_coset(error_bits);
    uint64_t pairing = 0;
    for (size_t j = 0; j < n_; ++j)
        if (error_bits[j / 64] >> (j % 64) & 1) pairing ^= col_pairing_[j];
    // residual = error + leader; it is logical iff the pairings differ.
    return (pairing ^ leader_pairing(syndrome(error_bits))) != 0;
}

std::pair<double, double> wilson_interval(uint64_t failures, uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    if (failures == 0) {
        const double z = 1.959963984540054;
        const double nd = static_cast<double>(trials);
        return {0.0, (z * z / nd) / (1.0 + z * z / nd)};
    }
    const double z = 1.959963984540054;
    const double nd = static_cast<double>(trials);
    const double phat = static_cast<double>(failures) / nd;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nd;
    const double center = (phat + z2 / (2.0 * nd)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / nd + z2 / (4.0 * nd * nd)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

SimResult finalize(SimResult out) {
    out.rate = out.trials ? static_cast<double>(out.failures) / static_cast<double>(out.trials) : 0.0;
    auto [lo, hi] = wilson_interval(out.failures, out.trials);
    out.wilson_low = lo;
    out.wilson_high = hi;
    return out;
}

SimResult run_simulation(const QubitCssCode& code, double p, uint64_t trials, uint64_t seed,
                         bool parallel) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("simulate: p must be in [0, 1]");
    BruteDecoder x_error_decoder(code.z_stab, code.logical_z); // X flips, Z syndromes
    BruteDecoder z_error_decoder(code.x_stab, code.logical_x); // Z flips, X syndromes
    const size_t words = (code.N + 63) / 64;

    // Outcome bits per trial; the draws depend only on (seed, trial), so the
    // three counting passes see identical errors.
    auto trial_outcome = [&](uint64_t trial) {
        SplitMix64 rng = derived_rng(seed, trial);
        int outcome = 0;
        for (int block = 0; block < 3; ++block) {
            std::vector<uint64_t> ex(words, 0), ez(words, 0);
            for (size_t j = 0; j < code.N; ++j)
                if (rng.unit() < p) ex[j / 64] |= uint64_t(1) << (j % 64);
            for (size_t j = 0; j < code.N; ++j)
                if (rng.unit() < p) ez[j / 64] |= uint64_t(1) << (j % 64);
            if (!(outcome & 1) && x_error_decoder.residual_logical(ex)) outcome |= 1;
            if (!(outcome & 2) && z_error_decoder.residual_logical(ez)) outcome |= 2;
            if (outcome == 3) break;
        }
        return outcome;
    };

    SimResult out;
    out.trials = trials;
    auto any = [&](uint64_t t) { return trial_outcome(t) != 0; };
    auto xf = [&](uint64_t t) { return (trial_outcome(t) & 1) != 0; };
    auto zf = [&](uint64_t t) { return (trial_outcome(t) & 2) != 0; };
    if (parallel) {
        out.failures = count_events(trials, any);
        out.x_failures = count_events(trials, xf);
        out.z_failures = count_events(trials, zf);
    } else {
        out.failures = count_events_serial(trials, any);
        out.x_failures = count_events_serial(trials, xf);
        out.z_failures = count_events_serial(trials, zf);
    }
    return finalize(out);
}

} // namespace

SimResult simulate(const QubitCssCode& code, double p, uint64_t trials, uint64_t seed) {
    return run_simulation(code, p, trials, seed, /*parallel=*/true);
}

SimResult simulate_serial(const QubitCssCode& code, double p, uint64_t trials, uint64_t seed) {
    return run_simulation(code, p, trials, seed, /*parallel=*/false);
}

SimResult simulate(const PipelineResult& pipeline, double p, uint64_t trials, uint64_t seed) {
    return simulate(pipeline.q3, p, trials, seed);
}

namespace {

// q-ary coset-leader decoding: the residual for error e is the minimum
// qudit-weight element of e + span(commutant); logical iff it pairs
// nontrivially with the given logical representatives.
struct QuditChannelDecoder {
    const Field* field;
    Mat commutant; // basis of the same-syndrome space
    Mat logicals;  // pairing rows
    uint64_t combos;

    QuditChannelDecoder(const Field& f, Mat commutant_basis, Mat logical_rows, uint64_t budget)
        : field(&f), commutant(std::move(commutant_basis)), logicals(std::move(logical_rows)) {
        combos = 1;
        for (size_t i = 0; i < commutant.rows(); ++i) {
            if (combos > budget / f.q())
                throw BudgetExceeded("simulate (qudit): same-syndrome coset over budget");
            combos *= f.q();
        }
    }

    bool residual_logical(const std::vector<uint32_t>& error) const {
        const Field& f = *field;
        size_t best_weight = 0;
        for (uint32_t v : error) best_weight += v != 0;
        if (best_weight == 0) return false;
        bool best_logical = false;
        std::vector<uint32_t> coeff(commutant.rows(), 0);
        std::vector<uint32_t> word(error.size());
        for (uint64_t idx = 1; idx < combos; ++idx) {
            uint64_t t = idx;
            for (size_t i = 0; i < commutant.rows(); ++i) {
                coeff[i] = static_cast<uint32_t>(t % f.q());
                t /= f.q();
            }
            word = error;
            for (size_t i = 0; i < commutant.rows(); ++i) {
                if (!coeff[i]) continue;
                for (size_t j = 0; j < word.size(); ++j)
                    word[j] = f.add(word[j], f.mul(coeff[i], commutant.at(i, j)));
            }
            size_t weight = 0;
            for (uint32_t v : word) weight += v != 0;
            if (weight < best_weight) {
                best_weight = weight;
                // residual = leader + error = the combo itself.
                std::vector<uint32_t> residual(error.size(), 0);
                for (size_t i = 0; i < commutant.rows(); ++i) {
                    if (!coeff[i]) continue;
                    for (size_t j = 0; j < residual.size(); ++j)
                        residual[j] = f.add(residual[j], f.mul(coeff[i], commutant.at(i, j)));
                }
                best_logical = false;
                for (size_t l = 0; l < logicals.rows() && !best_logical; ++l)
                    best_logical = dot(f, logicals.row(l), residual) != 0;
            }
        }
        return best_logical;
    }
};

} // namespace

SimResult simulate(const QuditCssCode& code, double p, uint64_t trials, uint64_t seed,
                   uint64_t coset_budget) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("simulate: p must be in [0, 1]");
    const Field& f = code.field();
    LogicalPaulis lp = logical_paulis(code);
    // X errors commute past Z stabilizers; their syndrome-free space is
    // rowspan(H1; H0) = nullspace(z_stab); pairing against the logical Z reps.
    QuditChannelDecoder x_decoder(f, nullspace(code.z_stab), lp.z_reps, coset_budget);
    // Z errors: commutant of the X stabilizers, paired against logical X = H1.
    QuditChannelDecoder z_decoder(
        f, code.h0.rows() ? nullspace(code.h0) : Mat::identity(f, code.N), code.h1, coset_budget);

    auto trial_outcome = [&](uint64_t trial) {
        SplitMix64 rng = derived_rng(seed, trial);
        int outcome = 0;
        for (int block = 0; block < 3; ++block) {
            std::vector<uint32_t> ex(code.N, 0), ez(code.N, 0);
            for (size_t j = 0; j < code.N; ++j)
                if (rng.unit() < p) ex[j] = 1 + static_cast<uint32_t>(rng.below(f.q() - 1));
            for (size_t j = 0; j < code.N; ++j)
                if (rng.unit() < p) ez[j] = 1 + static_cast<uint32_t>(rng.below(f.q() - 1));
            if (!(outcome & 1) && x_decoder.residual_logical(ex)) outcome |= 1;
            if (!(outcome & 2) && z_decoder.residual_logical(ez)) outcome |= 2;
            if (outcome == 3) break;
        }
        return outcome;
    };

    SimResult out;
    out.trials = trials;
    out.failures = count_events(trials, [&](uint64_t t) { return trial_outcome(t) != 0; });
    out.x_failures = count_events(trials, [&](uint64_t t) { return (trial_outcome(t) & 1) != 0; });
    out.z_failures = count_events(trials, [&](uint64_t t) { return (trial_outcome(t) & 2) != 0; });
    return finalize(out);
}

TruncatedExact exact_failure_truncated(const QubitCssCode& code, double p, size_t wmax) {
    BruteDecoder x_error_decoder(code.z_stab, code.logical_z);
    BruteDecoder z_error_decoder(code.x_stab, code.logical_x);
    const size_t n = code.N;
    const size_t words = (n + 63) / 64;

    auto type_probability = [&](const BruteDecoder& decoder) {
        double logical = 0.0;
        double covered = 0.0;
        std::vector<size_t> support;
        std::vector<uint64_t> bits(words, 0);
        // Enumerate all patterns of weight <= wmax recursively.
        auto weight_prob = [&](size_t w) {
            return std::pow(p, static_cast<double>(w)) *
                   std::pow(1.0 - p, static_cast<double>(n - w));
        };
        std::function<void(size_t, size_t)> rec = [&](size_t start, size_t w) {
            covered += weight_prob(w);
            if (w > 0 && decoder.residual_logical(bits)) logical += weight_prob(w);
            if (w == wmax) return;
            for (size_t j = start; j < n; ++j) {
                bits[j / 64] ^= uint64_t(1) << (j % 64);
                rec(j + 1, w + 1);
                bits[j / 64] ^= uint64_t(1) << (j % 64);
            }
        };
        rec(0, 0);
        return std::make_pair(logical, 1.0 - covered);
    };

    auto [px, neg_x] = type_probability(x_error_decoder);
    auto [pz, neg_z] = type_probability(z_error_decoder);

    TruncatedExact out;
    const double block_ok = (1.0 - px) * (1.0 - pz);
    out.probability = 1.0 - block_ok * block_ok * block_ok;
    const double block_all_covered = (1.0 - neg_x) * (1.0 - neg_z);
    out.neglected_mass = 1.0 - std::pow(block_all_covered, 3.0);
    return out;
}

} // namespace msd
} // namespace starq
