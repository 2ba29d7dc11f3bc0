#include "starq/qubitize.hpp"

#include <stdexcept>

#include "starq/errors.hpp"
#include "starq/kernels.hpp"
#include "starq/prng.hpp"

namespace starq {

QubitCssCode step1(const QuditCssCode& q0, const SelfDualBasis& sdb) { return qubitize_css(q0, sdb); }

namespace {

std::vector<uint32_t> combine_rows(const Mat& source, std::span<const uint32_t> coeffs,
                                   size_t row_offset) {
    std::vector<uint32_t> out(source.cols(), 0);
    for (size_t j = 0; j < coeffs.size(); ++j) {
        if (!coeffs[j]) continue;
        auto row = source.row(row_offset + j);
        for (size_t c = 0; c < out.size(); ++c) out[c] ^= row[c];
    }
    return out;
}

uint32_t apply_gf2(const Mat& m, uint32_t bits) {
    uint32_t out = 0;
    for (size_t i = 0; i < m.rows(); ++i) {
        uint32_t acc = 0;
        for (size_t j = 0; j < m.cols(); ++j) acc ^= m.at(i, j) & (bits >> j & 1);
        out |= acc << i;
    }
    return out;
}

} // namespace

QubitCssCode step2(const QubitCssCode& q1, size_t k0, const Rmfe& rmfe, const SelfDualBasis& sdb) {
    const Field& f = sdb.field();
    const Field& gf2 = Field::make(1);
    const int m = f.degree();
    const int s = rmfe.s;
    if (rmfe.m != m) throw std::invalid_argument("step2: RMFE degree does not match the field");
    if (q1.K != k0 * static_cast<size_t>(m))
        throw std::invalid_argument("step2: q1 does not have k0 blocks of m logical qubits");

    // Self-dual-basis expansions of the embedded unit vectors phi(e_l); their
    // span is the logical subspace kept alive in each block.
    Mat phi_sdb(gf2, s, m);
    for (int l = 0; l < s; ++l) {
        uint32_t elem = apply_gf2(rmfe.phi, 1u << l); // polynomial coords = element bits
        uint32_t coords = sdb.basis.expand(elem);
        for (int j = 0; j < m; ++j) phi_sdb.set(l, j, coords >> j & 1);
    }
    Mat annihilator = nullspace(phi_sdb); // (m - s) x m

    // Every added stabilizer must fix every kept logical basis state; since
    // the kept labels form the linear subspace spanned by the phi(e_l)
    // expansions, this is exactly the annihilator property. Re-checked over
    // all 2^s labels rather than trusted.
    for (size_t a = 0; a < annihilator.rows(); ++a)
        for (uint32_t x = 0; x < (1u << s); ++x) {
            uint32_t label = sdb.basis.expand(apply_gf2(rmfe.phi, x));
            uint32_t pair = 0;
            for (int j = 0; j < m; ++j) pair ^= annihilator.at(a, j) & (label >> j & 1);
            if (pair)
                throw std::logic_error("step2: added stabilizer acts on a kept logical state");
        }

    QubitCssCode q2;
    q2.N = q1.N;
    q2.K = k0 * s;
    q2.x_stab = q1.x_stab;
    q2.lineage = "step2(" + q1.lineage + ")";

    Mat added(gf2, k0 * annihilator.rows(), q1.N);
    for (size_t i = 0; i < k0; ++i)
        for (size_t a = 0; a < annihilator.rows(); ++a) {
            std::vector<uint32_t> coeffs(m);
            for (int j = 0; j < m; ++j) coeffs[j] = annihilator.at(a, j);
            std::vector<uint32_t> row = combine_rows(q1.logical_z, coeffs, i * m);
            for (size_t c = 0; c < q1.N; ++c) added.set(i * annihilator.rows() + a, c, row[c]);
        }
    q2.z_stab = vstack(q1.z_stab, added);

    q2.logical_x = Mat(gf2, k0 * s, q1.N);
    q2.logical_z = Mat(gf2, k0 * s, q1.N);
    for (size_t i = 0; i < k0; ++i)
        for (int l = 0; l < s; ++l) {
            std::vector<uint32_t> xc(m), zc(m);
            for (int j = 0; j < m; ++j) xc[j] = phi_sdb.at(l, j);
            std::vector<uint32_t> e(s, 0);
            e[l] = 1;
            auto sol = solve(phi_sdb, e);
            if (!sol) throw std::logic_error("step2: logical Z dual system is inconsistent");
            zc.assign(sol->begin(), sol->end());
            std::vector<uint32_t> xrow = combine_rows(q1.logical_x, xc, i * m);
            std::vector<uint32_t> zrow = combine_rows(q1.logical_z, zc, i * m);
            for (size_t c = 0; c < q1.N; ++c) {
                q2.logical_x.set(i * s + l, c, xrow[c]);
                q2.logical_z.set(i * s + l, c, zrow[c]);
            }
        }
    check_qubit_css(q2);
    return q2;
}

uint32_t f_mask_from_rmfe(const Rmfe& rmfe) {
    // f(a) = parity of psi(a): the mask against polynomial coordinates is the
    // column-parity vector of psi.
    uint32_t mask = 0;
    for (size_t j = 0; j < rmfe.psi.cols(); ++j) {
        uint32_t parity = 0;
        for (size_t l = 0; l < rmfe.psi.rows(); ++l) parity ^= rmfe.psi.at(l, j);
        mask |= parity << j;
    }
    return mask;
}

std::pair<QubitCssCode, CczSchedule> step3(const QubitCssCode& q2, size_t n0, const Mfe& mfe,
                                           const Rmfe& rmfe, const SelfDualBasis& sdb) {
    const Field& f = sdb.field();
    const Field& gf2 = Field::make(1);
    const int m = f.degree();
    const size_t r = mfe.r;
    if (mfe.m != m) throw std::invalid_argument("step3: MFE degree does not match the field");
    if (q2.N != n0 * static_cast<size_t>(m))
        throw std::invalid_argument("step3: q2 does not have n0 registers of m qubits");

    // sigma acts on polynomial coordinates; registers carry self-dual-basis
    // coordinates, so conjugate by the change of basis.
    Mat t = change_of_basis(sdb.basis, FieldBasis::polynomial(f));
    Mat sigma_prime = mat_mul(mfe.sigma, t); // r x m
    Mat st = transpose(sigma_prime);         // m x r
    Mat rinv = right_inverse(st);            // r x m, st * rinv = I
    Mat inner_dual = nullspace(st);          // (r - m) x r

    auto map_x = [&](const Mat& rows) {
        Mat out(gf2, rows.rows(), n0 * r);
        for (size_t i = 0; i < rows.rows(); ++i)
            for (size_t reg = 0; reg < n0; ++reg) {
                uint32_t bits = 0;
                for (int j = 0; j < m; ++j) bits |= rows.at(i, reg * m + j) << j;
                for (size_t slot = 0; slot < r; ++slot) {
                    uint32_t acc = 0;
                    for (int j = 0; j < m; ++j) acc ^= sigma_prime.at(slot, j) & (bits >> j & 1);
                    if (acc) out.set(i, reg * r + slot, 1);
                }
            }
        return out;
    };
    auto map_z = [&](const Mat& rows) {
        Mat out(gf2, rows.rows(), n0 * r);
        for (size_t i = 0; i < rows.rows(); ++i)
            for (size_t reg = 0; reg < n0; ++reg) {
                uint32_t bits = 0;
                for (int j = 0; j < m; ++j) bits |= rows.at(i, reg * m + j) << j;
                for (size_t slot = 0; slot < r; ++slot) {
                    uint32_t acc = 0;
                    for (int j = 0; j < m; ++j) acc ^= rinv.at(slot, j) & (bits >> j & 1);
                    if (acc) out.set(i, reg * r + slot, 1);
                }
            }
        return out;
    };

    QubitCssCode q3;
    q3.N = n0 * r;
    q3.K = q2.K;
    q3.x_stab = map_x(q2.x_stab);
    Mat lifted_z = map_z(q2.z_stab);
    Mat inner(gf2, n0 * inner_dual.rows(), n0 * r);
    for (size_t reg = 0; reg < n0; ++reg)
        for (size_t i = 0; i < inner_dual.rows(); ++i)
            for (size_t slot = 0; slot < r; ++slot)
                if (inner_dual.at(i, slot)) inner.set(reg * inner_dual.rows() + i, reg * r + slot, 1);
    q3.z_stab = vstack(lifted_z, inner);
    q3.logical_x = map_x(q2.logical_x);
    q3.logical_z = map_z(q2.logical_z);
    q3.lineage = "step3(" + q2.lineage + ")";
    check_qubit_css(q3);

    // Parity mask P of psi_RMF o psi_MF, and the per-register CCZ triples.
    Mat composed = mat_mul(rmfe.psi, mfe.psi); // s x r
    CczSchedule schedule;
    schedule.n3 = q3.N;
    schedule.k3 = q3.K;
    schedule.r = r;
    schedule.p_mask.resize(r, 0);
    for (size_t slot = 0; slot < r; ++slot) {
        uint32_t parity = 0;
        for (size_t l = 0; l < composed.rows(); ++l) parity ^= composed.at(l, slot);
        schedule.p_mask[slot] = static_cast<uint8_t>(parity);
    }
    for (size_t reg = 0; reg < n0; ++reg)
        for (size_t slot = 0; slot < r; ++slot)
            if (schedule.p_mask[slot])
                schedule.triples.push_back(CczSchedule::Triple{
                    {reg * r + slot, reg * r + mfe.pi2[slot], reg * r + mfe.pi3[slot]}, reg, slot});
    return {std::move(q3), std::move(schedule)};
}

PipelineResult run_pipeline(const LinearCode& c, size_t K, const RmfeMode& rmfe_mode,
                            uint64_t distance_cap) {
    const Field& f = c.field();
    PipelineResult result{build_css(c, K, distance_cap),
                          QubitCssCode{},
                          QubitCssCode{},
                          QubitCssCode{},
                          find_self_dual_basis(f),
                          Rmfe{},
                          Mfe{},
                          CczSchedule{},
                          PipelineParams{}};
    if (rmfe_mode.kind == RmfeMode::Kind::trivial) {
        result.rmfe = rmfe_trivial(f);
    } else {
        auto found = rmfe_search(rmfe_mode.s, f, rmfe_mode.seed, rmfe_mode.budget);
        if (!found)
            throw BudgetExceeded("run_pipeline: RMFE search exhausted its budget without a hit");
        result.rmfe = *found;
    }
    result.mfe = mfe3(f);
    result.q1 = step1(result.q0, result.sdb);
    result.q2 = step2(result.q1, result.q0.K, result.rmfe, result.sdb);
    auto [q3, schedule] = step3(result.q2, result.q0.N, result.mfe, result.rmfe, result.sdb);
    result.q3 = std::move(q3);
    result.schedule = std::move(schedule);
    result.params = PipelineParams{result.q0.N,  result.q0.K,          f.degree(), result.rmfe.s,
                                   result.mfe.r, result.q0.N * result.mfe.r,
                                   result.q0.K * static_cast<size_t>(result.rmfe.s)};
    return result;
}

namespace {

// Precomputed encoder: field element -> r encoded bits per register.
struct BlockEncoder {
    const PipelineResult* pipe;
    size_t words_per_reg;
    std::vector<std::vector<uint64_t>> element_bits; // [q] -> packed r bits

    explicit BlockEncoder(const PipelineResult& p) : pipe(&p) {
        const Field& f = p.q0.field();
        const size_t r = p.mfe.r;
        words_per_reg = (r + 63) / 64;
        Mat t = change_of_basis(p.sdb.basis, FieldBasis::polynomial(f));
        Mat sigma_prime = mat_mul(p.mfe.sigma, t);
        element_bits.assign(f.q(), std::vector<uint64_t>(words_per_reg, 0));
        for (uint32_t x = 0; x < f.q(); ++x) {
            uint32_t coords = p.sdb.basis.expand(x);
            for (size_t slot = 0; slot < r; ++slot) {
                uint32_t acc = 0;
                for (int j = 0; j < p.mfe.m; ++j) acc ^= sigma_prime.at(slot, j) & (coords >> j & 1);
                if (acc) element_bits[x][slot / 64] |= uint64_t(1) << (slot % 64);
            }
        }
    }

    // u: k0*s logical bits; coset: h0-row coefficients in F_q.
    std::vector<uint64_t> encode(std::span<const uint32_t> u, std::span<const uint32_t> coset) const {
        const QuditCssCode& q0 = pipe->q0;
        const Field& f = q0.field();
        const int s = pipe->rmfe.s;
        std::vector<uint32_t> field_u(q0.K);
        for (size_t i = 0; i < q0.K; ++i) {
            uint32_t bits = 0;
            for (int l = 0; l < s; ++l) bits |= u[i * s + l] << l;
            field_u[i] = apply_gf2(pipe->rmfe.phi, bits);
        }
        std::vector<uint32_t> word = q0.K ? vec_mat(field_u, q0.h1)
                                          : std::vector<uint32_t>(q0.N, 0);
        for (size_t j = 0; j < coset.size(); ++j) {
            if (!coset[j]) continue;
            for (size_t c = 0; c < q0.N; ++c)
                word[c] = f.add(word[c], f.mul(coset[j], q0.h0.at(j, c)));
        }
        std::vector<uint64_t> bits(q0.N * words_per_reg);
        for (size_t reg = 0; reg < q0.N; ++reg) {
            const auto& enc = element_bits[word[reg]];
            for (size_t w = 0; w < words_per_reg; ++w) bits[reg * words_per_reg + w] = enc[w];
        }
        return bits;
    }

    uint32_t bit_at(const std::vector<uint64_t>& bits, size_t qubit) const {
        const size_t r = pipe->mfe.r;
        size_t reg = qubit / r, slot = qubit % r;
        return static_cast<uint32_t>(bits[reg * words_per_reg + slot / 64] >> (slot % 64) & 1);
    }
};

uint32_t schedule_parity(const BlockEncoder& enc, const CczSchedule& schedule,
                         const std::vector<uint64_t>& b1, const std::vector<uint64_t>& b2,
                         const std::vector<uint64_t>& b3) {
    uint32_t parity = 0;
    for (const auto& triple : schedule.triples)
        parity ^= enc.bit_at(b1, triple.qubits[0]) & enc.bit_at(b2, triple.qubits[1]) &
                  enc.bit_at(b3, triple.qubits[2]);
    return parity;
}

uint32_t logical_ccz_parity(std::span<const uint32_t> u, std::span<const uint32_t> v,
                            std::span<const uint32_t> w) {
    uint32_t parity = 0;
    for (size_t i = 0; i < u.size(); ++i) parity ^= u[i] & v[i] & w[i];
    return parity;
}

PipelineVerifyResult run_pipeline_verify(const PipelineResult& result, const CczSchedule& schedule,
                                         const VerifyMode& mode, bool parallel) {
    const QuditCssCode& q0 = result.q0;
    const Field& f = q0.field();
    const uint32_t q = f.q();
    const size_t logical_bits = q0.K * static_cast<size_t>(result.rmfe.s);
    const size_t coset_rows = q0.h0.rows();
    BlockEncoder encoder(result);

    auto check_tuple = [&](std::span<const uint32_t> u, std::span<const uint32_t> v,
                           std::span<const uint32_t> w, std::span<const uint32_t> h,
                           std::span<const uint32_t> h1, std::span<const uint32_t> h2) {
        auto b1 = encoder.encode(u, h);
        auto b2 = encoder.encode(v, h1);
        auto b3 = encoder.encode(w, h2);
        return schedule_parity(encoder, schedule, b1, b2, b3) == logical_ccz_parity(u, v, w);
    };

    PipelineVerifyResult out;
    if (mode.kind == VerifyMode::Kind::exhaustive) {
        long double total_ld = 1.0L;
        for (size_t i = 0; i < 3 * logical_bits; ++i) total_ld *= 2;
        for (size_t i = 0; i < 3 * coset_rows; ++i) total_ld *= q;
        if (total_ld > static_cast<long double>(mode.budget))
            throw BudgetExceeded("verify_pipeline: exhaustive space larger than budget");
        uint64_t logical_total = uint64_t(1) << (3 * logical_bits);
        uint64_t coset_total = 1;
        for (size_t i = 0; i < 3 * coset_rows; ++i) coset_total *= q;
        uint64_t total = logical_total * coset_total;

        auto decode_and_check = [&](uint64_t idx, PipelineWitness* witness) {
            uint64_t li = idx / coset_total, ci = idx % coset_total;
            std::vector<uint32_t> u(logical_bits), v(logical_bits), w(logical_bits);
            for (size_t b = 0; b < logical_bits; ++b) u[b] = li >> b & 1;
            for (size_t b = 0; b < logical_bits; ++b) v[b] = li >> (logical_bits + b) & 1;
            for (size_t b = 0; b < logical_bits; ++b) w[b] = li >> (2 * logical_bits + b) & 1;
            std::vector<uint32_t> h(coset_rows), h1(coset_rows), h2(coset_rows);
            uint64_t c = ci;
            for (auto* vec : {&h, &h1, &h2})
                for (auto& x : *vec) { x = static_cast<uint32_t>(c % q); c /= q; }
            bool pass = check_tuple(u, v, w, h, h1, h2);
            if (!pass && witness) {
                auto b1 = encoder.encode(u, h);
                auto b2 = encoder.encode(v, h1);
                auto b3 = encoder.encode(w, h2);
                *witness = PipelineWitness{u, v, w, ci,
                                           schedule_parity(encoder, schedule, b1, b2, b3),
                                           logical_ccz_parity(u, v, w)};
            }
            return pass;
        };
        auto check_index = [&](uint64_t idx) { return decode_and_check(idx, nullptr); };
        std::optional<uint64_t> bad =
            parallel ? first_failure(total, check_index) : first_failure_serial(total, check_index);
        out.checks = total;
        out.pass = !bad.has_value();
        if (bad) {
            PipelineWitness witness;
            decode_and_check(*bad, &witness);
            out.witness = std::move(witness);
        }
    } else {
        auto trial_inputs = [&](uint64_t trial) {
            SplitMix64 rng = derived_rng(mode.seed, trial);
            std::vector<uint32_t> u(logical_bits), v(logical_bits), w(logical_bits);
            std::vector<uint32_t> h(coset_rows), h1(coset_rows), h2(coset_rows);
            for (auto* vec : {&u, &v, &w})
                for (auto& x : *vec) x = static_cast<uint32_t>(rng.below(2));
            for (auto* vec : {&h, &h1, &h2})
                for (auto& x : *vec) x = static_cast<uint32_t>(rng.below(q));
            return std::make_tuple(u, v, w, h, h1, h2);
        };
        auto check_trial = [&](uint64_t trial) {
            auto [u, v, w, h, h1, h2] = trial_inputs(trial);
            return check_tuple(u, v, w, h, h1, h2);
        };
        std::optional<uint64_t> bad = parallel ? first_failure(mode.trials, check_trial)
                                               : first_failure_serial(mode.trials, check_trial);
        out.checks = mode.trials;
        out.pass = !bad.has_value();
        if (bad) {
            auto [u, v, w, h, h1, h2] = trial_inputs(*bad);
            auto b1 = encoder.encode(u, h);
            auto b2 = encoder.encode(v, h1);
            auto b3 = encoder.encode(w, h2);
            out.witness = PipelineWitness{u, v, w, *bad,
                                          schedule_parity(encoder, schedule, b1, b2, b3),
                                          logical_ccz_parity(u, v, w)};
        }
    }
    return out;
}

} // namespace

PipelineVerifyResult verify_pipeline(const PipelineResult& result, const VerifyMode& mode) {
    return run_pipeline_verify(result, result.schedule, mode, /*parallel=*/true);
}

PipelineVerifyResult verify_pipeline_serial(const PipelineResult& result, const VerifyMode& mode) {
    return run_pipeline_verify(result, result.schedule, mode, /*parallel=*/false);
}

PipelineVerifyResult verify_pipeline_with_schedule(const PipelineResult& result,
                                                   const CczSchedule& schedule,
                                                   const VerifyMode& mode, bool parallel) {
    return run_pipeline_verify(result, schedule, mode, parallel);
}

namespace {

struct PackedRows {
    size_t words;
    std::vector<uint64_t> data; // rows * words

    PackedRows(const Mat& m) : words((m.cols() + 63) / 64), data(m.rows() * words, 0) {
        for (size_t i = 0; i < m.rows(); ++i)
            for (size_t j = 0; j < m.cols(); ++j)
                if (m.at(i, j)) data[i * words + j / 64] |= uint64_t(1) << (j % 64);
    }
    const uint64_t* row(size_t i) const { return data.data() + i * words; }
};

size_t weight_of(const uint64_t* row, size_t words) {
    size_t w = 0;
    for (size_t i = 0; i < words; ++i) w += static_cast<size_t>(__builtin_popcountll(row[i]));
    return w;
}

// Distance via enumeration of the whole commutant: gray-code walk over the
// row space of `commutant_basis`, tracking the pairing with the logical rows.
DistanceReport distance_by_enumeration(const Mat& commutant_basis, const Mat& logicals) {
    PackedRows rows(commutant_basis);
    PackedRows logical_rows(logicals);
    const size_t dim = commutant_basis.rows();
    const size_t words = rows.words;

    // Pairing of each basis row with each logical row.
    std::vector<uint64_t> row_pairing(dim, 0);
    for (size_t i = 0; i < dim; ++i)
        for (size_t l = 0; l < logicals.rows(); ++l) {
            uint64_t acc = 0;
            for (size_t w = 0; w < words; ++w) acc ^= rows.row(i)[w] & logical_rows.row(l)[w];
            row_pairing[i] |= static_cast<uint64_t>(__builtin_popcountll(acc) & 1) << l;
        }

    std::vector<uint64_t> current(words, 0);
    uint64_t pairing = 0;
    size_t best = commutant_basis.cols() + 1;
    uint64_t total = uint64_t(1) << dim;
    for (uint64_t g = 1; g < total; ++g) {
        size_t flip = static_cast<size_t>(__builtin_ctzll(g)); // gray step
        const uint64_t* row = rows.row(flip);
        for (size_t w = 0; w < words; ++w) current[w] ^= row[w];
        pairing ^= row_pairing[flip];
        if (pairing != 0) best = std::min(best, weight_of(current.data(), words));
    }
    return DistanceReport{true, best, total - 1};
}

// Distance via increasing-weight search over sparse vectors, testing the
// stabilizer syndrome and logical pairing per candidate.
DistanceReport distance_by_weight_search(const Mat& opposing_stab, const Mat& logicals,
                                         uint64_t budget) {
    const size_t n = logicals.cols();
    PackedRows stab(opposing_stab);
    PackedRows logical_rows(logicals);
    // Column signatures: syndrome bits and logical pairing bits per position.
    const size_t srows = opposing_stab.rows();
    const size_t swords = (srows + 63) / 64;
    std::vector<uint64_t> col_syndrome(n * swords, 0);
    std::vector<uint64_t> col_pairing(n, 0);
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < srows; ++i)
            if (opposing_stab.at(i, j)) col_syndrome[j * swords + i / 64] |= uint64_t(1) << (i % 64);
        for (size_t l = 0; l < logicals.rows(); ++l)
            if (logicals.at(l, j)) col_pairing[j] |= uint64_t(1) << l;
    }

    uint64_t examined = 0;
    for (size_t w = 1; w <= n; ++w) {
        // C(n, w) candidates at this weight; stop if over budget.
        long double count = 1.0L;
        for (size_t i = 0; i < w; ++i) count = count * (n - i) / (i + 1);
        if (static_cast<long double>(examined) + count > static_cast<long double>(budget))
            return DistanceReport{false, w, examined};

        std::vector<size_t> support(w);
        std::vector<uint64_t> syndrome((w + 1) * swords, 0);
        std::vector<uint64_t> pairing(w + 1, 0);
        bool found = false;
        // Depth-first over increasing supports with incremental syndromes.
        size_t depth = 0;
        support[0] = 0;
        while (true) {
            if (depth + 1 <= w && support[depth] < n) {
                size_t j = support[depth];
                for (size_t t = 0; t < swords; ++t)
                    syndrome[(depth + 1) * swords + t] = syndrome[depth * swords + t] ^
                                                         col_syndrome[j * swords + t];
                pairing[depth + 1] = pairing[depth] ^ col_pairing[j];
                if (depth + 1 == w) {
                    ++examined;
                    bool zero = true;
                    for (size_t t = 0; t < swords; ++t)
                        if (syndrome[(depth + 1) * swords + t]) { zero = false; break; }
                    if (zero && pairing[depth + 1] != 0) { found = true; break; }
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
        if (found) return DistanceReport{true, w, examined};
    }
    return DistanceReport{true, n + 1, examined}; // no logicals at all
}

DistanceReport css_distance(const Mat& opposing_stab, const Mat& logicals, uint64_t budget) {
    // Commutant of the opposing stabilizers = own stabilizers + logical reps.
    Mat commutant = nullspace(opposing_stab);
    size_t dim = commutant.rows();
    if (dim <= 62 && (uint64_t(1) << dim) <= budget)
        return distance_by_enumeration(commutant, logicals);
    return distance_by_weight_search(opposing_stab, logicals, budget);
}

} // namespace

DistanceReport css_distance_x(const QubitCssCode& code, uint64_t budget) {
    return css_distance(code.z_stab, code.logical_z, budget);
}

DistanceReport css_distance_z(const QubitCssCode& code, uint64_t budget) {
    return css_distance(code.x_stab, code.logical_x, budget);
}

CssDistances q3_distance(const PipelineResult& result, uint64_t budget) {
    CssDistances out;
    out.dx = css_distance_x(result.q3, budget);
    out.dz = css_distance_z(result.q3, budget);
    if (result.q0.dx_bound && result.q0.dz.exact())
        out.d0_claim = std::min(*result.q0.dx_bound, result.q0.dz.weight);
    return out;
}

} // namespace starq
