#include "starq/transversal.hpp"

#include <stdexcept>

#include "starq/errors.hpp"
#include "starq/kernels.hpp"
#include "starq/prng.hpp"

namespace starq {

PhaseGateSpec::PhaseGateSpec(const Field& f, std::vector<Monomial> monomials, uint32_t f_mask,
                             FieldBasis f_basis)
    : field_(&f), monomials_(std::move(monomials)), f_mask_(f_mask), f_basis_(std::move(f_basis)) {
    if (!f_basis_.field().same(f))
        throw std::invalid_argument("PhaseGateSpec: f basis over the wrong field");
    for (const Monomial& mono : monomials_) {
        if (mono.ex < 0 || mono.ey < 0 || mono.ez < 0 || mono.degree() < 1 || mono.degree() > 3)
            throw std::invalid_argument("PhaseGateSpec: monomial degree must be in [1, 3]");
        if (mono.coeff >= f.q())
            throw std::invalid_argument("PhaseGateSpec: coefficient out of range");
    }
    if (f_mask >= f.q()) throw std::invalid_argument("PhaseGateSpec: f mask out of range");
}

uint32_t PhaseGateSpec::g(uint32_t x, uint32_t y, uint32_t z) const {
    uint32_t acc = 0;
    for (const Monomial& mono : monomials_) {
        uint32_t term = mono.coeff;
        if (mono.ex) term = field_->mul(term, field_->pow(x, mono.ex));
        if (mono.ey) term = field_->mul(term, field_->pow(y, mono.ey));
        if (mono.ez) term = field_->mul(term, field_->pow(z, mono.ez));
        acc = field_->add(acc, term);
    }
    return acc;
}

uint32_t PhaseGateSpec::f(uint32_t a) const {
    return __builtin_parity(f_mask_ & f_basis_.expand(a));
}

uint32_t trace_mask(const Field& f) {
    // In the polynomial basis, f(a) = sum_i a_i Tr(x^i), so the mask bit i is
    // the trace of the i-th basis element.
    uint32_t mask = 0;
    for (int i = 0; i < f.degree(); ++i) mask |= f.trace(1u << i) << i;
    return mask;
}

PhaseGateSpec ccz_spec(const Field& f) {
    return PhaseGateSpec(f, {Monomial{1, 1, 1, 1}}, trace_mask(f), FieldBasis::polynomial(f));
}

uint32_t physical_phase(const PhaseGateSpec& spec, std::span<const uint32_t> a,
                        std::span<const uint32_t> b, std::span<const uint32_t> c) {
    if (a.size() != b.size() || a.size() != c.size())
        throw std::invalid_argument("physical_phase: length mismatch");
    uint32_t acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc ^= spec.phase(a[i], b[i], c[i]);
    return acc;
}

uint32_t logical_phase(const PhaseGateSpec& spec, std::span<const uint32_t> u,
                       std::span<const uint32_t> v, std::span<const uint32_t> w) {
    return physical_phase(spec, u, v, w);
}

namespace {

// Decodes a base-q digit string of the given length from idx.
std::vector<uint32_t> digits_of(uint64_t idx, uint32_t q, size_t len) {
    std::vector<uint32_t> out(len);
    for (size_t i = 0; i < len; ++i) { out[i] = static_cast<uint32_t>(idx % q); idx /= q; }
    return out;
}

std::vector<uint32_t> coset_element(const QuditCssCode& code, std::span<const uint32_t> u,
                                    std::span<const uint32_t> coeff) {
    const Field& f = code.field();
    std::vector<uint32_t> word = code.K ? vec_mat(u, code.h1) : std::vector<uint32_t>(code.N, 0);
    for (size_t i = 0; i < coeff.size(); ++i) {
        if (coeff[i] == 0) continue;
        for (size_t j = 0; j < code.N; ++j)
            word[j] = f.add(word[j], f.mul(coeff[i], code.h0.at(i, j)));
    }
    return word;
}

TransversalResult run_verify(const QuditCssCode& code, const PhaseGateSpec& spec,
                             const VerifyMode& mode, bool parallel) {
    const Field& f = code.field();
    const size_t k0 = code.h0.rows();
    const uint32_t q = f.q();

    auto check_at = [&](std::span<const uint32_t> u, std::span<const uint32_t> v,
                        std::span<const uint32_t> w, std::span<const uint32_t> ch,
                        std::span<const uint32_t> ch1, std::span<const uint32_t> ch2,
                        TransversalWitness* out) {
        std::vector<uint32_t> a = coset_element(code, u, ch);
        std::vector<uint32_t> b = coset_element(code, v, ch1);
        std::vector<uint32_t> c = coset_element(code, w, ch2);
        uint32_t phys = physical_phase(spec, a, b, c);
        uint32_t logi = logical_phase(spec, u, v, w);
        if (phys == logi) return true;
        if (out) *out = TransversalWitness{std::vector<uint32_t>(u.begin(), u.end()),
                                           std::vector<uint32_t>(v.begin(), v.end()),
                                           std::vector<uint32_t>(w.begin(), w.end()),
                                           std::move(a), std::move(b), std::move(c),
                                           phys, logi};
        return false;
    };

    TransversalResult result;
    if (mode.kind == VerifyMode::Kind::exhaustive) {
        // Total space: q^(3K) logical triples times q^(3(k-K)) coset choices.
        long double total_ld = 1.0L;
        for (size_t i = 0; i < 3 * (code.K + k0); ++i) total_ld *= q;
        if (total_ld > static_cast<long double>(mode.budget))
            throw BudgetExceeded("verify_transversal: exhaustive space larger than budget");
        uint64_t logical_total = 1, coset_total = 1;
        for (size_t i = 0; i < 3 * code.K; ++i) logical_total *= q;
        for (size_t i = 0; i < 3 * k0; ++i) coset_total *= q;

        auto check_index = [&](uint64_t idx) {
            uint64_t li = idx / coset_total, ci = idx % coset_total;
            std::vector<uint32_t> uvw = digits_of(li, q, 3 * code.K);
            std::vector<uint32_t> hh = digits_of(ci, q, 3 * k0);
            std::span<const uint32_t> u(uvw.data(), code.K), v(uvw.data() + code.K, code.K),
                w(uvw.data() + 2 * code.K, code.K);
            std::span<const uint32_t> h(hh.data(), k0), h1(hh.data() + k0, k0),
                h2(hh.data() + 2 * k0, k0);
            return check_at(u, v, w, h, h1, h2, nullptr);
        };
        uint64_t total = logical_total * coset_total;
        std::optional<uint64_t> bad =
            parallel ? first_failure(total, check_index) : first_failure_serial(total, check_index);
        result.checks = total;
        result.pass = !bad.has_value();
        if (bad) {
            uint64_t li = *bad / coset_total, ci = *bad % coset_total;
            std::vector<uint32_t> uvw = digits_of(li, q, 3 * code.K);
            std::vector<uint32_t> hh = digits_of(ci, q, 3 * k0);
            TransversalWitness w;
            check_at({uvw.data(), code.K}, {uvw.data() + code.K, code.K},
                     {uvw.data() + 2 * code.K, code.K}, {hh.data(), k0}, {hh.data() + k0, k0},
                     {hh.data() + 2 * k0, k0}, &w);
            result.witness = std::move(w);
        }
    } else {
        auto check_trial = [&](uint64_t trial) {
            SplitMix64 rng = derived_rng(mode.seed, trial);
            std::vector<uint32_t> u(code.K), v(code.K), w(code.K), h(k0), h1(k0), h2(k0);
            for (auto* vec : {&u, &v, &w})
                for (auto& x : *vec) x = static_cast<uint32_t>(rng.below(q));
            for (auto* vec : {&h, &h1, &h2})
                for (auto& x : *vec) x = static_cast<uint32_t>(rng.below(q));
            return check_at(u, v, w, h, h1, h2, nullptr);
        };
        std::optional<uint64_t> bad = parallel ? first_failure(mode.trials, check_trial)
                                               : first_failure_serial(mode.trials, check_trial);
        result.checks = mode.trials;
        result.pass = !bad.has_value();
        if (bad) {
            SplitMix64 rng = derived_rng(mode.seed, *bad);
            std::vector<uint32_t> u(code.K), v(code.K), w(code.K), h(k0), h1(k0), h2(k0);
            for (auto* vec : {&u, &v, &w})
                for (auto& x : *vec) x = static_cast<uint32_t>(rng.below(q));
            for (auto* vec : {&h, &h1, &h2})
                for (auto& x : *vec) x = static_cast<uint32_t>(rng.below(q));
            TransversalWitness witness;
            check_at(u, v, w, h, h1, h2, &witness);
            result.witness = std::move(witness);
        }
    }
    return result;
}

} // namespace

TransversalResult verify_transversal(const QuditCssCode& q, const PhaseGateSpec& spec,
                                     const VerifyMode& mode) {
    if (!spec.field().same(q.field()))
        throw std::invalid_argument("verify_transversal: gate and code fields differ");
    return run_verify(q, spec, mode, /*parallel=*/true);
}

TransversalResult verify_transversal_serial(const QuditCssCode& q, const PhaseGateSpec& spec,
                                            const VerifyMode& mode) {
    if (!spec.field().same(q.field()))
        throw std::invalid_argument("verify_transversal: gate and code fields differ");
    return run_verify(q, spec, mode, /*parallel=*/false);
}

TripleConditionReport check_triple_conditions(const Mat& h1, const Mat& h0) {
    if (!h1.field().same(h0.field()) && h0.rows() > 0)
        throw std::invalid_argument("check_triple_conditions: mixed fields");
    if (h0.rows() > 0 && h1.cols() != h0.cols())
        throw std::invalid_argument("check_triple_conditions: width mismatch");
    const Field& f = h1.field();
    const size_t K = h1.rows();
    const size_t k = K + h0.rows();
    const size_t n = h1.cols();

    auto row_at = [&](size_t a) { return a < K ? h1.row(a) : h0.row(a - K); };

    TripleConditionReport report;
    for (size_t a = 0; a < k; ++a) {
        auto ra = row_at(a);
        uint32_t weight_sum = 0;
        for (size_t i = 0; i < n; ++i) weight_sum = f.add(weight_sum, ra[i]);
        uint32_t expect = a < K ? 1u : 0u;
        if (weight_sum != expect) report.eq5.push_back({a, weight_sum});
        for (size_t b = 0; b < k; ++b) {
            auto rb = row_at(b);
            uint32_t pair_sum = 0;
            for (size_t i = 0; i < n; ++i) pair_sum = f.add(pair_sum, f.mul(ra[i], rb[i]));
            expect = (a == b && a < K) ? 1u : 0u;
            if (pair_sum != expect) report.eq4.push_back({a, b, pair_sum});
            for (size_t c = 0; c < k; ++c) {
                auto rc = row_at(c);
                uint32_t triple_sum = 0;
                for (size_t i = 0; i < n; ++i)
                    triple_sum = f.add(triple_sum, f.mul(f.mul(ra[i], rb[i]), rc[i]));
                expect = (a == b && b == c && a < K) ? 1u : 0u;
                if (triple_sum != expect) report.eq3.push_back({a, b, c, triple_sum});
            }
        }
    }
    return report;
}

} // namespace starq
