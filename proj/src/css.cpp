#include "starq/css.hpp"

#include <stdexcept>

#include "starq/prng.hpp"

namespace starq {

PivotForm pivot_form(const LinearCode& c, size_t K) {
    if (K > c.k) throw std::invalid_argument("pivot_form: K exceeds the code dimension");
    if (K == 0) throw std::invalid_argument("pivot_form: K must be positive");
    if (!contains_all_ones(c))
        throw std::invalid_argument("pivot_form: code does not contain the all-ones word (" +
                                    c.label + ")");
    RrefResult rr = rref(c.gen);
    if (rr.rank != c.k) throw std::logic_error("pivot_form: generator lost rank");

    // Columns: the first K pivot columns form the identity block, the rest
    // keep their original order. In reduced echelon form the pivot columns
    // are unit vectors, so rows K..k-1 vanish on all of them.
    std::vector<size_t> perm(rr.pivots.begin(), rr.pivots.begin() + K);
    std::vector<bool> is_identity_col(c.n, false);
    for (size_t j : perm) is_identity_col[j] = true;
    for (size_t j = 0; j < c.n; ++j)
        if (!is_identity_col[j]) perm.push_back(j);

    const size_t Ncols = c.n - K;
    Mat h1(c.field(), K, Ncols);
    Mat h0(c.field(), c.k - K, Ncols);
    for (size_t i = 0; i < c.k; ++i)
        for (size_t j = 0; j < Ncols; ++j) {
            uint32_t v = rr.r.at(i, perm[K + j]);
            if (i < K)
                h1.set(i, j, v);
            else
                h0.set(i - K, j, v);
        }
    // Sanity: the identity block really is an identity over the permuted rref.
    for (size_t i = 0; i < c.k; ++i)
        for (size_t j = 0; j < K; ++j) {
            uint32_t expect = (i == j) ? 1u : 0u;
            if (rr.r.at(i, perm[j]) != expect)
                throw std::logic_error("pivot_form: pivot block is not the identity");
        }
    return PivotForm{std::move(h1), std::move(h0), std::move(perm)};
}

QuditCssCode build_css(const LinearCode& c, size_t K, uint64_t distance_cap) {
    if (!contains_all_ones(c))
        throw std::invalid_argument("build_css: hypothesis failed: all-ones word not in " + c.label);
    if (!has_mult_property(c, 2))
        throw std::invalid_argument("build_css: hypothesis failed: " + c.label +
                                    " does not satisfy the multiplication property");
    PivotForm pf = pivot_form(c, K);

    QuditCssCode q;
    q.N = c.n - K;
    q.K = K;
    q.h1 = std::move(pf.h1);
    q.h0 = std::move(pf.h0);
    q.col_perm = std::move(pf.col_perm);
    Mat stacked = vstack(q.h1, q.h0);
    if (rank(stacked) != c.k)
        throw std::logic_error("build_css: (H1; H0) rows are not independent");
    q.z_stab = nullspace(stacked);
    q.source = c.label;

    WeightResult d = min_distance(c, distance_cap);
    if (d.exact()) q.dx_bound = d.weight > K ? d.weight - K : 1;

    if (q.h0.rows() == 0) {
        // Degenerate shortening (K = k): the dual of the zero code is the
        // full space, distance 1.
        q.dz = WeightResult{WeightResult::Status::exact, 1, 0};
    } else {
        Mat dual_basis = nullspace(q.h0);
        q.dz = min_weight(dual_basis, distance_cap);
    }
    return q;
}

CosetView basis_state_coset(const QuditCssCode& q, std::span<const uint32_t> u,
                            uint64_t budget, uint64_t seed, uint64_t sample_count) {
    if (u.size() != q.K) throw std::invalid_argument("basis_state_coset: u must have length K");
    const Field& f = q.field();
    std::vector<uint32_t> base = q.K ? vec_mat(u, q.h1) : std::vector<uint32_t>(q.N, 0);

    const size_t rows = q.h0.rows();
    uint64_t size = 1;
    bool over = false;
    for (size_t i = 0; i < rows; ++i) {
        if (size > budget / f.q()) { over = true; break; }
        size *= f.q();
    }

    CosetView view;
    if (!over && size <= budget) {
        view.exhaustive = true;
        std::vector<uint32_t> coeff(rows, 0);
        for (uint64_t idx = 0; idx < size; ++idx) {
            uint64_t t = idx;
            for (size_t i = 0; i < rows; ++i) { coeff[i] = static_cast<uint32_t>(t % f.q()); t /= f.q(); }
            std::vector<uint32_t> word = base;
            for (size_t i = 0; i < rows; ++i) {
                if (coeff[i] == 0) continue;
                for (size_t j = 0; j < q.N; ++j)
                    word[j] = f.add(word[j], f.mul(coeff[i], q.h0.at(i, j)));
            }
            view.elements.push_back(std::move(word));
        }
    } else {
        view.exhaustive = false;
        SplitMix64 rng(seed);
        for (uint64_t s = 0; s < sample_count; ++s) {
            std::vector<uint32_t> word = base;
            for (size_t i = 0; i < rows; ++i) {
                uint32_t coeff = static_cast<uint32_t>(rng.below(f.q()));
                if (coeff == 0) continue;
                for (size_t j = 0; j < q.N; ++j)
                    word[j] = f.add(word[j], f.mul(coeff, q.h0.at(i, j)));
            }
            view.elements.push_back(std::move(word));
        }
    }
    return view;
}

LogicalPaulis logical_paulis(const QuditCssCode& q) {
    Mat stacked = vstack(q.h1, q.h0);
    const size_t k = stacked.rows();
    Mat z_reps(q.field(), q.K, q.N);
    for (size_t a = 0; a < q.K; ++a) {
        std::vector<uint32_t> e(k, 0);
        e[a] = 1;
        auto z = solve(stacked, e);
        if (!z) throw std::logic_error("logical_paulis: logical Z system is inconsistent");
        for (size_t j = 0; j < q.N; ++j) z_reps.set(a, j, (*z)[j]);
    }
    return LogicalPaulis{q.h1, std::move(z_reps)};
}

} // namespace starq
