#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "starq/codes.hpp"

namespace starq {

/// Qudit CSS code built by pivoting a multiplication-property code into the
/// block form [[1_K, H1], [0, H0]] and taking CSS(rowspan(H1,H0),
/// rowspan(H0)^perp): X stabilizers are the rows of H0, Z stabilizers a basis
/// of rowspan(H1,H0)^perp, and the K logical Z basis states are the cosets
/// u*H1 + rowspan(H0).
struct QuditCssCode {
    size_t N = 0; // physical qudits, n - K
    size_t K = 0; // logical qudits
    Mat h1;       // K x N
    Mat h0;       // (k - K) x N
    Mat z_stab;   // nullspace basis of (H1; H0)
    std::vector<size_t> col_perm; // position -> original column of the source code
    std::optional<size_t> dx_bound; // dist(C) - K when the distance was computable
    WeightResult dz;                // exact dist(dual(rowspan(H0))) or exceeded
    std::string source;

    const Field& field() const { return h1.field(); }
    size_t classical_k() const { return K + h0.rows(); }
};

struct PivotForm {
    Mat h1;
    Mat h0;
    std::vector<size_t> col_perm;
};

/// Deterministic block decomposition [[1_K, H1], [0, H0]]: the identity block
/// sits on the first K pivot columns of the rref of gen. Requires the
/// all-ones word (the downstream phase identities silently break without it)
/// and K <= k.
PivotForm pivot_form(const LinearCode& c, size_t K);

/// Checks the multiplication property and the all-ones hypothesis, pivots,
/// and assembles the CSS code, including distance data within `distance_cap`.
QuditCssCode build_css(const LinearCode& c, size_t K, uint64_t distance_cap = kDefaultDistanceCap);

/// The coset { u*H1 + h : h in rowspan(H0) } that labels logical basis state
/// u. Either a full enumeration (size q^(k-K)) or, over budget, a seeded
/// sample of `sample_count` elements.
struct CosetView {
    bool exhaustive = true;
    std::vector<std::vector<uint32_t>> elements;
};

CosetView basis_state_coset(const QuditCssCode& q, std::span<const uint32_t> u,
                            uint64_t budget = uint64_t(1) << 20,
                            uint64_t seed = 0, uint64_t sample_count = 1024);

/// Representatives of the logical Pauli algebra: X-type rep for logical a is
/// row a of H1; Z-type rep z_a solves (H1; H0) z_a^T = e_a, so its field
/// inner product with u*H1 + h is exactly u_a.
struct LogicalPaulis {
    Mat x_reps; // == h1
    Mat z_reps; // K x N
};

LogicalPaulis logical_paulis(const QuditCssCode& q);

} // namespace starq
