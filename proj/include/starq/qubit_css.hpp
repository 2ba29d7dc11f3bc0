#pragma once

#include <string>

#include "starq/linalg.hpp"

namespace starq {

/// Binary CSS code in symplectic (X/Z stabilizer matrix) form, with explicit
/// logical representatives. All matrices are over GF(2) and satisfy
/// x_stab * z_stab^T = 0 and K = N - rank(x_stab) - rank(z_stab).
struct QubitCssCode {
    size_t N = 0;
    size_t K = 0;
    Mat x_stab;    // rank rows, X-type generators
    Mat z_stab;    // rank rows, Z-type generators
    Mat logical_x; // K x N
    Mat logical_z; // K x N, pairing <logical_z[a], logical_x[b]> = delta_ab
    std::string lineage;
};

/// Throws std::logic_error if the CSS invariants fail (orthogonality, rank
/// accounting, logical pairing). Used as a postcondition check by every
/// pipeline step.
void check_qubit_css(const QubitCssCode& code);

} // namespace starq
