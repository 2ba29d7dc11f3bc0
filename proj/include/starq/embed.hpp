#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "starq/codes.hpp"
#include "starq/css.hpp"
#include "starq/qubit_css.hpp"

namespace starq {

/// Basis {a_1,...,a_m} with Tr(a_i a_j) = delta_ij. Under such a basis,
/// binary expansion commutes with duality and preserves Pauli commutation.
struct SelfDualBasis {
    FieldBasis basis;
    const Field& field() const { return basis.field(); }
};

/// Deterministic construction by congruence reduction of the trace Gram
/// matrix of the polynomial basis (least-index pivots; residual hyperbolic
/// pairs are absorbed three-at-a-time against an orthonormal vector).
/// The result is verified exhaustively; failure is a hard error.
SelfDualBasis find_self_dual_basis(const Field& f);

/// Binary expansion of a code over GF(2^m): generator rows are the bit
/// expansions of (basis element) * (generator row) for all pairs, coordinate
/// c of the field code occupying binary columns [c*m, (c+1)*m). The result
/// has dimension m*k.
LinearCode expand_code(const LinearCode& c, const FieldBasis& basis);

/// Expansion of a single field vector into n*m bits (as a GF(2) row).
std::vector<uint32_t> expand_vector(const FieldBasis& basis, std::span<const uint32_t> v);

/// Qudit-to-qubit CSS conversion under a self-dual basis: stabilizer matrices
/// are the binary expansions of the qudit ones; logical qubit (i, j)
/// [block i, slot j] is row i*m + j of the logical matrices, with X rep
/// B(a_j * h1_i) and Z rep B(a_j * z_i).
QubitCssCode qubitize_css(const QuditCssCode& q, const SelfDualBasis& sdb);

/// Degree-3 multiplication-friendly embedding of GF(2^m) into GF(2)^r with
/// r = m^3: sigma replicates polynomial coordinate i across all slots
/// (i,(j,k)); the slot products sigma(x)[t] * sigma(y)[pi2[t]] *
/// sigma(z)[pi3[t]] recover x_i y_j z_k at t = (i,(j,k)); psi sums
/// alpha^(i+j+k) against the slot values. Maps act on polynomial coordinates.
struct Mfe {
    int m = 0;
    size_t r = 0;
    Mat sigma;               // r x m over GF(2)
    std::vector<size_t> pi2; // slot partner in the second operand
    std::vector<size_t> pi3; // slot partner in the third operand
    Mat psi;                 // m x r over GF(2)
};

Mfe mfe3(const Field& f);

struct MfeCheckMode {
    bool exhaustive = true;
    uint64_t trials = 100000;
    uint64_t seed = 0;
    /// Exhaustive for m <= 3, sampled above.
    static MfeCheckMode auto_for(const Field& f, uint64_t seed = 0);
};

struct MfeWitness {
    uint32_t x, y, z;
    uint32_t expected, got;
};

std::optional<MfeWitness> mfe_verify(const Mfe& mfe, const Field& f, const MfeCheckMode& mode);

/// Degree-3 reverse multiplication-friendly embedding: phi embeds bit vectors
/// into the field, psi brings field products back to componentwise bit
/// products. Both matrices act on polynomial coordinates.
struct Rmfe {
    int s = 0;
    int m = 0;
    Mat phi; // m x s over GF(2), injective
    Mat psi; // s x m over GF(2), surjective
};

Rmfe rmfe_trivial(const Field& f);

/// Exhaustive degree-3 identity check over all 2^(3s) bit-vector triples.
std::optional<MfeWitness> rmfe_check(const Rmfe& rmfe, const Field& f);

/// Searches injective phi matrices (lexicographic index order when the space
/// fits in `budget`, seeded samples otherwise); for each candidate the
/// un-embedding psi is solved for as a linear system. A returned embedding
/// always passes rmfe_check. not-found (nullopt) makes no existence claim.
std::optional<Rmfe> rmfe_search(int s, const Field& f, uint64_t seed, uint64_t budget);

/// JSON serialization of the embeddings: GF(2) matrices as lists of hex row
/// strings (bit j of a row is bit j of the hex value), permutations as index
/// arrays.
std::string mfe_to_json(const Mfe& mfe);
Mfe mfe_from_json(const std::string& text);
std::string rmfe_to_json(const Rmfe& rmfe);
Rmfe rmfe_from_json(const std::string& text);

} // namespace starq
