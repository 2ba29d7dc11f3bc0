#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "starq/kernels.hpp"
#include "starq/linalg.hpp"

namespace starq {

/// Classical linear code over GF(2^m), held as a full-row-rank generator
/// matrix. Construction canonicalizes nothing beyond checking the rank.
struct LinearCode {
    size_t n = 0;
    size_t k = 0;
    Mat gen;
    std::string label;

    const Field& field() const { return gen.field(); }
};

LinearCode make_code(Mat gen, std::string label);

/// Componentwise product over the field.
std::vector<uint32_t> star(const Field& f, std::span<const uint32_t> x, std::span<const uint32_t> y);

/// Generator of span{ c_1 * ... * c_t : c_i in C } for t >= 2, computed from
/// all t-fold products of generator rows (with repetition) followed by rref.
LinearCode star_power_code(const LinearCode& c, int t);

LinearCode dual(const LinearCode& c);

bool contains_all_ones(const LinearCode& c);

/// Report from the two independent multiplication-property routes:
/// subset_holds checks C^{*t} as a row space against the dual's row space;
/// tuple_holds checks sum_i g_{a_1,i}...g_{a_{t+1},i} = 0 over all generator
/// row (t+1)-tuples, reporting the first violation found.
struct MultPropertyReport {
    bool subset_holds = false;
    bool tuple_holds = false;
    std::optional<std::vector<size_t>> violating_tuple; // row indices, size t+1
    bool holds() const { return subset_holds && tuple_holds; }
    bool routes_agree() const { return subset_holds == tuple_holds; }
};

MultPropertyReport check_mult_property(const LinearCode& c, int t = 2);
bool has_mult_property(const LinearCode& c, int t = 2);

/// Exact minimum distance by full enumeration (see min_weight); exceeded if
/// q^k - 1 > cap. Default cap follows the library-wide 2^24 budget.
constexpr uint64_t kDefaultDistanceCap = uint64_t(1) << 24;
WeightResult min_distance(const LinearCode& c, uint64_t cap = kDefaultDistanceCap);

LinearCode puncture(const LinearCode& c, const std::vector<size_t>& cols);
LinearCode shorten(const LinearCode& c, const std::vector<size_t>& cols);

/// Full-length Reed-Solomon code: rows (a^j) for a running over all q field
/// elements in integer order, j = 0..k-1 (0^0 = 1). Distance n - k + 1.
LinearCode rs_code(const Field& f, size_t k);

/// One-point Hermitian code over GF(q0^2): evaluation of the monomials
/// { x^i y^j : i*q0 + j*(q0+1) <= s, 0 <= j <= q0-1 } at the q0^3 affine
/// points of y^q0 + y = x^(q0+1), points ordered lexicographically by
/// (x bits, y bits), monomials ordered by (j, i). Genus is q0(q0-1)/2.
LinearCode hermitian_code(uint32_t q0, uint32_t s);

uint32_t hermitian_genus(uint32_t q0);
/// Largest s with the multiplication property window 3s <= n + 2g - 2.
uint32_t hermitian_mult_window(uint32_t q0);
/// Largest k with the RS window 3k <= q + 1.
size_t rs_mult_window(const Field& f);

/// Parameter bounds for an evaluation code with the given genus and divisor
/// degree: dimension and distance of the code, its dual, and the dual of the
/// K-shortened code (all clamped below at 0 where the formula goes negative).
struct AgParams {
    size_t n = 0;
    uint32_t genus = 0;
    uint32_t deg_g = 0;
    size_t k_bound = 0;       // deg_g + 1 - genus (exact when 2g-1 <= deg_g < n)
    bool k_exact = false;
    size_t d_bound = 0;       // n - deg_g
    size_t dual_k = 0;        // n + genus - 1 - deg_g (when 2g-1 <= deg_g < n)
    size_t dual_d_bound = 0;  // deg_g + 2 - 2 genus
    size_t shortened_dual_d_bound(size_t K) const; // deg_g - K + 2 - 2 genus
};

AgParams ag_param_bounds(size_t n, uint32_t genus, uint32_t deg_g);

/// Code file = matrix file plus a "# label: ..." comment line.
void write_code(std::ostream& out, const LinearCode& c);
LinearCode read_code(std::istream& in);

} // namespace starq
