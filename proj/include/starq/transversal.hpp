#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "starq/css.hpp"
#include "starq/field.hpp"

namespace starq {

/// Monomial coeff * x^ex * y^ey * z^ez with 1 <= ex+ey+ez <= 3.
struct Monomial {
    int ex = 0, ey = 0, ez = 0;
    uint32_t coeff = 0;
    int degree() const { return ex + ey + ez; }
};

/// A diagonal 3-qudit phase gate: phase (-1)^(f(g(x,y,z))) with g a polynomial
/// of total degree at most 3 and f a GF(2)-linear functional, stored as a bit
/// mask against a stated basis: f(a) = parity(f_mask & basis.expand(a)).
class PhaseGateSpec {
  public:
    PhaseGateSpec(const Field& f, std::vector<Monomial> monomials, uint32_t f_mask,
                  FieldBasis f_basis);

    const Field& field() const { return *field_; }
    const std::vector<Monomial>& monomials() const { return monomials_; }
    uint32_t f_mask() const { return f_mask_; }
    const FieldBasis& f_basis() const { return f_basis_; }

    uint32_t g(uint32_t x, uint32_t y, uint32_t z) const;
    uint32_t f(uint32_t a) const; // 0 or 1
    uint32_t phase(uint32_t x, uint32_t y, uint32_t z) const { return f(g(x, y, z)); }

  private:
    const Field* field_;
    std::vector<Monomial> monomials_;
    uint32_t f_mask_;
    FieldBasis f_basis_;
};

/// g = xyz, f = Tr: the qudit CCZ phase. For m = 1 this is the qubit CCZ.
PhaseGateSpec ccz_spec(const Field& f);

/// f-mask (polynomial basis) realizing the trace functional.
uint32_t trace_mask(const Field& f);

/// sum_i f(g(a_i, b_i, c_i)) mod 2 on physical coordinates.
uint32_t physical_phase(const PhaseGateSpec& spec, std::span<const uint32_t> a,
                        std::span<const uint32_t> b, std::span<const uint32_t> c);
/// Same functional form on logical coordinates.
uint32_t logical_phase(const PhaseGateSpec& spec, std::span<const uint32_t> u,
                       std::span<const uint32_t> v, std::span<const uint32_t> w);

struct VerifyMode {
    enum class Kind { exhaustive, sampled };
    Kind kind = Kind::exhaustive;
    uint64_t trials = 100000; // sampled mode
    uint64_t seed = 0;
    uint64_t budget = uint64_t(1) << 26; // exhaustive mode

    static VerifyMode exhaustive(uint64_t budget = uint64_t(1) << 26) {
        return VerifyMode{Kind::exhaustive, 0, 0, budget};
    }
    static VerifyMode sampled(uint64_t trials, uint64_t seed) {
        return VerifyMode{Kind::sampled, trials, seed, 0};
    }
};

/// Counterexample to transversality: a logical triple plus coset elements
/// whose physical phase disagrees with the logical phase.
struct TransversalWitness {
    std::vector<uint32_t> u, v, w;    // logical, length K
    std::vector<uint32_t> h, h1, h2;  // coset elements, length N
    uint32_t physical = 0, logical = 0;
};

struct TransversalResult {
    bool pass = false;
    uint64_t checks = 0;
    std::optional<TransversalWitness> witness;
};

/// Checks physical_phase(spec, uH1+h, vH1+h', wH1+h'') == logical_phase(u,v,w)
/// over all (exhaustive) or seeded-sampled logical triples and coset choices.
/// Exhaustive mode throws BudgetExceeded if q^(3k) is over budget.
TransversalResult verify_transversal(const QuditCssCode& q, const PhaseGateSpec& spec,
                                     const VerifyMode& mode);
TransversalResult verify_transversal_serial(const QuditCssCode& q, const PhaseGateSpec& spec,
                                            const VerifyMode& mode);

/// Structured report on the three row-product identities behind the
/// construction: for rows r of (H1; H0),
///   eq3: |r_a * r_b * r_c| = 1 iff a = b = c indexes an H1 row,
///   eq4: |r_a * r_b| = 1 iff a = b indexes an H1 row,
///   eq5: |r_a| = 1 iff a indexes an H1 row.
struct TripleConditionReport {
    struct Eq3Violation { size_t a, b, c; uint32_t value; };
    struct Eq4Violation { size_t a, b; uint32_t value; };
    struct Eq5Violation { size_t a; uint32_t value; };
    std::vector<Eq3Violation> eq3;
    std::vector<Eq4Violation> eq4;
    std::vector<Eq5Violation> eq5;
    bool ok() const { return eq3.empty() && eq4.empty() && eq5.empty(); }
};

TripleConditionReport check_triple_conditions(const Mat& h1, const Mat& h0);

} // namespace starq
