#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "starq/errors.hpp"
#include "starq/prng.hpp"
#include "starq/transversal.hpp"

using namespace starq;

namespace {

QuditCssCode hermitian_css() { return build_css(hermitian_code(2, 2), 1); }

PhaseGateSpec x2y_spec(const Field& f) {
    return PhaseGateSpec(f, {Monomial{2, 1, 0, 1}}, trace_mask(f), FieldBasis::polynomial(f));
}

PhaseGateSpec mixed_low_degree_spec(const Field& f) {
    // xy + w*x + z: degree <= 2 terms only.
    return PhaseGateSpec(f, {Monomial{1, 1, 0, 1}, Monomial{1, 0, 0, 2}, Monomial{0, 0, 1, 1}},
                         trace_mask(f), FieldBasis::polynomial(f));
}

} // namespace

TEST_CASE("ccz_spec: GF(2) reduces to the qubit CCZ phase") {
    const Field& f2 = Field::make(1);
    PhaseGateSpec ccz = ccz_spec(f2);
    for (uint32_t x = 0; x < 2; ++x)
        for (uint32_t y = 0; y < 2; ++y)
            for (uint32_t z = 0; z < 2; ++z) CHECK(ccz.phase(x, y, z) == (x & y & z));
}

TEST_CASE("ccz_spec on GF(4): phase(w,w,w) = Tr(1) = 0; zero inputs kill the phase") {
    const Field& f = Field::make(2);
    PhaseGateSpec ccz = ccz_spec(f);
    CHECK(ccz.g(2, 2, 2) == 1); // w^3 = 1
    CHECK(ccz.phase(2, 2, 2) == 0);
    CHECK(ccz.phase(2, 3, 2) == 1); // Tr(w*w^2*w) = Tr(w) = 1
    for (uint32_t x = 0; x < 4; ++x)
        for (uint32_t y = 0; y < 4; ++y) {
            CHECK(ccz.phase(x, y, 0) == 0);
            CHECK(ccz.phase(0, x, y) == 0);
        }
}

TEST_CASE("PhaseGateSpec validation") {
    const Field& f = Field::make(2);
    CHECK_THROWS_AS(PhaseGateSpec(f, {Monomial{0, 0, 0, 1}}, 0, FieldBasis::polynomial(f)),
                    std::invalid_argument); // constant term
    CHECK_THROWS_AS(PhaseGateSpec(f, {Monomial{2, 1, 1, 1}}, 0, FieldBasis::polynomial(f)),
                    std::invalid_argument); // degree 4
    CHECK_THROWS_AS(PhaseGateSpec(f, {Monomial{1, 0, 0, 7}}, 0, FieldBasis::polynomial(f)),
                    std::invalid_argument); // coefficient out of range
}

TEST_CASE("physical_phase basics") {
    const Field& f2 = Field::make(1);
    PhaseGateSpec zero_gate(f2, {}, trace_mask(f2), FieldBasis::polynomial(f2));
    std::vector<uint32_t> a{1, 0, 1}, b{1, 1, 0}, c{1, 1, 1};
    CHECK(physical_phase(zero_gate, a, b, c) == 0);

    PhaseGateSpec ccz = ccz_spec(f2);
    std::vector<uint32_t> one{1};
    CHECK(physical_phase(ccz, one, one, one) == 1);
    std::vector<uint32_t> shorter{1, 0};
    CHECK_THROWS_AS(physical_phase(ccz, a, shorter, c), std::invalid_argument);
}

TEST_CASE("physical_phase matches a per-coordinate recount on coset words") {
    QuditCssCode q = hermitian_css();
    const Field& f = q.field();
    PhaseGateSpec ccz = ccz_spec(f);
    auto a = basis_state_coset(q, std::vector<uint32_t>{1}).elements[1];
    auto b = basis_state_coset(q, std::vector<uint32_t>{2}).elements[2];
    auto c = basis_state_coset(q, std::vector<uint32_t>{3}).elements[3];
    uint32_t recount = 0;
    for (size_t i = 0; i < q.N; ++i)
        recount ^= f.trace(f.mul(f.mul(a[i], b[i]), c[i]));
    CHECK(physical_phase(ccz, a, b, c) == recount);
}

TEST_CASE("phase is linear in the f mask") {
    const Field& f = Field::make(2);
    FieldBasis poly = FieldBasis::polynomial(f);
    std::vector<uint32_t> a{1, 2, 3, 1}, b{2, 2, 0, 3}, c{3, 1, 1, 1};
    for (uint32_t m1 = 0; m1 < 4; ++m1)
        for (uint32_t m2 = 0; m2 < 4; ++m2) {
            PhaseGateSpec g1(f, {Monomial{1, 1, 1, 1}}, m1, poly);
            PhaseGateSpec g2(f, {Monomial{1, 1, 1, 1}}, m2, poly);
            PhaseGateSpec gx(f, {Monomial{1, 1, 1, 1}}, m1 ^ m2, poly);
            CHECK(physical_phase(gx, a, b, c) ==
                  (physical_phase(g1, a, b, c) ^ physical_phase(g2, a, b, c)));
        }
}

TEST_CASE("verify_transversal: CCZ on [[7,1]] passes exhaustively (4096 checks)") {
    QuditCssCode q = hermitian_css();
    TransversalResult r = verify_transversal(q, ccz_spec(q.field()), VerifyMode::exhaustive());
    CHECK(r.pass);
    CHECK(r.checks == 4096);
    TransversalResult serial =
        verify_transversal_serial(q, ccz_spec(q.field()), VerifyMode::exhaustive());
    CHECK(serial.pass == r.pass);
    CHECK(serial.checks == r.checks);
}

TEST_CASE("verify_transversal: non-CCZ degree-3 and degree-<=2 gates also pass") {
    QuditCssCode q = hermitian_css();
    CHECK(verify_transversal(q, x2y_spec(q.field()), VerifyMode::exhaustive()).pass);
    CHECK(verify_transversal(q, mixed_low_degree_spec(q.field()), VerifyMode::exhaustive()).pass);
}

TEST_CASE("verify_transversal: sampled mode is deterministic in the seed") {
    QuditCssCode q = hermitian_css();
    TransversalResult a = verify_transversal(q, ccz_spec(q.field()), VerifyMode::sampled(3000, 11));
    TransversalResult b = verify_transversal(q, ccz_spec(q.field()), VerifyMode::sampled(3000, 11));
    CHECK(a.pass);
    CHECK(a.checks == b.checks);
}

TEST_CASE("verify_transversal: exhaustive mode respects the budget") {
    QuditCssCode q = hermitian_css();
    VerifyMode tiny = VerifyMode::exhaustive(/*budget=*/16);
    CHECK_THROWS_AS(verify_transversal(q, ccz_spec(q.field()), tiny), BudgetExceeded);
}

TEST_CASE("a mutated H0 entry that breaks the triple identity is caught with a witness") {
    QuditCssCode q = hermitian_css();
    q.h0.set(0, 1, q.field().add(q.h0.at(0, 1), 1)); // flip one entry
    TripleConditionReport report = check_triple_conditions(q.h1, q.h0);
    CHECK(!report.ok());
    CHECK(!report.eq3.empty());
    TransversalResult r = verify_transversal(q, ccz_spec(q.field()), VerifyMode::exhaustive());
    CHECK(!r.pass);
    REQUIRE(r.witness.has_value());
    // The witness is a genuine phase disagreement; re-evaluate both sides.
    PhaseGateSpec ccz = ccz_spec(q.field());
    CHECK(r.witness->physical == physical_phase(ccz, r.witness->h, r.witness->h1, r.witness->h2));
    CHECK(r.witness->logical == logical_phase(ccz, r.witness->u, r.witness->v, r.witness->w));
    CHECK(r.witness->physical != r.witness->logical);
}

TEST_CASE("soundness/completeness coupling under random single-entry mutations") {
    // The CCZ phase only sees the triple identity; a gate with monomials of
    // every degree (xyz + xy + x) sees all three identity families. Both
    // couplings are probed by mutation.
    const Field& f = Field::make(2);
    PhaseGateSpec all_degrees(f,
                              {Monomial{1, 1, 1, 1}, Monomial{1, 1, 0, 1}, Monomial{1, 0, 0, 1}},
                              trace_mask(f), FieldBasis::polynomial(f));
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 8; ++trial) {
        QuditCssCode q = hermitian_css();
        bool mutate_h1 = rng.below(2) == 0;
        Mat& target = mutate_h1 ? q.h1 : q.h0;
        size_t row = rng.below(target.rows());
        size_t col = rng.below(target.cols());
        uint32_t delta = 1 + static_cast<uint32_t>(rng.below(q.field().q() - 1));
        target.set(row, col, q.field().add(target.at(row, col), delta));

        TripleConditionReport report = check_triple_conditions(q.h1, q.h0);
        bool ccz_passes = verify_transversal(q, ccz_spec(f), VerifyMode::exhaustive()).pass;
        bool all_passes = verify_transversal(q, all_degrees, VerifyMode::exhaustive()).pass;
        CHECK(report.eq3.empty() == ccz_passes);
        CHECK(report.ok() == all_passes);
    }
}

TEST_CASE("check_triple_conditions hand cases") {
    const Field& f = Field::make(2);
    // H1 = all-ones 1x3, H0 empty: |r*r*r| = 1+1+1 = 1 in char 2.
    Mat h1(f, 1, 3);
    for (size_t j = 0; j < 3; ++j) h1.set(0, j, 1);
    Mat h0(f, 0, 3);
    CHECK(check_triple_conditions(h1, h0).ok());

    // A row without all-ones ancestry: |r_a| = 3w = w != 1.
    Mat bad(f, 1, 3);
    for (size_t j = 0; j < 3; ++j) bad.set(0, j, 2);
    TripleConditionReport report = check_triple_conditions(bad, h0);
    CHECK(!report.eq5.empty());
}
