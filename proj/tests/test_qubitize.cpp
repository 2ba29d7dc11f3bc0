#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "starq/errors.hpp"
#include "starq/qubitize.hpp"

using namespace starq;

namespace {

LinearCode repetition4_gf4() {
    Mat gen(Field::make(2), 1, 4);
    for (size_t j = 0; j < 4; ++j) gen.set(0, j, 1);
    return make_code(std::move(gen), "repetition n=4");
}

} // namespace

TEST_CASE("step1 shapes: [[7,1]]_4 -> [[14,2]] and [[14,2]]_16 -> [[56,8]]") {
    {
        QuditCssCode q0 = build_css(hermitian_code(2, 2), 1);
        SelfDualBasis sdb = find_self_dual_basis(q0.field());
        QubitCssCode q1 = step1(q0, sdb);
        CHECK(q1.N == 14);
        CHECK(q1.K == 2);
        check_qubit_css(q1);
    }
    {
        QuditCssCode q0 = build_css(rs_code(Field::make(4), 5), 2);
        SelfDualBasis sdb = find_self_dual_basis(q0.field());
        QubitCssCode q1 = step1(q0, sdb);
        CHECK(q1.N == 56);
        CHECK(q1.K == 8);
        check_qubit_css(q1);
    }
}

TEST_CASE("step2 with the trivial RMFE on GF(4): one stabilizer added per block") {
    QuditCssCode q0 = build_css(hermitian_code(2, 2), 1);
    SelfDualBasis sdb = find_self_dual_basis(q0.field());
    QubitCssCode q1 = step1(q0, sdb);
    Rmfe rmfe = rmfe_trivial(q0.field());
    QubitCssCode q2 = step2(q1, q0.K, rmfe, sdb);
    CHECK(q2.K == 1);
    CHECK(q2.N == 14);
    CHECK(q2.z_stab.rows() == q1.z_stab.rows() + 1);
    check_qubit_css(q2);
    // The added row is the combination of the block's two logical Zs: the
    // annihilator of span{B(1)} = span{(1,1)} is {(1,1)}.
    std::vector<uint32_t> expect(q1.N);
    for (size_t c = 0; c < q1.N; ++c)
        expect[c] = q1.logical_z.at(0, c) ^ q1.logical_z.at(1, c);
    for (size_t c = 0; c < q1.N; ++c)
        CHECK(q2.z_stab.at(q1.z_stab.rows(), c) == expect[c]);
}

TEST_CASE("step2 with a full-rank embedding adds no stabilizers") {
    // s = m test double: phi = psi = identity. (Not a valid degree-3 RMFE,
    // but step2 only uses the embedding's image.)
    QuditCssCode q0 = build_css(hermitian_code(2, 2), 1);
    SelfDualBasis sdb = find_self_dual_basis(q0.field());
    QubitCssCode q1 = step1(q0, sdb);
    Rmfe full;
    full.s = 2;
    full.m = 2;
    full.phi = Mat::identity(Field::make(1), 2);
    full.psi = Mat::identity(Field::make(1), 2);
    QubitCssCode q2 = step2(q1, q0.K, full, sdb);
    CHECK(q2.K == q1.K);
    CHECK(q2.z_stab.rows() == q1.z_stab.rows());
}

TEST_CASE("f_mask_from_rmfe: zero on 0, one on 1 for the trivial RMFE, F2-linear") {
    for (int m : {2, 4, 8}) {
        const Field& f = Field::make(m);
        Rmfe rmfe = rmfe_trivial(f);
        uint32_t mask = f_mask_from_rmfe(rmfe);
        FieldBasis poly = FieldBasis::polynomial(f);
        auto fval = [&](uint32_t a) { return __builtin_parity(mask & poly.expand(a)); };
        CHECK(fval(0) == 0);
        CHECK(fval(1) == 1);
        for (uint32_t a = 0; a < f.q(); ++a)
            for (uint32_t b = 0; b < f.q(); ++b)
                CHECK(fval(f.add(a, b)) == (fval(a) ^ fval(b)));
    }
}

TEST_CASE("run_pipeline: Hermitian(2,2) -> [[56,1]] with a 35-triple schedule") {
    PipelineResult pipe = run_pipeline(hermitian_code(2, 2), 1, RmfeMode::trivial());
    CHECK(pipe.params.n0 == 7);
    CHECK(pipe.params.k0 == 1);
    CHECK(pipe.params.m == 2);
    CHECK(pipe.params.s == 1);
    CHECK(pipe.params.r == 8);
    CHECK(pipe.params.n3 == 56);
    CHECK(pipe.params.k3 == 1);
    CHECK(pipe.q1.N == 14);
    CHECK(pipe.q1.K == 2);
    CHECK(pipe.q2.K == 1);
    CHECK(pipe.q3.N == 56);
    CHECK(pipe.q3.K == 1);
    // Triple count = N0 * weight(P).
    size_t weight_p = 0;
    for (uint8_t b : pipe.schedule.p_mask) weight_p += b;
    CHECK(pipe.schedule.triples.size() == pipe.params.n0 * weight_p);
    CHECK(pipe.schedule.triples.size() == 35);
    for (const auto& t : pipe.schedule.triples)
        for (size_t qubit : t.qubits) CHECK(qubit < pipe.params.n3);
    check_qubit_css(pipe.q3);
}

TEST_CASE("run_pipeline: RS(16,5) K=2 -> [[896,2]] and repetition -> [[24,1]]") {
    PipelineResult rs = run_pipeline(rs_code(Field::make(4), 5), 2, RmfeMode::trivial());
    CHECK(rs.params.m == 4);
    CHECK(rs.params.r == 64);
    CHECK(rs.q1.N == 56);
    CHECK(rs.q1.K == 8);
    CHECK(rs.q2.K == 2);
    CHECK(rs.q3.N == 896);
    CHECK(rs.q3.K == 2);

    PipelineResult rep = run_pipeline(repetition4_gf4(), 1, RmfeMode::trivial());
    CHECK(rep.q3.N == 24);
    CHECK(rep.q3.K == 1);
}

TEST_CASE("verify_pipeline: [[56,1]] passes exhaustively with 512 checks") {
    PipelineResult pipe = run_pipeline(hermitian_code(2, 2), 1, RmfeMode::trivial());
    PipelineVerifyResult r = verify_pipeline(pipe, VerifyMode::exhaustive());
    CHECK(r.pass);
    CHECK(r.checks == 512);
    PipelineVerifyResult serial = verify_pipeline_serial(pipe, VerifyMode::exhaustive());
    CHECK(serial.pass);
    CHECK(serial.checks == 512);
}

TEST_CASE("verify_pipeline: [[24,1]] smoke pipeline passes exhaustively") {
    PipelineResult pipe = run_pipeline(repetition4_gf4(), 1, RmfeMode::trivial());
    PipelineVerifyResult r = verify_pipeline(pipe, VerifyMode::exhaustive());
    CHECK(r.pass);
    CHECK(r.checks == 8); // 2^3 logical triples, trivial coset group
}

TEST_CASE("physical parity is invariant across coset representatives") {
    PipelineResult pipe = run_pipeline(hermitian_code(2, 2), 1, RmfeMode::trivial());
    // For each logical triple, all 64 coset choices give the same parity:
    // subsumed by the exhaustive pass, re-stated here by sampling the same
    // logical with different coset seeds.
    PipelineVerifyResult a = verify_pipeline(pipe, VerifyMode::sampled(2000, 3));
    PipelineVerifyResult b = verify_pipeline(pipe, VerifyMode::sampled(2000, 77));
    CHECK(a.pass);
    CHECK(b.pass);
}

TEST_CASE("a deleted schedule triple produces a counterexample") {
    PipelineResult pipe = run_pipeline(hermitian_code(2, 2), 1, RmfeMode::trivial());
    CczSchedule broken = pipe.schedule;
    // Drop a triple on the last register, where H1 and H0 are both nonzero so
    // the slot product is realizable. (On the degenerate register 0 the
    // contribution is identically zero and a deletion there is invisible to
    // every phase, as it should be.)
    broken.triples.pop_back();
    PipelineVerifyResult r =
        verify_pipeline_with_schedule(pipe, broken, VerifyMode::exhaustive());
    CHECK(!r.pass);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->physical != r.witness->logical);

    CczSchedule invisible = pipe.schedule;
    invisible.triples.erase(invisible.triples.begin() + 4); // register 0, slot (1,1,1)
    CHECK(verify_pipeline_with_schedule(pipe, invisible, VerifyMode::exhaustive()).pass);
}

TEST_CASE("a zero un-embedding test double gives an empty schedule") {
    QuditCssCode q0 = build_css(hermitian_code(2, 2), 1);
    SelfDualBasis sdb = find_self_dual_basis(q0.field());
    QubitCssCode q1 = step1(q0, sdb);
    Rmfe rmfe = rmfe_trivial(q0.field());
    QubitCssCode q2 = step2(q1, q0.K, rmfe, sdb);
    Rmfe zero_psi = rmfe;
    zero_psi.psi = Mat(Field::make(1), 1, 2); // f == 0
    auto [q3, schedule] = step3(q2, q0.N, mfe3(q0.field()), zero_psi, sdb);
    CHECK(schedule.triples.empty());
    for (uint8_t b : schedule.p_mask) CHECK(b == 0);
    check_qubit_css(q3);
}

TEST_CASE("q3_distance: exact values for the smoke and Hermitian pipelines") {
    PipelineResult rep = run_pipeline(repetition4_gf4(), 1, RmfeMode::trivial());
    CssDistances rep_d = q3_distance(rep);
    REQUIRE(rep_d.dx.exact);
    REQUIRE(rep_d.dz.exact);
    CHECK(rep_d.dx.value == 12); // the lone X logical has weight 4 per register
    CHECK(rep_d.dz.value == 1);
    REQUIRE(rep_d.d0_claim.has_value());
    CHECK(rep_d.dx.value >= *rep_d.d0_claim);
    CHECK(rep_d.dz.value >= *rep_d.d0_claim);

    PipelineResult herm = run_pipeline(hermitian_code(2, 2), 1, RmfeMode::trivial());
    CssDistances herm_d = q3_distance(herm);
    REQUIRE(herm_d.dx.exact);
    REQUIRE(herm_d.dz.exact);
    CHECK(herm_d.dx.value == 28);
    CHECK(herm_d.dz.value == 1); // register 0 carries H0's zero coordinate
    REQUIRE(herm_d.d0_claim.has_value());
    CHECK(*herm_d.d0_claim == 1);
    CHECK(herm_d.dx.value >= *herm_d.d0_claim);
    CHECK(herm_d.dz.value >= *herm_d.d0_claim);
}

TEST_CASE("pipeline budget handling") {
    PipelineResult pipe = run_pipeline(rs_code(Field::make(4), 5), 2, RmfeMode::trivial());
    // Exhaustive verification space is (2^1)^(3*2) * 16^9: over any sane budget.
    CHECK_THROWS_AS(verify_pipeline(pipe, VerifyMode::exhaustive(uint64_t(1) << 30)),
                    BudgetExceeded);
    // Sampled verification passes.
    PipelineVerifyResult r = verify_pipeline(pipe, VerifyMode::sampled(2000, 5));
    CHECK(r.pass);
}

TEST_CASE("run_pipeline with a searched RMFE (s=2, GF(16))") {
    PipelineResult pipe = run_pipeline(rs_code(Field::make(4), 5), 2, RmfeMode::search(2));
    CHECK(pipe.params.s == 2);
    CHECK(pipe.q3.K == 4); // K0 * s
    CHECK(pipe.q2.K == 4);
    PipelineVerifyResult r = verify_pipeline(pipe, VerifyMode::sampled(2000, 9));
    CHECK(r.pass);
}
