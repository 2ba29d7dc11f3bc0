#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "starq/embed.hpp"
#include "starq/prng.hpp"

using namespace starq;

namespace {

uint32_t apply_rows(const Mat& m, uint32_t bits) {
    uint32_t out = 0;
    for (size_t i = 0; i < m.rows(); ++i) {
        uint32_t acc = 0;
        for (size_t j = 0; j < m.cols(); ++j) acc ^= m.at(i, j) & (bits >> j & 1);
        out |= acc << i;
    }
    return out;
}

} // namespace

TEST_CASE("self-dual basis: trace Gram matrix is the identity, m in {1,2,4,8,16}") {
    for (int m : {1, 2, 4, 8, 16}) {
        const Field& f = Field::make(m);
        SelfDualBasis sdb = find_self_dual_basis(f);
        CHECK(sdb.basis.kind() == BasisKind::self_dual);
        const auto& elems = sdb.basis.elements();
        REQUIRE(elems.size() == static_cast<size_t>(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                CHECK(f.trace(f.mul(elems[i], elems[j])) == (i == j ? 1u : 0u));
    }
}

TEST_CASE("self-dual basis of GF(4) is {w, w^2}") {
    SelfDualBasis sdb = find_self_dual_basis(Field::make(2));
    CHECK(sdb.basis.elements() == std::vector<uint32_t>{2, 3});
    // Tr on GF(2) is the identity, so {1} is self-dual for m = 1.
    CHECK(find_self_dual_basis(Field::make(1)).basis.elements() == std::vector<uint32_t>{1});
}

TEST_CASE("expand_code: repetition [4,1] over GF(4) becomes a binary [8,2]") {
    Mat gen(Field::make(2), 1, 4);
    for (size_t j = 0; j < 4; ++j) gen.set(0, j, 1);
    LinearCode rep = make_code(std::move(gen), "repetition n=4");
    SelfDualBasis sdb = find_self_dual_basis(rep.field());
    LinearCode binary = expand_code(rep, sdb.basis);
    CHECK(binary.n == 8);
    CHECK(binary.k == 2);
    CHECK(binary.field().degree() == 1);
}

TEST_CASE("duality commutes with expansion: B(dual(C)) = dual(B(C))") {
    SelfDualBasis sdb2 = find_self_dual_basis(Field::make(2));
    SelfDualBasis sdb4 = find_self_dual_basis(Field::make(4));
    struct Case {
        LinearCode code;
        const SelfDualBasis* sdb;
    };
    std::vector<Case> cases;
    cases.push_back({hermitian_code(2, 2), &sdb2});
    cases.push_back({hermitian_code(2, 3), &sdb2});
    cases.push_back({rs_code(Field::make(2), 2), &sdb2});
    cases.push_back({rs_code(Field::make(4), 5), &sdb4});
    cases.push_back({rs_code(Field::make(4), 11), &sdb4});
    for (const auto& c : cases) {
        LinearCode lhs = expand_code(dual(c.code), c.sdb->basis);
        LinearCode rhs = dual(expand_code(c.code, c.sdb->basis));
        CHECK(lhs.k == rhs.k);
        CHECK(same_rowspace(lhs.gen, rhs.gen));
    }
}

TEST_CASE("expansion does not decrease distance on brute-forceable instances") {
    SelfDualBasis sdb2 = find_self_dual_basis(Field::make(2));
    SelfDualBasis sdb4 = find_self_dual_basis(Field::make(4));
    struct Case {
        LinearCode code;
        const SelfDualBasis* sdb;
    };
    std::vector<Case> cases;
    {
        Mat gen(Field::make(2), 1, 4);
        for (size_t j = 0; j < 4; ++j) gen.set(0, j, 1);
        cases.push_back({make_code(std::move(gen), "repetition n=4"), &sdb2});
    }
    cases.push_back({hermitian_code(2, 2), &sdb2});
    cases.push_back({hermitian_code(2, 6), &sdb2});
    cases.push_back({rs_code(Field::make(2), 2), &sdb2});
    cases.push_back({rs_code(Field::make(4), 2), &sdb4});
    for (const auto& c : cases) {
        WeightResult base = min_distance(c.code);
        WeightResult expanded = min_distance(expand_code(c.code, c.sdb->basis));
        REQUIRE(base.exact());
        REQUIRE(expanded.exact());
        CHECK(expanded.weight >= base.weight);
    }
}

TEST_CASE("commutation pairing: parity(B(u).B(v)) = Tr(uv), exhaustive on GF(16)") {
    const Field& f = Field::make(4);
    SelfDualBasis sdb = find_self_dual_basis(f);
    for (uint32_t u = 0; u < f.q(); ++u)
        for (uint32_t v = 0; v < f.q(); ++v) {
            uint32_t pairing = __builtin_parity(sdb.basis.expand(u) & sdb.basis.expand(v));
            CHECK(pairing == f.trace(f.mul(u, v)));
        }
}

TEST_CASE("qubitize_css: [[7,1]] -> [[14,2]] and [[3,1]] -> [[6,2]]") {
    SelfDualBasis sdb = find_self_dual_basis(Field::make(2));
    QubitCssCode q14 = qubitize_css(build_css(hermitian_code(2, 2), 1), sdb);
    CHECK(q14.N == 14);
    CHECK(q14.K == 2);
    check_qubit_css(q14); // throws on any invariant failure

    Mat gen(Field::make(2), 1, 4);
    for (size_t j = 0; j < 4; ++j) gen.set(0, j, 1);
    QubitCssCode q6 = qubitize_css(build_css(make_code(std::move(gen), "rep"), 1), sdb);
    CHECK(q6.N == 6);
    CHECK(q6.K == 2);
}

TEST_CASE("mfe3(2): slot bookkeeping on the worked example x = y = z = w") {
    const Field& f = Field::make(2);
    Mfe mfe = mfe3(f);
    CHECK(mfe.r == 8);
    // sigma(w): polynomial coords (0,1), so exactly the group-1 slots are set.
    uint32_t w = 2;
    std::vector<uint8_t> sw(mfe.r);
    for (size_t t = 0; t < mfe.r; ++t) {
        uint32_t acc = 0;
        for (int j = 0; j < mfe.m; ++j) acc ^= mfe.sigma.at(t, j) & (w >> j & 1);
        sw[t] = static_cast<uint8_t>(acc);
    }
    int contributing = 0;
    uint32_t psi_sum = 0;
    for (size_t t = 0; t < mfe.r; ++t) {
        uint8_t prod = sw[t] & sw[mfe.pi2[t]] & sw[mfe.pi3[t]];
        if (prod) {
            ++contributing;
            for (int bit = 0; bit < mfe.m; ++bit) psi_sum ^= mfe.psi.at(bit, t) << bit;
        }
    }
    CHECK(contributing == 1); // only slot (1,(1,1))
    CHECK(psi_sum == 1);      // alpha^3 = 1 = w * w * w
}

TEST_CASE("mfe3 identities: exhaustive for m <= 3, sampled for m = 4") {
    for (int m : {1, 2, 3}) {
        const Field& f = Field::make(m);
        CHECK(!mfe_verify(mfe3(f), f, MfeCheckMode::auto_for(f)).has_value());
    }
    const Field& f16 = Field::make(4);
    MfeCheckMode mode = MfeCheckMode::auto_for(f16, /*seed=*/9);
    CHECK(!mode.exhaustive);
    CHECK(!mfe_verify(mfe3(f16), f16, mode).has_value());
}

TEST_CASE("mfe respects the identity element") {
    const Field& f = Field::make(2);
    Mfe mfe = mfe3(f);
    // x = y = 1: psi(sigma(1) * pi2(sigma(1)) * pi3(sigma(z))) = z for all z.
    for (uint32_t z = 0; z < 4; ++z) {
        std::vector<uint8_t> s1(mfe.r), sz(mfe.r);
        for (size_t t = 0; t < mfe.r; ++t) {
            uint32_t a1 = 0, az = 0;
            for (int j = 0; j < mfe.m; ++j) {
                a1 ^= mfe.sigma.at(t, j) & (1u >> j & 1);
                az ^= mfe.sigma.at(t, j) & (z >> j & 1);
            }
            s1[t] = static_cast<uint8_t>(a1);
            sz[t] = static_cast<uint8_t>(az);
        }
        uint32_t out = 0;
        for (size_t t = 0; t < mfe.r; ++t)
            if (s1[t] & s1[mfe.pi2[t]] & sz[mfe.pi3[t]])
                for (int bit = 0; bit < mfe.m; ++bit) out ^= mfe.psi.at(bit, t) << bit;
        CHECK(out == z);
    }
}

TEST_CASE("a permutation-tampered MFE fails verification") {
    const Field& f = Field::make(2);
    Mfe mfe = mfe3(f);
    std::swap(mfe.pi2[1], mfe.pi2[6]);
    auto witness = mfe_verify(mfe, f, MfeCheckMode::auto_for(f));
    REQUIRE(witness.has_value());
    CHECK(witness->expected != witness->got);
}

TEST_CASE("rmfe_trivial: identity over all bit triples for m in {2,4,8}") {
    for (int m : {2, 4, 8}) {
        const Field& f = Field::make(m);
        Rmfe rmfe = rmfe_trivial(f);
        CHECK(rmfe.s == 1);
        CHECK(!rmfe_check(rmfe, f).has_value());
        // phi(1) = the field element 1; psi picks the unit coefficient.
        CHECK(apply_rows(rmfe.phi, 1) == 1);
        CHECK(apply_rows(rmfe.psi, 1) == 1);
    }
}

TEST_CASE("rmfe_search: s=1 finds the trivial embedding immediately") {
    for (int m : {2, 3, 4}) {
        auto found = rmfe_search(1, Field::make(m), 0, 1 << 10);
        REQUIRE(found.has_value());
        CHECK(!rmfe_check(*found, Field::make(m)).has_value());
    }
}

TEST_CASE("rmfe_search: smallest m for s=2 is 4 (regression constant)") {
    CHECK(!rmfe_search(2, Field::make(2), 0, uint64_t(1) << 20).has_value());
    CHECK(!rmfe_search(2, Field::make(3), 0, uint64_t(1) << 20).has_value());
    auto found = rmfe_search(2, Field::make(4), 0, uint64_t(1) << 20);
    REQUIRE(found.has_value());
    CHECK(found->s == 2);
    CHECK(found->m == 4);
    CHECK(!rmfe_check(*found, Field::make(4)).has_value());
    // Deterministic lex-first candidate.
    CHECK(apply_rows(found->phi, 1) == 0x2);
    CHECK(apply_rows(found->phi, 2) == 0x1);

    // Search is reproducible.
    auto again = rmfe_search(2, Field::make(4), 0, uint64_t(1) << 20);
    REQUIRE(again.has_value());
    CHECK(again->phi == found->phi);
    CHECK(again->psi == found->psi);
}

TEST_CASE("a tampered RMFE candidate fails the exhaustive check") {
    const Field& f = Field::make(4);
    auto found = rmfe_search(2, f, 0, uint64_t(1) << 20);
    REQUIRE(found.has_value());
    Rmfe bad = *found;
    bad.psi.set(0, 2, bad.psi.at(0, 2) ^ 1);
    CHECK(rmfe_check(bad, f).has_value());
}

TEST_CASE("embedding JSON round-trips") {
    const Field& f = Field::make(2);
    Mfe mfe = mfe3(f);
    Mfe back = mfe_from_json(mfe_to_json(mfe));
    CHECK(back.m == mfe.m);
    CHECK(back.r == mfe.r);
    CHECK(back.sigma == mfe.sigma);
    CHECK(back.psi == mfe.psi);
    CHECK(back.pi2 == mfe.pi2);
    CHECK(back.pi3 == mfe.pi3);
    CHECK(!mfe_verify(back, f, MfeCheckMode::auto_for(f)).has_value());

    auto rmfe = rmfe_search(2, Field::make(4), 0, uint64_t(1) << 20);
    REQUIRE(rmfe.has_value());
    Rmfe rback = rmfe_from_json(rmfe_to_json(*rmfe));
    CHECK(rback.phi == rmfe->phi);
    CHECK(rback.psi == rmfe->psi);
    CHECK(!rmfe_check(rback, Field::make(4)).has_value());
}

TEST_CASE("rmfe_search guards its parameter window") {
    CHECK_THROWS_AS(rmfe_search(5, Field::make(4), 0, 100), std::invalid_argument);
    CHECK(!rmfe_search(3, Field::make(2), 0, 100).has_value()); // s > m: no injective phi
}
