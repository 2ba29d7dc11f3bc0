// Benchmark comparing the serial reference kernels with their OpenMP
// counterparts on representative workloads. Both variants must agree on the
// answer; the table reports wall times and speedup.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "starq/codes.hpp"
#include "starq/embed.hpp"
#include "starq/kernels.hpp"
#include "starq/msd.hpp"
#include "starq/qubitize.hpp"
#include "starq/transversal.hpp"

using namespace starq;

namespace {

double seconds(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel, bool agree) {
    std::printf("%-34s %10.3fs %10.3fs %8.2fx   %s\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0, agree ? "match" : "MISMATCH");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP: %d threads\n", omp_get_max_threads());
#else
    std::printf("OpenMP: disabled (serial fallbacks)\n");
#endif
    std::printf("%-34s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        LinearCode rs = rs_code(Field::make(4), 5); // 16^5 - 1 codewords
        WeightResult a, b;
        double ts = seconds([&] { a = min_weight_serial(rs.gen, uint64_t(1) << 24); });
        double tp = seconds([&] { b = min_weight_parallel(rs.gen, uint64_t(1) << 24); });
        row("min_weight rs(16,5) q-ary", ts, tp, a.exact() && b.exact() && a.weight == b.weight);
    }
    {
        LinearCode rs = rs_code(Field::make(4), 5);
        SelfDualBasis sdb = find_self_dual_basis(Field::make(4));
        LinearCode binary = expand_code(rs, sdb.basis); // [64, 20] binary
        WeightResult a, b;
        double ts = seconds([&] { a = min_weight_serial(binary.gen, uint64_t(1) << 24); });
        double tp = seconds([&] { b = min_weight_parallel(binary.gen, uint64_t(1) << 24); });
        row("min_weight B(rs(16,5)) binary", ts, tp,
            a.exact() && b.exact() && a.weight == b.weight);
    }
    {
        LinearCode herm = hermitian_code(2, 2);
        QuditCssCode q = build_css(herm, 1);
        PhaseGateSpec ccz = ccz_spec(herm.field());
        VerifyMode mode = VerifyMode::sampled(200000, 17);
        TransversalResult a, b;
        double ts = seconds([&] { a = verify_transversal_serial(q, ccz, mode); });
        double tp = seconds([&] { b = verify_transversal(q, ccz, mode); });
        row("verify_transversal [[7,1]] x2e5", ts, tp, a.pass == b.pass);
    }
    {
        LinearCode herm = hermitian_code(2, 2);
        PipelineResult pipe = run_pipeline(herm, 1, RmfeMode::trivial());
        VerifyMode mode = VerifyMode::sampled(100000, 23);
        PipelineVerifyResult a, b;
        double ts = seconds([&] { a = verify_pipeline_serial(pipe, mode); });
        double tp = seconds([&] { b = verify_pipeline(pipe, mode); });
        row("verify_pipeline [[56,1]] x1e5", ts, tp, a.pass == b.pass);
    }
    {
        Mat gen(Field::make(2), 1, 4); // repetition [4,1] over GF(4)
        for (size_t j = 0; j < 4; ++j) gen.set(0, j, 1);
        LinearCode rep = make_code(std::move(gen), "repetition n=4");
        PipelineResult pipe = run_pipeline(rep, 1, RmfeMode::trivial());
        msd::SimResult a, b;
        double ts = seconds([&] { a = msd::simulate_serial(pipe.q3, 0.01, 40000, 7); });
        double tp = seconds([&] { b = msd::simulate(pipe.q3, 0.01, 40000, 7); });
        row("msd simulate [[24,1]] 4e4", ts, tp, a.failures == b.failures);
    }
    return 0;
}
