#include "starq/kernels.hpp"

#include <algorithm>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace starq {

namespace {

// Odometer state for one contiguous block of messages. Messages are k-digit
// base-q numbers; digit j scales generator row j. The current codeword is
// updated incrementally: changing digit j from d to d' XORs the precomputed
// row (d ^ d') * row_j (char-2 addition).
struct Enumerator {
    const Mat* gen;
    size_t k, n;
    uint32_t q;
    std::vector<std::vector<uint32_t>> scaled; // scaled[j * q + d] = d * row_j
    std::vector<uint32_t> digits;
    std::vector<uint32_t> word;

    Enumerator(const Mat& g) : gen(&g), k(g.rows()), n(g.cols()), q(g.field().q()) {
        const Field& f = g.field();
        scaled.resize(k * q);
        for (size_t j = 0; j < k; ++j)
            for (uint32_t d = 0; d < q; ++d) {
                auto& row = scaled[j * q + d];
                row.resize(n);
                for (size_t c = 0; c < n; ++c) row[c] = f.mul(d, g.at(j, c));
            }
        digits.assign(k, 0);
        word.assign(n, 0);
    }

    void xor_scaled(size_t j, uint32_t delta) {
        const auto& row = scaled[j * q + delta];
        for (size_t c = 0; c < n; ++c) word[c] ^= row[c];
    }

    // Jump to message index idx (digit j = (idx / q^j) % q).
    void seek(uint64_t idx) {
        for (size_t j = 0; j < k; ++j) {
            uint32_t d = static_cast<uint32_t>(idx % q);
            idx /= q;
            if (d != digits[j]) {
                xor_scaled(j, digits[j] ^ d);
                digits[j] = d;
            }
        }
    }

    // Advance to the next message (base-q increment with carries).
    void step() {
        for (size_t j = 0; j < k; ++j) {
            uint32_t d = digits[j] + 1;
            if (d < q) {
                xor_scaled(j, digits[j] ^ d);
                digits[j] = d;
                return;
            }
            xor_scaled(j, digits[j] ^ 0u);
            digits[j] = 0;
        }
    }

    size_t weight() const {
        size_t w = 0;
        for (uint32_t v : word) w += v != 0;
        return w;
    }
};

// q^k - 1 as uint64, or nullopt on overflow.
std::optional<uint64_t> codeword_count(const Mat& gen) {
    uint64_t total = 1;
    for (size_t j = 0; j < gen.rows(); ++j) {
        if (total > std::numeric_limits<uint64_t>::max() / gen.field().q()) return std::nullopt;
        total *= gen.field().q();
    }
    return total - 1;
}

size_t min_weight_range(const Mat& gen, uint64_t begin, uint64_t end) {
    Enumerator e(gen);
    e.seek(begin);
    size_t best = gen.cols() + 1;
    for (uint64_t idx = begin; idx < end; ++idx) {
        if (idx != begin) e.step();
        if (idx == 0) continue; // zero codeword
        best = std::min(best, e.weight());
    }
    return best;
}

} // namespace

WeightResult min_weight_serial(const Mat& gen, uint64_t cap) {
    auto total = codeword_count(gen);
    if (!total || *total > cap) return WeightResult{WeightResult::Status::exceeded, 0, 0};
    if (gen.rows() == 0) return WeightResult{WeightResult::Status::exact, 0, 0};
    size_t best = min_weight_range(gen, 0, *total + 1);
    return WeightResult{WeightResult::Status::exact, best, *total};
}

WeightResult min_weight_parallel(const Mat& gen, uint64_t cap) {
    auto total = codeword_count(gen);
    if (!total || *total > cap) return WeightResult{WeightResult::Status::exceeded, 0, 0};
    if (gen.rows() == 0) return WeightResult{WeightResult::Status::exact, 0, 0};
#ifdef _OPENMP
    const uint64_t count = *total + 1;
    const int pieces = std::min<uint64_t>(count, 64);
    size_t best = gen.cols() + 1;
#pragma omp parallel for reduction(min : best) schedule(dynamic)
    for (int p = 0; p < pieces; ++p) {
        uint64_t begin = count * p / pieces;
        uint64_t end = count * (p + 1) / pieces;
        if (begin < end) best = std::min(best, min_weight_range(gen, begin, end));
    }
    return WeightResult{WeightResult::Status::exact, best, *total};
#else
    return min_weight_serial(gen, cap);
#endif
}

WeightResult min_weight(const Mat& gen, uint64_t cap) {
#ifdef _OPENMP
    return min_weight_parallel(gen, cap);
#else
    return min_weight_serial(gen, cap);
#endif
}

std::optional<uint64_t> first_failure_serial(uint64_t total,
                                             const std::function<bool(uint64_t)>& check) {
    for (uint64_t i = 0; i < total; ++i)
        if (!check(i)) return i;
    return std::nullopt;
}

std::optional<uint64_t> first_failure_parallel(uint64_t total,
                                               const std::function<bool(uint64_t)>& check) {
#ifdef _OPENMP
    uint64_t best = std::numeric_limits<uint64_t>::max();
#pragma omp parallel for reduction(min : best) schedule(dynamic, 256)
    for (uint64_t i = 0; i < total; ++i) {
        if (i < best && !check(i)) best = std::min(best, i);
    }
    if (best == std::numeric_limits<uint64_t>::max()) return std::nullopt;
    return best;
#else
    return first_failure_serial(total, check);
#endif
}

std::optional<uint64_t> first_failure(uint64_t total, const std::function<bool(uint64_t)>& check) {
#ifdef _OPENMP
    return first_failure_parallel(total, check);
#else
    return first_failure_serial(total, check);
#endif
}

uint64_t count_events_serial(uint64_t total, const std::function<bool(uint64_t)>& event) {
    uint64_t hits = 0;
    for (uint64_t i = 0; i < total; ++i) hits += event(i);
    return hits;
}

uint64_t count_events_parallel(uint64_t total, const std::function<bool(uint64_t)>& event) {
#ifdef _OPENMP
    uint64_t hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(dynamic, 64)
    for (uint64_t i = 0; i < total; ++i) hits += event(i);
    return hits;
#else
    return count_events_serial(total, event);
#endif
}

uint64_t count_events(uint64_t total, const std::function<bool(uint64_t)>& event) {
#ifdef _OPENMP
    return count_events_parallel(total, event);
#else
    return count_events_serial(total, event);
#endif
}

} // namespace starq
