#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "starq/linalg.hpp"

namespace starq {

/// Result of a minimum-weight enumeration. `exceeded` means the codeword
/// count was over budget and no answer is claimed.
struct WeightResult {
    enum class Status { exact, exceeded };
    Status status = Status::exceeded;
    size_t weight = 0;      // valid when exact
    uint64_t enumerated = 0; // codewords visited

    bool exact() const { return status == Status::exact; }
};

/// Minimum nonzero Hamming weight of the row space of `gen`, by enumerating
/// all q^k - 1 nonzero codewords with a q-ary odometer (one scaled-row XOR
/// per digit change). Returns exceeded if q^k - 1 > cap.
///
/// The two variants compute identical results; the serial one is the
/// reference implementation, the parallel one splits the message space on the
/// leading digit across OpenMP threads and min-reduces.
WeightResult min_weight_serial(const Mat& gen, uint64_t cap);
WeightResult min_weight_parallel(const Mat& gen, uint64_t cap);
WeightResult min_weight(const Mat& gen, uint64_t cap); // parallel when built with OpenMP

/// Smallest index in [0, total) for which `check` returns false, running the
/// sweep in parallel chunks; nullopt when every index passes. The parallel
/// variant returns the same index as the serial one (min-reduction).
std::optional<uint64_t> first_failure_serial(uint64_t total,
                                             const std::function<bool(uint64_t)>& check);
std::optional<uint64_t> first_failure_parallel(uint64_t total,
                                               const std::function<bool(uint64_t)>& check);
std::optional<uint64_t> first_failure(uint64_t total, const std::function<bool(uint64_t)>& check);

/// Number of indices in [0, total) for which `event` returns true.
/// Deterministic regardless of thread count (events depend only on the index).
uint64_t count_events_serial(uint64_t total, const std::function<bool(uint64_t)>& event);
uint64_t count_events_parallel(uint64_t total, const std::function<bool(uint64_t)>& event);
uint64_t count_events(uint64_t total, const std::function<bool(uint64_t)>& event);

} // namespace starq
