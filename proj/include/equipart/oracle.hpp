#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "equipart/solver.hpp"

namespace equipart {

struct OracleResult {
    OrderedTuple t_star;        // components on the grid {k/(grid_m-1)}
    double residual_star = 0.0; // +inf when every candidate is degenerate
    int grid_m = 0;
    std::uint64_t evaluated_count = 0;
    bool all_degenerate = false;
};

struct budget_exceeded : std::runtime_error {
    std::uint64_t required;
    explicit budget_exceeded(std::uint64_t n);
};

struct OracleOptions {
    std::uint64_t budget = 100'000'000;
    int threads = 0;  // 0 = OpenMP default
};

// Number of nondecreasing (N-1)-tuples on an m-point grid:
// C(m+N-2, N-1). Saturates at uint64 max.
std::uint64_t oracle_tuple_count(int grid_m, std::size_t n_chords);

// Exhaustive minimization of the residual over all nondecreasing tuples on
// the uniform grid. Deliberately dumb: no pruning, lexicographic tie-break.
// Degenerate candidates count as +inf unless every candidate is degenerate,
// in which case the lexicographically smallest tuple is reported with
// all_degenerate set. Parallel over the first coordinate; the reduction by
// (residual, tuple) order is schedule-independent.
OracleResult brute_force_min_residual(const ChordEvaluator& ev, std::size_t n_chords,
                                      const Weights& w, int grid_m,
                                      const OracleOptions& opts = {});

// Serial reference enumerator, kept for testing and benchmarking against the
// parallel kernel. Same contract, same results.
OracleResult brute_force_min_residual_serial(const ChordEvaluator& ev,
                                             std::size_t n_chords, const Weights& w,
                                             int grid_m,
                                             const OracleOptions& opts = {});

// Runs the oracle on a nested grid sequence (each m_{k+1} = 2*m_k - 1, so
// every coarse grid point survives refinement and the residual sequence is
// non-increasing by construction).
std::vector<OracleResult> nested_refine(const ChordEvaluator& ev, std::size_t n_chords,
                                        const Weights& w,
                                        const std::vector<int>& m_sequence,
                                        const OracleOptions& opts = {});

}  // namespace equipart
