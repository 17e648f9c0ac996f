#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "equipart/geometry.hpp"
#include "equipart/simplex.hpp"

namespace equipart {

// Positive chord weights summing to 1 (within 1e-12).
struct Weights {
    std::vector<double> alpha;

    explicit Weights(std::vector<double> values);
    static Weights uniform(std::size_t n);
    // Accepts unnormalized positive ratios and rescales to sum 1.
    static Weights normalized(std::vector<double> raw);

    std::size_t size() const { return alpha.size(); }
};

struct Partition {
    std::vector<double> t;       // N+1 entries, t.front()=0, t.back()=1
    std::vector<double> chords;  // N entries, consistent with t
};

enum class Method { MarchingBisection, ProjectionIteration, GridRefine };
enum class Status { Converged, DegenerateZeroChain, MaxIterations, BracketingFailed };

std::string to_string(Method m);
std::string to_string(Status s);

struct SolveReport {
    Method method = Method::MarchingBisection;
    long iterations = 0;
    double residual = 0.0;
    Status status = Status::Converged;
    std::optional<std::vector<double>> zero_chain_witness;
};

struct SolveResult {
    Partition partition;
    SolveReport report;
};

struct SolveOptions {
    double tol = 1e-8;
    std::optional<Method> force_method;  // dispatcher: skip the portfolio, run one method
    int step_m = 1024;            // march crossing-scan resolution
    int zero_chain_grid_m = 101;
    double zero_chain_eps = 1e-9;
    long max_iter = 10000;        // projection iteration
    double damping = 0.5;
    int oracle_polish_m = 201;    // grid_refine coarse grid
    std::uint64_t oracle_budget = 100'000'000;
    std::optional<std::vector<double>> initial;  // projection iteration start
};

// Sup-norm distance between the normalized chord vector and alpha.
// nullopt flags the all-zero chord vector (the excluded origin case), a
// legitimate geometric configuration rather than an error.
std::optional<double> residual(const ChordEvaluator& ev, const OrderedTuple& t,
                               const Weights& w);

struct ZeroChainResult {
    bool found = false;
    std::vector<double> witness;  // N+1 breakpoints when found
};

// Grid DP reachability: node u steps to v >= u iff D(u,v) <= eps; found iff
// 1 is reachable from 0 with all N chords <= eps. Resolution-limited:
// found=false does not rule out an exact zero chain off the grid.
ZeroChainResult detect_zero_chain(const ChordEvaluator& ev, std::size_t n_chords,
                                  double eps = 1e-9, int grid_m = 101);

struct MarchResult {
    std::vector<double> chain;  // breakpoints placed so far, starts at 0
    double overshoot = 0.0;     // D(t_{N-1},1) - alpha_N*c; +inf when truncated
    bool truncated = false;
};

// Consume the curve left to right: t_i = leftmost t >= t_{i-1} with
// D(t_{i-1},t) = alpha_i*c, found by sign-change scan at resolution step_m
// plus 60 bisection steps.
MarchResult march(const ChordEvaluator& ev, const Weights& w, double c,
                  int step_m = 1024);

SolveResult solve_marching_bisection(const ChordEvaluator& ev, const Weights& w,
                                     const SolveOptions& opts = {});
SolveResult solve_projection_iteration(const ChordEvaluator& ev, const Weights& w,
                                       const SolveOptions& opts = {});
SolveResult solve_grid_refine(const ChordEvaluator& ev, const Weights& w,
                              const SolveOptions& opts = {});

// Dispatcher: zero-chain check, then marching bisection, projection
// iteration, grid refine; first Converged result wins.
SolveResult solve(const ChordEvaluator& ev, std::size_t n_chords, const Weights& w,
                  const SolveOptions& opts = {});

}  // namespace equipart
