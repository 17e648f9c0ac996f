#pragma once

#include <cstddef>
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

#include "equipart/geometry.hpp"

namespace equipart {

// Nondecreasing interior breakpoints (t_1,...,t_{N-1}) in [0,1]. The
// conventions t_0 = 0 and t_N = 1 are applied by all consumers. N is the
// number of chords; an empty tuple means N = 1.
struct OrderedTuple {
    std::vector<double> t;

    OrderedTuple() = default;
    explicit OrderedTuple(std::vector<double> values);

    std::size_t chord_count() const { return t.size() + 1; }
};

// A point of the standard simplex in R^N: nonnegative entries summing to 1
// (within 1e-12).
struct Barycentric {
    std::vector<double> alpha;

    Barycentric() = default;
    explicit Barycentric(std::vector<double> values);
};

// Indices i in {1,...,N} where t_{i-1} = t_i is enforced; identifies a face
// of the ordered simplex and the chord-vector entries forced to zero on it.
struct FacePattern {
    std::set<std::size_t> zeros;
};

struct zero_chord_vector : std::domain_error {
    zero_chord_vector() : std::domain_error("chord vector is identically zero") {}
};

// (D(0,t_1), D(t_1,t_2), ..., D(t_{N-1},1)).
std::vector<double> chord_vector(const ChordEvaluator& ev, const OrderedTuple& t);

// x -> x / sum(x). Throws zero_chord_vector when sum(x) == 0.
Barycentric radial_project(const std::vector<double>& x);

// Permutations are 1-based maps on {1,...,N}: tau[i-1] is the image of i.
bool is_permutation(const std::vector<std::size_t>& tau);
bool is_cyclic_permutation(const std::vector<std::size_t>& tau);

// Output coordinate tau(i) equals input coordinate i. Exact: no arithmetic.
Barycentric phi_tau(const Barycentric& x, const std::vector<std::size_t>& tau);

// { i : |t_i - t_{i-1}| <= eps }. Empty set = relative interior.
FacePattern face_pattern(const OrderedTuple& t, double eps = 1e-9);

// Minimum sup-norm displacement of Psi = phi_tau . phi over a density-m
// barycentric grid of the simplex boundary. phi must map every proper face
// into itself (caller's responsibility); tau must be cyclic or a
// std::domain_error is thrown. A falsification probe, not a proof: positive
// output on the grid is the expected outcome, zero would refute the fixture.
double lemma_a_probe(std::size_t n_chords, const std::vector<std::size_t>& tau,
                     const std::function<Barycentric(const Barycentric&)>& phi,
                     std::size_t grid_density = 40);

}  // namespace equipart
