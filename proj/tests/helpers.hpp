#pragma once

#include <random>

#include "equipart/geometry.hpp"
#include "equipart/solver.hpp"

namespace equipart::testing {

inline ChordEvaluator unit_segment(SemiMetric m = SemiMetric::euclidean()) {
    return ChordEvaluator(make_builtin_curve("segment((0,0),(1,0))"), std::move(m));
}

inline ChordEvaluator builtin(const std::string& spec,
                              SemiMetric m = SemiMetric::euclidean()) {
    return ChordEvaluator(make_builtin_curve(spec), std::move(m));
}

// Gamma(0) = Gamma(0.5) = Gamma(1): a zero chain sits exactly on grid points.
inline Curve figure_eight_polyline() {
    return Curve::polyline(
        {0.0, 0.25, 0.5, 0.75, 1.0},
        {{0.0, 0.0}, {1.0, 1.0}, {0.0, 0.0}, {-1.0, 1.0}, {0.0, 0.0}});
}

inline std::vector<double> random_positive_weights(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.2, 1.0);
    std::vector<double> raw(n);
    for (double& v : raw) v = u(rng);
    return raw;
}

}  // namespace equipart::testing
