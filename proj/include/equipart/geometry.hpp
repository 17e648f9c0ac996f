#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace equipart {

// A point of R^n. Coordinates must be finite.
using Point = std::vector<double>;

// Continuous curve [0,1] -> R^n. Either a polyline (piecewise-linear in the
// stored parameter, exact at the knots) or a named parametric form.
class Curve {
public:
    static Curve polyline(std::vector<double> params, std::vector<Point> points);
    static Curve polyline_uniform(std::vector<Point> points);
    static Curve parametric(std::size_t dim, std::function<Point(double)> f,
                            std::string name);

    std::size_t dim() const { return dim_; }
    const std::string& name() const { return name_; }
    bool is_polyline() const { return !samples_.empty(); }

    // Throws std::domain_error for t outside [0,1].
    Point eval(double t) const;

    const std::vector<double>& sample_params() const { return params_; }
    const std::vector<Point>& sample_points() const { return samples_; }

private:
    Curve() = default;
    std::size_t dim_ = 0;
    std::string name_;
    std::vector<double> params_;   // polyline only, strictly increasing, 0..1
    std::vector<Point> samples_;   // polyline only
    std::function<Point(double)> fn_;  // parametric only
};

// Gamma(t) -> Gamma(1-t).
Curve reversed(const Curve& c);

// Nonnegative d with d(x,x)=0. Symmetry and the triangle inequality are not
// required: squared_euclidean breaks the triangle inequality and
// asymmetric_scaled breaks symmetry.
class SemiMetric {
public:
    enum class Kind { Euclidean, L1, Linf, SquaredEuclidean, WeightedEuclidean,
                      AsymmetricScaled };

    static SemiMetric euclidean();
    static SemiMetric l1();
    static SemiMetric linf();
    static SemiMetric squared_euclidean();
    static SemiMetric weighted_euclidean(std::vector<double> axis_weights);
    // beta is applied when the first argument precedes the second
    // lexicographically; base must be one of the symmetric kinds.
    static SemiMetric asymmetric_scaled(Kind base, double beta);

    // "euclidean", "weighted_euclidean:1,2", "asymmetric_scaled:l1,2.5", ...
    static SemiMetric parse(const std::string& spec);
    static std::string catalog();  // names for error messages

    double operator()(const Point& x, const Point& y) const;
    bool symmetric() const { return kind_ != Kind::AsymmetricScaled; }
    std::string name() const;

private:
    Kind kind_ = Kind::Euclidean;
    std::vector<double> weights_;
    Kind base_ = Kind::Euclidean;
    double beta_ = 1.0;
};

// The chord function D(s,t) = d(Gamma(s), Gamma(t)).
class ChordEvaluator {
public:
    ChordEvaluator(Curve curve, SemiMetric metric)
        : curve_(std::move(curve)), metric_(std::move(metric)) {}

    double operator()(double s, double t) const {
        return metric_(curve_.eval(s), curve_.eval(t));
    }

    const Curve& curve() const { return curve_; }
    const SemiMetric& metric() const { return metric_; }

private:
    Curve curve_;
    SemiMetric metric_;
};

// Builtin curve catalog. Accepted specs:
//   segment((x,y,...),(x,y,...))
//   circle(radius, turns)            turns in (0,1]; turns=1 closes the curve
//   arch_spiral(a, b, turns)         r = a + b*theta, theta = 2*pi*turns*t
//   lissajous(a, b, delta)           (sin(pi*a*t + delta), sin(pi*b*t))
//   helix3d(radius, pitch, turns)
//   polyline(path)                   JSON or CSV file, see load_polyline_file
// Scalar arguments accept "pi" expressions such as pi/2 or 3pi/4.
// Throws std::invalid_argument naming the offending token.
Curve make_builtin_curve(const std::string& spec);

// JSON: {"dim": n, "points": [[...],...], "params": [...] (optional)}
// CSV: one point per row, uniform parameters.
Curve load_polyline_file(const std::string& path);

// Seeded fixture generator: an open 2D polyline with `segments` linear pieces,
// vertices drawn uniformly from [-1,1]^2 (mt19937, the seed is the whole
// state). The last vertex is displaced if it lands on the first, so
// Gamma(0) != Gamma(1) always holds.
Curve make_random_polyline(unsigned seed, std::size_t segments = 16);

}  // namespace equipart
