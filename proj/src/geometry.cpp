#include "equipart/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

namespace equipart {

namespace {

void require_finite(const Point& p, const std::string& what) {
    for (double v : p)
        if (!std::isfinite(v))
            throw std::invalid_argument(what + ": non-finite coordinate");
}

}  // namespace

Curve Curve::polyline(std::vector<double> params, std::vector<Point> points) {
    if (points.size() < 2)
        throw std::invalid_argument("polyline needs at least 2 samples");
    if (params.size() != points.size())
        throw std::invalid_argument("polyline: params/points length mismatch");
    if (params.front() != 0.0 || params.back() != 1.0)
        throw std::invalid_argument("polyline: params must start at 0 and end at 1");
    for (std::size_t i = 1; i < params.size(); ++i)
        if (!(params[i] > params[i - 1]))
            throw std::invalid_argument("polyline: params must be strictly increasing");
    const std::size_t dim = points.front().size();
    if (dim == 0) throw std::invalid_argument("polyline: zero-dimensional points");
    for (const auto& p : points) {
        if (p.size() != dim)
            throw std::invalid_argument("polyline: inconsistent point dimension");
        require_finite(p, "polyline");
    }
    Curve c;
    c.dim_ = dim;
    c.name_ = "polyline";
    c.params_ = std::move(params);
    c.samples_ = std::move(points);
    return c;
}

Curve Curve::polyline_uniform(std::vector<Point> points) {
    const std::size_t m = points.size();
    if (m < 2) throw std::invalid_argument("polyline needs at least 2 samples");
    std::vector<double> params(m);
    for (std::size_t i = 0; i < m; ++i)
        params[i] = static_cast<double>(i) / static_cast<double>(m - 1);
    params.back() = 1.0;
    return polyline(std::move(params), std::move(points));
}

Curve Curve::parametric(std::size_t dim, std::function<Point(double)> f,
                        std::string name) {
    if (dim == 0) throw std::invalid_argument("curve dimension must be positive");
    Curve c;
    c.dim_ = dim;
    c.name_ = std::move(name);
    c.fn_ = std::move(f);
    return c;
}

Point Curve::eval(double t) const {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("curve parameter outside [0,1]");
    if (!is_polyline()) return fn_(t);
    // Exact at the knots, linear in the stored parameter between them.
    auto it = std::upper_bound(params_.begin(), params_.end(), t);
    std::size_t j = (it == params_.end() ? params_.size() - 1
                                         : static_cast<std::size_t>(it - params_.begin()) - 1);
    if (t == params_[j]) return samples_[j];
    const double u = (t - params_[j]) / (params_[j + 1] - params_[j]);
    Point p(dim_);
    for (std::size_t k = 0; k < dim_; ++k)
        p[k] = samples_[j][k] + u * (samples_[j + 1][k] - samples_[j][k]);
    return p;
}

Curve reversed(const Curve& c) {
    if (c.is_polyline()) {
        std::vector<double> params(c.sample_params().rbegin(), c.sample_params().rend());
        for (double& u : params) u = 1.0 - u;
        params.front() = 0.0;
        params.back() = 1.0;
        std::vector<Point> pts(c.sample_points().rbegin(), c.sample_points().rend());
        return Curve::polyline(std::move(params), std::move(pts));
    }
    return Curve::parametric(c.dim(), [c](double t) { return c.eval(1.0 - t); },
                             c.name() + "_reversed");
}

// ---- SemiMetric ----

SemiMetric SemiMetric::euclidean() { return SemiMetric{}; }

SemiMetric SemiMetric::l1() {
    SemiMetric m;
    m.kind_ = Kind::L1;
    return m;
}

SemiMetric SemiMetric::linf() {
    SemiMetric m;
    m.kind_ = Kind::Linf;
    return m;
}

SemiMetric SemiMetric::squared_euclidean() {
    SemiMetric m;
    m.kind_ = Kind::SquaredEuclidean;
    return m;
}

SemiMetric SemiMetric::weighted_euclidean(std::vector<double> axis_weights) {
    if (axis_weights.empty())
        throw std::invalid_argument("weighted_euclidean: no weights");
    for (double w : axis_weights)
        if (!(w > 0.0))
            throw std::invalid_argument("weighted_euclidean: weights must be > 0");
    SemiMetric m;
    m.kind_ = Kind::WeightedEuclidean;
    m.weights_ = std::move(axis_weights);
    return m;
}

SemiMetric SemiMetric::asymmetric_scaled(Kind base, double beta) {
    if (base == Kind::WeightedEuclidean || base == Kind::AsymmetricScaled)
        throw std::invalid_argument("asymmetric_scaled: base must be a plain kind");
    if (!(beta > 0.0))
        throw std::invalid_argument("asymmetric_scaled: beta must be > 0");
    SemiMetric m;
    m.kind_ = Kind::AsymmetricScaled;
    m.base_ = base;
    m.beta_ = beta;
    return m;
}

namespace {

double base_distance(SemiMetric::Kind kind, const Point& x, const Point& y) {
    double acc = 0.0;
    switch (kind) {
        case SemiMetric::Kind::Euclidean:
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double d = x[i] - y[i];
                acc += d * d;
            }
            return std::sqrt(acc);
        case SemiMetric::Kind::L1:
            for (std::size_t i = 0; i < x.size(); ++i) acc += std::abs(x[i] - y[i]);
            return acc;
        case SemiMetric::Kind::Linf:
            for (std::size_t i = 0; i < x.size(); ++i)
                acc = std::max(acc, std::abs(x[i] - y[i]));
            return acc;
        case SemiMetric::Kind::SquaredEuclidean:
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double d = x[i] - y[i];
                acc += d * d;
            }
            return acc;
        default:
            throw std::logic_error("base_distance: composite kind");
    }
}

}  // namespace

double SemiMetric::operator()(const Point& x, const Point& y) const {
    if (x.size() != y.size())
        throw std::invalid_argument("semi-metric: dimension mismatch");
    switch (kind_) {
        case Kind::WeightedEuclidean: {
            if (weights_.size() != x.size())
                throw std::invalid_argument("weighted_euclidean: weight/point dimension mismatch");
            double acc = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double d = x[i] - y[i];
                acc += weights_[i] * d * d;
            }
            return std::sqrt(acc);
        }
        case Kind::AsymmetricScaled: {
            const double d = base_distance(base_, x, y);
            return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end())
                       ? beta_ * d
                       : d;
        }
        default:
            return base_distance(kind_, x, y);
    }
}

std::string SemiMetric::name() const {
    switch (kind_) {
        case Kind::Euclidean: return "euclidean";
        case Kind::L1: return "l1";
        case Kind::Linf: return "linf";
        case Kind::SquaredEuclidean: return "squared_euclidean";
        case Kind::WeightedEuclidean: return "weighted_euclidean";
        case Kind::AsymmetricScaled: return "asymmetric_scaled";
    }
    return "?";
}

std::string SemiMetric::catalog() {
    return "euclidean, l1, linf, squared_euclidean, "
           "weighted_euclidean:w1,...,wn, asymmetric_scaled:<base>,<beta>";
}

namespace {

SemiMetric::Kind parse_plain_kind(const std::string& s) {
    if (s == "euclidean") return SemiMetric::Kind::Euclidean;
    if (s == "l1") return SemiMetric::Kind::L1;
    if (s == "linf") return SemiMetric::Kind::Linf;
    if (s == "squared_euclidean") return SemiMetric::Kind::SquaredEuclidean;
    throw std::invalid_argument("unknown metric '" + s + "'; catalog: " +
                                SemiMetric::catalog());
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

}  // namespace

SemiMetric SemiMetric::parse(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "weighted_euclidean") {
        std::vector<double> w;
        for (const auto& tok : split(args, ','))
            w.push_back(std::stod(tok));
        return weighted_euclidean(std::move(w));
    }
    if (head == "asymmetric_scaled") {
        auto parts = split(args, ',');
        if (parts.size() != 2)
            throw std::invalid_argument("asymmetric_scaled expects <base>,<beta>");
        return asymmetric_scaled(parse_plain_kind(parts[0]), std::stod(parts[1]));
    }
    if (!args.empty())
        throw std::invalid_argument("metric '" + head + "' takes no parameters");
    SemiMetric m;
    m.kind_ = parse_plain_kind(head);
    return m;
}

// ---- builtin curve catalog ----

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

struct SpecParser {
    const std::string& s;
    std::size_t pos = 0;

    explicit SpecParser(const std::string& str) : s(str) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("curve spec: " + msg + " at '" +
                                    s.substr(pos, 12) + "'");
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (pos == start) fail("expected a name");
        return s.substr(start, pos - start);
    }

    // number, optionally times pi, optionally over a number: 0.5, pi, pi/2, 3pi/4
    double scalar() {
        skip_ws();
        double sign = 1.0;
        if (accept('-')) sign = -1.0;
        skip_ws();
        double value = 1.0;
        bool have_num = false;
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.' ||
                s[pos] == 'e' || s[pos] == 'E' ||
                ((s[pos] == '+' || s[pos] == '-') && pos > start &&
                 (s[pos - 1] == 'e' || s[pos - 1] == 'E'))))
            ++pos;
        if (pos > start) {
            value = std::stod(s.substr(start, pos - start));
            have_num = true;
        }
        if (pos + 1 < s.size() + 1 && s.compare(pos, 2, "pi") == 0) {
            pos += 2;
            value = have_num ? value * std::numbers::pi : std::numbers::pi;
            have_num = true;
        }
        if (!have_num) fail("expected a number");
        if (accept('/')) value /= scalar();
        return sign * value;
    }

    Point point() {
        expect('(');
        Point p;
        p.push_back(scalar());
        while (accept(',')) p.push_back(scalar());
        expect(')');
        return p;
    }

    // raw argument up to the closing paren, for file paths
    std::string raw_until_close() {
        skip_ws();
        std::size_t start = pos;
        int depth = 0;
        while (pos < s.size() && (depth > 0 || s[pos] != ')')) {
            if (s[pos] == '(') ++depth;
            if (s[pos] == ')') --depth;
            ++pos;
        }
        std::string out = s.substr(start, pos - start);
        while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back())))
            out.pop_back();
        return out;
    }
};

}  // namespace

Curve make_builtin_curve(const std::string& spec) {
    SpecParser p(spec);
    const std::string family = p.ident();

    if (family == "polyline") {
        p.expect('(');
        const std::string path = p.raw_until_close();
        p.expect(')');
        return load_polyline_file(path);
    }

    if (family == "segment") {
        p.expect('(');
        Point a = p.point();
        p.expect(',');
        Point b = p.point();
        p.expect(')');
        if (a.size() != b.size()) p.fail("segment endpoints differ in dimension");
        return Curve::parametric(
            a.size(),
            [a, b](double t) {
                Point q(a.size());
                for (std::size_t k = 0; k < a.size(); ++k)
                    q[k] = a[k] + t * (b[k] - a[k]);
                return q;
            },
            spec);
    }

    if (family == "circle") {
        p.expect('(');
        const double r = p.scalar();
        p.expect(',');
        const double turns = p.scalar();
        p.expect(')');
        if (!(r > 0.0)) p.fail("circle radius must be > 0");
        if (!(turns > 0.0 && turns <= 1.0)) p.fail("circle turns must be in (0,1]");
        return Curve::parametric(
            2,
            [r, turns](double t) {
                const double th = kTau * turns * t;
                return Point{r * std::cos(th), r * std::sin(th)};
            },
            spec);
    }

    if (family == "arch_spiral") {
        p.expect('(');
        const double a = p.scalar();
        p.expect(',');
        const double b = p.scalar();
        p.expect(',');
        const double turns = p.scalar();
        p.expect(')');
        if (!(turns > 0.0)) p.fail("arch_spiral turns must be > 0");
        return Curve::parametric(
            2,
            [a, b, turns](double t) {
                const double th = kTau * turns * t;
                const double r = a + b * th;
                return Point{r * std::cos(th), r * std::sin(th)};
            },
            spec);
    }

    if (family == "lissajous") {
        p.expect('(');
        const double a = p.scalar();
        p.expect(',');
        const double b = p.scalar();
        p.expect(',');
        const double delta = p.scalar();
        p.expect(')');
        // half-turn multiples keep integer (a,b) curves open: Gamma(1) lands at
        // (sin(pi*a+delta), sin(pi*b)) rather than back at Gamma(0)
        return Curve::parametric(
            2,
            [a, b, delta](double t) {
                const double pi = std::numbers::pi;
                return Point{std::sin(pi * a * t + delta), std::sin(pi * b * t)};
            },
            spec);
    }

    if (family == "helix3d") {
        p.expect('(');
        const double r = p.scalar();
        p.expect(',');
        const double pitch = p.scalar();
        p.expect(',');
        const double turns = p.scalar();
        p.expect(')');
        if (!(r > 0.0)) p.fail("helix3d radius must be > 0");
        if (!(turns > 0.0)) p.fail("helix3d turns must be > 0");
        return Curve::parametric(
            3,
            [r, pitch, turns](double t) {
                const double th = kTau * turns * t;
                return Point{r * std::cos(th), r * std::sin(th), pitch * turns * t};
            },
            spec);
    }

    throw std::invalid_argument(
        "unknown curve family '" + family +
        "'; known: segment, circle, arch_spiral, lissajous, helix3d, polyline");
}

// ---- polyline file loading ----

namespace {

Curve load_polyline_json(std::istream& in, const std::string& path) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(path + ": invalid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("points"))
        throw std::invalid_argument(path + ": expected object with \"dim\" and \"points\"");
    const auto dim = j.at("dim").get<std::size_t>();
    std::vector<Point> pts;
    for (const auto& row : j.at("points")) {
        Point p = row.get<Point>();
        if (p.size() != dim)
            throw std::invalid_argument(path + ": point of wrong dimension in \"points\"");
        pts.push_back(std::move(p));
    }
    if (j.contains("params")) {
        auto params = j.at("params").get<std::vector<double>>();
        return Curve::polyline(std::move(params), std::move(pts));
    }
    return Curve::polyline_uniform(std::move(pts));
}

Curve load_polyline_csv(std::istream& in, const std::string& path) {
    std::vector<Point> pts;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        Point p;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                p.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                            ": bad number '" + cell + "'");
            }
        }
        if (!p.empty()) pts.push_back(std::move(p));
    }
    if (pts.size() < 2)
        throw std::invalid_argument(path + ": fewer than 2 points");
    return Curve::polyline_uniform(std::move(pts));
}

}  // namespace

Curve load_polyline_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open curve file '" + path + "'");
    char first = '\0';
    in >> std::ws;
    first = static_cast<char>(in.peek());
    if (first == '{') return load_polyline_json(in, path);
    return load_polyline_csv(in, path);
}

Curve make_random_polyline(unsigned seed, std::size_t segments) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::vector<Point> pts(segments + 1);
    for (auto& p : pts) p = Point{coord(rng), coord(rng)};
    // keep the curve open
    const Point& a = pts.front();
    Point& b = pts.back();
    if (std::hypot(b[0] - a[0], b[1] - a[1]) < 1e-6) {
        b[0] += 0.5;
        b[1] += 0.25;
    }
    return Curve::polyline_uniform(std::move(pts));
}

}  // namespace equipart
