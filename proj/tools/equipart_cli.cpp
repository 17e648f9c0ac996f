#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "equipart/geometry.hpp"
#include "equipart/oracle.hpp"
#include "equipart/simplex.hpp"
#include "equipart/solver.hpp"

namespace {

using namespace equipart;

// 17 significant digits: enough for bit-exact re-reading of doubles.
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string num_list(const std::vector<double>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += num(xs[i]);
    }
    return out + "]";
}

void write_out(const std::string& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file '" + out_path + "'");
    f << doc;
}

struct CommonArgs {
    std::string curve_spec;
    std::string metric = "euclidean";
    int n = 2;
    std::string alphas;
    double tol = 1e-8;
    std::string method = "auto";
    int grid = 0;  // 0 = per-command default
    double eps = 1e-9;
    std::string out_path;
    std::string format = "json";
    int threads = 0;
    unsigned seed = 0;
};

Curve parse_curve(const CommonArgs& a) {
    if (a.curve_spec.rfind("random", 0) == 0)
        return make_random_polyline(a.seed);
    if (a.curve_spec.find('(') != std::string::npos)
        return make_builtin_curve(a.curve_spec);
    return load_polyline_file(a.curve_spec);
}

Weights parse_weights(const CommonArgs& a) {
    if (a.alphas.empty()) return Weights::uniform(static_cast<std::size_t>(a.n));
    std::vector<double> raw;
    std::stringstream ss(a.alphas);
    std::string tok;
    while (std::getline(ss, tok, ',')) raw.push_back(std::stod(tok));
    if (raw.size() != static_cast<std::size_t>(a.n))
        throw std::invalid_argument("--alphas must list exactly n values");
    return Weights::normalized(std::move(raw));
}

std::string solve_json(const SolveResult& r, const Weights& w) {
    std::string s = "{\n";
    s += "  \"status\": \"" + to_string(r.report.status) + "\",\n";
    s += "  \"method\": \"" + to_string(r.report.method) + "\",\n";
    s += "  \"iterations\": " + std::to_string(r.report.iterations) + ",\n";
    s += "  \"residual\": " + num(r.report.residual) + ",\n";
    s += "  \"t\": " + num_list(r.partition.t) + ",\n";
    s += "  \"chords\": " + num_list(r.partition.chords) + ",\n";
    s += "  \"alphas\": " + num_list(w.alpha);
    if (r.report.zero_chain_witness) {
        s += ",\n  \"zero_chain_witness\": " + num_list(*r.report.zero_chain_witness);
    }
    s += "\n}\n";
    return s;
}

std::string solve_csv(const SolveResult& r) {
    std::string s = "index,t,chord\n";
    for (std::size_t i = 0; i < r.partition.t.size(); ++i) {
        s += std::to_string(i) + "," + num(r.partition.t[i]) + ",";
        if (i > 0) s += num(r.partition.chords[i - 1]);
        s += "\n";
    }
    return s;
}

std::string solve_svg(const Curve& curve, const SolveResult& r) {
    if (curve.dim() != 2)
        throw std::invalid_argument("SVG output requires a 2D curve (dim=" +
                                    std::to_string(curve.dim()) + ")");
    const int samples = 512;
    std::vector<Point> trace(samples + 1);
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (int k = 0; k <= samples; ++k) {
        trace[k] = curve.eval(static_cast<double>(k) / samples);
        xmin = std::min(xmin, trace[k][0]);
        xmax = std::max(xmax, trace[k][0]);
        ymin = std::min(ymin, trace[k][1]);
        ymax = std::max(ymax, trace[k][1]);
    }
    const double pad = 0.05 * std::max(xmax - xmin, ymax - ymin) + 1e-9;
    xmin -= pad; xmax += pad; ymin -= pad; ymax += pad;
    const double w = 640.0, h = 640.0;
    const double sx = w / (xmax - xmin), sy = h / (ymax - ymin);
    const double scale = std::min(sx, sy);
    auto X = [&](double x) { return (x - xmin) * scale; };
    auto Y = [&](double y) { return h - (y - ymin) * scale; };  // y up

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\""
      << h << "\">\n";
    s << "<polyline fill=\"none\" stroke=\"#888\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : trace) s << X(p[0]) << "," << Y(p[1]) << " ";
    s << "\"/>\n";
    std::vector<Point> breaks;
    for (double t : r.partition.t) breaks.push_back(curve.eval(t));
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        s << "<line stroke=\"#c33\" stroke-width=\"1\" x1=\"" << X(breaks[i][0])
          << "\" y1=\"" << Y(breaks[i][1]) << "\" x2=\"" << X(breaks[i + 1][0])
          << "\" y2=\"" << Y(breaks[i + 1][1]) << "\"/>\n";
    for (const auto& p : breaks)
        s << "<circle fill=\"#36c\" r=\"4\" cx=\"" << X(p[0]) << "\" cy=\"" << Y(p[1])
          << "\"/>\n";
    s << "<text x=\"10\" y=\"20\" font-family=\"monospace\" font-size=\"14\">residual = "
      << num(r.report.residual) << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

int run_solve(const CommonArgs& a) {
    const Curve curve = parse_curve(a);
    const ChordEvaluator ev(curve, SemiMetric::parse(a.metric));
    const Weights w = parse_weights(a);
    SolveOptions opts;
    opts.tol = a.tol;
    opts.zero_chain_eps = a.eps;
    if (a.method == "march") opts.force_method = Method::MarchingBisection;
    else if (a.method == "project") opts.force_method = Method::ProjectionIteration;
    else if (a.method == "grid") opts.force_method = Method::GridRefine;
    else if (a.method != "auto")
        throw std::invalid_argument("--method must be auto|march|project|grid");

    const SolveResult res = solve(ev, static_cast<std::size_t>(a.n), w, opts);

    if (a.format == "json") write_out(solve_json(res, w), a.out_path);
    else if (a.format == "csv") write_out(solve_csv(res), a.out_path);
    else if (a.format == "svg") write_out(solve_svg(curve, res), a.out_path);
    else throw std::invalid_argument("--format must be json|csv|svg");

    switch (res.report.status) {
        case Status::Converged: return 0;
        case Status::DegenerateZeroChain: return 2;
        default: return 1;
    }
}

int run_oracle(const CommonArgs& a) {
    const Curve curve = parse_curve(a);
    const ChordEvaluator ev(curve, SemiMetric::parse(a.metric));
    const Weights w = parse_weights(a);
    OracleOptions opts;
    opts.threads = a.threads;
    const int grid_m = a.grid > 0 ? a.grid : 201;
    const OracleResult res =
        brute_force_min_residual(ev, static_cast<std::size_t>(a.n), w, grid_m, opts);
    std::string s = "{\n";
    s += "  \"t_star\": " + num_list(res.t_star.t) + ",\n";
    s += "  \"residual_star\": " + num(res.residual_star) + ",\n";
    s += "  \"grid_m\": " + std::to_string(res.grid_m) + ",\n";
    s += "  \"evaluated_count\": " + std::to_string(res.evaluated_count) + ",\n";
    s += std::string("  \"all_degenerate\": ") + (res.all_degenerate ? "true" : "false");
    s += "\n}\n";
    write_out(s, a.out_path);
    return 0;
}

int run_check_zero_chain(const CommonArgs& a) {
    const Curve curve = parse_curve(a);
    const ChordEvaluator ev(curve, SemiMetric::parse(a.metric));
    const ZeroChainResult res = detect_zero_chain(ev, static_cast<std::size_t>(a.n),
                                                  a.eps, a.grid > 0 ? a.grid : 101);
    std::string s = "{\n";
    s += std::string("  \"found\": ") + (res.found ? "true" : "false");
    if (res.found) s += ",\n  \"witness\": " + num_list(res.witness);
    s += "\n}\n";
    write_out(s, a.out_path);
    return res.found ? 2 : 0;
}

int run_lemma_demo(const CommonArgs& a) {
    const std::size_t n = static_cast<std::size_t>(a.n);
    if (n < 2) throw std::invalid_argument("lemma-demo needs --n >= 2");
    std::vector<std::size_t> tau(n);
    for (std::size_t i = 0; i < n; ++i) tau[i] = (i % n) + 1 == n ? 1 : i + 2;
    // face-respecting fixtures: both preserve the support of x
    auto identity = [](const Barycentric& x) { return x; };
    auto square_norm = [](const Barycentric& x) {
        std::vector<double> a(x.alpha.size());
        double sum = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = x.alpha[i] * x.alpha[i];
            sum += a[i];
        }
        for (double& v : a) v /= sum;
        Barycentric y;
        y.alpha = std::move(a);
        return y;
    };
    const std::size_t density = a.grid > 0 ? static_cast<std::size_t>(a.grid) : 40;
    const double d_id = lemma_a_probe(n, tau, identity, density);
    const double d_sq = lemma_a_probe(n, tau, square_norm, density);
    std::string s = "{\n";
    s += "  \"n\": " + std::to_string(n) + ",\n";
    s += "  \"grid_density\": " + std::to_string(a.grid) + ",\n";
    s += "  \"min_displacement_identity\": " + num(d_id) + ",\n";
    s += "  \"min_displacement_square_norm\": " + num(d_sq) + "\n}\n";
    write_out(s, a.out_path);
    return (d_id > 0.0 && d_sq > 0.0) ? 0 : 1;
}

void add_common(CLI::App* cmd, CommonArgs& a, bool needs_curve) {
    if (needs_curve)
        cmd->add_option("--curve", a.curve_spec, "builtin spec or polyline file path")
            ->required();
    cmd->add_option("--metric", a.metric, "semi-metric, e.g. euclidean, weighted_euclidean:1,2");
    cmd->add_option("--n", a.n, "number of chords")->check(CLI::PositiveNumber);
    cmd->add_option("--alphas", a.alphas, "comma-separated positive ratios (normalized)");
    cmd->add_option("--tol", a.tol, "residual tolerance");
    cmd->add_option("--method", a.method, "auto|march|project|grid");
    cmd->add_option("--grid", a.grid, "grid resolution m");
    cmd->add_option("--eps", a.eps, "zero-chain tolerance");
    cmd->add_option("--out", a.out_path, "output file (default stdout)");
    cmd->add_option("--format", a.format, "json|csv|svg");
    cmd->add_option("--threads", a.threads, "oracle thread count (0 = default)");
    cmd->add_option("--seed", a.seed, "seed for the random fixture curve");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted chord-length curve equipartition"};
    app.require_subcommand(1);

    CommonArgs a;
    CLI::App* c_solve = app.add_subcommand("solve", "solve for a weighted equipartition");
    add_common(c_solve, a, true);
    CLI::App* c_oracle = app.add_subcommand("oracle", "brute-force grid minimizer");
    add_common(c_oracle, a, true);
    CLI::App* c_zc = app.add_subcommand("check-zero-chain", "grid test for a zero chord chain");
    add_common(c_zc, a, true);
    CLI::App* c_lemma = app.add_subcommand("lemma-demo",
                                           "probe the no-fixed-point lemma on a boundary grid");
    add_common(c_lemma, a, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(c_solve)) return run_solve(a);
        if (app.got_subcommand(c_oracle)) return run_oracle(a);
        if (app.got_subcommand(c_zc)) return run_check_zero_chain(a);
        return run_lemma_demo(a);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
