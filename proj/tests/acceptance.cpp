// Acceptance suite: one pass/fail line per criterion, exit nonzero on any
// failure. Tolerances are fixed here, not configurable.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "equipart/geometry.hpp"
#include "equipart/oracle.hpp"
#include "equipart/simplex.hpp"
#include "equipart/solver.hpp"

using namespace equipart;

namespace {

int g_failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", id, name,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> random_weights(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.2, 1.0);
    std::vector<double> raw(n);
    for (double& v : raw) v = u(rng);
    return raw;
}

// 1. Line exactness: t_i = i/N within 1e-9, under 0.1 s per case.
void criterion_1() {
    ChordEvaluator ev(make_builtin_curve("segment((0,0),(1,0))"), SemiMetric::euclidean());
    bool ok = true;
    std::string detail;
    for (std::size_t n = 2; n <= 8; ++n) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto res = solve(ev, n, Weights::uniform(n));
        const double dt = seconds_since(t0);
        if (res.report.status != Status::Converged) ok = false;
        for (std::size_t i = 0; i <= n; ++i)
            if (std::abs(res.partition.t[i] -
                         static_cast<double>(i) / static_cast<double>(n)) > 1e-9)
                ok = false;
        if (dt >= 0.1) {
            ok = false;
            detail = "N=" + std::to_string(n) + " took " + std::to_string(dt) + " s";
        }
    }
    report(1, "line exactness, N=2..8", ok, detail);
}

// 2. Weighted line: alphas (0.2,0.3,0.5) -> t=(0.2,0.5) within 1e-9.
void criterion_2() {
    ChordEvaluator ev(make_builtin_curve("segment((0,0),(1,0))"), SemiMetric::euclidean());
    const auto res = solve(ev, 3, Weights({0.2, 0.3, 0.5}));
    const bool ok = res.report.status == Status::Converged &&
                    std::abs(res.partition.t[1] - 0.2) <= 1e-9 &&
                    std::abs(res.partition.t[2] - 0.5) <= 1e-9;
    report(2, "weighted line, alphas=(0.2,0.3,0.5)", ok);
}

// 3. Oracle agreement on 20 seeded polylines, N in {2,3,4}, under 60 s.
void criterion_3() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (unsigned seed = 0; seed < 20 && ok; ++seed) {
        ChordEvaluator ev(make_random_polyline(seed), SemiMetric::euclidean());
        for (std::size_t n = 2; n <= 4 && ok; ++n) {
            const Weights w = Weights::uniform(n);
            const auto sol = solve(ev, n, w);
            if (sol.report.status != Status::Converged || sol.report.residual > 1e-7) {
                ok = false;
                detail = "solver failed at seed " + std::to_string(seed) +
                         ", N=" + std::to_string(n);
                break;
            }
            const auto orc = brute_force_min_residual(ev, n, w, 201);
            if (orc.residual_star > sol.report.residual + 0.02) {
                ok = false;
                detail = "oracle gap at seed " + std::to_string(seed);
            }
        }
    }
    const double dt = seconds_since(t0);
    if (dt >= 60.0) {
        ok = false;
        detail = "runtime " + std::to_string(dt) + " s";
    }
    report(3, "solver/oracle agreement, 20 seeded polylines", ok, detail);
}

// 4. A non-metric d still works: squared_euclidean on circle(1,0.75), N=5.
void criterion_4() {
    ChordEvaluator ev(make_builtin_curve("circle(1,0.75)"),
                      SemiMetric::squared_euclidean());
    const auto res = solve(ev, 5, Weights::uniform(5));
    const bool ok =
        res.report.status == Status::Converged && res.report.residual <= 1e-7;
    report(4, "semi-metric generality (squared_euclidean)", ok,
           "residual=" + std::to_string(res.report.residual));
}

// 5. Degeneracy split: closed circle flagged with a verifiable witness, the
// open arc passes the detector.
void criterion_5() {
    bool ok = true;
    ChordEvaluator closed(make_builtin_curve("circle(1,1)"), SemiMetric::euclidean());
    for (std::size_t n : {std::size_t{2}, std::size_t{3}}) {
        const auto res = solve(closed, n, Weights::uniform(n));
        if (res.report.status != Status::DegenerateZeroChain ||
            !res.report.zero_chain_witness)
            ok = false;
        else {
            const auto& wit = *res.report.zero_chain_witness;
            for (std::size_t i = 0; i + 1 < wit.size(); ++i)
                if (closed(wit[i], wit[i + 1]) > 1e-9) ok = false;
        }
    }
    ChordEvaluator open_arc(make_builtin_curve("circle(1,0.75)"), SemiMetric::euclidean());
    if (detect_zero_chain(open_arc, 3, 1e-9, 101).found) ok = false;
    report(5, "degenerate/positive case split", ok);
}

// 6. Nested oracle refinement on 50 seeded problems: non-increasing, final <= 0.1.
void criterion_6() {
    std::mt19937 rng(1234);
    bool ok = true;
    std::string detail;
    for (unsigned seed = 100; seed < 150 && ok; ++seed) {
        ChordEvaluator ev(make_random_polyline(seed), SemiMetric::euclidean());
        const std::size_t n = 2 + seed % 3;
        const Weights w = Weights::normalized(random_weights(rng, n));
        const auto rs = nested_refine(ev, n, w, {51, 101, 201});
        if (!(rs[0].residual_star >= rs[1].residual_star &&
              rs[1].residual_star >= rs[2].residual_star)) {
            ok = false;
            detail = "refinement not monotone at seed " + std::to_string(seed);
        }
        if (rs[2].residual_star > 0.1) {
            ok = false;
            detail = "final residual " + std::to_string(rs[2].residual_star) +
                     " at seed " + std::to_string(seed);
        }
    }
    report(6, "nested oracle refinement, 50 seeded problems", ok, detail);
}

// 7. Boundary fixed-point probe: positive minimum displacement, cyclic tau
// required.
void criterion_7() {
    bool ok = true;
    auto id = [](const Barycentric& x) { return x; };
    auto square_norm = [](const Barycentric& x) {
        std::vector<double> a(x.alpha.size());
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = x.alpha[i] * x.alpha[i];
        return radial_project(a);
    };
    for (std::size_t n = 2; n <= 4; ++n) {
        std::vector<std::size_t> tau(n);
        for (std::size_t i = 0; i < n; ++i) tau[i] = (i + 1) % n + 1;
        for (const auto& phi : {std::function<Barycentric(const Barycentric&)>(id),
                                std::function<Barycentric(const Barycentric&)>(square_norm)})
            if (!(lemma_a_probe(n, tau, phi, 40) > 1e-6)) ok = false;
    }
    try {
        lemma_a_probe(3, {2, 1, 3}, id, 10);
        ok = false;  // non-cyclic tau must be rejected
    } catch (const std::domain_error&) {
    }
    report(7, "boundary displacement probe, N=2..4", ok);
}

// 8. Invariance suite: projection scale invariance, reversal symmetry,
// certificate self-verification.
void criterion_8() {
    bool ok = true;
    std::string detail;

    std::mt19937 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> logl(-6.0, 6.0);
    for (int k = 0; k < 1000; ++k) {
        const std::size_t n = 2 + rng() % 5;
        std::vector<double> x(n);
        for (double& v : x) v = u(rng);
        x[rng() % n] += 0.1;
        const double lambda = std::pow(10.0, logl(rng));
        std::vector<double> xs = x;
        for (double& v : xs) v *= lambda;
        const auto a = radial_project(x), b = radial_project(xs);
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(a.alpha[i] - b.alpha[i]) > 1e-12) ok = false;
    }
    if (!ok) detail = "scale invariance";

    const double tol = 1e-8;
    for (unsigned seed = 0; seed < 10; ++seed) {
        const Curve c = make_random_polyline(seed);
        const std::size_t n = 2 + seed % 3;
        const Weights w = Weights::normalized(random_weights(rng, n));
        ChordEvaluator ev(c, SemiMetric::euclidean());
        ChordEvaluator rev_ev(reversed(c), SemiMetric::euclidean());
        std::vector<double> ra(w.alpha.rbegin(), w.alpha.rend());
        const Weights rw = Weights::normalized(std::move(ra));

        const auto fwd = solve(ev, n, w);
        const auto rev = solve(rev_ev, n, rw);
        for (const auto* res : {&fwd, &rev}) {
            if (res->report.status != Status::Converged) continue;
            // certificate: the report is self-verifying
            const OrderedTuple t(std::vector<double>(res->partition.t.begin() + 1,
                                                     res->partition.t.end() - 1));
            const ChordEvaluator& which = res == &fwd ? ev : rev_ev;
            const Weights& ww = res == &fwd ? w : rw;
            const auto r = residual(which, t, ww);
            if (!r || std::abs(*r - res->report.residual) > 1e-12) {
                ok = false;
                detail = "certificate mismatch at seed " + std::to_string(seed);
            }
        }
        if (rev.report.status == Status::Converged) {
            std::vector<double> t;
            for (auto it = rev.partition.t.rbegin(); it != rev.partition.t.rend(); ++it)
                t.push_back(1.0 - *it);
            const OrderedTuple mapped(std::vector<double>(t.begin() + 1, t.end() - 1));
            const auto r = residual(ev, mapped, w);
            if (!r || *r > tol * 1.000001) {
                ok = false;
                detail = "reversal symmetry at seed " + std::to_string(seed);
            }
        }
    }
    report(8, "invariance suite", ok, detail);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (g_failures) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
