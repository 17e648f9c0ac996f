#include "equipart/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "equipart/oracle.hpp"

namespace equipart {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Weights::Weights(std::vector<double> values) : alpha(std::move(values)) {
    if (alpha.empty()) throw std::invalid_argument("Weights: empty");
    double sum = 0.0;
    for (double a : alpha) {
        if (!(a > 0.0)) throw std::invalid_argument("Weights: entries must be > 0");
        sum += a;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("Weights: entries must sum to 1");
}

Weights Weights::uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Weights: n must be >= 1");
    std::vector<double> a(n, 1.0 / static_cast<double>(n));
    // repair the rounding of 1/n so the sum is exact
    double sum = std::accumulate(a.begin(), a.end() - 1, 0.0);
    a.back() = 1.0 - sum;
    return Weights(std::move(a));
}

Weights Weights::normalized(std::vector<double> raw) {
    double sum = 0.0;
    for (double a : raw) {
        if (!(a > 0.0)) throw std::invalid_argument("Weights: entries must be > 0");
        sum += a;
    }
    for (double& a : raw) a /= sum;
    double s2 = std::accumulate(raw.begin(), raw.end() - 1, 0.0);
    raw.back() = 1.0 - s2;
    return Weights(std::move(raw));
}

std::string to_string(Method m) {
    switch (m) {
        case Method::MarchingBisection: return "marching_bisection";
        case Method::ProjectionIteration: return "projection_iteration";
        case Method::GridRefine: return "grid_refine";
    }
    return "?";
}

std::string to_string(Status s) {
    switch (s) {
        case Status::Converged: return "Converged";
        case Status::DegenerateZeroChain: return "DegenerateZeroChain";
        case Status::MaxIterations: return "MaxIterations";
        case Status::BracketingFailed: return "BracketingFailed";
    }
    return "?";
}

std::optional<double> residual(const ChordEvaluator& ev, const OrderedTuple& t,
                               const Weights& w) {
    const std::vector<double> x = chord_vector(ev, t);
    if (x.size() != w.size())
        throw std::invalid_argument("residual: weight count does not match chord count");
    double sum = 0.0;
    for (double v : x) sum += v;
    if (sum == 0.0) return std::nullopt;
    double r = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        r = std::max(r, std::abs(x[i] / sum - w.alpha[i]));
    return r;
}

ZeroChainResult detect_zero_chain(const ChordEvaluator& ev, std::size_t n_chords,
                                  double eps, int grid_m) {
    if (grid_m < 2) throw std::invalid_argument("detect_zero_chain: grid_m must be >= 2");
    if (!(eps > 0.0)) throw std::invalid_argument("detect_zero_chain: eps must be > 0");
    const std::size_t m = static_cast<std::size_t>(grid_m);
    std::vector<double> grid(m);
    std::vector<Point> pts(m);
    for (std::size_t k = 0; k < m; ++k) {
        grid[k] = static_cast<double>(k) / static_cast<double>(m - 1);
        pts[k] = ev.curve().eval(grid[k]);
    }
    grid.back() = 1.0;

    const std::size_t unreached = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> steps(m, unreached), pred(m, unreached);
    steps[0] = 0;
    const auto& d = ev.metric();
    for (std::size_t v = 1; v < m; ++v) {
        for (std::size_t u = 0; u < v; ++u) {
            if (steps[u] == unreached) continue;
            if (d(pts[u], pts[v]) <= eps && steps[u] + 1 < steps[v]) {
                steps[v] = steps[u] + 1;
                pred[v] = u;
            }
        }
    }
    ZeroChainResult res;
    if (steps[m - 1] == unreached || steps[m - 1] > n_chords) return res;
    res.found = true;
    std::vector<double> path;
    for (std::size_t v = m - 1; v != 0; v = pred[v]) path.push_back(grid[v]);
    path.push_back(0.0);
    std::reverse(path.begin(), path.end());
    // pad with repeats of t=0 up front; the extra chords are D(0,0)=0
    std::vector<double> witness(n_chords + 1 - path.size(), 0.0);
    witness.insert(witness.end(), path.begin(), path.end());
    res.witness = std::move(witness);
    return res;
}

MarchResult march(const ChordEvaluator& ev, const Weights& w, double c, int step_m) {
    if (!(c > 0.0)) throw std::invalid_argument("march: c must be > 0");
    if (step_m < 2) throw std::invalid_argument("march: step_m must be >= 2");
    const std::size_t n = w.size();
    MarchResult res;
    res.chain.push_back(0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double target = w.alpha[i] * c;
        const double t0 = res.chain.back();
        // D(t0,t0)=0 < target; scan for the first sample at or above target
        double lo = t0, hi = -1.0;
        for (int k = 1; k < step_m; ++k) {
            const double tk =
                t0 + (1.0 - t0) * static_cast<double>(k) / static_cast<double>(step_m - 1);
            if (ev(t0, tk) >= target) {
                hi = tk;
                break;
            }
            lo = tk;
        }
        if (hi < 0.0) {
            res.truncated = true;
            res.overshoot = kInf;
            return res;
        }
        // leftmost crossing within the bracket
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (ev(t0, mid) >= target)
                hi = mid;
            else
                lo = mid;
        }
        res.chain.push_back(hi);
    }
    res.overshoot = ev(res.chain.back(), 1.0) - w.alpha[n - 1] * c;
    return res;
}

namespace {

Partition partition_from_chain(const ChordEvaluator& ev, std::vector<double> chain) {
    chain.front() = 0.0;
    chain.push_back(1.0);
    Partition p;
    p.t = std::move(chain);
    OrderedTuple interior(std::vector<double>(p.t.begin() + 1, p.t.end() - 1));
    p.chords = chord_vector(ev, interior);
    return p;
}

SolveResult trivial_single_chord(const ChordEvaluator& ev, Method m) {
    SolveResult r;
    r.partition.t = {0.0, 1.0};
    r.partition.chords = {ev(0.0, 1.0)};
    r.report.method = m;
    r.report.status = Status::Converged;
    r.report.residual = 0.0;
    return r;
}

double chain_residual(const ChordEvaluator& ev, const std::vector<double>& chain,
                      const Weights& w) {
    OrderedTuple interior(std::vector<double>(chain.begin() + 1, chain.end()));
    return residual(ev, interior, w).value_or(kInf);
}

}  // namespace

SolveResult solve_marching_bisection(const ChordEvaluator& ev, const Weights& w,
                                     const SolveOptions& opts) {
    if (w.size() == 1) return trivial_single_chord(ev, Method::MarchingBisection);

    SolveResult out;
    out.report.method = Method::MarchingBisection;
    long iters = 0;

    double best_res = kInf;
    std::vector<double> best_chain;
    auto probe = [&](double c) {
        ++iters;
        MarchResult m = march(ev, w, c, opts.step_m);
        if (!m.truncated) {
            const double r = chain_residual(ev, m.chain, w);
            if (r < best_res) {
                best_res = r;
                best_chain = m.chain;
            }
        }
        return m;
    };

    auto fail = [&](Status s) {
        out.report.status = s;
        out.report.iterations = iters;
        if (!best_chain.empty()) {
            out.partition = partition_from_chain(ev, best_chain);
            out.report.residual = best_res;
        } else {
            out.partition.t = {0.0, 1.0};
            out.partition.chords = {ev(0.0, 1.0)};
            out.report.residual = kInf;
        }
        return out;
    };

    const double c0 = ev(0.0, 1.0);
    if (!(c0 > 0.0)) return fail(Status::BracketingFailed);

    // geometric sweep for a sign change of the overshoot
    double c_lo = 0.0, c_hi = 0.0;
    MarchResult m0 = probe(c0);
    if (!m0.truncated && m0.overshoot > 0.0) {
        c_lo = c0;
        double c = c0;
        for (int k = 0; k < 60 && c_hi == 0.0; ++k) {
            c *= 2.0;
            MarchResult m = probe(c);
            if (m.truncated || m.overshoot <= 0.0)
                c_hi = c;
            else
                c_lo = c;
        }
    } else {
        c_hi = c0;
        double c = c0;
        for (int k = 0; k < 60 && c_lo == 0.0; ++k) {
            c *= 0.5;
            MarchResult m = probe(c);
            if (!m.truncated && m.overshoot > 0.0)
                c_lo = c;
            else
                c_hi = c;
        }
    }
    if (c_lo == 0.0 || c_hi == 0.0) return fail(Status::BracketingFailed);

    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (c_lo + c_hi);
        MarchResult m = probe(mid);
        if (m.truncated || m.overshoot <= 0.0)
            c_hi = mid;
        else
            c_lo = mid;
        if (best_res <= opts.tol) break;
    }

    if (best_chain.empty()) return fail(Status::BracketingFailed);
    out.partition = partition_from_chain(ev, best_chain);
    out.report.residual = best_res;
    out.report.iterations = iters;
    out.report.status = best_res <= opts.tol ? Status::Converged : Status::MaxIterations;
    return out;
}

SolveResult solve_projection_iteration(const ChordEvaluator& ev, const Weights& w,
                                       const SolveOptions& opts) {
    if (w.size() == 1) return trivial_single_chord(ev, Method::ProjectionIteration);
    const std::size_t n = w.size();

    std::vector<double> t;
    if (opts.initial) {
        t = *opts.initial;
        if (t.size() != n - 1)
            throw std::invalid_argument("projection_iteration: initial tuple has wrong size");
    } else {
        t.resize(n - 1);
        for (std::size_t i = 0; i < n - 1; ++i)
            t[i] = static_cast<double>(i + 1) / static_cast<double>(n);
    }

    // cumulative weight targets s_1..s_{N-1}
    std::vector<double> target(n - 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < n - 1; ++i) {
        acc += w.alpha[i];
        target[i] = acc;
    }

    SolveResult out;
    out.report.method = Method::ProjectionIteration;
    double best_res = kInf;
    std::vector<double> best_t = t;

    long iter = 0;
    for (; iter <= opts.max_iter; ++iter) {
        const std::vector<double> x = chord_vector(ev, OrderedTuple(t));
        double sum = 0.0;
        for (double v : x) sum += v;
        if (sum == 0.0) {
            // collapsed onto a zero chain; restart halfway back to uniform
            for (std::size_t i = 0; i < n - 1; ++i)
                t[i] = 0.5 * (t[i] + static_cast<double>(i + 1) / static_cast<double>(n));
            continue;
        }
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            res = std::max(res, std::abs(x[i] / sum - w.alpha[i]));
        if (res < best_res) {
            best_res = res;
            best_t = t;
        }
        if (res <= opts.tol || iter == opts.max_iter) break;

        // move each breakpoint by the cumulative-share mismatch, scaled by the
        // local gap so updates stay inside the neighbor interval
        std::vector<double> next = t;
        double share = 0.0;
        for (std::size_t i = 0; i < n - 1; ++i) {
            share += x[i] / sum;
            const double left = (i == 0) ? 0.0 : t[i - 1];
            const double right = (i + 2 == n) ? 1.0 : t[i + 1];
            next[i] = t[i] + opts.damping * (target[i] - share) * (right - left);
        }
        std::sort(next.begin(), next.end());
        for (double& v : next) v = std::clamp(v, 0.0, 1.0);
        t = std::move(next);
    }

    out.partition = partition_from_chain(
        ev, [&] {
            std::vector<double> chain{0.0};
            chain.insert(chain.end(), best_t.begin(), best_t.end());
            return chain;
        }());
    out.report.residual = best_res;
    out.report.iterations = iter;
    out.report.status = best_res <= opts.tol ? Status::Converged : Status::MaxIterations;
    return out;
}

namespace {

// Gaussian elimination with partial pivoting; returns false when singular.
bool solve_linear(std::vector<double> a, std::vector<double> b, std::size_t n,
                  std::vector<double>& x) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (std::abs(a[piv * n + col]) < 1e-14) return false;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
            std::swap(b[col], b[piv]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= a[r * n + c] * x[c];
        x[r] = s / a[r * n + r];
    }
    return true;
}

// First N-1 components of the normalized chord vector minus the target; the
// last component is dependent through the unit sum.
bool normalized_gap(const ChordEvaluator& ev, const Weights& w,
                    const std::vector<double>& t, std::vector<double>& out) {
    const std::vector<double> x = chord_vector(ev, OrderedTuple(t));
    double sum = 0.0;
    for (double v : x) sum += v;
    if (sum == 0.0) return false;
    out.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = x[i] / sum - w.alpha[i];
    return true;
}

// Damped Newton with a finite-difference Jacobian; returns the best residual
// reached and leaves the matching tuple in t.
double newton_polish(const ChordEvaluator& ev, const Weights& w,
                     std::vector<double>& t, double tol, long& steps) {
    const std::size_t n = t.size();
    if (n == 0) return residual(ev, OrderedTuple(t), w).value_or(kInf);
    const double fd_h = 1e-7;
    std::vector<double> best_t = t;
    double best = residual(ev, OrderedTuple(t), w).value_or(kInf);
    std::vector<double> g, gp, gm;
    for (int it = 0; it < 80 && best > tol; ++it) {
        if (!normalized_gap(ev, w, t, g)) break;
        std::vector<double> jac(n * n);
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            std::vector<double> tp = t, tm = t;
            tp[j] = std::min(tp[j] + fd_h, 1.0);
            tm[j] = std::max(tm[j] - fd_h, 0.0);
            std::sort(tp.begin(), tp.end());
            std::sort(tm.begin(), tm.end());
            ok = normalized_gap(ev, w, tp, gp) && normalized_gap(ev, w, tm, gm);
            if (!ok) break;
            const double denom = tp[j] - tm[j];
            if (denom == 0.0) {
                ok = false;
                break;
            }
            for (std::size_t i = 0; i < n; ++i)
                jac[i * n + j] = (gp[i] - gm[i]) / denom;
        }
        if (!ok) break;
        std::vector<double> step;
        if (!solve_linear(jac, g, n, step)) break;
        // backtracking on the full residual
        double scale = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 30; ++bt, scale *= 0.5) {
            std::vector<double> cand = t;
            for (std::size_t i = 0; i < n; ++i)
                cand[i] = std::clamp(cand[i] - scale * step[i], 0.0, 1.0);
            std::sort(cand.begin(), cand.end());
            ++steps;
            const double r = residual(ev, OrderedTuple(cand), w).value_or(kInf);
            if (r < best) {
                best = r;
                best_t = cand;
                t = std::move(cand);
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    t = best_t;
    return best;
}

double clamped_residual(const ChordEvaluator& ev, const Weights& w,
                        std::vector<double> t) {
    for (double& v : t) v = std::clamp(v, 0.0, 1.0);
    std::sort(t.begin(), t.end());
    return residual(ev, OrderedTuple(t), w).value_or(kInf);
}

// Nelder-Mead directly on the max-residual; copes with the kinks that break
// the finite-difference Jacobian on polylines.
double nelder_mead_polish(const ChordEvaluator& ev, const Weights& w,
                          std::vector<double>& t, double scale, double tol,
                          long& steps) {
    const std::size_t n = t.size();
    std::vector<std::vector<double>> pt(n + 1, t);
    std::vector<double> f(n + 1);
    for (std::size_t i = 0; i < n; ++i) pt[i + 1][i] += scale;
    for (std::size_t i = 0; i <= n; ++i) f[i] = clamped_residual(ev, w, pt[i]);
    steps += static_cast<long>(n + 1);

    std::vector<std::size_t> ord(n + 1);
    for (int it = 0; it < 4000; ++it) {
        for (std::size_t i = 0; i <= n; ++i) ord[i] = i;
        std::sort(ord.begin(), ord.end(),
                  [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
        if (f[ord[0]] <= 0.01 * tol) break;
        std::vector<double> cen(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                cen[j] += pt[ord[i]][j] / static_cast<double>(n);
        std::vector<double>& worst = pt[ord[n]];
        std::vector<double> cand(n);
        for (std::size_t j = 0; j < n; ++j) cand[j] = 2.0 * cen[j] - worst[j];
        double fr = clamped_residual(ev, w, cand);
        ++steps;
        if (fr < f[ord[0]]) {
            std::vector<double> exp2(n);
            for (std::size_t j = 0; j < n; ++j) exp2[j] = 3.0 * cen[j] - 2.0 * worst[j];
            const double fe = clamped_residual(ev, w, exp2);
            ++steps;
            if (fe < fr) {
                worst = std::move(exp2);
                f[ord[n]] = fe;
            } else {
                worst = std::move(cand);
                f[ord[n]] = fr;
            }
        } else if (fr < f[ord[n - 1]]) {
            worst = std::move(cand);
            f[ord[n]] = fr;
        } else {
            for (std::size_t j = 0; j < n; ++j) cand[j] = 0.5 * (cen[j] + worst[j]);
            const double fc = clamped_residual(ev, w, cand);
            ++steps;
            if (fc < f[ord[n]]) {
                worst = std::move(cand);
                f[ord[n]] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j)
                        pt[ord[i]][j] = 0.5 * (pt[ord[0]][j] + pt[ord[i]][j]);
                    f[ord[i]] = clamped_residual(ev, w, pt[ord[i]]);
                }
                steps += static_cast<long>(n);
            }
        }
    }
    std::size_t bi = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (f[i] < f[bi]) bi = i;
    t = pt[bi];
    for (double& v : t) v = std::clamp(v, 0.0, 1.0);
    std::sort(t.begin(), t.end());
    return f[bi];
}

// Low-residual grid tuples that are mutually separated in the sup norm, as
// starting points for one polish run per candidate basin.
std::vector<std::pair<double, std::vector<double>>> basin_seeds(
    const ChordEvaluator& ev, const Weights& w, int mc, std::size_t cap) {
    const std::size_t n = w.size() - 1;
    const double h = 1.0 / (mc - 1);
    const double sep = 2.0 * h;
    std::vector<std::pair<double, std::vector<double>>> pool;

    auto offer = [&](double r, const std::vector<double>& t) {
        for (auto& [pr, pt] : pool) {
            double dist = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                dist = std::max(dist, std::abs(pt[i] - t[i]));
            if (dist < sep) {
                if (r < pr) {
                    pr = r;
                    pt = t;
                }
                return;
            }
        }
        pool.push_back({r, t});
        if (pool.size() > 2 * cap) {
            std::sort(pool.begin(), pool.end());
            pool.resize(cap);
        }
    };

    std::vector<double> t(n);
    auto scan = [&](auto&& self, std::size_t pos, int from) -> void {
        if (pos == n) {
            const double r = residual(ev, OrderedTuple(t), w).value_or(kInf);
            if (r < kInf) offer(r, t);
            return;
        }
        for (int k = from; k < mc; ++k) {
            t[pos] = static_cast<double>(k) * h;
            self(self, pos + 1, k);
        }
    };
    if (n > 0) scan(scan, 0, 0);
    std::sort(pool.begin(), pool.end());
    if (pool.size() > cap) pool.resize(cap);
    return pool;
}

}  // namespace

SolveResult solve_grid_refine(const ChordEvaluator& ev, const Weights& w,
                              const SolveOptions& opts) {
    if (w.size() == 1) return trivial_single_chord(ev, Method::GridRefine);

    int m = opts.oracle_polish_m;
    while (m > 5 && oracle_tuple_count(m, w.size()) > opts.oracle_budget) m = (m + 1) / 2;

    OracleOptions oopts;
    oopts.budget = opts.oracle_budget;
    const OracleResult coarse = brute_force_min_residual(ev, w.size(), w, m, oopts);

    SolveResult out;
    out.report.method = Method::GridRefine;
    if (coarse.all_degenerate) {
        out.partition = partition_from_chain(ev, [&] {
            std::vector<double> chain{0.0};
            chain.insert(chain.end(), coarse.t_star.t.begin(), coarse.t_star.t.end());
            return chain;
        }());
        out.report.status = Status::DegenerateZeroChain;
        out.report.residual = 0.0;
        out.report.zero_chain_witness = out.partition.t;
        return out;
    }

    SolveOptions polish = opts;
    polish.initial = coarse.t_star.t;
    SolveResult refined = solve_projection_iteration(ev, w, polish);
    refined.report.method = Method::GridRefine;
    if (refined.report.status == Status::Converged) return refined;

    // projection polish can stall off-grid; try a Newton solve on the
    // normalized chord system, then a monotone compass search on the residual
    std::vector<double> t = refined.report.residual <= coarse.residual_star
                                ? std::vector<double>(refined.partition.t.begin() + 1,
                                                      refined.partition.t.end() - 1)
                                : coarse.t_star.t;
    long steps = refined.report.iterations;
    double best = newton_polish(ev, w, t, opts.tol, steps);
    // Newton can stall when a breakpoint straddles a kink of the chord
    // function, and the global grid minimizer can sit in a positive local
    // basin while a slightly worse one leads to zero; run a simplex search
    // on the residual from each well separated low-residual basin
    if (best > opts.tol) {
        int mc = 61;
        while (mc > 5 && oracle_tuple_count(mc, w.size()) > 250000.0)
            mc = (mc + 1) / 2;
        auto seeds = basin_seeds(ev, w, mc, 24);
        seeds.insert(seeds.begin(), {coarse.residual_star, coarse.t_star.t});
        for (auto& [sr, st] : seeds) {
            if (best <= opts.tol) break;
            std::vector<double> start = st;
            const double r =
                nelder_mead_polish(ev, w, start, 0.5 / (mc - 1), opts.tol, steps);
            if (r < best) {
                best = r;
                t = std::move(start);
            }
        }
    }
    double h = 1.0 / (m - 1);
    while (h > 1e-13 && best > opts.tol && steps < opts.max_iter * 4) {
        bool improved = false;
        for (std::size_t i = 0; i < t.size(); ++i) {
            for (double dir : {h, -h}) {
                std::vector<double> cand = t;
                cand[i] = std::clamp(cand[i] + dir, 0.0, 1.0);
                std::sort(cand.begin(), cand.end());
                ++steps;
                const double r = residual(ev, OrderedTuple(cand), w).value_or(kInf);
                if (r < best) {
                    best = r;
                    t = std::move(cand);
                    improved = true;
                }
            }
        }
        if (!improved) h *= 0.5;
    }

    out.partition = partition_from_chain(ev, [&] {
        std::vector<double> chain{0.0};
        chain.insert(chain.end(), t.begin(), t.end());
        return chain;
    }());
    out.report.residual = best;
    out.report.iterations = steps;
    out.report.status = best <= opts.tol ? Status::Converged : Status::MaxIterations;
    return out;
}

SolveResult solve(const ChordEvaluator& ev, std::size_t n_chords, const Weights& w,
                  const SolveOptions& opts) {
    if (n_chords == 0) throw std::invalid_argument("solve: N must be >= 1");
    if (w.size() != n_chords)
        throw std::invalid_argument("solve: weight count does not match N");
    if (n_chords == 1) return trivial_single_chord(ev, Method::MarchingBisection);

    const ZeroChainResult zc =
        detect_zero_chain(ev, n_chords, opts.zero_chain_eps, opts.zero_chain_grid_m);
    if (zc.found) {
        SolveResult out;
        out.partition = partition_from_chain(
            ev, std::vector<double>(zc.witness.begin(), zc.witness.end() - 1));
        out.report.method = Method::MarchingBisection;
        out.report.status = Status::DegenerateZeroChain;
        double worst = 0.0;
        for (double c : out.partition.chords) worst = std::max(worst, c);
        out.report.residual = worst;
        out.report.zero_chain_witness = zc.witness;
        return out;
    }

    if (opts.force_method) {
        switch (*opts.force_method) {
            case Method::MarchingBisection: return solve_marching_bisection(ev, w, opts);
            case Method::ProjectionIteration: return solve_projection_iteration(ev, w, opts);
            case Method::GridRefine: return solve_grid_refine(ev, w, opts);
        }
    }

    SolveResult best = solve_marching_bisection(ev, w, opts);
    if (best.report.status == Status::Converged) return best;

    SolveResult proj = solve_projection_iteration(ev, w, opts);
    if (proj.report.status == Status::Converged) return proj;
    if (proj.report.residual < best.report.residual) best = proj;

    SolveResult grid = solve_grid_refine(ev, w, opts);
    if (grid.report.status == Status::Converged ||
        grid.report.status == Status::DegenerateZeroChain)
        return grid;
    if (grid.report.residual < best.report.residual) best = grid;

    best.report.status = Status::MaxIterations;
    return best;
}

}  // namespace equipart
