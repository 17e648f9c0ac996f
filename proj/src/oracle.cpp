#include "equipart/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace equipart {

budget_exceeded::budget_exceeded(std::uint64_t n)
    : std::runtime_error("oracle enumeration would evaluate " + std::to_string(n) +
                         " tuples, above the configured budget"),
      required(n) {}

std::uint64_t oracle_tuple_count(int grid_m, std::size_t n_chords) {
    // C(m+N-2, N-1) with saturation
    const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
    unsigned __int128 c = 1;
    const std::uint64_t n = n_chords - 1;
    const std::uint64_t top = static_cast<std::uint64_t>(grid_m) + n_chords - 2;
    for (std::uint64_t k = 1; k <= n; ++k) {
        c = c * (top - n + k) / k;
        if (c > cap) return cap;
    }
    return static_cast<std::uint64_t>(c);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ChordTable {
    int m;
    std::vector<double> d;  // d[u*m+v] for u <= v

    ChordTable(const ChordEvaluator& ev, int grid_m) : m(grid_m), d(std::size_t(m) * m, 0.0) {
        std::vector<Point> pts(m);
        for (int k = 0; k < m; ++k)
            pts[k] = ev.curve().eval(static_cast<double>(k) / (m - 1));
        const auto& metric = ev.metric();
        for (int u = 0; u < m; ++u)
            for (int v = u; v < m; ++v)
                d[std::size_t(u) * m + v] = metric(pts[u], pts[v]);
    }

    double operator()(int u, int v) const { return d[std::size_t(u) * m + v]; }
};

struct Best {
    double residual = kInf;
    std::vector<int> tuple;          // best non-degenerate
    std::vector<int> degen_tuple;    // lex-smallest degenerate seen
    std::uint64_t count = 0;

    void consider(double r, const std::vector<int>& idx) {
        if (r < residual || (r == residual && std::lexicographical_compare(
                                                  idx.begin(), idx.end(),
                                                  tuple.begin(), tuple.end()))) {
            residual = r;
            tuple = idx;
        }
    }

    void consider_degenerate(const std::vector<int>& idx) {
        if (degen_tuple.empty() ||
            std::lexicographical_compare(idx.begin(), idx.end(), degen_tuple.begin(),
                                         degen_tuple.end()))
            degen_tuple = idx;
    }

    void merge(const Best& o) {
        count += o.count;
        if (!o.tuple.empty()) consider(o.residual, o.tuple);
        if (!o.degen_tuple.empty()) consider_degenerate(o.degen_tuple);
    }
};

// Enumerate nondecreasing index tuples with a fixed prefix; idx[0..depth-1]
// are set, chords[0..depth-1] and their partial sum are consistent with them.
void enumerate_suffix(const ChordTable& T, const Weights& w, std::vector<int>& idx,
                      std::vector<double>& chords, std::size_t depth, double partial_sum,
                      Best& best) {
    const std::size_t n = w.size();
    const int m = T.m;
    const int lo = depth == 0 ? 0 : idx[depth - 1];
    if (depth == n - 2) {
        // innermost coordinate: the last chord closes at the grid end
        for (int v = lo; v < m; ++v) {
            idx[depth] = v;
            const double xk = T(lo, v);
            const double xlast = T(v, m - 1);
            const double sum = partial_sum + xk + xlast;
            ++best.count;
            if (sum == 0.0) {
                best.consider_degenerate(idx);
                continue;
            }
            chords[depth] = xk;
            chords[depth + 1] = xlast;
            double r = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                r = std::max(r, std::abs(chords[i] / sum - w.alpha[i]));
            best.consider(r, idx);
        }
        return;
    }
    for (int v = lo; v < m; ++v) {
        idx[depth] = v;
        chords[depth] = T(lo, v);
        enumerate_suffix(T, w, idx, chords, depth + 1, partial_sum + chords[depth], best);
    }
}

OracleResult finish(const Best& best, int grid_m, std::size_t n_chords) {
    OracleResult res;
    res.grid_m = grid_m;
    res.evaluated_count = best.count;
    const auto to_tuple = [&](const std::vector<int>& idx) {
        std::vector<double> t(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            t[i] = static_cast<double>(idx[i]) / (grid_m - 1);
        return OrderedTuple(std::move(t));
    };
    if (best.tuple.empty()) {
        res.all_degenerate = true;
        res.residual_star = kInf;
        res.t_star = to_tuple(best.degen_tuple);
        return res;
    }
    res.t_star = to_tuple(best.tuple);
    res.residual_star = best.residual;
    return res;
}

void check_budget(const ChordEvaluator&, std::size_t n_chords, int grid_m,
                  const OracleOptions& opts) {
    if (grid_m < 2)
        throw std::invalid_argument("oracle: grid_m must be >= 2");
    if (n_chords < 1) throw std::invalid_argument("oracle: N must be >= 1");
    const std::uint64_t count = oracle_tuple_count(grid_m, n_chords);
    if (count > opts.budget) throw budget_exceeded(count);
}

OracleResult oracle_n1(const ChordEvaluator& ev, int grid_m) {
    // N=1: the only tuple is empty; the single chord is D(0,1)
    OracleResult res;
    res.grid_m = grid_m;
    res.evaluated_count = 1;
    const double d = ev(0.0, 1.0);
    if (d == 0.0) {
        res.all_degenerate = true;
        res.residual_star = kInf;
    } else {
        res.residual_star = 0.0;
    }
    return res;
}

}  // namespace

OracleResult brute_force_min_residual_serial(const ChordEvaluator& ev,
                                             std::size_t n_chords, const Weights& w,
                                             int grid_m, const OracleOptions& opts) {
    check_budget(ev, n_chords, grid_m, opts);
    if (n_chords == 1) return oracle_n1(ev, grid_m);
    const ChordTable T(ev, grid_m);
    Best best;
    std::vector<int> idx(n_chords - 1, 0);
    std::vector<double> chords(n_chords, 0.0);
    enumerate_suffix(T, w, idx, chords, 0, 0.0, best);
    return finish(best, grid_m, n_chords);
}

OracleResult brute_force_min_residual(const ChordEvaluator& ev, std::size_t n_chords,
                                      const Weights& w, int grid_m,
                                      const OracleOptions& opts) {
    check_budget(ev, n_chords, grid_m, opts);
    if (n_chords == 1) return oracle_n1(ev, grid_m);
    const ChordTable T(ev, grid_m);
    Best best;

#ifdef _OPENMP
    const int requested = opts.threads;
#pragma omp parallel num_threads(requested > 0 ? requested : omp_get_max_threads())
    {
        Best local;
        std::vector<int> idx(n_chords - 1, 0);
        std::vector<double> chords(n_chords, 0.0);
#pragma omp for schedule(dynamic)
        for (int first = 0; first < grid_m; ++first) {
            idx[0] = first;
            chords[0] = T(0, first);
            if (n_chords == 2) {
                const double sum = chords[0] + T(first, grid_m - 1);
                ++local.count;
                if (sum == 0.0) {
                    local.consider_degenerate(idx);
                } else {
                    chords[1] = T(first, grid_m - 1);
                    double r = 0.0;
                    for (std::size_t i = 0; i < 2; ++i)
                        r = std::max(r, std::abs(chords[i] / sum - w.alpha[i]));
                    local.consider(r, idx);
                }
            } else {
                enumerate_suffix(T, w, idx, chords, 1, chords[0], local);
            }
        }
#pragma omp critical
        best.merge(local);
    }
#else
    std::vector<int> idx(n_chords - 1, 0);
    std::vector<double> chords(n_chords, 0.0);
    enumerate_suffix(T, w, idx, chords, 0, 0.0, best);
#endif
    return finish(best, grid_m, n_chords);
}

std::vector<OracleResult> nested_refine(const ChordEvaluator& ev, std::size_t n_chords,
                                        const Weights& w,
                                        const std::vector<int>& m_sequence,
                                        const OracleOptions& opts) {
    if (m_sequence.empty()) throw std::invalid_argument("nested_refine: empty sequence");
    for (std::size_t k = 1; k < m_sequence.size(); ++k)
        if (m_sequence[k] != 2 * m_sequence[k - 1] - 1)
            throw std::invalid_argument(
                "nested_refine: grids must be nested (m' = 2m - 1)");
    std::vector<OracleResult> out;
    out.reserve(m_sequence.size());
    for (int m : m_sequence)
        out.push_back(brute_force_min_residual(ev, n_chords, w, m, opts));
    return out;
}

}  // namespace equipart
