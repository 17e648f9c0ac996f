#include "equipart/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace equipart {

OrderedTuple::OrderedTuple(std::vector<double> values) : t(std::move(values)) {
    double prev = 0.0;
    for (double v : t) {
        if (!(v >= prev))
            throw std::invalid_argument("OrderedTuple: entries must be nondecreasing and >= 0");
        prev = v;
    }
    if (!t.empty() && !(t.back() <= 1.0))
        throw std::invalid_argument("OrderedTuple: entries must be <= 1");
}

Barycentric::Barycentric(std::vector<double> values) : alpha(std::move(values)) {
    if (alpha.empty()) throw std::invalid_argument("Barycentric: empty");
    double sum = 0.0;
    for (double a : alpha) {
        if (!(a >= 0.0)) throw std::invalid_argument("Barycentric: negative entry");
        sum += a;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("Barycentric: entries must sum to 1");
}

std::vector<double> chord_vector(const ChordEvaluator& ev, const OrderedTuple& t) {
    const std::size_t n = t.chord_count();
    std::vector<double> x(n);
    double prev = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        x[i] = ev(prev, t.t[i]);
        prev = t.t[i];
    }
    x[n - 1] = ev(prev, 1.0);
    return x;
}

Barycentric radial_project(const std::vector<double>& x) {
    double sum = 0.0;
    for (double v : x) {
        if (!(v >= 0.0))
            throw std::invalid_argument("radial_project: negative entry");
        sum += v;
    }
    if (sum == 0.0) throw zero_chord_vector{};
    std::vector<double> a(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) a[i] = x[i] / sum;
    Barycentric b;
    b.alpha = std::move(a);  // sums to 1 by construction, skip revalidation
    return b;
}

bool is_permutation(const std::vector<std::size_t>& tau) {
    const std::size_t n = tau.size();
    std::vector<bool> seen(n, false);
    for (std::size_t v : tau) {
        if (v < 1 || v > n || seen[v - 1]) return false;
        seen[v - 1] = true;
    }
    return n > 0;
}

bool is_cyclic_permutation(const std::vector<std::size_t>& tau) {
    if (!is_permutation(tau)) return false;
    // single orbit covering all of {1,...,N}
    std::size_t cur = 1, len = 0;
    do {
        cur = tau[cur - 1];
        ++len;
    } while (cur != 1 && len <= tau.size());
    return len == tau.size();
}

Barycentric phi_tau(const Barycentric& x, const std::vector<std::size_t>& tau) {
    if (tau.size() != x.alpha.size() || !is_permutation(tau))
        throw std::domain_error("phi_tau: tau is not a permutation of {1,...,N}");
    std::vector<double> out(x.alpha.size());
    for (std::size_t i = 0; i < tau.size(); ++i) out[tau[i] - 1] = x.alpha[i];
    Barycentric b;
    b.alpha = std::move(out);
    return b;
}

FacePattern face_pattern(const OrderedTuple& t, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("face_pattern: eps must be > 0");
    FacePattern f;
    const std::size_t n = t.chord_count();
    double prev = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double cur = (i == n) ? 1.0 : t.t[i - 1];
        if (std::abs(cur - prev) <= eps) f.zeros.insert(i);
        prev = cur;
    }
    return f;
}

namespace {

// Enumerate compositions (k_1,...,k_N) of m; keep only boundary points
// (some k_i = 0) and track the running minimum displacement.
void scan_boundary(std::size_t n, std::size_t m, std::vector<std::size_t>& k,
                   std::size_t pos, std::size_t remaining,
                   const std::vector<std::size_t>& tau,
                   const std::function<Barycentric(const Barycentric&)>& phi,
                   double& best) {
    if (pos + 1 == n) {
        k[pos] = remaining;
        if (std::find(k.begin(), k.end(), std::size_t{0}) == k.end()) return;
        std::vector<double> a(n);
        for (std::size_t i = 0; i < n; ++i)
            a[i] = static_cast<double>(k[i]) / static_cast<double>(m);
        Barycentric x;
        x.alpha = std::move(a);
        const Barycentric y = phi_tau(phi(x), tau);
        double disp = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            disp = std::max(disp, std::abs(y.alpha[i] - x.alpha[i]));
        best = std::min(best, disp);
        return;
    }
    for (std::size_t v = 0; v <= remaining; ++v) {
        k[pos] = v;
        scan_boundary(n, m, k, pos + 1, remaining - v, tau, phi, best);
    }
}

}  // namespace

double lemma_a_probe(std::size_t n_chords, const std::vector<std::size_t>& tau,
                     const std::function<Barycentric(const Barycentric&)>& phi,
                     std::size_t grid_density) {
    if (n_chords < 2) throw std::invalid_argument("lemma_a_probe: need N >= 2");
    if (tau.size() != n_chords || !is_cyclic_permutation(tau))
        throw std::domain_error("lemma_a_probe: tau must be a cyclic permutation");
    if (grid_density == 0) throw std::invalid_argument("lemma_a_probe: grid density must be > 0");
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> k(n_chords, 0);
    scan_boundary(n_chords, grid_density, k, 0, grid_density, tau, phi, best);
    return best;
}

}  // namespace equipart
