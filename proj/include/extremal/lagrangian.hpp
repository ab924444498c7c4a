#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <future>
#include <numeric>
#include <optional>
#include <random>

#include "extremal/hypergraph.hpp"

namespace extremal {

constexpr std::uint64_t kDefaultSeed = 42;

/// Exact rational with int64 numerator/denominator, always reduced.
struct Fraction {
    long long num = 0;
    long long den = 1;

    Fraction() = default;
    Fraction(long long n, long long d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Fraction: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
};

/**
 * Nonnegative vertex weights.  Probability mode requires total == 1 up to
 * tolerance; subprobability mode only requires total <= 1.
 */
class WeightVector {
public:
    enum class Mode { probability, subprobability };

    WeightVector(std::vector<double> weights, Mode mode = Mode::probability, double tol = 1e-9)
        : w_(std::move(weights)), mode_(mode) {
        total_ = 0.0;
        for (double x : w_) {
            if (x < -tol) throw std::invalid_argument("WeightVector: negative weight");
            total_ += x;
        }
        if (mode_ == Mode::probability && std::abs(total_ - 1.0) > tol)
            throw std::invalid_argument("WeightVector: probability weights must sum to 1");
        if (mode_ == Mode::subprobability && total_ > 1.0 + tol)
            throw std::invalid_argument("WeightVector: weights must sum to at most 1");
    }

    static WeightVector uniform(int n) {
        if (n == 0) return WeightVector({}, Mode::subprobability);
        return WeightVector(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
    }

    double operator[](int v) const { return w_[static_cast<std::size_t>(v)]; }
    int size() const { return static_cast<int>(w_.size()); }
    double total() const { return total_; }
    Mode mode() const { return mode_; }
    const std::vector<double>& values() const { return w_; }

    double max_weight() const { return w_.empty() ? 0.0 : *std::max_element(w_.begin(), w_.end()); }

private:
    std::vector<double> w_;
    Mode mode_;
    double total_;
};

inline double l1_distance(const WeightVector& a, const WeightVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("l1_distance: size mismatch");
    double s = 0.0;
    for (int v = 0; v < a.size(); ++v) s += std::abs(a[v] - b[v]);
    return s;
}

/// Weighted edge density: sum over edges of the product of vertex weights.
inline double density(const HyperGraph& g, const WeightVector& mu) {
    if (mu.size() != g.vertex_count())
        throw std::invalid_argument("density: weights must cover the vertex set");
    double total = 0.0;
    for (const Edge& e : g.edges()) {
        double p = 1.0;
        for (Vertex v : e) p *= mu[v];
        total += p;
    }
    return total;
}

/// Weighted link density of a single vertex.
inline double vertex_density(const HyperGraph& g, const WeightVector& mu, Vertex u) {
    if (u < 0 || u >= g.vertex_count()) throw std::invalid_argument("vertex_density: bad vertex");
    if (mu.size() != g.vertex_count()) throw std::invalid_argument("vertex_density: size mismatch");
    double total = 0.0;
    for (int ei : g.incident_edges(u)) {
        double p = 1.0;
        for (Vertex v : g.edge(ei))
            if (v != u) p *= mu[v];
        total += p;
    }
    return total;
}

/// Weighted link density of a pair (empty product counts as 1 for r == 2).
inline double pair_density(const HyperGraph& g, const WeightVector& mu, Vertex u, Vertex v) {
    if (u == v) throw std::invalid_argument("pair_density: vertices must differ");
    if (u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count())
        throw std::invalid_argument("pair_density: bad vertex");
    if (mu.size() != g.vertex_count()) throw std::invalid_argument("pair_density: size mismatch");
    double total = 0.0;
    for (int ei : g.incident_edges(u)) {
        const Edge& e = g.edge(ei);
        if (!std::binary_search(e.begin(), e.end(), v)) continue;
        double p = 1.0;
        for (Vertex w : e)
            if (w != u && w != v) p *= mu[w];
        total += p;
    }
    return total;
}

struct LagrangianConfig {
    int restarts = 32;
    int max_iters = 100000;
    double tol = 1e-10;        // KKT residual target for the ascent
    bool certify = false;      // also run support enumeration when feasible
    int support_limit = 12;    // max n for the enumeration mode
    double cert_tol = 1e-8;    // agreement needed to call the value certified
    std::uint64_t seed = kDefaultSeed;
    int threads = 1;
};

struct LagrangianResult {
    double value = 0.0;
    std::vector<double> argmax;
    int restarts_used = 0;
    double kkt_residual = 0.0;
    std::vector<Vertex> support;
    bool converged = true;
    bool certified = false;
    std::optional<double> enumeration_value;
};

namespace detail {

struct AscentOutcome {
    double value = 0.0;
    std::vector<double> mu;
    double kkt = 0.0;
    bool converged = false;
};

/// Multiplicative ascent mu(v) <- mu(v) * lambda(v) / (r * lambda); the
/// update is value-monotone for this objective on the simplex.
inline AscentOutcome multiplicative_ascent(const HyperGraph& g, std::vector<double> mu,
                                           int max_iters, double tol) {
    const int n = g.vertex_count();
    const int r = g.uniformity();
    AscentOutcome out;
    std::vector<double> vd(static_cast<std::size_t>(n));
    for (int iter = 0; iter < max_iters; ++iter) {
        double lam = 0.0;
        std::fill(vd.begin(), vd.end(), 0.0);
        for (const Edge& e : g.edges()) {
            double p = 1.0;
            for (Vertex v : e) p *= mu[v];
            lam += p;
            if (p > 0.0) {
                for (Vertex v : e) vd[v] += p / mu[v];
            } else {
                // recompute partial products when some weight is zero
                for (Vertex v : e) {
                    double q = 1.0;
                    for (Vertex u : e)
                        if (u != v) q *= mu[u];
                    vd[v] += q;
                }
            }
        }
        double kkt = 0.0;
        for (int v = 0; v < n; ++v)
            if (mu[v] > 1e-12) kkt = std::max(kkt, std::abs(vd[v] - r * lam));
        if (lam <= 0.0) {
            out.value = lam;
            out.mu = mu;
            out.kkt = kkt;
            out.converged = true; // no mass on any edge; nothing to ascend
            return out;
        }
        if (kkt <= tol) {
            out.value = lam;
            out.mu = mu;
            out.kkt = kkt;
            out.converged = true;
            return out;
        }
        double sum = 0.0;
        for (int v = 0; v < n; ++v) {
            mu[v] *= vd[v] / (r * lam);
            sum += mu[v];
        }
        for (int v = 0; v < n; ++v) mu[v] /= sum;
    }
    // best effort: report the last state
    double lam = 0.0;
    std::fill(vd.begin(), vd.end(), 0.0);
    for (const Edge& e : g.edges()) {
        double p = 1.0;
        for (Vertex v : e) p *= mu[v];
        lam += p;
        for (Vertex v : e)
            if (mu[v] > 0) vd[v] += p / mu[v];
    }
    out.value = lam;
    out.mu = mu;
    out.kkt = 0.0;
    for (int v = 0; v < n; ++v)
        if (mu[v] > 1e-12) out.kkt = std::max(out.kkt, std::abs(vd[v] - g.uniformity() * lam));
    out.converged = false;
    return out;
}

inline std::vector<double> dirichlet_start(int n, std::mt19937_64& rng) {
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> mu(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double& x : mu) {
        x = exp1(rng) + 1e-12;
        sum += x;
    }
    for (double& x : mu) x /= sum;
    return mu;
}

inline std::vector<Vertex> support_of(const std::vector<double>& mu, double tol = 1e-9) {
    std::vector<Vertex> s;
    for (std::size_t v = 0; v < mu.size(); ++v)
        if (mu[v] > tol) s.push_back(static_cast<Vertex>(v));
    return s;
}

inline bool better(const AscentOutcome& a, const AscentOutcome& b) {
    if (a.value != b.value) return a.value > b.value;
    return support_of(a.mu) < support_of(b.mu);
}

/// Exact-style route: enumerate pair-covering supports and ascend on each.
inline std::optional<double> support_enumeration_value(const HyperGraph& g, int support_limit,
                                                       std::uint64_t seed) {
    const int n = g.vertex_count();
    if (n > support_limit) return std::nullopt;
    if (g.edge_count() == 0) return 0.0;
    double best = 0.0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<Vertex> sel;
        for (int v = 0; v < n; ++v)
            if (mask & (std::uint64_t{1} << v)) sel.push_back(v);
        std::vector<Edge> induced;
        for (const Edge& e : g.edges()) {
            bool inside = std::all_of(e.begin(), e.end(), [&](Vertex v) {
                return mask & (std::uint64_t{1} << v);
            });
            if (inside) induced.push_back(e);
        }
        if (induced.empty()) continue;
        HyperGraph sub(g.uniformity(), static_cast<int>(sel.size()), [&] {
            std::vector<int> relabel(static_cast<std::size_t>(n), -1);
            for (std::size_t i = 0; i < sel.size(); ++i) relabel[sel[i]] = static_cast<int>(i);
            std::vector<Edge> es;
            for (Edge e : induced) {
                for (Vertex& v : e) v = relabel[v];
                es.push_back(e);
            }
            return es;
        }());
        // an optimal weighting exists whose support covers pairs, so other
        // supports can be skipped
        if (!covers_pairs(sub)) continue;
        const int m = sub.vertex_count();
        std::vector<std::vector<double>> starts;
        starts.push_back(std::vector<double>(static_cast<std::size_t>(m), 1.0 / m));
        std::vector<double> tilt(static_cast<std::size_t>(m));
        double sum = 0.0;
        for (int v = 0; v < m; ++v) sum += (tilt[v] = 1.0 + 0.01 * (v % 3));
        for (double& x : tilt) x /= sum;
        starts.push_back(tilt);
        std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (mask + 1)));
        starts.push_back(dirichlet_start(m, rng));
        for (auto& s : starts) {
            auto run = multiplicative_ascent(sub, s, 200000, 1e-13);
            best = std::max(best, run.value);
        }
    }
    return best;
}

} // namespace detail

/**
 * Lagrangian of g: maximum weighted density over the probability simplex.
 * Multiplicative ascent from seeded Dirichlet restarts (restart 0 is the
 * uniform weighting); with certify set and the graph small enough, a
 * support-enumeration route cross-checks the value and the result is marked
 * certified when the two routes agree.
 */
inline LagrangianResult lagrangian(const HyperGraph& g, const LagrangianConfig& config = {}) {
    const int n = g.vertex_count();
    LagrangianResult result;
    if (n == 0 || g.edge_count() == 0) {
        result.value = 0.0;
        result.argmax.assign(static_cast<std::size_t>(n), n > 0 ? 1.0 / n : 0.0);
        result.certified = true;
        result.enumeration_value = 0.0;
        return result;
    }

    const int restarts = std::max(1, config.restarts);
    auto run_restart = [&](int idx) {
        std::vector<double> start;
        if (idx == 0) {
            start.assign(static_cast<std::size_t>(n), 1.0 / n);
        } else {
            std::mt19937_64 rng(config.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(idx));
            start = detail::dirichlet_start(n, rng);
        }
        return detail::multiplicative_ascent(g, std::move(start), config.max_iters, config.tol);
    };

    std::vector<detail::AscentOutcome> outcomes(static_cast<std::size_t>(restarts));
    if (config.threads > 1) {
        std::vector<std::future<void>> jobs;
        std::atomic<int> next{0};
        int workers = std::min(config.threads, restarts);
        for (int w = 0; w < workers; ++w)
            jobs.push_back(std::async(std::launch::async, [&] {
                for (int i = next.fetch_add(1); i < restarts; i = next.fetch_add(1))
                    outcomes[static_cast<std::size_t>(i)] = run_restart(i);
            }));
        for (auto& j : jobs) j.get();
    } else {
        for (int i = 0; i < restarts; ++i) outcomes[static_cast<std::size_t>(i)] = run_restart(i);
    }

    // deterministic selection regardless of evaluation order
    const detail::AscentOutcome* best = &outcomes[0];
    for (const auto& o : outcomes)
        if (detail::better(o, *best)) best = &o;

    result.value = best->value;
    result.argmax = best->mu;
    result.kkt_residual = best->kkt;
    result.restarts_used = restarts;
    result.support = detail::support_of(best->mu);
    result.converged = std::all_of(outcomes.begin(), outcomes.end(),
                                   [](const detail::AscentOutcome& o) { return o.converged; });

    if (config.certify) {
        auto enum_value = detail::support_enumeration_value(g, config.support_limit, config.seed);
        if (enum_value) {
            result.enumeration_value = enum_value;
            result.certified = std::abs(*enum_value - result.value) <= config.cert_tol;
            if (*enum_value > result.value) result.value = *enum_value;
        }
    }
    return result;
}

/// Normalized edge density of the complete r-graph on t vertices: C(t,r)/t^r.
inline Fraction e_norm(int t, int r) {
    if (t < r || r < 2) throw std::invalid_argument("e_norm: need t >= r >= 2");
    long long den = 1;
    for (int i = 0; i < r; ++i) den *= t;
    return Fraction(binomial(t, r), den);
}

/// Normalized vertex degree of the complete r-graph: C(t-1,r-1)/t^(r-1).
inline Fraction d_norm(int t, int r) {
    if (t < r || r < 2) throw std::invalid_argument("d_norm: need t >= r >= 2");
    long long den = 1;
    for (int i = 0; i < r - 1; ++i) den *= t;
    return Fraction(binomial(t - 1, r - 1), den);
}

/**
 * Comparison curve f_r(x) = C(x+r-3, r) / (x+r-3)^r * (t-2)/(x-2), with the
 * binomial extended to real x via the falling-factorial product.  At x == t
 * this equals the Lagrangian of the complete r-graph on t+r-3 vertices.
 */
inline double fcurve(int r, int t, double x) {
    if (r < 2) throw std::invalid_argument("fcurve: need r >= 2");
    if (!(x > 2.0)) throw std::invalid_argument("fcurve: need x > 2");
    double y = x + r - 3.0;
    double binom = 1.0;
    for (int i = 0; i < r; ++i) binom *= (y - i) / (i + 1.0);
    return binom / std::pow(y, r) * (t - 2.0) / (x - 2.0);
}

struct MonotoneReport {
    std::vector<std::pair<double, double>> grid; // (x, f(x))
    std::optional<double> threshold;             // smallest grid x with all later diffs negative
};

/// Tabulates f on [x_lo, x_hi] and locates the monotone-decreasing tail.
inline MonotoneReport monotone_threshold(int r, int t, double x_lo, double x_hi, double step) {
    if (step <= 0) throw std::invalid_argument("monotone_threshold: step must be positive");
    if (!(x_lo > 2.0)) throw std::invalid_argument("monotone_threshold: need x_lo > 2");
    MonotoneReport report;
    for (double x = x_lo; x <= x_hi + 1e-12; x += step)
        report.grid.emplace_back(x, fcurve(r, t, x));
    if (report.grid.size() < 2) return report;
    std::size_t tail = report.grid.size() - 1;
    while (tail > 0 && report.grid[tail].second < report.grid[tail - 1].second) --tail;
    if (tail < report.grid.size() - 1 || report.grid.back().second < report.grid[tail].second)
        report.threshold = report.grid[tail].first;
    return report;
}

struct VertexDensityProbeReport {
    double eps = 0.0;
    double delta = 0.0;
    double lambda_graph = 0.0;   // certified Lagrangian when available
    double lambda_mu = 0.0;
    double vertex_density_u = 0.0;
    bool premise = false;
    bool conclusion = false;
    bool inconclusive = false;   // Lagrangian could not be certified
    bool violation = false;      // premise holds but conclusion fails
};

/**
 * Falsification probe for the vertex-density lower bound: with
 * delta = (eps^3 - eps^4)/r, whenever lambda(g,mu) >= lambda(g) - delta and
 * mu(u) >= eps, the link density at u should be at least r*lambda(g) - eps.
 */
inline VertexDensityProbeReport vertex_density_probe(const HyperGraph& g, const WeightVector& mu,
                                                     Vertex u, double eps,
                                                     LagrangianConfig config = {}) {
    if (mu.mode() != WeightVector::Mode::probability)
        throw std::invalid_argument("vertex_density_probe: probability weights required");
    if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("vertex_density_probe: need 0 < eps < 1");
    if (mu[u] < eps) throw std::invalid_argument("vertex_density_probe: mu(u) below eps");
    VertexDensityProbeReport report;
    report.eps = eps;
    report.delta = (eps * eps * eps - eps * eps * eps * eps) / g.uniformity();
    config.certify = true;
    auto lag = lagrangian(g, config);
    report.lambda_graph = lag.value;
    report.inconclusive = !lag.certified;
    report.lambda_mu = density(g, mu);
    report.vertex_density_u = vertex_density(g, mu, u);
    report.premise = report.lambda_mu >= report.lambda_graph - report.delta;
    report.conclusion =
        report.vertex_density_u >= g.uniformity() * report.lambda_graph - eps - 1e-12;
    report.violation = report.premise && !report.conclusion && !report.inconclusive;
    return report;
}

} // namespace extremal
