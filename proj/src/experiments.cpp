#include "coevo/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "coevo/analysis.hpp"

namespace coevo {

namespace {

const std::vector<NetworkKind> kAllNetworks = {NetworkKind::Complete, NetworkKind::ScaleFree, NetworkKind::Community};

std::vector<std::size_t> n_range(std::size_t lo, std::size_t hi, std::size_t stride) {
    std::vector<std::size_t> out;
    for (std::size_t n = lo; n <= hi; n += stride) out.push_back(n);
    return out;
}

auto cell_key(const Cell& c) { return std::make_tuple(static_cast<int>(c.network), c.n, c.p, c.epsilon, c.phi); }

struct ReplicateOutcome {
    bool stable = false;
    double T = 0.0;
    double m = 0.0;
};

}  // namespace

SweepSpec default_steps_spec(bool desk_scale) {
    SweepSpec s;
    s.n_values = n_range(10, 100, 10);
    s.epsilon_values = {0.5};
    s.phi_values = {0.1};
    s.p_values = {2, 3, 4};
    s.networks = kAllNetworks;
    s.replicates = desk_scale ? 20 : 100;
    return s;
}

SweepSpec default_clusters_spec(bool desk_scale) {
    SweepSpec s;
    s.n_values = n_range(10, desk_scale ? 50 : 100, 10);
    for (int k = 0; k <= 10; ++k) s.epsilon_values.push_back((30.0 + 2.0 * k) / 100.0);
    s.phi_values = {0.1};
    s.p_values = {2};
    s.networks = kAllNetworks;
    s.replicates = desk_scale ? 100 : 1500;
    return s;
}

std::vector<Cell> expand_grid(const SweepSpec& spec) {
    std::vector<Cell> cells;
    for (NetworkKind net : spec.networks)
        for (std::size_t n : spec.n_values)
            for (int p : spec.p_values)
                for (double eps : spec.epsilon_values)
                    for (double phi : spec.phi_values) {
                        SimConfig cfg;
                        cfg.n = n;
                        cfg.epsilon = eps;
                        cfg.phi = phi;
                        cfg.p = p;
                        cfg.network_kind = net;
                        validate_config(cfg);
                        cells.push_back({net, n, p, eps, phi});
                    }
    return cells;
}

std::uint64_t replicate_stream_id(const Cell& cell, std::size_t replicate) {
    std::uint64_t h = splitmix64(static_cast<std::uint64_t>(cell.network));
    h = hash_combine(h, cell.n);
    h = hash_combine(h, static_cast<std::uint64_t>(cell.p));
    h = hash_combine(h, std::bit_cast<std::uint64_t>(cell.epsilon));
    h = hash_combine(h, std::bit_cast<std::uint64_t>(cell.phi));
    return hash_combine(h, replicate);
}

std::vector<CellResult> run_sweep(const SweepSpec& spec, const ReplicateObserver& observer) {
    const std::vector<Cell> cells = expand_grid(spec);
    const std::size_t reps = spec.replicates;
    const std::size_t jobs = cells.size() * reps;
    std::vector<ReplicateOutcome> outcomes(jobs);

    auto work = [&](std::atomic<std::size_t>& next) {
        for (std::size_t job = next++; job < jobs; job = next++) {
            const Cell& c = cells[job / reps];
            SimConfig cfg;
            cfg.n = c.n;
            cfg.epsilon = c.epsilon;
            cfg.phi = c.phi;
            cfg.p = c.p;
            cfg.network_kind = c.network;
            cfg.seed = spec.base_seed;
            cfg.max_steps = spec.max_steps;
            const RunTrace trace = run(cfg, replicate_stream_id(c, job % reps));
            if (observer) observer(c, job % reps, trace);
            ReplicateOutcome& out = outcomes[job];
            if (trace.terminated == Termination::Stable) {
                const TraceSummary s = trace_stats(trace);
                out = {true, static_cast<double>(s.T), static_cast<double>(s.m)};
            }
        }
    };

    std::size_t threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(jobs, 1));
    std::atomic<std::size_t> next{0};
    if (threads <= 1) {
        work(next);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back([&] { work(next); });
    }

    std::vector<CellResult> results;
    results.reserve(cells.size());
    std::vector<double> Ts, ms;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        CellResult r;
        r.cell = cells[c];
        Ts.clear();
        ms.clear();
        for (std::size_t k = 0; k < reps; ++k) {
            const ReplicateOutcome& o = outcomes[c * reps + k];
            if (!o.stable) {
                ++r.cap_hits;
                continue;
            }
            Ts.push_back(o.T);
            ms.push_back(o.m);
        }
        r.replicates = Ts.size();
        const MeanStd t = mean_std(Ts);
        const MeanStd m = mean_std(ms);
        r.mean_T = t.mean;
        r.std_T = t.stddev;
        r.mean_m = m.mean;
        r.std_m = m.stddev;
        results.push_back(r);
    }
    return results;
}

std::vector<CellResult> sweep_steps(const SweepSpec& spec, const ReplicateObserver& observer) {
    return summarize(run_sweep(spec, observer));
}

std::vector<CellResult> sweep_clusters(const SweepSpec& spec, const ReplicateObserver& observer) {
    return summarize(run_sweep(spec, observer));
}

std::vector<CellResult> summarize(std::vector<CellResult> results) {
    std::stable_sort(results.begin(), results.end(),
                     [](const CellResult& a, const CellResult& b) { return cell_key(a.cell) < cell_key(b.cell); });
    return results;
}

MeanStd mean_std(const std::vector<double>& values) {
    if (values.empty()) return {std::nan(""), std::nan("")};
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = r;
        i = j + 1;
    }
    return rank;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("spearman: need two equal-length series");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / rx.size();
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / ry.size();
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace coevo
