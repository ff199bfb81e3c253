// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "ltient/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

namespace ltient {

namespace {

constexpr double kTightestTol = 1e-13;

using Mask = std::uint32_t;

void require_exhaustive_size(const FiniteMetricSet &set, const char *who)
{
    if (set.size() > kMaxExhaustivePoints)
        throw std::invalid_argument(std::string(who) + ": exhaustive search is limited to " +
                                    std::to_string(kMaxExhaustivePoints) + " points, got " +
                                    std::to_string(set.size()));
}

// within[i]: closed "<= eps" neighbourhood of i; beyond[i]: "> eps" neighbours.
struct Graph {
    std::vector<Mask> within;
    std::vector<Mask> beyond;
};

Graph build_graph(const FiniteMetricSet &set, double eps)
{
    const std::size_t n = set.size();
    Graph g{std::vector<Mask>(n, 0), std::vector<Mask>(n, 0)};
    for (std::size_t i = 0; i < n; ++i) {
        g.within[i] |= Mask{1} << i;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (set.relation(i, j, eps) == Relation::Within) {
                g.within[i] |= Mask{1} << j;
                g.within[j] |= Mask{1} << i;
            } else {
                g.beyond[i] |= Mask{1} << j;
                g.beyond[j] |= Mask{1} << i;
            }
        }
    }
    return g;
}

std::vector<std::size_t> to_indices(Mask m)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; m != 0; ++i, m >>= 1)
        if (m & 1u)
            out.push_back(i);
    return out;
}

void max_clique(const std::vector<Mask> &adj, Mask chosen, Mask candidates, Mask &best)
{
    if (candidates == 0) {
        if (std::popcount(chosen) > std::popcount(best))
            best = chosen;
        return;
    }
    if (std::popcount(chosen) + std::popcount(candidates) <= std::popcount(best))
        return;
    const int v = std::countr_zero(candidates);
    const Mask bit = Mask{1} << v;
    max_clique(adj, chosen | bit, candidates & adj[static_cast<std::size_t>(v)], best);
    max_clique(adj, chosen, candidates & ~bit, best);
}

void min_dominating(const std::vector<Mask> &closed, Mask all, int max_cover, Mask chosen, Mask dominated,
                    Mask &best, int &best_size)
{
    const int size = std::popcount(chosen);
    if (dominated == all) {
        if (size < best_size) {
            best_size = size;
            best = chosen;
        }
        return;
    }
    const int missing = std::popcount(all & ~dominated);
    if (size + (missing + max_cover - 1) / max_cover >= best_size)
        return;
    // Some centre must dominate the lowest undominated point.
    const int u = std::countr_zero(all & ~dominated);
    for (Mask options = closed[static_cast<std::size_t>(u)]; options != 0; options &= options - 1) {
        const int v = std::countr_zero(options);
        min_dominating(closed, all, max_cover, chosen | (Mask{1} << v), dominated | closed[static_cast<std::size_t>(v)],
                       best, best_size);
    }
}

} // namespace

FiniteMetricSet::FiniteMetricSet(std::vector<ImpulseResponse> points, double tol)
    : points_(std::move(points)), tol_(tol)
{
    if (!(tol > 0.0))
        throw std::invalid_argument("FiniteMetricSet: tol must be positive");
    const std::size_t n = points_.size();
    distances_.assign(n * n, NormInterval{});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const NormInterval d = rho(points_[i], points_[j], tol_);
            distances_[i * n + j] = d;
            distances_[j * n + i] = d;
        }
}

Relation FiniteMetricSet::relation(std::size_t i, std::size_t j, double eps) const
{
    if (i == j)
        return Relation::Within;
    NormInterval d = distance(i, j);
    double tol = tol_;
    for (;;) {
        if (d.lower > eps)
            return Relation::Beyond;
        if (d.upper <= eps)
            return Relation::Within;
        if (tol <= kTightestTol)
            throw UncertainDecisionError("FiniteMetricSet: cannot certify rho(" + std::to_string(i) + ", " +
                                         std::to_string(j) + ") against eps=" + std::to_string(eps));
        tol = std::max(tol / 16.0, kTightestTol);
        try {
            d = rho(points_[i], points_[j], tol);
        } catch (const ConvergenceError &) {
            throw UncertainDecisionError("FiniteMetricSet: rho(" + std::to_string(i) + ", " + std::to_string(j) +
                                         ") not resolvable near eps=" + std::to_string(eps));
        }
    }
}

double FiniteMetricSet::diameter_upper() const noexcept
{
    double d = 0.0;
    for (const auto &iv : distances_)
        d = std::max(d, iv.upper);
    return d;
}

FiniteMetricSet discretize_class(const DecayClass &cls, std::size_t T, std::size_t levels, double tol)
{
    if (levels == 0)
        throw std::invalid_argument("discretize_class: levels must be positive");
    std::size_t count = 1;
    for (std::size_t t = 0; t <= T; ++t) {
        if (count > kMaxDiscretizedPoints / levels)
            throw std::invalid_argument("discretize_class: levels^(T+1) exceeds " +
                                        std::to_string(kMaxDiscretizedPoints));
        count *= levels;
    }

    std::vector<std::vector<double>> values(T + 1);
    for (std::size_t t = 0; t <= T; ++t) {
        const double e = envelope(cls, t);
        if (levels == 1) {
            values[t] = {0.0};
            continue;
        }
        for (std::size_t j = 0; j < levels; ++j) {
            // Pin the end points onto the envelope.
            const double v = j + 1 == levels ? e
                                             : -e + 2.0 * static_cast<double>(j) * e / static_cast<double>(levels - 1);
            values[t].push_back(v);
        }
    }

    std::vector<ImpulseResponse> points;
    points.reserve(count);
    MixedRadixIndex idx = MixedRadixIndex::zeros(std::vector<std::uint64_t>(T + 1, levels));
    do {
        std::vector<double> k(T + 1);
        for (std::size_t t = 0; t <= T; ++t)
            k[t] = values[t][idx.digit(t)];
        points.emplace_back(std::move(k));
    } while (idx.increment());
    return FiniteMetricSet(std::move(points), tol);
}

std::vector<std::size_t> greedy_maximal_packing(const FiniteMetricSet &set, double eps)
{
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const bool separated = std::all_of(kept.begin(), kept.end(),
                                           [&](std::size_t j) { return set.relation(i, j, eps) == Relation::Beyond; });
        if (separated)
            kept.push_back(i);
    }
    return kept;
}

std::vector<std::size_t> maximum_packing(const FiniteMetricSet &set, double eps)
{
    require_exhaustive_size(set, "maximum_packing");
    if (set.size() == 0)
        return {};
    const Graph g = build_graph(set, eps);
    const Mask all = (Mask{1} << set.size()) - 1;
    Mask best = 0;
    max_clique(g.beyond, 0, all, best);
    return to_indices(best);
}

std::size_t exact_packing_number(const FiniteMetricSet &set, double eps)
{
    return maximum_packing(set, eps).size();
}

std::vector<std::size_t> minimum_covering(const FiniteMetricSet &set, double eps)
{
    require_exhaustive_size(set, "minimum_covering");
    if (set.size() == 0)
        return {};
    const Graph g = build_graph(set, eps);
    const Mask all = (Mask{1} << set.size()) - 1;
    int max_cover = 1;
    for (Mask m : g.within)
        max_cover = std::max(max_cover, std::popcount(m));
    // Every point on its own is a valid (worst-case) covering.
    Mask best = all;
    int best_size = static_cast<int>(set.size());
    min_dominating(g.within, all, max_cover, 0, 0, best, best_size);
    return to_indices(best);
}

std::size_t exact_covering_number(const FiniteMetricSet &set, double eps)
{
    return minimum_covering(set, eps).size();
}

SandwichReport sandwich_check(const FiniteMetricSet &set, double eps)
{
    SandwichReport r;
    r.eps = eps;
    r.packing_2eps = exact_packing_number(set, 2.0 * eps);
    r.covering_eps = exact_covering_number(set, eps);
    r.packing_eps = exact_packing_number(set, eps);
    r.ok = r.packing_2eps <= r.covering_eps && r.covering_eps <= r.packing_eps;
    return r;
}

} // namespace ltient
