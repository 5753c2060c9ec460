/**
 * Copyright 2026 The mbi Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mbi/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mbi/errors.hpp"
#include "mbi/parallel.hpp"
#include "mbi/rng.hpp"

namespace mbi {

double OutputDistribution::probability(const OccupationVector& occupation) const
{
    auto it = std::lower_bound(entries.begin(), entries.end(), occupation,
                               [](const auto& entry, const OccupationVector& key) { return entry.first < key; });
    return (it != entries.end() && it->first == occupation) ? it->second : 0.0;
}

OutputDistribution enumerate_distribution(const UnitaryMatrix& u, const PortList& inputs, ParticleClass cls,
                                          const std::optional<GramMatrix>& gram)
{
    if (cls == ParticleClass::ThermalBoson)
        throw PreconditionError("enumerate_distribution: thermal states have no number-state distribution");
    if (gram && cls == ParticleClass::Distinguishable)
        throw PreconditionError("enumerate_distribution: a Gram matrix requires boson or fermion class");
    detail::check_inputs(u, inputs);
    const int m = u.modes();
    const int n = static_cast<int>(inputs.size());
    const bool collision_free = gram.has_value() || cls == ParticleClass::Fermion;
    const double size = collision_free ? binomial(m, n) : binomial(m + n - 1, n);
    if (size > kEnumerationLimit) {
        std::ostringstream msg;
        msg << "enumerate_distribution: " << size << " output events exceed the limit " << kEnumerationLimit;
        throw SizeLimitError(msg.str());
    }

    std::vector<OccupationVector> events;
    events.reserve(static_cast<std::size_t>(size));
    for_each_occupation(m, n, collision_free, [&](OccupationVector v) { events.push_back(std::move(v)); });

    const auto probabilities = parallel_map(events.size(), [&](std::size_t e) {
        const PortList outputs = events[e].to_ports();
        return gram ? transition_probability_partial(u, inputs, outputs, *gram, cls)
                    : transition_probability(u, inputs, outputs, cls);
    });

    OutputDistribution dist;
    dist.m = m;
    dist.n = n;
    dist.cls = cls;
    dist.entries.reserve(events.size());
    for (std::size_t e = 0; e < events.size(); ++e) {
        dist.total_mass += probabilities[e];
        dist.entries.emplace_back(std::move(events[e]), probabilities[e]);
    }
    if (!gram && std::abs(dist.total_mass - 1.0) > kNormalizationTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "enumerate_distribution: total mass " << dist.total_mass << " differs from 1";
        throw NumericalError(msg.str());
    }
    return dist;
}

SampleBatch sample_exact(const OutputDistribution& dist, std::uint64_t seed, std::size_t count)
{
    if (dist.entries.empty() || std::abs(dist.total_mass - 1.0) > kNormalizationTolerance)
        throw PreconditionError("sample_exact: distribution is not normalized");
    std::vector<double> cumulative(dist.entries.size());
    double running = 0.0;
    for (std::size_t e = 0; e < dist.entries.size(); ++e) {
        running += dist.entries[e].second;
        cumulative[e] = running;
    }
    // last event with non-zero weight absorbs rounding at the top of the CDF
    std::size_t last = dist.entries.size() - 1;
    while (last > 0 && dist.entries[last].second <= 0.0) --last;

    SampleBatch batch;
    batch.seed = seed;
    batch.m = dist.m;
    batch.n = dist.n;
    batch.samples = parallel_map(count, [&](std::size_t s) {
        SplitMix64 rng(substream_seed(seed, s));
        const double target = rng.uniform() * running;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
        const auto index = std::min(static_cast<std::size_t>(it - cumulative.begin()), last);
        return dist.entries[index].first;
    });
    return batch;
}

SampleBatch sample_distinguishable_direct(const UnitaryMatrix& u, const PortList& inputs, std::uint64_t seed,
                                          std::size_t count)
{
    detail::check_inputs(u, inputs);
    const int m = u.modes();
    std::vector<std::vector<double>> cumulative(inputs.size(), std::vector<double>(m));
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        double running = 0.0;
        for (int o = 0; o < m; ++o) {
            running += std::norm(u(o, inputs[k] - 1));
            cumulative[k][o] = running;
        }
    }

    SampleBatch batch;
    batch.seed = seed;
    batch.m = m;
    batch.n = static_cast<int>(inputs.size());
    batch.samples = parallel_map(count, [&](std::size_t s) {
        SplitMix64 rng(substream_seed(seed, s));
        std::vector<int> counts(m, 0);
        for (const auto& cdf : cumulative) {
            const double target = rng.uniform() * cdf.back();
            auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
            ++counts[std::min(static_cast<int>(it - cdf.begin()), m - 1)];
        }
        return OccupationVector(std::move(counts));
    });
    return batch;
}

CorrelationEstimate estimate_correlations_with_errors(const SampleBatch& batch, int m)
{
    const std::size_t count = batch.count();
    if (count < 2) throw PreconditionError("estimate_correlations: need at least 2 samples, got " + std::to_string(count));
    for (const auto& s : batch.samples)
        if (s.modes() != m) throw DimensionError("estimate_correlations: sample has wrong number of modes");

    const double total = static_cast<double>(count);
    std::vector<double> mean(m, 0.0);
    for (const auto& s : batch.samples)
        for (int o = 0; o < m; ++o) mean[o] += s[o];
    for (double& v : mean) v /= total;

    const std::size_t pairs = static_cast<std::size_t>(m) * (m - 1) / 2;
    std::vector<double> sum(pairs, 0.0);
    std::vector<double> sum_sq(pairs, 0.0);
    std::vector<double> centered(m);
    for (const auto& s : batch.samples) {
        for (int o = 0; o < m; ++o) centered[o] = s[o] - mean[o];
        std::size_t idx = 0;
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b, ++idx) {
                const double x = centered[a] * centered[b];
                sum[idx] += x;
                sum_sq[idx] += x * x;
            }
    }
    std::vector<double> values(pairs);
    std::vector<double> errors(pairs);
    for (std::size_t idx = 0; idx < pairs; ++idx) {
        values[idx] = sum[idx] / total;
        const double variance = std::max(0.0, (sum_sq[idx] - total * values[idx] * values[idx]) / (total - 1.0));
        errors[idx] = std::sqrt(variance / total);
    }
    return CorrelationEstimate{CorrelationDataset(m, batch.n, std::move(values)), std::move(errors)};
}

CorrelationDataset estimate_correlations(const SampleBatch& batch, int m)
{
    return estimate_correlations_with_errors(batch, m).dataset;
}

std::vector<SignaturePoint> prediction_points(int m, int n)
{
    std::vector<SignaturePoint> points;
    for (ParticleClass cls : {ParticleClass::Boson, ParticleClass::ThermalBoson, ParticleClass::Fermion,
                              ParticleClass::Distinguishable}) {
        const RmtPrediction p = rmt_prediction(m, n, cls);
        if (p.cv) points.push_back(SignaturePoint{cls, p.nm, *p.cv});
    }
    return points;
}

Classification classify(double nm, double cv, const std::vector<SignaturePoint>& predictions)
{
    if (predictions.empty()) throw PreconditionError("classify: no prediction points");
    // position in the fixed order Boson, Thermal, Fermion, Distinguishable
    const auto rank = [](ParticleClass cls) {
        switch (cls) {
        case ParticleClass::Boson: return 0;
        case ParticleClass::ThermalBoson: return 1;
        case ParticleClass::Fermion: return 2;
        case ParticleClass::Distinguishable: return 3;
        }
        return 4;
    };
    Classification out;
    double best = 0.0;
    bool first = true;
    for (const auto& p : predictions) {
        const double distance = std::hypot(nm - p.nm, cv - p.cv);
        out.distances[p.cls] = distance;
        if (first || distance < best || (distance == best && rank(p.cls) < rank(out.label))) {
            best = distance;
            out.label = p.cls;
            first = false;
        }
    }
    for (const auto& [cls, distance] : out.distances)
        if (cls != out.label && distance == best) out.tie = true;
    return out;
}

Classification classify(const MomentSummary& summary, int m, int n)
{
    if (!summary.cv) throw PreconditionError("classification refused: CV undefined because m1 vanishes");
    return classify(summary.nm, *summary.cv, prediction_points(m, n));
}

} // namespace mbi
