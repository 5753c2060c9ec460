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

#ifndef MBI_SAMPLING_HPP
#define MBI_SAMPLING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mbi/correlations.hpp"
#include "mbi/interference.hpp"
#include "mbi/matrix_functions.hpp"

namespace mbi {

inline constexpr double kEnumerationLimit = 1e7;
inline constexpr double kNormalizationTolerance = 1e-9;

struct OutputDistribution {
    int m = 0;
    int n = 0;
    ParticleClass cls = ParticleClass::Boson;
    /// Sorted by occupation vector, ascending lexicographic.
    std::vector<std::pair<OccupationVector, double>> entries;
    double total_mass = 0.0;

    /// Probability of one occupation vector, 0 if not enumerated.
    double probability(const OccupationVector& occupation) const;
};

struct SampleBatch {
    std::uint64_t seed = 0;
    int m = 0;
    int n = 0;
    std::vector<OccupationVector> samples;

    std::size_t count() const noexcept { return samples.size(); }
};

/// Plug-in correlation estimates with influence-function standard errors,
/// both in CorrelationDataset pair order.
struct CorrelationEstimate {
    CorrelationDataset dataset;
    std::vector<double> standard_errors;
};

struct Classification {
    ParticleClass label = ParticleClass::Boson;
    std::map<ParticleClass, double> distances;
    /// Another class lies at the same minimal distance.
    bool tie = false;
};

/// A point of the (NM, CV) plane attached to a class.
struct SignaturePoint {
    ParticleClass cls;
    double nm;
    double cv;
};

/// All output events and their exact probabilities. Boson and
/// distinguishable enumerate every multiset, fermions every set. With a
/// Gram matrix only collision-free events are enumerated, so bosonic
/// total_mass may fall below 1.
OutputDistribution enumerate_distribution(const UnitaryMatrix& u, const PortList& inputs, ParticleClass cls,
                                          const std::optional<GramMatrix>& gram = std::nullopt);

/// Visits every occupation vector of n particles in m modes in ascending
/// lexicographic order (collision-free ones only when requested).
template <class Visitor>
void for_each_occupation(int m, int n, bool collision_free, Visitor&& visit);

/// Inverse-CDF draws; sample s uses the substream substream_seed(seed, s).
SampleBatch sample_exact(const OutputDistribution& dist, std::uint64_t seed, std::size_t count);

/// Routes each particle independently to output k with probability
/// |U_{k i_j}|^2.
SampleBatch sample_distinguishable_direct(const UnitaryMatrix& u, const PortList& inputs, std::uint64_t seed,
                                          std::size_t count);

/// C_hat = mean(n1 n2) - mean(n1) mean(n2); biased by O(1/count).
CorrelationDataset estimate_correlations(const SampleBatch& batch, int m);
CorrelationEstimate estimate_correlations_with_errors(const SampleBatch& batch, int m);

/// The four RMT prediction points at (m, n); classes with undefined CV are
/// left out.
std::vector<SignaturePoint> prediction_points(int m, int n);

/// Nearest prediction in the Euclidean (NM, CV) plane. Ties go to the
/// first class in the order Boson, Thermal, Fermion, Distinguishable.
Classification classify(const MomentSummary& summary, int m, int n);
Classification classify(double nm, double cv, const std::vector<SignaturePoint>& predictions);

// ---------------------------------------------------------------------------

template <class Visitor>
void for_each_occupation(int m, int n, bool collision_free, Visitor&& visit)
{
    std::vector<int> counts(m, 0);
    // depth-first over ports, smallest count first, which yields ascending
    // lexicographic order
    auto recurse = [&](auto&& self, int port, int remaining) -> void {
        if (port == m - 1) {
            if (collision_free && remaining > 1) return;
            counts[port] = remaining;
            visit(OccupationVector(counts));
            return;
        }
        const int cap = collision_free ? std::min(remaining, 1) : remaining;
        const int floor_count = std::max(0, remaining - (collision_free ? (m - 1 - port) : remaining));
        for (int c = floor_count; c <= cap; ++c) {
            counts[port] = c;
            self(self, port + 1, remaining - c);
        }
        counts[port] = 0;
    };
    if (m < 1) return;
    recurse(recurse, 0, n);
}

} // namespace mbi

#endif
