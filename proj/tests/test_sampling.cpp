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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <numeric>

#include "mbi/errors.hpp"
#include "mbi/sampling.hpp"
#include "oracles.hpp"

using namespace mbi;

namespace {

const UnitaryMatrix kBs = balanced_beamsplitter();

PortList first_ports(int n)
{
    PortList p(n);
    std::iota(p.begin(), p.end(), 1);
    return p;
}

std::map<OccupationVector, double> histogram(const SampleBatch& batch)
{
    std::map<OccupationVector, double> h;
    for (const auto& s : batch.samples) h[s] += 1.0;
    return h;
}

/// Pearson statistic of a batch against exact probabilities.
double chi_square(const SampleBatch& batch, const OutputDistribution& dist)
{
    const auto h = histogram(batch);
    const double n = static_cast<double>(batch.count());
    double chi2 = 0.0;
    for (const auto& [occ, p] : dist.entries) {
        if (p <= 0.0) continue;
        const auto it = h.find(occ);
        const double observed = it == h.end() ? 0.0 : it->second;
        chi2 += (observed - n * p) * (observed - n * p) / (n * p);
    }
    return chi2;
}

} // namespace

TEST_CASE("occupation enumeration order and counts")
{
    std::vector<std::vector<int>> seen;
    for_each_occupation(3, 2, false, [&](const OccupationVector& v) { seen.push_back(v.counts()); });
    CHECK(seen == std::vector<std::vector<int>>{{0, 0, 2}, {0, 1, 1}, {0, 2, 0}, {1, 0, 1}, {1, 1, 0}, {2, 0, 0}});
    int count = 0;
    for_each_occupation(6, 3, true, [&](const OccupationVector& v) {
        CHECK(v.collision_free());
        ++count;
    });
    CHECK(count == 20);
    count = 0;
    for_each_occupation(5, 4, false, [&](const OccupationVector&) { ++count; });
    CHECK(count == 70);
}

TEST_CASE("beamsplitter distributions")
{
    const auto boson = enumerate_distribution(kBs, {1, 2}, ParticleClass::Boson);
    CHECK(boson.entries.size() == 3);
    CHECK(boson.probability(OccupationVector({2, 0})) == doctest::Approx(0.5));
    CHECK(std::abs(boson.probability(OccupationVector({1, 1}))) < 1e-15);
    CHECK(boson.probability(OccupationVector({0, 2})) == doctest::Approx(0.5));

    const auto fermion = enumerate_distribution(kBs, {1, 2}, ParticleClass::Fermion);
    CHECK(fermion.entries.size() == 1);
    CHECK(fermion.probability(OccupationVector({1, 1})) == doctest::Approx(1.0));
    CHECK(fermion.probability(OccupationVector({2, 0})) == 0.0);

    const auto dist = enumerate_distribution(kBs, {1, 2}, ParticleClass::Distinguishable);
    CHECK(dist.probability(OccupationVector({2, 0})) == doctest::Approx(0.25));
    CHECK(dist.probability(OccupationVector({1, 1})) == doctest::Approx(0.5));
    CHECK(dist.probability(OccupationVector({0, 2})) == doctest::Approx(0.25));
}

TEST_CASE("enumerated distributions are normalized and match the fock oracle")
{
    std::uint64_t seed = 100;
    for (int m = 2; m <= 6; ++m)
        for (int n = 1; n <= std::min(m, 3); ++n) {
            const UnitaryMatrix u = haar_random_unitary(m, seed++);
            for (ParticleClass cls : {ParticleClass::Boson, ParticleClass::Fermion, ParticleClass::Distinguishable}) {
                const auto d = enumerate_distribution(u, first_ports(n), cls);
                CHECK(std::abs(d.total_mass - 1.0) < 1e-9);
                CHECK(std::is_sorted(d.entries.begin(), d.entries.end(),
                                     [](const auto& a, const auto& b) { return a.first < b.first; }));
                const auto oracle_dist = oracle::fock_distribution(u, first_ports(n), cls);
                for (const auto& [occ, p] : d.entries)
                    CHECK(std::abs(p - oracle::probability_of(oracle_dist, occ.counts())) < 1e-12);
            }
        }
}

TEST_CASE("enumeration with a gram matrix is collision free")
{
    const UnitaryMatrix u = haar_random_unitary(5, 4);
    const GramMatrix s = gram_from_wave_packets(WavePacketTrain::equidistant(3, 0.5));
    const auto d = enumerate_distribution(u, {1, 2, 3}, ParticleClass::Boson, s);
    CHECK(d.entries.size() == 10);
    CHECK(d.total_mass < 1.0);
    const auto f = enumerate_distribution(u, {1, 2, 3}, ParticleClass::Fermion, s);
    CHECK(f.total_mass <= 1.0 + 1e-12);
    CHECK_THROWS_AS(enumerate_distribution(u, {1, 2, 3}, ParticleClass::Distinguishable, s), PreconditionError);
}

TEST_CASE("enumeration errors")
{
    CHECK_THROWS_AS(enumerate_distribution(kBs, {1, 2}, ParticleClass::ThermalBoson), PreconditionError);
    const UnitaryMatrix big{ComplexMatrix::Identity(60, 60)};
    CHECK_THROWS_AS(enumerate_distribution(big, first_ports(8), ParticleClass::Boson), SizeLimitError);
}

TEST_CASE("exact sampler")
{
    const auto fermion = enumerate_distribution(kBs, {1, 2}, ParticleClass::Fermion);
    for (const auto& s : sample_exact(fermion, 1, 100).samples) CHECK(s == OccupationVector({1, 1}));

    const auto boson = enumerate_distribution(kBs, {1, 2}, ParticleClass::Boson);
    const auto hb = histogram(sample_exact(boson, 2, 10000));
    CHECK(hb.count(OccupationVector({1, 1})) == 0);

    const auto dist = enumerate_distribution(kBs, {1, 2}, ParticleClass::Distinguishable);
    const std::size_t count = 100000;
    const auto hd = histogram(sample_exact(dist, 3, count));
    const double freq = hd.at(OccupationVector({1, 1})) / count;
    CHECK(std::abs(freq - 0.5) < 5 * std::sqrt(0.25 / count));

    const SampleBatch a = sample_exact(dist, 42, 1000);
    const SampleBatch b = sample_exact(dist, 42, 1000);
    CHECK(a.samples == b.samples);
    CHECK_FALSE(sample_exact(dist, 43, 1000).samples == a.samples);

    OutputDistribution broken = dist;
    broken.total_mass = 0.5;
    CHECK_THROWS_AS(sample_exact(broken, 1, 10), PreconditionError);
}

TEST_CASE("direct distinguishable sampler")
{
    const UnitaryMatrix id{ComplexMatrix::Identity(4, 4)};
    for (const auto& s : sample_distinguishable_direct(id, {2, 4}, 1, 50).samples)
        CHECK(s == OccupationVector({0, 1, 0, 1}));

    const UnitaryMatrix u = haar_random_unitary(5, 21);
    const std::size_t count = 100000;
    const SampleBatch batch = sample_distinguishable_direct(u, {1, 2, 4}, 5, count);
    for (int o = 1; o <= 5; ++o) {
        double mean = 0.0, sq = 0.0;
        for (const auto& s : batch.samples) {
            mean += s[o - 1];
            sq += s[o - 1] * s[o - 1];
        }
        mean /= count;
        const double se = std::sqrt((sq / count - mean * mean) / count);
        CHECK(std::abs(mean - expected_number(u, {1, 2, 4}, o)) < 5 * se);
    }
    CHECK(sample_distinguishable_direct(u, {1, 2}, 9, 100).samples ==
          sample_distinguishable_direct(u, {1, 2}, 9, 100).samples);
}

TEST_CASE("both samplers fit the exact distinguishable distribution")
{
    // m = 3, n = 2: six events, five degrees of freedom; chi2 < 20.5 is the
    // 0.1% critical value
    const UnitaryMatrix u = haar_random_unitary(3, 8);
    const auto exact = enumerate_distribution(u, {1, 2}, ParticleClass::Distinguishable);
    CHECK(chi_square(sample_distinguishable_direct(u, {1, 2}, 77, 50000), exact) < 20.5);
    CHECK(chi_square(sample_exact(exact, 78, 50000), exact) < 20.5);
}

TEST_CASE("correlation estimator")
{
    SampleBatch same;
    same.m = 3;
    same.n = 2;
    same.samples.assign(10, OccupationVector({1, 0, 1}));
    const auto zero = estimate_correlations(same, 3);
    for (double v : zero.values()) CHECK(v == 0.0);

    const auto boson = enumerate_distribution(kBs, {1, 2}, ParticleClass::Boson);
    const double count = 100000;
    const auto est = estimate_correlations_with_errors(sample_exact(boson, 9, 100000), 2);
    // every sample is (2,0) or (0,2), so C_hat = -1 + delta^2 with
    // delta = mean(n_1) - 1 of standard deviation 1/sqrt(count)
    CHECK(std::abs(est.dataset.values()[0] + 1.0) < 25.0 / count);

    SampleBatch one;
    one.m = 2;
    one.n = 1;
    one.samples.assign(1, OccupationVector({1, 0}));
    CHECK_THROWS_AS(estimate_correlations(one, 2), PreconditionError);
    CHECK_THROWS_AS(estimate_correlations(same, 4), DimensionError);
}

TEST_CASE("estimated correlations agree with the closed form")
{
    const UnitaryMatrix u = haar_random_unitary(6, 31);
    const PortList in{1, 3, 5};
    const auto exact = correlation_dataset(u, in, ParticleClass::Distinguishable);
    const auto est = estimate_correlations_with_errors(sample_distinguishable_direct(u, in, 32, 100000), 6);
    for (std::size_t k = 0; k < exact.size(); ++k)
        CHECK(std::abs(est.dataset.values()[k] - exact.values()[k]) < 5 * est.standard_errors[k]);
}

TEST_CASE("standard errors scale as one over root count")
{
    const UnitaryMatrix u = haar_random_unitary(4, 41);
    const auto small = estimate_correlations_with_errors(sample_distinguishable_direct(u, {1, 2}, 1, 20000), 4);
    const auto large = estimate_correlations_with_errors(sample_distinguishable_direct(u, {1, 2}, 2, 80000), 4);
    for (std::size_t k = 0; k < small.standard_errors.size(); ++k)
        CHECK(small.standard_errors[k] / large.standard_errors[k] == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("classification")
{
    const auto points = prediction_points(50, 8);
    CHECK(points.size() == 4);
    const SignaturePoint fermion = *std::find_if(points.begin(), points.end(),
                                                 [](const auto& p) { return p.cls == ParticleClass::Fermion; });
    const Classification c = classify(fermion.nm, fermion.cv, points);
    CHECK(c.label == ParticleClass::Fermion);
    CHECK(c.distances.at(ParticleClass::Fermion) == 0.0);
    CHECK_FALSE(c.tie);

    const auto d = correlation_dataset(haar_random_unitary(50, 2026), first_ports(8), ParticleClass::Boson);
    CHECK(classify(summary(d), 50, 8).label == ParticleClass::Boson);

    // equidistant from two points: the earlier class in the fixed order wins
    const std::vector<SignaturePoint> two{{ParticleClass::Fermion, 1.0, 0.0}, {ParticleClass::Boson, -1.0, 0.0}};
    const Classification tie = classify(0.0, 0.0, two);
    CHECK(tie.tie);
    CHECK(tie.label == ParticleClass::Boson);

    MomentSummary undefined;
    CHECK_THROWS_AS(classify(undefined, 50, 8), PreconditionError);
    CHECK_THROWS_AS(classify(0.0, 0.0, {}), PreconditionError);
    // fermions filling all modes have no CV and drop out of the reference set
    CHECK(prediction_points(4, 4).size() == 2);
}

TEST_CASE("classification is invariant under common rescaling")
{
    const auto points = prediction_points(20, 5);
    for (double scale : {0.01, 3.0, 1e4}) {
        std::vector<SignaturePoint> scaled = points;
        for (auto& p : scaled) {
            p.nm *= scale;
            p.cv *= scale;
        }
        for (double nm : {-1.5, -0.9, 0.2, 0.6})
            for (double cv : {-1.0, -0.3, 0.5, 1.0})
                CHECK(classify(nm, cv, points).label == classify(nm * scale, cv * scale, scaled).label);
    }
}
