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

#include "mbi/correlations.hpp"

#include <cmath>
#include <sstream>

#include "mbi/errors.hpp"

namespace mbi {

CorrelationDataset::CorrelationDataset(int m, int n, std::vector<double> values, std::optional<ParticleClass> cls,
                                       std::optional<GramMatrix> gram)
    : m_(m), n_(n), values_(std::move(values)), cls_(cls), gram_(std::move(gram))
{
    if (m < 1) throw DimensionError("correlation dataset needs m >= 1");
    if (n < 0) throw DimensionError("correlation dataset needs n >= 0");
    const auto expected = static_cast<std::size_t>(m) * static_cast<std::size_t>(m - 1) / 2;
    if (values_.size() != expected) {
        throw DimensionError("correlation dataset for m = " + std::to_string(m) + " needs " +
                             std::to_string(expected) + " entries, got " + std::to_string(values_.size()));
    }
    if (gram_ && gram_->size() != n) throw DimensionError("correlation dataset: Gram matrix size differs from n");
    if (!cls_) return;
    for (double v : values_) {
        const bool bad = (*cls_ == ParticleClass::ThermalBoson) ? v < -1e-12
                         : (*cls_ == ParticleClass::Boson)      ? false
                                                                : v > 1e-12;
        if (bad) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "correlation dataset: " << to_string(*cls_) << " entry " << v << " violates its sign constraint";
            throw NumericalError(msg.str());
        }
    }
}

std::size_t CorrelationDataset::pair_index(int m, int o1, int o2)
{
    detail::check_port(o1, m, "output");
    detail::check_port(o2, m, "output");
    if (o1 == o2) throw RangeError("correlation pair needs o1 != o2");
    if (o1 > o2) std::swap(o1, o2);
    // pairs (a, b) with a < o1 come first: sum_{a < o1} (m - a)
    const auto a = static_cast<std::size_t>(o1 - 1);
    const auto mm = static_cast<std::size_t>(m);
    return a * mm - a * (a + 1) / 2 + static_cast<std::size_t>(o2 - o1 - 1);
}

double CorrelationDataset::at(int o1, int o2) const
{
    return values_[pair_index(m_, o1, o2)];
}

// ---------------------------------------------------------------------------

namespace {

struct PairTerms {
    double common = 0.0; // sum_k |U_{o1 i_k}|^2 |U_{o2 i_k}|^2
    double interference = 0.0; // sum_{k != l} w_kl U_{o1 i_k} U_{o2 i_l} U*_{o1 i_l} U*_{o2 i_k}
};

PairTerms pair_terms(const UnitaryMatrix& u, const PortList& inputs, int o1, int o2, const RealMatrix* weights)
{
    if (o1 == o2) throw RangeError("correlation pair needs o1 != o2");
    const auto n = inputs.size();
    PairTerms terms;
    Complex interference(0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const Complex a_k = u(o1 - 1, inputs[k] - 1);
        const Complex b_k = u(o2 - 1, inputs[k] - 1);
        terms.common += std::norm(a_k) * std::norm(b_k);
        for (std::size_t l = 0; l < n; ++l) {
            if (l == k) continue;
            const Complex a_l = u(o1 - 1, inputs[l] - 1);
            const Complex b_l = u(o2 - 1, inputs[l] - 1);
            Complex term = a_k * b_l * std::conj(a_l) * std::conj(b_k);
            if (weights) term *= (*weights)(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
            interference += term;
        }
    }
    if (std::abs(interference.imag()) > 1e-10) {
        std::ostringstream msg;
        msg << "correlation: imaginary residual " << interference.imag();
        throw NumericalError(msg.str());
    }
    terms.interference = interference.real();
    return terms;
}

void check_pair_args(const UnitaryMatrix& u, const PortList& inputs, int o1, int o2)
{
    detail::check_inputs(u, inputs);
    detail::check_port(o1, u.modes(), "output");
    detail::check_port(o2, u.modes(), "output");
    if (o1 == o2) throw RangeError("correlation pair needs o1 != o2");
}

void check_rmt_args(int m, int n)
{
    if (m < 2) throw DimensionError("RMT moments need m >= 2");
    if (n < 1 || n > m) throw RangeError("RMT moments need 1 <= n <= m");
}

double interference_sign(ParticleClass cls)
{
    switch (cls) {
    case ParticleClass::Boson:
    case ParticleClass::ThermalBoson: return 1.0;
    case ParticleClass::Fermion: return -1.0;
    case ParticleClass::Distinguishable: return 0.0;
    }
    return 0.0;
}

} // namespace

double correlation_pair(const UnitaryMatrix& u, const PortList& inputs, int o1, int o2, ParticleClass cls)
{
    check_pair_args(u, inputs, o1, o2);
    const PairTerms t = pair_terms(u, inputs, o1, o2, nullptr);
    const double common_sign = (cls == ParticleClass::ThermalBoson) ? 1.0 : -1.0;
    return common_sign * t.common + interference_sign(cls) * t.interference;
}

double correlation_pair_partial(const UnitaryMatrix& u, const PortList& inputs, int o1, int o2,
                                const GramMatrix& gram, ParticleClass cls)
{
    if (cls != ParticleClass::Boson && cls != ParticleClass::Fermion)
        throw PreconditionError("correlation_pair_partial: class must be boson or fermion");
    check_pair_args(u, inputs, o1, o2);
    if (gram.size() != static_cast<int>(inputs.size()))
        throw DimensionError("correlation_pair_partial: Gram matrix size differs from n");
    const RealMatrix weights = gram.squared_moduli();
    const PairTerms t = pair_terms(u, inputs, o1, o2, &weights);
    return -t.common + interference_sign(cls) * t.interference;
}

CorrelationDataset correlation_dataset(const UnitaryMatrix& u, const PortList& inputs, ParticleClass cls,
                                       const std::optional<GramMatrix>& gram)
{
    detail::check_inputs(u, inputs);
    const int m = u.modes();
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
    if (gram) {
        if (cls != ParticleClass::Boson && cls != ParticleClass::Fermion)
            throw PreconditionError("correlation_dataset: a Gram matrix requires boson or fermion class");
        if (gram->size() != static_cast<int>(inputs.size()))
            throw DimensionError("correlation_dataset: Gram matrix size differs from n");
        const RealMatrix weights = gram->squared_moduli();
        for (int o1 = 1; o1 <= m; ++o1)
            for (int o2 = o1 + 1; o2 <= m; ++o2) {
                const PairTerms t = pair_terms(u, inputs, o1, o2, &weights);
                values.push_back(-t.common + interference_sign(cls) * t.interference);
            }
    } else {
        for (int o1 = 1; o1 <= m; ++o1)
            for (int o2 = o1 + 1; o2 <= m; ++o2) values.push_back(correlation_pair(u, inputs, o1, o2, cls));
    }
    return CorrelationDataset(m, static_cast<int>(inputs.size()), std::move(values), cls, gram);
}

double moments(const CorrelationDataset& d, int q)
{
    if (q < 1) throw RangeError("moments: q must be >= 1");
    if (d.size() == 0) throw DimensionError("moments: empty dataset");
    double total = 0.0;
    for (double v : d.values()) total += std::pow(v, q);
    return total / static_cast<double>(d.size());
}

MomentSummary summarize(double m1, double m2, int m, int n)
{
    if (n < 1) throw RangeError("summary: n must be >= 1");
    MomentSummary s;
    s.m1 = m1;
    s.m2 = m2;
    s.nm = m1 * static_cast<double>(m) * static_cast<double>(m) / n;
    if (std::abs(m1) >= kUndefinedMeanThreshold) s.cv = std::sqrt(std::max(m2 - m1 * m1, 0.0)) / m1;
    return s;
}

MomentSummary summary(const CorrelationDataset& d)
{
    return summarize(moments(d, 1), moments(d, 2), d.modes(), d.particles());
}

// ---------------------------------------------------------------------------

WeingartenValues weingarten(int m)
{
    if (m < 2) throw DimensionError("Weingarten values need m >= 2");
    const double md = m;
    return WeingartenValues{1.0 / (md * md - 1.0), -1.0 / (md * (md * md - 1.0))};
}

double rmt_first_moment(int m, int n, ParticleClass cls)
{
    check_rmt_args(m, n);
    const double md = m;
    const double nd = n;
    const double cubic = md * (md * md - 1.0);
    switch (cls) {
    case ParticleClass::Boson: return -nd * (md + nd - 2.0) / cubic;
    case ParticleClass::ThermalBoson: return nd * (md - nd) / cubic;
    case ParticleClass::Distinguishable: return -nd / (md * (md + 1.0));
    case ParticleClass::Fermion: return -nd * (md - nd) / cubic;
    }
    return 0.0;
}

double rmt_second_moment(int m, int n, ParticleClass cls)
{
    check_rmt_args(m, n);
    const double md = m;
    const double nd = n;
    const double denom = md * md * (md + 2.0) * (md + 3.0) * (md * md - 1.0);
    switch (cls) {
    case ParticleClass::Boson:
        return 2.0 * nd *
               (md * md * nd + md * md + 9.0 * md * nd - 11.0 * md + nd * nd * nd - 2.0 * nd * nd + 5.0 * nd - 4.0) /
               denom;
    case ParticleClass::ThermalBoson:
    case ParticleClass::Fermion: return 2.0 * nd * (nd + 1.0) * (md - nd) * (md - nd + 1.0) / denom;
    case ParticleClass::Distinguishable:
        return nd * (md * md * nd + 3.0 * md * md + md * nd - 5.0 * md + 2.0 * nd - 2.0) / denom;
    }
    return 0.0;
}

RmtPrediction rmt_prediction(int m, int n, ParticleClass cls)
{
    RmtPrediction p;
    p.cls = cls;
    p.m1 = rmt_first_moment(m, n, cls);
    p.m2 = rmt_second_moment(m, n, cls);
    const MomentSummary s = summarize(p.m1, p.m2, m, n);
    p.nm = s.nm;
    p.cv = s.cv;
    p.weingarten = weingarten(m);
    return p;
}

OverlapSums overlap_sums(const GramMatrix& gram)
{
    const RealMatrix w = gram.squared_moduli();
    const int n = gram.size();
    OverlapSums s;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            if (k == l) continue;
            s.c += w(k, l) * w(k, l);
            s.d += w(k, l);
        }
    for (int k = 0; k < n; ++k)
        for (int l1 = 0; l1 < n; ++l1) {
            if (l1 == k) continue;
            for (int l2 = 0; l2 < n; ++l2) {
                if (l2 == k || l2 == l1) continue;
                s.b += w(k, l1) * w(k, l2);
            }
        }
    for (int k1 = 0; k1 < n; ++k1)
        for (int l1 = 0; l1 < n; ++l1) {
            if (l1 == k1) continue;
            for (int k2 = 0; k2 < n; ++k2) {
                if (k2 == k1 || k2 == l1) continue;
                for (int l2 = 0; l2 < n; ++l2) {
                    if (l2 == k1 || l2 == l1 || l2 == k2) continue;
                    s.a += w(k1, l1) * w(k2, l2);
                }
            }
        }
    return s;
}

namespace {
double partial_sign(ParticleClass cls)
{
    if (cls == ParticleClass::Boson) return 1.0;
    if (cls == ParticleClass::Fermion) return -1.0;
    throw PreconditionError("partial-distinguishability RMT moments need boson or fermion class");
}
} // namespace

double rmt_first_moment_partial(int m, int n, const GramMatrix& gram, ParticleClass cls)
{
    const double sign = partial_sign(cls);
    check_rmt_args(m, n);
    if (gram.size() != n) throw DimensionError("rmt_first_moment_partial: Gram matrix size differs from n");
    const double md = m;
    const OverlapSums s = overlap_sums(gram);
    return -n / (md * (md + 1.0)) - sign * s.d / (md * (md * md - 1.0));
}

double rmt_second_moment_partial(int m, int n, const GramMatrix& gram, ParticleClass cls)
{
    const double sign = partial_sign(cls);
    check_rmt_args(m, n);
    if (gram.size() != n) throw DimensionError("rmt_second_moment_partial: Gram matrix size differs from n");
    const double md = m;
    const double nd = n;
    const OverlapSums s = overlap_sums(gram);
    const double denom = (md - 1.0) * md * md * (md + 1.0) * (md + 2.0) * (md + 3.0);
    const double overlap_part = 2.0 * s.a - 2.0 * s.b * (md - 5.0) + s.c * (10.0 + md + md * md) +
                                sign * 2.0 * s.d * (2.0 + 6.0 * md - nd + md * nd);
    const double base = (md - 2.0) * (1.0 + 3.0 * md) * nd + 2.0 * nd * nd + md * nd * nd + md * md * nd * nd;
    return (overlap_part + base) / denom;
}

double exact_first_moment(const UnitaryMatrix& u, const PortList& inputs, ParticleClass cls)
{
    detail::check_inputs(u, inputs);
    const int m = u.modes();
    if (m < 2) throw DimensionError("exact_first_moment needs m >= 2");
    double row_square_sum = 0.0; // sum_o (sum_k |U_{o i_k}|^2)^2
    double fourth_power_sum = 0.0; // sum_k sum_o |U_{o i_k}|^4
    for (int o = 0; o < m; ++o) {
        double row = 0.0;
        for (int i : inputs) {
            const double p = std::norm(u(o, i - 1));
            row += p;
            fourth_power_sum += p * p;
        }
        row_square_sum += row * row;
    }
    const double scale = 1.0 / (static_cast<double>(m) * (m - 1));
    const double n = static_cast<double>(inputs.size());
    switch (cls) {
    case ParticleClass::Boson: return scale * (-n - row_square_sum + 2.0 * fourth_power_sum);
    case ParticleClass::ThermalBoson: return scale * (n - row_square_sum);
    case ParticleClass::Fermion: return scale * (-n + row_square_sum);
    case ParticleClass::Distinguishable: return scale * (-n + fourth_power_sum);
    }
    return 0.0;
}

FourierMoments fourier_moments(int m, int n)
{
    if (m < 2) throw DimensionError("fourier_moments needs m >= 2");
    if (n < 1 || n > m) throw RangeError("fourier_moments needs 1 <= n <= m");
    const double md = m;
    const double nd = n;
    const double m2 = md * md;
    const double m4 = m2 * m2;
    FourierMoments f;
    const double pair_term = nd * (nd - 1.0) / (m2 * (md - 1.0));
    f.m1_boson = -nd / m2 - pair_term;
    f.m1_thermal = nd / m2 - pair_term;
    f.m1_fermion = -nd / m2 + pair_term;
    f.m1_distinguishable = -nd / m2;
    if (m >= 2 * n - 1) {
        const double zero_sum_count = (2.0 * nd - 1.0) * (nd - 1.0) * nd / 3.0;
        f.m2_boson = nd * nd / m4 + 2.0 * nd * nd * (nd - 1.0) / (m4 * (md - 1.0)) + zero_sum_count / m4 -
                     (nd - 1.0) * nd * (nd * (3.0 * nd - 5.0) + 1.0) / (3.0 * m4 * (md - 1.0));
    }
    return f;
}

namespace {
std::optional<double> relative_gap(double a, double b)
{
    const double sum = std::abs(a + b);
    if (sum <= 1e-14 * (std::abs(a) + std::abs(b))) return std::nullopt;
    return std::abs(a - b) / sum;
}
} // namespace

Visibility visibility(const MomentSummary& indistinguishable, const MomentSummary& distinguishable)
{
    Visibility v;
    v.nm = relative_gap(indistinguishable.nm, distinguishable.nm);
    if (indistinguishable.cv && distinguishable.cv) v.cv = relative_gap(*indistinguishable.cv, *distinguishable.cv);
    return v;
}

} // namespace mbi
