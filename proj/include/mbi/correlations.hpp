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

#ifndef MBI_CORRELATIONS_HPP
#define MBI_CORRELATIONS_HPP

#include <optional>
#include <vector>

#include "mbi/interference.hpp"
#include "mbi/tensor.hpp"

namespace mbi {

/**
 * Truncated two-detector correlations C_{o1 o2} = <n_o1 n_o2> - <n_o1><n_o2>
 * for every unordered pair of output ports of one interferometer.
 *
 * Values are stored in lexicographic pair order (1,2), (1,3), ..., (m-1,m).
 * The particle class is absent for datasets estimated from samples.
 */
class CorrelationDataset {
public:
    CorrelationDataset(int m, int n, std::vector<double> values, std::optional<ParticleClass> cls = std::nullopt,
                       std::optional<GramMatrix> gram = std::nullopt);

    int modes() const noexcept { return m_; }
    int particles() const noexcept { return n_; }
    std::optional<ParticleClass> particle_class() const noexcept { return cls_; }
    const std::optional<GramMatrix>& gram() const noexcept { return gram_; }
    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

    /// C for 1-based output ports o1 != o2 (order irrelevant).
    double at(int o1, int o2) const;
    /// Position of the pair in values().
    static std::size_t pair_index(int m, int o1, int o2);

private:
    int m_;
    int n_;
    std::vector<double> values_;
    std::optional<ParticleClass> cls_;
    std::optional<GramMatrix> gram_;
};

struct MomentSummary {
    double m1 = 0.0;
    double m2 = 0.0;
    double nm = 0.0;
    /// Undefined when |m1| < 1e-14.
    std::optional<double> cv;
};

struct WeingartenValues {
    double v11 = 0.0; ///< V_m(1,1) = 1/(m^2-1)
    double v2 = 0.0;  ///< V_m(2) = -1/(m(m^2-1))
};

struct RmtPrediction {
    ParticleClass cls = ParticleClass::Boson;
    double m1 = 0.0;
    double m2 = 0.0;
    double nm = 0.0;
    /// Undefined when m1 vanishes (fermions or thermal bosons with n = m).
    std::optional<double> cv;
    WeingartenValues weingarten;
};

/// Sums of |S_kl|^2 products over pairwise distinct indices.
struct OverlapSums {
    double a = 0.0; ///< sum_{k1,k2,l1,l2 distinct} |S_k1l1|^2 |S_k2l2|^2
    double b = 0.0; ///< sum_{k,l1,l2 distinct} |S_kl1|^2 |S_kl2|^2
    double c = 0.0; ///< sum_{k != l} |S_kl|^4
    double d = 0.0; ///< sum_{k != l} |S_kl|^2
};

struct FourierMoments {
    double m1_boson = 0.0;
    double m1_thermal = 0.0;
    double m1_fermion = 0.0;
    double m1_distinguishable = 0.0;
    /// Present only when m >= 2n - 1.
    std::optional<double> m2_boson;
};

struct Visibility {
    std::optional<double> nm;
    std::optional<double> cv;
};

inline constexpr double kUndefinedMeanThreshold = 1e-14;

/// Closed-form C_{o1 o2} for number states (boson, fermion, distinguishable)
/// or thermal bosons; o1, o2 are 1-based and distinct.
double correlation_pair(const UnitaryMatrix& u, const PortList& inputs, int o1, int o2, ParticleClass cls);

/// Boson or fermion C_{o1 o2} with the interference term weighted by |S_kl|^2.
double correlation_pair_partial(const UnitaryMatrix& u, const PortList& inputs, int o1, int o2,
                                const GramMatrix& gram, ParticleClass cls);

CorrelationDataset correlation_dataset(const UnitaryMatrix& u, const PortList& inputs, ParticleClass cls,
                                       const std::optional<GramMatrix>& gram = std::nullopt);

/// Mean of C^q over unordered pairs.
double moments(const CorrelationDataset& d, int q);

MomentSummary summary(const CorrelationDataset& d);
MomentSummary summarize(double m1, double m2, int m, int n);

WeingartenValues weingarten(int m);

/// Haar averages E_U(C) and E_U(C^2) for n particles in m modes, 1 <= n <= m.
double rmt_first_moment(int m, int n, ParticleClass cls);
double rmt_second_moment(int m, int n, ParticleClass cls);
RmtPrediction rmt_prediction(int m, int n, ParticleClass cls);

OverlapSums overlap_sums(const GramMatrix& gram);
double rmt_first_moment_partial(int m, int n, const GramMatrix& gram, ParticleClass cls);
double rmt_second_moment_partial(int m, int n, const GramMatrix& gram, ParticleClass cls);

/// Mean of C over output pairs from the column sums of |U_{o i_k}|^2 and
/// |U_{o i_k}|^4, without building the dataset.
double exact_first_moment(const UnitaryMatrix& u, const PortList& inputs, ParticleClass cls);

/// Closed forms for the Fourier interferometer with inputs 1..n.
FourierMoments fourier_moments(int m, int n);

Visibility visibility(const MomentSummary& indistinguishable, const MomentSummary& distinguishable);

} // namespace mbi

#endif
