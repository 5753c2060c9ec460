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

#ifndef MBI_INTERFERENCE_HPP
#define MBI_INTERFERENCE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbi/tensor.hpp"

namespace mbi {

enum class ParticleClass { Boson, Fermion, Distinguishable, ThermalBoson };

/// "boson", "fermion", "dist", "thermal"
std::string to_string(ParticleClass cls);
/// Accepts the short names above and the long forms ("distinguishable", ...).
ParticleClass parse_particle_class(std::string_view name);

/**
 * Gram matrix S_kl = <psi_k|psi_l> of the particles' internal states.
 * Validated on construction: Hermitian within 1e-12, unit diagonal,
 * |S_kl| <= 1 and positive semi-definite (Cholesky of S + 1e-10 I).
 */
class GramMatrix {
public:
    explicit GramMatrix(ComplexMatrix entries);

    /// Pairwise orthogonal internal states (fully distinguishable).
    static GramMatrix identity(int n);
    /// Identical internal states (fully indistinguishable).
    static GramMatrix ones(int n);

    int size() const noexcept { return static_cast<int>(entries_.rows()); }
    const ComplexMatrix& matrix() const noexcept { return entries_; }
    Complex operator()(Eigen::Index k, Eigen::Index l) const { return entries_(k, l); }
    /// |S_kl|^2 elementwise.
    RealMatrix squared_moduli() const { return entries_.cwiseAbs2(); }

private:
    ComplexMatrix entries_;
};

/// Equal-shape Gaussian wave packets arriving at times tau_j.
struct WavePacketTrain {
    std::vector<double> arrival_times;
    double central_frequency = 0.0;
    double bandwidth = 1.0;

    /// tau_j = j * delay for j = 0..n-1.
    static WavePacketTrain equidistant(int n, double delay, double bandwidth = 1.0,
                                       double central_frequency = 0.0);
};

inline constexpr double kProbabilitySlack = 1e-12;
inline constexpr int kPartialDistinguishabilityMaxParticles = 8;

/// |U_kj|^2 for 1-based input j and output k.
double single_particle_prob(const UnitaryMatrix& u, int input, int output);

/**
 * p(inputs -> outputs) for perfectly indistinguishable bosons or fermions,
 * or for distinguishable particles:
 *
 *   Boson            |perm U_sub|^2 / prod_k M_k!
 *   Fermion          |det U_sub|^2   (0 when outputs repeat)
 *   Distinguishable  perm(|U_sub|^2) / prod_k M_k!
 *
 * ThermalBoson has no number-state transition probability and is rejected.
 */
double transition_probability(const UnitaryMatrix& u, const PortList& inputs, const PortList& outputs,
                              ParticleClass cls);

/**
 * Transition probability of partially distinguishable bosons or fermions
 * to distinct outputs,
 *
 *   p = sum_{sigma, sigma'} (+-) prod_j S_{sigma'(j) sigma(j)} U_{o_j i_sigma(j)} U*_{o_j i_sigma'(j)},
 *
 * where sigma, sigma' assign particles to detector slots. The sum is grouped
 * by rho = sigma o sigma'^-1: every group is prod_a S_{a rho(a)} times the
 * permanent of W_ba = U_{o_b i_rho(a)} U*_{o_b i_a}, so the cost is
 * n! 2^n n. Capped at n <= 8.
 */
double transition_probability_partial(const UnitaryMatrix& u, const PortList& inputs,
                                      const PortList& outputs, const GramMatrix& gram, ParticleClass cls);

/// S_jk = exp(-dw^2 (tau_j - tau_k)^2 / 2) exp(i w0 (tau_j - tau_k)).
GramMatrix gram_from_wave_packets(const WavePacketTrain& train);

/// Coincidence probability on the balanced beamsplitter for two packets
/// delayed by x = bandwidth * delay, for each x in `grid`. Evaluated through
/// transition_probability_partial.
std::vector<double> hom_dip_curve(const std::vector<double>& grid, ParticleClass cls);

/// <n_o> = sum_k |U_{o i_k}|^2, the same for every particle class.
double expected_number(const UnitaryMatrix& u, const PortList& inputs, int output);

namespace detail {
/// Accepts p within kProbabilitySlack of [0, 1], clamping it; throws otherwise.
double checked_probability(double p, const char* what);
void check_inputs(const UnitaryMatrix& u, const PortList& inputs);
} // namespace detail

} // namespace mbi

#endif
