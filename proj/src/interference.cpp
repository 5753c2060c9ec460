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

#include "mbi/interference.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mbi/errors.hpp"
#include "mbi/matrix_functions.hpp"

namespace mbi {

std::string to_string(ParticleClass cls)
{
    switch (cls) {
    case ParticleClass::Boson: return "boson";
    case ParticleClass::Fermion: return "fermion";
    case ParticleClass::Distinguishable: return "dist";
    case ParticleClass::ThermalBoson: return "thermal";
    }
    return "unknown";
}

ParticleClass parse_particle_class(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "boson" || lower == "bosons" || lower == "b") return ParticleClass::Boson;
    if (lower == "fermion" || lower == "fermions" || lower == "f") return ParticleClass::Fermion;
    if (lower == "dist" || lower == "distinguishable" || lower == "d") return ParticleClass::Distinguishable;
    if (lower == "thermal" || lower == "thermalboson" || lower == "t") return ParticleClass::ThermalBoson;
    throw RangeError("unknown particle class '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------

GramMatrix::GramMatrix(ComplexMatrix entries) : entries_(std::move(entries))
{
    if (entries_.rows() != entries_.cols()) throw DimensionError("Gram matrix must be square");
    const auto n = entries_.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        if (std::abs(entries_(k, k) - 1.0) > 1e-12) throw NumericalError("Gram matrix diagonal must be 1");
        for (Eigen::Index l = 0; l < n; ++l) {
            if (std::abs(entries_(k, l) - std::conj(entries_(l, k))) > 1e-12)
                throw NumericalError("Gram matrix is not Hermitian");
            if (std::abs(entries_(k, l)) > 1.0 + 1e-12) throw NumericalError("Gram matrix entry exceeds modulus 1");
        }
    }
    if (n > 0) {
        const ComplexMatrix shifted = entries_ + 1e-10 * ComplexMatrix::Identity(n, n);
        Eigen::LLT<ComplexMatrix> llt(shifted);
        if (llt.info() != Eigen::Success) throw NumericalError("Gram matrix is not positive semi-definite");
    }
}

GramMatrix GramMatrix::identity(int n)
{
    return GramMatrix(ComplexMatrix::Identity(n, n));
}

GramMatrix GramMatrix::ones(int n)
{
    return GramMatrix(ComplexMatrix::Ones(n, n));
}

WavePacketTrain WavePacketTrain::equidistant(int n, double delay, double bandwidth, double central_frequency)
{
    WavePacketTrain train;
    train.arrival_times.resize(std::max(n, 0));
    for (int j = 0; j < n; ++j) train.arrival_times[j] = j * delay;
    train.bandwidth = bandwidth;
    train.central_frequency = central_frequency;
    return train;
}

// ---------------------------------------------------------------------------

namespace detail {

double checked_probability(double p, const char* what)
{
    if (p >= 0.0 && p <= 1.0) return p;
    if (p < 0.0 && p >= -kProbabilitySlack) return 0.0;
    if (p > 1.0 && p <= 1.0 + kProbabilitySlack) return 1.0;
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": probability " << p << " outside [0, 1]";
    throw NumericalError(msg.str());
}

void check_inputs(const UnitaryMatrix& u, const PortList& inputs)
{
    check_ports(inputs, u.modes(), "input");
    check_distinct(inputs, "input");
}

} // namespace detail

double single_particle_prob(const UnitaryMatrix& u, int input, int output)
{
    return std::norm(u.at_ports(output, input));
}

double transition_probability(const UnitaryMatrix& u, const PortList& inputs, const PortList& outputs,
                              ParticleClass cls)
{
    if (cls == ParticleClass::ThermalBoson)
        throw PreconditionError("transition_probability: thermal states have no number-state transition probability");
    detail::check_inputs(u, inputs);
    detail::check_ports(outputs, u.modes(), "output");
    if (outputs.size() != inputs.size())
        throw DimensionError("transition_probability: input and output lists differ in length");

    if (cls == ParticleClass::Fermion && detail::has_duplicates(outputs)) return 0.0;

    const SubMatrix sub = submatrix(u, outputs, inputs);
    const auto norm = static_cast<double>(occupation_normalization(OccupationVector::from_ports(u.modes(), outputs)));
    double p = 0.0;
    switch (cls) {
    case ParticleClass::Boson: p = std::norm(permanent(sub.entries)) / norm; break;
    case ParticleClass::Fermion: p = std::norm(determinant(sub.entries)); break;
    case ParticleClass::Distinguishable: {
        const RealMatrix moduli = sub.entries.cwiseAbs2();
        p = permanent(moduli) / norm;
        break;
    }
    case ParticleClass::ThermalBoson: break;
    }
    return detail::checked_probability(p, "transition_probability");
}

double transition_probability_partial(const UnitaryMatrix& u, const PortList& inputs,
                                      const PortList& outputs, const GramMatrix& gram, ParticleClass cls)
{
    if (cls != ParticleClass::Boson && cls != ParticleClass::Fermion)
        throw PreconditionError("transition_probability_partial: class must be boson or fermion");
    detail::check_inputs(u, inputs);
    detail::check_ports(outputs, u.modes(), "output");
    const int n = static_cast<int>(inputs.size());
    if (static_cast<int>(outputs.size()) != n || gram.size() != n)
        throw DimensionError("transition_probability_partial: inputs, outputs and Gram matrix must share n");
    if (detail::has_duplicates(outputs))
        throw RangeError("transition_probability_partial: outputs must be distinct");
    if (n > kPartialDistinguishabilityMaxParticles)
        throw SizeLimitError("transition_probability_partial: n = " + std::to_string(n) + " exceeds cap 8");

    const SubMatrix sub = submatrix(u, outputs, inputs); // sub(b, a) = U_{o_b i_a}
    const ComplexMatrix conj_sub = sub.entries.conjugate();

    std::vector<int> rho(n);
    std::iota(rho.begin(), rho.end(), 0);
    ComplexMatrix w(n, n);
    Complex total(0.0);
    do {
        Complex weight(1.0);
        for (int a = 0; a < n; ++a) weight *= gram(a, rho[a]);
        if (weight == Complex(0.0)) continue;
        for (int a = 0; a < n; ++a) w.col(a) = sub.entries.col(rho[a]).cwiseProduct(conj_sub.col(a));
        Complex term = weight * permanent(w);
        if (cls == ParticleClass::Fermion && permutation_sign(rho) < 0) term = -term;
        total += term;
    } while (std::next_permutation(rho.begin(), rho.end()));

    if (std::abs(total.imag()) > 1e-10) {
        std::ostringstream msg;
        msg << "transition_probability_partial: imaginary residual " << total.imag();
        throw NumericalError(msg.str());
    }
    return detail::checked_probability(total.real(), "transition_probability_partial");
}

GramMatrix gram_from_wave_packets(const WavePacketTrain& train)
{
    if (!(train.bandwidth > 0.0)) throw RangeError("wave packet bandwidth must be positive");
    if (train.arrival_times.empty()) throw DimensionError("wave packet train needs at least one packet");
    const auto n = static_cast<Eigen::Index>(train.arrival_times.size());
    ComplexMatrix s(n, n);
    const double dw2 = train.bandwidth * train.bandwidth;
    for (Eigen::Index j = 0; j < n; ++j) {
        s(j, j) = 1.0;
        for (Eigen::Index k = j + 1; k < n; ++k) {
            const double dt = train.arrival_times[j] - train.arrival_times[k];
            const Complex value = std::polar(std::exp(-0.5 * dw2 * dt * dt), train.central_frequency * dt);
            s(j, k) = value;
            s(k, j) = std::conj(value);
        }
    }
    return GramMatrix(std::move(s));
}

std::vector<double> hom_dip_curve(const std::vector<double>& grid, ParticleClass cls)
{
    if (cls != ParticleClass::Boson && cls != ParticleClass::Fermion)
        throw PreconditionError("hom_dip_curve: class must be boson or fermion");
    const UnitaryMatrix bs = balanced_beamsplitter();
    const PortList ports{1, 2};
    std::vector<double> out;
    out.reserve(grid.size());
    for (double x : grid) {
        const GramMatrix gram = gram_from_wave_packets(WavePacketTrain::equidistant(2, x));
        out.push_back(transition_probability_partial(bs, ports, ports, gram, cls));
    }
    return out;
}

double expected_number(const UnitaryMatrix& u, const PortList& inputs, int output)
{
    detail::check_inputs(u, inputs);
    detail::check_port(output, u.modes(), "output");
    double total = 0.0;
    for (int i : inputs) total += std::norm(u(output - 1, i - 1));
    return total;
}

} // namespace mbi
