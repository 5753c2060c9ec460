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

#ifndef MBI_SUPPRESSION_HPP
#define MBI_SUPPRESSION_HPP

#include <string>
#include <vector>

#include "mbi/interference.hpp"
#include "mbi/tensor.hpp"

namespace mbi {

inline constexpr double kSuppressionTolerance = 1e-8;
inline constexpr double kCertificationThreshold = 1e-10;

/**
 * Eigen-decomposition P_pi = A^dag D A of a mode permutation.
 *
 * Row k of A is the complex conjugate of the eigenvector belonging to
 * lambdas[k]; equivalently the columns of A^dag are eigenvectors. Used as an
 * interferometer, row k of A is output port k + 1, so lambdas[o - 1] is the
 * eigenvalue the suppression laws attach to output port o.
 */
struct EigenSystem {
    UnitaryMatrix a;
    std::vector<Complex> lambdas;
};

enum class SuppressionLaw { Bosonic, Fermionic, ExtendedFermionic };

std::string to_string(SuppressionLaw law);

struct SuppressionVerdict {
    bool suppressed = false;
    SuppressionLaw law = SuppressionLaw::Bosonic;
    /// prod_j lambda_{o_j}
    Complex eigenvalue_product{1.0, 0.0};
    /// Extended law only: spectrum of P_pi restricted to the occupied inputs
    /// and the eigenvalues attached to the outputs.
    std::vector<Complex> sub_spectrum;
    std::vector<Complex> output_eigenvalues;
    double tolerance = kSuppressionTolerance;
};

struct InputSymmetry {
    bool symmetric = false;
    /// Parity of the permutation pi induces on the occupied ports; only
    /// meaningful when symmetric.
    int sign = 1;
};

InputSymmetry input_symmetry(const ModePermutation& p, const PortList& inputs);

/// Eigenvectors per cycle (c_0 -> ... -> c_{L-1}), cycles ordered by their
/// smallest port: v^(r)_{c_s} = e^{2 pi i r s / L} / sqrt(L) with eigenvalue
/// e^{-2 pi i r / L}, r = 0..L-1.
EigenSystem eigensystem(const ModePermutation& p);

/// Bosonic (prod lambda != 1) or fermionic (prod lambda != sign) law on
/// U = A. False means "not flagged", not "non-zero".
SuppressionVerdict predict_suppressed(const ModePermutation& p, const PortList& inputs, const PortList& outputs,
                                      ParticleClass cls, double tolerance = kSuppressionTolerance);

/// Extended fermionic law: flagged when the spectrum of P_pi restricted to
/// the occupied input ports differs, as a multiset, from
/// {lambda_{o_1}, ..., lambda_{o_n}}.
SuppressionVerdict predict_suppressed_extended(const ModePermutation& p, const PortList& inputs,
                                               const PortList& outputs,
                                               double tolerance = kSuppressionTolerance);

struct Certification {
    SuppressionVerdict verdict;
    double probability = 0.0;
    /// predicted => probability < kCertificationThreshold
    bool passed = true;
};

Certification certify(const ModePermutation& p, const PortList& inputs, const PortList& outputs,
                      ParticleClass cls, bool extended = false, double tolerance = kSuppressionTolerance);

/// Greedy minimal-distance multiset comparison of complex values.
bool multisets_match(std::vector<Complex> a, std::vector<Complex> b, double tolerance);

} // namespace mbi

#endif
