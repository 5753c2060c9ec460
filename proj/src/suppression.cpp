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

#include "mbi/suppression.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mbi/errors.hpp"
#include "mbi/matrix_functions.hpp"

namespace mbi {

std::string to_string(SuppressionLaw law)
{
    switch (law) {
    case SuppressionLaw::Bosonic: return "bosonic";
    case SuppressionLaw::Fermionic: return "fermionic";
    case SuppressionLaw::ExtendedFermionic: return "extended-fermionic";
    }
    return "unknown";
}

InputSymmetry input_symmetry(const ModePermutation& p, const PortList& inputs)
{
    detail::check_ports(inputs, p.modes(), "input");
    detail::check_distinct(inputs, "input");

    std::vector<int> position(p.modes(), -1);
    for (std::size_t k = 0; k < inputs.size(); ++k) position[inputs[k] - 1] = static_cast<int>(k);

    std::vector<int> induced(inputs.size());
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        const int target = position[p.image()[inputs[k] - 1]];
        if (target < 0) return InputSymmetry{false, 1};
        induced[k] = target;
    }
    return InputSymmetry{true, permutation_sign(induced)};
}

EigenSystem eigensystem(const ModePermutation& p)
{
    const int m = p.modes();
    ComplexMatrix a = ComplexMatrix::Zero(m, m);
    std::vector<Complex> lambdas(m);
    int row = 0;
    for (const auto& cycle : p.cycles()) {
        const int len = static_cast<int>(cycle.size());
        const double norm = 1.0 / std::sqrt(static_cast<double>(len));
        for (int r = 0; r < len; ++r, ++row) {
            for (int s = 0; s < len; ++s) {
                const int phase = (r * s) % len;
                a(row, cycle[s] - 1) = std::polar(norm, -2.0 * std::numbers::pi * phase / len);
            }
            lambdas[row] = std::polar(1.0, -2.0 * std::numbers::pi * r / len);
        }
    }

    const ComplexMatrix d = Eigen::Map<const Eigen::VectorXcd>(lambdas.data(), m).asDiagonal();
    const ComplexMatrix reconstructed = a.adjoint() * d * a;
    const double residual = (reconstructed - permutation_unitary(p).matrix()).cwiseAbs().maxCoeff();
    if (residual > 1e-10)
        throw NumericalError("eigensystem: reconstruction residual " + std::to_string(residual));
    return EigenSystem{UnitaryMatrix(std::move(a)), std::move(lambdas)};
}

namespace {

void check_law_inputs(const ModePermutation& p, const PortList& inputs, const PortList& outputs, InputSymmetry& sym)
{
    sym = input_symmetry(p, inputs);
    if (!sym.symmetric)
        throw PreconditionError("suppression law does not apply: permutation does not map the input ports onto themselves");
    detail::check_ports(outputs, p.modes(), "output");
    if (outputs.size() != inputs.size()) throw DimensionError("suppression law: input and output counts differ");
    if (detail::has_duplicates(outputs)) throw RangeError("suppression law: outputs must be distinct");
}

} // namespace

SuppressionVerdict predict_suppressed(const ModePermutation& p, const PortList& inputs, const PortList& outputs,
                                      ParticleClass cls, double tolerance)
{
    if (cls != ParticleClass::Boson && cls != ParticleClass::Fermion)
        throw PreconditionError("predict_suppressed: class must be boson or fermion");
    InputSymmetry sym;
    check_law_inputs(p, inputs, outputs, sym);

    const EigenSystem es = eigensystem(p);
    Complex product(1.0);
    for (int o : outputs) product *= es.lambdas[o - 1];

    SuppressionVerdict verdict;
    verdict.eigenvalue_product = product;
    verdict.tolerance = tolerance;
    if (cls == ParticleClass::Boson) {
        verdict.law = SuppressionLaw::Bosonic;
        verdict.suppressed = std::abs(product - 1.0) > tolerance;
    } else {
        verdict.law = SuppressionLaw::Fermionic;
        verdict.suppressed = std::abs(product - static_cast<double>(sym.sign)) > tolerance;
    }
    return verdict;
}

bool multisets_match(std::vector<Complex> a, std::vector<Complex> b, double tolerance)
{
    if (a.size() != b.size()) return false;
    for (const Complex& x : a) {
        auto best = std::min_element(b.begin(), b.end(), [&](const Complex& l, const Complex& r) {
            return std::abs(l - x) < std::abs(r - x);
        });
        if (std::abs(*best - x) > tolerance) return false;
        b.erase(best);
    }
    return true;
}

SuppressionVerdict predict_suppressed_extended(const ModePermutation& p, const PortList& inputs,
                                               const PortList& outputs, double tolerance)
{
    InputSymmetry sym;
    check_law_inputs(p, inputs, outputs, sym);
    const EigenSystem es = eigensystem(p);

    // A_sub Q = D_sub A_sub with Q = P_pi on inputs x inputs, a permutation
    // matrix because pi maps the inputs onto themselves.
    const auto n = static_cast<Eigen::Index>(inputs.size());
    ComplexMatrix q(n, n);
    const UnitaryMatrix perm_u = permutation_unitary(p);
    const ComplexMatrix& perm = perm_u.matrix();
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) q(r, c) = perm(inputs[r] - 1, inputs[c] - 1);

    SuppressionVerdict verdict;
    verdict.law = SuppressionLaw::ExtendedFermionic;
    verdict.tolerance = tolerance;
    if (n > 0) {
        Eigen::ComplexEigenSolver<ComplexMatrix> solver(q, false);
        if (solver.info() != Eigen::Success) throw NumericalError("extended law: eigenvalue solver failed");
        const Eigen::VectorXcd& values = solver.eigenvalues();
        verdict.sub_spectrum.assign(values.data(), values.data() + n);
    }
    for (int o : outputs) {
        verdict.output_eigenvalues.push_back(es.lambdas[o - 1]);
        verdict.eigenvalue_product *= es.lambdas[o - 1];
    }
    verdict.suppressed = !multisets_match(verdict.sub_spectrum, verdict.output_eigenvalues, tolerance);
    return verdict;
}

Certification certify(const ModePermutation& p, const PortList& inputs, const PortList& outputs,
                      ParticleClass cls, bool extended, double tolerance)
{
    Certification out;
    if (extended) {
        if (cls != ParticleClass::Fermion) throw PreconditionError("extended suppression law applies to fermions only");
        out.verdict = predict_suppressed_extended(p, inputs, outputs, tolerance);
    } else {
        out.verdict = predict_suppressed(p, inputs, outputs, cls, tolerance);
    }
    const EigenSystem es = eigensystem(p);
    out.probability = transition_probability(es.a, inputs, outputs, cls);
    out.passed = !out.verdict.suppressed || out.probability < kCertificationThreshold;
    return out;
}

} // namespace mbi
