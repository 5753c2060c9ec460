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

#include "mbi/tensor.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mbi/errors.hpp"
#include "mbi/rng.hpp"

namespace mbi {

namespace detail {

void check_port(int port, int m, std::string_view what)
{
    if (port < 1 || port > m) {
        throw RangeError(std::string(what) + " port " + std::to_string(port) + " outside 1.." +
                         std::to_string(m));
    }
}

void check_ports(const PortList& ports, int m, std::string_view what)
{
    for (int p : ports) check_port(p, m, what);
}

bool has_duplicates(const PortList& ports)
{
    PortList sorted = ports;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

void check_distinct(const PortList& ports, std::string_view what)
{
    if (has_duplicates(ports)) throw RangeError(std::string("duplicate ") + std::string(what) + " port");
}

} // namespace detail

double unitarity_residual(const ComplexMatrix& u)
{
    if (u.rows() == 0) return 0.0;
    const ComplexMatrix defect = u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
    return defect.cwiseAbs().maxCoeff();
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix entries, double tolerance) : entries_(std::move(entries))
{
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
        throw DimensionError("unitary must be square with m >= 1, got " + std::to_string(entries_.rows()) +
                             "x" + std::to_string(entries_.cols()));
    }
    const double res = unitarity_residual(entries_);
    if (!(res <= tolerance)) {
        std::ostringstream msg;
        msg << "matrix is not unitary: max |U^dag U - 1| = " << res << " exceeds " << tolerance;
        throw NumericalError(msg.str());
    }
}

Complex UnitaryMatrix::at_ports(int output, int input) const
{
    detail::check_port(output, modes(), "output");
    detail::check_port(input, modes(), "input");
    return entries_(output - 1, input - 1);
}

UnitaryMatrix UnitaryMatrix::adjoint() const
{
    return UnitaryMatrix(entries_.adjoint());
}

// ---------------------------------------------------------------------------

ModePermutation::ModePermutation(std::vector<int> image) : image_(std::move(image))
{
    const int m = modes();
    if (m < 1) throw DimensionError("permutation needs m >= 1");
    std::vector<bool> seen(m, false);
    for (int v : image_) {
        if (v < 0 || v >= m || seen[v]) throw RangeError("permutation image is not a bijection of 1..m");
        seen[v] = true;
    }
    // parity: (-1)^(m - #cycles)
    int cycle_count = 0;
    std::vector<bool> visited(m, false);
    for (int s = 0; s < m; ++s) {
        if (visited[s]) continue;
        ++cycle_count;
        for (int k = s; !visited[k]; k = image_[k]) visited[k] = true;
    }
    sign_ = ((m - cycle_count) % 2 == 0) ? 1 : -1;
}

ModePermutation ModePermutation::from_image(const std::vector<int>& image_one_based)
{
    std::vector<int> image(image_one_based.size());
    std::transform(image_one_based.begin(), image_one_based.end(), image.begin(), [](int v) { return v - 1; });
    return ModePermutation(std::move(image));
}

ModePermutation ModePermutation::identity(int m)
{
    if (m < 1) throw DimensionError("permutation needs m >= 1");
    std::vector<int> image(m);
    for (int k = 0; k < m; ++k) image[k] = k;
    return ModePermutation(std::move(image));
}

ModePermutation ModePermutation::swap(int m, int a, int b)
{
    auto p = identity(m);
    detail::check_port(a, m, "permutation");
    detail::check_port(b, m, "permutation");
    std::swap(p.image_[a - 1], p.image_[b - 1]);
    return ModePermutation(std::move(p.image_));
}

ModePermutation ModePermutation::from_cycles(int m, std::string_view notation)
{
    if (m < 1) throw DimensionError("permutation needs m >= 1");
    std::vector<int> image(m);
    for (int k = 0; k < m; ++k) image[k] = k;
    std::vector<bool> used(m, false);

    std::size_t pos = 0;
    auto skip_space = [&] {
        while (pos < notation.size() && (std::isspace(static_cast<unsigned char>(notation[pos])) || notation[pos] == ','))
            ++pos;
    };
    skip_space();
    while (pos < notation.size()) {
        if (notation[pos] != '(') throw RangeError("permutation: expected '(' in \"" + std::string(notation) + "\"");
        ++pos;
        std::vector<int> cycle;
        for (;;) {
            skip_space();
            if (pos >= notation.size()) throw RangeError("permutation: unterminated cycle");
            if (notation[pos] == ')') {
                ++pos;
                break;
            }
            if (!std::isdigit(static_cast<unsigned char>(notation[pos])))
                throw RangeError("permutation: unexpected character '" + std::string(1, notation[pos]) + "'");
            int value = 0;
            while (pos < notation.size() && std::isdigit(static_cast<unsigned char>(notation[pos]))) {
                value = value * 10 + (notation[pos] - '0');
                if (value > 1'000'000) throw RangeError("permutation: port label too large");
                ++pos;
            }
            detail::check_port(value, m, "permutation");
            if (used[value - 1]) throw RangeError("permutation: port " + std::to_string(value) + " repeated");
            used[value - 1] = true;
            cycle.push_back(value - 1);
        }
        for (std::size_t s = 0; s < cycle.size(); ++s) image[cycle[s]] = cycle[(s + 1) % cycle.size()];
        skip_space();
    }
    return ModePermutation(std::move(image));
}

int ModePermutation::apply(int port) const
{
    detail::check_port(port, modes(), "permutation");
    return image_[port - 1] + 1;
}

std::vector<std::vector<int>> ModePermutation::cycles() const
{
    std::vector<std::vector<int>> out;
    std::vector<bool> visited(image_.size(), false);
    for (int s = 0; s < modes(); ++s) {
        if (visited[s]) continue;
        std::vector<int> cycle;
        for (int k = s; !visited[k]; k = image_[k]) {
            visited[k] = true;
            cycle.push_back(k + 1);
        }
        out.push_back(std::move(cycle));
    }
    return out;
}

ModePermutation ModePermutation::inverse() const
{
    std::vector<int> inv(image_.size());
    for (int k = 0; k < modes(); ++k) inv[image_[k]] = k;
    return ModePermutation(std::move(inv));
}

std::string ModePermutation::to_string() const
{
    std::string out;
    for (const auto& cycle : cycles()) {
        if (cycle.size() < 2) continue;
        out += '(';
        for (std::size_t s = 0; s < cycle.size(); ++s) {
            if (s) out += ' ';
            out += std::to_string(cycle[s]);
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

// ---------------------------------------------------------------------------

UnitaryMatrix haar_random_unitary(int m, std::uint64_t seed)
{
    if (m < 1) throw DimensionError("haar_random_unitary: m must be >= 1");
    SplitMix64 rng(seed);
    ComplexMatrix ginibre(m, m);
    const double scale = std::sqrt(0.5);
    for (int col = 0; col < m; ++col)
        for (int row = 0; row < m; ++row) {
            const double re = rng.normal();
            const double im = rng.normal();
            ginibre(row, col) = Complex(re, im) * scale;
        }

    Eigen::HouseholderQR<ComplexMatrix> qr(ginibre);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix& r = qr.matrixQR();
    // Z = (Q L)(L^-1 R) with L = diag(R_jj/|R_jj|) is the QR factorization
    // whose triangular factor has a positive diagonal; Q L is Haar.
    for (int j = 0; j < m; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return UnitaryMatrix(std::move(q));
}

UnitaryMatrix fourier_unitary(int m)
{
    if (m < 1) throw DimensionError("fourier_unitary: m must be >= 1");
    ComplexMatrix f(m, m);
    const double norm = 1.0 / std::sqrt(static_cast<double>(m));
    for (int o = 0; o < m; ++o)
        for (int j = 0; j < m; ++j) {
            // reduce the exponent mod m so large products stay exact
            const long long k = (static_cast<long long>(o) * j) % m;
            f(o, j) = std::polar(norm, 2.0 * std::numbers::pi * static_cast<double>(k) / m);
        }
    return UnitaryMatrix(std::move(f));
}

UnitaryMatrix balanced_beamsplitter()
{
    const double h = 1.0 / std::sqrt(2.0);
    ComplexMatrix b(2, 2);
    b << h, h, -h, h;
    return UnitaryMatrix(std::move(b));
}

UnitaryMatrix permutation_unitary(const ModePermutation& p)
{
    const int m = p.modes();
    ComplexMatrix out = ComplexMatrix::Zero(m, m);
    for (int j = 0; j < m; ++j) out(p.image()[j], j) = 1.0;
    return UnitaryMatrix(std::move(out));
}

SubMatrix submatrix(const UnitaryMatrix& u, const PortList& outputs, const PortList& inputs)
{
    if (outputs.size() != inputs.size()) {
        throw DimensionError("submatrix: " + std::to_string(outputs.size()) + " outputs vs " +
                             std::to_string(inputs.size()) + " inputs");
    }
    detail::check_ports(outputs, u.modes(), "output");
    detail::check_ports(inputs, u.modes(), "input");
    detail::check_distinct(inputs, "input");

    const auto n = static_cast<Eigen::Index>(inputs.size());
    ComplexMatrix entries(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k) entries(j, k) = u(outputs[j] - 1, inputs[k] - 1);
    return SubMatrix{outputs, inputs, std::move(entries)};
}

} // namespace mbi
