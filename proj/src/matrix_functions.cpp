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

#include "mbi/matrix_functions.hpp"

namespace mbi {

OccupationVector::OccupationVector(std::vector<int> counts) : counts_(std::move(counts))
{
    if (counts_.empty()) throw DimensionError("occupation vector needs m >= 1");
    for (int c : counts_) {
        if (c < 0) throw RangeError("occupation counts must be non-negative");
        total_ += c;
    }
}

OccupationVector OccupationVector::from_ports(int m, const PortList& ports)
{
    if (m < 1) throw DimensionError("occupation vector needs m >= 1");
    std::vector<int> counts(m, 0);
    for (int p : ports) {
        detail::check_port(p, m, "occupation");
        ++counts[p - 1];
    }
    return OccupationVector(std::move(counts));
}

PortList OccupationVector::to_ports() const
{
    PortList ports;
    ports.reserve(total_);
    for (int k = 0; k < modes(); ++k)
        for (int c = 0; c < counts_[k]; ++c) ports.push_back(k + 1);
    return ports;
}

bool OccupationVector::collision_free() const
{
    return std::all_of(counts_.begin(), counts_.end(), [](int c) { return c <= 1; });
}

std::uint64_t occupation_normalization(const OccupationVector& occupation)
{
    std::uint64_t result = 1;
    for (int c : occupation.counts())
        for (int f = 2; f <= c; ++f) result *= static_cast<std::uint64_t>(f);
    return result;
}

int permutation_sign(const std::vector<int>& image)
{
    const auto n = image.size();
    std::vector<bool> visited(n, false);
    std::size_t cycles = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (visited[s]) continue;
        ++cycles;
        for (auto k = s; !visited[k]; k = static_cast<std::size_t>(image[k])) visited[k] = true;
    }
    return ((n - cycles) % 2 == 0) ? 1 : -1;
}

double binomial(int n, int k)
{
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double result = 1.0;
    for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
    return std::round(result);
}

} // namespace mbi
