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

#ifndef MBI_IO_HPP
#define MBI_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "mbi/correlations.hpp"
#include "mbi/sampling.hpp"
#include "mbi/suppression.hpp"
#include "mbi/tensor.hpp"

namespace mbi {

// Unitary: {"m": <int>, "rows": [[[re, im], ...], ...]}, row-major.
nlohmann::json unitary_to_json(const UnitaryMatrix& u);
/// Validates shape and unitarity; FormatError carries the residual.
UnitaryMatrix unitary_from_json(const nlohmann::json& j, double tolerance = kUnitaryTolerance);
void write_unitary(std::ostream& out, const UnitaryMatrix& u);
UnitaryMatrix read_unitary(std::istream& in, double tolerance = kUnitaryTolerance);
UnitaryMatrix read_unitary_file(const std::string& path, double tolerance = kUnitaryTolerance);

// Dataset CSV: header "o1,o2,value", one row per pair with o1 < o2, values
// printed with %.17g.
void write_dataset_csv(std::ostream& out, const CorrelationDataset& d);
/// Reads back a dataset; m is inferred from the largest port, the particle
/// count and class are supplied by the caller.
CorrelationDataset read_dataset_csv(std::istream& in, int n, std::optional<ParticleClass> cls = std::nullopt);

// Summary JSON: {m, n, class, m1, m2, NM, CV}; CV is null when undefined.
nlohmann::json summary_to_json(const MomentSummary& s, int m, int n, std::optional<ParticleClass> cls);
MomentSummary summary_from_json(const nlohmann::json& j);

// Sample CSV: one row per sample, m comma-separated occupation counts.
void write_samples_csv(std::ostream& out, const SampleBatch& batch);
/// Every row must have the same length and the same sum (n if given).
SampleBatch read_samples_csv(std::istream& in, std::optional<int> n = std::nullopt);

// Certification record: {permutation, inputs, outputs, law, predicted, probability}.
nlohmann::json certification_to_json(const ModePermutation& p, const PortList& inputs, const PortList& outputs,
                                      const Certification& c);

/// "%.17g"
std::string format_double(double value);

} // namespace mbi

#endif
