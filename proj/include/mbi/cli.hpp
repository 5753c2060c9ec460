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

#ifndef MBI_CLI_HPP
#define MBI_CLI_HPP

#include <cstdint>
#include <exception>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbi/interference.hpp"
#include "mbi/suppression.hpp"
#include "mbi/tensor.hpp"

namespace mbi::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNumerical = 2, kExitCertification = 3 };

/// Maps a library exception to the process exit code.
int exit_code_for(const std::exception& e);

enum class OutputFormat { Csv, Json };
OutputFormat parse_format(std::string_view name);

/// "start:stop:steps": `steps` equally spaced points including both ends.
struct Grid {
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;

    static Grid parse(std::string_view text);
    std::vector<double> points() const;
};

/// "1,2,3" -> {1, 2, 3}
PortList parse_ports(std::string_view text);

struct CommonOptions {
    OutputFormat format = OutputFormat::Csv;
    std::optional<std::string> unitary_path;
    double tol_unitary = kUnitaryTolerance;
};

struct HomOptions {
    Grid grid{0.0, 3.0, 31};
};

struct DistScanOptions {
    int m = 0;
    int n = 0;
    std::uint64_t seed = 0;
    Grid grid{0.0, 3.0, 31};
    std::optional<PortList> inputs;
    /// Distinct output sets; defaults to {1..n}.
    std::vector<PortList> outputs;
};

struct ScatterOptions {
    int m = 0;
    int n = 0;
    std::uint64_t seed = 0;
    int trials = 1;
    std::optional<PortList> inputs;
    std::vector<ParticleClass> classes{ParticleClass::Boson, ParticleClass::ThermalBoson, ParticleClass::Fermion,
                                       ParticleClass::Distinguishable};
};

struct SuppressOptions {
    int m = 0;
    std::string permutation;
    PortList inputs;
    ParticleClass cls = ParticleClass::Boson;
    bool extended = false;
    double tol_suppression = kSuppressionTolerance;
};

enum class ValidateSource { Samples, Generate, Exact };

struct ValidateOptions {
    ValidateSource source = ValidateSource::Exact;
    int m = 0;
    int n = 0;
    std::uint64_t seed = 0;
    /// Number of generated samples.
    std::size_t count = 100000;
    std::optional<PortList> inputs;
    /// Samples: path of a sample CSV. Generate/Exact: particle class.
    std::string samples_path;
    ParticleClass cls = ParticleClass::Boson;
};

struct UnitaryOptions {
    int m = 0;
    std::uint64_t seed = 0;
    std::string kind = "haar";
};

// Each command writes its table or report to `out` and returns an exit code.
int cmd_hom(const HomOptions& opts, const CommonOptions& common, std::ostream& out);
int cmd_dist_scan(const DistScanOptions& opts, const CommonOptions& common, std::ostream& out);
int cmd_scatter(const ScatterOptions& opts, const CommonOptions& common, std::ostream& out);
/// Sweep over every distinct-output event. Returns kExitCertification when
/// a flagged event has probability >= 1e-10; a summary goes to `log`.
int cmd_suppress(const SuppressOptions& opts, const CommonOptions& common, std::ostream& out, std::ostream& log);
int cmd_validate(const ValidateOptions& opts, const CommonOptions& common, std::ostream& out);
int cmd_unitary(const UnitaryOptions& opts, const CommonOptions& common, std::ostream& out);

/// Haar unitary from `seed` unless common.unitary_path names a JSON file.
UnitaryMatrix load_or_sample_unitary(const CommonOptions& common, int m, std::uint64_t seed);

} // namespace mbi::cli

#endif
