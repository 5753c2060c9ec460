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

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mbi/cli.hpp"
#include "mbi/errors.hpp"

namespace {

using namespace mbi;
using namespace mbi::cli;

struct SharedFlags {
    std::string format = "csv";
    std::string out;
    std::string unitary;
    double tol_unitary = kUnitaryTolerance;

    CommonOptions common() const
    {
        CommonOptions c;
        c.format = parse_format(format);
        if (!unitary.empty()) c.unitary_path = unitary;
        c.tol_unitary = tol_unitary;
        return c;
    }
};

void add_shared(CLI::App* cmd, SharedFlags& flags, bool with_unitary)
{
    cmd->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", flags.out, "Output path (default stdout)");
    if (with_unitary) {
        cmd->add_option("--unitary", flags.unitary, "Interferometer as unitary JSON");
        cmd->add_option("--tol-unitary", flags.tol_unitary, "Unitarity tolerance for --unitary");
    }
}

ParticleClass to_class(const std::string& name)
{
    return parse_particle_class(name);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Many-particle interference in multiport interferometers"};
    app.require_subcommand(1);
    SharedFlags flags;

    // hom
    HomOptions hom;
    std::string hom_grid = "0:3:31";
    auto* hom_cmd = app.add_subcommand("hom", "Coincidence probability on a balanced beamsplitter vs delay");
    hom_cmd->add_option("--grid", hom_grid, "start:stop:steps over bandwidth*delay");
    add_shared(hom_cmd, flags, false);

    // dist-scan
    DistScanOptions scan;
    std::string scan_grid = "0:3:31";
    std::string scan_inputs;
    std::vector<std::string> scan_outputs;
    auto* scan_cmd = app.add_subcommand("dist-scan", "Transition probabilities vs distinguishability");
    scan_cmd->add_option("-m,--modes", scan.m, "Number of modes (or taken from --unitary)");
    scan_cmd->add_option("-n,--particles", scan.n, "Number of particles")->required();
    scan_cmd->add_option("--seed", scan.seed, "Seed of the Haar unitary");
    scan_cmd->add_option("--grid", scan_grid, "start:stop:steps over bandwidth*delay");
    scan_cmd->add_option("--inputs", scan_inputs, "Comma-separated input ports (default 1..n)");
    scan_cmd->add_option("--outputs", scan_outputs, "Comma-separated output ports; repeatable");
    add_shared(scan_cmd, flags, true);

    // scatter
    ScatterOptions scatter;
    std::string scatter_inputs;
    std::vector<std::string> scatter_classes;
    auto* scatter_cmd = app.add_subcommand("scatter", "(NM, CV) per Haar unitary and class, plus RMT points");
    scatter_cmd->add_option("-m,--modes", scatter.m, "Number of modes")->required();
    scatter_cmd->add_option("-n,--particles", scatter.n, "Number of particles")->required();
    scatter_cmd->add_option("--seed", scatter.seed, "Master seed");
    scatter_cmd->add_option("--trials", scatter.trials, "Number of Haar unitaries");
    scatter_cmd->add_option("--inputs", scatter_inputs, "Comma-separated input ports (default 1..n)");
    scatter_cmd->add_option("--class", scatter_classes, "Particle class; repeatable (default all four)");
    add_shared(scatter_cmd, flags, true);

    // suppress
    SuppressOptions suppress;
    std::string suppress_inputs;
    std::string suppress_class = "boson";
    auto* suppress_cmd = app.add_subcommand("suppress", "Suppression-law certification sweep");
    suppress_cmd->add_option("-m,--modes", suppress.m, "Number of modes")->required();
    suppress_cmd->add_option("--permutation", suppress.permutation, "Cycle notation, e.g. \"(1 2)(3 4)\"")
        ->required();
    suppress_cmd->add_option("--inputs", suppress_inputs, "Comma-separated input ports")->required();
    suppress_cmd->add_option("--class", suppress_class, "boson or fermion");
    suppress_cmd->add_flag("--extended", suppress.extended, "Use the extended fermionic law");
    suppress_cmd->add_option("--tol-suppression", suppress.tol_suppression, "Eigenvalue comparison tolerance");
    add_shared(suppress_cmd, flags, false);

    // validate
    ValidateOptions validate;
    std::string validate_samples;
    std::string validate_generate;
    std::string validate_exact;
    std::string validate_inputs;
    auto* validate_cmd = app.add_subcommand("validate", "Classify data by its (NM, CV) signature");
    auto* samples_opt = validate_cmd->add_option("--samples", validate_samples, "Sample CSV file");
    auto* generate_opt =
        validate_cmd->add_option("--generate", validate_generate, "Draw samples of this class from a Haar unitary");
    auto* exact_opt = validate_cmd->add_option("--exact", validate_exact, "Exact dataset of this class");
    samples_opt->excludes(generate_opt)->excludes(exact_opt);
    generate_opt->excludes(exact_opt);
    validate_cmd->add_option("-m,--modes", validate.m, "Number of modes");
    validate_cmd->add_option("-n,--particles", validate.n, "Number of particles");
    validate_cmd->add_option("--seed", validate.seed, "Seed of the unitary and sampler");
    validate_cmd->add_option("--trials", validate.count, "Number of generated samples");
    validate_cmd->add_option("--inputs", validate_inputs, "Comma-separated input ports (default 1..n)");
    add_shared(validate_cmd, flags, true);

    // unitary
    UnitaryOptions unitary;
    auto* unitary_cmd = app.add_subcommand("unitary", "Write a unitary as JSON");
    unitary_cmd->add_option("-m,--modes", unitary.m, "Number of modes");
    unitary_cmd->add_option("--seed", unitary.seed, "Seed of the Haar unitary");
    unitary_cmd->add_option("--kind", unitary.kind, "haar, fourier or beamsplitter");
    unitary_cmd->add_option("--out", flags.out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        std::ofstream file;
        if (!flags.out.empty()) {
            file.open(flags.out);
            if (!file) throw FormatError("cannot open output file '" + flags.out + "'");
        }
        std::ostream& out = flags.out.empty() ? std::cout : file;
        const CommonOptions common = flags.common();

        if (hom_cmd->parsed()) {
            hom.grid = Grid::parse(hom_grid);
            return cmd_hom(hom, common, out);
        }
        if (scan_cmd->parsed()) {
            scan.grid = Grid::parse(scan_grid);
            if (!scan_inputs.empty()) scan.inputs = parse_ports(scan_inputs);
            for (const auto& o : scan_outputs) scan.outputs.push_back(parse_ports(o));
            return cmd_dist_scan(scan, common, out);
        }
        if (scatter_cmd->parsed()) {
            if (!scatter_inputs.empty()) scatter.inputs = parse_ports(scatter_inputs);
            if (!scatter_classes.empty()) {
                scatter.classes.clear();
                for (const auto& c : scatter_classes) scatter.classes.push_back(to_class(c));
            }
            return cmd_scatter(scatter, common, out);
        }
        if (suppress_cmd->parsed()) {
            suppress.inputs = parse_ports(suppress_inputs);
            suppress.cls = to_class(suppress_class);
            return cmd_suppress(suppress, common, out, std::cerr);
        }
        if (validate_cmd->parsed()) {
            if (!validate_samples.empty()) {
                validate.source = ValidateSource::Samples;
                validate.samples_path = validate_samples;
            } else if (!validate_generate.empty()) {
                validate.source = ValidateSource::Generate;
                validate.cls = to_class(validate_generate);
            } else if (!validate_exact.empty()) {
                validate.source = ValidateSource::Exact;
                validate.cls = to_class(validate_exact);
            } else {
                throw PreconditionError("validate needs one of --samples, --generate or --exact");
            }
            if (!validate_inputs.empty()) validate.inputs = parse_ports(validate_inputs);
            return cmd_validate(validate, common, out);
        }
        if (unitary_cmd->parsed()) return cmd_unitary(unitary, common, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kExitUsage;
}
