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

#include "mbi/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "mbi/correlations.hpp"
#include "mbi/errors.hpp"
#include "mbi/io.hpp"
#include "mbi/parallel.hpp"
#include "mbi/rng.hpp"
#include "mbi/sampling.hpp"

namespace mbi::cli {

using nlohmann::json;

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const NumericalError*>(&e)) return kExitNumerical;
    return kExitUsage;
}

OutputFormat parse_format(std::string_view name)
{
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw FormatError("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

namespace {

double parse_double(std::string_view text, const char* what)
{
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || text.empty())
        throw FormatError(std::string(what) + ": '" + std::string(text) + "' is not a number");
    return value;
}

int parse_int(std::string_view text, const char* what)
{
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    int value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || text.empty())
        throw FormatError(std::string(what) + ": '" + std::string(text) + "' is not an integer");
    return value;
}

PortList default_ports(int n)
{
    PortList ports(static_cast<std::size_t>(std::max(n, 0)));
    std::iota(ports.begin(), ports.end(), 1);
    return ports;
}

std::string join_ports(const PortList& ports)
{
    std::string text;
    for (std::size_t k = 0; k < ports.size(); ++k) {
        if (k) text += ';';
        text += std::to_string(ports[k]);
    }
    return text;
}

json optional_number(const std::optional<double>& v)
{
    return v ? json(*v) : json(nullptr);
}

// Rows of named cells, printed as CSV with a header or as a JSON array of
// objects.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
};

std::string csv_cell(const json& cell)
{
    if (cell.is_null()) return "";
    if (cell.is_string()) return cell.get<std::string>();
    if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
    if (cell.is_number_float()) return format_double(cell.get<double>());
    return cell.dump();
}

void write_table(std::ostream& out, const Table& table, OutputFormat format)
{
    if (format == OutputFormat::Json) {
        json array = json::array();
        for (const auto& row : table.rows) {
            json object = json::object();
            for (std::size_t c = 0; c < table.columns.size(); ++c) object[table.columns[c]] = row[c];
            array.push_back(std::move(object));
        }
        out << array.dump(2) << '\n';
        return;
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_cell(row[c]);
        out << '\n';
    }
}

void require_modes(int m)
{
    if (m < 1) throw DimensionError("--modes must be >= 1, got " + std::to_string(m));
}

void require_particles(int n, int m)
{
    if (n < 1 || n > m)
        throw RangeError("--particles must lie in 1.." + std::to_string(m) + ", got " + std::to_string(n));
}

PortList resolve_inputs(const std::optional<PortList>& inputs, int n, int m)
{
    PortList ports = inputs.value_or(default_ports(n));
    if (static_cast<int>(ports.size()) != n)
        throw DimensionError("--inputs lists " + std::to_string(ports.size()) + " ports, expected " +
                             std::to_string(n));
    detail::check_ports(ports, m, "input");
    detail::check_distinct(ports, "input");
    return ports;
}

/// All sorted n-subsets of 1..m in lexicographic order.
std::vector<PortList> distinct_output_sets(int m, int n)
{
    std::vector<PortList> sets;
    PortList current = default_ports(n);
    if (n > m) return sets;
    while (true) {
        sets.push_back(current);
        int k = n - 1;
        while (k >= 0 && current[k] == m - n + k + 1) --k;
        if (k < 0) break;
        ++current[k];
        for (int j = k + 1; j < n; ++j) current[j] = current[j - 1] + 1;
    }
    return sets;
}

} // namespace

Grid Grid::parse(std::string_view text)
{
    std::vector<std::string_view> fields;
    std::size_t begin = 0;
    while (true) {
        const auto colon = text.find(':', begin);
        fields.push_back(text.substr(begin, colon == std::string_view::npos ? std::string_view::npos : colon - begin));
        if (colon == std::string_view::npos) break;
        begin = colon + 1;
    }
    if (fields.size() != 3) throw FormatError("grid '" + std::string(text) + "' must read start:stop:steps");
    Grid grid;
    grid.start = parse_double(fields[0], "grid start");
    grid.stop = parse_double(fields[1], "grid stop");
    grid.steps = parse_int(fields[2], "grid steps");
    if (grid.steps < 1) throw RangeError("grid needs at least one step");
    if (!(grid.start >= 0.0) || !(grid.stop >= grid.start))
        throw RangeError("grid needs 0 <= start <= stop");
    return grid;
}

std::vector<double> Grid::points() const
{
    std::vector<double> pts(static_cast<std::size_t>(steps));
    if (steps == 1) {
        pts[0] = start;
        return pts;
    }
    const double h = (stop - start) / (steps - 1);
    for (int k = 0; k < steps; ++k) pts[k] = start + k * h;
    pts.back() = stop;
    return pts;
}

PortList parse_ports(std::string_view text)
{
    PortList ports;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        const auto comma = text.find(',', begin);
        const auto field = text.substr(begin, comma == std::string_view::npos ? std::string_view::npos : comma - begin);
        ports.push_back(parse_int(field, "port list"));
        if (comma == std::string_view::npos) break;
        begin = comma + 1;
    }
    return ports;
}

UnitaryMatrix load_or_sample_unitary(const CommonOptions& common, int m, std::uint64_t seed)
{
    if (common.unitary_path) {
        UnitaryMatrix u = read_unitary_file(*common.unitary_path, common.tol_unitary);
        if (m > 0 && u.modes() != m)
            throw DimensionError("unitary file has " + std::to_string(u.modes()) + " modes, --modes is " +
                                 std::to_string(m));
        return u;
    }
    require_modes(m);
    return haar_random_unitary(m, seed);
}

// ---------------------------------------------------------------------------

int cmd_hom(const HomOptions& opts, const CommonOptions& common, std::ostream& out)
{
    const std::vector<double> grid = opts.grid.points();
    const std::vector<double> boson = hom_dip_curve(grid, ParticleClass::Boson);
    const std::vector<double> fermion = hom_dip_curve(grid, ParticleClass::Fermion);
    Table table{{"x", "p_boson", "p_fermion"}, {}};
    for (std::size_t k = 0; k < grid.size(); ++k) table.rows.push_back({grid[k], boson[k], fermion[k]});
    write_table(out, table, common.format);
    return kExitOk;
}

int cmd_dist_scan(const DistScanOptions& opts, const CommonOptions& common, std::ostream& out)
{
    const UnitaryMatrix u = load_or_sample_unitary(common, opts.m, opts.seed);
    const int m = u.modes();
    require_particles(opts.n, m);
    if (opts.n > kPartialDistinguishabilityMaxParticles)
        throw SizeLimitError("dist-scan: n = " + std::to_string(opts.n) + " exceeds the cap of " +
                             std::to_string(kPartialDistinguishabilityMaxParticles));
    const PortList inputs = resolve_inputs(opts.inputs, opts.n, m);
    std::vector<PortList> output_sets = opts.outputs;
    if (output_sets.empty()) output_sets.push_back(default_ports(opts.n));
    for (const auto& outputs : output_sets) {
        if (static_cast<int>(outputs.size()) != opts.n)
            throw DimensionError("--outputs must list " + std::to_string(opts.n) + " ports");
        detail::check_ports(outputs, m, "output");
        detail::check_distinct(outputs, "output");
    }

    const std::vector<double> grid = opts.grid.points();
    const std::size_t jobs = grid.size() * output_sets.size();
    const auto rows = parallel_map(jobs, [&](std::size_t job) {
        const PortList& outputs = output_sets[job / grid.size()];
        const double x = grid[job % grid.size()];
        const GramMatrix gram = gram_from_wave_packets(WavePacketTrain::equidistant(opts.n, x));
        return std::vector<json>{x,
                                 join_ports(outputs),
                                 transition_probability_partial(u, inputs, outputs, gram, ParticleClass::Boson),
                                 transition_probability_partial(u, inputs, outputs, gram, ParticleClass::Fermion),
                                 transition_probability(u, inputs, outputs, ParticleClass::Distinguishable)};
    });
    write_table(out, Table{{"x", "outputs", "p_boson", "p_fermion", "p_dist"}, rows}, common.format);
    return kExitOk;
}

int cmd_scatter(const ScatterOptions& opts, const CommonOptions& common, std::ostream& out)
{
    if (!common.unitary_path) require_modes(opts.m);
    if (opts.trials < 1) throw RangeError("--trials must be >= 1");
    if (opts.classes.empty()) throw RangeError("--classes must name at least one class");
    // probe the dimensions once so errors surface before the parallel section
    const int m = common.unitary_path ? load_or_sample_unitary(common, opts.m, 0).modes() : opts.m;
    require_particles(opts.n, m);
    if (m < 2) throw DimensionError("scatter needs m >= 2");
    const PortList inputs = resolve_inputs(opts.inputs, opts.n, m);

    const auto per_trial = parallel_map(static_cast<std::size_t>(opts.trials), [&](std::size_t t) {
        const UnitaryMatrix u = load_or_sample_unitary(common, m, substream_seed(opts.seed, t));
        std::vector<std::vector<json>> rows;
        for (ParticleClass cls : opts.classes) {
            const MomentSummary s = summary(correlation_dataset(u, inputs, cls));
            rows.push_back({"sample", static_cast<long>(t), to_string(cls), s.m1, s.m2, s.nm, optional_number(s.cv)});
        }
        return rows;
    });

    Table table{{"kind", "trial", "class", "m1", "m2", "NM", "CV"}, {}};
    for (const auto& rows : per_trial)
        for (const auto& row : rows) table.rows.push_back(row);
    for (ParticleClass cls : {ParticleClass::Boson, ParticleClass::ThermalBoson, ParticleClass::Fermion,
                              ParticleClass::Distinguishable}) {
        const RmtPrediction p = rmt_prediction(m, opts.n, cls);
        table.rows.push_back({"rmt", nullptr, to_string(cls), p.m1, p.m2, p.nm, optional_number(p.cv)});
    }
    write_table(out, table, common.format);
    return kExitOk;
}

int cmd_suppress(const SuppressOptions& opts, const CommonOptions& common, std::ostream& out, std::ostream& log)
{
    require_modes(opts.m);
    const ModePermutation p = ModePermutation::from_cycles(opts.m, opts.permutation);
    detail::check_ports(opts.inputs, opts.m, "input");
    detail::check_distinct(opts.inputs, "input");
    if (opts.extended && opts.cls != ParticleClass::Fermion)
        throw PreconditionError("--extended applies to --class fermion only");
    if (opts.cls != ParticleClass::Boson && opts.cls != ParticleClass::Fermion)
        throw PreconditionError("suppression laws are defined for boson and fermion classes");
    if (!input_symmetry(p, opts.inputs).symmetric)
        throw PreconditionError("permutation " + p.to_string() + " does not map the inputs onto themselves");

    const std::vector<PortList> events = distinct_output_sets(opts.m, static_cast<int>(opts.inputs.size()));
    const auto results = parallel_map(events.size(), [&](std::size_t k) {
        return certify(p, opts.inputs, events[k], opts.cls, opts.extended, opts.tol_suppression);
    });

    std::size_t flagged = 0;
    std::size_t failed = 0;
    Table table{{"permutation", "inputs", "outputs", "law", "predicted", "probability"}, {}};
    json records = json::array();
    for (std::size_t k = 0; k < events.size(); ++k) {
        const Certification& c = results[k];
        flagged += c.verdict.suppressed ? 1 : 0;
        failed += c.passed ? 0 : 1;
        if (common.format == OutputFormat::Json) {
            records.push_back(certification_to_json(p, opts.inputs, events[k], c));
        } else {
            table.rows.push_back({p.to_string(), join_ports(opts.inputs), join_ports(events[k]),
                                  to_string(c.verdict.law), c.verdict.suppressed, c.probability});
        }
    }
    if (common.format == OutputFormat::Json)
        out << records.dump(2) << '\n';
    else
        write_table(out, table, common.format);
    log << "events " << events.size() << ", flagged " << flagged << ", certification failures " << failed << '\n';
    return failed > 0 ? kExitCertification : kExitOk;
}

int cmd_validate(const ValidateOptions& opts, const CommonOptions& common, std::ostream& out)
{
    json report;
    MomentSummary s;
    int m = opts.m;
    int n = opts.n;
    std::optional<CorrelationEstimate> estimate;
    std::size_t count = 0;

    if (opts.source == ValidateSource::Samples) {
        std::ifstream in(opts.samples_path);
        if (!in) throw FormatError("cannot open sample file '" + opts.samples_path + "'");
        const SampleBatch batch = read_samples_csv(in, n > 0 ? std::optional<int>(n) : std::nullopt);
        if (batch.count() < 2)
            throw PreconditionError("validation refused: need at least 2 samples, got " +
                                    std::to_string(batch.count()));
        if (m > 0 && batch.m != m)
            throw DimensionError("samples have " + std::to_string(batch.m) + " modes, --modes is " +
                                 std::to_string(m));
        m = batch.m;
        n = batch.n;
        count = batch.count();
        estimate = estimate_correlations_with_errors(batch, m);
        report["source"] = "samples";
    } else {
        const UnitaryMatrix u = load_or_sample_unitary(common, m, opts.seed);
        m = u.modes();
        require_particles(n, m);
        const PortList inputs = resolve_inputs(opts.inputs, n, m);
        if (opts.source == ValidateSource::Generate) {
            if (opts.count < 2)
                throw PreconditionError("validation refused: need at least 2 samples, got " +
                                        std::to_string(opts.count));
            const SampleBatch batch =
                opts.cls == ParticleClass::Distinguishable
                    ? sample_distinguishable_direct(u, inputs, opts.seed, opts.count)
                    : sample_exact(enumerate_distribution(u, inputs, opts.cls), opts.seed, opts.count);
            count = batch.count();
            estimate = estimate_correlations_with_errors(batch, m);
            report["source"] = "generate";
        } else {
            s = summary(correlation_dataset(u, inputs, opts.cls));
            report["source"] = "exact";
        }
        report["generator_class"] = to_string(opts.cls);
    }
    if (m < 2) throw DimensionError("validation needs m >= 2");
    if (estimate) s = summary(estimate->dataset);

    const Classification c = classify(s, m, n);
    report["m"] = m;
    report["n"] = n;
    report["count"] = estimate ? json(count) : json(nullptr);
    report["m1"] = s.m1;
    report["m2"] = s.m2;
    report["NM"] = s.nm;
    report["CV"] = optional_number(s.cv);
    report["label"] = to_string(c.label);
    report["tie"] = c.tie;
    json distances = json::object();
    for (const auto& [cls, d] : c.distances) distances[to_string(cls)] = d;
    report["distances"] = distances;
    if (estimate) {
        const auto& se = estimate->standard_errors;
        const double se_max = *std::max_element(se.begin(), se.end());
        const double se_mean = std::accumulate(se.begin(), se.end(), 0.0) / static_cast<double>(se.size());
        report["se_max"] = se_max;
        report["se_mean"] = se_mean;
        // SE of an average never exceeds the average SE
        report["se_m1_bound"] = se_mean;
    } else {
        report["se_max"] = nullptr;
        report["se_mean"] = nullptr;
        report["se_m1_bound"] = nullptr;
    }

    if (common.format == OutputFormat::Json) {
        out << report.dump(2) << '\n';
    } else {
        Table table{{"key", "value"}, {}};
        for (const auto& [key, value] : report.items()) {
            if (value.is_object()) {
                for (const auto& [sub, v] : value.items()) table.rows.push_back({key + "." + sub, v});
            } else {
                table.rows.push_back({key, value});
            }
        }
        write_table(out, table, OutputFormat::Csv);
    }
    return kExitOk;
}

int cmd_unitary(const UnitaryOptions& opts, const CommonOptions&, std::ostream& out)
{
    if (opts.kind == "haar") {
        require_modes(opts.m);
        write_unitary(out, haar_random_unitary(opts.m, opts.seed));
    } else if (opts.kind == "fourier") {
        require_modes(opts.m);
        write_unitary(out, fourier_unitary(opts.m));
    } else if (opts.kind == "beamsplitter") {
        write_unitary(out, balanced_beamsplitter());
    } else {
        throw FormatError("unknown unitary kind '" + opts.kind + "' (expected haar, fourier or beamsplitter)");
    }
    return kExitOk;
}

} // namespace mbi::cli
