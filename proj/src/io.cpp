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

#include "mbi/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mbi/errors.hpp"

namespace mbi {

using nlohmann::json;

std::string format_double(double value)
{
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

json unitary_to_json(const UnitaryMatrix& u)
{
    json rows = json::array();
    for (int r = 0; r < u.modes(); ++r) {
        json row = json::array();
        for (int c = 0; c < u.modes(); ++c) row.push_back({u(r, c).real(), u(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return json{{"m", u.modes()}, {"rows", std::move(rows)}};
}

UnitaryMatrix unitary_from_json(const json& j, double tolerance)
{
    try {
        const int m = j.at("m").get<int>();
        const json& rows = j.at("rows");
        if (m < 1) throw FormatError("unitary JSON: m must be >= 1");
        if (!rows.is_array() || static_cast<int>(rows.size()) != m)
            throw FormatError("unitary JSON: expected " + std::to_string(m) + " rows");
        ComplexMatrix entries(m, m);
        for (int r = 0; r < m; ++r) {
            const json& row = rows[r];
            if (!row.is_array() || static_cast<int>(row.size()) != m)
                throw FormatError("unitary JSON: row " + std::to_string(r + 1) + " must have " + std::to_string(m) +
                                  " entries");
            for (int c = 0; c < m; ++c) {
                const json& z = row[c];
                if (!z.is_array() || z.size() != 2)
                    throw FormatError("unitary JSON: entries must be [re, im] pairs");
                entries(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
            }
        }
        const double residual = unitarity_residual(entries);
        if (!(residual <= tolerance)) {
            std::ostringstream msg;
            msg << "unitary JSON: matrix rejected, unitarity residual " << residual << " exceeds " << tolerance;
            throw FormatError(msg.str());
        }
        return UnitaryMatrix(std::move(entries), tolerance);
    } catch (const json::exception& e) {
        throw FormatError(std::string("unitary JSON: ") + e.what());
    }
}

void write_unitary(std::ostream& out, const UnitaryMatrix& u)
{
    // doubles are printed with 17 significant digits, so the round trip is exact
    out << unitary_to_json(u).dump() << '\n';
}

UnitaryMatrix read_unitary(std::istream& in, double tolerance)
{
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw FormatError(std::string("unitary JSON: ") + e.what());
    }
    return unitary_from_json(j, tolerance);
}

UnitaryMatrix read_unitary_file(const std::string& path, double tolerance)
{
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open unitary file '" + path + "'");
    return read_unitary(in, tolerance);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, sep)) fields.push_back(field);
    if (!line.empty() && line.back() == sep) fields.emplace_back();
    return fields;
}

std::string trim(std::string s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

long parse_integer(const std::string& text, const char* what)
{
    const std::string t = trim(text);
    std::size_t used = 0;
    long value = 0;
    try {
        value = std::stol(t, &used);
    } catch (const std::exception&) {
        throw FormatError(std::string(what) + ": '" + t + "' is not an integer");
    }
    if (used != t.size()) throw FormatError(std::string(what) + ": '" + t + "' is not an integer");
    return value;
}

double parse_real(const std::string& text, const char* what)
{
    const std::string t = trim(text);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(t, &used);
    } catch (const std::exception&) {
        throw FormatError(std::string(what) + ": '" + t + "' is not a number");
    }
    if (used != t.size()) throw FormatError(std::string(what) + ": '" + t + "' is not a number");
    return value;
}

} // namespace

void write_dataset_csv(std::ostream& out, const CorrelationDataset& d)
{
    out << "o1,o2,value\n";
    std::size_t idx = 0;
    for (int o1 = 1; o1 <= d.modes(); ++o1)
        for (int o2 = o1 + 1; o2 <= d.modes(); ++o2, ++idx)
            out << o1 << ',' << o2 << ',' << format_double(d.values()[idx]) << '\n';
}

CorrelationDataset read_dataset_csv(std::istream& in, int n, std::optional<ParticleClass> cls)
{
    std::string line;
    if (!std::getline(in, line) || trim(line) != "o1,o2,value")
        throw FormatError("dataset CSV: missing header \"o1,o2,value\"");
    std::vector<std::tuple<int, int, double>> rows;
    int m = 1;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 3) throw FormatError("dataset CSV: expected 3 fields in '" + line + "'");
        const auto o1 = static_cast<int>(parse_integer(fields[0], "dataset CSV"));
        const auto o2 = static_cast<int>(parse_integer(fields[1], "dataset CSV"));
        if (o1 < 1 || o2 <= o1) throw FormatError("dataset CSV: rows need 1 <= o1 < o2");
        rows.emplace_back(o1, o2, parse_real(fields[2], "dataset CSV"));
        m = std::max(m, o2);
    }
    const std::size_t pairs = static_cast<std::size_t>(m) * (m - 1) / 2;
    if (rows.size() != pairs) throw FormatError("dataset CSV: expected " + std::to_string(pairs) + " rows");
    std::vector<double> values(pairs);
    std::vector<bool> seen(pairs, false);
    for (const auto& [o1, o2, v] : rows) {
        const auto idx = CorrelationDataset::pair_index(m, o1, o2);
        if (seen[idx]) throw FormatError("dataset CSV: duplicate pair");
        seen[idx] = true;
        values[idx] = v;
    }
    return CorrelationDataset(m, n, std::move(values), cls);
}

// ---------------------------------------------------------------------------

json summary_to_json(const MomentSummary& s, int m, int n, std::optional<ParticleClass> cls)
{
    json j{{"m", m}, {"n", n}, {"m1", s.m1}, {"m2", s.m2}, {"NM", s.nm}};
    j["class"] = cls ? json(to_string(*cls)) : json(nullptr);
    j["CV"] = s.cv ? json(*s.cv) : json(nullptr);
    return j;
}

MomentSummary summary_from_json(const json& j)
{
    try {
        MomentSummary s;
        s.m1 = j.at("m1").get<double>();
        s.m2 = j.at("m2").get<double>();
        s.nm = j.at("NM").get<double>();
        if (!j.at("CV").is_null()) s.cv = j.at("CV").get<double>();
        return s;
    } catch (const json::exception& e) {
        throw FormatError(std::string("summary JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------------------

void write_samples_csv(std::ostream& out, const SampleBatch& batch)
{
    for (const auto& s : batch.samples) {
        for (int o = 0; o < s.modes(); ++o) {
            if (o) out << ',';
            out << s[o];
        }
        out << '\n';
    }
}

SampleBatch read_samples_csv(std::istream& in, std::optional<int> n)
{
    SampleBatch batch;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ++row;
        const auto fields = split(line, ',');
        std::vector<int> counts;
        counts.reserve(fields.size());
        for (const auto& f : fields) {
            const long c = parse_integer(f, "sample CSV");
            if (c < 0) throw FormatError("sample CSV: negative count in row " + std::to_string(row));
            counts.push_back(static_cast<int>(c));
        }
        OccupationVector sample(std::move(counts));
        if (batch.samples.empty()) {
            batch.m = sample.modes();
            batch.n = n.value_or(sample.particles());
        }
        if (sample.modes() != batch.m)
            throw FormatError("sample CSV: row " + std::to_string(row) + " has " + std::to_string(sample.modes()) +
                              " columns, expected " + std::to_string(batch.m));
        if (sample.particles() != batch.n)
            throw FormatError("sample CSV: row " + std::to_string(row) + " sums to " +
                              std::to_string(sample.particles()) + ", expected " + std::to_string(batch.n));
        batch.samples.push_back(std::move(sample));
    }
    if (n && batch.samples.empty()) batch.n = *n;
    return batch;
}

json certification_to_json(const ModePermutation& p, const PortList& inputs, const PortList& outputs,
                           const Certification& c)
{
    return json{{"permutation", p.to_string()},
                {"inputs", inputs},
                {"outputs", outputs},
                {"law", to_string(c.verdict.law)},
                {"predicted", c.verdict.suppressed},
                {"probability", c.probability}};
}

} // namespace mbi
