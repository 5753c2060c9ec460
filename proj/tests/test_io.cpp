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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "mbi/errors.hpp"
#include "mbi/io.hpp"

using namespace mbi;
using nlohmann::json;

TEST_CASE("unitary json round trip is exact")
{
    for (int m : {1, 2, 7}) {
        const UnitaryMatrix u = haar_random_unitary(m, 5);
        std::stringstream buffer;
        write_unitary(buffer, u);
        CHECK(read_unitary(buffer) == u);
    }
    const json j = unitary_to_json(balanced_beamsplitter());
    CHECK(j.at("m") == 2);
    CHECK(j.at("rows").size() == 2);
    CHECK(j.at("rows")[1][0][0].get<double>() < 0.0);
}

TEST_CASE("unitary json rejects bad input")
{
    std::istringstream not_unitary(R"({"m": 2, "rows": [[[1,0],[1,0]],[[0,0],[1,0]]]})");
    try {
        read_unitary(not_unitary);
        FAIL("expected rejection");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("residual") != std::string::npos);
    }
    std::istringstream short_rows(R"({"m": 2, "rows": [[[1,0],[0,0]]]})");
    CHECK_THROWS_AS(read_unitary(short_rows), FormatError);
    std::istringstream bad_entry(R"({"m": 1, "rows": [[[1,0,0]]]})");
    CHECK_THROWS_AS(read_unitary(bad_entry), FormatError);
    std::istringstream missing(R"({"rows": [[[1,0]]]})");
    CHECK_THROWS_AS(read_unitary(missing), FormatError);
    std::istringstream garbage("not json");
    CHECK_THROWS_AS(read_unitary(garbage), FormatError);
    CHECK_THROWS_AS(read_unitary_file("/nonexistent/unitary.json"), FormatError);

    // tolerance is honoured
    std::istringstream near(R"({"m": 1, "rows": [[[1.000001,0]]]})");
    CHECK_NOTHROW(read_unitary(near, 1e-5));
}

TEST_CASE("dataset csv round trip is exact")
{
    const auto d = correlation_dataset(haar_random_unitary(6, 3), {1, 2, 3}, ParticleClass::Boson);
    std::stringstream buffer;
    write_dataset_csv(buffer, d);
    const std::string text = buffer.str();
    CHECK(text.rfind("o1,o2,value\n1,2,", 0) == 0);
    const auto back = read_dataset_csv(buffer, 3, ParticleClass::Boson);
    CHECK(back.modes() == 6);
    CHECK(back.values() == d.values());
}

TEST_CASE("dataset csv rejects bad input")
{
    std::istringstream no_header("1,2,0.5\n");
    CHECK_THROWS_AS(read_dataset_csv(no_header, 2), FormatError);
    std::istringstream missing_pair("o1,o2,value\n1,2,-0.1\n1,3,-0.1\n");
    CHECK_THROWS_AS(read_dataset_csv(missing_pair, 2), FormatError);
    std::istringstream duplicate("o1,o2,value\n1,2,-0.1\n1,2,-0.1\n1,3,-0.1\n");
    CHECK_THROWS_AS(read_dataset_csv(duplicate, 2), FormatError);
    std::istringstream bad_number("o1,o2,value\n1,2,abc\n");
    CHECK_THROWS_AS(read_dataset_csv(bad_number, 2), FormatError);
    std::istringstream reversed("o1,o2,value\n2,1,-0.1\n");
    CHECK_THROWS_AS(read_dataset_csv(reversed, 2), FormatError);
}

TEST_CASE("summary json")
{
    const MomentSummary s{-0.01, 0.0003, -1.25, -0.8};
    const json j = summary_to_json(s, 50, 8, ParticleClass::Boson);
    CHECK(j.at("class") == "boson");
    CHECK(j.at("NM").get<double>() == -1.25);
    const MomentSummary back = summary_from_json(json::parse(j.dump()));
    CHECK(back.m1 == s.m1);
    CHECK(back.m2 == s.m2);
    CHECK(back.nm == s.nm);
    CHECK(back.cv == s.cv);

    const MomentSummary undefined{0.0, 0.0, 0.0, std::nullopt};
    const json u = summary_to_json(undefined, 4, 4, std::nullopt);
    CHECK(u.at("CV").is_null());
    CHECK(u.at("class").is_null());
    CHECK_FALSE(summary_from_json(u).cv.has_value());
    CHECK_THROWS_AS(summary_from_json(json::object()), FormatError);
}

TEST_CASE("sample csv")
{
    SampleBatch batch;
    batch.m = 3;
    batch.n = 2;
    batch.samples = {OccupationVector({1, 1, 0}), OccupationVector({0, 0, 2})};
    std::stringstream buffer;
    write_samples_csv(buffer, batch);
    CHECK(buffer.str() == "1,1,0\n0,0,2\n");
    const SampleBatch back = read_samples_csv(buffer, 2);
    CHECK(back.m == 3);
    CHECK(back.n == 2);
    CHECK(back.samples == batch.samples);

    std::istringstream wrong_sum("1,1,0\n1,0,0\n");
    CHECK_THROWS_AS(read_samples_csv(wrong_sum), FormatError);
    std::istringstream declared("1,1,0\n");
    CHECK_THROWS_AS(read_samples_csv(declared, 3), FormatError);
    std::istringstream ragged("1,1,0\n1,1\n");
    CHECK_THROWS_AS(read_samples_csv(ragged), FormatError);
    std::istringstream negative("2,-1\n");
    CHECK_THROWS_AS(read_samples_csv(negative), FormatError);
    std::istringstream text("1,x\n");
    CHECK_THROWS_AS(read_samples_csv(text), FormatError);
    std::istringstream empty("");
    CHECK(read_samples_csv(empty).count() == 0);
}

TEST_CASE("certification records")
{
    const ModePermutation p = ModePermutation::swap(2, 1, 2);
    const Certification c = certify(p, {1, 2}, {1, 2}, ParticleClass::Boson);
    const json j = certification_to_json(p, {1, 2}, {1, 2}, c);
    CHECK(j.at("permutation") == "(1 2)");
    CHECK(j.at("inputs") == json::array({1, 2}));
    CHECK(j.at("outputs") == json::array({1, 2}));
    CHECK(j.at("law") == "bosonic");
    CHECK(j.at("predicted") == true);
    CHECK(j.at("probability").get<double>() < 1e-15);
}

TEST_CASE("double formatting round trips")
{
    for (double v : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23}) CHECK(std::stod(format_double(v)) == v);
}
