// Copyright 2026 The qinvert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "qinvert/errors.hpp"
#include "qinvert/json_io.hpp"
#include "support/generators.hpp"

namespace qinvert {
namespace {

using nlohmann::json;
using testing::for_all;

TEST(JsonIo, ComplexMatrixLayoutIsRowMajorPairs) {
  ComplexMatrix m(2, 2);
  m << Complex(1, 2), Complex(3, 4), Complex(5, 6), Complex(7, 8);
  const json j = complex_matrix_to_json(m);
  EXPECT_EQ(j.at("dim"), 2);
  EXPECT_EQ(j.at("data"), json::parse("[[1.0,2.0],[3.0,4.0],[5.0,6.0],[7.0,8.0]]"));
}

TEST(JsonIo, ComplexMatrixRoundTrip) {
  for_all(30, 81, [](Rng& rng) {
    const int d = testing::uniform_int(rng, 1, 6);
    const ComplexMatrix m = testing::gaussian_matrix(d, d, rng);
    const json j = json::parse(complex_matrix_to_json(m).dump());
    EXPECT_EQ(max_abs_diff(complex_matrix_from_json(j), m), 0.0);
  });
}

TEST(JsonIo, SuperoperatorRoundTrip) {
  for_all(20, 82, [](Rng& rng) {
    const int d = testing::uniform_int(rng, 2, 4);
    const SuperOperator s = testing::random_superop(d, rng);
    const json j = json::parse(superop_to_json(s).dump());
    EXPECT_EQ(j.at("dim"), d);
    EXPECT_EQ(j.at("lr_matrix").size(), static_cast<std::size_t>(d * d * d * d));
    EXPECT_EQ(max_abs_diff(superop_from_json(j), s), 0.0);
  });
}

TEST(JsonIo, StateRoundTripPureAndDensity) {
  for_all(20, 83, [](Rng& rng) {
    const Dims dims{testing::uniform_int(rng, 2, 3), testing::uniform_int(rng, 2, 3)};
    const BipartiteState pure = testing::random_pure_state(dims, rng);
    const BipartiteState pure_back = state_from_json(json::parse(state_to_json(pure).dump()));
    EXPECT_TRUE(pure_back.is_pure());
    EXPECT_EQ(pure_back.dims(), dims);
    EXPECT_EQ((pure_back.vector() - pure.vector()).cwiseAbs().maxCoeff(), 0.0);

    const BipartiteState rho = testing::random_density_state(dims, rng);
    const json j = state_to_json(rho);
    EXPECT_EQ(j.at("kind"), "density");
    const BipartiteState rho_back = state_from_json(json::parse(j.dump()));
    EXPECT_FALSE(rho_back.is_pure());
    EXPECT_EQ(max_abs_diff(rho_back.density_matrix(), rho.density_matrix()), 0.0);
  });
}

TEST(JsonIo, SchemaErrorsAreParseErrors) {
  EXPECT_THROW(complex_matrix_from_json(json::parse(R"({"data":[]})")), ParseError);
  EXPECT_THROW(complex_matrix_from_json(json::parse(R"({"dim":2,"data":[[1,0]]})")), ParseError);
  EXPECT_THROW(complex_matrix_from_json(json::parse(R"({"dim":1,"data":[[1]]})")), ParseError);
  EXPECT_THROW(complex_matrix_from_json(json::parse(R"({"dim":1,"data":[["a",0]]})")), ParseError);
  EXPECT_THROW(complex_matrix_from_json(json::parse(R"({"dim":0,"data":[]})")), ParseError);
  EXPECT_THROW(superop_from_json(json::parse(R"({"dim":2,"lr_matrix":[[1,0]]})")), ParseError);
  EXPECT_THROW(state_from_json(json::parse(R"({"dims":[2,2],"kind":"mixed","data":[]})")), ParseError);
  EXPECT_THROW(state_from_json(json::parse(R"({"dims":[2],"kind":"pure","data":[]})")), ParseError);
  EXPECT_THROW(state_from_json(json::parse("[1,2,3]")), ParseError);
}

TEST(JsonIo, WellFormedButInvalidStatesAreRejected) {
  EXPECT_THROW(state_from_json(json::parse(R"({"dims":[1,2],"kind":"pure","data":[[1,0],[1,0]]})")),
               InvalidStateError);
  EXPECT_THROW(state_from_json(json::parse(
                   R"({"dims":[1,2],"kind":"density","data":[[1,0],[0,0],[0,0],[1,0]]})")),
               InvalidStateError);
}

TEST(JsonIo, ReadJsonFileReportsMissingAndMalformedFiles) {
  const auto dir = std::filesystem::temp_directory_path();
  EXPECT_THROW(read_json_file(dir / "qinvert_missing_file.json"), ParseError);
  const auto bad = dir / "qinvert_bad_file.json";
  std::ofstream(bad) << "{not json";
  EXPECT_THROW(read_json_file(bad), ParseError);
  std::filesystem::remove(bad);
}

}  // namespace
}  // namespace qinvert
