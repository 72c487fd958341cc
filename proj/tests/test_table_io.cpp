// Copyright 2026 The shgaunt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "shgaunt/table_io.hpp"

namespace shg {
namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("shgaunt_test_" + name);
}

TEST(Crc64, CheckValue) {
  const std::string s = "123456789";
  EXPECT_EQ(crc64(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size())), 0x995DC9BBDF1939FAULL);
}

TEST(TableFormat, HeaderLayout) {
  const GauntTable t = build_table(Basis::real, 2, 1);
  const auto bytes = encode_table(t);
  ASSERT_GE(bytes.size(), 19u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "GSHT");
  EXPECT_EQ(bytes[4], 1);  // version, little-endian
  EXPECT_EQ(bytes[5], 0);
  EXPECT_EQ(bytes[6], 1);  // real basis
  EXPECT_EQ(bytes[7], 2);  // N1
  EXPECT_EQ(bytes[9], 1);  // N2
  // First block: target (0,0) has 3 entries (one per matching order).
  EXPECT_EQ(bytes[11], t[0].nonzeros());
  std::size_t expected = 11 + 8;
  for (const auto& m : t.matrices()) expected += 8 + 16 * m.nonzeros();
  EXPECT_EQ(bytes.size(), expected);
}

TEST(TableFormat, RoundTripIsBitExact) {
  for (Basis b : {Basis::complex, Basis::real}) {
    const GauntTable t = build_table(b, 4, 3);
    const auto bytes = encode_table(t);
    const GauntTable back = decode_table(bytes);
    EXPECT_TRUE(back == t);
    EXPECT_EQ(encode_table(back), bytes);
  }
}

TEST(TableFormat, FileRoundTrip) {
  const auto path = temp_file("rt.gsht");
  const GauntTable t = build_table(Basis::real, 3, 3);
  save_table(path, t);
  EXPECT_TRUE(load_table(path) == t);
  EXPECT_EQ(read_bytes(path), encode_table(t));
  std::filesystem::remove(path);
}

TEST(TableFormat, DetectsCorruption) {
  const auto bytes = encode_table(build_table(Basis::real, 2, 2));
  auto flipped = bytes;
  flipped[40] ^= 0x01;
  EXPECT_THROW(decode_table(flipped), TableFormatError);

  auto magic = bytes;
  magic[0] = 'X';
  EXPECT_THROW(decode_table(magic), TableFormatError);

  auto truncated = bytes;
  truncated.resize(bytes.size() - 20);
  EXPECT_THROW(decode_table(truncated), TableFormatError);

  EXPECT_THROW(decode_table(std::vector<std::uint8_t>(5, 0)), TableFormatError);
}

TEST(TableFormat, RejectsOtherVersionEvenWithValidChecksum) {
  auto bytes = encode_table(build_table(Basis::real, 1, 1));
  bytes[4] = 2;
  bytes.resize(bytes.size() - 8);
  const std::uint64_t crc = crc64(bytes);
  for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<std::uint8_t>(crc >> (8 * i)));
  try {
    decode_table(bytes);
    FAIL() << "expected TableFormatError";
  } catch (const TableFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
  }
}

TEST(TableFormat, IoErrors) {
  EXPECT_THROW(load_table("/nonexistent/dir/table.gsht"), TableIoError);
  EXPECT_THROW(save_table("/nonexistent/dir/table.gsht", build_table(Basis::real, 0, 0)), TableIoError);
}

TEST(TableJson, ParsesAndRoundTripsValues) {
  const GauntTable c = build_table(Basis::complex, 2, 2);
  const GauntTable r = build_table(Basis::real, 2, 2);
  std::vector<GauntTable> tables = {c, r};
  std::ostringstream os;
  write_tables_json(os, tables);
  const auto doc = nlohmann::json::parse(os.str());
  EXPECT_EQ(doc["format"], "gsht-json");
  ASSERT_EQ(doc["tables"].size(), 2u);
  EXPECT_EQ(doc["tables"][0]["basis"], "complex");
  EXPECT_EQ(doc["tables"][1]["basis"], "real");
  const auto& targets = doc["tables"][1]["targets"];
  ASSERT_EQ(targets.size(), 25u);
  for (std::size_t q = 0; q < targets.size(); ++q) {
    const auto& entries = targets[q]["entries"];
    ASSERT_EQ(entries.size(), r[q].nonzeros());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      EXPECT_EQ(entries[i][0].get<std::uint32_t>(), r[q].entries()[i].row);
      EXPECT_EQ(entries[i][1].get<std::uint32_t>(), r[q].entries()[i].col);
      EXPECT_EQ(entries[i][2].get<double>(), r[q].entries()[i].value);
    }
  }
}

}  // namespace
}  // namespace shg
