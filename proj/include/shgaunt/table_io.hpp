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

// Table persistence.
//
// Binary layout, all integers little-endian:
//   "GSHT" | version u16 | basis u8 | N1 u16 | N2 u16
//   per target (n, m) in ACN order: count u64, count x (row u32, col u32, value f64)
//   CRC-64/XZ of every preceding byte, u64
//
// JSON export writes the same triplets with 17 significant digits.

#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/crc.hpp>

#include "shgaunt/gaunt.hpp"

namespace shg {

inline constexpr char kTableMagic[4] = {'G', 'S', 'H', 'T'};
inline constexpr std::uint16_t kTableVersion = 1;

/// Malformed, truncated, corrupted or unsupported table data.
class TableFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The file could not be opened, read or written.
class TableIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Crc64 = boost::crc_optimal<64, 0x42F0E1EBA9EA3693ULL, ~0ULL, ~0ULL, true, true>;

inline std::uint64_t crc64(std::span<const std::uint8_t> bytes) {
  Crc64 crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

namespace detail {

class ByteWriter {
 public:
  void raw(const void* data, std::size_t size) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    bytes_.insert(bytes_.end(), p, p + size);
  }
  template <typename T>
  void put(T value) {
    std::uint64_t bits = 0;
    if constexpr (std::is_floating_point_v<T>) {
      bits = std::bit_cast<std::uint64_t>(value);
    } else {
      bits = static_cast<std::uint64_t>(value);
    }
    for (std::size_t i = 0; i < sizeof(T); ++i) bytes_.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
  std::vector<std::uint8_t>& bytes() { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}
  template <typename T>
  T get() {
    if (remaining() < sizeof(T)) throw TableFormatError("table: truncated data");
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += sizeof(T);
    if constexpr (std::is_same_v<T, double>) {
      return std::bit_cast<double>(bits);
    } else {
      return static_cast<T>(bits);
    }
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::size_t position() const { return pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::vector<std::uint8_t> encode_table(const GauntTable& table) {
  detail::ByteWriter w;
  w.raw(kTableMagic, sizeof(kTableMagic));
  w.put<std::uint16_t>(kTableVersion);
  w.put<std::uint8_t>(static_cast<std::uint8_t>(table.basis()));
  w.put<std::uint16_t>(static_cast<std::uint16_t>(table.order1()));
  w.put<std::uint16_t>(static_cast<std::uint16_t>(table.order2()));
  for (const auto& mat : table.matrices()) {
    w.put<std::uint64_t>(mat.nonzeros());
    for (const auto& e : mat.entries()) {
      w.put<std::uint32_t>(e.row);
      w.put<std::uint32_t>(e.col);
      w.put<double>(e.value);
    }
  }
  const std::uint64_t crc = crc64(w.bytes());
  w.put<std::uint64_t>(crc);
  return std::move(w.bytes());
}

inline GauntTable decode_table(std::span<const std::uint8_t> bytes) {
  constexpr std::size_t kHeader = 4 + 2 + 1 + 2 + 2;
  if (bytes.size() < kHeader + 8) throw TableFormatError("table: file too short");
  if (std::memcmp(bytes.data(), kTableMagic, sizeof(kTableMagic)) != 0) throw TableFormatError("table: bad magic");

  const auto body = bytes.first(bytes.size() - 8);
  detail::ByteReader trailer(bytes.last(8));
  if (trailer.get<std::uint64_t>() != crc64(body)) throw TableFormatError("table: checksum mismatch");

  detail::ByteReader r(body.subspan(4));
  const auto version = r.get<std::uint16_t>();
  if (version != kTableVersion) throw TableFormatError("table: unsupported version " + std::to_string(version));
  const auto basis_byte = r.get<std::uint8_t>();
  if (basis_byte > 1) throw TableFormatError("table: unknown basis");
  const auto basis = static_cast<Basis>(basis_byte);
  const int n1 = r.get<std::uint16_t>();
  const int n2 = r.get<std::uint16_t>();

  const std::size_t targets = coeff_count(n1 + n2);
  std::vector<GauntMatrix> matrices;
  matrices.reserve(targets);
  for (std::size_t q = 0; q < targets; ++q) {
    const auto count = r.get<std::uint64_t>();
    if (count > r.remaining() / 16) throw TableFormatError("table: entry count exceeds data");
    std::vector<GauntEntry> entries(static_cast<std::size_t>(count));
    for (auto& e : entries) {
      e.row = r.get<std::uint32_t>();
      e.col = r.get<std::uint32_t>();
      e.value = r.get<double>();
    }
    try {
      matrices.emplace_back(basis, n1, n2, from_acn(q), std::move(entries));
    } catch (const std::logic_error& err) {
      throw TableFormatError(std::string("table: ") + err.what());
    }
  }
  if (r.remaining() != 0) throw TableFormatError("table: trailing bytes");
  return GauntTable(basis, n1, n2, std::move(matrices));
}

inline void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw TableIoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw TableIoError("write failed: " + path.string());
}

inline std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TableIoError("cannot open " + path.string() + " for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw TableIoError("read failed: " + path.string());
  return bytes;
}

inline void save_table(const std::filesystem::path& path, const GauntTable& table) {
  write_bytes(path, encode_table(table));
}

inline GauntTable load_table(const std::filesystem::path& path) { return decode_table(read_bytes(path)); }

/// 17 significant digits, enough to read back the same double.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// JSON document holding one or more tables.
inline void write_tables_json(std::ostream& os, std::span<const GauntTable> tables) {
  os << "{\"format\":\"gsht-json\",\"version\":" << kTableVersion << ",\"tables\":[";
  for (std::size_t t = 0; t < tables.size(); ++t) {
    const auto& table = tables[t];
    if (t > 0) os << ',';
    os << "\n{\"basis\":\"" << to_string(table.basis()) << "\",\"n1\":" << table.order1()
       << ",\"n2\":" << table.order2() << ",\"indexing\":\"acn0\",\"targets\":[";
    for (std::size_t q = 0; q < table.size(); ++q) {
      const auto& mat = table[q];
      if (q > 0) os << ',';
      os << "\n{\"n\":" << mat.target().n << ",\"m\":" << mat.target().m << ",\"entries\":[";
      for (std::size_t i = 0; i < mat.entries().size(); ++i) {
        const auto& e = mat.entries()[i];
        if (i > 0) os << ',';
        os << '[' << e.row << ',' << e.col << ',' << format_double(e.value) << ']';
      }
      os << "]}";
    }
    os << "]}";
  }
  os << "]}\n";
}

inline void save_tables_json(const std::filesystem::path& path, std::span<const GauntTable> tables) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw TableIoError("cannot open " + path.string() + " for writing");
  write_tables_json(out, tables);
  out.close();
  if (!out) throw TableIoError("write failed: " + path.string());
}

}  // namespace shg
