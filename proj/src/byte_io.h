// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

// Little-endian byte writer/reader shared by the binary file formats and the
// wire codec.

#ifndef TINYGAIT_SRC_BYTE_IO_H_
#define TINYGAIT_SRC_BYTE_IO_H_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "tinygait/error.h"

namespace tinygait::internal {

template <std::size_t N>
using UnsignedOfSize = std::conditional_t<
    N == 1, std::uint8_t,
    std::conditional_t<N == 2, std::uint16_t,
                       std::conditional_t<N == 4, std::uint32_t,
                                          std::uint64_t>>>;

class ByteWriter {
 public:
  template <typename T>
  void Put(T value) {
    static_assert(std::is_arithmetic_v<T>);
    using U = UnsignedOfSize<sizeof(T)>;
    const U bits = std::bit_cast<U>(value);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      bytes_.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
    }
  }

  template <typename T>
  void PutAll(std::span<const T> values) {
    for (const T& v : values) Put(v);
  }

  void PutBytes(std::span<const std::uint8_t> b) {
    bytes_.insert(bytes_.end(), b.begin(), b.end());
  }

  std::vector<std::uint8_t> Take() { return std::move(bytes_); }
  std::size_t size() const { return bytes_.size(); }

 private:
  std::vector<std::uint8_t> bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  template <typename T>
  T Get() {
    static_assert(std::is_arithmetic_v<T>);
    using U = UnsignedOfSize<sizeof(T)>;
    Require(sizeof(T));
    U bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      bits |= static_cast<U>(static_cast<U>(bytes_[pos_ + i]) << (8 * i));
    }
    pos_ += sizeof(T);
    return std::bit_cast<T>(bits);
  }

  template <typename T>
  std::vector<T> GetVector(std::size_t n) {
    Require(n * sizeof(T));
    std::vector<T> out(n);
    for (auto& v : out) v = Get<T>();
    return out;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void Require(std::size_t n) const {
    if (bytes_.size() - pos_ < n) {
      throw FormatError("truncated input: need " + std::to_string(n) +
                        " bytes at offset " + std::to_string(pos_) +
                        ", have " + std::to_string(bytes_.size() - pos_));
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> ReadFileBytes(const std::string& path);
void WriteFileBytes(const std::string& path,
                    std::span<const std::uint8_t> bytes);

}  // namespace tinygait::internal

#endif  // TINYGAIT_SRC_BYTE_IO_H_
