#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace liniso {

class BitString {
 public:
  BitString() = default;
  static BitString from_string(std::string_view zeros_and_ones);
  // Unpacks `bit_count` bits stored MSB-first per byte.
  static BitString from_bytes(std::span<const std::uint8_t> bytes, std::uint64_t bit_count);

  std::uint64_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::uint64_t i) const { return bits_[i] != 0; }

  void push_back(bool b) { bits_.push_back(b ? 1 : 0); }
  void append(const BitString& other);
  // Low `width` bits of v, bit 0 first.
  void append_uint(std::uint64_t v, int width);

  std::string to_string() const;
  // MSB-first per byte, final byte zero-padded.
  std::vector<std::uint8_t> to_bytes() const;
  std::string to_hex() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

class BitReader {
 public:
  explicit BitReader(const BitString& bits) : bits_(bits) {}

  bool read_bit();
  std::uint64_t read_uint(int width);  // inverse of append_uint
  std::uint64_t remaining() const { return bits_.size() - pos_; }
  bool at_end() const { return pos_ == bits_.size(); }
  // Throws ProtocolFault unless every bit was consumed.
  void expect_end() const;

 private:
  const BitString& bits_;
  std::uint64_t pos_ = 0;
};

// Elias-gamma: floor(log2 k) zeros, then k in binary MSB first. k >= 1.
BitString encode_gamma(std::uint64_t k);
std::uint64_t decode_gamma(BitReader& in);
std::uint64_t gamma_length(std::uint64_t k);

}  // namespace liniso
