#include "liniso/bits.hpp"

#include <bit>

#include "liniso/errors.hpp"

namespace liniso {

BitString BitString::from_string(std::string_view s) {
  BitString b;
  for (char c : s) {
    if (c != '0' && c != '1') throw ContractViolation("bit string may only contain 0 and 1");
    b.push_back(c == '1');
  }
  return b;
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes, std::uint64_t bit_count) {
  if (bytes.size() * 8 < bit_count) throw ContractViolation("from_bytes: not enough bytes");
  BitString b;
  b.bits_.reserve(bit_count);
  for (std::uint64_t i = 0; i < bit_count; ++i) b.push_back((bytes[i / 8] >> (7 - i % 8)) & 1u);
  return b;
}

void BitString::append(const BitString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

void BitString::append_uint(std::uint64_t v, int width) {
  for (int i = 0; i < width; ++i) push_back((v >> i) & 1u);
}

std::string BitString::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<std::uint8_t> BitString::to_bytes() const {
  std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
  for (std::uint64_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  return out;
}

std::string BitString::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  for (auto byte : to_bytes()) {
    s.push_back(kDigits[byte >> 4]);
    s.push_back(kDigits[byte & 15]);
  }
  return s;
}

bool BitReader::read_bit() {
  if (pos_ >= bits_.size()) throw ProtocolFault("message ended early");
  return bits_[pos_++];
}

std::uint64_t BitReader::read_uint(int width) {
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(read_bit()) << i;
  return v;
}

void BitReader::expect_end() const {
  if (!at_end())
    throw ProtocolFault("message has " + std::to_string(remaining()) + " unexpected trailing bits");
}

BitString encode_gamma(std::uint64_t k) {
  if (k == 0) throw ContractViolation("Elias-gamma code needs k >= 1");
  int width = std::bit_width(k);
  BitString b;
  for (int i = 1; i < width; ++i) b.push_back(false);
  for (int i = width - 1; i >= 0; --i) b.push_back((k >> i) & 1u);
  return b;
}

std::uint64_t decode_gamma(BitReader& in) {
  int zeros = 0;
  while (!in.read_bit()) {
    if (++zeros > 63) throw ProtocolFault("Elias-gamma prefix longer than 63 zeros");
  }
  std::uint64_t k = 1;
  for (int i = 0; i < zeros; ++i) k = (k << 1) | static_cast<std::uint64_t>(in.read_bit());
  return k;
}

std::uint64_t gamma_length(std::uint64_t k) {
  if (k == 0) throw ContractViolation("Elias-gamma code needs k >= 1");
  return 2 * static_cast<std::uint64_t>(std::bit_width(k) - 1) + 1;
}

}  // namespace liniso
