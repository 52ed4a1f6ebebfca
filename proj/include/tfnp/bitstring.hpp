#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tfnp {

/// Finite bit sequence, most significant bit first.
///
/// Ordering is lexicographic, so for strings of equal length it agrees with
/// the order of their unsigned binary values.
class BitString {
public:
  BitString() = default;
  explicit BitString(std::size_t length, bool fill = false) : bits_(length, fill ? 1 : 0) {}

  static BitString parse(std::string_view text);
  static BitString from_uint(std::uint64_t value, std::size_t width);
  static BitString zeros(std::size_t n) { return BitString(n, false); }
  static BitString ones(std::size_t n) { return BitString(n, true); }

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }
  void push_back(bool value) { bits_.push_back(value ? 1 : 0); }
  void append(const BitString& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }

  /// Value as an unsigned integer; only defined for size() <= 64.
  std::uint64_t to_uint() const;
  std::string to_string() const;

  BitString slice(std::size_t pos, std::size_t len) const;
  BitString without(std::size_t pos) const;
  BitString with_inserted(std::size_t pos, bool value) const;
  bool is_zero() const noexcept;
  std::size_t popcount() const noexcept;

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  friend BitString operator+(BitString lhs, const BitString& rhs) {
    lhs.append(rhs);
    return lhs;
  }
  friend bool operator==(const BitString&, const BitString&) = default;
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    return a.bits_ <=> b.bits_;
  }

private:
  std::vector<std::uint8_t> bits_;
};

BitString operator^(const BitString& a, const BitString& b);
BitString operator~(const BitString& a);

} // namespace tfnp

template <>
struct std::hash<tfnp::BitString> {
  std::size_t operator()(const tfnp::BitString& s) const noexcept {
    std::size_t h = s.size() * 0x9E3779B97F4A7C15ULL;
    for (auto b : s.bits()) h = (h ^ b) * 0x100000001B3ULL + 0x7F4A7C15ULL;
    return h;
  }
};
