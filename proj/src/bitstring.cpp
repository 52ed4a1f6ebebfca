#include "tfnp/bitstring.hpp"

#include <algorithm>
#include <stdexcept>

namespace tfnp {

BitString BitString::parse(std::string_view text) {
  BitString out;
  out.bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("bit string may only contain 0 and 1: '" + std::string(text) + "'");
    out.bits_.push_back(c == '1' ? 1 : 0);
  }
  return out;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
  BitString out(width);
  for (std::size_t i = 0; i < width; ++i) {
    std::size_t shift = width - 1 - i;
    out.bits_[i] = shift < 64 ? static_cast<std::uint8_t>((value >> shift) & 1U) : 0;
  }
  return out;
}

std::uint64_t BitString::to_uint() const {
  if (bits_.size() > 64) throw std::out_of_range("bit string wider than 64 bits");
  std::uint64_t v = 0;
  for (auto b : bits_) v = (v << 1) | b;
  return v;
}

std::string BitString::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
  if (pos + len > bits_.size()) throw std::out_of_range("slice out of range");
  BitString out;
  out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                   bits_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return out;
}

BitString BitString::without(std::size_t pos) const {
  if (pos >= bits_.size()) throw std::out_of_range("bit index out of range");
  BitString out = *this;
  out.bits_.erase(out.bits_.begin() + static_cast<std::ptrdiff_t>(pos));
  return out;
}

BitString BitString::with_inserted(std::size_t pos, bool value) const {
  if (pos > bits_.size()) throw std::out_of_range("bit index out of range");
  BitString out = *this;
  out.bits_.insert(out.bits_.begin() + static_cast<std::ptrdiff_t>(pos), value ? 1 : 0);
  return out;
}

bool BitString::is_zero() const noexcept {
  return std::all_of(bits_.begin(), bits_.end(), [](auto b) { return b == 0; });
}

std::size_t BitString::popcount() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

BitString operator^(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw std::invalid_argument("xor of bit strings with different lengths");
  BitString out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.set(i, a[i] != b[i]);
  return out;
}

BitString operator~(const BitString& a) {
  BitString out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.set(i, !a[i]);
  return out;
}

} // namespace tfnp
