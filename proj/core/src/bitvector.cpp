#include "smdp/bitvector.hpp"

#include <bit>

#include "smdp/errors.hpp"

namespace smdp {

BitVector::BitVector(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i, true);
    } else if (bits[i] != '0') {
      throw Error("bit string contains '" + std::string(1, bits[i]) + "'");
    }
  }
  return v;
}

BitVector BitVector::from_uint(std::uint64_t value, std::size_t width) {
  BitVector v(width);
  v.set_uint(0, width, value);
  return v;
}

bool BitVector::test(std::size_t i) const {
  if (i >= width_) throw WidthError("bit index " + std::to_string(i) + " out of range");
  return (*this)[i];
}

void BitVector::set(std::size_t i, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

void BitVector::push_back(bool value) {
  if ((width_ & 63) == 0) words_.push_back(0);
  ++width_;
  set(width_ - 1, value);
}

void BitVector::append(const BitVector& other) {
  words_.reserve((width_ + other.width_ + 63) / 64);
  for (std::size_t i = 0; i < other.width_; ++i) push_back(other[i]);
}

std::uint64_t BitVector::to_uint(std::size_t offset, std::size_t width) const {
  if (width > 64 || offset + width > width_) throw WidthError("bit field out of range");
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < width; ++i) value = (value << 1) | ((*this)[offset + i] ? 1u : 0u);
  return value;
}

void BitVector::set_uint(std::size_t offset, std::size_t width, std::uint64_t value) {
  if (width > 64 || offset + width > width_) throw WidthError("bit field out of range");
  for (std::size_t i = 0; i < width; ++i) set(offset + i, (value >> (width - 1 - i)) & 1u);
}

BitVector BitVector::slice(std::size_t offset, std::size_t width) const {
  if (offset + width > width_) throw WidthError("slice out of range");
  BitVector out(width);
  for (std::size_t i = 0; i < width; ++i) out.set(i, (*this)[offset + i]);
  return out;
}

std::size_t BitVector::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::string BitVector::to_string() const {
  std::string s(width_, '0');
  for (std::size_t i = 0; i < width_; ++i) {
    if ((*this)[i]) s[i] = '1';
  }
  return s;
}

std::size_t BitVector::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ width_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
  }
  return static_cast<std::size_t>(h ^ (h >> 33));
}

std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
  if (auto c = a.width_ <=> b.width_; c != 0) return c;
  for (std::size_t i = 0; i < a.width_; ++i) {
    if (a[i] != b[i]) return a[i] ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

BitVector concat(std::initializer_list<const BitVector*> parts) {
  std::size_t total = 0;
  for (const auto* p : parts) total += p->size();
  BitVector out(total);
  std::size_t at = 0;
  for (const auto* p : parts) {
    for (std::size_t i = 0; i < p->size(); ++i) out.set(at + i, (*p)[i]);
    at += p->size();
  }
  return out;
}

std::size_t index_width(std::uint64_t count) noexcept {
  if (count <= 2) return 1;
  return static_cast<std::size_t>(std::bit_width(count - 1));
}

std::size_t value_width(std::uint64_t value) noexcept {
  return value == 0 ? 1 : static_cast<std::size_t>(std::bit_width(value));
}

}  // namespace smdp
