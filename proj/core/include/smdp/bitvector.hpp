#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace smdp {

/// Fixed-width packed bit string. Index 0 is the first (leftmost) bit; numeric
/// readings treat the leftmost bit of a field as most significant.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t width);

  /// Parses a string of '0'/'1' characters. Throws smdp::Error on other characters.
  static BitVector from_string(std::string_view bits);
  static BitVector from_uint(std::uint64_t value, std::size_t width);

  std::size_t size() const noexcept { return width_; }
  bool empty() const noexcept { return width_ == 0; }

  bool operator[](std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  bool test(std::size_t i) const;
  void set(std::size_t i, bool value);
  void push_back(bool value);
  void append(const BitVector& other);

  /// Reads `width` bits starting at `offset` as an unsigned integer, MSB first.
  std::uint64_t to_uint(std::size_t offset, std::size_t width) const;
  std::uint64_t to_uint() const { return to_uint(0, width_); }
  void set_uint(std::size_t offset, std::size_t width, std::uint64_t value);

  BitVector slice(std::size_t offset, std::size_t width) const;
  std::size_t count() const noexcept;

  std::string to_string() const;
  std::size_t hash() const noexcept;

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b);

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

BitVector concat(std::initializer_list<const BitVector*> parts);

/// Number of bits needed to hold every value in [0, count), at least 1.
std::size_t index_width(std::uint64_t count) noexcept;

/// Number of bits needed to hold `value` as an unsigned integer, at least 1.
std::size_t value_width(std::uint64_t value) noexcept;

}  // namespace smdp

template <>
struct std::hash<smdp::BitVector> {
  std::size_t operator()(const smdp::BitVector& v) const noexcept { return v.hash(); }
};
