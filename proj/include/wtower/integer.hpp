#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace wtower {

struct BigRep;

// Arbitrary-precision integer. Values that fit in int64 are stored inline;
// anything larger is promoted to a GMP integer and demoted again when it fits.
class Integer {
 public:
  Integer() noexcept = default;
  template <std::signed_integral T>
  Integer(T v) noexcept : small_(static_cast<std::int64_t>(v)) {}  // NOLINT
  Integer(const Integer& other);
  Integer(Integer&& other) noexcept : small_(other.small_), big_(other.big_) {
    other.big_ = nullptr;
    other.small_ = 0;
  }
  Integer& operator=(const Integer& other);
  Integer& operator=(Integer&& other) noexcept;
  ~Integer();

  static Integer from_string(std::string_view text);

  bool is_zero() const noexcept { return big_ == nullptr && small_ == 0; }
  bool is_one() const noexcept { return big_ == nullptr && small_ == 1; }
  bool is_unit() const noexcept {
    return big_ == nullptr && (small_ == 1 || small_ == -1);
  }
  bool is_small() const noexcept { return big_ == nullptr; }
  int sign() const noexcept;
  std::optional<std::int64_t> to_int64() const noexcept;
  std::string to_string() const;

  Integer operator-() const;
  Integer abs() const;

  Integer& operator+=(const Integer& b);
  Integer& operator-=(const Integer& b);
  Integer& operator*=(const Integer& b);
  // *this += a * b
  void addmul(const Integer& a, const Integer& b);
  // *this -= a * b
  void submul(const Integer& a, const Integer& b);

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

  friend bool operator==(const Integer& a, const Integer& b) noexcept;
  friend std::strong_ordering operator<=>(const Integer& a,
                                          const Integer& b) noexcept;

  // Quotient rounded toward -infinity; b != 0.
  friend Integer floor_div(const Integer& a, const Integer& b);
  // Remainder in [0, |b|).
  friend Integer floor_mod(const Integer& a, const Integer& b);
  // Quotient rounded to the nearest integer (ties toward +infinity).
  friend Integer round_div(const Integer& a, const Integer& b);
  // a / b where b is known to divide a.
  friend Integer exact_div(const Integer& a, const Integer& b);
  friend bool divides(const Integer& d, const Integer& a);
  friend Integer gcd(const Integer& a, const Integer& b);
  // g = s*a + t*b with g = gcd(a, b) >= 0.
  friend void gcdext(Integer& g, Integer& s, Integer& t, const Integer& a,
                     const Integer& b);

  std::size_t hash() const noexcept;

 private:
  std::int64_t small_ = 0;
  BigRep* big_ = nullptr;

  void set_big(BigRep* z);  // takes ownership, normalizes
  friend struct IntegerAccess;
};

std::ostream& operator<<(std::ostream& os, const Integer& v);

}  // namespace wtower

template <>
struct std::hash<wtower::Integer> {
  std::size_t operator()(const wtower::Integer& v) const noexcept {
    return v.hash();
  }
};
