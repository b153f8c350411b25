#include "wtower/integer.hpp"

#include <gmp.h>

#include <functional>
#include <limits>
#include <stdexcept>

namespace wtower {

struct BigRep {
  mpz_t v;
};

namespace {

BigRep* new_mpz() {
  auto* z = new BigRep;
  mpz_init(z->v);
  return z;
}

void delete_mpz(BigRep* z) {
  if (z != nullptr) {
    mpz_clear(z->v);
    delete z;
  }
}

constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();

}  // namespace

// Read-only mpz view of an Integer; small values are copied into a temporary.
struct IntegerAccess {
  explicit IntegerAccess(const Integer& v) {
    if (v.big_ != nullptr) {
      ptr = v.big_->v;
    } else {
      mpz_init_set_si(tmp, static_cast<long>(v.small_));
      ptr = tmp;
      owned = true;
    }
  }
  ~IntegerAccess() {
    if (owned) mpz_clear(tmp);
  }
  IntegerAccess(const IntegerAccess&) = delete;
  IntegerAccess& operator=(const IntegerAccess&) = delete;

  mpz_t tmp;
  mpz_srcptr ptr = nullptr;
  bool owned = false;

  static Integer wrap(BigRep* z) {
    Integer r;
    r.set_big(z);
    return r;
  }
};

Integer::Integer(const Integer& other) : small_(other.small_) {
  if (other.big_ != nullptr) {
    big_ = new_mpz();
    mpz_set(big_->v, other.big_->v);
  }
}

Integer& Integer::operator=(const Integer& other) {
  if (this == &other) return *this;
  if (other.big_ == nullptr) {
    delete_mpz(big_);
    big_ = nullptr;
    small_ = other.small_;
  } else {
    if (big_ == nullptr) big_ = new_mpz();
    mpz_set(big_->v, other.big_->v);
    small_ = 0;
  }
  return *this;
}

Integer& Integer::operator=(Integer&& other) noexcept {
  if (this == &other) return *this;
  delete_mpz(big_);
  small_ = other.small_;
  big_ = other.big_;
  other.big_ = nullptr;
  other.small_ = 0;
  return *this;
}

Integer::~Integer() { delete_mpz(big_); }

void Integer::set_big(BigRep* z) {
  if (mpz_fits_slong_p(z->v)) {
    small_ = mpz_get_si(z->v);
    delete_mpz(z);
    delete_mpz(big_);
    big_ = nullptr;
  } else {
    delete_mpz(big_);
    big_ = z;
    small_ = 0;
  }
}

Integer Integer::from_string(std::string_view text) {
  std::string s(text);
  auto* z = new_mpz();
  if (s.empty() || mpz_set_str(z->v, s.c_str(), 10) != 0) {
    delete_mpz(z);
    throw std::invalid_argument("not an integer: " + s);
  }
  return IntegerAccess::wrap(z);
}

int Integer::sign() const noexcept {
  if (big_ != nullptr) return mpz_sgn(big_->v);
  return (small_ > 0) - (small_ < 0);
}

std::optional<std::int64_t> Integer::to_int64() const noexcept {
  if (big_ == nullptr) return small_;
  return std::nullopt;
}

std::string Integer::to_string() const {
  if (big_ == nullptr) return std::to_string(small_);
  std::string out(mpz_sizeinbase(big_->v, 10) + 2, '\0');
  mpz_get_str(out.data(), 10, big_->v);
  out.resize(std::char_traits<char>::length(out.c_str()));
  return out;
}

Integer Integer::operator-() const {
  if (big_ == nullptr && small_ != kMin) return Integer(-small_);
  IntegerAccess a(*this);
  auto* z = new_mpz();
  mpz_neg(z->v, a.ptr);
  return IntegerAccess::wrap(z);
}

Integer Integer::abs() const { return sign() < 0 ? -*this : *this; }

Integer& Integer::operator+=(const Integer& b) {
  if (big_ == nullptr && b.big_ == nullptr) {
    std::int64_t r;
    if (!__builtin_add_overflow(small_, b.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  IntegerAccess x(*this), y(b);
  auto* z = new_mpz();
  mpz_add(z->v, x.ptr, y.ptr);
  set_big(z);
  return *this;
}

Integer& Integer::operator-=(const Integer& b) {
  if (big_ == nullptr && b.big_ == nullptr) {
    std::int64_t r;
    if (!__builtin_sub_overflow(small_, b.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  IntegerAccess x(*this), y(b);
  auto* z = new_mpz();
  mpz_sub(z->v, x.ptr, y.ptr);
  set_big(z);
  return *this;
}

Integer& Integer::operator*=(const Integer& b) {
  if (big_ == nullptr && b.big_ == nullptr) {
    std::int64_t r;
    if (!__builtin_mul_overflow(small_, b.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  IntegerAccess x(*this), y(b);
  auto* z = new_mpz();
  mpz_mul(z->v, x.ptr, y.ptr);
  set_big(z);
  return *this;
}

void Integer::addmul(const Integer& a, const Integer& b) {
  if (big_ == nullptr && a.big_ == nullptr && b.big_ == nullptr) {
    std::int64_t p, r;
    if (!__builtin_mul_overflow(a.small_, b.small_, &p) &&
        !__builtin_add_overflow(small_, p, &r)) {
      small_ = r;
      return;
    }
  }
  *this += a * b;
}

void Integer::submul(const Integer& a, const Integer& b) {
  if (big_ == nullptr && a.big_ == nullptr && b.big_ == nullptr) {
    std::int64_t p, r;
    if (!__builtin_mul_overflow(a.small_, b.small_, &p) &&
        !__builtin_sub_overflow(small_, p, &r)) {
      small_ = r;
      return;
    }
  }
  *this -= a * b;
}

bool operator==(const Integer& a, const Integer& b) noexcept {
  if (a.big_ == nullptr && b.big_ == nullptr) return a.small_ == b.small_;
  if (a.big_ == nullptr || b.big_ == nullptr) return false;  // normalized
  return mpz_cmp(a.big_->v, b.big_->v) == 0;
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept {
  if (a.big_ == nullptr && b.big_ == nullptr) return a.small_ <=> b.small_;
  int c;
  if (a.big_ == nullptr) {
    c = -mpz_cmp_si(b.big_->v, static_cast<long>(a.small_));
  } else if (b.big_ == nullptr) {
    c = mpz_cmp_si(a.big_->v, static_cast<long>(b.small_));
  } else {
    c = mpz_cmp(a.big_->v, b.big_->v);
  }
  return c <=> 0;
}

Integer floor_div(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.big_ == nullptr && b.big_ == nullptr &&
      !(a.small_ == kMin && b.small_ == -1)) {
    std::int64_t q = a.small_ / b.small_;
    std::int64_t r = a.small_ % b.small_;
    if (r != 0 && ((r < 0) != (b.small_ < 0))) --q;
    return Integer(q);
  }
  IntegerAccess x(a), y(b);
  auto* z = new_mpz();
  mpz_fdiv_q(z->v, x.ptr, y.ptr);
  return IntegerAccess::wrap(z);
}

Integer floor_mod(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.big_ == nullptr && b.big_ == nullptr && b.small_ != kMin) {
    std::int64_t m = b.small_ < 0 ? -b.small_ : b.small_;
    std::int64_t r = a.small_ % m;
    if (r < 0) r += m;
    return Integer(r);
  }
  IntegerAccess x(a), y(b);
  auto* z = new_mpz();
  mpz_mod(z->v, x.ptr, y.ptr);
  return IntegerAccess::wrap(z);
}

Integer round_div(const Integer& a, const Integer& b) {
  // floor((2a + b) / (2b)) for b > 0; symmetric handling for b < 0.
  if (b.sign() < 0) return round_div(-a, -b);
  Integer two_a = a + a;
  return floor_div(two_a + b, b + b);
}

Integer exact_div(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.big_ == nullptr && b.big_ == nullptr &&
      !(a.small_ == kMin && b.small_ == -1)) {
    return Integer(a.small_ / b.small_);
  }
  IntegerAccess x(a), y(b);
  auto* z = new_mpz();
  mpz_divexact(z->v, x.ptr, y.ptr);
  return IntegerAccess::wrap(z);
}

bool divides(const Integer& d, const Integer& a) {
  if (d.is_zero()) return a.is_zero();
  if (a.big_ == nullptr && d.big_ == nullptr) {
    if (d.small_ == -1) return true;
    return a.small_ % d.small_ == 0;
  }
  IntegerAccess x(a), y(d);
  return mpz_divisible_p(x.ptr, y.ptr) != 0;
}

Integer gcd(const Integer& a, const Integer& b) {
  if (a.big_ == nullptr && b.big_ == nullptr && a.small_ != kMin &&
      b.small_ != kMin) {
    std::int64_t x = a.small_ < 0 ? -a.small_ : a.small_;
    std::int64_t y = b.small_ < 0 ? -b.small_ : b.small_;
    while (y != 0) {
      std::int64_t t = x % y;
      x = y;
      y = t;
    }
    return Integer(x);
  }
  IntegerAccess x(a), y(b);
  auto* z = new_mpz();
  mpz_gcd(z->v, x.ptr, y.ptr);
  return IntegerAccess::wrap(z);
}

void gcdext(Integer& g, Integer& s, Integer& t, const Integer& a,
            const Integer& b) {
  if (a.big_ == nullptr && b.big_ == nullptr && a.small_ != kMin &&
      b.small_ != kMin) {
    std::int64_t old_r = a.small_, r = b.small_;
    std::int64_t old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
    while (r != 0) {
      std::int64_t q = old_r / r;
      std::int64_t tmp = old_r - q * r;
      old_r = r;
      r = tmp;
      tmp = old_s - q * cur_s;
      old_s = cur_s;
      cur_s = tmp;
      tmp = old_t - q * cur_t;
      old_t = cur_t;
      cur_t = tmp;
    }
    if (old_r < 0) {
      old_r = -old_r;
      old_s = -old_s;
      old_t = -old_t;
    }
    g = Integer(old_r);
    s = Integer(old_s);
    t = Integer(old_t);
    return;
  }
  IntegerAccess x(a), y(b);
  auto* zg = new_mpz();
  auto* zs = new_mpz();
  auto* zt = new_mpz();
  mpz_gcdext(zg->v, zs->v, zt->v, x.ptr, y.ptr);
  g = IntegerAccess::wrap(zg);
  s = IntegerAccess::wrap(zs);
  t = IntegerAccess::wrap(zt);
}

std::size_t Integer::hash() const noexcept {
  if (big_ == nullptr) return std::hash<std::int64_t>{}(small_);
  return std::hash<std::string>{}(to_string());
}

std::ostream& operator<<(std::ostream& os, const Integer& v) {
  return os << v.to_string();
}

}  // namespace wtower
