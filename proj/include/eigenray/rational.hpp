#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace eigenray {

using Q = mpq_class;
using Z = mpz_class;

// Parses "p/q", "p" or "-p/q"; the result is canonical.
Q parse_q(const std::string& s);
std::string to_string(const Q& q);
std::string to_string(const Z& z);

struct Vec2Q {
  Q x, y;

  Vec2Q() = default;
  Vec2Q(Q a, Q b) : x(std::move(a)), y(std::move(b)) {}

  Vec2Q operator+(const Vec2Q& o) const { return {x + o.x, y + o.y}; }
  Vec2Q operator-(const Vec2Q& o) const { return {x - o.x, y - o.y}; }
  Vec2Q operator-() const { return {-x, -y}; }
  Vec2Q operator*(const Q& s) const { return {x * s, y * s}; }
  bool operator==(const Vec2Q& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Vec2Q& o) const { return !(*this == o); }
  bool operator<(const Vec2Q& o) const {
    int c = cmp(x, o.x);
    return c != 0 ? c < 0 : cmp(y, o.y) < 0;
  }
};

struct Vec2Z {
  Z x, y;

  Vec2Z() = default;
  Vec2Z(Z a, Z b) : x(std::move(a)), y(std::move(b)) {}
  Vec2Z(long a, long b) : x(a), y(b) {}

  Vec2Q q() const { return {Q(x), Q(y)}; }
  Vec2Z operator-() const { return {-x, -y}; }
  Vec2Z operator+(const Vec2Z& o) const { return {x + o.x, y + o.y}; }
  bool operator==(const Vec2Z& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Vec2Z& o) const { return !(*this == o); }
  bool operator<(const Vec2Z& o) const {
    int c = cmp(x, o.x);
    return c != 0 ? c < 0 : cmp(y, o.y) < 0;
  }
  bool is_zero() const { return x == 0 && y == 0; }
  bool is_primitive() const;
};

inline Vec2Q operator*(const Q& s, const Vec2Q& v) { return v * s; }

Q det2(const Vec2Q& u, const Vec2Q& v);
Z det2(const Vec2Z& u, const Vec2Z& v);
Q dot(const Vec2Q& u, const Vec2Q& v);

// Primitive integer vector in the direction of a nonzero rational vector.
Vec2Z primitive_direction(const Vec2Q& v);

std::ostream& operator<<(std::ostream& os, const Vec2Q& v);
std::ostream& operator<<(std::ostream& os, const Vec2Z& v);

class precondition_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eigenray
