#include "eigenray/rational.hpp"

#include <cctype>

namespace eigenray {

Q parse_q(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational");
  size_t slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num = num.substr(1);
  if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("bad rational: " + raw);
  Z n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator: " + raw);
  Q q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Q& q) { return q.get_str(); }
std::string to_string(const Z& z) { return z.get_str(); }

bool Vec2Z::is_primitive() const {
  if (is_zero()) return false;
  Z g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return g == 1;
}

Q det2(const Vec2Q& u, const Vec2Q& v) { return u.x * v.y - u.y * v.x; }
Z det2(const Vec2Z& u, const Vec2Z& v) { return u.x * v.y - u.y * v.x; }
Q dot(const Vec2Q& u, const Vec2Q& v) { return u.x * v.x + u.y * v.y; }

Vec2Z primitive_direction(const Vec2Q& v) {
  if (v.x == 0 && v.y == 0) throw precondition_error("zero vector has no direction");
  Z l;
  mpz_lcm(l.get_mpz_t(), v.x.get_den_mpz_t(), v.y.get_den_mpz_t());
  Z a = Z(v.x * l), b = Z(v.y * l);
  Z g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return {Z(a / g), Z(b / g)};
}

std::ostream& operator<<(std::ostream& os, const Vec2Q& v) {
  return os << "(" << v.x.get_str() << "," << v.y.get_str() << ")";
}
std::ostream& operator<<(std::ostream& os, const Vec2Z& v) {
  return os << "(" << v.x.get_str() << "," << v.y.get_str() << ")";
}

}  // namespace eigenray
