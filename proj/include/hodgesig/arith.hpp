#pragma once

// Exact scalar types used throughout: arbitrary-precision rationals (GMP),
// Gaussian rationals Q(i), dense polynomials in one variable t over Q, and
// truncated power series in t (the local-ring arithmetic behind the Jantzen
// computation). No floating point anywhere.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hodgesig {

using Rat = mpq_class;

/// Parse "p/q" or "p" (decimal integers, optional sign). Throws std::invalid_argument.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rat r;
  try {
    r = Rat(s);  // accepts "p" and "p/q"
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational literal: '" + s + "'");
  }
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in rational literal: '" + s + "'");
  r.canonicalize();
  return r;
}

/// Render as "p/q", omitting "/q" when the denominator is 1.
inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

// ---------------------------------------------------------------------------
// Gaussian rationals a + b*i
// ---------------------------------------------------------------------------

struct GaussRat {
  Rat re, im;

  GaussRat() : re(0), im(0) {}
  GaussRat(const Rat& r) : re(r), im(0) {}  // NOLINT: implicit by design
  GaussRat(int n) : re(n), im(0) {}         // NOLINT
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  GaussRat conj() const { return GaussRat(re, -im); }
  Rat norm() const { return re * re + im * im; }  // |z|^2

  GaussRat operator-() const { return GaussRat(-re, -im); }
  GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
  GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
  GaussRat& operator*=(const GaussRat& o) {
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = r; im = i;
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) {
    Rat n = o.norm();
    if (sgn(n) == 0) throw std::domain_error("division by zero Gaussian rational");
    Rat r = (re * o.re + im * o.im) / n;
    Rat i = (im * o.re - re * o.im) / n;
    re = r; im = i;
    return *this;
  }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

inline std::string to_string(const GaussRat& z) {
  if (sgn(z.im) == 0) return rat_to_string(z.re);
  std::string im_part = (z.im == 1) ? "i" : (z.im == -1) ? "-i" : rat_to_string(z.im) + "i";
  if (sgn(z.re) == 0) return im_part;
  if (sgn(z.im) > 0) return rat_to_string(z.re) + "+" + im_part;
  return rat_to_string(z.re) + im_part;  // im_part carries its own minus sign
}

// Uniform hooks so linear algebra can be written once over Q and Q(i).
inline Rat conj_of(const Rat& r) { return r; }
inline GaussRat conj_of(const GaussRat& z) { return z.conj(); }
inline bool is_zero(const GaussRat& z) { return z.is_zero(); }
struct Poly;
inline bool is_zero(const Poly& p);
inline std::string scalar_to_string(const Rat& r) { return rat_to_string(r); }
inline std::string scalar_to_string(const GaussRat& z) { return to_string(z); }

// ---------------------------------------------------------------------------
// Dense polynomials in t over Q
// ---------------------------------------------------------------------------

struct Poly {
  std::vector<Rat> c;  // c[k] is the coefficient of t^k; no trailing zeros

  Poly() = default;
  Poly(const Rat& constant) { if (sgn(constant) != 0) c.push_back(constant); }  // NOLINT
  Poly(int constant) : Poly(Rat(constant)) {}                                   // NOLINT

  static Poly linear(const Rat& a0, const Rat& a1) {  // a0 + a1*t
    Poly p;
    p.c = {a0, a1};
    p.trim();
    return p;
  }

  void trim() { while (!c.empty() && sgn(c.back()) == 0) c.pop_back(); }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for the zero polynomial

  Rat coeff(int k) const { return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : Rat(0); }

  /// Order of vanishing at t = 0; nullopt for the zero polynomial.
  std::optional<int> order_at_zero() const {
    for (size_t k = 0; k < c.size(); ++k)
      if (sgn(c[k]) != 0) return static_cast<int>(k);
    return std::nullopt;
  }

  Rat eval(const Rat& t) const {
    Rat acc(0);
    for (size_t k = c.size(); k-- > 0;) acc = acc * t + c[k];
    return acc;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
    for (size_t k = 0; k < r.c.size(); ++k) r.c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i)
      for (size_t j = 0; j < b.c.size(); ++j)
        r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
};

inline bool is_zero(const Poly& p) { return p.is_zero(); }

inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (int k = 0; k <= p.degree(); ++k) {
    Rat a = p.coeff(k);
    if (sgn(a) == 0) continue;
    if (!s.empty()) s += (sgn(a) > 0) ? " + " : " - ";
    else if (sgn(a) < 0) s += "-";
    Rat mag = abs(a);
    bool unit = (mag == 1);
    if (k == 0) s += rat_to_string(mag);
    else {
      if (!unit) s += rat_to_string(mag) + "*";
      s += (k == 1) ? "t" : "t^" + std::to_string(k);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Truncated power series: elements of Q[t]/(t^prec), the working form of the
// local ring Q[t]_(t) for the Jantzen elimination.
// ---------------------------------------------------------------------------

struct Series {
  int prec = 0;
  std::vector<Rat> c;  // exactly prec coefficients

  Series() = default;
  Series(int precision, const Rat& constant) : prec(precision), c(precision, Rat(0)) {
    if (prec > 0) c[0] = constant;
  }
  static Series from_poly(const Poly& p, int precision) {
    Series s(precision, Rat(0));
    for (int k = 0; k < precision; ++k) s.c[k] = p.coeff(k);
    return s;
  }

  bool is_zero() const {
    for (const auto& x : c)
      if (sgn(x) != 0) return false;
    return true;
  }

  /// Order of vanishing, capped at prec (prec means "zero to working precision").
  int order() const {
    for (int k = 0; k < prec; ++k)
      if (sgn(c[k]) != 0) return k;
    return prec;
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series r(a.prec, Rat(0));
    for (int k = 0; k < r.prec; ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
  }
  friend Series operator-(const Series& a, const Series& b) {
    Series r(a.prec, Rat(0));
    for (int k = 0; k < r.prec; ++k) r.c[k] = a.c[k] - b.c[k];
    return r;
  }
  friend Series operator*(const Series& a, const Series& b) {
    Series r(a.prec, Rat(0));
    for (int i = 0; i < a.prec; ++i) {
      if (sgn(a.c[i]) == 0) continue;
      for (int j = 0; i + j < r.prec; ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
  }

  /// Multiplicative inverse; requires a unit (nonzero constant term).
  Series inverse() const {
    if (prec == 0 || sgn(c[0]) == 0) throw std::domain_error("series is not a unit");
    Series r(prec, Rat(0));
    r.c[0] = 1 / c[0];
    for (int k = 1; k < prec; ++k) {
      Rat acc(0);
      for (int j = 0; j < k; ++j) acc += r.c[j] * c[k - j];
      r.c[k] = -acc / c[0];
    }
    return r;
  }

  /// Exact division by t^k (requires order() >= k); shifts coefficients down.
  Series shift_down(int k) const {
    Series r(prec, Rat(0));
    for (int j = 0; j + k < prec; ++j) r.c[j] = c[j + k];
    return r;
  }
};

}  // namespace hodgesig
