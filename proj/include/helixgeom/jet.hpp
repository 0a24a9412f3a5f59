#pragma once

// Truncated Taylor jets: c[j] = f^(j)(t0) / j! along one seeded parameter.
//
// Jet<T> is generic in the coefficient ring, so Jet<Jet<double>> gives a
// bivariate expansion (outer direction of order 1 over an inner parameter
// series). The elementary functions use the usual Taylor-mode recurrences
// and only need arithmetic on T plus the function itself on c[0].

#include <boost/container/small_vector.hpp>

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <type_traits>

namespace helixgeom {

template <class T>
class Jet;

template <class T>
struct is_jet : std::false_type {};
template <class T>
struct is_jet<Jet<T>> : std::true_type {};
template <class T>
inline constexpr bool is_jet_v = is_jet<T>::value;

/// Innermost real value of a (possibly nested) jet.
inline double scalar_value(double x) { return x; }
template <class T>
double scalar_value(const Jet<T>& x);

/// Zero/one of the same shape (inner orders) as `proto`.
inline double zero_like(double) { return 0.0; }
inline double one_like(double) { return 1.0; }
template <class T>
Jet<T> zero_like(const Jet<T>& proto);
template <class T>
Jet<T> one_like(const Jet<T>& proto);

template <class T>
class Jet {
 public:
  using value_type = T;
  using storage = boost::container::small_vector<T, 8>;

  Jet() : c_(1, T{}) {}

  /// Constant jet of the given order whose value is `value`.
  Jet(int order, const T& value) : c_(static_cast<std::size_t>(order) + 1, zero_like(value)) {
    if (order < 0) throw std::invalid_argument("jet order must be >= 0");
    c_[0] = value;
  }

  Jet(std::initializer_list<T> coeffs) : c_(coeffs.begin(), coeffs.end()) {
    if (c_.empty()) throw std::invalid_argument("jet needs at least one coefficient");
  }

  explicit Jet(storage coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("jet needs at least one coefficient");
  }

  /// Identity seed t0 + eps: the jet of the parameter itself.
  static Jet variable(const T& t0, int order) {
    Jet j(order, t0);
    if (order >= 1) j.c_[1] = one_like(t0);
    return j;
  }

  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const T& value() const noexcept { return c_[0]; }
  const T& operator[](std::size_t i) const noexcept { return c_[i]; }
  T& operator[](std::size_t i) noexcept { return c_[i]; }
  const storage& coeffs() const noexcept { return c_; }

  /// j-th derivative, j! * c[j].
  T derivative(int j) const {
    T out = c_[static_cast<std::size_t>(j)];
    double f = 1.0;
    for (int i = 2; i <= j; ++i) f *= i;
    return out * f;
  }

  /// Series of d/d(eps); loses one order.
  Jet differentiated() const {
    if (order() == 0) return Jet(0, zero_like(c_[0]));
    storage out(c_.size() - 1, zero_like(c_[0]));
    for (std::size_t j = 0; j + 1 < c_.size(); ++j) out[j] = c_[j + 1] * static_cast<double>(j + 1);
    return Jet(std::move(out));
  }

  /// Same series truncated (or zero-padded) to a new order.
  Jet with_order(int order) const {
    storage out(static_cast<std::size_t>(order) + 1, zero_like(c_[0]));
    for (std::size_t j = 0; j < out.size() && j < c_.size(); ++j) out[j] = c_[j];
    return Jet(std::move(out));
  }

  Jet operator-() const {
    Jet r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  Jet& operator+=(const Jet& o) {
    check_same_order(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    check_same_order(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  Jet& operator+=(const T& s) {
    c_[0] += s;
    return *this;
  }
  Jet& operator-=(const T& s) {
    c_[0] -= s;
    return *this;
  }
  Jet& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  Jet& operator/=(const T& s) {
    for (auto& x : c_) x /= s;
    return *this;
  }

  template <class U = T, class = std::enable_if_t<!std::is_same_v<U, double>>>
  Jet& operator*=(double s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  template <class U = T, class = std::enable_if_t<!std::is_same_v<U, double>>>
  Jet& operator/=(double s) {
    for (auto& x : c_) x /= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check_same_order(b);
    const std::size_t n = a.c_.size();
    storage out(n, zero_like(a.c_[0]));
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j <= k; ++j) out[k] += a.c_[j] * b.c_[k - j];
    }
    return Jet(std::move(out));
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    a.check_same_order(b);
    const std::size_t n = a.c_.size();
    storage q(n, zero_like(a.c_[0]));
    for (std::size_t k = 0; k < n; ++k) {
      T acc = a.c_[k];
      for (std::size_t j = 0; j < k; ++j) acc -= q[j] * b.c_[k - j];
      q[k] = acc / b.c_[0];
    }
    return Jet(std::move(q));
  }

  friend Jet operator+(Jet a, const T& s) { return a += s; }
  friend Jet operator+(const T& s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, const T& s) { return a -= s; }
  friend Jet operator-(const T& s, const Jet& a) { return -a + s; }
  friend Jet operator*(Jet a, const T& s) { return a *= s; }
  friend Jet operator*(const T& s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, const T& s) { return a /= s; }
  friend Jet operator/(const T& s, const Jet& a) { return Jet(a.order(), s) / a; }

 private:
  void check_same_order(const Jet& o) const {
    if (o.c_.size() != c_.size()) throw std::invalid_argument("jet order mismatch");
  }

  storage c_;
};

template <class T, class = std::enable_if_t<!std::is_same_v<T, double>>>
Jet<T> operator*(Jet<T> a, double s) {
  for (std::size_t i = 0; i <= static_cast<std::size_t>(a.order()); ++i) a[i] = a[i] * s;
  return a;
}
template <class T, class = std::enable_if_t<!std::is_same_v<T, double>>>
Jet<T> operator*(double s, Jet<T> a) {
  return std::move(a) * s;
}
template <class T, class = std::enable_if_t<!std::is_same_v<T, double>>>
Jet<T> operator/(Jet<T> a, double s) {
  for (std::size_t i = 0; i <= static_cast<std::size_t>(a.order()); ++i) a[i] = a[i] / s;
  return a;
}
template <class T, class = std::enable_if_t<!std::is_same_v<T, double>>>
Jet<T> operator+(Jet<T> a, double s) {
  a[0] = a[0] + s;
  return a;
}
template <class T, class = std::enable_if_t<!std::is_same_v<T, double>>>
Jet<T> operator-(Jet<T> a, double s) {
  a[0] = a[0] - s;
  return a;
}

template <class T>
double scalar_value(const Jet<T>& x) {
  return scalar_value(x.value());
}

inline void add_scalar(double& x, double s) { x += s; }
template <class T>
void add_scalar(Jet<T>& x, double s) {
  add_scalar(x[0], s);
}

template <class T>
Jet<T> zero_like(const Jet<T>& proto) {
  return Jet<T>(proto.order(), zero_like(proto.value()));
}

template <class T>
Jet<T> one_like(const Jet<T>& proto) {
  return Jet<T>(proto.order(), one_like(proto.value()));
}

namespace detail {

template <class T>
using JetStorage = typename Jet<T>::storage;

// Shared recurrence for (sin, cos) and (sinh, cosh):
//   s_k = (1/k) sum_j j a_j c_{k-j},  c_k = sign (1/k) sum_j j a_j s_{k-j}
template <class T>
void sincos_recurrence(const Jet<T>& a, const T& s0, const T& c0, double sign, Jet<T>& s_out,
                       Jet<T>& c_out) {
  const std::size_t n = static_cast<std::size_t>(a.order()) + 1;
  JetStorage<T> s(n, zero_like(s0)), c(n, zero_like(c0));
  s[0] = s0;
  c[0] = c0;
  for (std::size_t k = 1; k < n; ++k) {
    T ss = zero_like(s0), cc = zero_like(c0);
    for (std::size_t j = 1; j <= k; ++j) {
      ss += a[j] * c[k - j] * static_cast<double>(j);
      cc += a[j] * s[k - j] * static_cast<double>(j);
    }
    s[k] = ss / static_cast<double>(k);
    c[k] = cc * (sign / static_cast<double>(k));
  }
  s_out = Jet<T>(std::move(s));
  c_out = Jet<T>(std::move(c));
}

}  // namespace detail

template <class T>
Jet<T> exp(const Jet<T>& a) {
  using std::exp;
  const std::size_t n = static_cast<std::size_t>(a.order()) + 1;
  detail::JetStorage<T> e(n, zero_like(a.value()));
  e[0] = exp(a.value());
  for (std::size_t k = 1; k < n; ++k) {
    T acc = zero_like(a.value());
    for (std::size_t j = 1; j <= k; ++j) acc += a[j] * e[k - j] * static_cast<double>(j);
    e[k] = acc / static_cast<double>(k);
  }
  return Jet<T>(std::move(e));
}

template <class T>
Jet<T> log(const Jet<T>& a) {
  using std::log;
  const std::size_t n = static_cast<std::size_t>(a.order()) + 1;
  detail::JetStorage<T> l(n, zero_like(a.value()));
  l[0] = log(a.value());
  for (std::size_t k = 1; k < n; ++k) {
    T acc = a[k] * static_cast<double>(k);
    for (std::size_t j = 1; j < k; ++j) acc -= l[j] * a[k - j] * static_cast<double>(j);
    l[k] = acc / (a.value() * static_cast<double>(k));
  }
  return Jet<T>(std::move(l));
}

template <class T>
Jet<T> sqrt(const Jet<T>& a) {
  using std::sqrt;
  const std::size_t n = static_cast<std::size_t>(a.order()) + 1;
  detail::JetStorage<T> r(n, zero_like(a.value()));
  r[0] = sqrt(a.value());
  for (std::size_t k = 1; k < n; ++k) {
    T acc = a[k];
    for (std::size_t j = 1; j < k; ++j) acc -= r[j] * r[k - j];
    r[k] = acc / (r[0] * 2.0);
  }
  return Jet<T>(std::move(r));
}

template <class T>
Jet<T> sin(const Jet<T>& a) {
  using std::cos;
  using std::sin;
  Jet<T> s, c;
  detail::sincos_recurrence(a, T(sin(a.value())), T(cos(a.value())), -1.0, s, c);
  return s;
}

template <class T>
Jet<T> cos(const Jet<T>& a) {
  using std::cos;
  using std::sin;
  Jet<T> s, c;
  detail::sincos_recurrence(a, T(sin(a.value())), T(cos(a.value())), -1.0, s, c);
  return c;
}

template <class T>
Jet<T> tan(const Jet<T>& a) {
  using std::cos;
  using std::sin;
  Jet<T> s, c;
  detail::sincos_recurrence(a, T(sin(a.value())), T(cos(a.value())), -1.0, s, c);
  return s / c;
}

template <class T>
Jet<T> sinh(const Jet<T>& a) {
  using std::cosh;
  using std::sinh;
  Jet<T> s, c;
  detail::sincos_recurrence(a, T(sinh(a.value())), T(cosh(a.value())), 1.0, s, c);
  return s;
}

template <class T>
Jet<T> cosh(const Jet<T>& a) {
  using std::cosh;
  using std::sinh;
  Jet<T> s, c;
  detail::sincos_recurrence(a, T(sinh(a.value())), T(cosh(a.value())), 1.0, s, c);
  return c;
}

/// Integer power by repeated squaring; negative exponents invert.
template <class S>
S ipow(const S& base, long long e) {
  if (e < 0) return one_like(base) / ipow(base, -e);
  S result = one_like(base);
  S b = base;
  while (e > 0) {
    if (e & 1) result = result * b;
    e >>= 1;
    if (e > 0) b = b * b;
  }
  return result;
}

/// Series composition f(g) where f is the Taylor series of some function
/// about g[0] (f[j] = F^(j)(g0)/j!) and g is any jet of the same order.
template <class T>
Jet<T> compose(const Jet<T>& f, const Jet<T>& g) {
  Jet<T> delta = g;
  delta[0] = zero_like(g.value());
  Jet<T> acc(g.order(), f[static_cast<std::size_t>(f.order())]);
  for (int j = f.order() - 1; j >= 0; --j) {
    acc = acc * delta;
    acc[0] += f[static_cast<std::size_t>(j)];
  }
  return acc.with_order(g.order());
}

}  // namespace helixgeom
