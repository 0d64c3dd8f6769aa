#pragma once

// Real-algebraic domains {r(z, conj z) < 0} in C^n.
//
// A defining polynomial is a Form in z1..zn, c1..cn where ci stands for the
// conjugate of zi. Hermitian coefficient symmetry makes r real on the
// diagonal c = conj(z). Complexification renames ci to independent wi.

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cremona/error.hpp"
#include "cremona/form.hpp"
#include "cremona/matrix.hpp"

namespace cremona {

using AffinePoint = std::vector<Scalar>;

inline Variables domain_variables(std::size_t n) {
  return Variables::concat(Variables::indexed("z", n, 1), Variables::indexed("c", n, 1));
}
inline Variables complexified_variables(std::size_t n) {
  return Variables::concat(Variables::indexed("z", n, 1), Variables::indexed("w", n, 1));
}

class RealDefiningPolynomial {
 public:
  RealDefiningPolynomial(std::size_t n, Form poly) : n_(n) {
    if (n == 0) throw InputError("domain dimension must be positive");
    const Variables vars = domain_variables(n);
    if (!(poly.variables() == vars)) throw VariableMismatch("defining polynomial must use exactly z1..zn, c1..cn");
    poly_ = std::move(poly);
    for (const auto& [m, c] : poly_.terms()) {
      const Monomial mirror = swap_blocks(m);
      const Scalar partner = poly_.coefficient(mirror);
      if (!(partner == c.conj())) {
        throw NotRealValued("coefficient " + c.to_string() + " of " + term_name(m) + " is not the conjugate of " +
                            partner.to_string() + " on " + term_name(mirror));
      }
    }
  }

  std::size_t n() const noexcept { return n_; }
  const Form& poly() const noexcept { return poly_; }

  /// Both (z, c) blocks of the point (p, conj p).
  std::vector<Scalar> diagonal(std::span<const Scalar> p) const {
    if (p.size() != n_) throw InputError("point has wrong dimension");
    std::vector<Scalar> v(p.begin(), p.end());
    for (const auto& x : p) v.push_back(x.conj());
    return v;
  }

 private:
  Monomial swap_blocks(const Monomial& m) const {
    std::vector<Exponent> e(2 * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      e[i] = m[n_ + i];
      e[n_ + i] = m[i];
    }
    return Monomial(std::move(e));
  }
  std::string term_name(const Monomial& m) const {
    std::string s = detail::monomial_text(poly_.variables(), m);
    return s.empty() ? "1" : s;
  }

  std::size_t n_;
  Form poly_;
};

inline RealDefiningPolynomial new_defining_poly(std::size_t n, Form poly) { return {n, std::move(poly)}; }

/// r(p, conj p); exactly real by Hermitian symmetry.
inline Rational evaluate_real(const RealDefiningPolynomial& r, std::span<const Scalar> p) {
  const Scalar v = r.poly().evaluate(r.diagonal(p));
  if (!v.is_real()) throw MathError("defining polynomial produced a non-real value");
  return v.re();
}

inline int classify_point(const RealDefiningPolynomial& r, std::span<const Scalar> p) { return sgn(evaluate_real(r, p)); }

struct Complexification {
  Form poly;  // over z1..zn, w1..wn
  bool degenerate = false;  // constant: empty or everything
};

inline Complexification complexify(const RealDefiningPolynomial& r) {
  Form f(complexified_variables(r.n()), r.poly().terms());
  const bool degenerate = f.is_constant();
  return {std::move(f), degenerate};
}

struct SegreVariety {
  AffinePoint w;
  Form poly;  // over z1..zn
  bool degenerate = false;
};

/// Q_w = { z : r(z, conj w) = 0 }.
inline SegreVariety segre_variety(const RealDefiningPolynomial& r, std::span<const Scalar> w) {
  const std::size_t n = r.n();
  if (w.size() != n) throw InputError("Segre variety point has wrong dimension");
  std::vector<std::optional<Scalar>> assign(2 * n);
  for (std::size_t i = 0; i < n; ++i) assign[n + i] = w[i].conj();
  Form q = r.poly().specialize(assign, Variables::indexed("z", n, 1));
  const bool degenerate = q.is_constant();
  return {AffinePoint(w.begin(), w.end()), std::move(q), degenerate};
}

/// (z0 in Q_{w0}, w0 in Q_{z0}); Hermitian symmetry forces them to agree.
inline std::pair<bool, bool> segre_symmetry_check(const RealDefiningPolynomial& r, std::span<const Scalar> z0,
                                                  std::span<const Scalar> w0) {
  const bool a = segre_variety(r, w0).poly.evaluate(z0).is_zero();
  const bool b = segre_variety(r, z0).poly.evaluate(w0).is_zero();
  return {a, b};
}

struct InjectivityReport {
  std::vector<std::size_t> degenerate_samples;
  std::vector<std::pair<std::size_t, std::size_t>> collisions;
  bool exact_check_applicable = false;
  std::size_t linear_rank = 0;  // rank of the conj(w) coefficient columns
  std::size_t affine_rank = 0;  // same with the conj(w)-free column appended
  bool exact_injective = false;
  bool ok() const { return collisions.empty() && (!exact_check_applicable || exact_injective); }
};

/// Sample evidence that w -> Q_w is injective; exact when r is affine-linear in c.
inline InjectivityReport segre_injectivity_evidence(const RealDefiningPolynomial& r, std::span<const AffinePoint> samples) {
  InjectivityReport rep;
  const std::size_t n = r.n();
  std::vector<Form> normalized;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    SegreVariety q = segre_variety(r, samples[s]);
    if (q.degenerate) rep.degenerate_samples.push_back(s);
    normalized.push_back(q.poly.normalized());
  }
  for (std::size_t a = 0; a < samples.size(); ++a) {
    for (std::size_t b = a + 1; b < samples.size(); ++b) {
      if (samples[a] == samples[b]) continue;
      if (normalized[a] == normalized[b]) rep.collisions.emplace_back(a, b);
    }
  }

  unsigned conj_degree = 0;
  for (const auto& [m, c] : r.poly().terms()) {
    unsigned d = 0;
    for (std::size_t i = 0; i < n; ++i) d += m[n + i];
    conj_degree = std::max(conj_degree, d);
  }
  if (conj_degree <= 1) {
    rep.exact_check_applicable = true;
    // Q_w = A(z) + sum_i conj(w_i) B_i(z); columns B_1..B_n then A.
    const Variables zv = Variables::indexed("z", n, 1);
    std::vector<Form> cols(n + 1, Form(zv));
    for (const auto& [m, c] : r.poly().terms()) {
      std::size_t slot = n;
      std::vector<Exponent> ez(n);
      for (std::size_t i = 0; i < n; ++i) {
        ez[i] = m[i];
        if (m[n + i] == 1) slot = i;
      }
      cols[slot] += Form::monomial(zv, Monomial(std::move(ez)), c);
    }
    std::map<Monomial, std::size_t, GrlexGreater> rows;
    for (const auto& col : cols) {
      for (const auto& [m, c] : col.terms()) rows.try_emplace(m, rows.size());
    }
    Matrix b(rows.size(), n), ab(rows.size(), n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      for (const auto& [m, c] : cols[k].terms()) {
        if (k < n) b(rows.at(m), k) = c;
        ab(rows.at(m), k) = c;
      }
    }
    rep.linear_rank = b.rank();
    rep.affine_rank = ab.rank();
    rep.exact_injective = rep.affine_rank == n + 1;
  }
  return rep;
}

struct LeviFormReport {
  AffinePoint point;
  std::vector<Scalar> gradient;  // dr/dz_i at (p, conj p)
  Matrix hessian;                // d^2 r / dz_i dc_j at (p, conj p)
  bool hessian_hermitian = false;
  std::vector<std::vector<Scalar>> tangent_basis;
  Matrix restricted;             // L(t_a, t_b) = sum H_ij t_a,i conj(t_b,j)
  std::size_t restricted_rank = 0;
  bool nondegenerate = false;
};

namespace detail {

inline void require_boundary(const RealDefiningPolynomial& r, std::span<const Scalar> p) {
  if (evaluate_real(r, p) != 0) throw NotOnBoundary("point is not on the boundary r = 0");
}

inline bool any_partial_nonzero(const RealDefiningPolynomial& r, const std::vector<Scalar>& diag) {
  for (std::size_t v = 0; v < 2 * r.n(); ++v) {
    if (!r.poly().derivative(v).evaluate(diag).is_zero()) return true;
  }
  return false;
}

}  // namespace detail

/// dr(p) != 0 for some Wirtinger partial.
inline bool boundary_smooth_at(const RealDefiningPolynomial& r, std::span<const Scalar> p) {
  detail::require_boundary(r, p);
  return detail::any_partial_nonzero(r, r.diagonal(p));
}

inline LeviFormReport levi_form(const RealDefiningPolynomial& r, std::span<const Scalar> p) {
  detail::require_boundary(r, p);
  const std::size_t n = r.n();
  const auto diag = r.diagonal(p);
  if (!detail::any_partial_nonzero(r, diag)) throw NotSmooth("dr vanishes at the boundary point");

  LeviFormReport rep;
  rep.point.assign(p.begin(), p.end());
  Matrix grad_row(1, n);
  rep.hessian = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Form dzi = r.poly().derivative(i);
    rep.gradient.push_back(dzi.evaluate(diag));
    grad_row(0, i) = rep.gradient.back();
    for (std::size_t j = 0; j < n; ++j) rep.hessian(i, j) = dzi.derivative(n + j).evaluate(diag);
  }
  rep.hessian_hermitian = rep.hessian == rep.hessian.conjugate_transpose();
  rep.tangent_basis = grad_row.null_space();

  const std::size_t t = rep.tangent_basis.size();
  rep.restricted = Matrix(t, t);
  for (std::size_t a = 0; a < t; ++a) {
    for (std::size_t b = 0; b < t; ++b) {
      Scalar s;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (!rep.hessian(i, j).is_zero()) s += rep.hessian(i, j) * rep.tangent_basis[a][i] * rep.tangent_basis[b][j].conj();
        }
      }
      rep.restricted(a, b) = s;
    }
  }
  rep.restricted_rank = rep.restricted.rank();
  rep.nondegenerate = rep.restricted_rank + 1 == n;
  return rep;
}

}  // namespace cremona
