#pragma once

// Rational self-maps of P^n as primitive tuples of equal-degree forms.

#include <gmpxx.h>

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cremona/error.hpp"
#include "cremona/form.hpp"
#include "cremona/gcd.hpp"
#include "cremona/matrix.hpp"

namespace cremona {

/// Point of P^n, stored with its first nonzero coordinate scaled to 1.
class ProjectivePoint {
 public:
  explicit ProjectivePoint(std::vector<Scalar> coords) : coords_(std::move(coords)) {
    auto it = std::find_if(coords_.begin(), coords_.end(), [](const Scalar& s) { return !s.is_zero(); });
    if (it == coords_.end()) throw InputError("projective point with all coordinates zero");
    const Scalar inv = it->inverse();
    for (auto& c : coords_) c *= inv;
  }

  std::size_t size() const noexcept { return coords_.size(); }
  const std::vector<Scalar>& coordinates() const noexcept { return coords_; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }

  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) { return a.coords_ == b.coords_; }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coords_.size(); ++i) s += (i ? ":" : "") + coords_[i].to_string();
    return s + "]";
  }

 private:
  std::vector<Scalar> coords_;
};

/// Image of P^a x P^b under (z, w) -> [z_i w_j], row-major in (i, j).
class SegrePoint {
 public:
  SegrePoint(std::size_t rows, std::size_t cols, std::vector<Scalar> coords)
      : rows_(rows), cols_(cols), point_(std::move(coords)) {
    if (point_.size() != rows * cols) throw InputError("Segre point has wrong size");
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const std::vector<Scalar>& coordinates() const noexcept { return point_.coordinates(); }
  const Scalar& at(std::size_t i, std::size_t j) const { return point_[i * cols_ + j]; }
  const ProjectivePoint& point() const noexcept { return point_; }

  /// All 2x2 minors vanish: c_ij c_kl = c_il c_kj.
  bool is_rank_one() const {
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = i + 1; k < rows_; ++k) {
        for (std::size_t j = 0; j < cols_; ++j) {
          for (std::size_t l = j + 1; l < cols_; ++l) {
            if (!(at(i, j) * at(k, l) == at(i, l) * at(k, j))) return false;
          }
        }
      }
    }
    return true;
  }

  friend bool operator==(const SegrePoint& a, const SegrePoint& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.point_ == b.point_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  ProjectivePoint point_;
};

inline SegrePoint segre_embed(const ProjectivePoint& p, const ProjectivePoint& q) {
  std::vector<Scalar> c;
  c.reserve(p.size() * q.size());
  for (const auto& zi : p.coordinates()) {
    for (const auto& wj : q.coordinates()) c.push_back(zi * wj);
  }
  return {p.size(), q.size(), std::move(c)};
}

class BirationalMap {
 public:
  /// Validates components and divides out their common factor.
  ///
  /// A tuple whose gcd has the full degree (a constant map such as (y0, 0))
  /// is kept unreduced, since dividing would leave degree 0.
  explicit BirationalMap(std::vector<Form> components) {
    if (components.empty()) throw InputError("map needs at least one component");
    vars_ = components[0].variables();
    if (components.size() != vars_.size()) {
      throw InputError("map on P^n needs n+1 components in n+1 variables; got " + std::to_string(components.size()) +
                       " components over " + std::to_string(vars_.size()) + " variables");
    }
    std::optional<unsigned> degree;
    for (const auto& c : components) {
      if (!(c.variables() == vars_)) throw VariableMismatch("map components use different variable lists");
      Homogeneity h = c.homogeneity();
      if (!h.is_homogeneous()) throw InputError("map component " + c.to_string() + " is not homogeneous");
      if (h.kind == Homogeneity::Kind::zero) continue;
      if (degree && *degree != h.degree) throw InputError("map components have unequal degrees");
      degree = h.degree;
    }
    if (!degree) throw InputError("map with all components zero");
    if (*degree == 0) throw InputError("map components must have positive degree");
    Form g = gcd_many(components);
    if (!g.is_constant() && g.total_degree() < *degree) {
      for (auto& c : components) c = c.divide_exact(g);
      *degree -= g.total_degree();
    }
    comps_ = std::move(components);
    degree_ = *degree;
  }

  static BirationalMap identity(const Variables& vars) {
    std::vector<Form> c;
    for (std::size_t i = 0; i < vars.size(); ++i) c.push_back(Form::variable(vars, i));
    return BirationalMap(std::move(c));
  }

  /// Degree-1 map x -> A x with its matrix inverse attached and certified.
  static BirationalMap linear(const Variables& vars, const Matrix& a);

  std::size_t dimension() const noexcept { return vars_.size() - 1; }
  const Variables& variables() const noexcept { return vars_; }
  const std::vector<Form>& components() const noexcept { return comps_; }
  unsigned degree() const noexcept { return degree_; }

  bool has_certified_inverse() const { return slot_->ready.load(std::memory_order_acquire); }

  std::optional<BirationalMap> inverse() const {
    if (!has_certified_inverse()) return std::nullopt;
    BirationalMap inv(vars_, slot_->components, slot_->degree);
    inv.slot_->store(comps_, degree_);
    return inv;
  }

  /// Components scaled by the inverse of the first nonzero leading coefficient.
  std::vector<Form> normalized_components() const {
    for (const auto& c : comps_) {
      if (c.is_zero()) continue;
      const Scalar inv = c.leading_coefficient().inverse();
      std::vector<Form> out;
      for (const auto& d : comps_) out.push_back(d * inv);
      return out;
    }
    return comps_;
  }

  friend bool operator==(const BirationalMap& a, const BirationalMap& b) { return a.comps_ == b.comps_; }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < comps_.size(); ++i) s += (i ? ", " : "") + comps_[i].to_string();
    return s + ")";
  }

 private:
  struct InverseSlot {
    std::once_flag once;
    std::atomic<bool> ready{false};
    std::vector<Form> components;
    unsigned degree = 0;

    void store(const std::vector<Form>& comps, unsigned deg) {
      std::call_once(once, [&] {
        components = comps;
        degree = deg;
        ready.store(true, std::memory_order_release);
      });
    }
  };

  BirationalMap(Variables vars, std::vector<Form> comps, unsigned degree)
      : vars_(std::move(vars)), comps_(std::move(comps)), degree_(degree) {}

  friend bool verify_inverse(const BirationalMap& f, const BirationalMap& g);

  Variables vars_;
  std::vector<Form> comps_;
  unsigned degree_ = 0;
  std::shared_ptr<InverseSlot> slot_ = std::make_shared<InverseSlot>();
};

/// f o g: g's components substituted into f's, reduced to a primitive tuple.
inline BirationalMap compose(const BirationalMap& f, const BirationalMap& g) {
  if (!(f.variables() == g.variables())) throw VariableMismatch("composition of maps on different spaces");
  std::vector<Form> c;
  bool all_zero = true;
  for (const auto& fc : f.components()) {
    c.push_back(fc.substitute(g.components()));
    all_zero = all_zero && c.back().is_zero();
  }
  if (all_zero) throw DegenerateComposition("composition vanishes identically: " + f.to_string() + " o " + g.to_string());
  return BirationalMap(std::move(c));
}

inline bool is_identity_up_to_scalar(const BirationalMap& f) {
  if (f.degree() != 1) return false;
  const auto norm = f.normalized_components();
  for (std::size_t i = 0; i < norm.size(); ++i) {
    if (!(norm[i] == Form::variable(f.variables(), i))) return false;
  }
  return true;
}

/// True iff f o g and g o f are both the identity; on success each map records the other.
inline bool verify_inverse(const BirationalMap& f, const BirationalMap& g) {
  if (!(f.variables() == g.variables())) return false;
  try {
    if (!is_identity_up_to_scalar(compose(f, g)) || !is_identity_up_to_scalar(compose(g, f))) return false;
  } catch (const DegenerateComposition&) {
    return false;
  }
  f.slot_->store(g.comps_, g.degree_);
  g.slot_->store(f.comps_, f.degree_);
  return true;
}

inline BirationalMap BirationalMap::linear(const Variables& vars, const Matrix& a) {
  if (a.rows() != vars.size() || a.cols() != vars.size()) throw InputError("linear map matrix has wrong size");
  auto inv = a.inverse();
  if (!inv) throw InputError("linear map matrix is singular");
  auto build = [&](const Matrix& m) {
    std::vector<Form> c;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Form row(vars);
      for (std::size_t j = 0; j < m.cols(); ++j) row += Form::variable(vars, j) * m(i, j);
      c.push_back(std::move(row));
    }
    return BirationalMap(std::move(c));
  };
  BirationalMap f = build(a);
  BirationalMap g = build(*inv);
  verify_inverse(f, g);
  return f;
}

inline ProjectivePoint apply(const BirationalMap& f, const ProjectivePoint& p) {
  if (p.size() != f.variables().size()) throw InputError("point dimension does not match the map");
  std::vector<Scalar> v;
  bool all_zero = true;
  for (const auto& c : f.components()) {
    v.push_back(c.evaluate(p.coordinates()));
    all_zero = all_zero && v.back().is_zero();
  }
  if (all_zero) throw IndeterminatePoint("map is indeterminate at " + p.to_string());
  return ProjectivePoint(std::move(v));
}

inline SegrePoint graph_point(const BirationalMap& f, const ProjectivePoint& p) { return segre_embed(p, apply(f, p)); }

/// (1 + d)^n: bounds the degree of the Segre-embedded graph closure of a
/// degree-d self-map of P^n, from (alpha + beta)^n with projective degrees d_i <= d^i.
inline mpz_class segre_graph_degree_bound(unsigned n, unsigned d) {
  if (n < 1 || d < 1) throw InputError("degree bound needs n >= 1 and d >= 1");
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 1UL + d, n);
  return r;
}

}  // namespace cremona
