#pragma once

// Deterministic pseudorandom exact samples.
//
// Draws use the raw mt19937_64 stream with explicit reductions so that the
// same seed gives the same samples on every standard library.

#include <cstdint>
#include <random>
#include <vector>

#include "cremona/birational.hpp"
#include "cremona/form.hpp"
#include "cremona/matrix.hpp"
#include "cremona/scalar.hpp"

namespace cremona {

inline constexpr std::uint64_t default_seed = 20240611;

class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed = default_seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
  }

  /// num/den with |num| <= bound and 1 <= den <= bound.
  Rational small_rational(long bound = 7) {
    Rational q(uniform(-bound, bound), uniform(1, bound));
    q.canonicalize();
    return q;
  }

  Scalar small_scalar(bool complex = true, long bound = 7) {
    Rational re = small_rational(bound);
    Rational im = complex ? small_rational(bound) : Rational(0);
    return {re, im};
  }

  Scalar nonzero_scalar(bool complex = true, long bound = 7) {
    Scalar s;
    while (s.is_zero()) s = small_scalar(complex, bound);
    return s;
  }

  ProjectivePoint projective_point(std::size_t size, bool complex = false, long bound = 7) {
    while (true) {
      std::vector<Scalar> v;
      for (std::size_t i = 0; i < size; ++i) v.push_back(small_scalar(complex, bound));
      bool nonzero = false;
      for (const auto& s : v) nonzero = nonzero || !s.is_zero();
      if (nonzero) return ProjectivePoint(std::move(v));
    }
  }

  std::vector<ProjectivePoint> projective_points(std::size_t count, std::size_t size, bool complex = false) {
    std::vector<ProjectivePoint> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(projective_point(size, complex));
    return out;
  }

  std::vector<Scalar> affine_point(std::size_t size, bool complex = true, long bound = 7) {
    std::vector<Scalar> v;
    for (std::size_t i = 0; i < size; ++i) v.push_back(small_scalar(complex, bound));
    return v;
  }

  Matrix invertible_matrix(std::size_t n, bool complex = true, long bound = 7) {
    while (true) {
      Matrix m(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = small_scalar(complex, bound);
      }
      if (m.is_invertible()) return m;
    }
  }

  /// Homogeneous form of `degree` with about `terms` random monomials.
  Form homogeneous_form(const Variables& vars, unsigned degree, std::size_t terms, bool complex = false) {
    const auto monos = monomials_of_degree(vars.size(), degree);
    Form f(vars);
    for (std::size_t k = 0; k < terms; ++k) {
      const auto& m = monos[static_cast<std::size_t>(uniform(0, static_cast<long>(monos.size()) - 1))];
      f += Form::monomial(vars, m, small_scalar(complex, 5));
    }
    return f;
  }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cremona
