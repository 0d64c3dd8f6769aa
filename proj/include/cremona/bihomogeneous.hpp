#pragma once

// Forms that are separately homogeneous in two variable blocks, and their
// splitting into sums of products phi(x) * psi(y).

#include <map>
#include <utility>
#include <vector>

#include "cremona/error.hpp"
#include "cremona/form.hpp"
#include "cremona/matrix.hpp"

namespace cremona {

class BihomogeneousForm {
 public:
  /// `form` lives over concat(x_vars, y_vars).
  BihomogeneousForm(Variables x_vars, Variables y_vars, Form form)
      : x_vars_(std::move(x_vars)), y_vars_(std::move(y_vars)), form_(std::move(form)) {
    if (!(form_.variables() == Variables::concat(x_vars_, y_vars_))) {
      throw VariableMismatch("bihomogeneous form must live over the x-block followed by the y-block");
    }
    bool first = true;
    for (const auto& [m, c] : form_.terms()) {
      auto [dx, dy] = split_degrees(m);
      if (first) {
        dx_ = dx;
        dy_ = dy;
        first = false;
      } else if (dx != dx_ || dy != dy_) {
        throw InputError("form is not bihomogeneous");
      }
    }
  }

  const Variables& x_variables() const noexcept { return x_vars_; }
  const Variables& y_variables() const noexcept { return y_vars_; }
  const Form& form() const noexcept { return form_; }
  std::pair<unsigned, unsigned> bidegree() const noexcept { return {dx_, dy_}; }

  std::pair<Monomial, Monomial> split(const Monomial& m) const {
    const std::size_t nx = x_vars_.size();
    std::vector<Exponent> ex(m.exponents().begin(), m.exponents().begin() + static_cast<std::ptrdiff_t>(nx));
    std::vector<Exponent> ey(m.exponents().begin() + static_cast<std::ptrdiff_t>(nx), m.exponents().end());
    return {Monomial(std::move(ex)), Monomial(std::move(ey))};
  }

 private:
  std::pair<unsigned, unsigned> split_degrees(const Monomial& m) const {
    unsigned dx = 0, dy = 0;
    for (std::size_t i = 0; i < m.size(); ++i) (i < x_vars_.size() ? dx : dy) += m[i];
    return {dx, dy};
  }

  Variables x_vars_;
  Variables y_vars_;
  Form form_;
  unsigned dx_ = 0;
  unsigned dy_ = 0;
};

struct SeparatedTerm {
  Form phi;  // over the x-block
  Form psi;  // over the y-block
};

/// F = sum phi_i * psi_i with linearly independent psi_i.
///
/// Terms are first grouped by x-monomial. When the resulting psi are dependent
/// the coefficient matrix is rank-factored instead: psi_i become the reduced
/// row-echelon rows and phi_i general forms in x.
inline std::vector<SeparatedTerm> bihomogeneous_decompose(const BihomogeneousForm& f) {
  const Variables& xv = f.x_variables();
  const Variables& yv = f.y_variables();
  std::map<Monomial, Form, GrlexGreater> groups;
  std::map<Monomial, std::size_t, GrlexGreater> y_index;
  for (const auto& [m, c] : f.form().terms()) {
    auto [mx, my] = f.split(m);
    auto it = groups.try_emplace(mx, Form(yv)).first;
    it->second += Form::monomial(yv, my, c);
    y_index.try_emplace(my, 0);
  }
  std::vector<Monomial> y_monos;
  for (auto& [m, idx] : y_index) {
    idx = y_monos.size();
    y_monos.push_back(m);
  }

  Matrix coeffs(groups.size(), y_monos.size());
  std::vector<Monomial> x_monos;
  for (const auto& [mx, psi] : groups) {
    for (const auto& [my, c] : psi.terms()) coeffs(x_monos.size(), y_index.at(my)) = c;
    x_monos.push_back(mx);
  }

  std::vector<SeparatedTerm> out;
  if (coeffs.rank() == groups.size()) {
    for (const auto& [mx, psi] : groups) out.push_back({Form::monomial(xv, mx, Scalar(1)), psi});
    return out;
  }

  Matrix reduced = coeffs;
  auto pivots = reduced.rref_in_place();
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    Form psi(yv), phi(xv);
    for (std::size_t j = 0; j < y_monos.size(); ++j) psi += Form::monomial(yv, y_monos[j], reduced(i, j));
    for (std::size_t a = 0; a < x_monos.size(); ++a) phi += Form::monomial(xv, x_monos[a], coeffs(a, pivots[i]));
    out.push_back({std::move(phi), std::move(psi)});
  }
  return out;
}

/// Sum of phi_i * psi_i over concat(x, y).
inline Form recombine(const std::vector<SeparatedTerm>& terms, const Variables& x_vars, const Variables& y_vars) {
  const Variables all = Variables::concat(x_vars, y_vars);
  Form out(all);
  for (const auto& t : terms) out += t.phi.embed(all) * t.psi.embed(all);
  return out;
}

}  // namespace cremona
