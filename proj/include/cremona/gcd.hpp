#pragma once

// Multivariate gcd over Q(i).
//
// Recursion on the highest-indexed variable present: split off the content
// (gcd of the coefficients in that variable, a problem in fewer variables),
// then run a subresultant remainder sequence on the primitive parts.
// Monomial factors are extracted up front and homogeneous inputs are
// dehomogenized, which drops one variable from the recursion.
//
// Coefficient growth is the usual subresultant growth; callers facing large
// inputs should cap sizes (the CLI does).

#include <span>
#include <vector>

#include "cremona/error.hpp"
#include "cremona/form.hpp"

namespace cremona {

namespace detail {

inline Form gcd_recursive(const Form& p, const Form& q);

inline Form leading_coeff_in(const Form& p, std::size_t var) { return p.coefficients_in(var).back(); }

inline Form power_of_variable(const Variables& vars, std::size_t var, unsigned k) {
  Monomial m(vars.size());
  m.set(var, k);
  return Form::monomial(vars, m, Scalar(1));
}

/// gcd of the coefficients of p with respect to var; monic.
inline Form content_in(const Form& p, std::size_t var) {
  Form g(p.variables());
  for (const Form& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.normalized() : gcd_recursive(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

/// Pseudo-remainder of a by b in var: lc(b)^(deg a - deg b + 1) * a mod b.
inline Form pseudo_remainder(const Form& a, const Form& b, std::size_t var) {
  const unsigned db = b.degree_in(var);
  const Form lcb = leading_coeff_in(b, var);
  Form r = a;
  int e = static_cast<int>(a.degree_in(var)) - static_cast<int>(db) + 1;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    unsigned dr = r.degree_in(var);
    Form lr = leading_coeff_in(r, var);
    Monomial shift(a.variables().size());
    shift.set(var, dr - db);
    r = lcb * r - (lr * b).multiply_monomial(shift);
    --e;
  }
  if (e > 0) r = lcb.pow(static_cast<unsigned>(e)) * r;
  return r;
}

/// gcd of two polynomials primitive in var, each of positive degree in var.
inline Form subresultant_gcd(Form a, Form b, std::size_t var) {
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  const Variables& vars = a.variables();
  Form g = Form::constant(vars, Scalar(1));
  Form h = Form::constant(vars, Scalar(1));
  while (true) {
    const unsigned delta = a.degree_in(var) - b.degree_in(var);
    Form r = pseudo_remainder(a, b, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) return Form::constant(vars, Scalar(1));
    a = std::move(b);
    b = r.divide_exact(g * h.pow(delta));
    g = leading_coeff_in(a, var);
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = g.pow(delta).divide_exact(h.pow(delta - 1));
    }
  }
  return b.divide_exact(content_in(b, var)).normalized();
}

inline Form gcd_recursive(const Form& p, const Form& q) {
  const Variables& vars = p.variables();
  if (p.is_constant() || q.is_constant()) return Form::constant(vars, Scalar(1));

  const Monomial mp = p.monomial_content();
  const Monomial mq = q.monomial_content();
  const Form mono = Form::monomial(vars, Monomial::gcd(mp, mq), Scalar(1));
  const Form p1 = p.divide_monomial(mp);
  const Form q1 = q.divide_monomial(mq);
  if (p1.is_constant() || q1.is_constant()) return mono;

  std::size_t var = 0;
  bool found = false;
  for (std::size_t k = vars.size(); k-- > 0;) {
    if (p1.uses(k) || q1.uses(k)) {
      var = k;
      found = true;
      break;
    }
  }
  if (!found) return mono;

  Form core(vars);
  if (!q1.uses(var)) {
    core = gcd_recursive(content_in(p1, var), q1);
  } else if (!p1.uses(var)) {
    core = gcd_recursive(p1, content_in(q1, var));
  } else {
    const Form cp = content_in(p1, var);
    const Form cq = content_in(q1, var);
    const Form cont = gcd_recursive(cp, cq);
    core = cont * subresultant_gcd(p1.divide_exact(cp), q1.divide_exact(cq), var);
  }
  return (mono * core).normalized();
}

inline Form dehomogenize(const Form& p, std::size_t var) {
  Form out(p.variables());
  for (const auto& [m, c] : p.terms()) {
    Monomial r = m;
    r.set(var, 0);
    out += Form::monomial(p.variables(), r, c);
  }
  return out;
}

inline Form homogenize(const Form& p, std::size_t var) {
  const unsigned d = p.total_degree();
  Form out(p.variables());
  for (const auto& [m, c] : p.terms()) {
    Monomial r = m;
    r.set(var, m[var] + (d - m.degree()));
    out += Form::monomial(p.variables(), r, c);
  }
  return out;
}

/// Both nonzero. Homogeneous inputs free of monomial factors are solved with
/// one variable set to 1: no factor is lost because that variable divides neither.
inline Form gcd_nonzero(const Form& p, const Form& q) {
  const Variables& vars = p.variables();
  if (p.is_constant() || q.is_constant()) return Form::constant(vars, Scalar(1));
  const Monomial mp = p.monomial_content();
  const Monomial mq = q.monomial_content();
  const Form mono = Form::monomial(vars, Monomial::gcd(mp, mq), Scalar(1));
  const Form p1 = p.divide_monomial(mp);
  const Form q1 = q.divide_monomial(mq);
  if (p1.is_constant() || q1.is_constant()) return mono;
  if (p1.homogeneity().is_homogeneous() && q1.homogeneity().is_homogeneous() && vars.size() >= 2) {
    std::size_t var = vars.size();
    for (std::size_t k = vars.size(); k-- > 0;) {
      if (p1.uses(k) || q1.uses(k)) {
        var = k;
        break;
      }
    }
    Form g = gcd_recursive(dehomogenize(p1, var), dehomogenize(q1, var));
    return (mono * homogenize(g, var)).normalized();
  }
  return (mono * gcd_recursive(p1, q1)).normalized();
}

}  // namespace detail

/// Greatest common divisor, scaled so its graded-lex leading coefficient is 1.
inline Form gcd(const Form& p, const Form& q) {
  if (!(p.variables() == q.variables())) throw VariableMismatch("gcd of forms over different variable lists");
  if (p.is_zero() && q.is_zero()) throw InputError("gcd of two zero forms");
  if (p.is_zero()) return q.normalized();
  if (q.is_zero()) return p.normalized();
  return detail::gcd_nonzero(p, q);
}

inline Form gcd_many(std::span<const Form> forms) {
  if (forms.empty()) throw InputError("gcd of an empty list");
  Form g(forms[0].variables());
  for (const Form& f : forms) {
    if (f.is_zero()) continue;
    g = g.is_zero() ? f.normalized() : gcd(g, f);
    if (g.is_constant()) break;
  }
  if (g.is_zero()) throw InputError("gcd of an all-zero list");
  return g;
}

}  // namespace cremona
