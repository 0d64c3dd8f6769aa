#pragma once

// Sparse multivariate polynomials over Q(i).
//
// A Form owns a shared, immutable variable list and a map from exponent
// vectors to nonzero coefficients. Terms are kept in descending graded-lex
// order (higher total degree first, ties broken lexicographically in the
// declared variable order), so the first stored term is the leading term.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cremona/error.hpp"
#include "cremona/scalar.hpp"

namespace cremona {

/// Ordered list of variable names shared by many forms.
class Variables {
 public:
  Variables() : names_(std::make_shared<const std::vector<std::string>>()) {}
  Variables(std::vector<std::string> names)  // NOLINT(google-explicit-constructor)
      : names_(std::make_shared<const std::vector<std::string>>(std::move(names))) {
    for (std::size_t a = 0; a < names_->size(); ++a) {
      for (std::size_t b = a + 1; b < names_->size(); ++b) {
        if ((*names_)[a] == (*names_)[b]) throw InputError("duplicate variable '" + (*names_)[a] + "'");
      }
    }
  }
  Variables(std::initializer_list<std::string> names) : Variables(std::vector<std::string>(names)) {}

  std::size_t size() const noexcept { return names_->size(); }
  const std::string& operator[](std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const noexcept { return *names_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = std::find(names_->begin(), names_->end(), name);
    if (it == names_->end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_->begin());
  }

  std::size_t require(const std::string& name) const {
    auto idx = index_of(name);
    if (!idx) throw InputError("unknown variable '" + name + "'");
    return *idx;
  }

  friend bool operator==(const Variables& a, const Variables& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

  /// `prefix0, ..., prefix{count-1}`
  static Variables indexed(const std::string& prefix, std::size_t count, std::size_t first = 0) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < count; ++i) v.push_back(prefix + std::to_string(first + i));
    return Variables(std::move(v));
  }

  /// Concatenation; names must stay distinct.
  static Variables concat(const Variables& a, const Variables& b) {
    std::vector<std::string> v = a.names();
    v.insert(v.end(), b.names().begin(), b.names().end());
    return Variables(std::move(v));
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

using Exponent = std::uint32_t;

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {
    degree_ = std::accumulate(exps_.begin(), exps_.end(), 0U);
  }

  std::size_t size() const noexcept { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<Exponent>& exponents() const noexcept { return exps_; }
  unsigned degree() const noexcept { return degree_; }

  void set(std::size_t i, Exponent e) {
    degree_ = degree_ - exps_[i] + e;
    exps_[i] = e;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    std::vector<Exponent> e(a.exps_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.exps_[i] + b.exps_[i];
    return Monomial(std::move(e));
  }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] > other.exps_[i]) return false;
    }
    return true;
  }

  /// other / this; requires divides(other).
  Monomial quotient_of(const Monomial& other) const {
    std::vector<Exponent> e(exps_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = other.exps_[i] - exps_[i];
    return Monomial(std::move(e));
  }

  static Monomial gcd(const Monomial& a, const Monomial& b) {
    std::vector<Exponent> e(a.exps_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(a.exps_[i], b.exps_[i]);
    return Monomial(std::move(e));
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

 private:
  std::vector<Exponent> exps_;
  unsigned degree_ = 0;
};

/// Strict "greater" under graded lex: the map's first key is the leading monomial.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return a.exponents() > b.exponents();
  }
};

/// All monomials of total degree `degree` in `nvars` variables, descending graded lex.
inline std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back(0);
    return out;
  }
  std::vector<Exponent> e(nvars, 0);
  // Lex-descending enumeration of compositions of `degree`.
  auto rec = [&](auto&& self, std::size_t pos, unsigned left) -> void {
    if (pos + 1 == nvars) {
      e[pos] = left;
      out.emplace_back(e);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      e[pos] = k;
      self(self, pos + 1, left - k);
    }
  };
  rec(rec, 0, degree);
  return out;
}

/// Result of a homogeneity test; the zero form is homogeneous of every degree.
struct Homogeneity {
  enum class Kind { zero, homogeneous, inhomogeneous };
  Kind kind = Kind::zero;
  unsigned degree = 0;

  bool is_homogeneous() const { return kind != Kind::inhomogeneous; }
  bool accepts(unsigned d) const { return kind == Kind::zero || (kind == Kind::homogeneous && degree == d); }
};

class Form {
 public:
  using TermMap = std::map<Monomial, Scalar, GrlexGreater>;

  Form() = default;
  explicit Form(Variables vars) : vars_(std::move(vars)) {}
  Form(Variables vars, TermMap terms) : vars_(std::move(vars)), terms_(std::move(terms)) {
    std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
  }

  static Form constant(const Variables& vars, const Scalar& c) {
    Form f(vars);
    if (!c.is_zero()) f.terms_.emplace(Monomial(vars.size()), c);
    return f;
  }
  static Form variable(const Variables& vars, std::size_t index) {
    Monomial m(vars.size());
    m.set(index, 1);
    return monomial(vars, m, Scalar(1));
  }
  static Form variable(const Variables& vars, const std::string& name) { return variable(vars, vars.require(name)); }
  static Form monomial(const Variables& vars, const Monomial& m, const Scalar& c) {
    Form f(vars);
    if (!c.is_zero()) f.terms_.emplace(m, c);
    return f;
  }

  const Variables& variables() const noexcept { return vars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
  }

  /// Constant term value (zero if absent).
  Scalar constant_value() const { return terms_.empty() ? Scalar() : coefficient(Monomial(vars_.size())); }

  const Monomial& leading_monomial() const {
    if (terms_.empty()) throw MathError("leading term of zero form");
    return terms_.begin()->first;
  }
  const Scalar& leading_coefficient() const {
    if (terms_.empty()) throw MathError("leading term of zero form");
    return terms_.begin()->second;
  }

  /// Maximum total degree; zero form reports 0.
  unsigned total_degree() const noexcept { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

  Homogeneity homogeneity() const {
    if (terms_.empty()) return {};
    unsigned d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_) {
      if (m.degree() != d) return {Homogeneity::Kind::inhomogeneous, 0};
    }
    return {Homogeneity::Kind::homogeneous, d};
  }

  unsigned degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max<unsigned>(d, m[var]);
    return d;
  }
  bool uses(std::size_t var) const {
    return std::any_of(terms_.begin(), terms_.end(), [var](const auto& kv) { return kv.first[var] != 0; });
  }

  /// Componentwise gcd of all term monomials (the largest monomial factor).
  Monomial monomial_content() const {
    if (terms_.empty()) return Monomial(vars_.size());
    Monomial g = terms_.begin()->first;
    for (const auto& [m, c] : terms_) g = Monomial::gcd(g, m);
    return g;
  }

  Form& operator+=(const Form& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Form& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= s;
    }
    return *this;
  }

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator-(Form a) { return a *= Scalar(-1); }
  friend Form operator*(Form a, const Scalar& s) { return a *= s; }
  friend Form operator*(const Scalar& s, Form a) { return a *= s; }

  friend Form operator*(const Form& a, const Form& b) {
    a.check_same(b);
    Form out(a.vars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    }
    return out;
  }
  Form& operator*=(const Form& o) { return *this = *this * o; }

  Form multiply_monomial(const Monomial& m, const Scalar& s = Scalar(1)) const {
    Form out(vars_);
    if (s.is_zero()) return out;
    for (const auto& [mm, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), mm * m, c * s);
    return out;
  }

  Form pow(unsigned e) const {
    Form result = constant(vars_, Scalar(1)), base = *this;
    while (e != 0) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e != 0) base *= base;
    }
    return result;
  }

  friend bool operator==(const Form& a, const Form& b) {
    if (!(a.vars_ == b.vars_)) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [m, c] : a.terms_) {
      if (!(it->first == m) || !(it->second == c)) return false;
      ++it;
    }
    return true;
  }

  /// Scaled so the graded-lex leading coefficient is 1; zero stays zero.
  Form normalized() const {
    if (terms_.empty()) return *this;
    if (leading_coefficient().is_one()) return *this;
    return *this * leading_coefficient().inverse();
  }

  Form conjugated_coefficients() const {
    Form out(vars_);
    for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, c.conj());
    return out;
  }

  Scalar evaluate(std::span<const Scalar> point) const {
    if (point.size() != vars_.size()) throw InputError("evaluation point has wrong arity");
    // Power tables keep repeated exponents cheap.
    std::vector<std::vector<Scalar>> powers(vars_.size());
    Scalar total;
    for (const auto& [m, c] : terms_) {
      Scalar t = c;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        auto& tab = powers[i];
        if (tab.empty()) tab.push_back(Scalar(1));
        while (tab.size() <= m[i]) tab.push_back(tab.back() * point[i]);
        t *= tab[m[i]];
      }
      total += t;
    }
    return total;
  }

  /// Formal partial derivative in variable `var`.
  Form derivative(std::size_t var) const {
    if (var >= vars_.size()) throw InputError("derivative variable out of range");
    Form out(vars_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial d = m;
      d.set(var, m[var] - 1);
      out.add_term(d, c * Scalar(static_cast<long>(m[var])));
    }
    return out;
  }

  /// Composition: each variable i is replaced by images[i]; images share one variable list.
  Form substitute(std::span<const Form> images) const {
    if (images.size() != vars_.size()) throw InputError("substitution needs one image per variable");
    if (images.empty()) return *this;
    const Variables& target = images[0].variables();
    for (const auto& img : images) {
      if (!(img.variables() == target)) throw VariableMismatch("substitution images use different variable lists");
    }
    std::vector<std::vector<Form>> powers(vars_.size());
    Form out(target);
    for (const auto& [m, c] : terms_) {
      Form t = constant(target, c);
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        auto& tab = powers[i];
        if (tab.empty()) tab.push_back(constant(target, Scalar(1)));
        while (tab.size() <= m[i]) tab.push_back(tab.back() * images[i]);
        t *= tab[m[i]];
        if (t.is_zero()) break;
      }
      out += t;
    }
    return out;
  }

  /// Substitutes constants for a subset of variables and re-expresses over `target`.
  /// `assign[i]` set means variable i becomes that constant; otherwise it is
  /// renamed to `target.require(name)`.
  Form specialize(const std::vector<std::optional<Scalar>>& assign, const Variables& target) const {
    if (assign.size() != vars_.size()) throw InputError("specialization needs one entry per variable");
    std::vector<std::optional<std::size_t>> dest(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (!assign[i]) dest[i] = target.require(vars_[i]);
    }
    Form out(target);
    for (const auto& [m, c] : terms_) {
      Scalar coef = c;
      Monomial nm(target.size());
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (assign[i]) {
          coef *= assign[i]->pow(m[i]);
        } else {
          nm.set(*dest[i], nm[*dest[i]] + m[i]);
        }
      }
      out.add_term(nm, coef);
    }
    return out;
  }

  /// Re-expresses the form over another variable list containing every used variable.
  Form embed(const Variables& target) const {
    return specialize(std::vector<std::optional<Scalar>>(vars_.size()), target);
  }

  /// Coefficients with respect to `var`: result[k] is the coefficient of var^k.
  std::vector<Form> coefficients_in(std::size_t var) const {
    std::vector<Form> out(degree_in(var) + 1, Form(vars_));
    for (const auto& [m, c] : terms_) {
      Monomial r = m;
      r.set(var, 0);
      out[m[var]].terms_.emplace(r, c);
    }
    return out;
  }

  /// Sum over k of coeffs[k] * var^k.
  static Form from_coefficients(const Variables& vars, std::size_t var, const std::vector<Form>& coeffs) {
    Form out(vars);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      Monomial shift(vars.size());
      shift.set(var, static_cast<Exponent>(k));
      for (const auto& [m, c] : coeffs[k].terms_) out.add_term(m * shift, c);
    }
    return out;
  }

  /// Exact quotient this / divisor, or nullopt when the division leaves a remainder.
  std::optional<Form> try_divide(const Form& divisor) const {
    check_same(divisor);
    if (divisor.is_zero()) throw MathError("division by zero form");
    if (divisor.is_constant()) return *this * divisor.leading_coefficient().inverse();
    Form rem = *this;
    Form quot(vars_);
    const Monomial& lm = divisor.leading_monomial();
    const Scalar lc_inv = divisor.leading_coefficient().inverse();
    while (!rem.is_zero()) {
      const Monomial& rm = rem.leading_monomial();
      if (!lm.divides(rm)) return std::nullopt;
      Monomial qm = lm.quotient_of(rm);
      Scalar qc = rem.leading_coefficient() * lc_inv;
      quot.add_term(qm, qc);
      rem -= divisor.multiply_monomial(qm, qc);
    }
    return quot;
  }

  Form divide_exact(const Form& divisor) const {
    auto q = try_divide(divisor);
    if (!q) throw MathError("inexact polynomial division");
    return *std::move(q);
  }

  bool divisible_by(const Form& divisor) const { return divisor.is_zero() ? is_zero() : try_divide(divisor).has_value(); }

  Form divide_monomial(const Monomial& m) const {
    Form out(vars_);
    for (const auto& [mm, c] : terms_) {
      if (!m.divides(mm)) throw MathError("inexact monomial division");
      out.terms_.emplace_hint(out.terms_.end(), m.quotient_of(mm), c);
    }
    return out;
  }

  std::string to_string() const;

 private:
  void check_same(const Form& o) const {
    if (!(vars_ == o.vars_)) throw VariableMismatch("forms use different variable lists");
  }

  void add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Variables vars_;
  TermMap terms_;
};

namespace detail {

inline std::string monomial_text(const Variables& vars, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += vars[i];
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s;
}

inline void append_term(std::string& out, const Rational& coef, const std::string& unit, const std::string& mono) {
  // `unit` is "" for the real part and "i" for the imaginary part.
  bool negative = sgn(coef) < 0;
  Rational mag = abs(coef);
  std::string body;
  if (mag == 1 && !(unit.empty() && mono.empty())) {
    body = unit;
  } else {
    body = rational_text(mag);
    if (!unit.empty()) body += "*" + unit;
  }
  if (!mono.empty()) body += (body.empty() ? "" : "*") + mono;
  if (out.empty()) {
    out = negative ? "-" + body : body;
  } else {
    out += (negative ? "-" : "+") + body;
  }
}

}  // namespace detail

/// Canonical text: descending graded-lex terms, real part before imaginary part.
inline std::string Form::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::string mono = detail::monomial_text(vars_, m);
    if (sgn(c.re()) != 0) detail::append_term(out, c.re(), "", mono);
    if (sgn(c.im()) != 0) detail::append_term(out, c.im(), "i", mono);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Form& f) { return os << f.to_string(); }

/// Zero forms of matching variables, or the sum of pairwise products.
inline Form dot(std::span<const Scalar> coeffs, std::span<const Form> forms) {
  if (coeffs.size() != forms.size() || forms.empty()) throw InputError("dot product arity mismatch");
  Form out(forms[0].variables());
  for (std::size_t k = 0; k < forms.size(); ++k) {
    if (!coeffs[k].is_zero()) out += forms[k] * coeffs[k];
  }
  return out;
}

}  // namespace cremona
