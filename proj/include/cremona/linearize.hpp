#pragma once

// Invariant spaces of forms under reduced pullback, their representation
// matrices, and linearization certificates.
//
// For a map Q of degree d and a space V of degree-m forms with basis p_j, the
// raw pullbacks p_j o Q have degree m*d. A certificate records a cofactor c
// and a matrix M with
//
//     p_j o Q = c * sum_k M[j,k] * p_k      (exactly, coefficient by coefficient)
//
// so the basis map P^n -> P^N intertwines Q with the linear map M.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cremona/bihomogeneous.hpp"
#include "cremona/birational.hpp"
#include "cremona/error.hpp"
#include "cremona/form.hpp"
#include "cremona/gcd.hpp"
#include "cremona/matrix.hpp"

namespace cremona {

/// Linearly independent homogeneous forms of one degree.
class FormSpace {
 public:
  /// Keeps `basis` in the given order; throws if it is dependent or not of degree `degree`.
  FormSpace(Variables vars, unsigned degree, std::vector<Form> basis)
      : vars_(std::move(vars)), degree_(degree), basis_(std::move(basis)) {
    monomials_ = monomials_of_degree(vars_.size(), degree_);
    for (std::size_t k = 0; k < monomials_.size(); ++k) index_.emplace(monomials_[k], k);
    const std::size_t dim = basis_.size();
    Matrix aug(dim, monomials_.size() + dim);
    for (std::size_t r = 0; r < dim; ++r) {
      if (!(basis_[r].variables() == vars_)) throw VariableMismatch("basis form over a different variable list");
      if (basis_[r].is_zero() || !basis_[r].homogeneity().accepts(degree_)) {
        throw InputError("basis form " + basis_[r].to_string() + " is not homogeneous of degree " +
                         std::to_string(degree_));
      }
      auto v = coordinates(basis_[r]);
      for (std::size_t c = 0; c < v.size(); ++c) aug(r, c) = v[c];
      aug(r, monomials_.size() + r) = Scalar(1);
    }
    auto pivots = aug.rref_in_place();
    if (pivots.size() != dim || (dim > 0 && pivots.back() >= monomials_.size())) {
      throw InputError("basis forms are linearly dependent");
    }
    pivots_ = std::move(pivots);
    reduced_ = std::move(aug);
  }

  /// Canonical basis of span(forms): reduced row-echelon over the degree-m monomials.
  static FormSpace span(const Variables& vars, unsigned degree, std::span<const Form> forms) {
    const auto monos = monomials_of_degree(vars.size(), degree);
    std::map<Monomial, std::size_t, GrlexGreater> index;
    for (std::size_t k = 0; k < monos.size(); ++k) index.emplace(monos[k], k);
    Matrix m(forms.size(), monos.size());
    for (std::size_t r = 0; r < forms.size(); ++r) {
      if (!(forms[r].variables() == vars)) throw VariableMismatch("spanning form over a different variable list");
      if (!forms[r].homogeneity().accepts(degree)) {
        throw InputError("form " + forms[r].to_string() + " is not homogeneous of degree " + std::to_string(degree));
      }
      for (const auto& [mono, c] : forms[r].terms()) m(r, index.at(mono)) = c;
    }
    auto pivots = m.rref_in_place();
    std::vector<Form> basis;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      Form f(vars);
      for (std::size_t c = 0; c < monos.size(); ++c) f += Form::monomial(vars, monos[c], m(r, c));
      basis.push_back(std::move(f));
    }
    return FormSpace(vars, degree, std::move(basis));
  }

  const Variables& variables() const noexcept { return vars_; }
  unsigned degree() const noexcept { return degree_; }
  std::size_t dimension() const noexcept { return basis_.size(); }
  const std::vector<Form>& basis() const noexcept { return basis_; }

  std::vector<Scalar> coordinates(const Form& f) const {
    std::vector<Scalar> v(monomials_.size());
    for (const auto& [m, c] : f.terms()) {
      auto it = index_.find(m);
      if (it == index_.end()) throw InputError("form " + f.to_string() + " has a term outside degree " + std::to_string(degree_));
      v[it->second] = c;
    }
    return v;
  }

  /// Coefficients a_k with f = sum a_k basis_k, or nullopt when f is outside the span.
  std::optional<std::vector<Scalar>> express(const Form& f) const {
    if (!(f.variables() == vars_) || !f.homogeneity().accepts(degree_)) return std::nullopt;
    const auto v = coordinates(f);
    const std::size_t dim = basis_.size(), nm = monomials_.size();
    // With R = E * B in reduced form, f = sum_r v[pivot_r] R_r must reproduce f exactly.
    std::vector<Scalar> residual = v;
    std::vector<Scalar> coeffs(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      const Scalar& a = v[pivots_[r]];
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < nm; ++c) {
        if (!reduced_(r, c).is_zero()) residual[c] -= a * reduced_(r, c);
      }
      for (std::size_t k = 0; k < dim; ++k) {
        if (!reduced_(r, nm + k).is_zero()) coeffs[k] += a * reduced_(r, nm + k);
      }
    }
    for (const auto& x : residual) {
      if (!x.is_zero()) return std::nullopt;
    }
    return coeffs;
  }

  bool contains(const Form& f) const { return express(f).has_value(); }

  FormSpace extended(std::span<const Form> more) const {
    std::vector<Form> all = basis_;
    all.insert(all.end(), more.begin(), more.end());
    return span(vars_, degree_, all);
  }

 private:
  Variables vars_;
  unsigned degree_;
  std::vector<Form> basis_;
  std::vector<Monomial> monomials_;
  std::map<Monomial, std::size_t, GrlexGreater> index_;
  std::vector<std::size_t> pivots_;
  Matrix reduced_;
};

inline std::vector<Form> monomial_seeds(const Variables& vars, unsigned degree) {
  std::vector<Form> out;
  for (const auto& m : monomials_of_degree(vars.size(), degree)) out.push_back(Form::monomial(vars, m, Scalar(1)));
  return out;
}

struct PullbackSystem {
  Form cofactor;
  std::vector<Form> images;
};

namespace detail {

inline std::vector<Form> raw_pullbacks(std::span<const Form> basis, const BirationalMap& g) {
  std::vector<Form> raw;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    raw.push_back(basis[j].substitute(g.components()));
    if (raw.back().is_zero()) {
      throw DegenerateComposition("pullback of basis element " + std::to_string(j) + " (" + basis[j].to_string() +
                                  ") vanishes identically");
    }
  }
  return raw;
}

}  // namespace detail

/// Pullbacks of the basis by g divided by one common cofactor.
///
/// The cofactor is the gcd of the raw pullbacks with the common factor of
/// the basis itself divided out when it divides (a basis sharing a factor h
/// sees h o g in every pullback, and the images must keep h).
inline PullbackSystem reduced_pullback_system(const FormSpace& space, const BirationalMap& g) {
  if (!(space.variables() == g.variables())) throw VariableMismatch("form space and map live on different spaces");
  const auto raw = detail::raw_pullbacks(space.basis(), g);
  Form cofactor = gcd_many(raw);
  if (space.dimension() > 0) {
    const Form h = gcd_many(space.basis());
    if (!h.is_constant()) {
      if (auto q = cofactor.try_divide(h)) cofactor = q->normalized();
    }
  }
  PullbackSystem sys{cofactor, {}};
  for (const auto& r : raw) sys.images.push_back(r.divide_exact(cofactor));
  return sys;
}

namespace detail {

/// Images used while growing a span; see invariant_closure.
inline std::vector<Form> closure_images(const FormSpace& space, const BirationalMap& g, std::size_t label) {
  const unsigned m = space.degree();
  const auto raw = raw_pullbacks(space.basis(), g);
  const unsigned target = m * g.degree() - m;
  const Form e = gcd_many(raw);
  std::optional<Form> cofactor;
  if (e.total_degree() < target) {
    throw NotClosedAtDegree("pullback by map " + std::to_string(label) + " leaves degree " + std::to_string(m) +
                            ": reduced images have degree " + std::to_string(m * g.degree() - e.total_degree()));
  }
  if (e.total_degree() == target) {
    cofactor = e;
  } else {
    const Form h = gcd_many(space.basis());
    if (!h.is_constant()) {
      auto q = e.try_divide(h);
      if (q && q->total_degree() == target) cofactor = q->normalized();
    }
    if (!cofactor && target == 0) cofactor = Form::constant(space.variables(), Scalar(1));
    if (!cofactor) {
      throw NotClosedAtDegree("pullback by map " + std::to_string(label) + ": the common factor of the pullbacks has degree " +
                              std::to_string(e.total_degree()) + " > " + std::to_string(target) +
                              " and no cofactor of the required degree is determined; use seeds spanning more of the orbit");
    }
  }
  std::vector<Form> images;
  for (const auto& r : raw) images.push_back(r.divide_exact(*cofactor));
  return images;
}

}  // namespace detail

/// Smallest span of degree-m forms containing the seeds that is mapped into
/// itself by every generator and every certified inverse, with images of
/// degree exactly m.
///
/// While the span is still growing the cofactor for a map of degree d must
/// have degree m*(d-1): the gcd of the raw pullbacks only shrinks as the span
/// grows, so a gcd below that degree means no invariant span exists at this m.
inline FormSpace invariant_closure(std::span<const Form> seeds, std::span<const BirationalMap> generators, std::size_t dim_cap) {
  if (seeds.empty()) throw InputError("closure needs at least one seed form");
  if (generators.empty()) throw InputError("closure needs at least one generator");
  const Variables& vars = seeds[0].variables();
  std::optional<unsigned> degree;
  for (const auto& s : seeds) {
    Homogeneity h = s.homogeneity();
    if (h.kind == Homogeneity::Kind::inhomogeneous) throw InputError("seed " + s.to_string() + " is not homogeneous");
    if (h.kind == Homogeneity::Kind::zero) continue;
    if (degree && *degree != h.degree) throw InputError("seeds have unequal degrees");
    degree = h.degree;
  }
  if (!degree) throw InputError("all seeds are zero");
  std::vector<BirationalMap> maps;
  for (const auto& g : generators) {
    if (!(g.variables() == vars)) throw VariableMismatch("generator and seeds live on different spaces");
    maps.push_back(g);
    if (auto inv = g.inverse()) maps.push_back(*inv);
  }

  FormSpace space = FormSpace::span(vars, *degree, seeds);
  if (space.dimension() > dim_cap) throw DimCapExceeded("seed span already exceeds the dimension cap");
  while (true) {
    std::vector<Form> fresh;
    for (std::size_t k = 0; k < maps.size(); ++k) {
      for (auto& img : detail::closure_images(space, maps[k], k)) {
        if (!space.contains(img)) fresh.push_back(std::move(img));
      }
    }
    if (fresh.empty()) break;
    space = space.extended(fresh);
    if (space.dimension() > dim_cap) {
      throw DimCapExceeded("invariant span exceeds the dimension cap " + std::to_string(dim_cap));
    }
  }
  return space;
}

struct Representation {
  Matrix matrix;
  Form cofactor;
};

/// Matrix of the reduced pullback in the space's basis, first nonzero entry 1;
/// the cofactor carries the complementary scalar.
inline Representation solve_representation(const FormSpace& space, const BirationalMap& g) {
  PullbackSystem sys = reduced_pullback_system(space, g);
  const std::size_t dim = space.dimension();
  Matrix m(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    const Form& img = sys.images[j];
    if (!img.homogeneity().accepts(space.degree())) {
      throw NotClosedAtDegree("reduced pullback of basis element " + std::to_string(j) + " has degree " +
                              std::to_string(img.total_degree()) + ", expected " + std::to_string(space.degree()));
    }
    auto coeffs = space.express(img);
    if (!coeffs) throw NotInSpan("reduced pullback of basis element " + std::to_string(j) + " is not in the span");
    for (std::size_t k = 0; k < dim; ++k) m(j, k) = (*coeffs)[k];
  }
  auto first = m.first_nonzero();
  if (!first) throw NotInSpan("representation matrix is zero");
  const Scalar s = *first;
  return {s.inverse() * m, sys.cofactor * s};
}

struct GeneratorEntry {
  BirationalMap map;
  Matrix matrix;
  Form cofactor;
};

struct LinearizationCertificate {
  Variables variables;
  unsigned degree = 0;
  std::vector<Form> basis;
  std::vector<GeneratorEntry> generators;

  std::size_t dimension() const { return variables.size() - 1; }
  FormSpace space() const { return FormSpace(variables, degree, basis); }
};

struct IdentityFailure {
  std::size_t generator = 0;
  std::size_t basis_index = 0;
  std::string reason;
  std::string monomial;  // empty unless a coefficient mismatch
  std::string expected;  // coefficient of p_j o Q_g
  std::string actual;    // coefficient of c_g * (M_g p)_j
};

struct IdentityReport {
  std::size_t checked = 0;
  std::optional<IdentityFailure> failure;
  bool ok() const { return !failure.has_value(); }
};

/// Re-derives every p_j o Q_g and compares it with c_g * (M_g p)_j.
/// Uses only the certificate's data; nothing from the construction.
inline IdentityReport verify_certificate_identity(const LinearizationCertificate& cert) {
  IdentityReport rep;
  const std::size_t dim = cert.basis.size();
  auto fail = [&](std::size_t g, std::size_t j, std::string why) {
    rep.failure = IdentityFailure{g, j, std::move(why), {}, {}, {}};
    return rep;
  };
  if (dim == 0) return fail(0, 0, "empty basis");
  for (std::size_t j = 0; j < dim; ++j) {
    if (!(cert.basis[j].variables() == cert.variables) || cert.basis[j].is_zero() ||
        !cert.basis[j].homogeneity().accepts(cert.degree)) {
      return fail(0, j, "basis element is not a nonzero form of degree " + std::to_string(cert.degree));
    }
  }
  for (std::size_t g = 0; g < cert.generators.size(); ++g) {
    const auto& e = cert.generators[g];
    if (!(e.map.variables() == cert.variables)) return fail(g, 0, "map lives on a different space");
    if (e.matrix.rows() != dim || e.matrix.cols() != dim) return fail(g, 0, "matrix size does not match the basis");
    const unsigned raw_degree = cert.degree * e.map.degree();
    const Homogeneity ch = e.cofactor.homogeneity();
    if (e.cofactor.is_zero() || !ch.is_homogeneous() || ch.degree + cert.degree != raw_degree) {
      return fail(g, 0, "degree mismatch: cofactor has degree " + std::to_string(e.cofactor.total_degree()) + ", expected " +
                            std::to_string(raw_degree - cert.degree));
    }
    for (std::size_t j = 0; j < dim; ++j) {
      const Form lhs = cert.basis[j].substitute(e.map.components());
      const Form rhs = e.cofactor * dot(e.matrix.row(j), cert.basis);
      ++rep.checked;
      if (lhs == rhs) continue;
      const Form diff = lhs - rhs;
      const Monomial& m = diff.leading_monomial();
      rep.failure = IdentityFailure{g,
                                    j,
                                    "coefficient mismatch",
                                    detail::monomial_text(cert.variables, m).empty() ? "1" : detail::monomial_text(cert.variables, m),
                                    lhs.coefficient(m).to_string(),
                                    rhs.coefficient(m).to_string()};
      return rep;
    }
    if (!e.matrix.is_invertible()) return fail(g, 0, "matrix is singular");
  }
  return rep;
}

inline LinearizationCertificate build_certificate(std::span<const Form> seeds, std::span<const BirationalMap> generators,
                                                  std::size_t dim_cap) {
  FormSpace space = invariant_closure(seeds, generators, dim_cap);
  LinearizationCertificate cert{space.variables(), space.degree(), space.basis(), {}};
  for (const auto& g : generators) {
    Representation r = solve_representation(space, g);
    if (!r.matrix.is_invertible()) throw NotInSpan("representation matrix of " + g.to_string() + " is singular");
    cert.generators.push_back({g, std::move(r.matrix), std::move(r.cofactor)});
  }
  auto rep = verify_certificate_identity(cert);
  if (!rep.ok()) throw MathError("constructed certificate failed re-verification: " + rep.failure->reason);
  return cert;
}

/// Convenience overload checking the requested degree against the seeds.
inline LinearizationCertificate build_certificate(std::span<const Form> seeds, std::span<const BirationalMap> generators,
                                                  unsigned degree, std::size_t dim_cap) {
  for (const auto& s : seeds) {
    if (!s.homogeneity().accepts(degree)) throw InputError("seed " + s.to_string() + " is not of degree " + std::to_string(degree));
  }
  return build_certificate(seeds, generators, dim_cap);
}

// ---------------------------------------------------------------------------
// Group law

struct Letter {
  std::size_t generator = 0;
  bool inverse = false;
};
using Word = std::vector<Letter>;

inline std::string word_text(const Word& w) {
  std::string s;
  for (const auto& l : w) s += (s.empty() ? "" : " ") + ("g" + std::to_string(l.generator)) + (l.inverse ? "^-1" : "");
  return s;
}

struct GroupLawEntry {
  Word word;
  std::optional<Scalar> lambda;  // M_{w1} ... M_{wk} = lambda * M_{w1 o ... o wk}
  std::string error;
  bool ok() const { return lambda.has_value(); }
};

/// Checks that the representation is multiplicative up to a scalar on each word.
inline std::vector<GroupLawEntry> check_group_law(const LinearizationCertificate& cert, const std::vector<Word>& words) {
  const FormSpace space = cert.space();
  std::vector<GroupLawEntry> out;
  for (const auto& w : words) {
    GroupLawEntry entry{w, std::nullopt, {}};
    try {
      if (w.empty()) throw InputError("empty word");
      std::optional<Matrix> product;
      std::optional<BirationalMap> composite;
      for (const auto& letter : w) {
        if (letter.generator >= cert.generators.size()) throw InputError("word letter names an unknown generator");
        const auto& gen = cert.generators[letter.generator];
        BirationalMap q = gen.map;
        Matrix mq = gen.matrix;
        if (letter.inverse) {
          auto inv = gen.map.inverse();
          if (!inv) throw InputError("generator " + std::to_string(letter.generator) + " has no certified inverse");
          q = *inv;
          mq = solve_representation(space, q).matrix;
        }
        product = product ? *product * mq : mq;
        composite = composite ? compose(*composite, q) : q;
      }
      const Matrix fresh = solve_representation(space, *composite).matrix;
      entry.lambda = proportionality(*product, fresh);
      if (!entry.lambda) entry.error = "matrix product is not proportional to the matrix of the composite";
    } catch (const Error& e) {
      entry.error = e.what();
    }
    out.push_back(std::move(entry));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sample-based evidence

struct EquivarianceEntry {
  std::size_t generator = 0;
  std::size_t sample = 0;
  enum class Status { pass, fail, skipped } status = Status::pass;
  std::string reason;
};

struct EquivarianceReport {
  std::vector<EquivarianceEntry> entries;
  std::size_t count(EquivarianceEntry::Status s) const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.status == s ? 1 : 0;
    return n;
  }
  bool ok() const { return count(EquivarianceEntry::Status::fail) == 0; }
};

inline std::vector<Scalar> evaluate_all(std::span<const Form> forms, std::span<const Scalar> point) {
  std::vector<Scalar> v;
  v.reserve(forms.size());
  for (const auto& f : forms) v.push_back(f.evaluate(point));
  return v;
}

inline bool all_zero(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

/// i(Q_g(p)) against M_g i(p), projectively, where i is the basis map.
inline EquivarianceReport verify_equivariance(const LinearizationCertificate& cert, std::span<const ProjectivePoint> samples) {
  using Status = EquivarianceEntry::Status;
  EquivarianceReport rep;
  for (std::size_t g = 0; g < cert.generators.size(); ++g) {
    const auto& e = cert.generators[g];
    for (std::size_t s = 0; s < samples.size(); ++s) {
      const auto& p = samples[s].coordinates();
      EquivarianceEntry entry{g, s, Status::pass, {}};
      const auto ip = evaluate_all(cert.basis, p);
      const auto qp = evaluate_all(e.map.components(), p);
      if (e.cofactor.evaluate(p).is_zero()) {
        entry = {g, s, Status::skipped, "cofactor vanishes"};
      } else if (all_zero(ip)) {
        entry = {g, s, Status::skipped, "base point of the basis"};
      } else if (all_zero(qp)) {
        entry = {g, s, Status::skipped, "indeterminacy of the generator"};
      } else {
        const auto lhs = evaluate_all(cert.basis, qp);
        const auto rhs = e.matrix.apply(ip);
        if (!projectively_equal(lhs, rhs)) entry = {g, s, Status::fail, "i(g.p) is not proportional to M_g i(p)"};
      }
      rep.entries.push_back(std::move(entry));
    }
  }
  return rep;
}

struct BasePointReport {
  Form basis_gcd;
  bool gcd_trivial = false;
  std::vector<std::size_t> vanishing_samples;    // every basis form vanishes
  std::vector<std::size_t> rank_zero_samples;    // Jacobian of the basis is zero
  std::vector<std::pair<std::size_t, std::size_t>> collisions;  // distinct samples, equal images
  bool ok() const { return gcd_trivial && vanishing_samples.empty() && rank_zero_samples.empty() && collisions.empty(); }
};

/// Necessary conditions for the basis map to be an embedding, checked on samples.
inline BasePointReport base_point_evidence(const FormSpace& space, std::span<const ProjectivePoint> samples) {
  BasePointReport rep;
  rep.basis_gcd = gcd_many(space.basis());
  rep.gcd_trivial = rep.basis_gcd.is_constant();
  const auto& basis = space.basis();
  const std::size_t nv = space.variables().size();
  std::vector<std::vector<Form>> jac(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t v = 0; v < nv; ++v) jac[j].push_back(basis[j].derivative(v));
  }
  std::vector<std::optional<ProjectivePoint>> images;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& p = samples[s].coordinates();
    auto ip = evaluate_all(basis, p);
    if (all_zero(ip)) {
      rep.vanishing_samples.push_back(s);
      images.emplace_back();
    } else {
      images.emplace_back(ProjectivePoint(std::move(ip)));
    }
    Matrix j(basis.size(), nv);
    for (std::size_t r = 0; r < basis.size(); ++r) {
      for (std::size_t v = 0; v < nv; ++v) j(r, v) = jac[r][v].evaluate(p);
    }
    if (j.is_zero()) rep.rank_zero_samples.push_back(s);
  }
  for (std::size_t a = 0; a < samples.size(); ++a) {
    for (std::size_t b = a + 1; b < samples.size(); ++b) {
      if (samples[a] == samples[b] || !images[a] || !images[b]) continue;
      if (*images[a] == *images[b]) rep.collisions.emplace_back(a, b);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Rational families P(x, y)

/// n+1 bihomogeneous forms in parameters x and points y, of one common bidegree.
class RationalFamily {
 public:
  RationalFamily(Variables x_vars, Variables y_vars, std::vector<Form> components)
      : x_vars_(std::move(x_vars)), y_vars_(std::move(y_vars)), all_(Variables::concat(x_vars_, y_vars_)) {
    if (components.size() != y_vars_.size()) throw InputError("family needs one component per point variable");
    std::optional<std::pair<unsigned, unsigned>> bideg;
    bool nonzero = false;
    for (auto& c : components) {
      Form f = c.variables() == all_ ? c : c.embed(all_);
      BihomogeneousForm b(x_vars_, y_vars_, f);
      if (!f.is_zero()) {
        if (bideg && *bideg != b.bidegree()) throw InputError("family components have different bidegrees");
        bideg = b.bidegree();
        nonzero = true;
      }
      comps_.push_back(std::move(f));
    }
    if (!nonzero) throw InputError("family with all components zero");
    bidegree_ = *bideg;
  }

  const Variables& x_variables() const noexcept { return x_vars_; }
  const Variables& y_variables() const noexcept { return y_vars_; }
  const Variables& all_variables() const noexcept { return all_; }
  const std::vector<Form>& components() const noexcept { return comps_; }
  std::pair<unsigned, unsigned> bidegree() const noexcept { return bidegree_; }

 private:
  Variables x_vars_;
  Variables y_vars_;
  Variables all_;
  std::vector<Form> comps_;
  std::pair<unsigned, unsigned> bidegree_{0, 0};
};

struct FamilyDecomposition {
  std::vector<SeparatedTerm> terms;
  FormSpace space;
};

/// h(P(x, y)) = sum phi_i(x) psi_i(y); the psi_i span a space containing
/// every specialization h o P(x0, .).
inline FamilyDecomposition family_decompose(const RationalFamily& fam, const Form& h) {
  if (!(h.variables() == fam.y_variables())) throw VariableMismatch("h must be a form in the family's point variables");
  if (!h.homogeneity().is_homogeneous() || h.is_zero()) throw InputError("h must be a nonzero homogeneous form");
  Form composed = h.substitute(fam.components());
  if (composed.is_zero()) throw MathError("h o P vanishes identically");
  BihomogeneousForm bf(fam.x_variables(), fam.y_variables(), composed);
  auto terms = bihomogeneous_decompose(bf);
  std::vector<Form> psis;
  for (const auto& t : terms) psis.push_back(t.psi);
  FormSpace space = FormSpace::span(fam.y_variables(), bf.bidegree().second, psis);
  return {std::move(terms), std::move(space)};
}

/// The map y -> P(x0, y), reduced to a primitive tuple.
inline BirationalMap specialize_family(const RationalFamily& fam, std::span<const Scalar> x0) {
  if (x0.size() != fam.x_variables().size()) throw InputError("parameter point has wrong arity");
  std::vector<std::optional<Scalar>> assign(fam.all_variables().size());
  for (std::size_t i = 0; i < x0.size(); ++i) assign[i] = x0[i];
  std::vector<Form> comps;
  bool all_zero_comps = true;
  for (const auto& c : fam.components()) {
    comps.push_back(c.specialize(assign, fam.y_variables()));
    all_zero_comps = all_zero_comps && comps.back().is_zero();
  }
  if (all_zero_comps) throw MathError("degenerate parameter: every component vanishes identically");
  return BirationalMap(std::move(comps));
}

}  // namespace cremona
