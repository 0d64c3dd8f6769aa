#pragma once

// Batch driver behind the `cremona` tool.
//
// Exit codes: 0 success, 1 input or usage error, 2 mathematical failure.
// Every task produces one JSON document (written to --out, or to stdout when
// no --out is given) carrying "format_version", "task" and "status".

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cremona/birational.hpp"
#include "cremona/domains.hpp"
#include "cremona/error.hpp"
#include "cremona/json_io.hpp"
#include "cremona/linearize.hpp"
#include "cremona/sampling.hpp"

namespace cremona::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_input = 1;
inline constexpr int exit_math = 2;

inline constexpr std::uintmax_t max_input_bytes = 16u << 20;
inline constexpr std::size_t max_dimension = 16;
inline constexpr unsigned max_degree = 12;
inline constexpr std::size_t max_samples = 100000;
inline constexpr std::size_t max_dim_cap = 5000;

inline const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names{"linearize", "verify", "compose", "segre-variety",
                                              "levi", "decompose", "degree-bound", "domain-report"};
  return names;
}

struct JobManifest {
  std::string task;
  std::string input;
  std::optional<unsigned> degree;
  std::optional<unsigned> degree_max;
  std::optional<std::size_t> dim;  // degree-bound only
  std::size_t dim_cap = 64;
  std::size_t samples = 100;
  std::uint64_t seed = default_seed;
  std::string out;
};

/// Fills unset fields of `m` from a manifest file with the same keys as the flags.
inline void merge_manifest_file(JobManifest& m, const std::string& path, bool degree_set, bool degree_max_set, bool dim_set,
                                bool dim_cap_set, bool samples_set, bool seed_set) {
  const Json j = read_json_file(path);
  if (!j.is_object()) throw InputError("manifest must be a JSON object");
  auto num = [&](const char* key) { return cremona::detail::count_field(j[key], std::string("manifest.") + key); };
  if (m.task.empty() && j.contains("task")) m.task = cremona::detail::text_field(j["task"], "manifest.task");
  if (m.input.empty() && j.contains("input")) m.input = cremona::detail::text_field(j["input"], "manifest.input");
  if (m.out.empty() && j.contains("out")) m.out = cremona::detail::text_field(j["out"], "manifest.out");
  if (!degree_set && j.contains("degree")) m.degree = static_cast<unsigned>(num("degree"));
  if (!degree_max_set && j.contains("degree_max")) m.degree_max = static_cast<unsigned>(num("degree_max"));
  if (!dim_set && j.contains("dim")) m.dim = num("dim");
  if (!dim_cap_set && j.contains("dim_cap")) m.dim_cap = num("dim_cap");
  if (!samples_set && j.contains("samples")) m.samples = num("samples");
  if (!seed_set && j.contains("seed")) m.seed = num("seed");
}

namespace detail {

using cremona::detail::count_field;
using cremona::detail::field;
using cremona::detail::form_at;
using cremona::detail::schema_error;
using cremona::detail::text_field;

inline Json document(const std::string& task, const std::string& status) {
  Json j;
  j["format_version"] = format_version;
  j["task"] = task;
  j["status"] = status;
  return j;
}

inline std::string error_kind(const Error& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const VariableMismatch*>(&e)) return "VariableMismatch";
  if (dynamic_cast<const InputError*>(&e)) return "InputError";
  if (dynamic_cast<const NotClosedAtDegree*>(&e)) return "NotClosedAtDegree";
  if (dynamic_cast<const DimCapExceeded*>(&e)) return "DimCapExceeded";
  if (dynamic_cast<const NotInSpan*>(&e)) return "NotInSpan";
  if (dynamic_cast<const DegenerateComposition*>(&e)) return "DegenerateComposition";
  if (dynamic_cast<const IndeterminatePoint*>(&e)) return "IndeterminatePoint";
  if (dynamic_cast<const NotRealValued*>(&e)) return "NotRealValued";
  if (dynamic_cast<const NotOnBoundary*>(&e)) return "NotOnBoundary";
  if (dynamic_cast<const NotSmooth*>(&e)) return "NotSmooth";
  return "MathError";
}

inline Json error_json(const Error& e) {
  Json j;
  j["kind"] = error_kind(e);
  j["message"] = e.what();
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    j["line"] = p->line();
    j["column"] = p->column();
  }
  return j;
}

inline Json load_input(const JobManifest& m) {
  if (m.input.empty()) throw InputError("task '" + m.task + "' needs --input");
  std::error_code ec;
  const auto size = std::filesystem::file_size(m.input, ec);
  if (ec) throw InputError("cannot open " + m.input);
  if (size > max_input_bytes) throw InputError("input file exceeds " + std::to_string(max_input_bytes) + " bytes");
  Json j = read_json_file(m.input);
  if (!j.is_object()) throw InputError("input must be a JSON object");
  if (j.contains("format_version") && j["format_version"] != format_version) {
    throw InputError("unsupported format_version " + j["format_version"].dump());
  }
  return j;
}

inline void check_dimension(std::size_t n) {
  if (n > max_dimension) throw InputError("dimension " + std::to_string(n) + " exceeds the limit " + std::to_string(max_dimension));
}

inline Word parse_word(const std::string& text, std::size_t generators, const std::string& where) {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    bool inv = false;
    if (tok.size() > 3 && tok.ends_with("^-1")) {
      inv = true;
      tok.resize(tok.size() - 3);
    }
    if (tok.size() < 2 || tok[0] != 'g' || tok.find_first_not_of("0123456789", 1) != std::string::npos) {
      schema_error(where, "word letters look like g0 or g1^-1");
    }
    const std::size_t k = std::stoul(tok.substr(1));
    if (k >= generators) schema_error(where, "unknown generator g" + std::to_string(k));
    w.push_back({k, inv});
  }
  if (w.empty()) schema_error(where, "empty word");
  return w;
}

inline std::vector<Word> default_words(const LinearizationCertificate& cert) {
  std::vector<Word> words;
  const std::size_t k = cert.generators.size();
  for (std::size_t a = 0; a < k; ++a) {
    if (cert.generators[a].map.has_certified_inverse()) words.push_back({{a, false}, {a, true}});
    for (std::size_t b = 0; b < k; ++b) words.push_back({{a, false}, {b, false}});
  }
  return words;
}

inline Json equivariance_json(const EquivarianceReport& rep) {
  using Status = EquivarianceEntry::Status;
  Json j;
  j["passed"] = rep.count(Status::pass);
  j["failed"] = rep.count(Status::fail);
  j["skipped"] = rep.count(Status::skipped);
  Json skips = Json::object();
  Json fails = Json::array();
  for (const auto& e : rep.entries) {
    if (e.status == Status::skipped) skips[e.reason] = skips.value(e.reason, 0) + 1;
    if (e.status == Status::fail) fails.push_back({{"generator", e.generator}, {"sample", e.sample}, {"reason", e.reason}});
  }
  j["skip_reasons"] = std::move(skips);
  j["failures"] = std::move(fails);
  j["ok"] = rep.ok();
  return j;
}

inline Json base_points_json(const BasePointReport& rep, std::span<const ProjectivePoint> samples) {
  Json j;
  j["basis_gcd"] = rep.basis_gcd.to_string();
  j["gcd_trivial"] = rep.gcd_trivial;
  Json v = Json::array();
  for (auto s : rep.vanishing_samples) v.push_back(point_to_json(samples[s].coordinates()));
  j["base_points_found"] = std::move(v);
  Json r = Json::array();
  for (auto s : rep.rank_zero_samples) r.push_back(point_to_json(samples[s].coordinates()));
  j["jacobian_rank_zero"] = std::move(r);
  Json c = Json::array();
  for (auto [a, b] : rep.collisions) {
    c.push_back(Json::array({point_to_json(samples[a].coordinates()), point_to_json(samples[b].coordinates())}));
  }
  j["separation_failures"] = std::move(c);
  j["embedding_evidence_ok"] = rep.ok();
  return j;
}

inline Json identity_failure_json(const IdentityFailure& f) {
  Json j;
  j["generator"] = f.generator;
  j["basis_index"] = f.basis_index;
  j["reason"] = f.reason;
  if (!f.monomial.empty()) {
    j["monomial"] = f.monomial;
    j["expected"] = f.expected;
    j["actual"] = f.actual;
  }
  return j;
}

// --------------------------------------------------------------------------

struct Outcome {
  Json doc;
  int code = exit_ok;
  std::string summary;  // one line for stdout when the document goes to a file
};

inline Outcome task_linearize(const JobManifest& m) {
  const Json in = load_input(m);
  const std::size_t n = count_field(field(in, "dim", "input"), "dim");
  check_dimension(n);
  Variables vars = Variables::indexed("x", n + 1);
  if (in.contains("variables")) vars = variables_from_json(in["variables"], "variables");
  if (vars.size() != n + 1) schema_error("variables", "dim " + std::to_string(n) + " needs " + std::to_string(n + 1) + " variables");

  const Json& gj = field(in, "generators", "input");
  if (!gj.is_array() || gj.empty()) schema_error("generators", "expected a non-empty array of maps");
  std::vector<BirationalMap> gens;
  for (std::size_t k = 0; k < gj.size(); ++k) {
    gens.push_back(map_from_json(gj[k], "generators[" + std::to_string(k) + "]", vars));
    if (gens.back().dimension() != n) schema_error("generators[" + std::to_string(k) + "]", "map dimension differs from dim");
  }

  std::vector<Form> file_seeds;
  std::optional<unsigned> seed_degree;
  if (in.contains("seeds")) {
    file_seeds = forms_from_json(in["seeds"], vars, "seeds");
    for (const auto& s : file_seeds) {
      Homogeneity h = s.homogeneity();
      if (h.kind != Homogeneity::Kind::homogeneous) schema_error("seeds", "seed " + s.to_string() + " is not a nonzero form");
      if (seed_degree && *seed_degree != h.degree) schema_error("seeds", "seeds have unequal degrees");
      seed_degree = h.degree;
    }
  }

  unsigned lo = m.degree.value_or(1);
  unsigned hi = m.degree_max.value_or(m.degree ? *m.degree : std::max(3u, seed_degree.value_or(1)));
  if (lo < 1 || hi < lo) throw InputError("degree range must satisfy 1 <= degree <= degree-max");
  if (hi > max_degree) throw InputError("degree-max exceeds the limit " + std::to_string(max_degree));
  if (m.dim_cap == 0 || m.dim_cap > max_dim_cap) throw InputError("dim-cap must be in 1.." + std::to_string(max_dim_cap));
  if (m.samples > max_samples) throw InputError("samples exceeds the limit " + std::to_string(max_samples));

  Json attempts = Json::array();
  std::optional<LinearizationCertificate> cert;
  for (unsigned d = lo; d <= hi && !cert; ++d) {
    const bool from_file = seed_degree && *seed_degree == d;
    const std::vector<Form> seeds = from_file ? file_seeds : monomial_seeds(vars, d);
    Json a;
    a["degree"] = d;
    a["seeds"] = from_file ? "input" : "monomials";
    a["seed_count"] = seeds.size();
    try {
      cert = build_certificate(seeds, gens, d, m.dim_cap);
      a["status"] = "closed";
      a["dimension"] = cert->basis.size();
    } catch (const MathError& e) {
      a["status"] = error_kind(e);
      a["message"] = e.what();
    }
    attempts.push_back(std::move(a));
  }

  if (!cert) {
    Json doc = document("linearize", "failure");
    doc["attempts"] = std::move(attempts);
    doc["error"] = {{"kind", "NotClosedAtDegree"},
                    {"message", "no invariant space found for degrees " + std::to_string(lo) + ".." + std::to_string(hi)}};
    return {std::move(doc), exit_math, "linearize: no invariant space in degrees " + std::to_string(lo) + ".." + std::to_string(hi)};
  }

  SampleRng rng(m.seed);
  const auto samples = rng.projective_points(m.samples, n + 1);
  const auto equiv = verify_equivariance(*cert, samples);

  std::vector<ProjectivePoint> bp_samples;
  for (std::size_t i = 0; i <= n; ++i) {
    std::vector<Scalar> e(n + 1);
    e[i] = Scalar(1);
    bp_samples.emplace_back(std::move(e));
  }
  bp_samples.insert(bp_samples.end(), samples.begin(), samples.end());
  const auto bp = base_point_evidence(cert->space(), bp_samples);

  std::vector<Word> words;
  if (in.contains("words")) {
    const Json& wj = in["words"];
    if (!wj.is_array()) schema_error("words", "expected an array of words");
    for (std::size_t k = 0; k < wj.size(); ++k) {
      const std::string where = "words[" + std::to_string(k) + "]";
      words.push_back(parse_word(text_field(wj[k], where), gens.size(), where));
    }
  } else {
    words = default_words(*cert);
  }
  const auto law = check_group_law(*cert, words);
  Json lj = Json::array();
  bool law_ok = true;
  for (const auto& e : law) {
    Json x;
    x["word"] = word_text(e.word);
    if (e.lambda) {
      x["lambda"] = e.lambda->to_string();
    } else {
      x["error"] = e.error;
      law_ok = false;
    }
    lj.push_back(std::move(x));
  }

  const auto ident = verify_certificate_identity(*cert);
  const bool ok = ident.ok() && equiv.ok() && law_ok;
  Json doc = document("linearize", ok ? "ok" : "failure");
  doc["attempts"] = std::move(attempts);
  doc["certificate"] = certificate_to_json(*cert);
  doc["identity"] = {{"checked", ident.checked}, {"ok", ident.ok()}};
  doc["samples"] = {{"count", m.samples}, {"seed", m.seed}};
  doc["equivariance"] = equivariance_json(equiv);
  doc["base_points"] = base_points_json(bp, bp_samples);
  doc["group_law"] = std::move(lj);
  std::string summary = "linearize: certificate of dimension " + std::to_string(cert->basis.size()) + " at degree " +
                        std::to_string(cert->degree) + (ok ? "" : " (violations found)");
  return {std::move(doc), ok ? exit_ok : exit_math, std::move(summary)};
}

inline Outcome task_verify(const JobManifest& m) {
  const Json in = load_input(m);
  const Json& cj = in.contains("certificate") ? in["certificate"] : in;
  const LinearizationCertificate cert = certificate_from_json(cj);
  check_dimension(cert.dimension());
  const auto rep = verify_certificate_identity(cert);
  Json doc = document("verify", rep.ok() ? "ok" : "failure");
  doc["checked"] = rep.checked;
  doc["generators"] = cert.generators.size();
  doc["dimension"] = cert.basis.size();
  if (!rep.ok()) {
    doc["failure"] = identity_failure_json(*rep.failure);
    return {std::move(doc), exit_math,
            "verify: identity fails for generator " + std::to_string(rep.failure->generator) + ", basis element " +
                std::to_string(rep.failure->basis_index) + ": " + rep.failure->reason};
  }
  return {std::move(doc), exit_ok, "verify: " + std::to_string(rep.checked) + " identities hold"};
}

inline Outcome task_compose(const JobManifest& m) {
  const Json in = load_input(m);
  const std::size_t n = count_field(field(in, "dim", "input"), "dim");
  check_dimension(n);
  Variables vars = Variables::indexed("x", n + 1);
  if (in.contains("variables")) vars = variables_from_json(in["variables"], "variables");
  const Json& mj = field(in, "maps", "input");
  if (!mj.is_array() || mj.empty()) schema_error("maps", "expected a non-empty array of maps");
  std::vector<BirationalMap> maps;
  for (std::size_t k = 0; k < mj.size(); ++k) maps.push_back(map_from_json(mj[k], "maps[" + std::to_string(k) + "]", vars));
  BirationalMap acc = maps[0];
  for (std::size_t k = 1; k < maps.size(); ++k) acc = compose(acc, maps[k]);
  Json doc = document("compose", "ok");
  doc["map"] = map_to_json(acc, false);
  doc["degree"] = acc.degree();
  doc["identity_up_to_scalar"] = is_identity_up_to_scalar(acc);
  return {std::move(doc), exit_ok, "compose: " + acc.to_string()};
}

inline std::vector<AffinePoint> affine_samples(SampleRng& rng, std::size_t count, std::size_t n) {
  std::vector<AffinePoint> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(rng.affine_point(n));
  return out;
}

inline Json injectivity_json(const InjectivityReport& rep, std::span<const AffinePoint> samples) {
  Json j;
  j["samples"] = samples.size();
  Json deg = Json::array();
  for (auto s : rep.degenerate_samples) deg.push_back(point_to_json(samples[s]));
  j["degenerate_samples"] = std::move(deg);
  Json col = Json::array();
  for (auto [a, b] : rep.collisions) col.push_back(Json::array({point_to_json(samples[a]), point_to_json(samples[b])}));
  j["collisions"] = std::move(col);
  j["exact_check_applicable"] = rep.exact_check_applicable;
  if (rep.exact_check_applicable) {
    j["linear_rank"] = rep.linear_rank;
    j["affine_rank"] = rep.affine_rank;
    j["exact_injective"] = rep.exact_injective;
  }
  j["ok"] = rep.ok();
  return j;
}

inline Json levi_json(const LeviFormReport& rep) {
  Json j;
  j["point"] = point_to_json(rep.point);
  j["gradient"] = point_to_json(rep.gradient);
  j["hessian"] = matrix_to_json(rep.hessian);
  j["hessian_hermitian"] = rep.hessian_hermitian;
  Json t = Json::array();
  for (const auto& v : rep.tangent_basis) t.push_back(point_to_json(v));
  j["tangent_basis"] = std::move(t);
  j["restricted"] = matrix_to_json(rep.restricted);
  j["restricted_rank"] = rep.restricted_rank;
  j["nondegenerate"] = rep.nondegenerate;
  return j;
}

inline std::vector<AffinePoint> union_points(std::vector<AffinePoint> a, const std::vector<AffinePoint>& b) {
  for (const auto& p : b) {
    if (std::find(a.begin(), a.end(), p) == a.end()) a.push_back(p);
  }
  return a;
}

inline Outcome task_segre(const JobManifest& m) {
  const Json in = load_input(m);
  const RealDefiningPolynomial r = domain_from_json(in);
  check_dimension(r.n());
  if (m.samples > max_samples) throw InputError("samples exceeds the limit " + std::to_string(max_samples));
  const auto pts = points_from_json(in, "points", r.n());
  Json vj = Json::array();
  for (const auto& w : pts) {
    const SegreVariety q = segre_variety(r, w);
    vj.push_back({{"w", point_to_json(w)}, {"poly", q.poly.to_string()}, {"degenerate", q.degenerate}});
  }
  SampleRng rng(m.seed);
  const auto samples = union_points(pts, affine_samples(rng, m.samples, r.n()));
  const auto inj = segre_injectivity_evidence(r, samples);
  Json doc = document("segre-variety", inj.ok() ? "ok" : "failure");
  doc["n"] = r.n();
  doc["r"] = r.poly().to_string();
  doc["varieties"] = std::move(vj);
  doc["injectivity"] = injectivity_json(inj, samples);
  return {std::move(doc), inj.ok() ? exit_ok : exit_math,
          std::string("segre-variety: injectivity evidence ") + (inj.ok() ? "holds" : "violated")};
}

inline Outcome task_levi(const JobManifest& m) {
  const Json in = load_input(m);
  const RealDefiningPolynomial r = domain_from_json(in);
  check_dimension(r.n());
  const auto pts = points_from_json(in, "boundary_points", r.n());
  if (pts.empty()) throw InputError("levi task needs a non-empty \"boundary_points\" array");
  Json lj = Json::array();
  bool any_nondegenerate = false, hermitian = true;
  for (const auto& p : pts) {
    const LeviFormReport rep = levi_form(r, p);
    any_nondegenerate = any_nondegenerate || rep.nondegenerate;
    hermitian = hermitian && rep.hessian_hermitian;
    lj.push_back(levi_json(rep));
  }
  Json doc = document("levi", hermitian ? "ok" : "failure");
  doc["n"] = r.n();
  doc["r"] = r.poly().to_string();
  doc["levi"] = std::move(lj);
  doc["nondegenerate_point_found"] = any_nondegenerate;
  return {std::move(doc), hermitian ? exit_ok : exit_math,
          std::string("levi: ") + (any_nondegenerate ? "non-degenerate point found" : "no non-degenerate point among inputs")};
}

inline Outcome task_domain_report(const JobManifest& m) {
  const Json in = load_input(m);
  const RealDefiningPolynomial r = domain_from_json(in);
  const std::size_t n = r.n();
  check_dimension(n);
  if (m.samples > max_samples) throw InputError("samples exceeds the limit " + std::to_string(max_samples));
  const auto pts = points_from_json(in, "points", n);
  const auto bpts = points_from_json(in, "boundary_points", n);
  SampleRng rng(m.seed);
  bool consistent = true;

  Json doc = document("domain-report", "ok");
  doc["n"] = n;
  doc["r"] = r.poly().to_string();
  doc["hermitian_symmetric"] = true;
  const Complexification cx = complexify(r);
  doc["complexification"] = {{"poly", cx.poly.to_string()}, {"degenerate", cx.degenerate}};

  Json cls = Json::array();
  for (const auto& p : union_points(pts, bpts)) {
    const int s = classify_point(r, p);
    cls.push_back({{"point", point_to_json(p)},
                   {"value", rational_text(evaluate_real(r, p))},
                   {"region", s < 0 ? "inside" : (s == 0 ? "boundary" : "outside")}});
  }
  doc["classification"] = std::move(cls);

  std::size_t agree = 0, both_true = 0;
  for (std::size_t k = 0; k < m.samples; ++k) {
    const AffinePoint z0 = rng.affine_point(n), w0 = rng.affine_point(n);
    auto [a, b] = segre_symmetry_check(r, z0, w0);
    agree += a == b ? 1 : 0;
    both_true += a && b ? 1 : 0;
  }
  consistent = consistent && agree == m.samples;
  doc["segre_symmetry"] = {{"pairs", m.samples}, {"agree", agree}, {"incident", both_true}};

  const auto inj_samples = union_points(pts, affine_samples(rng, m.samples, n));
  const auto inj = segre_injectivity_evidence(r, inj_samples);
  doc["condition_w"] = {{"injectivity", injectivity_json(inj, inj_samples)},
                        {"irreducibility", "not checked; user-asserted"},
                        {"exceptional_set", "not computed; degenerate samples listed"}};

  Json bj = Json::array();
  bool any_nondegenerate = false;
  for (const auto& p : bpts) {
    Json e;
    e["point"] = point_to_json(p);
    e["reflexive"] = segre_variety(r, p).poly.evaluate(p).is_zero();
    consistent = consistent && e["reflexive"].get<bool>();
    const bool smooth = boundary_smooth_at(r, p);
    e["smooth"] = smooth;
    if (smooth) {
      const auto lf = levi_form(r, p);
      consistent = consistent && lf.hessian_hermitian;
      any_nondegenerate = any_nondegenerate || lf.nondegenerate;
      e["levi"] = levi_json(lf);
    }
    bj.push_back(std::move(e));
  }
  doc["boundary"] = std::move(bj);
  doc["levi_nondegenerate_point_found"] = any_nondegenerate;
  doc["status"] = consistent ? "ok" : "failure";
  return {std::move(doc), consistent ? exit_ok : exit_math,
          std::string("domain-report: ") + (consistent ? "consistent" : "consistency check failed")};
}

inline Outcome task_decompose(const JobManifest& m) {
  const Json in = load_input(m);
  const Variables xv = variables_from_json(field(in, "x_variables", "input"), "x_variables");
  const Variables yv = variables_from_json(field(in, "y_variables", "input"), "y_variables");
  check_dimension(yv.size());
  const Variables all = Variables::concat(xv, yv);
  Json doc = document("decompose", "ok");
  auto terms_json = [&](const std::vector<SeparatedTerm>& terms) {
    Json a = Json::array();
    for (const auto& t : terms) a.push_back({{"phi", t.phi.to_string()}, {"psi", t.psi.to_string()}});
    return a;
  };

  if (in.contains("form")) {
    const Form f = form_at(in["form"], all, "form");
    const BihomogeneousForm bf(xv, yv, f);
    const auto terms = bihomogeneous_decompose(bf);
    doc["bidegree"] = {bf.bidegree().first, bf.bidegree().second};
    doc["terms"] = terms_json(terms);
    doc["reconstructs"] = recombine(terms, xv, yv) == f;
    return {std::move(doc), exit_ok, "decompose: " + std::to_string(terms.size()) + " separated terms"};
  }

  const RationalFamily fam(xv, yv, forms_from_json(field(in, "family", "input"), all, "family"));
  const Form h = form_at(field(in, "h", "input"), yv, "h");
  const FamilyDecomposition d = family_decompose(fam, h);
  doc["bidegree"] = {fam.bidegree().first, fam.bidegree().second};
  doc["terms"] = terms_json(d.terms);
  doc["space"] = {{"degree", d.space.degree()}, {"basis", forms_to_json(d.space.basis())}};
  if (in.contains("specialize")) {
    const Json& sj = in["specialize"];
    if (!sj.is_array()) schema_error("specialize", "expected an array of parameter points");
    Json out = Json::array();
    for (std::size_t k = 0; k < sj.size(); ++k) {
      const auto x0 = point_from_json(sj[k], "specialize[" + std::to_string(k) + "]");
      const BirationalMap g = specialize_family(fam, x0);
      Json e;
      e["parameter"] = point_to_json(x0);
      e["map"] = map_to_json(g, false);
      try {
        const Representation rep = solve_representation(d.space, g);
        e["matrix"] = matrix_to_json(rep.matrix);
        e["cofactor"] = rep.cofactor.to_string();
      } catch (const MathError& err) {
        e["representation_error"] = error_json(err);
      }
      out.push_back(std::move(e));
    }
    doc["specializations"] = std::move(out);
  }
  return {std::move(doc), exit_ok, "decompose: psi-space of dimension " + std::to_string(d.space.dimension())};
}

inline Outcome task_degree_bound(const JobManifest& m) {
  std::optional<std::size_t> n = m.dim;
  std::optional<unsigned> d = m.degree;
  if (!m.input.empty()) {
    const Json in = load_input(m);
    if (in.contains("components")) {
      const BirationalMap f = map_from_json(in, "input");
      n = n.value_or(f.dimension());
      d = d.value_or(f.degree());
    } else {
      if (!n && in.contains("n")) n = count_field(in["n"], "n");
      if (!d && in.contains("d")) d = static_cast<unsigned>(count_field(in["d"], "d"));
    }
  }
  if (!n || !d) throw InputError("degree-bound needs --dim and --degree (or an input file providing them)");
  if (*n > 1000 || *d > 1000000) throw InputError("degree-bound arguments too large");
  const mpz_class bound = segre_graph_degree_bound(static_cast<unsigned>(*n), *d);
  Json doc = document("degree-bound", "ok");
  doc["n"] = *n;
  doc["d"] = *d;
  doc["bound"] = bound.get_str();
  return {std::move(doc), exit_ok, bound.get_str()};
}

}  // namespace detail

/// Runs one job. The JSON document goes to m.out when set (with a one-line
/// summary on `out`), otherwise to `out`. Diagnostics for exit 1 go to `err`.
inline int run(const JobManifest& m, std::ostream& out, std::ostream& err) {
  detail::Outcome res;
  try {
    if (m.task == "linearize") {
      res = detail::task_linearize(m);
    } else if (m.task == "verify") {
      res = detail::task_verify(m);
    } else if (m.task == "compose") {
      res = detail::task_compose(m);
    } else if (m.task == "segre-variety") {
      res = detail::task_segre(m);
    } else if (m.task == "levi") {
      res = detail::task_levi(m);
    } else if (m.task == "decompose") {
      res = detail::task_decompose(m);
    } else if (m.task == "degree-bound") {
      res = detail::task_degree_bound(m);
    } else if (m.task == "domain-report") {
      res = detail::task_domain_report(m);
    } else {
      throw InputError("unknown task '" + m.task + "'");
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    res.doc = detail::document(m.task, "input-error");
    res.doc["error"] = detail::error_json(e);
    res.code = exit_input;
  } catch (const MathError& e) {
    res.doc = detail::document(m.task, "failure");
    res.doc["error"] = detail::error_json(e);
    res.code = exit_math;
    res.summary = m.task + ": " + detail::error_kind(e) + ": " + e.what();
  }

  const std::string text = res.doc.dump(2) + "\n";
  if (!m.out.empty()) {
    std::ofstream f(m.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << m.out << "\n";
      return exit_input;
    }
    f << text;
    if (!res.summary.empty()) out << res.summary << "\n";
  } else if (m.task == "degree-bound" && res.code == exit_ok) {
    out << res.summary << "\n";
  } else if (res.code != exit_input) {
    out << text;
  }
  return res.code;
}

}  // namespace cremona::cli
