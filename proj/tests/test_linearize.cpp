#include <gtest/gtest.h>

#include "cremona/linearize.hpp"
#include "cremona/sampling.hpp"
#include "cremona/text.hpp"
#include "oracles.hpp"

using namespace cremona;

namespace {

const Variables xyz{"x", "y", "z"};
const Variables y01{"y0", "y1"};
const Variables abcd{"a", "b", "c", "d"};

Form P(const std::string& s, const Variables& v = xyz) { return parse_form(s, v); }

std::vector<Form> forms(std::initializer_list<const char*> list, const Variables& v = xyz) {
  std::vector<Form> out;
  for (const char* s : list) out.push_back(P(s, v));
  return out;
}

BirationalMap sigma() {
  BirationalMap s(forms({"y*z", "x*z", "x*y"}));
  verify_inverse(s, s);
  return s;
}

// The cubics through the three coordinate points, in descending grlex order.
std::vector<Form> cubics() { return forms({"x^2*y", "x^2*z", "x*y^2", "x*y*z", "x*z^2", "y^2*z", "y*z^2"}); }

BirationalMap mobius(const Matrix& a) { return BirationalMap::linear(y01, a); }

Matrix mat2(long a, long b, long c, long d) {
  return Matrix::from_rows({{Scalar(a), Scalar(b)}, {Scalar(c), Scalar(d)}});
}

ProjectivePoint pt(std::initializer_list<long> v) {
  std::vector<Scalar> c;
  for (long x : v) c.emplace_back(x);
  return ProjectivePoint(std::move(c));
}

bool scalar_identity(const Matrix& m) {
  if (!m.is_square() || m(0, 0).is_zero()) return false;
  return m == m(0, 0) * Matrix::identity(m.rows());
}

// p o sigma for a monomial p = x^a y^b z^c is x^(b+c) y^(a+c) z^(a+b);
// the reduced image is that divided by xyz, done with the oracle divider.
oracle::Poly sigma_image_oracle(const Form& p) {
  oracle::Poly out;
  for (const auto& [m, c] : p.terms()) {
    const unsigned a = m[0], b = m[1], cc = m[2];
    oracle::add_into(out, {b + cc, a + cc, a + b}, c);
  }
  const oracle::Poly xyz_poly{{{1, 1, 1}, Scalar(1)}};
  return *oracle::divide(out, xyz_poly);
}

const RationalFamily& mobius_family() {
  static const RationalFamily fam = [] {
    Variables all = Variables::concat(abcd, y01);
    return RationalFamily(abcd, y01, {parse_form("a*y0 + b*y1", all), parse_form("c*y0 + d*y1", all)});
  }();
  return fam;
}

}  // namespace

TEST(Pullback, CoordinatesUnderCremona) {
  FormSpace space(xyz, 1, forms({"x", "y", "z"}));
  auto sys = reduced_pullback_system(space, sigma());
  EXPECT_EQ(sys.cofactor, P("1"));
  EXPECT_EQ(sys.images, forms({"y*z", "x*z", "x*y"}));
}

TEST(Pullback, CubicsUnderCremona) {
  FormSpace space(xyz, 3, cubics());
  auto sys = reduced_pullback_system(space, sigma());
  EXPECT_EQ(sys.cofactor, P("x*y*z"));
  EXPECT_EQ(sys.images, forms({"y*z^2", "y^2*z", "x*z^2", "x*y*z", "x*y^2", "x^2*z", "x^2*y"}));
  for (std::size_t j = 0; j < 7; ++j) EXPECT_EQ(oracle::from_form(sys.images[j]), sigma_image_oracle(cubics()[j]));
}

TEST(Pullback, IdentityFixesEveryBasis) {
  SampleRng rng(7);
  for (int t = 0; t < 5; ++t) {
    std::vector<Form> b;
    for (int k = 0; k < 3; ++k) b.push_back(rng.homogeneous_form(xyz, 2, 3, true));
    FormSpace space = FormSpace::span(xyz, 2, b);
    auto sys = reduced_pullback_system(space, BirationalMap::identity(xyz));
    EXPECT_EQ(sys.cofactor, P("1"));
    EXPECT_EQ(sys.images, space.basis());
  }
}

TEST(Pullback, DegreeAccounting) {
  BirationalMap s = sigma();
  SampleRng rng(9);
  for (unsigned m = 1; m <= 3; ++m) {
    std::vector<Form> b;
    for (int k = 0; k < 3; ++k) b.push_back(rng.homogeneous_form(xyz, m, 4, true));
    FormSpace space = FormSpace::span(xyz, m, b);
    auto sys = reduced_pullback_system(space, s);
    for (const auto& img : sys.images) EXPECT_EQ(sys.cofactor.total_degree() + img.total_degree(), m * s.degree());
  }
}

TEST(Closure, CoordinatesAreNotClosedUnderCremona) {
  auto seeds = forms({"x", "y", "z"});
  std::vector<BirationalMap> gens{sigma()};
  EXPECT_THROW(invariant_closure(seeds, gens, 64), NotClosedAtDegree);
}

TEST(Closure, CubicsAreAlreadyClosed) {
  auto seeds = cubics();
  std::vector<BirationalMap> gens{sigma()};
  FormSpace space = invariant_closure(seeds, gens, 64);
  EXPECT_EQ(space.dimension(), 7U);
  EXPECT_EQ(space.basis(), cubics());
}

TEST(Closure, MobiusSeedGrowsToCoordinates) {
  std::vector<Form> seeds{P("y0", y01)};
  std::vector<BirationalMap> gens{mobius(mat2(1, 2, 3, 4))};
  FormSpace space = invariant_closure(seeds, gens, 64);
  EXPECT_EQ(space.basis(), forms({"y0", "y1"}, y01));
}

TEST(Closure, CremonaWithPermutations) {
  auto seeds = cubics();
  std::vector<BirationalMap> gens{sigma(), BirationalMap::linear(xyz, Matrix::from_rows({{Scalar(0), Scalar(1), Scalar(0)},
                                                                                          {Scalar(0), Scalar(0), Scalar(1)},
                                                                                          {Scalar(1), Scalar(0), Scalar(0)}}))};
  FormSpace space = invariant_closure(seeds, gens, 64);
  EXPECT_EQ(space.dimension(), 7U);
}

TEST(Closure, DimensionCap) {
  std::vector<Form> seeds{P("y0", y01)};
  std::vector<BirationalMap> gens{mobius(mat2(1, 2, 3, 4))};
  EXPECT_THROW(invariant_closure(seeds, gens, 1), DimCapExceeded);
}

TEST(Closure, Idempotent) {
  SampleRng rng(12);
  for (int t = 0; t < 5; ++t) {
    std::vector<BirationalMap> gens{BirationalMap::linear(xyz, rng.invertible_matrix(3))};
    std::vector<Form> seeds{rng.homogeneous_form(xyz, 2, 2, true)};
    if (seeds[0].is_zero()) continue;
    FormSpace a = invariant_closure(seeds, gens, 64);
    FormSpace b = invariant_closure(a.basis(), gens, 64);
    EXPECT_EQ(a.dimension(), b.dimension());
    for (const auto& f : a.basis()) EXPECT_TRUE(b.contains(f));
  }
}

TEST(Solve, CremonaPermutation) {
  FormSpace space(xyz, 3, cubics());
  Representation r = solve_representation(space, sigma());
  EXPECT_EQ(r.cofactor, P("x*y*z"));
  const std::vector<std::size_t> perm{6, 5, 4, 3, 2, 1, 0};
  Matrix expect(7, 7);
  for (std::size_t j = 0; j < 7; ++j) expect(j, perm[j]) = Scalar(1);
  EXPECT_EQ(r.matrix, expect);
  EXPECT_EQ(r.matrix * r.matrix, Matrix::identity(7));
}

TEST(Solve, IdentityMap) {
  FormSpace space(xyz, 2, forms({"x^2 + y*z", "x*y", "z^2 - i*x*z"}));
  Representation r = solve_representation(space, BirationalMap::identity(xyz));
  EXPECT_EQ(r.matrix, Matrix::identity(3));
  EXPECT_EQ(r.cofactor, P("1"));
}

TEST(Solve, MobiusMatrixUpToNormalization) {
  SampleRng rng(13);
  FormSpace space(y01, 1, forms({"y0", "y1"}, y01));
  for (int t = 0; t < 10; ++t) {
    Matrix a = rng.invertible_matrix(2);
    Representation r = solve_representation(space, mobius(a));
    ASSERT_TRUE(r.cofactor.is_constant());
    EXPECT_EQ(r.cofactor.constant_value() * r.matrix, a);
    EXPECT_TRUE(r.matrix.first_nonzero()->is_one());
  }
}

TEST(Solve, NotInSpan) {
  FormSpace space(xyz, 1, forms({"x", "y"}));
  EXPECT_THROW(solve_representation(space, BirationalMap(forms({"z", "x", "y"}))), NotInSpan);
}

TEST(Certificate, CremonaCubics) {
  auto seeds = cubics();
  std::vector<BirationalMap> gens{sigma()};
  LinearizationCertificate cert = build_certificate(seeds, gens, 3, 64);
  EXPECT_EQ(cert.basis.size(), 7U);
  EXPECT_EQ(cert.generators[0].cofactor, P("x*y*z"));
  const Matrix& m = cert.generators[0].matrix;
  EXPECT_EQ(m * m, Matrix::identity(7));
  EXPECT_FALSE(m == Matrix::identity(7));
  EXPECT_TRUE(verify_certificate_identity(cert).ok());
}

TEST(Certificate, LinearMapsAreTautological) {
  SampleRng rng(15);
  std::vector<BirationalMap> gens;
  std::vector<Matrix> mats;
  for (int k = 0; k < 4; ++k) {
    mats.push_back(rng.invertible_matrix(3));
    gens.push_back(BirationalMap::linear(xyz, mats.back()));
  }
  auto seeds = forms({"x", "y", "z"});
  LinearizationCertificate cert = build_certificate(seeds, gens, 1, 64);
  ASSERT_EQ(cert.basis, seeds);
  for (std::size_t k = 0; k < mats.size(); ++k) {
    const auto& e = cert.generators[k];
    ASSERT_TRUE(e.cofactor.is_constant());
    EXPECT_EQ(e.cofactor.constant_value() * e.matrix, mats[k]);
  }
}

TEST(Certificate, CremonaAtDegreeOneFails) {
  auto seeds = forms({"x", "y", "z"});
  std::vector<BirationalMap> gens{sigma()};
  EXPECT_THROW(build_certificate(seeds, gens, 1, 64), NotClosedAtDegree);
  EXPECT_THROW(build_certificate(seeds, gens, 2, 64), InputError);
}

TEST(Certificate, CorruptedEntryIsLocalized) {
  auto seeds = cubics();
  std::vector<BirationalMap> gens{sigma()};
  LinearizationCertificate cert = build_certificate(seeds, gens, 64);
  cert.generators[0].matrix(2, 4) = Scalar(2);
  auto rep = verify_certificate_identity(cert);
  ASSERT_FALSE(rep.ok());
  EXPECT_EQ(rep.failure->generator, 0U);
  EXPECT_EQ(rep.failure->basis_index, 2U);
  EXPECT_EQ(rep.failure->reason, "coefficient mismatch");
  EXPECT_EQ(rep.failure->monomial, "x^2*y*z^3");
}

TEST(Certificate, UnitCofactorIsDegreeMismatch) {
  auto seeds = cubics();
  std::vector<BirationalMap> gens{sigma()};
  LinearizationCertificate cert = build_certificate(seeds, gens, 64);
  cert.generators[0].cofactor = P("1");
  auto rep = verify_certificate_identity(cert);
  ASSERT_FALSE(rep.ok());
  EXPECT_EQ(rep.failure->reason.rfind("degree mismatch", 0), 0U);
}

TEST(Certificate, InverseCoherence) {
  SampleRng rng(16);
  for (int t = 0; t < 5; ++t) {
    BirationalMap g = BirationalMap::linear(xyz, rng.invertible_matrix(3));
    std::vector<Form> seeds{rng.homogeneous_form(xyz, 2, 2, true)};
    if (seeds[0].is_zero()) continue;
    std::vector<BirationalMap> gens{g};
    LinearizationCertificate cert = build_certificate(seeds, gens, 64);
    Matrix mg = cert.generators[0].matrix;
    Matrix mh = solve_representation(cert.space(), *g.inverse()).matrix;
    EXPECT_TRUE(scalar_identity(mg * mh));
  }
  FormSpace space(xyz, 3, cubics());
  Matrix ms = solve_representation(space, sigma()).matrix;
  EXPECT_TRUE(scalar_identity(ms * ms));
}

TEST(GroupLaw, CremonaSquare) {
  auto seeds = cubics();
  std::vector<BirationalMap> gens{sigma()};
  LinearizationCertificate cert = build_certificate(seeds, gens, 64);
  auto law = check_group_law(cert, {{{0, false}, {0, false}}, {{0, false}, {0, true}}});
  ASSERT_EQ(law.size(), 2U);
  for (const auto& e : law) {
    ASSERT_TRUE(e.ok()) << e.error;
    EXPECT_EQ(*e.lambda, Scalar(1));
  }
}

TEST(GroupLaw, IdentityLetter) {
  SampleRng rng(18);
  std::vector<BirationalMap> gens{BirationalMap::identity(xyz), BirationalMap::linear(xyz, rng.invertible_matrix(3))};
  auto seeds = forms({"x", "y", "z"});
  LinearizationCertificate cert = build_certificate(seeds, gens, 64);
  auto law = check_group_law(cert, {{{0, false}, {1, false}}, {{1, false}, {0, false}}});
  for (const auto& e : law) {
    ASSERT_TRUE(e.ok()) << e.error;
    EXPECT_EQ(*e.lambda, Scalar(1));
  }
}

TEST(GroupLaw, MobiusScalarMatchesOracle) {
  const Matrix a = mat2(2, 1, 1, 1), b = mat2(3, -1, 5, 2);
  std::vector<BirationalMap> gens{mobius(a), mobius(b)};
  std::vector<Form> seeds{P("y0", y01)};
  LinearizationCertificate cert = build_certificate(seeds, gens, 64);
  auto law = check_group_law(cert, {{{0, false}, {1, false}}});
  ASSERT_TRUE(law[0].ok()) << law[0].error;
  // M_A = A/2, M_B = B/3, M_AB = AB/(AB)_00 with AB = [[11, 0], [8, 1]].
  EXPECT_EQ(*law[0].lambda, Scalar(Rational(11, 6)));
}

TEST(Equivariance, CremonaAtOnesAndSkips) {
  auto seeds = cubics();
  std::vector<BirationalMap> gens{sigma()};
  LinearizationCertificate cert = build_certificate(seeds, gens, 64);
  std::vector<ProjectivePoint> samples{pt({1, 1, 1}), pt({0, 1, 1}), pt({2, -3, 5})};
  auto rep = verify_equivariance(cert, samples);
  ASSERT_EQ(rep.entries.size(), 3U);
  EXPECT_EQ(rep.entries[0].status, EquivarianceEntry::Status::pass);
  EXPECT_EQ(rep.entries[1].status, EquivarianceEntry::Status::skipped);
  EXPECT_EQ(rep.entries[1].reason, "cofactor vanishes");
  EXPECT_EQ(rep.entries[2].status, EquivarianceEntry::Status::pass);
}

TEST(Equivariance, MobiusRandomPoints) {
  SampleRng rng(19);
  std::vector<BirationalMap> gens{mobius(rng.invertible_matrix(2)), mobius(rng.invertible_matrix(2))};
  std::vector<Form> seeds{P("y0*y1", y01)};
  LinearizationCertificate cert = build_certificate(seeds, gens, 64);
  EXPECT_EQ(cert.basis.size(), 3U);
  auto samples = rng.projective_points(10, 2);
  auto rep = verify_equivariance(cert, samples);
  EXPECT_EQ(rep.count(EquivarianceEntry::Status::pass), 20U);
}

TEST(Equivariance, CorruptionIsCaught) {
  auto seeds = cubics();
  std::vector<BirationalMap> gens{sigma()};
  LinearizationCertificate cert = build_certificate(seeds, gens, 64);
  cert.generators[0].matrix(0, 0) = Scalar(3);
  std::vector<ProjectivePoint> samples{pt({2, -3, 5})};
  EXPECT_FALSE(verify_equivariance(cert, samples).ok());
}

TEST(BasePoints, CubicsVanishAtCoordinatePoints) {
  FormSpace space(xyz, 3, cubics());
  std::vector<ProjectivePoint> samples{pt({1, 0, 0}), pt({1, 2, 3})};
  auto rep = base_point_evidence(space, samples);
  EXPECT_TRUE(rep.gcd_trivial);
  ASSERT_EQ(rep.vanishing_samples.size(), 1U);
  EXPECT_EQ(rep.vanishing_samples[0], 0U);
  EXPECT_FALSE(rep.ok());
}

TEST(BasePoints, CoordinatesNeverVanish) {
  FormSpace space(xyz, 1, forms({"x", "y", "z"}));
  SampleRng rng(20);
  auto rep = base_point_evidence(space, rng.projective_points(30, 3, true));
  EXPECT_TRUE(rep.ok());
}

TEST(BasePoints, VeroneseSeparates) {
  FormSpace space(y01, 2, forms({"y0^2", "y0*y1", "y1^2"}, y01));
  SampleRng rng(21);
  auto rep = base_point_evidence(space, rng.projective_points(30, 2));
  EXPECT_TRUE(rep.collisions.empty());
  EXPECT_TRUE(rep.ok());
  FormSpace squares(y01, 2, forms({"y0^2", "y1^2"}, y01));
  std::vector<ProjectivePoint> pm{pt({1, 1}), pt({1, -1})};
  EXPECT_EQ(base_point_evidence(squares, pm).collisions.size(), 1U);
}

TEST(Family, MobiusLinearSeed) {
  auto d = family_decompose(mobius_family(), P("y0", y01));
  EXPECT_EQ(d.space.basis(), forms({"y0", "y1"}, y01));
  ASSERT_EQ(d.terms.size(), 2U);
}

TEST(Family, MobiusQuadraticSeed) {
  auto d = family_decompose(mobius_family(), P("y0*y1", y01));
  EXPECT_EQ(d.space.basis(), forms({"y0^2", "y0*y1", "y1^2"}, y01));
}

TEST(Family, ConstantFamily) {
  Variables t{"t"};
  Variables all = Variables::concat(t, y01);
  RationalFamily fam(t, y01, {parse_form("y0", all), parse_form("y1", all)});
  Form h = P("2*y0^2 - y0*y1", y01);
  auto d = family_decompose(fam, h);
  EXPECT_EQ(d.space.dimension(), 1U);
  EXPECT_TRUE(d.space.contains(h));
}

TEST(Family, Specializations) {
  EXPECT_EQ(specialize_family(mobius_family(), std::vector<Scalar>{Scalar(1), Scalar(0), Scalar(0), Scalar(1)}),
            BirationalMap::identity(y01));
  EXPECT_EQ(specialize_family(mobius_family(), std::vector<Scalar>{Scalar(0), Scalar(1), Scalar(1), Scalar(0)}),
            BirationalMap(forms({"y1", "y0"}, y01)));
  EXPECT_THROW(specialize_family(mobius_family(), std::vector<Scalar>(4)), MathError);

  Variables x01{"x0", "x1"};
  Variables all = Variables::concat(x01, y01);
  RationalFamily diag(x01, y01, {parse_form("x0*y0", all), parse_form("x1*y1", all)});
  BirationalMap f = specialize_family(diag, std::vector<Scalar>{Scalar(1), Scalar(0)});
  EXPECT_EQ(f.components(), forms({"y0", "0"}, y01));
  EXPECT_FALSE(verify_inverse(f, f));
  EXPECT_FALSE(verify_inverse(f, BirationalMap::identity(y01)));
}

TEST(Family, SpecializationsActOnTheSpace) {
  auto d = family_decompose(mobius_family(), P("y0^2*y1", y01));
  SampleRng rng(22);
  for (int t = 0; t < 10; ++t) {
    auto x0 = rng.affine_point(4);
    if ((x0[0] * x0[3] - x0[1] * x0[2]).is_zero()) continue;
    BirationalMap g = specialize_family(mobius_family(), x0);
    EXPECT_NO_THROW(solve_representation(d.space, g));
  }
}
