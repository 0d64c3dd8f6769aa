#include <gtest/gtest.h>

#include <thread>

#include "cremona/birational.hpp"
#include "cremona/gcd.hpp"
#include "cremona/sampling.hpp"
#include "cremona/text.hpp"

using namespace cremona;

namespace {

const Variables xyz{"x", "y", "z"};
const Variables y01{"y0", "y1"};

BirationalMap map3(std::initializer_list<const char*> comps) {
  std::vector<Form> c;
  for (const char* s : comps) c.push_back(parse_form(s, xyz));
  return BirationalMap(std::move(c));
}

BirationalMap sigma() { return map3({"y*z", "x*z", "x*y"}); }

BirationalMap mobius(const Matrix& a) {
  std::vector<Form> c;
  for (std::size_t i = 0; i < 2; ++i) {
    c.push_back(Form::monomial(y01, Monomial({1, 0}), a(i, 0)) + Form::monomial(y01, Monomial({0, 1}), a(i, 1)));
  }
  return BirationalMap(std::move(c));
}

// Product computed by hand-written index loops, independent of Matrix::operator*.
Matrix product2(const Matrix& a, const Matrix& b) {
  Matrix c(2, 2);
  c(0, 0) = a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0);
  c(0, 1) = a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1);
  c(1, 0) = a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0);
  c(1, 1) = a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1);
  return c;
}

Matrix inverse2(const Matrix& a) {
  const Scalar det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  const Scalar inv = det.inverse();
  Matrix r(2, 2);
  r(0, 0) = a(1, 1) * inv;
  r(0, 1) = -a(0, 1) * inv;
  r(1, 0) = -a(1, 0) * inv;
  r(1, 1) = a(0, 0) * inv;
  return r;
}

ProjectivePoint pt(std::initializer_list<long> v) {
  std::vector<Scalar> c;
  for (long x : v) c.emplace_back(x);
  return ProjectivePoint(std::move(c));
}

BirationalMap random_map(SampleRng& rng, unsigned degree) {
  while (true) {
    std::vector<Form> c;
    for (int k = 0; k < 3; ++k) c.push_back(rng.homogeneous_form(xyz, degree, 3, true));
    try {
      return BirationalMap(std::move(c));
    } catch (const InputError&) {
    }
  }
}

}  // namespace

TEST(NewMap, ReducesCommonFactor) {
  BirationalMap f = map3({"x*z", "y*z", "z^2"});
  EXPECT_EQ(f.degree(), 1U);
  EXPECT_EQ(f, BirationalMap::identity(xyz));
}

TEST(NewMap, CremonaIsPrimitive) {
  BirationalMap s = sigma();
  EXPECT_EQ(s.degree(), 2U);
  EXPECT_EQ(s.components()[0], parse_form("y*z", xyz));
}

TEST(NewMap, Errors) {
  EXPECT_THROW(BirationalMap({parse_form("x", xyz), parse_form("y", xyz)}), InputError);
  EXPECT_THROW(map3({"x", "y^2", "z"}), InputError);
  EXPECT_THROW(map3({"0", "0", "0"}), InputError);
  EXPECT_THROW(map3({"x+y^2", "y", "z"}), InputError);
}

TEST(NewMap, PrimitiveAndIdempotent) {
  SampleRng rng(61);
  for (int t = 0; t < 20; ++t) {
    BirationalMap f = random_map(rng, 2);
    EXPECT_TRUE(gcd_many(f.components()).is_constant());
    EXPECT_EQ(BirationalMap(f.components()), f);
  }
}

TEST(Compose, CremonaInvolution) {
  BirationalMap s = sigma();
  BirationalMap ss = compose(s, s);
  EXPECT_TRUE(is_identity_up_to_scalar(ss));
  EXPECT_EQ(ss, BirationalMap::identity(xyz));
}

TEST(Compose, IdentityIsNeutral) {
  BirationalMap s = sigma();
  EXPECT_EQ(compose(BirationalMap::identity(xyz), s), s);
  EXPECT_EQ(compose(s, BirationalMap::identity(xyz)), s);
}

TEST(Compose, MobiusMatchesMatrixProduct) {
  SampleRng rng(17);
  for (int t = 0; t < 20; ++t) {
    Matrix a = rng.invertible_matrix(2), b = rng.invertible_matrix(2);
    BirationalMap ab = compose(mobius(a), mobius(b));
    EXPECT_EQ(ab.normalized_components(), mobius(product2(a, b)).normalized_components());
  }
}

TEST(Compose, DegenerateIsAnError) {
  // The Cremona map kills the image of a coordinate line.
  BirationalMap f = map3({"x", "0*y", "0*z"});
  BirationalMap g = map3({"0*x", "y", "z"});
  EXPECT_THROW(compose(f, g), DegenerateComposition);
}

TEST(Compose, AssociativeUpToScalar) {
  SampleRng rng(23);
  for (int t = 0; t < 10; ++t) {
    BirationalMap f = random_map(rng, 1), g = random_map(rng, 2), h = random_map(rng, 1);
    EXPECT_EQ(compose(compose(f, g), h).normalized_components(), compose(f, compose(g, h)).normalized_components());
  }
}

TEST(Compose, ApplyCommutes) {
  SampleRng rng(29);
  int checked = 0;
  for (int t = 0; t < 20; ++t) {
    BirationalMap f = random_map(rng, 2), g = random_map(rng, 2);
    BirationalMap fg = compose(f, g);
    ProjectivePoint p = rng.projective_point(3);
    try {
      ProjectivePoint rhs = apply(f, apply(g, p));
      EXPECT_EQ(apply(fg, p), rhs);
      ++checked;
    } catch (const IndeterminatePoint&) {
    }
  }
  EXPECT_GT(checked, 10);
}

TEST(IdentityCheck, Examples) {
  EXPECT_TRUE(is_identity_up_to_scalar(BirationalMap::identity(xyz)));
  EXPECT_TRUE(is_identity_up_to_scalar(map3({"2*x", "2*y", "2*z"})));
  EXPECT_FALSE(is_identity_up_to_scalar(sigma()));
  EXPECT_FALSE(is_identity_up_to_scalar(map3({"y", "x", "z"})));
}

TEST(VerifyInverse, Examples) {
  BirationalMap s = sigma();
  EXPECT_FALSE(s.has_certified_inverse());
  EXPECT_TRUE(verify_inverse(s, s));
  EXPECT_TRUE(s.has_certified_inverse());
  EXPECT_EQ(*s.inverse(), sigma());

  EXPECT_FALSE(verify_inverse(BirationalMap::identity(xyz), sigma()));

  SampleRng rng(31);
  Matrix a = rng.invertible_matrix(2);
  BirationalMap f = mobius(a), g = mobius(inverse2(a));
  EXPECT_TRUE(verify_inverse(f, g));
  EXPECT_EQ(compose(f, g).degree(), 1U);
  EXPECT_EQ(f.inverse()->normalized_components(), g.normalized_components());
  EXPECT_TRUE(g.has_certified_inverse());
}

TEST(VerifyInverse, DegenerateCompositionIsFalse) {
  BirationalMap f = map3({"x", "0*y", "0*z"});
  BirationalMap g = map3({"0*x", "y", "z"});
  EXPECT_FALSE(verify_inverse(f, g));
}

TEST(VerifyInverse, ConcurrentReadersSeeOneValue) {
  BirationalMap s = sigma();
  std::vector<std::thread> threads;
  std::vector<int> seen(8, 0);
  for (int k = 0; k < 8; ++k) {
    threads.emplace_back([&, k] {
      verify_inverse(s, s);
      seen[static_cast<std::size_t>(k)] = s.inverse().has_value() && *s.inverse() == sigma();
    });
  }
  for (auto& t : threads) t.join();
  for (int v : seen) EXPECT_EQ(v, 1);
}

TEST(Apply, Examples) {
  EXPECT_EQ(apply(sigma(), pt({1, 1, 1})), pt({1, 1, 1}));
  EXPECT_THROW(apply(sigma(), pt({1, 0, 0})), IndeterminatePoint);
  SampleRng rng(37);
  for (int t = 0; t < 5; ++t) {
    ProjectivePoint p = rng.projective_point(3, true);
    EXPECT_EQ(apply(BirationalMap::identity(xyz), p), p);
  }
  EXPECT_EQ(apply(sigma(), pt({2, 3, 5})), pt({15, 10, 6}));
}

TEST(ProjectivePointTest, Normalization) {
  EXPECT_EQ(pt({2, 4}), pt({1, 2}));
  EXPECT_EQ(pt({0, 3}), pt({0, 1}));
  EXPECT_THROW(pt({0, 0}), InputError);
}

TEST(Segre, EmbedExamples) {
  EXPECT_EQ(segre_embed(pt({1, 0}), pt({1, 0})).point(), pt({1, 0, 0, 0}));
  EXPECT_EQ(segre_embed(pt({1, 1}), pt({1, -1})).point(), pt({1, -1, 1, -1}));
  EXPECT_EQ(segre_embed(pt({0, 1}), pt({0, 1})).point(), pt({0, 0, 0, 1}));
}

TEST(Segre, RankOneProperty) {
  SampleRng rng(41);
  for (int t = 0; t < 30; ++t) {
    SegrePoint s = segre_embed(rng.projective_point(3, true), rng.projective_point(3, true));
    EXPECT_TRUE(s.is_rank_one());
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k)
          for (std::size_t l = 0; l < 3; ++l) EXPECT_EQ(s.at(i, j) * s.at(k, l), s.at(i, l) * s.at(k, j));
  }
  SegrePoint bad(2, 2, {Scalar(1), Scalar(0), Scalar(0), Scalar(1)});
  EXPECT_FALSE(bad.is_rank_one());
}

TEST(Segre, GraphPoints) {
  EXPECT_EQ(graph_point(BirationalMap::identity(y01), pt({1, 0})).point(), pt({1, 0, 0, 0}));
  BirationalMap swap({parse_form("y1", y01), parse_form("y0", y01)});
  EXPECT_EQ(graph_point(swap, pt({1, 0})), segre_embed(pt({1, 0}), pt({0, 1})));
  EXPECT_EQ(graph_point(swap, pt({1, 0})).point(), pt({0, 1, 0, 0}));
  SegrePoint g = graph_point(sigma(), pt({1, 1, 1}));
  EXPECT_TRUE(g.is_rank_one());
  for (const auto& c : g.coordinates()) EXPECT_EQ(c, Scalar(1));
  EXPECT_THROW(graph_point(sigma(), pt({0, 1, 0})), IndeterminatePoint);
}

TEST(DegreeBound, Examples) {
  EXPECT_EQ(segre_graph_degree_bound(1, 1), 2);
  EXPECT_EQ(segre_graph_degree_bound(2, 2), 9);
  EXPECT_EQ(segre_graph_degree_bound(3, 1), 8);
  EXPECT_EQ(segre_graph_degree_bound(4, 3), 256);
  EXPECT_THROW(segre_graph_degree_bound(0, 1), InputError);
}

TEST(LinearMaps, CarryCertifiedInverse) {
  SampleRng rng(43);
  Matrix a = rng.invertible_matrix(3);
  BirationalMap f = BirationalMap::linear(xyz, a);
  ASSERT_TRUE(f.has_certified_inverse());
  EXPECT_TRUE(is_identity_up_to_scalar(compose(f, *f.inverse())));
  EXPECT_THROW(BirationalMap::linear(xyz, Matrix(3, 3)), InputError);
}
