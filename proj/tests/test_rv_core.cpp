#include "uqkf/ensemble.hpp"
#include "uqkf/metrics.hpp"
#include "uqkf/multi_index.hpp"
#include "uqkf/orthopoly.hpp"
#include "uqkf/pce.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace uqkf;

namespace {

// All exponent tuples with entries <= degree, filtered by total degree.
std::set<MultiIndex> brute_force_total_degree(int n_vars, int degree) {
  std::set<MultiIndex> out;
  MultiIndex a(static_cast<std::size_t>(n_vars), 0);
  for (;;) {
    if (total_degree(a) <= degree) out.insert(a);
    int k = 0;
    while (k < n_vars && ++a[static_cast<std::size_t>(k)] > degree) a[static_cast<std::size_t>(k++)] = 0;
    if (k == n_vars) return out;
  }
}

double double_factorial(int n) { return n <= 1 ? 1.0 : n * double_factorial(n - 2); }

}  // namespace

TEST(MultiIndex, TotalDegreeTwoVarsGradedOrder) {
  const auto set = total_degree_index_set(2, 2);
  const std::vector<MultiIndex> expected{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  EXPECT_EQ(set.indices(), expected);
}

TEST(MultiIndex, ConstantOnly) {
  const auto set = total_degree_index_set(1, 0);
  ASSERT_EQ(set.size(), 1);
  EXPECT_EQ(set[0], MultiIndex{0});
}

TEST(MultiIndex, MatchesBruteForceEnumeration) {
  for (int n = 1; n <= 4; ++n)
    for (int d = 0; d <= 4; ++d) {
      const auto set = total_degree_index_set(n, d);
      const auto oracle = brute_force_total_degree(n, d);
      ASSERT_EQ(set.size(), static_cast<Index>(oracle.size())) << n << " " << d;
      for (const auto& a : set.indices()) EXPECT_TRUE(oracle.count(a));
    }
  EXPECT_EQ(total_degree_index_set(3, 2).size(), 10);
}

TEST(MultiIndex, NestedInDegree) {
  for (int d = 0; d < 5; ++d) EXPECT_TRUE(total_degree_index_set(3, d + 1).contains(total_degree_index_set(3, d)));
}

TEST(MultiIndex, ZeroFirstAndFindAndTail) {
  const auto set = axis_tail_index_set(4, 1, 0, 50);
  EXPECT_EQ(set.size(), 54);
  EXPECT_EQ(set[0], (MultiIndex{0, 0, 0, 0}));
  EXPECT_GE(set.find({50, 0, 0, 0}), 0);
  EXPECT_EQ(set.find({1, 1, 0, 0}), -1);
  EXPECT_THROW(MultiIndexSet(2, {{1, 0}}), InvalidArgument);
}

TEST(MultiIndex, EmbedAndMerge) {
  const auto inner = total_degree_index_set(2, 2);
  const auto big = embed(inner, 4, 1);
  EXPECT_EQ(big.n_vars(), 4);
  EXPECT_GE(big.find({0, 2, 0, 0}), 0);
  const auto merged = merge(big, total_degree_index_set(4, 1));
  EXPECT_EQ(merged.size(), 6 + 2);
}

TEST(Orthopoly, OrthonormalUnderGaussQuadrature) {
  for (auto family : {GermFamily::Hermite, GermFamily::Legendre}) {
    const auto rule = gauss_rule(family, 20);
    Matrix gram = Matrix::Zero(13, 13);
    for (Index q = 0; q < rule.nodes.size(); ++q) {
      const Vector p = orthonormal_values(family, 12, rule.nodes(q));
      gram += rule.weights(q) * p * p.transpose();
    }
    EXPECT_LT((gram - Matrix::Identity(13, 13)).cwiseAbs().maxCoeff(), 1e-12) << to_string(family);
  }
}

TEST(Orthopoly, GaussRulesReproduceGermMoments) {
  // E[x^2k] = (2k-1)!! for N(0,1); 1/(2k+1) for Uni(-1,1).
  const auto gh = gauss_rule(GermFamily::Hermite, 10);
  const auto gl = gauss_rule(GermFamily::Legendre, 10);
  for (int k = 0; k <= 9; ++k) {
    double mh = 0.0, ml = 0.0;
    for (Index q = 0; q < 10; ++q) {
      mh += gh.weights(q) * std::pow(gh.nodes(q), 2 * k);
      ml += gl.weights(q) * std::pow(gl.nodes(q), 2 * k);
    }
    EXPECT_NEAR(mh / double_factorial(2 * k - 1), 1.0, 1e-12) << k;
    EXPECT_NEAR(ml, 1.0 / (2 * k + 1), 1e-14) << k;
  }
  EXPECT_NEAR(gh.weights.sum(), 1.0, 1e-15);
  EXPECT_NEAR(gl.weights.sum(), 1.0, 1e-15);
}

TEST(Orthopoly, HermiteValuesMatchExplicitForms) {
  const double x = 0.7;
  const Vector p = orthonormal_values(GermFamily::Hermite, 3, x);
  EXPECT_NEAR(p(2), (x * x - 1) / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(p(3), (x * x * x - 3 * x) / std::sqrt(6.0), 1e-15);
  const Vector l = orthonormal_values(GermFamily::Legendre, 2, x);
  EXPECT_NEAR(l(1), std::sqrt(3.0) * x, 1e-15);
  EXPECT_NEAR(l(2), std::sqrt(5.0) * (1.5 * x * x - 0.5), 1e-15);
}

TEST(Pce, FromPriorCoefficients) {
  const ProductPrior prior({Gaussian{0.0, 1.0}, Uniform{90.0, 110.0}, Gaussian{0.5, 0.25}});
  const auto pce = pce_from_prior(prior);
  EXPECT_DOUBLE_EQ(pce.coeffs()(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(pce.coeffs()(0, pce.index_set().find({1, 0, 0})), 1.0);
  EXPECT_DOUBLE_EQ(pce.coeffs()(1, 0), 100.0);
  EXPECT_NEAR(pce.coeffs()(1, pce.index_set().find({0, 1, 0})), 10.0 / std::sqrt(3.0), 1e-14);
  EXPECT_DOUBLE_EQ(pce.coeffs()(2, 0), 0.5);
  EXPECT_DOUBLE_EQ(pce.coeffs()(2, pce.index_set().find({0, 0, 1})), 0.5);
}

TEST(Pce, MomentsAreExact) {
  const ProductPrior prior({Gaussian{0.0, 1.0}, Uniform{90.0, 110.0}});
  const auto m = pce_moments(pce_from_prior(prior));
  EXPECT_NEAR(m.mean(0), 0.0, 1e-15);
  EXPECT_NEAR(m.mean(1), 100.0, 1e-13);
  Matrix expected = Matrix::Zero(2, 2);
  expected.diagonal() << 1.0, 100.0 / 3.0;
  EXPECT_LT((m.cov - expected).cwiseAbs().maxCoeff(), 1e-13);

  const PceExpansion constant({GermFamily::Hermite}, total_degree_index_set(1, 0), Matrix::Constant(1, 1, 3.0));
  EXPECT_EQ(pce_moments(constant).mean(0), 3.0);
  EXPECT_EQ(pce_moments(constant).cov(0, 0), 0.0);
}

TEST(Pce, CrossCovarianceRejectsMismatchedSets) {
  const ProductPrior prior({Gaussian{0.0, 1.0}});
  const auto a = pce_from_prior(prior);
  const auto b = embed(a, total_degree_index_set(1, 2));
  EXPECT_THROW(pce_cross_covariance(a, b), InvalidArgument);
}

TEST(Pce, L2DistancePadsNestedSets) {
  const ProductPrior prior({Gaussian{0.0, 1.0}});
  const auto a = pce_from_prior(prior);
  const auto set = total_degree_index_set(1, 3);
  Matrix c = Matrix::Zero(1, 4);
  c(0, 1) = 1.0;
  c(0, 3) = 0.5;
  EXPECT_NEAR(l2_distance(a, PceExpansion(a.germ(), set, c)), 0.5, 1e-15);
}

TEST(Sampling, GaussianMeanWithinClt) {
  const Index M = 100000;
  const auto e = sample(ProductPrior({Gaussian{0.0, 1.0}}), M, 11);
  EXPECT_LT(std::abs(e.mean()(0)), 4.0 / std::sqrt(static_cast<double>(M)));
}

TEST(Sampling, UniformPceStaysInSupport) {
  const auto pce = pce_from_prior(ProductPrior({Uniform{90.0, 110.0}}));
  const auto e = sample(pce, 100000, 5);
  EXPECT_GE(e.members().minCoeff(), 90.0);
  EXPECT_LE(e.members().maxCoeff(), 110.0);
}

TEST(Sampling, PriorAndItsPceAgreeInLaw) {
  const Index M = 100000;
  const ProductPrior prior({Gaussian{0.0, 1.0}});
  const auto a = sample(prior, M, 1);
  const auto b = sample(pce_from_prior(prior), M, 2);
  const double w1 = wasserstein1_1d(row_values(a.members(), 0), row_values(b.members(), 0));
  EXPECT_LT(w1, 5.0 / std::sqrt(static_cast<double>(M)));
}

TEST(Sampling, ReproducibleAndRejectsTinyEnsembles) {
  const ProductPrior prior({Gaussian{0.5, 0.25}, Uniform{1.0, 5.0}});
  const auto a = sample(prior, 1000, 42);
  const auto b = sample(prior, 1000, 42);
  EXPECT_TRUE(a.members() == b.members());
  EXPECT_FALSE(a.members() == sample(prior, 1000, 43).members());
  EXPECT_THROW(sample(prior, 1, 42), InvalidArgument);
}
