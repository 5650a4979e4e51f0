#include <doctest.h>

#include <random>
#include <sstream>

#include "linefig/errors.hpp"
#include "linefig/feature_matrix.hpp"
#include "linefig/pca.hpp"

using namespace linefig;

TEST_CASE("standardize gives zero mean and unit variance; constant columns map to 0") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(5.0, 3.0);
  Matrix X(50, 4);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    X(i, 0) = n(rng);
    X(i, 1) = 100.0 * n(rng);
    X(i, 2) = 7.0;
    X(i, 3) = i % 2;
  }
  ScalingRecord rec;
  const auto Z = standardize(X, &rec);
  for (Eigen::Index c = 0; c < Z.cols(); ++c) {
    const double mean = Z.col(c).mean();
    const double var = (Z.col(c).array() - mean).square().mean();
    CHECK(std::abs(mean) < 1e-9);
    if (c == 2) {
      CHECK(var == 0.0);
      CHECK(rec.scale[2] == 0.0);
      CHECK(Z.col(2).isZero(0.0));
    } else {
      CHECK(std::abs(var - 1.0) < 1e-9);
    }
  }
  CHECK(rec.mean[2] == 7.0);
  CHECK(rec.scale[3] == doctest::Approx(0.5));
}

TEST_CASE("feature matrix rows are sorted and round-trip through CSV") {
  std::vector<FeatureRow> rows;
  for (int i = 0; i < 4; ++i) {
    Signature s;
    s.num_links = 4 - i;
    s.avg_mag = 0.5 * i;
    rows.push_back({i % 2 ? "b" : "a", "f" + std::to_string(3 - i), s});
  }
  const auto fm = build_feature_matrix(rows);
  REQUIRE(fm.rows() == 4);
  CHECK(fm.key(0) == "a/f1");
  CHECK(fm.key(1) == "a/f3");
  CHECK(fm.key(2) == "b/f0");
  CHECK(fm.key(3) == "b/f2");
  CHECK(fm.raw(0, 0) == 2.0);

  std::ostringstream out;
  write_features_csv(out, fm, false);
  std::istringstream in(out.str());
  const auto table = read_features_csv(in);
  CHECK(table.culture_ids == fm.culture_ids);
  CHECK(table.figure_ids == fm.figure_ids);
  CHECK(table.values == fm.raw);

  std::ostringstream scaling;
  write_scaling_csv(scaling, fm.scaling);
  CHECK(scaling.str().rfind("feature,mean,std\ns1,", 0) == 0);

  CHECK_THROWS_AS(build_feature_matrix(std::vector<FeatureRow>{rows[0]}), ValidationError);
  std::istringstream bad("culture_id,figure_id,s1\n");
  CHECK_THROWS_AS(read_features_csv(bad), ValidationError);
}

TEST_CASE("pca recovers the dominant axis with a fixed sign") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix X(400, 3);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const double t = 10.0 * n(rng);
    X(i, 0) = t + 0.1 * n(rng);
    X(i, 1) = -t + 0.1 * n(rng);
    X(i, 2) = 0.1 * n(rng);
  }
  const auto axes = principal_axes(X, 2);
  CHECK(std::abs(std::abs(axes(0, 0)) - std::sqrt(0.5)) < 1e-3);
  CHECK(std::abs(std::abs(axes(1, 0)) - std::sqrt(0.5)) < 1e-3);
  const auto col = axes.col(0);
  Eigen::Index arg = 0;
  col.cwiseAbs().maxCoeff(&arg);
  CHECK(col(arg) > 0.0);
  const auto Y = pca_project(X, 2);
  CHECK(Y.rows() == 400);
  CHECK(Y.cols() == 2);
  CHECK(std::abs(Y.col(0).mean()) < 1e-9);
  // Projections are uncorrelated and ordered by variance.
  const double v0 = Y.col(0).squaredNorm(), v1 = Y.col(1).squaredNorm();
  CHECK(v0 > v1);
  CHECK(std::abs(Y.col(0).dot(Y.col(1))) < 1e-6 * v0);
}
