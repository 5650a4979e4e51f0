#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "linefig/matrix.hpp"
#include "linefig/signature.hpp"
#include "linefig/skyculture.hpp"

namespace linefig {

/// Per-column mean and population standard deviation used for scaling.
/// Constant columns have scale 0 and standardize to 0.
struct ScalingRecord {
  std::vector<double> mean;
  std::vector<double> scale;
};

/// Column-wise standard scaling to zero mean and unit (population) variance.
Matrix standardize(const Matrix& raw, ScalingRecord* record = nullptr);

struct FeatureMatrix {
  std::vector<std::string> culture_ids;
  std::vector<std::string> figure_ids;
  Matrix raw;           // n x 19
  Matrix standardized;  // n x 19
  ScalingRecord scaling;

  [[nodiscard]] std::size_t rows() const { return figure_ids.size(); }
  [[nodiscard]] std::string key(std::size_t row) const { return culture_ids[row] + "/" + figure_ids[row]; }
  [[nodiscard]] std::vector<std::string> keys() const;
};

struct FeatureRow {
  std::string culture_id;
  std::string figure_id;
  Signature signature;
};

/// Sorts rows by (culture_id, figure_id) and standardizes. Needs >= 2 rows.
FeatureMatrix build_feature_matrix(std::vector<FeatureRow> rows);
FeatureMatrix build_feature_matrix(const Dataset& dataset, const SignatureOptions& options = {});

/// `culture_id,figure_id,s1,...,s19` from either the raw or standardized matrix.
void write_features_csv(std::ostream& out, const FeatureMatrix& features, bool standardized);
/// `feature,mean,std`
void write_scaling_csv(std::ostream& out, const ScalingRecord& scaling);

struct FeatureTable {
  std::vector<std::string> culture_ids;
  std::vector<std::string> figure_ids;
  Matrix values;
  [[nodiscard]] std::string key(std::size_t row) const { return culture_ids[row] + "/" + figure_ids[row]; }
};

/// Reads a features CSV written by write_features_csv.
FeatureTable read_features_csv(std::istream& in, std::string_view source = "features");

}  // namespace linefig
