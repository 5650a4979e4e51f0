#include "linefig/feature_matrix.hpp"

#include <algorithm>
#include <tuple>
#include <cmath>

#include "linefig/csv.hpp"
#include "linefig/errors.hpp"

namespace linefig {

Matrix standardize(const Matrix& raw, ScalingRecord* record) {
  const auto n = raw.rows();
  const auto d = raw.cols();
  Matrix out(n, d);
  ScalingRecord rec;
  rec.mean.resize(d);
  rec.scale.resize(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    double mean = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) mean += raw(i, j);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) var += (raw(i, j) - mean) * (raw(i, j) - mean);
    var /= static_cast<double>(n);
    const double sd = std::sqrt(var);
    // Treat numerically constant columns as constant.
    const bool constant = sd <= 1e-12 * std::max(1.0, std::abs(mean));
    rec.mean[j] = mean;
    rec.scale[j] = constant ? 0.0 : sd;
    for (Eigen::Index i = 0; i < n; ++i) out(i, j) = constant ? 0.0 : (raw(i, j) - mean) / sd;
  }
  if (record != nullptr) *record = std::move(rec);
  return out;
}

std::vector<std::string> FeatureMatrix::keys() const {
  std::vector<std::string> out;
  out.reserve(rows());
  for (std::size_t i = 0; i < rows(); ++i) out.push_back(key(i));
  return out;
}

FeatureMatrix build_feature_matrix(std::vector<FeatureRow> rows) {
  if (rows.size() < 2) throw ValidationError("feature matrix needs at least two figures");
  std::sort(rows.begin(), rows.end(), [](const FeatureRow& a, const FeatureRow& b) {
    return std::tie(a.culture_id, a.figure_id) < std::tie(b.culture_id, b.figure_id);
  });
  FeatureMatrix fm;
  fm.raw.resize(static_cast<Eigen::Index>(rows.size()), kFeatureCount);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    fm.culture_ids.push_back(rows[i].culture_id);
    fm.figure_ids.push_back(rows[i].figure_id);
    const auto values = rows[i].signature.to_array();
    for (std::size_t j = 0; j < kFeatureCount; ++j) fm.raw(static_cast<Eigen::Index>(i), j) = values[j];
  }
  fm.standardized = standardize(fm.raw, &fm.scaling);
  return fm;
}

FeatureMatrix build_feature_matrix(const Dataset& dataset, const SignatureOptions& options) {
  std::vector<FeatureRow> rows;
  rows.reserve(dataset.figures.size());
  for (const auto& f : dataset.figures) {
    rows.push_back({f.culture_id, f.figure_id, compute_signature(f, dataset.catalog, options)});
  }
  return build_feature_matrix(std::move(rows));
}

void write_features_csv(std::ostream& out, const FeatureMatrix& features, bool standardized) {
  const Matrix& m = standardized ? features.standardized : features.raw;
  out << "culture_id,figure_id";
  for (const auto name : feature_names()) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < features.rows(); ++i) {
    out << features.culture_ids[i] << ',' << features.figure_ids[i];
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << ',' << csv::format_double(m(static_cast<Eigen::Index>(i), j));
    out << '\n';
  }
}

void write_scaling_csv(std::ostream& out, const ScalingRecord& scaling) {
  out << "feature,mean,std\n";
  for (std::size_t j = 0; j < scaling.mean.size(); ++j) {
    out << feature_names()[j] << ',' << csv::format_double(scaling.mean[j]) << ','
        << csv::format_double(scaling.scale[j]) << '\n';
  }
}

FeatureTable read_features_csv(std::istream& in, std::string_view source) {
  csv::LineReader reader(in);
  std::string line;
  if (!reader.next(line)) throw ValidationError(std::string(source) + ": empty features file");
  const auto header = csv::split(line);
  if (header.size() != kFeatureCount + 2 || header[0] != "culture_id" || header[1] != "figure_id") {
    throw ValidationError(std::string(source) + ": unexpected features header");
  }
  FeatureTable table;
  std::vector<std::array<double, kFeatureCount>> rows;
  while (reader.next(line)) {
    const auto fields = csv::split(line);
    if (fields.size() != kFeatureCount + 2) {
      throw ValidationError(std::string(source) + ":" + std::to_string(reader.line_number()) + ": malformed row");
    }
    table.culture_ids.push_back(fields[0]);
    table.figure_ids.push_back(fields[1]);
    std::array<double, kFeatureCount> row{};
    for (std::size_t j = 0; j < kFeatureCount; ++j) row[j] = csv::parse_double(fields[j + 2], feature_names()[j]);
    rows.push_back(row);
  }
  table.values.resize(static_cast<Eigen::Index>(rows.size()), kFeatureCount);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < kFeatureCount; ++j) table.values(static_cast<Eigen::Index>(i), j) = rows[i][j];
  }
  return table;
}

}  // namespace linefig
