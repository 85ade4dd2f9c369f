#include "lbpkit/learning/pca.hpp"

#include <algorithm>
#include <string>

#include <json.hpp>

#include "lbpkit/error.hpp"

namespace lbpkit {

PcaModel pca_fit(const Matrix& data) {
  const std::size_t n = data.rows();
  const std::size_t d = data.cols();
  if (n < 2) throw Error(ErrorKind::TooFewSamples, "PCA needs at least two samples");

  PcaModel model;
  model.mean.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) model.mean[j] += data(i, j);
  }
  for (double& m : model.mean) m /= static_cast<double>(n);

  Matrix cov(d, d);
  std::vector<double> centered(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) centered[j] = data(i, j) - model.mean[j];
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = r; c < d; ++c) cov(r, c) += centered[r] * centered[c];
    }
  }
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = r; c < d; ++c) {
      cov(r, c) /= static_cast<double>(n);
      cov(c, r) = cov(r, c);
    }
  }

  SymmetricEigen eig = jacobi_eigen(cov);
  model.components = std::move(eig.vectors);
  model.variances = std::move(eig.values);
  for (double& v : model.variances) v = std::max(v, 0.0);
  return model;
}

Matrix pca_project(const PcaModel& model, const Matrix& data, std::size_t n_components) {
  const std::size_t d = model.dim();
  if (n_components > d) {
    throw Error(ErrorKind::TooManyComponents, "requested " + std::to_string(n_components) +
                                                  " components, model has " + std::to_string(d));
  }
  if (data.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch, "data has " + std::to_string(data.cols()) +
                                                  " columns, model expects " + std::to_string(d));
  }
  Matrix out(data.rows(), n_components);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t k = 0; k < n_components; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += (data(i, j) - model.mean[j]) * model.components(k, j);
      out(i, k) = s;
    }
  }
  return out;
}

Matrix pca_reconstruct(const PcaModel& model, const Matrix& coords) {
  const std::size_t d = model.dim();
  if (coords.cols() > d) throw Error(ErrorKind::TooManyComponents, "too many coordinate columns");
  Matrix out(coords.rows(), d);
  for (std::size_t i = 0; i < coords.rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double s = model.mean[j];
      for (std::size_t k = 0; k < coords.cols(); ++k) s += coords(i, k) * model.components(k, j);
      out(i, j) = s;
    }
  }
  return out;
}

std::string pca_json(const PcaModel& model) {
  nlohmann::ordered_json j;
  j["mean"] = model.mean;
  auto comps = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < model.components.rows(); ++r) {
    const auto row = model.components.row(r);
    comps.push_back(std::vector<double>(row.begin(), row.end()));
  }
  j["components"] = std::move(comps);
  j["variances"] = model.variances;
  return j.dump();
}

PcaModel pca_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    PcaModel m;
    m.mean = j.at("mean").get<std::vector<double>>();
    m.components = Matrix::from_rows(j.at("components").get<std::vector<std::vector<double>>>());
    m.variances = j.at("variances").get<std::vector<double>>();
    if (m.components.cols() != m.mean.size() || m.components.rows() != m.variances.size()) {
      throw Error(ErrorKind::MalformedData, "PCA model arrays have inconsistent sizes");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedData, std::string("PCA json: ") + e.what());
  }
}

}  // namespace lbpkit
