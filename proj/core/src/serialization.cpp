#include "redlat/serialization.hpp"

#include <cmath>
#include <cstdio>

namespace redlat {

Json to_json(const Eigen::VectorXd& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Json to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::VectorXd vector_from_json(const Json& j) {
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
  const std::size_t rows = j.size();
  const std::size_t cols = rows > 0 ? j[0].size() : 0;
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols) {
      throw std::invalid_argument("ragged matrix in JSON");
    }
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

Json exponent_to_json(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

double exponent_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInfExponent;
    throw std::invalid_argument("unknown exponent string");
  }
  return j.get<double>();
}

Json to_json(const DiscreteMeasureSpace& space) {
  return Json{{"weights", to_json(space.weights())}};
}

DiscreteMeasureSpace measure_space_from_json(const Json& j) {
  return DiscreteMeasureSpace(vector_from_json(j.at("weights")));
}

Json to_json(const SpaceDescriptor& space) {
  Json j{{"p", exponent_to_json(space.exponent())},
         {"weights", to_json(space.base().weights())}};
  if (space.related_map()) {
    j["related_map"] = to_json(*space.related_map());
  }
  return j;
}

SpaceDescriptor space_from_json(const Json& j) {
  const double p = exponent_from_json(j.at("p"));
  DiscreteMeasureSpace base(vector_from_json(j.at("weights")));
  if (j.contains("related_map")) {
    return SpaceDescriptor(p, std::move(base),
                           matrix_from_json(j.at("related_map")));
  }
  return SpaceDescriptor(p, std::move(base));
}

Json to_json(const VectorFunction& f) {
  Json j = to_json(f.space());
  j["components"] = to_json(f.components());
  return j;
}

VectorFunction vector_function_from_json(const Json& j) {
  return VectorFunction(space_from_json(j),
                        matrix_from_json(j.at("components")));
}

Json to_json(const ReducingMatrix& r) {
  return Json{{"matrix", to_json(r.matrix)},
              {"kernel_basis", to_json(r.kernel_basis)},
              {"c_low", r.c_low},
              {"c_high", r.c_high},
              {"n_directions", r.n_directions},
              {"tol", r.tol}};
}

ReducingMatrix reducing_matrix_from_json(const Json& j) {
  ReducingMatrix r;
  r.matrix = matrix_from_json(j.at("matrix"));
  r.kernel_basis = matrix_from_json(j.at("kernel_basis"));
  if (r.kernel_basis.rows() == 0) {
    r.kernel_basis = Eigen::MatrixXd(r.matrix.rows(), 0);
  }
  r.c_low = j.at("c_low").get<double>();
  r.c_high = j.at("c_high").get<double>();
  r.n_directions = j.at("n_directions").get<int>();
  r.tol = j.at("tol").get<double>();
  return r;
}

Json to_json(const BilinearTable& t) {
  Json entries = Json::array();
  for (int i = 0; i < t.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < t.cols(); ++j) row.push_back(to_json(t.entry(i, j)));
    entries.push_back(std::move(row));
  }
  return Json{{"target", to_json(t.target())},
              {"m", t.rows()},
              {"n", t.cols()},
              {"entries", std::move(entries)}};
}

BilinearTable bilinear_table_from_json(const Json& j) {
  SpaceDescriptor target = space_from_json(j.at("target"));
  const int m = j.at("m").get<int>();
  const int n = j.at("n").get<int>();
  const Json& entries = j.at("entries");
  std::vector<Eigen::VectorXd> flat;
  flat.reserve(static_cast<std::size_t>(m) * n);
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < n; ++k) {
      flat.push_back(vector_from_json(entries.at(i).at(k)));
    }
  }
  return BilinearTable(std::move(target), m, n, std::move(flat));
}

Json to_json(const SplitResult& s) {
  return Json{{"tau0", to_json(s.tau0)},
              {"tau1", to_json(s.tau1)},
              {"C0", s.c0},
              {"C1", s.c1},
              {"reconstruction_error", s.reconstruction_error},
              {"eps_trace", s.eps_trace}};
}

double round_sig(double x, int digits) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

std::string format_sig(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

}  // namespace redlat
