#pragma once

#include <json.hpp>

#include <string>

#include "redlat/bilinear.hpp"
#include "redlat/measure.hpp"
#include "redlat/reducing.hpp"

namespace redlat {

using Json = nlohmann::json;

Json to_json(const Eigen::VectorXd& v);
Json to_json(const Eigen::MatrixXd& m);
Eigen::VectorXd vector_from_json(const Json& j);
Eigen::MatrixXd matrix_from_json(const Json& j);

/// Exponents serialize as numbers, with "inf" for the sup norm.
Json exponent_to_json(double p);
double exponent_from_json(const Json& j);

/// {"p": ..., "weights": [...], "components": [[...]], "related_map"?: ...}
Json to_json(const VectorFunction& f);
VectorFunction vector_function_from_json(const Json& j);

Json to_json(const DiscreteMeasureSpace& space);
DiscreteMeasureSpace measure_space_from_json(const Json& j);

Json to_json(const SpaceDescriptor& space);
SpaceDescriptor space_from_json(const Json& j);

Json to_json(const ReducingMatrix& r);
ReducingMatrix reducing_matrix_from_json(const Json& j);

Json to_json(const BilinearTable& t);
BilinearTable bilinear_table_from_json(const Json& j);

Json to_json(const SplitResult& s);

/// Rounds to 12 significant digits; all floating output in artifacts goes
/// through this so regression diffs stay meaningful.
double round_sig(double x, int digits = 12);
std::string format_sig(double x, int digits = 12);

}  // namespace redlat
