#ifndef SPECTRAL_LAYERS_TYPES_HPP
#define SPECTRAL_LAYERS_TYPES_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>

namespace spectral_layers {

// Path counts and block entries are exact integers; all combinatorial
// arithmetic runs in int64 so verdicts never depend on rounding.
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

enum class OperatorKind { adjacency, laplacian, normalized };

std::string to_string(OperatorKind kind);
OperatorKind operator_kind_from_string(const std::string& name);

// A vertex is addressed by its sphere and its index within the sphere.
struct VertexId {
  int sphere = 0;
  int index = 0;

  friend bool operator==(const VertexId&, const VertexId&) = default;
  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

std::string to_string(const VertexId& v);

}  // namespace spectral_layers

#endif
