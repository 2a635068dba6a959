#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tdkit::fusion {

inline constexpr const char* kSeparator = "[SEP]";

// comment ++ [SEP] ++ code, cut from the code tail to fit max_len. When the
// comment alone is longer than max_len it is truncated and nothing else fits.
std::vector<std::string> str_concat(const std::vector<std::string>& comment, const std::vector<std::string>& code,
                                    std::size_t max_len);

struct FusedRepresentation {
  Eigen::MatrixXd attention;  // M x N, row-stochastic
  Eigen::MatrixXd fused;      // M x D
  Eigen::VectorXd pooled;     // D
};

// A = rowsoftmax(G H^T), fused = A H, pooled = column mean of fused.
// G is the code side (M x D), H the comment side (N x D).
FusedRepresentation code_att(const Eigen::MatrixXd& G, const Eigen::MatrixXd& H);

}  // namespace tdkit::fusion
