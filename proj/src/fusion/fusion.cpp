#include "tdkit/fusion/fusion.hpp"

#include "tdkit/common.hpp"

namespace tdkit::fusion {

std::vector<std::string> str_concat(const std::vector<std::string>& comment, const std::vector<std::string>& code,
                                    std::size_t max_len) {
  if (max_len == 0) throw Error("str_concat: max_len must be positive");
  if (comment.size() >= max_len) return {comment.begin(), comment.begin() + static_cast<std::ptrdiff_t>(max_len)};
  std::vector<std::string> out(comment);
  out.emplace_back(kSeparator);
  const std::size_t room = max_len - out.size();
  const std::size_t take = std::min(room, code.size());
  out.insert(out.end(), code.begin(), code.begin() + static_cast<std::ptrdiff_t>(take));
  return out;
}

FusedRepresentation code_att(const Eigen::MatrixXd& G, const Eigen::MatrixXd& H) {
  if (G.cols() != H.cols()) {
    throw Error("code_att: dimension mismatch (" + std::to_string(G.cols()) + " vs " + std::to_string(H.cols()) + ")");
  }
  if (G.rows() < 1 || H.rows() < 1) throw Error("code_att: empty embedding matrix");
  FusedRepresentation r;
  Eigen::MatrixXd scores = G * H.transpose();
  // max-shifted softmax per row
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    auto row = scores.row(i);
    row.array() = (row.array() - row.maxCoeff()).exp();
    row /= row.sum();
  }
  r.attention = std::move(scores);
  r.fused = r.attention * H;
  r.pooled = r.fused.colwise().mean().transpose();
  return r;
}

}  // namespace tdkit::fusion
