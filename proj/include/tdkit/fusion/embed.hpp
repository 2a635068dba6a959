#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace tdkit::fusion {

// Whitespace + punctuation split; each punctuation byte is its own token.
std::vector<std::string> tokenize(std::string_view text);

struct EmbeddingMatrix {
  Eigen::MatrixXd values;  // rows = tokens
  std::string embedder = "hash-srp";
  std::uint64_t seed = 0;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index dim() const { return values.cols(); }
};

// Stand-in for PLM token embeddings: every token hashes (with the seed) to a
// signed random projection, normalized to unit length.
Eigen::VectorXd token_vector(std::string_view token, int dim, std::uint64_t seed);

// Throws Error on an empty token list or dim < 1.
EmbeddingMatrix embed_tokens(const std::vector<std::string>& tokens, int dim, std::uint64_t seed);
EmbeddingMatrix embed_tokens(std::string_view text, int dim, std::uint64_t seed);

}  // namespace tdkit::fusion
