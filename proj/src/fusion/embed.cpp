#include "tdkit/fusion/embed.hpp"

#include <cctype>
#include <cmath>

#include "tdkit/common.hpp"
#include "tdkit/rng.hpp"

namespace tdkit::fusion {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      flush();
    } else if (c < 0x80 && std::ispunct(c) && c != '_') {
      flush();
      out.emplace_back(1, ch);
    } else {
      cur.push_back(ch);
    }
  }
  flush();
  return out;
}

Eigen::VectorXd token_vector(std::string_view token, int dim, std::uint64_t seed) {
  const std::uint64_t h = Fnv1a().update(token).digest() ^ splitmix64(seed);
  Eigen::VectorXd v(dim);
  std::uint64_t state = h;
  for (int d = 0; d < dim; ++d) {
    state = splitmix64(state);
    // Box-Muller on two 53-bit uniforms; gaussian coordinates make the
    // direction uniform on the sphere.
    const double u1 = (static_cast<double>(state >> 11) + 0.5) * 0x1.0p-53;
    state = splitmix64(state);
    const double u2 = static_cast<double>(state >> 11) * 0x1.0p-53;
    v[d] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }
  const double n = v.norm();
  if (n > 0) v /= n;
  return v;
}

EmbeddingMatrix embed_tokens(const std::vector<std::string>& tokens, int dim, std::uint64_t seed) {
  if (tokens.empty()) throw Error("embed_tokens: empty token sequence");
  if (dim < 1) throw Error("embed_tokens: dim must be positive");
  EmbeddingMatrix m;
  m.seed = seed;
  m.values.resize(static_cast<Eigen::Index>(tokens.size()), dim);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    m.values.row(static_cast<Eigen::Index>(i)) = token_vector(tokens[i], dim, seed).transpose();
  }
  return m;
}

EmbeddingMatrix embed_tokens(std::string_view text, int dim, std::uint64_t seed) {
  return embed_tokens(tokenize(text), dim, seed);
}

}  // namespace tdkit::fusion
