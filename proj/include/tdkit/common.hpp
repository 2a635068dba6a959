#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tdkit {

inline constexpr const char* kToolVersion = "0.3.0";

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class AuthorizationError : public Error {
 public:
  using Error::Error;
};

// Raised on double submission or an illegal state transition.
class ConflictError : public Error {
 public:
  using Error::Error;
};

enum class TDLabel : std::uint8_t {
  Design = 0,
  Implementation = 1,
  Defect = 2,
  Test = 3,
  Documentation = 4,
  NonSatd = 5,
};

inline constexpr std::size_t kNumLabels = 6;
inline constexpr std::size_t kNumTDTypes = 5;

inline constexpr std::array<TDLabel, kNumLabels> kAllLabels = {
    TDLabel::Design, TDLabel::Implementation, TDLabel::Defect,
    TDLabel::Test,   TDLabel::Documentation,  TDLabel::NonSatd};

inline constexpr std::array<TDLabel, kNumTDTypes> kTDTypes = {
    TDLabel::Design, TDLabel::Implementation, TDLabel::Defect, TDLabel::Test,
    TDLabel::Documentation};

// Types that describe debt in the code itself.
inline constexpr std::array<TDLabel, 4> kCodeTDTypes = {
    TDLabel::Design, TDLabel::Implementation, TDLabel::Defect, TDLabel::Test};

inline constexpr std::size_t index_of(TDLabel l) {
  return static_cast<std::size_t>(l);
}

inline constexpr bool is_td_type(TDLabel l) { return l != TDLabel::NonSatd; }

inline constexpr bool is_code_td_type(TDLabel l) {
  return l == TDLabel::Design || l == TDLabel::Implementation ||
         l == TDLabel::Defect || l == TDLabel::Test;
}

std::string_view to_string(TDLabel l);
std::optional<TDLabel> parse_label(std::string_view s);
// Throws Error on unknown names.
TDLabel label_from_string(std::string_view s);

// 64-bit FNV-1a.
class Fnv1a {
 public:
  Fnv1a& update(std::string_view bytes);
  Fnv1a& update_field(std::string_view bytes);  // length-prefixed
  std::uint64_t digest() const { return state_; }
  std::string hex() const;

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string hex64(std::uint64_t v);

}  // namespace tdkit
