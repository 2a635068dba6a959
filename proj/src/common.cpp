#include "tdkit/common.hpp"

#include <cctype>

namespace tdkit {

std::string_view to_string(TDLabel l) {
  switch (l) {
    case TDLabel::Design: return "DESIGN";
    case TDLabel::Implementation: return "IMPLEMENTATION";
    case TDLabel::Defect: return "DEFECT";
    case TDLabel::Test: return "TEST";
    case TDLabel::Documentation: return "DOCUMENTATION";
    case TDLabel::NonSatd: return "NON_SATD";
  }
  return "?";
}

std::optional<TDLabel> parse_label(std::string_view s) {
  std::string up;
  up.reserve(s.size());
  for (char c : s) {
    up.push_back(c == '-' || c == ' ' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  for (TDLabel l : kAllLabels) {
    if (up == to_string(l)) return l;
  }
  // Maldonado-62K spellings
  if (up == "WITHOUT_CLASSIFICATION" || up == "NONSATD" || up == "NON-SATD") return TDLabel::NonSatd;
  if (up == "REQUIREMENT") return TDLabel::Implementation;
  return std::nullopt;
}

TDLabel label_from_string(std::string_view s) {
  if (auto l = parse_label(s)) return *l;
  throw Error("unknown label '" + std::string(s) + "'");
}

Fnv1a& Fnv1a::update(std::string_view bytes) {
  for (unsigned char c : bytes) {
    state_ ^= c;
    state_ *= 0x100000001b3ULL;
  }
  return *this;
}

Fnv1a& Fnv1a::update_field(std::string_view bytes) {
  update(std::to_string(bytes.size()));
  update(":");
  return update(bytes);
}

std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[v & 0xf];
    v >>= 4;
  }
  return out;
}

std::string Fnv1a::hex() const { return hex64(state_); }

}  // namespace tdkit
