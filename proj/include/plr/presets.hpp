#pragma once

#include <cmath>
#include <map>
#include <string>

#include "plr/soliton.hpp"

namespace plr {

namespace detail {
inline Complex unit(double arg) { return std::polar(1.0, arg); }
}  // namespace detail

/// Named parameter sets: the six 1-3 soliton examples (A)-(F) plus the two
/// 4-soliton sets ("plr4" non-reducing, "sg4" sine-Gordon reducing).
inline SolitonParams preset(const std::string& name) {
  using detail::unit;
  const double pi = std::acos(-1.0);
  if (name == "A") return {1, {unit(std::acos(0.25))}, {{1.0, 0.0}}, 0.0};
  if (name == "B") return {2, {unit(pi / 4), Complex{0.0, 1.0}}, {{1.0, 0.0}, {1.0, 0.0}}, 0.0};
  if (name == "C")
    return {3,
            {unit(pi / 6), unit(pi / 3), unit(5 * pi / 6)},
            {{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}},
            0.0};
  if (name == "D") return {1, {Complex{0.0, 1.0}}, {{1.0, 0.0}}, 0.0};
  if (name == "E")
    return {2, {unit(pi / 4), unit(3 * pi / 4)}, {{1.0, 0.0}, {-1.0, 0.0}}, 0.0};
  if (name == "F")
    return {3,
            {unit(pi / 6), unit(5 * pi / 6), Complex{0.0, 1.0}},
            {{1.0, 0.0}, {-1.0, 0.0}, Complex{0.0, 1.0}},
            0.0};
  if (name == "plr4")
    return {4,
            {unit(pi / 6), unit(pi / 3), unit(2 * pi / 3), unit(5 * pi / 6)},
            {unit(pi / 6), unit(pi / 3), unit(5 * pi / 6), unit(2 * pi / 3)},
            0.0};
  if (name == "sg4")
    return {4,
            {unit(pi / 6), unit(pi / 3), unit(2 * pi / 3), unit(5 * pi / 6)},
            {unit(pi / 6), unit(pi / 3), unit(2 * pi / 3), unit(5 * pi / 6)},
            0.0};
  throw ValidationError("unknown preset '" + name + "' (expected A-F, plr4, sg4)");
}

inline const std::map<std::string, std::string>& preset_descriptions() {
  static const std::map<std::string, std::string> d = {
      {"A", "PLR 1-soliton"},         {"B", "PLR 2-soliton"},
      {"C", "PLR 3-soliton"},         {"D", "sine-Gordon 1-soliton (see README note)"},
      {"E", "sine-Gordon 2-soliton"}, {"F", "sine-Gordon 3-soliton"},
      {"plr4", "PLR 4-soliton"},      {"sg4", "sine-Gordon 4-soliton"}};
  return d;
}

}  // namespace plr
