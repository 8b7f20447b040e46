#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gridsearch/analysis.hpp"
#include "gridsearch/geometry.hpp"
#include "gridsearch/simulator.hpp"
#include "gridsearch/tessellation.hpp"

namespace gridsearch::io {

// A marked placement; nullopt means "default cell for this grid".
using Placement = std::optional<std::vector<Coord>>;

struct EmitFlags {
  bool trace = true;
  bool snapshots = false;
  bool heatmaps = false;
  bool partition = false;
};

/// Parsed experiment description. Single-valued keys fill the scalar
/// fields; `sweep_*` keys override them with lists.
struct ExperimentConfig {
  std::vector<std::size_t> sides;  // grid side L per sweep point
  std::vector<std::size_t> tile_params{4};
  std::vector<Tessellation> tessellations{Tessellation::square};
  std::vector<Placement> placements{Placement{}};
  std::vector<OperatorOrder> orders{OperatorOrder::ltr};
  std::size_t max_iterations = 0;  // 0 = ceil(4 sqrt(n))
  std::size_t snapshot_stride = 0;
  PeakRule peak_rule = PeakRule::first;
  std::string out_dir = "out";
  EmitFlags emit;
  std::size_t heatmap_scale = 1;
};

/// Thrown by parse_config; `violations` lists every problem found.
class ConfigError : public std::invalid_argument {
public:
  explicit ConfigError(std::vector<std::string> violations)
      : std::invalid_argument(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "invalid config:";
    for (const auto& e : v) s += "\n  - " + e;
    return s;
  }
  std::vector<std::string> violations_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::optional<std::size_t> to_size(std::string_view s) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || s.empty()) return std::nullopt;
  return v;
}

inline std::optional<bool> to_bool(std::string_view s) {
  if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
  if (s == "false" || s == "no" || s == "0" || s == "off") return false;
  return std::nullopt;
}

// "i,j" or "i,j; i,j" or "default".
inline std::optional<Placement> to_placement(std::string_view s) {
  if (s == "default") return Placement{};
  std::vector<Coord> cells;
  for (auto cell : split(s, ';')) {
    const auto parts = split(cell, ',');
    if (parts.size() != 2) return std::nullopt;
    auto i = to_size(parts[0]);
    auto j = to_size(parts[1]);
    if (!i || !j) return std::nullopt;
    cells.push_back(Coord{*i, *j});
  }
  return Placement{std::move(cells)};
}

}  // namespace detail

/// Parses the flat `key = value` format. Blank lines and `#` comments are
/// ignored; lists are comma-separated, marked cells are `i,j` joined by `;`,
/// and `sweep_marked` placements are separated by `|`.
inline ExperimentConfig parse_config(std::string_view text) {
  using detail::split;
  using detail::to_size;
  using detail::trim;

  ExperimentConfig cfg;
  std::vector<std::string> errors;
  std::set<std::string, std::less<>> seen;
  std::optional<std::size_t> side;
  std::optional<std::size_t> n;
  std::vector<std::size_t> sweep_n;

  auto bad = [&](std::size_t line, std::string_view key, const std::string& why) {
    errors.push_back("line " + std::to_string(line) + ": " + std::string(key) + ": " + why);
  };
  auto size_list = [&](std::size_t line, std::string_view key, std::string_view value) {
    std::vector<std::size_t> out;
    for (auto item : split(value, ',')) {
      if (auto v = to_size(item)) out.push_back(*v);
      else bad(line, key, "'" + std::string(item) + "' is not a non-negative integer");
    }
    return out;
  };

  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    auto line = trim(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
      continue;
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!seen.insert(std::string(key)).second) bad(line_no, key, "duplicate key");

    try {
      if (key == "L" || key == "n") {
        auto v = to_size(value);
        if (!v) bad(line_no, key, "'" + std::string(value) + "' is not a non-negative integer");
        else (key == "L" ? side : n) = *v;
      } else if (key == "d") {
        cfg.tile_params = size_list(line_no, key, value);
      } else if (key == "tessellation" || key == "sweep_tessellation") {
        cfg.tessellations.clear();
        for (auto t : split(value, ',')) cfg.tessellations.push_back(parse_tessellation(t));
      } else if (key == "marked" || key == "sweep_marked") {
        cfg.placements.clear();
        const auto items = key == "marked" ? std::vector<std::string_view>{value} : split(value, '|');
        for (auto p : items) {
          if (auto pl = detail::to_placement(p)) cfg.placements.push_back(std::move(*pl));
          else bad(line_no, key, "'" + std::string(p) + "' is not 'i,j[; i,j ...]' or 'default'");
        }
      } else if (key == "order" || key == "sweep_order") {
        cfg.orders.clear();
        for (auto o : split(value, ',')) cfg.orders.push_back(parse_order(o));
      } else if (key == "sweep_n") {
        sweep_n = size_list(line_no, key, value);
      } else if (key == "sweep_L") {
        cfg.sides = size_list(line_no, key, value);
      } else if (key == "sweep_d") {
        cfg.tile_params = size_list(line_no, key, value);
      } else if (key == "max_iterations" || key == "snapshot_stride" || key == "heatmap_scale") {
        auto v = to_size(value);
        if (!v) bad(line_no, key, "'" + std::string(value) + "' is not a non-negative integer");
        else if (key == "max_iterations") cfg.max_iterations = *v;
        else if (key == "snapshot_stride") cfg.snapshot_stride = *v;
        else if (*v == 0) bad(line_no, key, "must be positive");
        else cfg.heatmap_scale = *v;
      } else if (key == "peak_rule") {
        cfg.peak_rule = parse_peak_rule(value);
      } else if (key == "out") {
        cfg.out_dir = std::string(value);
      } else if (key == "emit_trace" || key == "emit_snapshots" || key == "emit_heatmaps" ||
                 key == "emit_partition") {
        auto b = detail::to_bool(value);
        if (!b) bad(line_no, key, "'" + std::string(value) + "' is not a boolean");
        else if (key == "emit_trace") cfg.emit.trace = *b;
        else if (key == "emit_snapshots") cfg.emit.snapshots = *b;
        else if (key == "emit_heatmaps") cfg.emit.heatmaps = *b;
        else cfg.emit.partition = *b;
      } else {
        bad(line_no, key, "unknown key");
      }
    } catch (const std::invalid_argument& e) {
      bad(line_no, key, e.what());
    }
  }

  // Grid sizes: L, n, sweep_n and sweep_L all feed `sides`.
  if (side) cfg.sides.push_back(*side);
  auto add_n = [&](std::size_t v, std::string_view key) {
    try {
      cfg.sides.push_back(geometry_from_cells(v).side());
    } catch (const std::invalid_argument& e) {
      errors.push_back(std::string(key) + ": " + e.what());
    }
  };
  if (n) add_n(*n, "n");
  for (auto v : sweep_n) add_n(v, "sweep_n");
  if (cfg.sides.empty() && !seen.contains("L") && !seen.contains("n")) {
    errors.emplace_back("missing required key: L or n (or sweep_n / sweep_L)");
  }
  for (auto L : cfg.sides) {
    if (L < 2) errors.push_back("grid side " + std::to_string(L) + " is smaller than 2");
  }
  if (cfg.tile_params.empty()) errors.emplace_back("d: empty list");
  if (cfg.placements.empty()) errors.emplace_back("marked: empty list");

  // Divisibility and placement checks over every combination.
  for (auto L : cfg.sides) {
    if (L < 2) continue;
    for (auto t : cfg.tessellations) {
      for (auto d : cfg.tile_params) {
        auto why = tessellation_violation(t, L, d);
        if (!why.empty() && std::find(errors.begin(), errors.end(), why) == errors.end()) {
          errors.push_back(std::move(why));
        }
      }
    }
    for (const auto& p : cfg.placements) {
      if (!p) continue;
      try {
        MarkedSet(GridGeometry(L), *p);
      } catch (const std::invalid_argument& e) {
        errors.push_back(std::string("marked: ") + e.what());
      }
    }
  }

  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

}  // namespace gridsearch::io
