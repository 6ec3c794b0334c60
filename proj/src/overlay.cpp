#include "scimap/overlay.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <json.hpp>

#include "scimap/error.hpp"

namespace scimap {

std::optional<double> fractional_date(const BibRecord& record) {
  if (!record.pub_year) return std::nullopt;
  const double year = *record.pub_year;
  if (record.pub_month) return year + (*record.pub_month - 0.5) / 12.0;
  return year + 0.5;
}

std::optional<double> average_pub_date(const std::set<std::string>& record_ids,
                                       const std::vector<BibRecord>& records) {
  // Sum in id order so the result does not depend on record order.
  std::unordered_map<std::string_view, const BibRecord*> by_id;
  for (const auto& r : records) by_id.emplace(r.id, &r);
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& id : record_ids) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) continue;
    if (const auto date = fractional_date(*it->second)) {
      total += *date;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return total / static_cast<double>(count);
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "percentile of empty set");
  std::sort(values.begin(), values.end());
  const double rank = std::clamp(p, 0.0, 100.0) / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (rank - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

OverlayScores overlay_scores(const CooccurrenceNetwork& net,
                             const std::vector<BibRecord>& records) {
  OverlayScores out;
  out.scores.reserve(net.size());
  std::vector<double> present;
  for (const auto& node : net.nodes()) {
    out.scores.push_back(average_pub_date(node.supporting_records, records));
    if (out.scores.back()) present.push_back(*out.scores.back());
  }
  out.normalized.assign(net.size(), std::nullopt);
  if (present.empty()) return out;
  const double lo = percentile(present, 2.0);
  const double hi = percentile(present, 98.0);
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (!out.scores[i]) continue;
    out.normalized[i] = hi > lo ? (std::clamp(*out.scores[i], lo, hi) - lo) / (hi - lo) : 0.5;
  }
  return out;
}

std::set<std::string> emerging_filter(const std::vector<std::string>& labels,
                                      const std::vector<std::optional<double>>& scores,
                                      double cutoff) {
  if (labels.size() != scores.size()) {
    throw Error(ErrorKind::InvalidArgument, "labels and scores sizes differ");
  }
  std::set<std::string> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (scores[i] && *scores[i] > cutoff) out.insert(labels[i]);
  }
  return out;
}

double DensityField::x_at(std::size_t column) const {
  return x_min + (x_max - x_min) * static_cast<double>(column) / static_cast<double>(columns - 1);
}

double DensityField::y_at(std::size_t row) const {
  return y_min + (y_max - y_min) * static_cast<double>(row) / static_cast<double>(rows - 1);
}

double DensityField::cell_area() const {
  return (x_max - x_min) / static_cast<double>(columns - 1) * (y_max - y_min) /
         static_cast<double>(rows - 1);
}

double default_bandwidth(std::span<const Point> positions) {
  if (positions.empty()) return 0.05;
  auto [xmin, xmax] = std::minmax_element(positions.begin(), positions.end(),
                                          [](const Point& a, const Point& b) { return a.x < b.x; });
  auto [ymin, ymax] = std::minmax_element(positions.begin(), positions.end(),
                                          [](const Point& a, const Point& b) { return a.y < b.y; });
  const double range = std::max(xmax->x - xmin->x, ymax->y - ymin->y);
  return range > 0.0 ? 0.05 * range : 0.05;
}

DensityField density_field(std::span<const Point> positions, std::span<const double> weights,
                           std::size_t grid_resolution, double bandwidth,
                           double margin_bandwidths) {
  if (!(bandwidth > 0.0)) throw Error(ErrorKind::InvalidArgument, "bandwidth must be > 0");
  if (grid_resolution < 2) throw Error(ErrorKind::InvalidArgument, "grid_resolution must be >= 2");
  if (positions.size() != weights.size()) {
    throw Error(ErrorKind::InvalidArgument, "positions and weights sizes differ");
  }
  DensityField field;
  field.columns = grid_resolution;
  field.rows = grid_resolution;
  field.bandwidth = bandwidth;
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  if (!positions.empty()) {
    xmin = xmax = positions[0].x;
    ymin = ymax = positions[0].y;
    for (const auto& p : positions) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  const double margin = margin_bandwidths * bandwidth;
  field.x_min = xmin - margin;
  field.x_max = xmax + margin;
  field.y_min = ymin - margin;
  field.y_max = ymax + margin;
  field.values.assign(field.rows * field.columns, 0.0);

  const double inv_two_h2 = 1.0 / (2.0 * bandwidth * bandwidth);
  for (std::size_t r = 0; r < field.rows; ++r) {
    const double y = field.y_at(r);
    for (std::size_t c = 0; c < field.columns; ++c) {
      const double x = field.x_at(c);
      double sum = 0.0;
      for (std::size_t i = 0; i < positions.size(); ++i) {
        const double dx = x - positions[i].x;
        const double dy = y - positions[i].y;
        sum += weights[i] * std::exp(-(dx * dx + dy * dy) * inv_two_h2);
      }
      field.values[r * field.columns + c] = sum;
    }
  }
  return field;
}

void write_density_pgm(std::ostream& out, const DensityField& field) {
  const double peak =
      field.values.empty() ? 0.0 : *std::max_element(field.values.begin(), field.values.end());
  out << "P5\n" << field.columns << ' ' << field.rows << "\n255\n";
  for (std::size_t r = field.rows; r-- > 0;) {
    for (std::size_t c = 0; c < field.columns; ++c) {
      const double v = peak > 0.0 ? field.at(r, c) / peak : 0.0;
      out.put(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
    }
  }
}

void write_density_json(std::ostream& out, const DensityField& field) {
  nlohmann::ordered_json j;
  j["bounds"] = {{"x_min", field.x_min},
                 {"x_max", field.x_max},
                 {"y_min", field.y_min},
                 {"y_max", field.y_max}};
  j["bandwidth"] = field.bandwidth;
  j["rows"] = field.rows;
  j["columns"] = field.columns;
  auto grid = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < field.rows; ++r) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < field.columns; ++c) row.push_back(field.at(r, c));
    grid.push_back(std::move(row));
  }
  j["grid"] = std::move(grid);
  out << j.dump();
}

}  // namespace scimap
