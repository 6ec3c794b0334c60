#pragma once

#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "scimap/cooccurrence.hpp"
#include "scimap/corpus.hpp"
#include "scimap/layout.hpp"

namespace scimap {

/// Fractional date of one record: year + (month - 0.5) / 12, or year + 0.5
/// when the month is unknown. nullopt without a year.
std::optional<double> fractional_date(const BibRecord& record);

/// Mean fractional date over the records whose ids are in `record_ids`.
/// nullopt when none of them is dated.
std::optional<double> average_pub_date(const std::set<std::string>& record_ids,
                                       const std::vector<BibRecord>& records);

struct OverlayScores {
  std::vector<std::optional<double>> scores;
  std::vector<std::optional<double>> normalized;  // in [0, 1]
};

/// Linear-interpolation percentile of the present values, p in [0, 100].
double percentile(std::vector<double> values, double p);

/// Per-node average publication date, plus scores clamped to their 2nd..98th
/// percentile range and mapped onto [0, 1].
OverlayScores overlay_scores(const CooccurrenceNetwork& net, const std::vector<BibRecord>& records);

/// Labels whose score is strictly greater than `cutoff`.
std::set<std::string> emerging_filter(const std::vector<std::string>& labels,
                                      const std::vector<std::optional<double>>& scores,
                                      double cutoff);

struct DensityField {
  std::size_t columns = 0;
  std::size_t rows = 0;
  std::vector<double> values;  // row-major, rows * columns, row 0 at y_min
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
  double bandwidth = 0.0;

  double at(std::size_t row, std::size_t column) const { return values[row * columns + column]; }
  double x_at(std::size_t column) const;
  double y_at(std::size_t row) const;
  double cell_area() const;
};

/// 0.05 * max(x range, y range); 0.05 when all points coincide.
double default_bandwidth(std::span<const Point> positions);

/// Gaussian kernel sum sum_i w_i exp(-||p - x_i||^2 / (2 h^2)) on a square
/// grid_resolution x grid_resolution lattice covering every node plus a
/// margin of `margin_bandwidths` * h on each side.
/// Throws Error{InvalidArgument} for bandwidth <= 0, grid_resolution < 2, or
/// mismatched sizes.
DensityField density_field(std::span<const Point> positions, std::span<const double> weights,
                           std::size_t grid_resolution, double bandwidth,
                           double margin_bandwidths = 4.0);

/// Binary PGM (P5), scaled to 0..255 by the field maximum; top row is y_max.
void write_density_pgm(std::ostream& out, const DensityField& field);
void write_density_json(std::ostream& out, const DensityField& field);

}  // namespace scimap
