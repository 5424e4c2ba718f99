#pragma once

#include <Eigen/Core>
#include <array>
#include <vector>

namespace topohex {

enum class FilterMode { none = 0, sensitivity = 1, density = 2 };

/// Distance-weighted neighborhood operator over element centroids:
/// H[j,i] = max(0, rfill - dist(c_j, c_i)), stored row-compressed, with
/// precomputed row sums. H is symmetric and has rfill on the diagonal.
class FilterOperator {
 public:
  FilterMode mode() const { return mode_; }
  double rfill() const { return rfill_; }
  int size() const { return static_cast<int>(row_start_.size()) - 1; }

  /// Neighbors of row j as (column, weight) spans.
  int row_begin(int j) const { return row_start_[j]; }
  int row_end(int j) const { return row_start_[j + 1]; }
  int col(int idx) const { return cols_[idx]; }
  double weight(int idx) const { return weights_[idx]; }
  double row_sum(int j) const { return row_sums_[j]; }

  /// dc'_j = sum_i H[j,i] x_i dc_i / (max(1e-3, x_j) Hs_j).
  Eigen::VectorXd filter_sensitivities(const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& dc) const;

  /// xphys_j = sum_i H[j,i] x_i / Hs_j.
  Eigen::VectorXd filter_density(const Eigen::VectorXd& x) const;

  /// dx_j = sum_i H[i,j] d_i / Hs_i (adjoint of filter_density).
  Eigen::VectorXd chainrule_density(const Eigen::VectorXd& d) const;

  friend FilterOperator build_filter(
      const std::vector<std::array<double, 2>>& centroids, double rfill,
      FilterMode mode);

 private:
  FilterMode mode_ = FilterMode::none;
  double rfill_ = 0.0;
  std::vector<int> row_start_;
  std::vector<int> cols_;
  std::vector<double> weights_;
  std::vector<double> row_sums_;
};

/// Builds H by spatial binning with cell size rfill; the result matches the
/// pairwise construction weight for weight. Neighbor lists are ordered by
/// element index.
FilterOperator build_filter(const std::vector<std::array<double, 2>>& centroids,
                            double rfill, FilterMode mode);

}  // namespace topohex
