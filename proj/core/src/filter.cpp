#include "topohex/filter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace topohex {

namespace {

void require_mode(const FilterOperator& f, FilterMode expected,
                  const char* op) {
  if (f.mode() != expected) {
    throw std::logic_error(std::string("filter: ") + op +
                           " called with wrong filter mode");
  }
}

}  // namespace

FilterOperator build_filter(const std::vector<std::array<double, 2>>& centroids,
                            double rfill, FilterMode mode) {
  if (!(rfill > 0.0)) {
    throw std::invalid_argument("filter: rfill must be positive");
  }
  const int n = static_cast<int>(centroids.size());
  FilterOperator f;
  f.mode_ = mode;
  f.rfill_ = rfill;
  f.row_start_.assign(n + 1, 0);
  f.row_sums_.assign(n, 0.0);
  if (n == 0) return f;

  // Bin centroids on a grid with cell size rfill: all neighbors of an
  // element live in its own or the eight adjacent cells.
  double minx = centroids[0][0], miny = centroids[0][1];
  double maxx = minx, maxy = miny;
  for (const auto& c : centroids) {
    minx = std::min(minx, c[0]);
    maxx = std::max(maxx, c[0]);
    miny = std::min(miny, c[1]);
    maxy = std::max(maxy, c[1]);
  }
  const int nbx = std::max(1, static_cast<int>((maxx - minx) / rfill) + 1);
  const int nby = std::max(1, static_cast<int>((maxy - miny) / rfill) + 1);
  auto bin_of = [&](const std::array<double, 2>& c) {
    int bx = std::min(nbx - 1, static_cast<int>((c[0] - minx) / rfill));
    int by = std::min(nby - 1, static_cast<int>((c[1] - miny) / rfill));
    return by * nbx + bx;
  };
  std::vector<std::vector<int>> bins(static_cast<std::size_t>(nbx) * nby);
  for (int i = 0; i < n; ++i) bins[bin_of(centroids[i])].push_back(i);

  // Candidate neighbors of j, sorted by index so rows match the pairwise
  // construction entry for entry.
  std::vector<int> candidates;
  auto gather_candidates = [&](int j) {
    candidates.clear();
    const int bx = std::min(nbx - 1, static_cast<int>((centroids[j][0] - minx) / rfill));
    const int by = std::min(nby - 1, static_cast<int>((centroids[j][1] - miny) / rfill));
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int cx = bx + dx, cy = by + dy;
        if (cx < 0 || cx >= nbx || cy < 0 || cy >= nby) continue;
        const auto& cell = bins[static_cast<std::size_t>(cy) * nbx + cx];
        candidates.insert(candidates.end(), cell.begin(), cell.end());
      }
    }
    std::sort(candidates.begin(), candidates.end());
  };

  // Two passes: count nonzeros per row, then fill.
  for (int j = 0; j < n; ++j) {
    gather_candidates(j);
    int count = 0;
    for (int i : candidates) {
      const double dx = centroids[j][0] - centroids[i][0];
      const double dy = centroids[j][1] - centroids[i][1];
      if (rfill - std::sqrt(dx * dx + dy * dy) > 0.0) ++count;
    }
    f.row_start_[j + 1] = count;
  }
  for (int j = 0; j < n; ++j) f.row_start_[j + 1] += f.row_start_[j];
  f.cols_.resize(f.row_start_[n]);
  f.weights_.resize(f.row_start_[n]);

  for (int j = 0; j < n; ++j) {
    gather_candidates(j);
    int at = f.row_start_[j];
    double sum = 0.0;
    for (int i : candidates) {
      const double dx = centroids[j][0] - centroids[i][0];
      const double dy = centroids[j][1] - centroids[i][1];
      const double w = rfill - std::sqrt(dx * dx + dy * dy);
      if (w > 0.0) {
        f.cols_[at] = i;
        f.weights_[at] = w;
        sum += w;
        ++at;
      }
    }
    f.row_sums_[j] = sum;
  }
  return f;
}

Eigen::VectorXd FilterOperator::filter_sensitivities(
    const Eigen::VectorXd& x, const Eigen::VectorXd& dc) const {
  require_mode(*this, FilterMode::sensitivity, "filter_sensitivities");
  const int n = size();
  if (x.size() != n || dc.size() != n) {
    throw std::invalid_argument("filter: vector size mismatch");
  }
  Eigen::VectorXd out(n);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int idx = row_begin(j); idx < row_end(j); ++idx) {
      acc += weights_[idx] * x[cols_[idx]] * dc[cols_[idx]];
    }
    out[j] = acc / (std::max(1e-3, x[j]) * row_sums_[j]);
  }
  return out;
}

Eigen::VectorXd FilterOperator::filter_density(const Eigen::VectorXd& x) const {
  require_mode(*this, FilterMode::density, "filter_density");
  const int n = size();
  if (x.size() != n) {
    throw std::invalid_argument("filter: vector size mismatch");
  }
  Eigen::VectorXd out(n);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int idx = row_begin(j); idx < row_end(j); ++idx) {
      acc += weights_[idx] * x[cols_[idx]];
    }
    out[j] = acc / row_sums_[j];
  }
  return out;
}

Eigen::VectorXd FilterOperator::chainrule_density(
    const Eigen::VectorXd& d) const {
  require_mode(*this, FilterMode::density, "chainrule_density");
  const int n = size();
  if (d.size() != n) {
    throw std::invalid_argument("filter: vector size mismatch");
  }
  // H is symmetric, so the transpose application is a row application of
  // the row-sum-normalized input.
  Eigen::VectorXd out(n);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int idx = row_begin(j); idx < row_end(j); ++idx) {
      acc += weights_[idx] * d[cols_[idx]] / row_sums_[cols_[idx]];
    }
    out[j] = acc;
  }
  return out;
}

}  // namespace topohex
