#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "topohex/mesh.hpp"
#include "topohex/optimizer.hpp"

namespace topohex {

struct RenderSpec {
  std::string path;
  bool stroke = false;
  double scale = 8.0;  // pixels per edge length
};

/// One grayscale polygon per element, fill intensity 1 - xphys
/// (solid renders black). Output is deterministic: fixed element order,
/// coordinates at 4 decimals.
void render_svg(const HexMesh& mesh, const Eigen::VectorXd& xphys,
                const RenderSpec& spec);

/// Rows `element_id,centroid_x,centroid_y,density`, 1-based ids, densities
/// at full precision so a read-back reproduces them bit for bit.
void write_density_csv(const HexMesh& mesh, const Eigen::VectorXd& xphys,
                       const std::string& path);

void write_history_csv(const std::vector<IterationRecord>& history,
                       const std::string& path);

}  // namespace topohex
