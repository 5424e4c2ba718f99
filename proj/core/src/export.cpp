#include "topohex/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace topohex {

namespace {

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("export: cannot open '" + path +
                             "' for writing");
  }
  return out;
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

void render_svg(const HexMesh& mesh, const Eigen::VectorXd& xphys,
                const RenderSpec& spec) {
  if (xphys.size() != mesh.nelem) {
    throw std::invalid_argument("export: density vector size mismatch");
  }
  double minx = 0.0, maxx = 0.0, miny = 0.0, maxy = 0.0;
  if (mesh.nnode > 0) {
    minx = maxx = mesh.coords[0][0];
    miny = maxy = mesh.coords[0][1];
    for (const auto& c : mesh.coords) {
      minx = std::min(minx, c[0]);
      maxx = std::max(maxx, c[0]);
      miny = std::min(miny, c[1]);
      maxy = std::max(maxy, c[1]);
    }
  }
  const double s = spec.scale;
  const double width = (maxx - minx) * s;
  const double height = (maxy - miny) * s;

  auto out = open_or_throw(spec.path);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << fixed4(width) << "\" height=\"" << fixed4(height)
      << "\" viewBox=\"0 0 " << fixed4(width) << ' ' << fixed4(height)
      << "\">\n";
  for (int e = 0; e < mesh.nelem; ++e) {
    const double level = std::clamp(1.0 - xphys[e], 0.0, 1.0);
    const int grey = static_cast<int>(std::lround(255.0 * level));
    out << "<polygon points=\"";
    for (int i = 0; i < 6; ++i) {
      const auto& c = mesh.coords[mesh.conn[e][i]];
      if (i > 0) out << ' ';
      out << fixed4((c[0] - minx) * s) << ',' << fixed4((maxy - c[1]) * s);
    }
    out << "\" fill=\"rgb(" << grey << ',' << grey << ',' << grey << ")\"";
    if (spec.stroke) {
      out << " stroke=\"black\" stroke-width=\"" << fixed4(0.05 * s) << "\"";
    }
    out << "/>\n";
  }
  out << "</svg>\n";
  if (!out.good()) {
    throw std::runtime_error("export: write to '" + spec.path + "' failed");
  }
}

void write_density_csv(const HexMesh& mesh, const Eigen::VectorXd& xphys,
                       const std::string& path) {
  if (xphys.size() != mesh.nelem) {
    throw std::invalid_argument("export: density vector size mismatch");
  }
  auto out = open_or_throw(path);
  out.precision(std::numeric_limits<double>::max_digits10);
  out << "element_id,centroid_x,centroid_y,density\n";
  for (int e = 0; e < mesh.nelem; ++e) {
    out << e + 1 << ',' << mesh.centroids[e][0] << ',' << mesh.centroids[e][1]
        << ',' << xphys[e] << '\n';
  }
  if (!out.good()) {
    throw std::runtime_error("export: write to '" + path + "' failed");
  }
}

void write_history_csv(const std::vector<IterationRecord>& history,
                       const std::string& path) {
  auto out = open_or_throw(path);
  out.precision(std::numeric_limits<double>::max_digits10);
  out << "iteration,compliance,volume_fraction,change\n";
  for (const auto& rec : history) {
    out << rec.iter << ',' << rec.compliance << ',' << rec.volume_fraction
        << ',' << rec.change << '\n';
  }
  if (!out.good()) {
    throw std::runtime_error("export: write to '" + path + "' failed");
  }
}

}  // namespace topohex
