#ifndef UOT_IO_HPP
#define UOT_IO_HPP

#include <string>
#include <vector>

#include "uot/geometry.hpp"
#include "uot/laguerre.hpp"

namespace uot {

/// Raster CSV: ny rows of nx comma-separated values, the first row at y_min,
/// 17 significant digits (lossless round trip). A JSON header
/// {domain, nx, ny} is written next to it at <path>.json.
void save_raster(const std::string& path, const GridDensity& g);
GridDensity load_raster(const std::string& path);

/// Tessellation labels as an integer CSV raster (residual = 0).
void save_labels(const std::string& path, const Tessellation& t);

/// Discrete measure CSV with header "x,y,mass".
void save_points(const std::string& path, const DiscreteMeasure& nu);
DiscreteMeasure load_points(const std::string& path, const Domain& domain);

/// Density from a spec string: "uniform" (level 1), "gaussian-bump"
/// (1 + exp(-|x|^2 / (2 (4 pi)^2)), default domain [-4pi, 4pi]^2), or
/// "csv:<path>" (ignores the passed domain/resolution).
GridDensity load_density(const std::string& spec, const Domain& domain, int nx, int ny);

/// The gaussian-bump default domain.
Domain bump_domain();

}  // namespace uot

#endif
