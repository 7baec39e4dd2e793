#pragma once

#include <map>
#include <string>
#include <vector>

#include "ustitch/scenario.hpp"

namespace ustitch {

struct RenderOptions {
  double margin = 8.0;     // meters of padding around the scene bounds
  double scale = 6.0;      // pixels per meter
  int ellipse_stride = 5;  // draw every nth 1-sigma ellipse
};

/// Deterministic SVG of one scenario: goal candidates, the prediction with
/// its 1-sigma ellipses, the ground truth, and each method's spatial path.
/// Identical inputs give byte-identical output.
std::string render_scene(
    const ScenarioRecord& record,
    const std::map<std::string, std::vector<Point2>>& method_paths,
    const RenderOptions& options = {});

}  // namespace ustitch
