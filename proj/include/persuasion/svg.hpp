#pragma once

#include <optional>
#include <string>
#include <vector>

#include "persuasion/problem_io.hpp"

namespace persuasion {

struct ChordHighlight {
  double x1 = 0.0, y1 = 0.0, x2 = 0.0, y2 = 0.0;
};

// Self-contained 800x500 SVG: axes, the sender utility curve, the
// unconstrained and constrained concavification curves, optional chord
// highlight.  Output is deterministic (fixed-precision coordinates).
std::string render_sweep_svg(const std::vector<SweepRow>& rows,
                             const std::optional<ChordHighlight>& chord = std::nullopt);

}  // namespace persuasion
