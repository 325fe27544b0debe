#pragma once

#include <string>

#include "fuzzyvis/embed.hpp"
#include "fuzzyvis/histogram.hpp"
#include "fuzzyvis/observables.hpp"

namespace fuzzyvis::svg {

// All writers emit a fixed 640 x 480 frame with a 60 px margin, deterministic
// coordinates (no timestamps, no randomness), so repeated runs produce
// byte-identical files.

// 2-D scatter of the first two embedding coordinates; point fill encodes the
// per-point correlation (blue = 1 down to light gray = 0 or less).
std::string scatter_svg(const EmbeddingResult& emb, const std::string& title);

// Bar chart of a distance histogram.
std::string histogram_svg(const Histogram& h, const std::string& title);

// Log-x line plot of the spectral-dimension and variance curves with a
// vertical marker at the probe scale t_d.
std::string curves_svg(const ObservableCurves& curves, double t_d, const std::string& title);

}  // namespace fuzzyvis::svg
