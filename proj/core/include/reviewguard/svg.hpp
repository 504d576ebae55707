#pragma once

#include <string>

#include "reviewguard/rsd.hpp"

namespace reviewguard {

// Self-contained SVG documents; no external stylesheets or scripts.

// Daily review counts as bars over the analysis window, outlier fences as
// dashed lines, spike days circled.
std::string timeline_svg(const BusinessRsd& rsd);

// Box-and-whiskers summary of one polarity's daily counts, with the outlier
// fences drawn outside the whiskers.
std::string box_whisker_svg(const BusinessRsd& rsd, Polarity polarity);

}  // namespace reviewguard
