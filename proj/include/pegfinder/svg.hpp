#pragma once

#include <string>

#include "pegfinder/report.hpp"

namespace pegfinder {

/// SVG 1.1 drawing of a result: the input curve (or sphere outline) and the
/// figures of the document. Planar inputs get one 800x800 view; space curves
/// and spheres get the xy and xz projections side by side. Output depends
/// only on the document.
std::string render_svg(const ResultDocument& doc);

}  // namespace pegfinder
