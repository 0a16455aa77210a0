#pragma once

#include <string>

#include "pisr/instance.hpp"
#include "pisr/plan.hpp"

namespace pisr {

// Static SVG of the instance and its routes: depot square, task circles
// (revisit-constrained tasks double-ringed and labelled with their R), one
// closed polyline per cycle in a distinct stroke. Byte-deterministic.
std::string render_plan_svg(const Instance& instance, const RoutePlan& plan);

}  // namespace pisr
