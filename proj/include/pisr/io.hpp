#pragma once

#include <cstdint>
#include <string>

#include "pisr/instance.hpp"
#include "pisr/plan.hpp"

namespace pisr {

// FNV-1a 64-bit over a byte string, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

// Canonical JSON: objects with sorted keys, floats as fixed 6 decimals,
// tasks sorted by id, revisit-limit keys in numeric order, trailing newline.
// Identical instances serialize byte-for-byte identically.
std::string instance_to_json(const Instance& instance);
std::string plan_to_json(const RoutePlan& plan, const std::string& instance_hash);

// Hash of the canonical serialization; ties plans and models to an instance.
std::string instance_hash(const Instance& instance);

// Parsers accept any key order (and, for instances, any task order).
Instance instance_from_json(const std::string& text);
struct PlanFile {
  RoutePlan plan;
  std::string instance_hash;
};
PlanFile plan_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

Instance load_instance(const std::string& path);
PlanFile load_plan(const std::string& path);

}  // namespace pisr
