#include "pisr/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pisr/errors.hpp"

namespace pisr {

namespace {

std::string fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string instance_to_json(const Instance& instance) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"depot\": {\"x\": " << fixed6(instance.depot_x) << ", \"y\": "
      << fixed6(instance.depot_y) << "},\n";
  out << "  \"n_v\": " << instance.n_v << ",\n";
  out << "  \"revisit_limits\": {";
  bool first = true;
  for (const auto& [id, r] : instance.revisit_limits) {  // std::map: numeric key order
    if (!first) out << ", ";
    out << "\"" << id << "\": " << fixed6(r);
    first = false;
  }
  out << "},\n";
  if (instance.seed) out << "  \"seed\": " << *instance.seed << ",\n";
  out << "  \"speed\": " << fixed6(instance.speed) << ",\n";
  out << "  \"tasks\": [\n";
  for (std::size_t i = 0; i < instance.tasks.size(); ++i) {
    const Task& t = instance.tasks[i];
    out << "    {\"id\": " << t.id << ", \"service\": " << fixed6(t.service)
        << ", \"x\": " << fixed6(t.x) << ", \"y\": " << fixed6(t.y) << "}"
        << (i + 1 < instance.tasks.size() ? "," : "") << "\n";
  }
  out << "  ],\n";
  out << "  \"version\": 1\n";
  out << "}\n";
  return out.str();
}

std::string instance_hash(const Instance& instance) {
  return fnv1a_hex(instance_to_json(instance));
}

std::string plan_to_json(const RoutePlan& plan, const std::string& hash) {
  const RoutePlan ordered = canonical_plan(plan);
  std::ostringstream out;
  out << "{\n  \"cycles\": [";
  for (std::size_t k = 0; k < ordered.cycles.size(); ++k) {
    out << "[";
    for (std::size_t j = 0; j < ordered.cycles[k].size(); ++j)
      out << ordered.cycles[k][j] << (j + 1 < ordered.cycles[k].size() ? ", " : "");
    out << "]" << (k + 1 < ordered.cycles.size() ? ", " : "");
  }
  out << "],\n";
  out << "  \"instance_hash\": \"" << hash << "\",\n";
  out << "  \"version\": 1\n";
  out << "}\n";
  return out.str();
}

Instance instance_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("instance JSON parse error: ") + e.what());
  }
  try {
    Instance inst;
    if (j.value("version", 1) != 1) throw IoError("unsupported instance file version");
    inst.depot_x = j.at("depot").at("x").get<double>();
    inst.depot_y = j.at("depot").at("y").get<double>();
    inst.speed = j.value("speed", 1.0);
    inst.n_v = j.at("n_v").get<int>();
    if (j.contains("seed")) inst.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& jt : j.at("tasks")) {
      Task t;
      t.id = jt.at("id").get<int>();
      t.x = jt.at("x").get<double>();
      t.y = jt.at("y").get<double>();
      t.service = jt.value("service", 0.0);
      inst.tasks.push_back(t);
    }
    std::sort(inst.tasks.begin(), inst.tasks.end(),
              [](const Task& a, const Task& b) { return a.id < b.id; });
    if (j.contains("revisit_limits"))
      for (const auto& [key, val] : j.at("revisit_limits").items())
        inst.revisit_limits[std::stoi(key)] = val.get<double>();
    finalize_instance(inst);
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("instance JSON schema error: ") + e.what());
  }
}

PlanFile plan_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("plan JSON parse error: ") + e.what());
  }
  try {
    PlanFile pf;
    if (j.value("version", 1) != 1) throw IoError("unsupported plan file version");
    pf.instance_hash = j.value("instance_hash", "");
    for (const auto& jc : j.at("cycles")) {
      std::vector<int> cycle;
      for (const auto& id : jc) cycle.push_back(id.get<int>());
      pf.plan.cycles.push_back(std::move(cycle));
    }
    return pf;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("plan JSON schema error: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed for " + path);
}

Instance load_instance(const std::string& path) { return instance_from_json(read_file(path)); }

PlanFile load_plan(const std::string& path) { return plan_from_json(read_file(path)); }

}  // namespace pisr
