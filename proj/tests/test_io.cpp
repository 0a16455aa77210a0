#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "pisr/errors.hpp"
#include "pisr/io.hpp"

using namespace pisr;
using pisrtest::random_instance;

TEST_CASE("instance json round trip preserves the canonical form") {
  const Instance inst = random_instance(31, 8, 3);
  const std::string text = instance_to_json(inst);
  const Instance back = instance_from_json(text);
  CHECK(instance_to_json(back) == text);
  CHECK(instance_hash(back) == instance_hash(inst));
}

TEST_CASE("instance json accepts shuffled keys and task order") {
  const char* text = R"({
    "version": 1,
    "tasks": [{"x": 3.0, "id": 2, "y": 0.0}, {"id": 1, "x": 1.0, "y": 0.0}],
    "n_v": 2,
    "speed": 1.0,
    "depot": {"y": 0.0, "x": 0.0},
    "revisit_limits": {"2": 9.5}
  })";
  const Instance inst = instance_from_json(text);
  CHECK(inst.n_tasks() == 2);
  CHECK(inst.task(1).x == 1.0);
  CHECK(inst.task(2).x == 3.0);
  CHECK(inst.revisit_limit_or_inf(2) == 9.5);
  CHECK(std::isinf(inst.revisit_limit_or_inf(1)));
}

TEST_CASE("instance json rejects schema violations") {
  CHECK_THROWS_AS(instance_from_json("{"), IoError);
  CHECK_THROWS_AS(instance_from_json("{\"version\":1}"), IoError);
  // non-contiguous ids
  CHECK_THROWS_AS(instance_from_json(R"({"depot":{"x":0,"y":0},"n_v":1,
    "tasks":[{"id":1,"x":0,"y":0},{"id":3,"x":1,"y":1}],"version":1})"),
                  IoError);
  // bad speed
  CHECK_THROWS_AS(instance_from_json(R"({"depot":{"x":0,"y":0},"n_v":1,"speed":0,
    "tasks":[{"id":1,"x":0,"y":0}],"version":1})"),
                  IoError);
}

TEST_CASE("plan json round trip and hash binding") {
  const Instance inst = random_instance(5, 6, 2);
  const RoutePlan plan = {{{3, 1}, {2, 5, 4, 6}}};
  const std::string text = plan_to_json(plan, instance_hash(inst));
  const PlanFile pf = plan_from_json(text);
  CHECK(pf.instance_hash == instance_hash(inst));
  // canonical order sorts cycles by first task id
  CHECK(pf.plan.cycles[0] == std::vector<int>{2, 5, 4, 6});
  CHECK(pf.plan.cycles[1] == std::vector<int>{3, 1});
  CHECK(plan_to_json(pf.plan, pf.instance_hash) == text);
}

TEST_CASE("fnv1a hash is the documented function") {
  // reference value for the empty string (FNV-1a 64 offset basis)
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") != fnv1a_hex("b"));
}
