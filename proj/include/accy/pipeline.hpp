#pragma once

// The classify-toric pipeline: every combinatorial and numerical check the
// toolkit knows how to run against one cone, aggregated into a single report.

#include "accy/deform.hpp"
#include "accy/reeb.hpp"
#include "accy/resolve.hpp"
#include "accy/toric.hpp"

#include <json.hpp>

namespace accy {

using Json = nlohmann::ordered_json;

struct ClassifyOptions {
  Rat tol = Rat(1, Int("10000000000"));
  int max_degree = 2;
  int approx_count = 3;
  std::uint64_t seed = 0;
};

struct Report {
  Json body;
  bool ok = true;
  int exit_code = 0;
};

Report classify_toric(const GoodCone& cone, const ClassifyOptions& opt = {});

// shared JSON helpers
Json rat_json(const Rat& q);
Json vec2_json(const Vec2& v);
Json vec3_json(const Vec3& v);

}  // namespace accy
