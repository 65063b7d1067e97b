// Copyright 2026 The mrbounds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mrbounds/model_file.hpp"

#include <charconv>
#include <nlohmann/json.hpp>

#include "mrbounds/errors.hpp"

namespace mrbounds {

using nlohmann::json;

Offset parse_offset(std::string_view s) {
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) throw ConfigError("offset '" + std::string(s) + "' is not du,dv");
  auto parse = [&](std::string_view part) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || v < -1 || v > 1) {
      throw ConfigError("offset '" + std::string(s) + "' is not du,dv with entries in {-1,0,1}");
    }
    return v;
  };
  return {parse(s.substr(0, comma)), parse(s.substr(comma + 1))};
}

std::string write_model_file(const ModelFile& f) {
  const Grid& g = f.kernel.grid();
  json doc;
  doc["L1"] = g.l1;
  doc["L2"] = g.l2;
  if (!f.model.empty()) doc["model"] = f.model;
  json comps = json::object();
  for (CComponent k : all_c_components()) {
    json row = json::object();
    for (Offset u : neighbors(k)) {
      if (u == kStay) continue;
      if (const double p = f.kernel.prob(k, u); p != 0.0) row[to_string(u)] = p;
    }
    comps[std::to_string(k.value())] = row;
  }
  doc["components"] = comps;
  if (f.measure) doc["measure"] = {{"rho", f.measure->rho}, {"sigma", f.measure->sigma}};
  return doc.dump(2) + "\n";
}

ModelFile read_model_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("model file: ") + e.what());
  }
  try {
    const Grid g{doc.at("L1").get<int>(), doc.at("L2").get<int>()};
    require_grid(g, kMinBuffer);
    TransitionKernel w(g);
    for (const auto& [key, row] : doc.at("components").items()) {
      int kv = 0;
      const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), kv);
      if (ec != std::errc() || ptr != key.data() + key.size() || kv < 1 || kv > 9) {
        throw ConfigError("model file: component '" + key + "' is not in 1..9");
      }
      for (const auto& [off, p] : row.items()) {
        const Offset u = parse_offset(off);
        if (u == kStay) continue;
        try {
          w = w.with(CComponent(kv), u, p.get<double>());
        } catch (const DomainError& e) {
          throw ConfigError(std::string("model file: ") + e.what());
        }
      }
    }
    ModelFile f{std::move(w), doc.value("model", std::string()), std::nullopt};
    if (doc.contains("measure")) {
      const auto& m = doc.at("measure");
      f.measure = make_measure(m.at("rho").get<double>(), m.at("sigma").get<double>(), g);
    }
    return f;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("model file: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("model file: ") + e.what());
  }
}

}  // namespace mrbounds
