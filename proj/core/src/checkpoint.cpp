// Copyright 2026 The Selene Authors
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

#include "selene/checkpoint.hpp"

#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "selene/errors.hpp"

namespace selene {

using nlohmann::json;

std::string checkpoint_to_string(const SeleneModel& model) {
  json doc;
  doc["format"] = "selene-checkpoint";
  doc["version"] = 1;
  doc["config"] = {
      {"attr_dims", model.config().attr_dims},
      {"struct_dims", model.config().struct_dims},
      {"struct_activation", to_string(model.config().struct_activation)},
  };
  json params = json::array();
  for (const Parameter* p : model.parameters()) {
    params.push_back({{"name", p->name},
                      {"rows", p->value.rows()},
                      {"cols", p->value.cols()},
                      {"data", std::vector<double>(p->value.data().begin(), p->value.data().end())}});
  }
  doc["parameters"] = std::move(params);
  return doc.dump(1);
}

SeleneModel checkpoint_from_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("checkpoint: malformed JSON: ") + e.what());
  }
  try {
    if (doc.at("format") != "selene-checkpoint") throw IoError("checkpoint: unknown format");
    if (doc.at("version") != 1) throw IoError("checkpoint: unsupported version");
    ModelConfig config;
    const json& cfg = doc.at("config");
    config.attr_dims = cfg.at("attr_dims").get<std::vector<std::size_t>>();
    config.struct_dims = cfg.at("struct_dims").get<std::vector<std::size_t>>();
    config.struct_activation = parse_activation(cfg.at("struct_activation").get<std::string>());

    SeleneModel model(config, 0);
    std::map<std::string, const json*> by_name;
    for (const json& p : doc.at("parameters")) by_name[p.at("name").get<std::string>()] = &p;
    for (Parameter* p : model.parameters()) {
      auto it = by_name.find(p->name);
      if (it == by_name.end()) throw IoError("checkpoint: missing parameter " + p->name);
      const json& entry = *it->second;
      const auto rows = entry.at("rows").get<std::size_t>();
      const auto cols = entry.at("cols").get<std::size_t>();
      if (rows != p->value.rows() || cols != p->value.cols()) {
        throw IoError("checkpoint: shape mismatch for " + p->name);
      }
      p->value = Matrix(rows, cols, entry.at("data").get<std::vector<double>>());
      p->zero_grad();
    }
    return model;
  } catch (const json::exception& e) {
    throw IoError(std::string("checkpoint: ") + e.what());
  } catch (const DimensionError& e) {
    throw IoError(std::string("checkpoint: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& file, const SeleneModel& model) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write " + file.string());
  out << checkpoint_to_string(model) << '\n';
}

SeleneModel load_checkpoint(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return checkpoint_from_string(buffer.str());
}

}  // namespace selene
