#include "rel/model_io.hpp"

#include <fstream>
#include <utility>

#include <json.hpp>

#include "rel/errors.hpp"
#include "rel/lifedist.hpp"

namespace rel {

namespace {

using nlohmann::json;

std::optional<double> get_number(const json& obj, const std::string& key, const std::string& where,
                                 std::vector<std::string>& violations) {
  if (!obj.contains(key)) {
    violations.push_back(where + ": missing \"" + key + "\"");
    return std::nullopt;
  }
  if (!obj.at(key).is_number()) {
    violations.push_back(where + ": \"" + key + "\" must be a number");
    return std::nullopt;
  }
  return obj.at(key).get<double>();
}

std::optional<LifeDistribution> parse_distribution(const json& dist, const std::string& where,
                                                   std::vector<std::string>& violations) {
  if (!dist.is_object()) {
    violations.push_back(where + ": \"distribution\" must be an object");
    return std::nullopt;
  }
  if (!dist.contains("family") || !dist.at("family").is_string()) {
    violations.push_back(where + ": distribution needs a \"family\" string");
    return std::nullopt;
  }
  const std::string family = dist.at("family").get<std::string>();
  DistKind kind;
  if (family == "exponential") {
    kind = DistKind::Exponential;
  } else if (family == "lognormal") {
    kind = DistKind::LogNormal;
  } else if (family == "rayleigh") {
    kind = DistKind::Rayleigh;
  } else {
    violations.push_back(where + ": unknown family \"" + family +
                         "\" (expected exponential, lognormal, or rayleigh)");
    return std::nullopt;
  }

  const bool has_params = dist.contains("parameters");
  const bool has_moments = dist.contains("moments");
  if (has_params == has_moments) {
    violations.push_back(where + ": distribution needs exactly one of \"parameters\" or"
                                 " \"moments\"");
    return std::nullopt;
  }

  try {
    if (has_moments) {
      const json& m = dist.at("moments");
      if (!m.is_object()) {
        violations.push_back(where + ": \"moments\" must be an object");
        return std::nullopt;
      }
      const auto mean = get_number(m, "mean", where, violations);
      const auto variance = get_number(m, "variance", where, violations);
      if (!mean || !variance) return std::nullopt;
      return from_moments(kind, {*mean, *variance});
    }

    const json& p = dist.at("parameters");
    if (!p.is_object()) {
      violations.push_back(where + ": \"parameters\" must be an object");
      return std::nullopt;
    }
    switch (kind) {
      case DistKind::Exponential: {
        const auto rate = get_number(p, "rate", where, violations);
        if (!rate) return std::nullopt;
        return LifeDistribution(Exponential{*rate});
      }
      case DistKind::LogNormal: {
        const auto mu = get_number(p, "mu", where, violations);
        const auto sigma = get_number(p, "sigma", where, violations);
        if (!mu || !sigma) return std::nullopt;
        return LifeDistribution(LogNormal{*mu, *sigma});
      }
      case DistKind::Rayleigh: {
        const auto scale = get_number(p, "scale", where, violations);
        if (!scale) return std::nullopt;
        return LifeDistribution(Rayleigh{*scale});
      }
    }
  } catch (const std::invalid_argument& e) {
    violations.push_back(where + ": " + e.what());
  } catch (const std::domain_error& e) {
    violations.push_back(where + ": " + e.what());
  }
  return std::nullopt;
}

std::optional<RbdNode> parse_structure(const json& node, const std::string& where,
                                       std::vector<std::string>& violations) {
  if (!node.is_object()) {
    violations.push_back(where + ": structure node must be an object");
    return std::nullopt;
  }
  const bool has_ref = node.contains("ref");
  const bool has_series = node.contains("series");
  const bool has_parallel = node.contains("parallel");
  if (int(has_ref) + int(has_series) + int(has_parallel) != 1) {
    violations.push_back(where + ": structure node needs exactly one of \"ref\", \"series\","
                                 " \"parallel\"");
    return std::nullopt;
  }

  if (has_ref) {
    if (!node.at("ref").is_string()) {
      violations.push_back(where + ": \"ref\" must be a component name string");
      return std::nullopt;
    }
    return RbdNode::leaf(node.at("ref").get<std::string>());
  }

  const char* key = has_series ? "series" : "parallel";
  const json& arr = node.at(key);
  if (!arr.is_array()) {
    violations.push_back(where + ": \"" + key + "\" must be an array");
    return std::nullopt;
  }
  std::vector<RbdNode> children;
  children.reserve(arr.size());
  bool complete = true;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    auto child =
        parse_structure(arr[i], where + "." + key + "[" + std::to_string(i) + "]", violations);
    if (child) {
      children.push_back(std::move(*child));
    } else {
      complete = false;
    }
  }
  if (!complete) return std::nullopt;
  return has_series ? RbdNode::series(std::move(children))
                    : RbdNode::parallel(std::move(children));
}

json structure_to_json(const RbdNode& node) {
  switch (node.kind()) {
    case RbdNode::Kind::Leaf:
      return json{{"ref", node.component()}};
    case RbdNode::Kind::Series:
    case RbdNode::Kind::Parallel: {
      json children = json::array();
      for (const auto& child : node.children()) {
        children.push_back(structure_to_json(child));
      }
      const char* key = node.kind() == RbdNode::Kind::Series ? "series" : "parallel";
      return json{{key, std::move(children)}};
    }
  }
  return {};  // unreachable
}

json distribution_to_json(const LifeDistribution& dist) {
  switch (dist.kind()) {
    case DistKind::Exponential: {
      const auto& p = std::get<Exponential>(dist.params());
      return json{{"family", "exponential"}, {"parameters", {{"rate", p.rate}}}};
    }
    case DistKind::LogNormal: {
      const auto& p = std::get<LogNormal>(dist.params());
      return json{{"family", "lognormal"}, {"parameters", {{"mu", p.mu}, {"sigma", p.sigma}}}};
    }
    case DistKind::Rayleigh: {
      const auto& p = std::get<Rayleigh>(dist.params());
      return json{{"family", "rayleigh"}, {"parameters", {{"scale", p.scale}}}};
    }
  }
  return {};  // unreachable
}

}  // namespace

ModelFile load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open model file '" + path.string() + "'");
  }

  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError({std::string("model file is not valid JSON: ") + e.what()});
  }

  std::vector<std::string> violations;
  if (!doc.is_object()) {
    throw ValidationError({"model file root must be a JSON object"});
  }

  std::vector<Component> components;
  if (!doc.contains("components") || !doc.at("components").is_array()) {
    violations.push_back("model file needs a \"components\" array");
  } else {
    const json& arr = doc.at("components");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "components[" + std::to_string(i) + "]";
      const json& entry = arr[i];
      if (!entry.is_object()) {
        violations.push_back(where + ": must be an object");
        continue;
      }
      std::string name;
      if (!entry.contains("name") || !entry.at("name").is_string()) {
        violations.push_back(where + ": needs a \"name\" string");
      } else {
        name = entry.at("name").get<std::string>();
      }
      if (!entry.contains("distribution")) {
        violations.push_back(where + ": needs a \"distribution\"");
        continue;
      }
      auto dist = parse_distribution(entry.at("distribution"),
                                     where + (name.empty() ? "" : " ('" + name + "')"),
                                     violations);
      if (!name.empty() && dist) {
        components.push_back({std::move(name), std::move(*dist)});
      }
    }
  }

  std::optional<RbdNode> structure;
  if (!doc.contains("structure")) {
    violations.push_back("model file needs a \"structure\"");
  } else {
    structure = parse_structure(doc.at("structure"), "structure", violations);
  }

  std::optional<Grid> grid;
  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    if (!g.is_object()) {
      violations.push_back("\"grid\" must be an object");
    } else {
      const auto t_max = get_number(g, "t_max", "grid", violations);
      const auto steps = get_number(g, "steps", "grid", violations);
      if (steps && !g.at("steps").is_number_integer()) {
        violations.push_back("grid: \"steps\" must be an integer");
      } else if (t_max && steps) {
        try {
          grid.emplace(*t_max, static_cast<int>(*steps));
        } catch (const std::invalid_argument& e) {
          violations.push_back(std::string("grid: ") + e.what());
        }
      }
    }
  }

  std::vector<double> deadlines;
  if (doc.contains("deadlines")) {
    const json& d = doc.at("deadlines");
    if (!d.is_array()) {
      violations.push_back("\"deadlines\" must be an array of times");
    } else {
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (!d[i].is_number() || d[i].get<double>() < 0.0) {
          violations.push_back("deadlines[" + std::to_string(i) +
                               "] must be a nonnegative number");
        } else {
          deadlines.push_back(d[i].get<double>());
        }
      }
    }
  }

  int retransmissions = 0;
  if (doc.contains("retransmissions")) {
    const json& r = doc.at("retransmissions");
    if (!r.is_number_integer() || r.get<int>() < 0) {
      violations.push_back("\"retransmissions\" must be an integer >= 0");
    } else {
      retransmissions = r.get<int>();
    }
  }

  // Structural checks only make sense once every piece parsed; a missing
  // distribution would otherwise cascade into bogus unknown-name reports.
  if (violations.empty() && structure) {
    auto model_violations = SystemModel::check(components, *structure);
    violations.insert(violations.end(), model_violations.begin(), model_violations.end());
  }
  if (!violations.empty()) {
    throw ValidationError(std::move(violations));
  }

  return ModelFile{SystemModel(std::move(components), std::move(*structure)), grid,
                   std::move(deadlines), retransmissions};
}

std::string to_canonical_json(const ModelFile& m) {
  json components = json::array();
  for (const auto& c : m.model.components()) {
    components.push_back({{"name", c.name}, {"distribution", distribution_to_json(c.dist)}});
  }
  json doc{{"components", std::move(components)},
           {"structure", structure_to_json(m.model.structure())}};
  if (m.grid) {
    doc["grid"] = {{"t_max", m.grid->t_max()}, {"steps", m.grid->steps()}};
  }
  if (!m.deadlines.empty()) {
    doc["deadlines"] = m.deadlines;
  }
  if (m.retransmissions > 0) {
    doc["retransmissions"] = m.retransmissions;
  }
  return doc.dump(2) + "\n";
}

}  // namespace rel
