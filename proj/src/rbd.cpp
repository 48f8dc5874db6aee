#include "rel/rbd.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "rel/errors.hpp"
#include "rel/numerics.hpp"

namespace rel {

RbdNode RbdNode::leaf(std::string component_name) {
  return RbdNode(Kind::Leaf, std::move(component_name), {});
}

RbdNode RbdNode::series(std::vector<RbdNode> children) {
  return RbdNode(Kind::Series, {}, std::move(children));
}

RbdNode RbdNode::parallel(std::vector<RbdNode> children) {
  return RbdNode(Kind::Parallel, {}, std::move(children));
}

namespace {

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

void collect_structure_violations(const RbdNode& node,
                                  const std::set<std::string>& declared,
                                  std::multiset<std::string>& referenced,
                                  std::vector<std::string>& out) {
  switch (node.kind()) {
    case RbdNode::Kind::Leaf:
      if (!declared.count(node.component())) {
        out.push_back("unknown component '" + node.component() + "' referenced by a leaf");
      }
      referenced.insert(node.component());
      break;
    case RbdNode::Kind::Series:
      if (node.children().empty()) {
        out.push_back("series group must have at least one child");
      }
      break;
    case RbdNode::Kind::Parallel:
      if (node.children().size() < 2) {
        out.push_back("parallel group must have at least two children");
      }
      break;
  }
  for (const auto& child : node.children()) {
    collect_structure_violations(child, declared, referenced, out);
  }
}

bool contains_parallel(const RbdNode& node) {
  if (node.kind() == RbdNode::Kind::Parallel) return true;
  return std::any_of(node.children().begin(), node.children().end(), contains_parallel);
}

RbdNode suffix_names(const RbdNode& node, const std::string& suffix) {
  if (node.kind() == RbdNode::Kind::Leaf) {
    return RbdNode::leaf(node.component() + suffix);
  }
  std::vector<RbdNode> children;
  children.reserve(node.children().size());
  for (const auto& child : node.children()) {
    children.push_back(suffix_names(child, suffix));
  }
  return node.kind() == RbdNode::Kind::Series ? RbdNode::series(std::move(children))
                                              : RbdNode::parallel(std::move(children));
}

}  // namespace

std::vector<std::string> SystemModel::check(const std::vector<Component>& components,
                                            const RbdNode& structure) {
  std::vector<std::string> violations;

  std::set<std::string> declared;
  for (const auto& c : components) {
    if (c.name.empty() || is_blank(c.name)) {
      violations.push_back("component name must not be empty or whitespace-only");
      continue;
    }
    if (!declared.insert(c.name).second) {
      violations.push_back("duplicate component name '" + c.name + "'");
    }
  }

  std::multiset<std::string> referenced;
  collect_structure_violations(structure, declared, referenced, violations);

  // Independence assumption: every declared component appears exactly once.
  for (const auto& name : declared) {
    const auto n = referenced.count(name);
    if (n == 0) {
      violations.push_back("component '" + name + "' declared but never referenced");
    } else if (n > 1) {
      violations.push_back("duplicate reference: component '" + name + "' appears " +
                           std::to_string(n) + " times in the structure");
    }
  }
  return violations;
}

SystemModel::SystemModel(std::vector<Component> components, RbdNode structure)
    : components_(std::move(components)),
      structure_(std::move(structure)),
      series_only_(!contains_parallel(structure_)) {
  auto violations = check(components_, structure_);
  if (!violations.empty()) {
    throw ValidationError(std::move(violations));
  }
  for (std::size_t i = 0; i < components_.size(); ++i) {
    index_.emplace(components_[i].name, i);
  }
}

const Component& SystemModel::component(std::string_view name) const {
  return components_[component_index(name)];
}

std::size_t SystemModel::component_index(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) {
    throw std::invalid_argument("unknown component '" + std::string(name) + "'");
  }
  return it->second;
}

double SystemModel::eval(const RbdNode& node, double t, const std::string* pin_name,
                         double pin_value) const {
  switch (node.kind()) {
    case RbdNode::Kind::Leaf:
      if (pin_name != nullptr && node.component() == *pin_name) {
        return pin_value;
      }
      return components_[index_.at(node.component())].dist.survival(t);
    case RbdNode::Kind::Series: {
      double prod = 1.0;
      for (const auto& child : node.children()) {
        prod *= eval(child, t, pin_name, pin_value);
      }
      return prod;
    }
    case RbdNode::Kind::Parallel: {
      double all_fail = 1.0;
      for (const auto& child : node.children()) {
        all_fail *= 1.0 - eval(child, t, pin_name, pin_value);
      }
      return 1.0 - all_fail;
    }
  }
  return 0.0;  // unreachable
}

double SystemModel::survival(double t) const {
  if (!(t >= 0.0)) {
    throw std::domain_error("time must be nonnegative");
  }
  return eval(structure_, t, nullptr, 0.0);
}

double SystemModel::survival_pinned(std::string_view name, double pinned, double t) const {
  if (!(t >= 0.0)) {
    throw std::domain_error("time must be nonnegative");
  }
  component_index(name);  // reject unknown names
  const std::string pin(name);
  return eval(structure_, t, &pin, pinned);
}

double SystemModel::pdf(double t) const {
  if (!(t >= 0.0)) {
    throw std::domain_error("time must be nonnegative");
  }
  double value;
  if (series_only_) {
    double hazard_sum = 0.0;
    for (const auto& c : components_) {
      hazard_sum += c.dist.hazard(t);
    }
    value = survival(t) * hazard_sum;
  } else {
    value = -derivative([this](double u) { return survival(u); }, t);
  }
  if (std::abs(value) < 1e-12) return 0.0;
  return std::max(value, 0.0);
}

double SystemModel::hazard(double t) const {
  const double r = survival(t);
  if (r <= 1e-12) {
    throw NumericError("system hazard undefined at t = " + std::to_string(t) +
                       ": survival fell below 1e-12");
  }
  if (series_only_) {
    double hazard_sum = 0.0;
    for (const auto& c : components_) {
      hazard_sum += c.dist.hazard(t);
    }
    return hazard_sum;
  }
  return pdf(t) / r;
}

double SystemModel::failure_before(double deadline) const {
  if (!(deadline >= 0.0)) {
    throw std::domain_error("deadline must be nonnegative");
  }
  return 1.0 - survival(deadline);
}

SystemModel SystemModel::with_retransmission(int copies) const {
  if (copies < 2) {
    throw std::invalid_argument("with_retransmission requires copies >= 2");
  }
  std::vector<Component> components;
  components.reserve(components_.size() * static_cast<std::size_t>(copies));
  std::vector<RbdNode> branches;
  branches.reserve(static_cast<std::size_t>(copies));
  for (int i = 1; i <= copies; ++i) {
    const std::string suffix = "#" + std::to_string(i);
    for (const auto& c : components_) {
      components.push_back({c.name + suffix, c.dist});
    }
    branches.push_back(suffix_names(structure_, suffix));
  }
  return SystemModel(std::move(components), RbdNode::parallel(std::move(branches)));
}

}  // namespace rel
