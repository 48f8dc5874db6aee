#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rel/lifedist.hpp"

namespace rel {

/// Named RBD leaf binding a label to a life distribution.
struct Component {
  std::string name;
  LifeDistribution dist;

  bool operator==(const Component&) const = default;
};

/// Recursive block-diagram structure: a leaf referencing a component by
/// name, a series group (all children required), or a parallel group (any
/// one child suffices).
class RbdNode {
 public:
  enum class Kind { Leaf, Series, Parallel };

  static RbdNode leaf(std::string component_name);
  static RbdNode series(std::vector<RbdNode> children);
  static RbdNode parallel(std::vector<RbdNode> children);

  Kind kind() const { return kind_; }
  const std::string& component() const { return component_; }
  const std::vector<RbdNode>& children() const { return children_; }

  bool operator==(const RbdNode&) const = default;

 private:
  RbdNode(Kind kind, std::string component, std::vector<RbdNode> children)
      : kind_(kind), component_(std::move(component)), children_(std::move(children)) {}

  Kind kind_;
  std::string component_;
  std::vector<RbdNode> children_;
};

/// A validated RBD over independent components. Construction throws
/// ValidationError carrying every invariant violation; instances are
/// immutable and safe to share across threads.
class SystemModel {
 public:
  /// All invariant violations for the pair, in a deterministic order;
  /// empty means the pair forms a valid model.
  static std::vector<std::string> check(const std::vector<Component>& components,
                                        const RbdNode& structure);

  SystemModel(std::vector<Component> components, RbdNode structure);

  const std::vector<Component>& components() const { return components_; }
  const RbdNode& structure() const { return structure_; }

  /// Throws std::invalid_argument for names not declared in the model.
  const Component& component(std::string_view name) const;
  std::size_t component_index(std::string_view name) const;

  /// True when the structure contains no parallel groups, so the system
  /// hazard is the sum of the component hazards.
  bool series_only() const { return series_only_; }

  /// R_w(t): leaf survival, product over series children,
  /// 1 - prod(1 - R) over parallel children.
  double survival(double t) const;

  /// R_w(t) with one component's survival pinned to a constant (0 or 1),
  /// realizing the perfect/failed substitutions behind importance measures.
  double survival_pinned(std::string_view name, double pinned, double t) const;

  /// f_w(t) = -dR_w/dt. Series-only structures use the analytic identity
  /// R_w(t) * sum of component hazards; structures with parallel groups
  /// fall back to numerical differentiation (magnitudes below 1e-12 and
  /// negative finite-difference noise clamp to 0).
  double pdf(double t) const;

  /// f_w(t) / R_w(t). Throws NumericError once R_w(t) <= 1e-12.
  double hazard(double t) const;

  /// Probability the transmission fails before the deadline: 1 - R_w.
  double failure_before(double deadline) const;

  /// A new model with `copies` statistically independent clones of this
  /// structure in parallel; clone i carries component names suffixed "#i".
  SystemModel with_retransmission(int copies) const;

 private:
  double eval(const RbdNode& node, double t, const std::string* pin_name, double pin_value) const;

  std::vector<Component> components_;
  RbdNode structure_;
  std::unordered_map<std::string, std::size_t> index_;
  bool series_only_;
};

}  // namespace rel
