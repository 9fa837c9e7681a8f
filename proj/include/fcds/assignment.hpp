#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fcds/virtual_graph.hpp"

namespace fcds {

/// Class labels run 1..t; 0 marks a copy that has not chosen yet.
using ClassId = std::uint32_t;
inline constexpr ClassId kUnassigned = 0;

struct ProtocolParams {
  std::uint32_t classes = 1;  // t
  std::uint32_t layers = 1;   // L
  std::uint64_t seed = 0;
  /// Safety cap for one component-identification flood; 0 picks
  /// 3L * (3Ln + 2), enough for any component diameter.
  std::uint64_t max_component_rounds = 0;

  /// t = max(1, ceil(kappa / 2)), L = max(1, ceil(multiplier * log2 n)).
  static ProtocolParams defaults(std::size_t n, std::size_t kappa, double layer_multiplier, std::uint64_t seed);

  std::uint64_t component_round_cap(std::size_t n) const;
  void validate() const;
};

/// Map from virtual node to class, indexed by VirtualIndex. A class, once
/// assigned, is never changed.
class ClassAssignment {
 public:
  ClassAssignment() = default;
  ClassAssignment(std::size_t real_nodes, std::uint32_t layers);

  std::size_t size() const { return classes_.size(); }
  std::uint32_t layers() const { return layers_; }
  std::size_t real_nodes() const { return layers_ == 0 ? 0 : classes_.size() / (3 * layers_); }

  ClassId at(VirtualIndex idx) const { return classes_.at(idx); }
  bool assigned(VirtualIndex idx) const { return classes_.at(idx) != kUnassigned; }
  /// Throws std::logic_error if the copy already has a class.
  void assign(VirtualIndex idx, ClassId cls);

  bool operator==(const ClassAssignment&) const = default;

 private:
  std::uint32_t layers_ = 0;
  std::vector<ClassId> classes_;
};

/// Every lower-layer copy picks a class uniformly from 1..t.
/// Purely local, so it costs no rounds.
ClassAssignment assign_lower_layers(const ProtocolParams& params, const VirtualGraph& vg);

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  bool operator==(const Rational&) const = default;
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

/// Fractional packing in the real network: node v gives class i the
/// weight (copies of v in class i) / 3L.
class FcdsPacking {
 public:
  FcdsPacking() = default;
  FcdsPacking(std::size_t real_nodes, std::uint32_t classes, std::uint32_t denominator);

  std::size_t real_nodes() const { return real_nodes_; }
  std::uint32_t classes() const { return classes_; }
  std::uint32_t denominator() const { return denominator_; }

  std::uint32_t numerator(RealNodeId v, ClassId cls) const { return numerators_.at(offset(v, cls)); }
  void set_numerator(RealNodeId v, ClassId cls, std::uint32_t num) { numerators_.at(offset(v, cls)) = num; }
  Rational weight(RealNodeId v, ClassId cls) const { return {numerator(v, cls), denominator_}; }

  bool operator==(const FcdsPacking&) const = default;

 private:
  std::size_t offset(RealNodeId v, ClassId cls) const;

  std::size_t real_nodes_ = 0;
  std::uint32_t classes_ = 0;
  std::uint32_t denominator_ = 1;
  std::vector<std::uint32_t> numerators_;
};

/// Throws std::invalid_argument if any copy is unassigned or out of 1..classes.
FcdsPacking extract_packing(const ClassAssignment& assignment, const VirtualGraph& vg, std::uint32_t classes);

}  // namespace fcds
