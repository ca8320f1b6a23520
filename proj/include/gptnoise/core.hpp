#pragma once

// State spaces, effects and observables shared by every backend.
//
// A polytope theory stores its vertices as matrix columns; effects are affine
// functionals x -> linear.dot(x) + offset. Quantum effects are Hermitian
// operators evaluated by tr[rho E]. Process effects are operators on
// H_A (x) H_B evaluated on Choi operators by tr[Omega M].

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gptnoise/linalg.hpp"

namespace gptnoise {

inline constexpr double kNormalizationTol = 1e-9;

enum class SpaceKind { Polytope, Quantum, Process };

std::string_view to_string(SpaceKind kind);

struct PolytopeSpace {
  RMatrix vertices;  // ambient_dim x vertex_count
  Index hull_dim = 0;
  // Columns z with vertices * z = 0 and sum(z) = 0: the affine relations
  // any vector of vertex values must respect.
  RMatrix affine_relations;

  Index ambient_dim() const { return vertices.rows(); }
  Index vertex_count() const { return vertices.cols(); }
};

struct QuantumSpace {
  Index dim = 0;
};

struct ProcessSpace {
  Index dim_a = 0;
  Index dim_b = 0;
};

class StateSpace {
 public:
  static StateSpace polytope(const RMatrix& vertices);
  static StateSpace quantum(Index dim);
  static StateSpace process(Index dim_a, Index dim_b);

  SpaceKind kind() const;
  const PolytopeSpace& as_polytope() const;
  const QuantumSpace& as_quantum() const;
  const ProcessSpace& as_process() const;

  /// Dimension of effect operators (quantum/process); 0 for polytopes.
  Index operator_dim() const;

  friend bool operator==(const StateSpace& a, const StateSpace& b);

 private:
  std::variant<PolytopeSpace, QuantumSpace, ProcessSpace> data_;
};

struct PolytopeEffect {
  RVector linear;
  double offset = 0.0;
};

struct QuantumEffect {
  HermitianMatrix op;
};

struct ProcessEffect {
  HermitianMatrix op;
};

class Effect {
 public:
  Effect() = default;
  Effect(PolytopeEffect e) : data_(std::move(e)) {}
  Effect(QuantumEffect e) : data_(std::move(e)) {}
  Effect(ProcessEffect e) : data_(std::move(e)) {}

  static Effect zero(const StateSpace& space);
  /// Unit effect u. Process spaces have no unique unit; use process_unit.
  static Effect unit(const StateSpace& space);
  static Effect process_unit(const HermitianMatrix& rho, Index dim_b);

  SpaceKind kind() const;
  bool matches(const StateSpace& space) const;

  const PolytopeEffect& as_polytope() const;
  /// Operator of a quantum or process effect.
  const HermitianMatrix& op() const;

  friend Effect operator+(const Effect& a, const Effect& b);
  friend Effect operator-(const Effect& a, const Effect& b);
  friend Effect operator*(double s, const Effect& a);

 private:
  std::variant<PolytopeEffect, QuantumEffect, ProcessEffect> data_;
};

struct ConvexWeights {
  RVector weights;
};

struct DensityOperator {
  HermitianMatrix rho;
};

/// Choi operator of a channel L(H_A) -> L(H_B), unnormalized convention
/// Omega = sum_ij |i><j| (x) Phi(|i><j|), so Tr_B Omega = 1_A.
struct ChoiState {
  Index dim_a = 0;
  Index dim_b = 0;
  HermitianMatrix omega;
};

using State = std::variant<ConvexWeights, DensityOperator, ChoiState>;

/// Throws InvalidState (or SpaceMismatch) unless `s` is a state of `space`.
void validate_state(const StateSpace& space, const State& s, double tol = kNormalizationTol);

/// Convex weights over the vertices reproducing an ambient point; throws
/// InvalidState when the point lies outside the hull.
ConvexWeights weights_from_point(const StateSpace& space, const RVector& point, double tol = kNormalizationTol);

/// Probability e(s), clamped to [0,1] after checking it lies within tolerance.
double evaluate(const Effect& e, const StateSpace& space, const State& s);

/// Raw affine value, without validation or clamping.
double evaluate_raw(const Effect& e, const StateSpace& space, const State& s);

/// Values of a polytope effect at every vertex.
RVector vertex_values(const Effect& e, const StateSpace& space);

/// Affine effect matching the given vertex values; AffineInconsistency when
/// the values break an affine relation among the vertices.
Effect polytope_effect_from_vertex_values(const StateSpace& space, const RVector& values, double tol = kNormalizationTol);

class Observable {
 public:
  Observable() = default;
  /// Outcomes need not be sorted; they are sorted together with the effects.
  Observable(StateSpace space, std::vector<int> outcomes, std::vector<Effect> effects);

  const StateSpace& space() const { return space_; }
  const std::vector<int>& outcomes() const { return outcomes_; }
  const std::vector<Effect>& effects() const { return effects_; }
  Index size() const { return static_cast<Index>(outcomes_.size()); }

  std::optional<Index> index_of(int outcome) const;
  const Effect& effect(int outcome) const;  // OutcomeMismatch if absent

 private:
  StateSpace space_ = StateSpace::quantum(1);
  std::vector<int> outcomes_;
  std::vector<Effect> effects_;
};

/// Outcome probabilities, in outcome order.
RVector evaluate(const Observable& a, const State& s);

/// State-independent distribution on a finite outcome set.
class TrivialObservable {
 public:
  TrivialObservable(std::vector<int> outcomes, RVector probs);

  static TrivialObservable uniform(std::vector<int> outcomes);

  const std::vector<int>& outcomes() const { return outcomes_; }
  const RVector& probs() const { return probs_; }
  double prob(int outcome) const;

 private:
  std::vector<int> outcomes_;
  RVector probs_;
};

/// Effects p_x u. Process spaces use p_x xi (x) 1 with xi maximally mixed
/// unless another density operator is supplied.
Observable embed_trivial(const TrivialObservable& t, const StateSpace& space);
Observable embed_trivial(const TrivialObservable& t, const StateSpace& space, const HermitianMatrix& xi);

/// C_z = t A_z + (1-t) B_z on the union of outcome sets.
Observable mix(const Observable& a, const Observable& b, double t);

struct ValidationIssue {
  std::string what;
  std::optional<int> outcome;
  double magnitude = 0.0;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

ValidationReport validate_observable(const Observable& a, double tol = kNormalizationTol);

/// rho with sum_x A_x = rho (x) 1 (computed as Tr_B(sum)/dim_b); Process only.
HermitianMatrix process_normalization(const Observable& a);

/// Distance between effects as functionals on the state space: maximum
/// deviation over vertices (polytope), max-abs entry (quantum), and for
/// process effects the max-abs entry after removing the omega (x) 1 part
/// with traceless omega, which no channel can detect.
double effect_distance(const Effect& a, const Effect& b, const StateSpace& space);

/// Max effect distance over the union of outcomes (absent outcomes are zero).
double observable_distance(const Observable& a, const Observable& b);

}  // namespace gptnoise
