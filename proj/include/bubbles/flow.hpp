#ifndef BUBBLES_FLOW_HPP
#define BUBBLES_FLOW_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "bubbles/variation.hpp"

namespace bubbles {

struct FlowParams {
  int max_steps = 500;
  enum class StepRule { Fixed, Backtracking } step_rule = StepRule::Backtracking;
  double initial_step = 0.05;          // fraction of mesh scale per unit curvature
  double volume_projection_tol = 1e-9; // relative volume error after each step
  double convergence_residual_rel = 0.002;
  int remesh_interval = 0;             // 0 disables remeshing
  std::uint64_t seed = 0;
};

struct FlowTraceRow {
  int step = 0;
  double area = 0;
  double residual_rel = 0;
  std::vector<double> vol_err;  // relative, per region
  double step_size = 0;
};

enum class FlowStatus { Converged, MaxSteps, MeshDegeneracy };

struct FlowResult {
  Cluster cluster;
  std::vector<FlowTraceRow> trace;
  FlowStatus status = FlowStatus::MaxSteps;
};

// G_A minus its orthogonal projection onto span{G_Vi}: the steepest
// volume-preserving descent direction. Sets *rank_deficient when the
// volume gradients are linearly dependent (pseudo-inverse fallback).
GradientField projectVolumePreserving(const GradientField& area_grad,
                                      const std::vector<GradientField>& vol_grads,
                                      bool* rank_deficient = nullptr);

// Volume-constrained area descent. Junction vertices move with the shared
// vertex; backtracking rejects steps that increase total area; a Newton
// loop on the volume gradients restores the target volumes after every
// accepted step. Deterministic for fixed inputs.
FlowResult evolve(const Cluster& cluster, const FlowParams& params);

void writeTraceCsv(std::ostream& os, const std::vector<FlowTraceRow>& trace);

}  // namespace bubbles

#endif
