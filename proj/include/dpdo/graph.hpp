#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dpdo/types.hpp"

namespace dpdo {

// One doubly stochastic weight matrix A(t). Row i holds the incoming weights
// of node i: entries(i, j) > 0 means j sends to i.
struct WeightMatrix {
  Mat entries;

  int nodes() const { return static_cast<int>(entries.rows()); }
};

struct StochasticityReport {
  bool ok = false;
  std::vector<int> bad_rows;     // rows whose sum is off by more than tol
  std::vector<int> bad_cols;     // columns whose sum is off
  std::vector<int> bad_entries;  // flattened indices outside [0,1]
  std::string message;
};

// Checks row sums, column sums (tolerance 1e-12) and entry range [0,1].
StochasticityReport validate_doubly_stochastic(const WeightMatrix& m,
                                               double tol = 1e-12);

enum class SchedulePolicy { kCyclic, kSequence };

// Time-varying weight sequence A(1), A(2), ... together with the lower
// positive-weight bound a shared by all matrices. Immutable after
// construction; safe for concurrent reads.
class WeightSchedule {
 public:
  // Validates every matrix. The bound a is inferred as
  // 0.999 * (minimum positive entry over all matrices).
  WeightSchedule(std::vector<WeightMatrix> matrices, SchedulePolicy policy);

  // A(t) for t >= 1. Cyclic policy wraps around; sequence policy clamps to
  // the last matrix once the list is exhausted.
  const WeightMatrix& at(int t) const;

  int nodes() const { return nodes_; }
  int period() const { return static_cast<int>(matrices_.size()); }
  SchedulePolicy policy() const { return policy_; }
  double lower_weight_bound() const { return a_; }
  const std::vector<WeightMatrix>& matrices() const { return matrices_; }

 private:
  std::vector<WeightMatrix> matrices_;
  SchedulePolicy policy_;
  int nodes_;
  double a_;
};

struct ConnectivityResult {
  bool ok = false;
  int B = 0;           // smallest feasible window when ok
  int failing_block = 0;  // 1-based block index that broke the last candidate
};

// Smallest B such that every aligned window of B consecutive steps has a
// strongly connected union graph. Support digraph only (weight > 0), self
// loops ignored. Fails when no B <= cap works.
ConnectivityResult check_B_strong_connectivity(const WeightSchedule& s,
                                               int cap = 16);

// Strong connectivity of a support digraph, Tarjan SCC. adjacency(i, j) true
// means edge j -> i, matching WeightMatrix orientation.
bool strongly_connected(const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& adjacency);

// State transition product Phi(t, s) = A(t-1) ... A(s), Phi(s, s) = I.
struct TransitionMatrix {
  Mat entries;
  int from = 0;  // s
  int to = 0;    // t
};

TransitionMatrix transition(const WeightSchedule& s, int from, int to);

struct ContractionConstants {
  double C = 0.0;
  double lambda = 0.0;
};

// Geometric mixing constants C = 2(1 + a^{-(N-1)B}) / (1 + a^{(N-1)B}) and
// lambda = (1 - a^{(N-1)B})^{1/((N-1)B)}. These are valid upper-bound
// constants but astronomically loose for any nontrivial (N, B); downstream
// reports must not treat them as tight.
ContractionConstants contraction_constants(double a, int nodes, int B);

// Same, with a inferred from the schedule and B computed up to B_cap.
ContractionConstants contraction_constants(const WeightSchedule& s,
                                           int B_cap = 16);

}  // namespace dpdo
