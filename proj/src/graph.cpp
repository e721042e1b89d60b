#include "dpdo/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dpdo {

using BoolMat = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

StochasticityReport validate_doubly_stochastic(const WeightMatrix& m,
                                               double tol) {
  const Mat& A = m.entries;
  if (A.rows() != A.cols()) {
    throw ParameterError("weight matrix must be square, got " +
                         std::to_string(A.rows()) + "x" +
                         std::to_string(A.cols()));
  }
  StochasticityReport rep;
  const int n = m.nodes();
  for (int i = 0; i < n; ++i) {
    if (std::abs(A.row(i).sum() - 1.0) > tol) rep.bad_rows.push_back(i);
    if (std::abs(A.col(i).sum() - 1.0) > tol) rep.bad_cols.push_back(i);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (A(i, j) < 0.0 || A(i, j) > 1.0) rep.bad_entries.push_back(i * n + j);
    }
  }
  rep.ok = rep.bad_rows.empty() && rep.bad_cols.empty() && rep.bad_entries.empty();
  if (!rep.ok) {
    std::ostringstream os;
    os << "not doubly stochastic:";
    for (int r : rep.bad_rows) os << " row " << r;
    for (int c : rep.bad_cols) os << " col " << c;
    if (!rep.bad_entries.empty()) os << " (" << rep.bad_entries.size() << " entries out of [0,1])";
    rep.message = os.str();
  }
  return rep;
}

WeightSchedule::WeightSchedule(std::vector<WeightMatrix> matrices,
                               SchedulePolicy policy)
    : matrices_(std::move(matrices)), policy_(policy) {
  if (matrices_.empty()) throw ParameterError("schedule needs >= 1 matrix");
  nodes_ = matrices_.front().nodes();
  double min_positive = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < matrices_.size(); ++k) {
    const WeightMatrix& m = matrices_[k];
    if (m.nodes() != nodes_) {
      throw ParameterError("schedule matrices disagree on node count");
    }
    StochasticityReport rep = validate_doubly_stochastic(m);
    if (!rep.ok) {
      throw ParameterError("schedule matrix " + std::to_string(k) + ": " +
                           rep.message);
    }
    for (int i = 0; i < nodes_; ++i) {
      for (int j = 0; j < nodes_; ++j) {
        const double w = m.entries(i, j);
        if (w > 0.0) min_positive = std::min(min_positive, w);
      }
    }
  }
  if (!std::isfinite(min_positive)) {
    throw ParameterError("schedule has no positive weights");
  }
  // Tightest valid lower bound on positive weights: the paper only posits
  // some a < a_ij(t), so back off the observed minimum by 0.1%.
  a_ = 0.999 * min_positive;
}

const WeightMatrix& WeightSchedule::at(int t) const {
  if (t < 1) throw ParameterError("schedule time index must be >= 1");
  const int len = period();
  if (policy_ == SchedulePolicy::kCyclic) return matrices_[(t - 1) % len];
  return matrices_[std::min(t - 1, len - 1)];
}

namespace {

// Tarjan strongly connected components on the transposed orientation
// (adjacency(i,j): edge j->i). Returns the number of SCCs.
class TarjanScc {
 public:
  explicit TarjanScc(const BoolMat& adj) : adj_(adj), n_(static_cast<int>(adj.rows())) {
    index_.assign(n_, -1);
    low_.assign(n_, 0);
    on_stack_.assign(n_, false);
    for (int v = 0; v < n_; ++v) {
      if (index_[v] < 0) visit(v);
    }
  }

  int components() const { return components_; }

 private:
  void visit(int v) {
    index_[v] = low_[v] = next_++;
    stack_.push_back(v);
    on_stack_[v] = true;
    for (int w = 0; w < n_; ++w) {
      if (!adj_(w, v)) continue;  // edge v -> w
      if (index_[w] < 0) {
        visit(w);
        low_[v] = std::min(low_[v], low_[w]);
      } else if (on_stack_[w]) {
        low_[v] = std::min(low_[v], index_[w]);
      }
    }
    if (low_[v] == index_[v]) {
      ++components_;
      while (true) {
        const int w = stack_.back();
        stack_.pop_back();
        on_stack_[w] = false;
        if (w == v) break;
      }
    }
  }

  const BoolMat& adj_;
  int n_;
  int next_ = 0;
  int components_ = 0;
  std::vector<int> index_, low_;
  std::vector<bool> on_stack_;
  std::vector<int> stack_;
};

}  // namespace

bool strongly_connected(const BoolMat& adjacency) {
  if (adjacency.rows() != adjacency.cols()) {
    throw ParameterError("adjacency must be square");
  }
  if (adjacency.rows() == 1) return true;
  return TarjanScc(adjacency).components() == 1;
}

ConnectivityResult check_B_strong_connectivity(const WeightSchedule& s,
                                               int cap) {
  if (cap < 1) throw ParameterError("connectivity cap must be >= 1");
  const int n = s.nodes();
  const int period = s.period();
  ConnectivityResult result;
  for (int B = 1; B <= cap; ++B) {
    // Aligned windows: block m covers steps (m-1)B+1 .. mB. For a cyclic
    // schedule the block pattern repeats after `period` blocks; the sequence
    // policy is eventually constant, so the same sweep covers it.
    bool feasible = true;
    for (int block = 1; block <= period && feasible; ++block) {
      BoolMat uni = BoolMat::Constant(n, n, false);
      for (int k = (block - 1) * B + 1; k <= block * B; ++k) {
        const Mat& A = s.at(k).entries;
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            if (i != j && A(i, j) > 0.0) uni(i, j) = true;
          }
        }
      }
      if (!strongly_connected(uni)) {
        feasible = false;
        result.failing_block = block;
      }
    }
    if (feasible) {
      result.ok = true;
      result.B = B;
      return result;
    }
  }
  result.ok = false;
  return result;
}

TransitionMatrix transition(const WeightSchedule& s, int from, int to) {
  if (from < 1) throw ParameterError("transition requires s >= 1");
  if (to < from) {
    throw ParameterError("transition requires t >= s, got t=" +
                         std::to_string(to) + " s=" + std::to_string(from));
  }
  TransitionMatrix phi;
  phi.from = from;
  phi.to = to;
  phi.entries = Mat::Identity(s.nodes(), s.nodes());
  for (int k = from; k < to; ++k) {
    phi.entries = s.at(k).entries * phi.entries;  // left-multiplied: A(t-1)...A(s)
  }
  return phi;
}

ContractionConstants contraction_constants(double a, int nodes, int B) {
  if (!(a > 0.0 && a < 1.0)) throw ParameterError("contraction: a must be in (0,1)");
  if (nodes < 2) throw ParameterError("contraction: need at least 2 nodes");
  if (B < 1) throw ParameterError("contraction: B must be >= 1");
  const double e = static_cast<double>(nodes - 1) * B;
  const double pw = std::pow(a, e);  // a^{(N-1)B} in (0,1)
  ContractionConstants cc;
  cc.C = 2.0 * (1.0 + 1.0 / pw) / (1.0 + pw);
  cc.lambda = std::pow(1.0 - pw, 1.0 / e);
  return cc;
}

ContractionConstants contraction_constants(const WeightSchedule& s, int B_cap) {
  ConnectivityResult conn = check_B_strong_connectivity(s, B_cap);
  if (!conn.ok) {
    throw ParameterError("schedule is not B-strongly connected for any B <= " +
                         std::to_string(B_cap));
  }
  return contraction_constants(s.lower_weight_bound(), s.nodes(), conn.B);
}

}  // namespace dpdo
