#pragma once

#include <span>
#include <vector>

namespace mhe {

// Exponent grid beta_k = k/n, k = 1..n. The grid always ends at 1 and the
// spacing is 1/n by construction.
class BetaGrid {
 public:
  explicit BetaGrid(int resolution);

  int resolution() const { return n_; }
  std::size_t size() const { return static_cast<std::size_t>(n_); }
  // 1-based grid index k in [1, n].
  double beta(int k) const { return static_cast<double>(k) / n_; }

 private:
  int n_;
};

// A finite sample {(t_i, X_i)} over which the Holder semi-norm is taken.
// Times must be strictly increasing and span at most 1 (so gap^(-beta) is
// nondecreasing in beta and C(beta_k) is a nondecreasing curve).
class Window {
 public:
  Window(std::vector<double> values, std::vector<double> times);

  std::span<const double> values() const { return values_; }
  std::span<const double> times() const { return times_; }
  std::size_t size() const { return values_.size(); }

  // Uniform sampling at t = (first_index+1)*dt, ..., (first_index+n)*dt.
  static Window uniform(std::span<const double> values, std::size_t first_index,
                        double dt);

 private:
  std::vector<double> values_;
  std::vector<double> times_;
};

struct SemiNormCurve {
  BetaGrid grid;
  std::vector<double> c_values;  // c_values[k-1] = C(beta_k)
};

// Pairwise structure of a window, collapsed by exact time gap: for each
// distinct gap the maximal |X_i - X_j| over pairs at that gap. Evaluating
// max |dX| / gap^beta over the collapsed groups equals the full pair
// enumeration bit-for-bit (dividing by the same positive gap^beta is
// monotone), while the beta grid is swept once per group instead of per pair.
class GapProfile {
 public:
  explicit GapProfile(const Window& window);
  GapProfile(std::span<const double> values, std::span<const double> times);

  double semi_norm(double beta) const;
  bool all_zero() const;

 private:
  // (gap, max |dX| at that gap), gaps ascending.
  std::vector<std::pair<double, double>> groups_;
};

// Discrete Holder semi-norm: max over pairs i != j of |X_i - X_j| / |t_i - t_j|^beta.
// Throws DataError if the window has fewer than 2 points or beta is outside (0, 1].
double semi_norm(const Window& window, double beta);

// C(beta_k) for every grid point; gaps and |dX| are computed once and reused.
SemiNormCurve semi_norm_curve(const Window& window, const BetaGrid& grid);

// Estimates the Holder exponent from the jump of C(beta_k): the steepest
// sustained increase of log C. The score at grid point k compares the mean
// log-increment over the next `span` steps against the mean over the previous
// `span` steps (clipped at the ends, both sides nonempty); the k with the
// largest score is returned, ties toward smaller k. span = 0 picks
// max(1, n/20). With span 1 this is the largest single log-jump, reported at
// its upper index. A floor of 1e-300 inside the log tolerates exact zeros.
// Throws DataError when every C(beta_k) is zero (a constant window carries no
// regularity information).
double estimate_holder_by_jump(const SemiNormCurve& curve, int span = 0);

}  // namespace mhe
