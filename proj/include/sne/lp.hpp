#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sne {

// Dense two-phase primal simplex with Bland's rule. Only meant for the tiny
// LPs this library produces (a handful of rows, up to a few hundred columns);
// Bland's rule keeps it deterministic and cycle-free.
//
// Solves: maximize c.x subject to A x = b, x >= 0, with b >= 0 required.
struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded } status;
  double objective = 0.0;
  std::vector<double> x;
};

class LpSolver {
 public:
  LpSolver(std::vector<std::vector<double>> a, std::vector<double> b,
           std::vector<double> c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    rows_ = a_.size();
    cols_ = c_.size();
    for (std::size_t r = 0; r < rows_; ++r) {
      if (a_[r].size() != cols_) throw std::invalid_argument("lp: ragged matrix");
      if (b_[r] < 0) throw std::invalid_argument("lp: rhs must be nonnegative");
    }
  }

  LpResult solve() {
    // Phase 1: artificial basis.
    const std::size_t total = cols_ + rows_;
    tab_.assign(rows_, std::vector<double>(total + 1, 0.0));
    basis_.resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t j = 0; j < cols_; ++j) tab_[r][j] = a_[r][j];
      tab_[r][cols_ + r] = 1.0;
      tab_[r][total] = b_[r];
      basis_[r] = cols_ + r;
    }
    std::vector<double> phase1_cost(total, 0.0);
    for (std::size_t j = cols_; j < total; ++j) phase1_cost[j] = -1.0;
    double obj1 = run(phase1_cost, total, /*allow_artificial=*/true);
    if (obj1 < -kTol) return {LpResult::Status::Infeasible, 0.0, {}};
    evict_artificials();

    std::vector<double> cost(total, 0.0);
    for (std::size_t j = 0; j < cols_; ++j) cost[j] = c_[j];
    double obj = run(cost, total, /*allow_artificial=*/false);
    if (unbounded_) return {LpResult::Status::Unbounded, 0.0, {}};

    std::vector<double> x(cols_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r)
      if (basis_[r] < cols_) x[basis_[r]] = tab_[r].back();
    return {LpResult::Status::Optimal, obj, std::move(x)};
  }

 private:
  static constexpr double kTol = 1e-10;

  // Iterates to optimality for the given cost vector; returns the objective.
  double run(const std::vector<double>& cost, std::size_t total,
             bool allow_artificial) {
    unbounded_ = false;
    for (;;) {
      // Reduced costs cbar_j = c_j - c_B . B^{-1} A_j.
      std::size_t enter = total;
      for (std::size_t j = 0; j < total; ++j) {
        if (!allow_artificial && j >= cols_) continue;
        bool basic = false;
        for (std::size_t r = 0; r < rows_; ++r)
          if (basis_[r] == j) { basic = true; break; }
        if (basic) continue;
        double cbar = cost[j];
        for (std::size_t r = 0; r < rows_; ++r)
          cbar -= cost[basis_[r]] * tab_[r][j];
        if (cbar > kTol) { enter = j; break; }  // Bland: first improving index
      }
      if (enter == total) break;

      std::size_t leave = rows_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        if (tab_[r][enter] > kTol) {
          double ratio = tab_[r].back() / tab_[r][enter];
          if (ratio < best_ratio - kTol ||
              (ratio < best_ratio + kTol &&
               (leave == rows_ || basis_[r] < basis_[leave]))) {
            best_ratio = ratio;
            leave = r;
          }
        }
      }
      if (leave == rows_) {
        unbounded_ = true;
        break;
      }
      pivot(leave, enter);
    }
    double obj = 0.0;
    for (std::size_t r = 0; r < rows_; ++r)
      obj += cost[basis_[r]] * tab_[r].back();
    return obj;
  }

  void pivot(std::size_t prow, std::size_t pcol) {
    const double p = tab_[prow][pcol];
    for (double& v : tab_[prow]) v /= p;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == prow) continue;
      const double f = tab_[r][pcol];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < tab_[r].size(); ++j)
        tab_[r][j] -= f * tab_[prow][j];
    }
    basis_[prow] = pcol;
  }

  // After phase 1, artificials may linger in the basis at level zero; pivot
  // them out on any usable original column, or drop redundant rows.
  void evict_artificials() {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < cols_) continue;
      std::size_t pcol = cols_;
      for (std::size_t j = 0; j < cols_; ++j)
        if (std::abs(tab_[r][j]) > kTol) { pcol = j; break; }
      if (pcol < cols_) {
        pivot(r, pcol);
      } else {
        tab_.erase(tab_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --rows_;
        --r;
      }
    }
  }

  std::vector<std::vector<double>> a_;
  std::vector<double> b_;
  std::vector<double> c_;
  std::vector<std::vector<double>> tab_;
  std::vector<std::size_t> basis_;
  std::size_t rows_ = 0, cols_ = 0;
  bool unbounded_ = false;
};

}  // namespace sne
