#include <Eigen/LU>
#include <cmath>
#include <limits>
#include <vector>

#include "zonoreach/numerics.hpp"

namespace zonoreach {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Bounded-variable primal simplex in minimization form.
//
// Variables 0..n-1 are structural with bounds [-u, u]; variables n..n+m-1
// are artificials introduced for the phase-1 start.  The basis inverse is
// kept explicitly (constraint counts here are small) and refreshed
// periodically from scratch to control drift.
class BoxSimplex {
 public:
  BoxSimplex(const Matrix& A, const Vector& b, double u)
      : m_(static_cast<int>(A.rows())), n_(static_cast<int>(A.cols())), b_(b) {
    const int total = n_ + m_;
    cols_ = Matrix(m_, total);
    cols_.leftCols(n_) = A;
    lo_ = Vector::Constant(total, -u);
    hi_ = Vector::Constant(total, u);
    x_ = Vector::Zero(total);
    basic_ = std::vector<bool>(total, false);
    at_upper_ = std::vector<bool>(total, false);
    basis_.resize(m_);

    // Start every structural variable at its lower bound and cover the
    // residual with one signed artificial per row.
    Vector residual = b_;
    for (int j = 0; j < n_; ++j) {
      x_(j) = lo_(j);
      residual -= cols_.col(j) * x_(j);
    }
    for (int i = 0; i < m_; ++i) {
      const double s = residual(i) < 0.0 ? -1.0 : 1.0;
      cols_.col(n_ + i) = s * Vector::Unit(m_, i);
      lo_(n_ + i) = 0.0;
      hi_(n_ + i) = kInf;
      basis_[i] = n_ + i;
      basic_[n_ + i] = true;
      x_(n_ + i) = std::abs(residual(i));
    }
    binv_ = Matrix::Zero(m_, m_);
    for (int i = 0; i < m_; ++i) binv_(i, i) = cols_(i, n_ + i);  // diag(+-1)^-1
  }

  // Minimizes cost^T x from the current basis.  Returns the final value.
  double minimize(const Vector& cost) {
    const double opt_tol = 1e-9 * (1.0 + cost.cwiseAbs().maxCoeff());
    const int max_pivots = 500 + 200 * (n_ + m_);
    int stall = 0;  // consecutive pivots without objective progress
    double last_value = objective(cost);
    for (int pivot = 0; pivot < max_pivots; ++pivot) {
      const Vector y = dual(cost);
      const bool bland = stall > 50;
      int enter = -1;
      double best_score = opt_tol;
      for (int j = 0; j < n_ + m_; ++j) {
        if (basic_[j] || hi_(j) - lo_(j) <= 0.0) continue;
        const double r = cost(j) - y.dot(cols_.col(j));
        const double score = at_upper_[j] ? r : -r;  // improvement rate
        if (score > opt_tol) {
          if (bland) {
            enter = j;
            break;
          }
          if (score > best_score) {
            best_score = score;
            enter = j;
          }
        }
      }
      if (enter < 0) return objective(cost);  // optimal

      step(enter, pivot);

      const double value = objective(cost);
      stall = value < last_value - 1e-13 * (1.0 + std::abs(last_value)) ? 0 : stall + 1;
      last_value = value;
    }
    throw NumericalError("solve_box_lp: pivot cap exceeded.");
  }

  double phase1_gap() const {
    double gap = 0.0;
    for (int i = 0; i < m_; ++i) gap += x_(n_ + i);
    return gap;
  }

  // Pins the artificials at zero before phase 2.
  void pin_artificials() {
    for (int i = 0; i < m_; ++i) hi_(n_ + i) = 0.0;
  }

  Vector structural() const { return x_.head(n_); }

 private:
  double objective(const Vector& cost) const { return cost.dot(x_); }

  Vector dual(const Vector& cost) const {
    Vector cb(m_);
    for (int i = 0; i < m_; ++i) cb(i) = cost(basis_[i]);
    return binv_.transpose() * cb;
  }

  // Moves variable `enter` off its bound as far as the other bounds allow,
  // then either flips it to its opposite bound or pivots it into the basis.
  void step(int enter, int pivot_count) {
    const double dir = at_upper_[enter] ? -1.0 : 1.0;
    const Vector w = binv_ * cols_.col(enter);

    double t = hi_(enter) - lo_(enter);  // bound-to-bound flip distance
    int leave_row = -1;
    double leave_bound = 0.0;
    for (int i = 0; i < m_; ++i) {
      const int k = basis_[i];
      const double coef = -dir * w(i);  // d x_k / d t
      double room = kInf;
      double target = 0.0;
      if (coef > 1e-11) {
        room = (hi_(k) - x_(k)) / coef;
        target = hi_(k);
      } else if (coef < -1e-11) {
        room = (x_(k) - lo_(k)) / (-coef);
        target = lo_(k);
      } else {
        continue;
      }
      if (room < 0.0) room = 0.0;  // numerical dust on a bound
      if (room < t - 1e-13 || (room <= t && (leave_row < 0 || k < basis_[leave_row]))) {
        t = room;
        leave_row = i;
        leave_bound = target;
      }
    }
    if (!std::isfinite(t)) {
      throw NumericalError("solve_box_lp: unbounded direction encountered.");
    }

    // Apply the move to the basic values and the entering variable.
    for (int i = 0; i < m_; ++i) x_(basis_[i]) -= dir * w(i) * t;
    x_(enter) += dir * t;

    if (leave_row < 0) {
      at_upper_[enter] = !at_upper_[enter];  // flip, basis unchanged
      x_(enter) = at_upper_[enter] ? hi_(enter) : lo_(enter);
      return;
    }

    const int leave = basis_[leave_row];
    basic_[leave] = false;
    at_upper_[leave] = leave_bound == hi_(leave);
    x_(leave) = leave_bound;
    basis_[leave_row] = enter;
    basic_[enter] = true;

    // Elementary row update of the basis inverse.
    binv_.row(leave_row) /= w(leave_row);
    for (int i = 0; i < m_; ++i) {
      if (i != leave_row) binv_.row(i) -= w(i) * binv_.row(leave_row);
    }
    if ((pivot_count + 1) % 64 == 0) refactorize();
  }

  // Recomputes the basis inverse (and the basic values) from scratch.
  void refactorize() {
    Matrix B(m_, m_);
    for (int i = 0; i < m_; ++i) B.col(i) = cols_.col(basis_[i]);
    const Eigen::FullPivLU<Matrix> lu(B);
    if (!lu.isInvertible()) {
      throw NumericalError("solve_box_lp: basis matrix became singular.");
    }
    binv_ = lu.inverse();
    Vector rhs = b_;
    for (int j = 0; j < n_ + m_; ++j) {
      if (!basic_[j]) rhs -= cols_.col(j) * x_(j);
    }
    const Vector xb = binv_ * rhs;
    for (int i = 0; i < m_; ++i) x_(basis_[i]) = xb(i);
  }

  int m_, n_;
  Matrix cols_;  // structural columns followed by artificial columns
  Vector b_, lo_, hi_, x_;
  Matrix binv_;
  std::vector<int> basis_;
  std::vector<bool> basic_, at_upper_;
};

void check_lp_inputs(const Vector& objective, const Matrix& Aeq, const Vector& beq,
                     double bound) {
  require_param(bound > 0.0 && std::isfinite(bound),
                "solve_box_lp: bound must be positive and finite.");
  require_dims(Aeq.rows() == beq.size(),
               "solve_box_lp: Aeq row count must match beq length.");
  if (Aeq.rows() > 0) {
    require_dims(Aeq.cols() == objective.size(),
                 "solve_box_lp: Aeq column count must match objective length.");
  }
  require_param(is_finite(Aeq) && is_finite(beq) && is_finite(objective),
                "solve_box_lp: inputs must be finite.");
}

// Runs phase 1 (minimize the artificial mass); true iff feasible.
bool run_phase1(BoxSimplex& simplex, const Vector& beq, int total_vars) {
  Vector phase1_cost = Vector::Zero(total_vars);
  phase1_cost.tail(beq.size()).setOnes();
  simplex.minimize(phase1_cost);
  const double feas_tol = 1e-9 * (1.0 + beq.cwiseAbs().maxCoeff());
  return simplex.phase1_gap() <= feas_tol;
}

}  // namespace

BoxLpResult solve_box_lp(const Vector& objective, const Matrix& Aeq,
                         const Vector& beq, double bound) {
  check_lp_inputs(objective, Aeq, beq, bound);
  const int n = static_cast<int>(objective.size());

  if (Aeq.rows() == 0) {
    // Unconstrained over the box: optimum at the sign vertex.
    BoxLpResult out;
    out.x = Vector(n);
    for (int j = 0; j < n; ++j) out.x(j) = objective(j) >= 0.0 ? bound : -bound;
    out.value = objective.dot(out.x);
    return out;
  }
  if (n == 0) {
    if (beq.cwiseAbs().maxCoeff() > 1e-9) {
      throw InfeasibleError("solve_box_lp: no variables but nonzero right-hand side.");
    }
    return BoxLpResult{Vector(0), 0.0};
  }

  BoxSimplex simplex(Aeq, beq, bound);
  if (!run_phase1(simplex, beq, n + static_cast<int>(Aeq.rows()))) {
    throw InfeasibleError("solve_box_lp: equality constraints are infeasible over the box.");
  }
  simplex.pin_artificials();

  Vector cost = Vector::Zero(n + Aeq.rows());
  cost.head(n) = -objective;  // maximize objective == minimize its negation
  const double value = -simplex.minimize(cost);
  return BoxLpResult{simplex.structural(), value};
}

bool box_lp_feasible(const Matrix& Aeq, const Vector& beq, double bound) {
  check_lp_inputs(Vector::Zero(Aeq.cols()), Aeq, beq, bound);
  if (Aeq.rows() == 0) return true;
  if (Aeq.cols() == 0) return beq.cwiseAbs().maxCoeff() <= 1e-9;
  BoxSimplex simplex(Aeq, beq, bound);
  return run_phase1(simplex, beq, static_cast<int>(Aeq.cols() + Aeq.rows()));
}

}  // namespace zonoreach
