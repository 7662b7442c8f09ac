#pragma once

#include <vector>

#include "qmld/rational.hpp"

namespace qmld {

/// System of closed linear constraints a.x <= b over exact rationals.
struct LinearSystem {
  std::size_t nvars = 0;
  std::vector<std::vector<Rat>> rows;  // coefficient vectors
  std::vector<Rat> rhs;

  explicit LinearSystem(std::size_t n) : nvars(n) {}
  void add_le(std::vector<Rat> a, Rat b);
  void add_ge(std::vector<Rat> a, const Rat& b);
  void add_eq(const std::vector<Rat>& a, const Rat& b);
};

struct LPResult {
  enum class Status { Infeasible, Unbounded, Optimal };
  Status status = Status::Infeasible;
  Rat value;                // min of the objective when Optimal
  std::vector<Rat> point;   // witness attaining the min when Optimal
};

/// Exact minimization of c.x over {A x <= b} by Fourier-Motzkin elimination.
/// Returns Infeasible / Unbounded (below) / Optimal with a witness point.
LPResult lp_minimize(const LinearSystem& sys, const std::vector<Rat>& objective);

/// Feasibility of {A x <= b}; optionally yields a witness.
bool lp_feasible(const LinearSystem& sys, std::vector<Rat>* witness = nullptr);

/// A direction r with A r <= 0 and c.r < 0 (normalized to the unit box),
/// if one exists: the certificate that min c.x is unbounded below.
bool lp_descent_ray(const LinearSystem& sys, const std::vector<Rat>& objective,
                    std::vector<Rat>* ray);

}  // namespace qmld
