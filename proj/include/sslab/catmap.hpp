#pragma once

#include <cstdint>
#include <vector>

namespace sslab {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Axis-aligned rectangle inside the unit square, half-open.
struct Box {
  double x0 = 0.0, y0 = 0.0;
  double width = 1.0, height = 1.0;

  bool contains(const Point& p) const {
    return p.x >= x0 && p.x < x0 + width && p.y >= y0 && p.y < y0 + height;
  }
  double area() const { return width * height; }
};

// Point gas on the torus.
struct CatEnsemble {
  std::vector<Point> points;
};

// Equal-area square grains over the unit square.
struct GrainGrid {
  int per_side = 10;

  int grain_count() const { return per_side * per_side; }
  int grain_of(const Point& p) const;
};

// (x, y) -> (x + y, x + 2y) mod 1. Area preserving and invertible.
Point cat_step(const Point& p);
Point cat_step_inverse(const Point& p);

CatEnsemble evolve(const CatEnsemble& e, int steps);

// Plug-in coarse-grained entropy -sum p log p (natural log).
double entropy(const CatEnsemble& e, const GrainGrid& grid);

std::vector<int> occupancy(const CatEnsemble& e, const GrainGrid& grid);

// Conditioning on both ends of the trajectory: points uniform in
// initial_box whose image after `horizon` steps lands in final_box.
struct TwoTimeProblem {
  Box initial_box;
  Box final_box;
  int horizon = 19;
  int n_target = 250;
  std::uint64_t seed = 0;
  long candidate_budget = 10'000'000;

  void validate() const;
};

struct TwoTimeSolution {
  CatEnsemble constrained;     // survivors of the forward filter
  CatEnsemble unconstrained;   // leading candidates of the same stream
  long candidates_tried = 0;   // candidates consumed for the survivors
  double acceptance_rate() const {
    return static_cast<double>(constrained.points.size()) /
           static_cast<double>(candidates_tried);
  }
};

// Forward rejection sampling; deterministic for a fixed seed regardless
// of thread count (candidates are generated in counter-indexed chunks
// and accepted in candidate order).
TwoTimeSolution solve_two_time(const TwoTimeProblem& prob,
                               unsigned n_threads = 1);

struct EntropyTraces {
  std::vector<int> times;            // 0..horizon
  std::vector<double> constrained;
  std::vector<double> unconstrained;
};

EntropyTraces entropy_experiment(const TwoTimeProblem& prob,
                                 const GrainGrid& grid,
                                 unsigned n_threads = 1);

}  // namespace sslab
