#include "sslab/catmap.hpp"

#include <atomic>
#include <cmath>

#include "sslab/decay.hpp"  // error types
#include "sslab/parallel.hpp"
#include "sslab/rng.hpp"

namespace sslab {

namespace {

// Reduce into [0,1): subtract the floor, then clamp a rounded-up 1.0
// back to 0.0 so the half-open invariant survives rounding.
double mod1(double v) {
  double r = v - std::floor(v);
  if (r >= 1.0) r = 0.0;
  return r;
}

constexpr std::uint64_t kCatTag = 0x4341544d4150ULL;
constexpr long kChunk = 8192;

}  // namespace

int GrainGrid::grain_of(const Point& p) const {
  int ix = static_cast<int>(p.x * per_side);
  int iy = static_cast<int>(p.y * per_side);
  if (ix >= per_side) ix = per_side - 1;
  if (iy >= per_side) iy = per_side - 1;
  return ix * per_side + iy;
}

Point cat_step(const Point& p) {
  return {mod1(p.x + p.y), mod1(p.x + 2.0 * p.y)};
}

Point cat_step_inverse(const Point& p) {
  return {mod1(2.0 * p.x - p.y), mod1(p.y - p.x)};
}

CatEnsemble evolve(const CatEnsemble& e, int steps) {
  if (steps < 0) throw ValidationError("evolve: steps must be >= 0");
  CatEnsemble out = e;
  for (auto& p : out.points)
    for (int s = 0; s < steps; ++s) p = cat_step(p);
  return out;
}

std::vector<int> occupancy(const CatEnsemble& e, const GrainGrid& grid) {
  std::vector<int> occ(grid.grain_count(), 0);
  for (const auto& p : e.points) ++occ[grid.grain_of(p)];
  return occ;
}

double entropy(const CatEnsemble& e, const GrainGrid& grid) {
  if (e.points.empty()) throw ValidationError("entropy: empty ensemble");
  const auto occ = occupancy(e, grid);
  const double n = static_cast<double>(e.points.size());
  double s = 0.0;
  for (int c : occ) {
    if (c == 0) continue;
    const double p = c / n;
    s -= p * std::log(p);
  }
  return s < 0.0 ? 0.0 : s;
}

void TwoTimeProblem::validate() const {
  if (initial_box.area() <= 0.0 || final_box.area() <= 0.0)
    throw ValidationError("TwoTimeProblem: boxes need positive area");
  if (horizon < 0) throw ValidationError("TwoTimeProblem: horizon >= 0");
  if (n_target < 1) throw ValidationError("TwoTimeProblem: n_target >= 1");
}

TwoTimeSolution solve_two_time(const TwoTimeProblem& prob, unsigned n_threads) {
  prob.validate();
  TwoTimeSolution sol;
  sol.constrained.points.reserve(prob.n_target);
  sol.unconstrained.points.reserve(prob.n_target);

  const std::size_t n_target = static_cast<std::size_t>(prob.n_target);
  const long n_chunks = (prob.candidate_budget + kChunk - 1) / kChunk;
  const unsigned wave = n_threads > 1 ? 4 * n_threads : 1;

  bool done = false;
  for (long c0 = 0; c0 < n_chunks && !done; c0 += static_cast<long>(wave)) {
    const std::size_t n_wave =
        static_cast<std::size_t>(std::min<long>(wave, n_chunks - c0));
    std::vector<std::vector<Point>> raw(n_wave,
                                        std::vector<Point>(kChunk));
    std::vector<std::vector<char>> hit(n_wave, std::vector<char>(kChunk));
    parallel_for(
        n_wave,
        [&](std::size_t w) {
          SplitMix64 rng(substream_seed(prob.seed, kCatTag,
                                        static_cast<std::uint64_t>(c0 + w)));
          for (long i = 0; i < kChunk; ++i) {
            Point p{prob.initial_box.x0 +
                        prob.initial_box.width * rng.next_double(),
                    prob.initial_box.y0 +
                        prob.initial_box.height * rng.next_double()};
            raw[w][static_cast<std::size_t>(i)] = p;
            Point q = p;
            for (int s = 0; s < prob.horizon; ++s) q = cat_step(q);
            hit[w][static_cast<std::size_t>(i)] =
                prob.final_box.contains(q) ? 1 : 0;
          }
        },
        n_threads);
    // merge in candidate order so the output is schedule independent
    for (std::size_t w = 0; w < n_wave && !done; ++w) {
      for (long i = 0; i < kChunk && !done; ++i) {
        const std::size_t idx = static_cast<std::size_t>(i);
        if (sol.unconstrained.points.size() < n_target)
          sol.unconstrained.points.push_back(raw[w][idx]);
        if (hit[w][idx]) sol.constrained.points.push_back(raw[w][idx]);
        if (sol.constrained.points.size() == n_target) {
          sol.candidates_tried = (c0 + static_cast<long>(w)) * kChunk + i + 1;
          done = true;
        }
      }
    }
  }
  if (sol.constrained.points.size() < static_cast<std::size_t>(prob.n_target))
    throw ResourceError(
        "solve_two_time: candidate budget exhausted, acceptance rate " +
        std::to_string(static_cast<double>(sol.constrained.points.size()) /
                       static_cast<double>(prob.candidate_budget)));
  return sol;
}

EntropyTraces entropy_experiment(const TwoTimeProblem& prob,
                                 const GrainGrid& grid, unsigned n_threads) {
  const TwoTimeSolution sol = solve_two_time(prob, n_threads);
  EntropyTraces tr;
  CatEnsemble c = sol.constrained, u = sol.unconstrained;
  for (int t = 0; t <= prob.horizon; ++t) {
    tr.times.push_back(t);
    tr.constrained.push_back(entropy(c, grid));
    tr.unconstrained.push_back(entropy(u, grid));
    if (t < prob.horizon) {
      c = evolve(c, 1);
      u = evolve(u, 1);
    }
  }
  return tr;
}

}  // namespace sslab
