// Derivative-free multi-start search returning many local optima, and its
// two-objective variant with a non-dominated archive.
#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace deflekt::search {

/// Result of one objective evaluation. Feasible points are ranked by `value`
/// (larger is better), infeasible ones by `violation` (smaller is better), and
/// any feasible point beats any infeasible one. `secondary` is the second
/// objective of the Pareto problem (larger is better).
struct Evaluation {
    bool feasible = false;
    double value = -std::numeric_limits<double>::infinity();
    double violation = std::numeric_limits<double>::infinity();
    double secondary = 0.0;
};

/// True when a ranks strictly ahead of b.
bool better(const Evaluation& a, const Evaluation& b);

using Objective = std::function<Evaluation(std::span<const double>)>;

/// Box-shaped domain, cut into a grid of sub-boxes with splits[d] cells along dimension d.
struct SearchSpace {
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<int> splits;

    std::size_t dimension() const { return lower.size(); }
    void validate() const;
};

struct SearchOptions {
    std::size_t budget = 10000;  // objective evaluations
    std::uint64_t seed = 1;
    int population = 10;            // per sub-box
    int generations_per_epoch = 8;  // differential-evolution generations between polish/prune
    double differential_weight = 0.7;
    double crossover = 0.9;
    double prune_fraction = 0.2;    // of the active boxes, after every epoch
    std::size_t min_boxes = 4;
    int polish_rounds = 6;          // compass-search rounds per epoch
    double polish_step = 0.1;       // initial compass step, fraction of the box width
    std::vector<double> dedup_radius{5.0, 5.0};  // leading coordinates; optima closer in all are merged
};

struct Candidate {
    std::vector<double> x;
    Evaluation eval;
};

struct SearchResult {
    std::vector<Candidate> optima;  // feasible, distinct, best first
    Candidate best;                 // best evaluated point (may be infeasible if nothing was feasible)
    std::size_t evaluations = 0;
};

/// Differential evolution (rand/1/bin) inside each sub-box, compass-search
/// polishing of each box champion, pruning of the worst boxes. The sequence of
/// evaluated points depends only on (space, objective, seed), so a larger budget
/// evaluates a superset and the best value never decreases. Evaluations of a
/// batch run in parallel; results do not depend on the thread count.
SearchResult optimize_single(const SearchSpace& space, const Objective& objective,
                             const SearchOptions& options);

struct ParetoPoint {
    std::vector<double> x;
    Evaluation eval;
};

/// a dominates b: no worse in (value, secondary) and strictly better in one.
bool dominates(const Evaluation& a, const Evaluation& b);

/// Feasible non-dominated points; a point equal in both objectives to a member is rejected.
class ParetoArchive {
public:
    /// True when p entered the archive.
    bool insert(const ParetoPoint& p);
    const std::vector<ParetoPoint>& points() const { return points_; }
    /// Members ordered by decreasing secondary objective.
    std::vector<ParetoPoint> sorted() const;

private:
    std::vector<ParetoPoint> points_;
};

struct ParetoResult {
    std::vector<ParetoPoint> front;  // decreasing secondary objective
    SearchResult search;
};

/// Same search as optimize_single, every feasible evaluation offered to the archive.
ParetoResult optimize_pareto(const SearchSpace& space, const Objective& objective,
                             const SearchOptions& options);

}  // namespace deflekt::search
