#include "deflekt/global_search.hpp"

#include <algorithm>
#include <cmath>

#include "deflekt/errors.hpp"
#include "deflekt/parallel.hpp"

namespace deflekt::search {

bool better(const Evaluation& a, const Evaluation& b) {
    if (a.feasible != b.feasible) return a.feasible;
    if (a.feasible) return a.value > b.value;
    return a.violation < b.violation;
}

bool dominates(const Evaluation& a, const Evaluation& b) {
    return a.value >= b.value && a.secondary >= b.secondary &&
           (a.value > b.value || a.secondary > b.secondary);
}

void SearchSpace::validate() const {
    if (lower.empty() || lower.size() != upper.size() || splits.size() != lower.size()) {
        throw InvalidInput("SearchSpace: bounds and splits must have matching non-zero size");
    }
    for (std::size_t d = 0; d < lower.size(); ++d) {
        if (!(lower[d] < upper[d])) throw InvalidInput("SearchSpace: lower bound must be below upper bound");
        if (splits[d] < 1) throw InvalidInput("SearchSpace: splits must be positive");
    }
}

bool ParetoArchive::insert(const ParetoPoint& p) {
    if (!p.eval.feasible) return false;
    for (const auto& q : points_) {
        if (dominates(q.eval, p.eval) ||
            (q.eval.value == p.eval.value && q.eval.secondary == p.eval.secondary)) {
            return false;
        }
    }
    std::erase_if(points_, [&](const ParetoPoint& q) { return dominates(p.eval, q.eval); });
    points_.push_back(p);
    return true;
}

std::vector<ParetoPoint> ParetoArchive::sorted() const {
    std::vector<ParetoPoint> out = points_;
    std::sort(out.begin(), out.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
        return a.eval.secondary > b.eval.secondary;
    });
    return out;
}

namespace {

// Counter-based generator: every draw is a pure function of its coordinates.
std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(splitmix(seed)) {}

    std::uint64_t bits(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) const {
        std::uint64_t h = seed_;
        for (std::uint64_t v : {a, b, c, d}) h = splitmix(h ^ splitmix(v));
        return h;
    }
    double uniform(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) const {
        return static_cast<double>(bits(a, b, c, d) >> 11) * 0x1.0p-53;
    }
    std::size_t index(std::size_t n, std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) const {
        return static_cast<std::size_t>(bits(a, b, c, d) % n);
    }

private:
    std::uint64_t seed_;
};

struct Box {
    std::vector<double> lo, hi;
    std::vector<Candidate> members;
    Candidate champion;
    bool active = true;
    std::uint64_t restarts = 0;
};

class Engine {
public:
    Engine(const SearchSpace& space, const Objective& objective, const SearchOptions& options,
           ParetoArchive* archive)
        : space_(space), objective_(objective), opt_(options), rng_(options.seed), archive_(archive) {
        space_.validate();
        if (options.population < 4) throw InvalidInput("SearchOptions: population must be at least 4");
        if (options.generations_per_epoch < 1) throw InvalidInput("SearchOptions: generations must be positive");
        best_.eval = Evaluation{};
        make_boxes();
    }

    SearchResult run() {
        initialise();
        std::uint64_t generation = 0;
        while (!exhausted()) {
            for (int g = 0; g < opt_.generations_per_epoch && !exhausted(); ++g) evolve(++generation);
            if (exhausted()) break;
            polish();
            record_champions();
            prune();
            restart_collapsed(generation);
        }
        record_champions();
        return finish();
    }

private:
    static constexpr std::uint64_t kInit = 1, kMutate = 2, kCross = 3, kRestart = 4;

    bool exhausted() const { return evaluations_ >= opt_.budget; }

    void make_boxes() {
        const std::size_t dim = space_.dimension();
        std::size_t count = 1;
        for (int s : space_.splits) count *= static_cast<std::size_t>(s);
        for (std::size_t b = 0; b < count; ++b) {
            Box box;
            std::size_t rest = b;
            for (std::size_t d = 0; d < dim; ++d) {
                const std::size_t cell = rest % static_cast<std::size_t>(space_.splits[d]);
                rest /= static_cast<std::size_t>(space_.splits[d]);
                const double w = (space_.upper[d] - space_.lower[d]) / space_.splits[d];
                box.lo.push_back(space_.lower[d] + w * static_cast<double>(cell));
                box.hi.push_back(cell + 1 == static_cast<std::size_t>(space_.splits[d])
                                     ? space_.upper[d]
                                     : space_.lower[d] + w * static_cast<double>(cell + 1));
            }
            boxes_.push_back(std::move(box));
        }
    }

    // Evaluates the longest prefix of xs the budget allows; returns the evaluated count.
    std::vector<Evaluation> evaluate(const std::vector<std::vector<double>>& xs) {
        const std::size_t n = std::min(xs.size(), opt_.budget - evaluations_);
        std::vector<Evaluation> out(n);
        parallel_for(n, [&](std::size_t k) { out[k] = objective_(xs[k]); });
        for (std::size_t k = 0; k < n; ++k) {
            ++evaluations_;
            if (better(out[k], best_.eval) || best_.x.empty()) best_ = {xs[k], out[k]};
            if (archive_) archive_->insert({xs[k], out[k]});
        }
        return out;
    }

    std::vector<double> random_point(const Box& box, std::uint64_t b, std::uint64_t tag, std::uint64_t i) const {
        std::vector<double> x(box.lo.size());
        for (std::size_t d = 0; d < x.size(); ++d) {
            x[d] = box.lo[d] + (box.hi[d] - box.lo[d]) * rng_.uniform(tag, b, i, d);
        }
        return x;
    }

    void adopt(Box& box, const Candidate& c) {
        if (box.champion.x.empty() || better(c.eval, box.champion.eval)) box.champion = c;
    }

    void initialise() {
        std::vector<std::vector<double>> xs;
        for (std::size_t b = 0; b < boxes_.size(); ++b) {
            for (int i = 0; i < opt_.population; ++i) {
                xs.push_back(random_point(boxes_[b], b, kInit, static_cast<std::uint64_t>(i)));
            }
        }
        const auto ev = evaluate(xs);
        for (std::size_t k = 0; k < ev.size(); ++k) {
            Box& box = boxes_[k / static_cast<std::size_t>(opt_.population)];
            box.members.push_back({xs[k], ev[k]});
            adopt(box, box.members.back());
        }
        // Boxes the budget never reached stay out of the search.
        for (auto& box : boxes_) box.active = box.members.size() == static_cast<std::size_t>(opt_.population);
    }

    void evolve(std::uint64_t generation) {
        std::vector<std::vector<double>> xs;
        std::vector<std::pair<std::size_t, std::size_t>> owner;
        const std::size_t pop = static_cast<std::size_t>(opt_.population);
        const std::size_t dim = space_.dimension();
        for (std::size_t b = 0; b < boxes_.size(); ++b) {
            Box& box = boxes_[b];
            if (!box.active) continue;
            const std::uint64_t stream = generation * 1000003ull + b;
            for (std::size_t i = 0; i < pop; ++i) {
                std::size_t r[3];
                for (int k = 0, draw = 0; k < 3; ++draw) {
                    const std::size_t c = rng_.index(pop, kMutate, stream, i, static_cast<std::uint64_t>(draw));
                    if (c == i || (k > 0 && c == r[0]) || (k > 1 && c == r[1])) continue;
                    r[k++] = c;
                }
                const std::size_t jrand = rng_.index(dim, kCross, stream, i, 1000);
                std::vector<double> trial = box.members[i].x;
                for (std::size_t d = 0; d < dim; ++d) {
                    if (d == jrand || rng_.uniform(kCross, stream, i, d) < opt_.crossover) {
                        double v = box.members[r[0]].x[d] +
                                   opt_.differential_weight * (box.members[r[1]].x[d] - box.members[r[2]].x[d]);
                        // Bounce back into the box.
                        if (v < box.lo[d]) v = box.lo[d] + 0.5 * (box.members[i].x[d] - box.lo[d]) * rng_.uniform(kCross, stream, i, d + 100);
                        if (v > box.hi[d]) v = box.hi[d] - 0.5 * (box.hi[d] - box.members[i].x[d]) * rng_.uniform(kCross, stream, i, d + 200);
                        trial[d] = std::clamp(v, space_.lower[d], space_.upper[d]);
                    }
                }
                xs.push_back(std::move(trial));
                owner.emplace_back(b, i);
            }
        }
        const auto ev = evaluate(xs);
        for (std::size_t k = 0; k < ev.size(); ++k) {
            auto [b, i] = owner[k];
            Candidate& m = boxes_[b].members[i];
            if (!better(m.eval, ev[k])) m = {xs[k], ev[k]};
            adopt(boxes_[b], {xs[k], ev[k]});
        }
    }

    void polish() {
        const std::size_t dim = space_.dimension();
        std::vector<std::size_t> ids;
        for (std::size_t b = 0; b < boxes_.size(); ++b) {
            if (boxes_[b].active) ids.push_back(b);
        }
        std::vector<Candidate> centre(ids.size());
        std::vector<std::vector<double>> step(ids.size());
        for (std::size_t k = 0; k < ids.size(); ++k) {
            const Box& box = boxes_[ids[k]];
            centre[k] = box.champion;
            for (std::size_t d = 0; d < dim; ++d) step[k].push_back(opt_.polish_step * (box.hi[d] - box.lo[d]));
        }
        for (int round = 0; round < opt_.polish_rounds && !exhausted(); ++round) {
            std::vector<std::vector<double>> xs;
            for (std::size_t k = 0; k < ids.size(); ++k) {
                for (std::size_t d = 0; d < dim; ++d) {
                    for (double sign : {1.0, -1.0}) {
                        std::vector<double> x = centre[k].x;
                        x[d] = std::clamp(x[d] + sign * step[k][d], space_.lower[d], space_.upper[d]);
                        xs.push_back(std::move(x));
                    }
                }
            }
            const auto ev = evaluate(xs);
            const std::size_t per = 2 * dim;
            for (std::size_t k = 0; k < ids.size(); ++k) {
                bool moved = false;
                for (std::size_t j = 0; j < per; ++j) {
                    const std::size_t idx = k * per + j;
                    if (idx >= ev.size()) break;
                    if (better(ev[idx], centre[k].eval)) {
                        centre[k] = {xs[idx], ev[idx]};
                        moved = true;
                    }
                }
                if (!moved) {
                    for (double& s : step[k]) s *= 0.5;
                }
            }
        }
        for (std::size_t k = 0; k < ids.size(); ++k) {
            Box& box = boxes_[ids[k]];
            adopt(box, centre[k]);
            // The polished point joins the population in place of its worst member.
            auto worst = std::min_element(box.members.begin(), box.members.end(),
                                          [](const Candidate& a, const Candidate& b) { return better(b.eval, a.eval); });
            if (better(centre[k].eval, worst->eval)) *worst = centre[k];
        }
    }

    void record_champions() {
        for (const auto& box : boxes_) {
            if (!box.champion.x.empty()) found_.push_back(box.champion);
        }
    }

    void prune() {
        std::vector<std::size_t> ids;
        for (std::size_t b = 0; b < boxes_.size(); ++b) {
            if (boxes_[b].active) ids.push_back(b);
        }
        if (ids.size() <= opt_.min_boxes) return;
        std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
            return better(boxes_[a].champion.eval, boxes_[b].champion.eval);
        });
        const std::size_t drop = std::min(static_cast<std::size_t>(opt_.prune_fraction * static_cast<double>(ids.size())),
                                          ids.size() - opt_.min_boxes);
        for (std::size_t k = ids.size() - drop; k < ids.size(); ++k) boxes_[ids[k]].active = false;
    }

    // A box whose population has collapsed onto one point is re-seeded around nothing
    // but its champion, so the remaining budget keeps exploring.
    void restart_collapsed(std::uint64_t generation) {
        const std::size_t dim = space_.dimension();
        std::vector<std::vector<double>> xs;
        std::vector<std::pair<std::size_t, std::size_t>> owner;
        for (std::size_t b = 0; b < boxes_.size(); ++b) {
            Box& box = boxes_[b];
            if (!box.active) continue;
            bool collapsed = true;
            for (std::size_t d = 0; d < dim && collapsed; ++d) {
                double lo = box.members[0].x[d], hi = lo;
                for (const auto& m : box.members) {
                    lo = std::min(lo, m.x[d]);
                    hi = std::max(hi, m.x[d]);
                }
                collapsed = hi - lo <= 1e-6 * (box.hi[d] - box.lo[d]);
            }
            if (!collapsed) continue;
            ++box.restarts;
            const std::uint64_t tag = kRestart + 16 * (generation * 1000003ull + box.restarts);
            for (std::size_t i = 1; i < box.members.size(); ++i) {
                xs.push_back(random_point(box, b, tag, i));
                owner.emplace_back(b, i);
            }
        }
        const auto ev = evaluate(xs);
        for (std::size_t k = 0; k < ev.size(); ++k) {
            auto [b, i] = owner[k];
            Box& box = boxes_[b];
            if (i == 1) {
                // Keep the best member in slot 0.
                auto top = std::min_element(box.members.begin(), box.members.end(),
                                            [](const Candidate& a, const Candidate& c) { return better(a.eval, c.eval); });
                std::iter_swap(box.members.begin(), top);
            }
            box.members[i] = {xs[k], ev[k]};
            adopt(box, box.members[i]);
        }
    }

    SearchResult finish() {
        std::vector<Candidate> feasible;
        for (const auto& c : found_) {
            if (c.eval.feasible) feasible.push_back(c);
        }
        std::stable_sort(feasible.begin(), feasible.end(),
                         [](const Candidate& a, const Candidate& b) { return better(a.eval, b.eval); });
        SearchResult out;
        const std::size_t keys = std::min(opt_.dedup_radius.size(), space_.dimension());
        for (const auto& c : feasible) {
            const bool duplicate = std::any_of(out.optima.begin(), out.optima.end(), [&](const Candidate& o) {
                for (std::size_t d = 0; d < keys; ++d) {
                    if (std::abs(o.x[d] - c.x[d]) >= opt_.dedup_radius[d]) return false;
                }
                return true;
            });
            if (!duplicate) out.optima.push_back(c);
        }
        out.best = best_;
        out.evaluations = evaluations_;
        return out;
    }

    const SearchSpace& space_;
    const Objective& objective_;
    SearchOptions opt_;
    CounterRng rng_;
    ParetoArchive* archive_;
    std::vector<Box> boxes_;
    std::vector<Candidate> found_;
    Candidate best_;
    std::size_t evaluations_ = 0;
};

}  // namespace

SearchResult optimize_single(const SearchSpace& space, const Objective& objective,
                             const SearchOptions& options) {
    return Engine(space, objective, options, nullptr).run();
}

ParetoResult optimize_pareto(const SearchSpace& space, const Objective& objective,
                             const SearchOptions& options) {
    ParetoArchive archive;
    ParetoResult out;
    out.search = Engine(space, objective, options, &archive).run();
    out.front = archive.sorted();
    return out;
}

}  // namespace deflekt::search
