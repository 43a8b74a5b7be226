#include "fairdiv/eps_perfect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include <Eigen/Dense>

namespace fairdiv {

namespace {

constexpr double kSnap = 1e-12;
constexpr unsigned kGridBits = 24;
constexpr std::size_t kMaxRefinements = 80;

struct Cell {
    Interval iv;
    std::vector<Rational> value;  // per view, absolute
    std::vector<double> w;        // per view, normalised on the region
    double x = 0;                 // fraction assigned to the part being built
    double prior = -1;            // x before a rounding split, or -1
};

class Partitioner {
public:
    Partitioner(Oracle& oracle, const std::vector<PartitionView>& views, std::size_t z, const Rational& eps,
                const Piece& region)
        : oracle_(oracle), views_(views), z_(z), eps_(eps), region_(region) {
        for (const auto& v : views_) {
            const Rational t = v.kind == PartitionView::Kind::agent ? oracle_.known_value(v.agent, region_)
                                                                     : region_.length();
            if (t.is_zero()) throw DegenerateResidue("partition region has zero value for a view");
            totals_.push_back(t);
            totals_d_.push_back(t.to_double());
        }
    }

    PartitionResult run() {
        seed_pool();
        PartitionResult result;
        for (std::size_t p = 0; p + 1 < z_; ++p) result.parts.push_back(next_part(z_ - p, result.refinements));
        std::vector<Interval> rest;
        for (const auto& c : pool_) rest.push_back(c.iv);
        result.parts.emplace_back(std::move(rest));
        verify(result.parts);
        result.cuts_introduced = cuts_;
        return result;
    }

private:
    Rational view_value(std::size_t v, const Interval& iv) const {
        if (views_[v].kind == PartitionView::Kind::agent) return oracle_.known_value(views_[v].agent, iv);
        return iv.length();
    }

    Cell make_cell(const Interval& iv) const {
        Cell c{iv, {}, {}, 0};
        for (std::size_t v = 0; v < views_.size(); ++v) {
            c.value.push_back(view_value(v, iv));
            c.w.push_back(c.value.back().to_double() / totals_d_[v]);
        }
        return c;
    }

    void register_point(const Rational& x) {
        if (oracle_.register_cut(x) > 0) ++cuts_;
    }

    // Every view's z-quantiles of the region, registered, then every tracked
    // interval inside the region becomes a cell.
    void seed_pool() {
        std::set<Rational> points;
        for (const auto& v : views_) {
            for (std::size_t k = 1; k < z_; ++k) {
                const Rational q(static_cast<long>(k), static_cast<long>(z_));
                if (v.kind == PartitionView::Kind::agent) {
                    points.insert(oracle_.super_cut(v.agent, region_, region_.lo(), q, &region_));
                } else {
                    points.insert(point_at_length(region_, q * region_.length()));
                }
            }
        }
        for (const auto& x : points) register_point(x);
        const auto& tracked = oracle_.ledger().tracked();
        for (const auto& iv : region_.intervals()) {
            for (auto it = tracked.lower_bound(iv.lo); it != tracked.end() && it->first < iv.hi; ++it) {
                pool_.push_back(make_cell(Interval(it->first, it->second.hi)));
            }
        }
    }

    // Moves x along null directions of the per-view balance constraints until
    // at most one basis worth of cells is fractional.
    void reduce() {
        const std::size_t m = views_.size();
        for (;;) {
            std::vector<std::size_t> frac;
            for (std::size_t c = 0; c < pool_.size(); ++c) {
                double& x = pool_[c].x;
                if (x < kSnap) x = 0;
                else if (x > 1 - kSnap) x = 1;
                else frac.push_back(c);
            }
            if (frac.empty()) return;
            const std::size_t cols = std::min(frac.size(), m + 1);
            Eigen::MatrixXd a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(cols));
            std::vector<double> scale(cols, 0.0);
            for (std::size_t k = 0; k < cols; ++k) {
                const auto& w = pool_[frac[k]].w;
                for (std::size_t v = 0; v < m; ++v) scale[k] = std::max(scale[k], std::abs(w[v]));
                for (std::size_t v = 0; v < m; ++v) {
                    a(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(k)) =
                        scale[k] > 0 ? w[v] / scale[k] : 0.0;
                }
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
            lu.setThreshold(1e-10);
            if (static_cast<std::size_t>(lu.rank()) == cols) return;
            const Eigen::VectorXd kernel = lu.kernel().col(0);
            std::vector<double> y(cols);
            for (std::size_t k = 0; k < cols; ++k) {
                y[k] = scale[k] > 0 ? kernel(static_cast<Eigen::Index>(k)) / scale[k]
                                    : kernel(static_cast<Eigen::Index>(k));
            }
            double t = std::numeric_limits<double>::infinity();
            std::size_t hit = cols;
            double hit_bound = 0;
            for (std::size_t k = 0; k < cols; ++k) {
                const double x = pool_[frac[k]].x;
                if (y[k] > 0 && (1 - x) / y[k] < t) {
                    t = (1 - x) / y[k];
                    hit = k;
                    hit_bound = 1;
                } else if (y[k] < 0 && x / -y[k] < t) {
                    t = x / -y[k];
                    hit = k;
                    hit_bound = 0;
                }
            }
            if (hit == cols) return;
            for (std::size_t k = 0; k < cols; ++k) {
                double& x = pool_[frac[k]].x;
                x = std::clamp(x + t * y[k], 0.0, 1.0);
            }
            pool_[frac[hit]].x = hit_bound;
        }
    }

    bool within(const std::vector<bool>& take, const std::vector<Rational>& target, const Rational& eta) const {
        for (std::size_t v = 0; v < views_.size(); ++v) {
            Rational sum;
            for (std::size_t c = 0; c < pool_.size(); ++c) {
                if (take[c]) sum += pool_[c].value[v];
            }
            if (abs(sum - target[v]) > eta * totals_[v]) return false;
        }
        return true;
    }

    Piece take_part(const std::vector<bool>& take) {
        std::vector<Interval> ivs;
        std::vector<Cell> rest;
        for (std::size_t c = 0; c < pool_.size(); ++c) {
            if (take[c]) ivs.push_back(pool_[c].iv);
            else rest.push_back(std::move(pool_[c]));
        }
        pool_ = std::move(rest);
        return Piece(std::move(ivs));
    }

    // Replaces pool_[c] by the two halves of its interval split at s; both keep x.
    void split_cell(std::size_t c, const Rational& s) {
        register_point(s);
        const double x = pool_[c].x;
        const Interval iv = pool_[c].iv;
        pool_[c] = make_cell(Interval(iv.lo, s));
        pool_[c].x = x;
        Cell right = make_cell(Interval(s, iv.hi));
        right.x = x;
        pool_.insert(pool_.begin() + static_cast<std::ptrdiff_t>(c) + 1, std::move(right));
    }

    Piece next_part(std::size_t remaining_parts, std::size_t& refinements) {
        const Rational eta = eps_ / Rational(static_cast<long>(z_));
        std::vector<Rational> target(views_.size());
        for (std::size_t v = 0; v < views_.size(); ++v) {
            for (const auto& c : pool_) target[v] += c.value[v];
            target[v] /= Rational(static_cast<long>(remaining_parts));
        }
        for (auto& c : pool_) {
            c.x = 1.0 / static_cast<double>(remaining_parts);
            c.prior = -1;
        }

        for (std::size_t level = 0; level <= kMaxRefinements; ++level) {
            reduce();
            std::vector<bool> take(pool_.size());
            for (std::size_t c = 0; c < pool_.size(); ++c) take[c] = pool_[c].x >= 0.5;
            if (within(take, target, eta)) return take_part(take);

            // Split each fractional cell at the fraction of its length assigned to the part.
            // Iterating backwards keeps the indices still to visit stable.
            for (std::size_t c = pool_.size(); c-- > 0;) {
                const double x = pool_[c].x;
                if (x == 0 || x == 1) continue;
                const Interval iv = pool_[c].iv;
                const Rational s = iv.lo + from_double_grid(x, kGridBits) * iv.length();
                if (s <= iv.lo || s >= iv.hi) {
                    split_cell(c, (iv.lo + iv.hi) / Rational(2));
                    continue;
                }
                split_cell(c, s);
                pool_[c].x = 1;
                pool_[c].prior = x;
                pool_[c + 1].x = 0;
                pool_[c + 1].prior = x;
            }
            take.assign(pool_.size(), false);
            for (std::size_t c = 0; c < pool_.size(); ++c) take[c] = pool_[c].x == 1;
            if (within(take, target, eta)) return take_part(take);

            // Still off: restore the fractional assignment and halve the larger fragment.
            ++refinements;
            for (std::size_t c = pool_.size(); c-- > 0;) {
                if (pool_[c].prior < 0 || pool_[c].x != 1) continue;
                const double x = pool_[c].prior;
                pool_[c].x = pool_[c + 1].x = x;
                pool_[c].prior = pool_[c + 1].prior = -1;
                const std::size_t big = pool_[c].iv.length() >= pool_[c + 1].iv.length() ? c : c + 1;
                const Interval iv = pool_[big].iv;
                split_cell(big, (iv.lo + iv.hi) / Rational(2));
            }
        }
        throw SubroutineFailure("eps-perfect partition: no part within tolerance after " +
                                std::to_string(kMaxRefinements) + " refinements");
    }

    void verify(const std::vector<Piece>& parts) const {
        const Rational share(1, static_cast<long>(z_));
        for (const auto& part : parts) {
            for (std::size_t v = 0; v < views_.size(); ++v) {
                Rational val;
                for (const auto& iv : part.intervals()) val += view_value(v, iv);
                if (abs(val / totals_[v] - share) > eps_) {
                    throw SubroutineFailure("eps-perfect partition: part outside tolerance");
                }
            }
        }
    }

    Oracle& oracle_;
    const std::vector<PartitionView>& views_;
    std::size_t z_;
    Rational eps_;
    Piece region_;
    std::vector<Rational> totals_;
    std::vector<double> totals_d_;
    std::vector<Cell> pool_;
    std::size_t cuts_ = 0;
};

}  // namespace

Rational point_at_length(const Piece& region, const Rational& len) {
    Rational remaining = len;
    for (const auto& iv : region.intervals()) {
        if (remaining <= iv.length()) return iv.lo + remaining;
        remaining -= iv.length();
    }
    throw InsufficientValue("length " + len.str() + " exceeds the region");
}

PartitionResult eps_perfect_partition(Oracle& oracle, const std::vector<PartitionView>& views, std::size_t z,
                                      const Rational& eps, const Piece& region) {
    if (z == 0) throw std::invalid_argument("partition needs at least one part");
    if (eps.sign() < 0) throw std::invalid_argument("epsilon must be non-negative");
    if (views.empty()) throw std::invalid_argument("partition needs at least one view");
    if (region.empty()) throw DegenerateResidue("empty partition region");
    for (const auto& v : views) {
        if (v.kind == PartitionView::Kind::agent && v.agent >= oracle.agents()) {
            throw std::out_of_range("view refers to agent " + std::to_string(v.agent));
        }
    }
    return Partitioner(oracle, views, z, eps, region).run();
}

}  // namespace fairdiv
