#include "fairdiv/valuation.hpp"

#include <algorithm>
#include <set>

namespace fairdiv {

Valuation::Valuation(std::vector<Rational> breakpoints, std::vector<Rational> densities)
    : breakpoints_(std::move(breakpoints)), densities_(std::move(densities)) {
    if (breakpoints_.size() < 2 || densities_.size() + 1 != breakpoints_.size()) {
        throw InvalidValuation("valuation needs m+1 breakpoints for m densities (m >= 1)");
    }
    if (breakpoints_.front() != Rational(0) || breakpoints_.back() != Rational(1)) {
        throw InvalidValuation("breakpoints must start at 0 and end at 1");
    }
    cumulative_.reserve(breakpoints_.size());
    cumulative_.emplace_back(0);
    for (std::size_t k = 0; k < densities_.size(); ++k) {
        if (!(breakpoints_[k] < breakpoints_[k + 1])) {
            throw InvalidValuation("breakpoints must be strictly increasing");
        }
        if (densities_[k].sign() < 0) throw InvalidValuation("negative density");
        cumulative_.push_back(cumulative_.back() +
                              densities_[k] * (breakpoints_[k + 1] - breakpoints_[k]));
    }
    if (cumulative_.back() != Rational(1)) {
        throw InvalidValuation("valuation integrates to " + cumulative_.back().str() + ", not 1");
    }
}

Valuation Valuation::uniform() { return Valuation({Rational(0), Rational(1)}, {Rational(1)}); }

std::size_t Valuation::segment_of(const Rational& x) const {
    // Index k with x_k <= x < x_{k+1}; x = 1 maps to the last segment.
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    auto k = static_cast<std::size_t>(it - breakpoints_.begin());
    if (k == 0) return 0;
    return std::min(k - 1, densities_.size() - 1);
}

Rational Valuation::cdf(const Rational& x) const {
    require_in_cake(x);
    const std::size_t k = segment_of(x);
    return cumulative_[k] + densities_[k] * (x - breakpoints_[k]);
}

Rational Valuation::eval(const Interval& iv) const {
    if (iv.empty()) return Rational(0);
    return cdf(iv.hi) - cdf(iv.lo);
}

Rational Valuation::eval_piece(const Piece& p) const {
    Rational total;
    for (const auto& iv : p.intervals()) total += eval(iv);
    return total;
}

Rational Valuation::cut(const Rational& x, const Rational& val) const {
    require_in_cake(x);
    if (val.sign() < 0) throw DomainError("negative cut value " + val.str());
    if (val.is_zero()) return x;
    const std::size_t start = segment_of(x);
    const Rational target = cumulative_[start] + densities_[start] * (x - breakpoints_[start]) + val;
    if (target > Rational(1)) {
        throw InsufficientValue("cut of " + val.str() + " from " + x.str() + " exceeds remaining value");
    }
    // First segment k >= start whose right end reaches the target; every earlier
    // point has strictly smaller cdf, so the answer lies inside segment k.
    auto it = std::lower_bound(cumulative_.begin() + static_cast<std::ptrdiff_t>(start) + 1,
                               cumulative_.end(), target);
    const auto k = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
    if (k == start) return x + (target - cdf(x)) / densities_[k];
    return breakpoints_[k] + (target - cumulative_[k]) / densities_[k];
}

Rational eval(const Valuation& v, const Interval& iv) { return v.eval(iv); }
Rational eval_piece(const Valuation& v, const Piece& p) { return v.eval_piece(p); }
Rational cut(const Valuation& v, const Rational& x, const Rational& val) { return v.cut(x, val); }

RenormalizedView::RenormalizedView(const Valuation& v, Piece region)
    : v_(v), region_(std::move(region)), total_(v.eval_piece(region_)) {
    if (total_.is_zero()) throw DegenerateResidue("region has zero value for this valuation");
}

Rational RenormalizedView::eval(const Interval& iv) const {
    return v_.eval_piece(region_.clip(iv.lo, iv.hi)) / total_;
}

Rational RenormalizedView::eval_piece(const Piece& p) const {
    return v_.eval_piece(intersect(region_, p)) / total_;
}

Rational RenormalizedView::cut(const Rational& x, const Rational& val) const {
    require_in_cake(x);
    if (val.sign() < 0) throw DomainError("negative cut value " + val.str());
    if (val.is_zero()) return x;
    Rational remaining = val * total_;
    const Piece rest = region_.clip(x, Rational(1));
    for (const auto& iv : rest.intervals()) {
        const Rational here = v_.eval(iv);
        if (remaining <= here) return v_.cut(iv.lo, remaining);
        remaining -= here;
    }
    throw InsufficientValue("renormalized cut exceeds remaining value of the region");
}

RenormalizedView restrict_renormalize(const Valuation& v, const Piece& region) {
    return RenormalizedView(v, region);
}

std::vector<Interval> common_refinement(std::span<const Valuation> vs, unsigned parts_per_agent) {
    if (parts_per_agent == 0) throw std::invalid_argument("common_refinement needs N >= 1");
    std::set<Rational> points{Rational(0), Rational(1)};
    for (const auto& v : vs) {
        for (unsigned k = 1; k < parts_per_agent; ++k) {
            points.insert(v.cut(Rational(0), Rational(static_cast<long>(k),
                                                       static_cast<long>(parts_per_agent))));
        }
    }
    std::vector<Interval> cells;
    for (auto it = points.begin(); std::next(it) != points.end(); ++it) {
        cells.emplace_back(*it, *std::next(it));
    }
    return cells;
}

}  // namespace fairdiv
