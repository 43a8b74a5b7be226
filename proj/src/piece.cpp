#include "fairdiv/piece.hpp"

#include <algorithm>

namespace fairdiv {

void require_in_cake(const Rational& x) {
    if (x.sign() < 0 || x > Rational(1)) {
        throw DomainError("point " + x.str() + " outside [0,1]");
    }
}

Interval::Interval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    require_in_cake(lo);
    require_in_cake(hi);
    if (hi < lo) throw DomainError("interval [" + lo.str() + "," + hi.str() + ") has lo > hi");
}

Piece::Piece(std::initializer_list<Interval> intervals)
    : Piece(std::vector<Interval>(intervals)) {}

Piece::Piece(std::vector<Interval> intervals) {
    std::erase_if(intervals, [](const Interval& iv) { return iv.empty(); });
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (auto& iv : intervals) {
        if (!intervals_.empty() && iv.lo <= intervals_.back().hi) {
            if (intervals_.back().hi < iv.hi) intervals_.back().hi = std::move(iv.hi);
        } else {
            intervals_.push_back(std::move(iv));
        }
    }
}

Rational Piece::length() const {
    Rational total;
    for (const auto& iv : intervals_) total += iv.length();
    return total;
}

bool Piece::contains(const Rational& x) const {
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                               [](const Rational& v, const Interval& iv) { return v < iv.lo; });
    if (it == intervals_.begin()) return false;
    return std::prev(it)->contains(x);
}

Piece Piece::clip(const Rational& lo, const Rational& hi) const {
    std::vector<Interval> out;
    for (const auto& iv : intervals_) {
        if (iv.hi <= lo) continue;
        if (hi <= iv.lo) break;
        out.emplace_back(max(iv.lo, lo), min(iv.hi, hi));
    }
    return Piece(std::move(out));
}

Piece unite(const Piece& a, const Piece& b) {
    std::vector<Interval> all = a.intervals();
    all.insert(all.end(), b.intervals().begin(), b.intervals().end());
    return Piece(std::move(all));
}

Piece intersect(const Piece& a, const Piece& b) {
    std::vector<Interval> out;
    const auto& x = a.intervals();
    const auto& y = b.intervals();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.size() && j < y.size()) {
        const Rational& lo = max(x[i].lo, y[j].lo);
        const Rational& hi = min(x[i].hi, y[j].hi);
        if (lo < hi) out.emplace_back(lo, hi);
        if (x[i].hi < y[j].hi) {
            ++i;
        } else {
            ++j;
        }
    }
    return Piece(std::move(out));
}

Piece complement(const Piece& p) {
    std::vector<Interval> out;
    Rational cursor(0);
    for (const auto& iv : p.intervals()) {
        if (cursor < iv.lo) out.emplace_back(cursor, iv.lo);
        cursor = iv.hi;
    }
    if (cursor < Rational(1)) out.emplace_back(cursor, Rational(1));
    return Piece(std::move(out));
}

Piece subtract(const Piece& a, const Piece& b) { return intersect(a, complement(b)); }

}  // namespace fairdiv
