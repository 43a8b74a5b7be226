#ifndef FAIRDIV_PIECE_HPP
#define FAIRDIV_PIECE_HPP

#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "fairdiv/rational.hpp"

namespace fairdiv {

// Raised for points or intervals outside [0,1] or with lo > hi.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Half-open [lo, hi) with 0 <= lo <= hi <= 1.
struct Interval {
    Rational lo;
    Rational hi;

    Interval() = default;
    Interval(Rational lo_, Rational hi_);

    Rational length() const { return hi - lo; }
    bool empty() const { return lo == hi; }
    bool contains(const Rational& x) const { return lo <= x && x < hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

void require_in_cake(const Rational& x);

// A finite union of disjoint half-open intervals, kept in canonical form:
// sorted, non-empty, pairwise separated (adjacent intervals are merged).
class Piece {
public:
    Piece() = default;
    Piece(std::initializer_list<Interval> intervals);
    explicit Piece(std::vector<Interval> intervals);
    static Piece whole() { return Piece{Interval(0, 1)}; }

    const std::vector<Interval>& intervals() const { return intervals_; }
    std::size_t size() const { return intervals_.size(); }
    bool empty() const { return intervals_.empty(); }
    Rational length() const;
    bool contains(const Rational& x) const;

    // Leftmost / rightmost point; undefined on the empty piece.
    const Rational& lo() const { return intervals_.front().lo; }
    const Rational& hi() const { return intervals_.back().hi; }

    // Part of the piece inside [lo, hi).
    Piece clip(const Rational& lo, const Rational& hi) const;

    friend bool operator==(const Piece&, const Piece&) = default;

private:
    std::vector<Interval> intervals_;
};

Piece unite(const Piece& a, const Piece& b);
Piece intersect(const Piece& a, const Piece& b);
Piece subtract(const Piece& a, const Piece& b);
Piece complement(const Piece& p);

}  // namespace fairdiv

#endif  // FAIRDIV_PIECE_HPP
