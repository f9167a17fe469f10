#pragma once

#include "conekit/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace conekit {

enum class EventualTag { Explicit, Cofinite, ComplementOf };

// A strictly increasing finite truncation of a subset of N, bounded by an
// explicit horizon. Stored as maximal disjoint ranges so that complements,
// interval unions and density counts stay cheap even at horizon 10^6 and
// beyond; a sparse set is just a list of singleton ranges.
class IndexSet {
public:
    struct Range { Int lo, hi; };  // closed, 1 <= lo <= hi

    IndexSet() = default;

    IndexSet(std::vector<Int> elems, Int horizon, EventualTag tag = EventualTag::Explicit)
        : horizon_(std::move(horizon)), tag_(tag) {
        std::sort(elems.begin(), elems.end());
        for (const Int& e : elems) {
            if (e < 1) throw std::invalid_argument("IndexSet: elements must be positive");
            if (!ranges_.empty() && e == ranges_.back().hi) continue;  // tolerate dups
            if (!ranges_.empty() && e == ranges_.back().hi + 1) ranges_.back().hi = e;
            else ranges_.push_back({e, e});
        }
        finish();
    }

    static IndexSet from_ranges(std::vector<Range> ranges, Int horizon,
                                EventualTag tag = EventualTag::Explicit) {
        IndexSet s;
        s.horizon_ = std::move(horizon);
        s.tag_ = tag;
        std::sort(ranges.begin(), ranges.end(),
                  [](const Range& a, const Range& b) { return a.lo < b.lo; });
        for (const Range& r : ranges) {
            if (r.lo < 1 || r.hi < r.lo) throw std::invalid_argument("IndexSet: bad range");
            if (!s.ranges_.empty() && r.lo <= s.ranges_.back().hi + 1)
                s.ranges_.back().hi = std::max(s.ranges_.back().hi, r.hi);
            else
                s.ranges_.push_back(r);
        }
        s.finish();
        return s;
    }

    static IndexSet full(const Int& horizon) {
        return from_ranges({{Int(1), horizon}}, horizon, EventualTag::Cofinite);
    }

    static IndexSet empty(Int horizon) { IndexSet s; s.horizon_ = std::move(horizon); return s; }

    // Tail segment [from, H]; the finite-horizon face of a cofinite set.
    static IndexSet cofinite_tail(const Int& from, const Int& horizon) {
        if (from > horizon) return empty(horizon);
        return from_ranges({{from, horizon}}, horizon, EventualTag::Cofinite);
    }

    const std::vector<Range>& ranges() const { return ranges_; }
    const Int& horizon() const { return horizon_; }
    EventualTag tag() const { return tag_; }
    void set_tag(EventualTag t) { tag_ = t; }
    const std::string& rule() const { return rule_; }
    void set_rule(std::string r) { rule_ = std::move(r); }

    bool empty_set() const { return ranges_.empty(); }

    Int count() const {
        Int c = 0;
        for (const Range& r : ranges_) c += r.hi - r.lo + 1;
        return c;
    }

    // |A ∩ [1, x-1]|
    Int count_below(const Int& x) const {
        Int c = 0;
        for (const Range& r : ranges_) {
            if (r.lo >= x) break;
            c += (std::min(r.hi, Int(x - 1)) - r.lo + 1);
        }
        return c;
    }

    bool contains(const Int& x) const {
        auto it = std::upper_bound(ranges_.begin(), ranges_.end(), x,
                                   [](const Int& v, const Range& r) { return v < r.lo; });
        if (it == ranges_.begin()) return false;
        --it;
        return x <= it->hi;
    }

    // k-th smallest element, 1-based.
    Int nth(const Int& k) const {
        if (k < 1) throw std::out_of_range("IndexSet::nth");
        Int seen = 0;
        for (const Range& r : ranges_) {
            Int len = r.hi - r.lo + 1;
            if (seen + len >= k) return r.lo + (k - seen - 1);
            seen += len;
        }
        throw std::out_of_range("IndexSet::nth: rank exceeds cardinality");
    }

    Int min_element() const {
        if (ranges_.empty()) throw std::out_of_range("IndexSet: empty");
        return ranges_.front().lo;
    }
    Int max_element() const {
        if (ranges_.empty()) throw std::out_of_range("IndexSet: empty");
        return ranges_.back().hi;
    }

    std::vector<Int> to_elems() const {
        std::vector<Int> out;
        for (const Range& r : ranges_)
            for (Int v = r.lo; v <= r.hi; ++v) out.push_back(v);
        return out;
    }

    friend IndexSet intersect(const IndexSet& a, const IndexSet& b) {
        IndexSet out;
        out.horizon_ = std::min(a.horizon_, b.horizon_);
        std::size_t i = 0, j = 0;
        while (i < a.ranges_.size() && j < b.ranges_.size()) {
            Int lo = std::max(a.ranges_[i].lo, b.ranges_[j].lo);
            Int hi = std::min(a.ranges_[i].hi, b.ranges_[j].hi);
            if (lo <= hi) out.ranges_.push_back({lo, hi});
            if (a.ranges_[i].hi < b.ranges_[j].hi) ++i; else ++j;
        }
        out.finish();
        return out;
    }

    friend IndexSet unite(const IndexSet& a, const IndexSet& b) {
        std::vector<Range> all = a.ranges_;
        all.insert(all.end(), b.ranges_.begin(), b.ranges_.end());
        return from_ranges(std::move(all), std::max(a.horizon_, b.horizon_));
    }

    // Complement within [1, H].
    IndexSet complement() const {
        std::vector<Range> out;
        Int next = 1;
        for (const Range& r : ranges_) {
            if (r.lo > next) out.push_back({next, r.lo - 1});
            next = r.hi + 1;
        }
        if (next <= horizon_) out.push_back({next, horizon_});
        IndexSet c = from_ranges(std::move(out), horizon_, EventualTag::ComplementOf);
        return c;
    }

    bool subset_of(const IndexSet& b) const {
        for (const Range& r : ranges_) {
            // every range must be inside a single range of b
            auto it = std::upper_bound(b.ranges_.begin(), b.ranges_.end(), r.lo,
                                       [](const Int& v, const Range& x) { return v < x.lo; });
            if (it == b.ranges_.begin()) return false;
            --it;
            if (r.lo < it->lo || r.hi > it->hi) return false;
        }
        return true;
    }

    bool operator==(const IndexSet& o) const {
        if (ranges_.size() != o.ranges_.size()) return false;
        for (std::size_t i = 0; i < ranges_.size(); ++i)
            if (ranges_[i].lo != o.ranges_[i].lo || ranges_[i].hi != o.ranges_[i].hi) return false;
        return true;
    }

private:
    void finish() {
        if (!ranges_.empty() && horizon_ < ranges_.back().hi) horizon_ = ranges_.back().hi;
        if (horizon_ < 1) horizon_ = 1;
    }

    std::vector<Range> ranges_;
    Int horizon_ = 1;
    EventualTag tag_ = EventualTag::Explicit;
    std::string rule_;
};

// Exact |X ∩ [1, x-1]| / x, criterion (*)'s measured quantity.
inline Rat density_ratio(const IndexSet& X, const Int& x) {
    if (x < 1) throw std::invalid_argument("density_ratio: x must be positive");
    return Rat(X.count_below(x), x);
}

// Rule-backed builders for sparse sets whose elements blow past any horizon
// a naive list could carry.
inline IndexSet powers_set(const Int& base, const Int& horizon) {
    std::vector<Int> e;
    for (Int v = base; v <= horizon; v *= base) e.push_back(v);
    IndexSet s(std::move(e), horizon);
    s.set_rule("powers:" + base.str());
    return s;
}

inline IndexSet factorial_set(unsigned lo_n, unsigned hi_n) {
    std::vector<Int> e;
    for (unsigned n = lo_n; n <= hi_n; ++n) e.push_back(factorial(n));
    Int h = e.empty() ? Int(1) : e.back();
    IndexSet s(std::move(e), h);
    s.set_rule("factorial");
    return s;
}

inline IndexSet squares_set(const Int& horizon) {
    std::vector<Int> e;
    for (Int n = 1; n * n <= horizon; ++n) e.push_back(n * n);
    IndexSet s(std::move(e), horizon);
    s.set_rule("squares");
    return s;
}

inline IndexSet cubes_set(const Int& horizon) {
    std::vector<Int> e;
    for (Int n = 1; n * n * n <= horizon; ++n) e.push_back(n * n * n);
    IndexSet s(std::move(e), horizon);
    s.set_rule("cubes");
    return s;
}

// 2^(n^2) up to a maximum n; horizon rides along with the last element.
inline IndexSet powers2_nsq_set(unsigned max_n) {
    std::vector<Int> e;
    for (unsigned n = 1; n <= max_n; ++n)
        e.push_back(boost::multiprecision::pow(Int(2), n * n));
    Int h = e.empty() ? Int(1) : e.back();
    IndexSet s(std::move(e), h);
    s.set_rule("powers2_nsq");
    return s;
}

}  // namespace conekit
