#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace painleve {

// Element of Z - 1/2, stored as twice its value (always odd).
struct HalfInteger {
    int twice = 1;

    static constexpr HalfInteger from_twice(int t) { return HalfInteger{t}; }
    // k + 1/2
    static constexpr HalfInteger above(int k) { return HalfInteger{2 * k + 1}; }
    constexpr double value() const { return 0.5 * twice; }
    constexpr HalfInteger shifted(int q) const { return HalfInteger{twice + 2 * q}; }
    constexpr HalfInteger negated() const { return HalfInteger{-twice}; }
    constexpr auto operator<=>(const HalfInteger&) const = default;
};

class YoungDiagram {
public:
    YoungDiagram() = default;
    explicit YoungDiagram(std::vector<int> rows) : rows_(std::move(rows))
    {
        while (!rows_.empty() && rows_.back() == 0) rows_.pop_back();
        for (size_t i = 0; i < rows_.size(); ++i) {
            if (rows_[i] < 1) throw DomainError("YoungDiagram: rows must be positive");
            if (i > 0 && rows_[i] > rows_[i - 1]) throw DomainError("YoungDiagram: rows must be weakly decreasing");
        }
    }

    const std::vector<int>& rows() const { return rows_; }
    int length() const { return int(rows_.size()); }
    bool empty() const { return rows_.empty(); }

    int weight() const
    {
        int w = 0;
        for (int r : rows_) w += r;
        return w;
    }

    // Y_i for i >= 1, zero past the last row.
    int row(int i) const { return (i >= 1 && i <= length()) ? rows_[size_t(i - 1)] : 0; }

    // Y'_j: number of rows of length >= j.
    int col(int j) const
    {
        int c = 0;
        while (c < length() && rows_[size_t(c)] >= j) ++c;
        return c;
    }

    bool contains(int i, int j) const { return i >= 1 && j >= 1 && j <= row(i); }

    YoungDiagram conjugate() const
    {
        std::vector<int> c;
        for (int j = 1; j <= row(1); ++j) c.push_back(col(j));
        return YoungDiagram(std::move(c));
    }

    template <class F>
    void for_each_box(F&& f) const
    {
        for (int i = 1; i <= length(); ++i)
            for (int j = 1; j <= row(i); ++j) f(i, j);
    }

    std::string str() const
    {
        std::string s = "[";
        for (size_t i = 0; i < rows_.size(); ++i) s += (i ? "," : "") + std::to_string(rows_[i]);
        return s + "]";
    }

    auto operator<=>(const YoungDiagram&) const = default;

private:
    std::vector<int> rows_;
};

// Extended arm and leg: valid for boxes outside the diagram as well.
inline int arm(const YoungDiagram& y, int i, int j) { return y.row(i) - j; }
inline int leg(const YoungDiagram& y, int i, int j) { return y.col(j) - i; }

inline int hook(const YoungDiagram& y, int i, int j)
{
    if (!y.contains(i, j))
        throw DomainError("hook: box (" + std::to_string(i) + "," + std::to_string(j) + ") outside " + y.str());
    return arm(y, i, j) + leg(y, i, j) + 1;
}

// Finite deviation from the Dirac sea: particles are occupied positive positions,
// holes are empty negative positions.
class MayaDiagram {
public:
    MayaDiagram() = default;
    MayaDiagram(std::vector<HalfInteger> particles, std::vector<HalfInteger> holes)
        : particles_(std::move(particles)), holes_(std::move(holes))
    {
        std::sort(particles_.begin(), particles_.end(), std::greater<>());
        std::sort(holes_.begin(), holes_.end(), std::greater<>());
        for (auto p : particles_)
            if (p.twice <= 0 || p.twice % 2 == 0) throw DomainError("MayaDiagram: particles must be positive half-integers");
        for (auto h : holes_)
            if (h.twice >= 0 || h.twice % 2 == 0) throw DomainError("MayaDiagram: holes must be negative half-integers");
        if (std::adjacent_find(particles_.begin(), particles_.end()) != particles_.end() ||
            std::adjacent_find(holes_.begin(), holes_.end()) != holes_.end())
            throw DomainError("MayaDiagram: repeated position");
    }

    // Sorted descending.
    const std::vector<HalfInteger>& particles() const { return particles_; }
    // Sorted descending (closest to zero first).
    const std::vector<HalfInteger>& holes() const { return holes_; }

    bool occupied(HalfInteger x) const
    {
        if (x.twice > 0) return std::find(particles_.begin(), particles_.end(), x) != particles_.end();
        return std::find(holes_.begin(), holes_.end(), x) == holes_.end();
    }

    bool operator==(const MayaDiagram&) const = default;

private:
    std::vector<HalfInteger> particles_;
    std::vector<HalfInteger> holes_;
};

inline int charge(const MayaDiagram& m) { return int(m.particles().size()) - int(m.holes().size()); }

// 2 * (sum of particle positions + sum of |hole positions|); equals Q^2 + 2|Y|.
inline int twice_momentum_sum(const MayaDiagram& m)
{
    int s = 0;
    for (auto p : m.particles()) s += p.twice;
    for (auto h : m.holes()) s -= h.twice;
    return s;
}

// Occupied positions x_i = Y_i - i + 1/2 + Q.
inline MayaDiagram maya_from_young(const YoungDiagram& y, int Q)
{
    // Row L is empty and x_L < 0, so every position below x_L is filled.
    int L = y.length() + std::max(Q, 0) + 1;
    std::vector<HalfInteger> particles, holes;
    std::vector<int> occupied;
    for (int i = 1; i <= L; ++i) occupied.push_back(2 * (y.row(i) - i + Q) + 1);
    for (int x : occupied)
        if (x > 0) particles.push_back(HalfInteger::from_twice(x));
    for (int x = -1; x > occupied.back(); x -= 2)
        if (std::find(occupied.begin(), occupied.end(), x) == occupied.end()) holes.push_back(HalfInteger::from_twice(x));
    return MayaDiagram(std::move(particles), std::move(holes));
}

inline std::pair<YoungDiagram, int> young_from_maya(const MayaDiagram& m)
{
    int Q = charge(m);
    int deepest = m.holes().empty() ? -1 : m.holes().back().twice;
    // Occupied positions from the top down to just past the deepest hole.
    std::vector<int> occ;
    for (auto p : m.particles()) occ.push_back(p.twice);
    for (int x = -1; x >= deepest - 2; x -= 2)
        if (m.occupied(HalfInteger::from_twice(x))) occ.push_back(x);
    std::vector<int> rows;
    for (size_t k = 0; k < occ.size(); ++k) {
        int i = int(k) + 1;
        int twice_row = occ[k] + 2 * i - 1 - 2 * Q;
        rows.push_back(twice_row / 2);
    }
    return {YoungDiagram(std::move(rows)), Q};
}

struct ChargedPair {
    MayaDiagram m_plus;
    MayaDiagram m_minus;

    ChargedPair(MayaDiagram plus, MayaDiagram minus) : m_plus(std::move(plus)), m_minus(std::move(minus))
    {
        if (charge(m_plus) + charge(m_minus) != 0) throw DomainError("ChargedPair: charges do not cancel");
    }

    int charge_plus() const { return charge(m_plus); }
};

// All partitions of n in lexicographic order of their row vectors.
inline std::vector<YoungDiagram> partitions_of(int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int maxpart) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int k = 1; k <= std::min(rest, maxpart); ++k) {
            cur.push_back(k);
            rec(rest - k, k);
            cur.pop_back();
        }
    };
    rec(n, n);
    std::sort(out.begin(), out.end());
    std::vector<YoungDiagram> ys;
    for (auto& r : out) ys.emplace_back(std::move(r));
    return ys;
}

struct ChargedTriple {
    YoungDiagram y_plus;
    YoungDiagram y_minus;
    int Q = 0;

    int weight() const { return y_plus.weight() + y_minus.weight(); }
};

// Pairs (Y+, Y-) of total weight exactly w, Y+ lexicographic then Y-.
inline std::vector<std::pair<YoungDiagram, YoungDiagram>> pairs_of_weight(int w)
{
    std::vector<std::pair<YoungDiagram, YoungDiagram>> out;
    for (int a = 0; a <= w; ++a)
        for (const auto& yp : partitions_of(a))
            for (const auto& ym : partitions_of(w - a)) out.emplace_back(yp, ym);
    std::sort(out.begin(), out.end());
    return out;
}

// Visits every (Y+, Y-, Q) with |Y+|+|Y-| <= W and |Q| <= Qmax exactly once,
// ordered by total weight, then Q, then (Y+, Y-) lexicographically.
template <class F>
void for_each_triple(int W, int Qmax, F&& f)
{
    if (W < 0 || Qmax < 0) throw DomainError("enumerate_pairs: cutoffs must be non-negative");
    for (int w = 0; w <= W; ++w) {
        auto pairs = pairs_of_weight(w);
        for (int Q = -Qmax; Q <= Qmax; ++Q)
            for (const auto& [yp, ym] : pairs) f(ChargedTriple{yp, ym, Q});
    }
}

inline std::vector<ChargedTriple> enumerate_pairs(int W, int Qmax)
{
    std::vector<ChargedTriple> out;
    for_each_triple(W, Qmax, [&](ChargedTriple t) { out.push_back(std::move(t)); });
    return out;
}

}  // namespace painleve
