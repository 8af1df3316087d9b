#pragma once

// Bounded mixed-radix groups: the product of cyclic groups Z_{m_0} x Z_{m_1} x ...
// truncated at a finite number of levels.  Points are flat indices in [0, M_N)
// where M_0 = 1 and M_{k+1} = m_k * M_k; the k-th digit of a point is its
// coordinate in Z_{m_k}, little-endian (digit 0 varies fastest).

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vilenkin {

using cplx = std::complex<double>;
using index_t = std::int64_t;

/// Immutable description of a truncated bounded group.  Holds the radix
/// sequence m_k, the block sizes M_k, and precomputed unit roots per level.
/// Cheap to copy; safe to share across threads once constructed.
class GroupSpec {
public:
    static constexpr int kDefaultRadixCap = 16;

    explicit GroupSpec(std::vector<int> radices, int radix_cap = kDefaultRadixCap)
        : m_(std::move(radices)) {
        if (m_.empty())
            throw std::invalid_argument("GroupSpec: radix list must be non-empty");
        if (radix_cap < 2)
            throw std::invalid_argument("GroupSpec: radix cap must be at least 2");
        M_.resize(m_.size() + 1);
        M_[0] = 1;
        for (std::size_t k = 0; k < m_.size(); ++k) {
            if (m_[k] < 2)
                throw std::invalid_argument("GroupSpec: every radix must be at least 2");
            if (m_[k] > radix_cap)
                throw std::invalid_argument("GroupSpec: radix " + std::to_string(m_[k]) +
                                            " exceeds cap " + std::to_string(radix_cap));
            M_[k + 1] = M_[k] * m_[k];
        }
        roots_.resize(m_.size());
        for (std::size_t k = 0; k < m_.size(); ++k) {
            roots_[k].resize(m_[k]);
            for (int j = 0; j < m_[k]; ++j) {
                // Quarter-turn multiples have exact machine values; snapping
                // them keeps radix-2/4 character arithmetic sign-exact
                // instead of carrying sin(pi)-sized dirt into every product.
                if ((4 * j) % m_[k] == 0) {
                    static constexpr cplx quads[4] = {
                        {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
                    roots_[k][j] = quads[(4 * j / m_[k]) % 4];
                } else {
                    const double angle = 2.0 * pi() * static_cast<double>(j) / m_[k];
                    roots_[k][j] = cplx(std::cos(angle), std::sin(angle));
                }
            }
        }
    }

    static constexpr double pi() { return 3.141592653589793238462643383279502884; }

    int levels() const noexcept { return static_cast<int>(m_.size()); }

    int radix(int level) const {
        check_level(level, levels() - 1);
        return m_[level];
    }

    /// M_level = m_0 * ... * m_{level-1};  block(0) = 1, block(levels()) = size().
    index_t block(int level) const {
        check_level(level, levels());
        return M_[level];
    }

    index_t size() const noexcept { return M_.back(); }

    const std::vector<int>& radices() const noexcept { return m_; }

    /// Unit roots exp(2*pi*i*j/m_level) for j in [0, m_level).
    const std::vector<cplx>& roots(int level) const {
        check_level(level, levels() - 1);
        return roots_[level];
    }

    int digit(index_t x, int level) const {
        check_point(x);
        check_level(level, levels() - 1);
        return static_cast<int>((x / M_[level]) % m_[level]);
    }

    std::vector<int> digits(index_t x) const {
        check_point(x);
        std::vector<int> d(m_.size());
        for (std::size_t k = 0; k < m_.size(); ++k) {
            d[k] = static_cast<int>(x % m_[k]);
            x /= m_[k];
        }
        return d;
    }

    index_t index(std::span<const int> digits) const {
        if (digits.size() != m_.size())
            throw std::invalid_argument("GroupSpec: digit vector has wrong length");
        index_t x = 0;
        for (std::size_t k = 0; k < m_.size(); ++k) {
            if (digits[k] < 0 || digits[k] >= m_[k])
                throw std::out_of_range("GroupSpec: digit out of range at level " +
                                        std::to_string(k));
            x += static_cast<index_t>(digits[k]) * M_[k];
        }
        return x;
    }

    /// Coordinatewise sum modulo the radices (no carries).
    index_t add(index_t x, index_t y) const {
        check_point(x);
        check_point(y);
        index_t z = 0;
        for (std::size_t k = 0; k < m_.size(); ++k) {
            const int dx = static_cast<int>(x % m_[k]);
            const int dy = static_cast<int>(y % m_[k]);
            z += static_cast<index_t>((dx + dy) % m_[k]) * M_[k];
            x /= m_[k];
            y /= m_[k];
        }
        return z;
    }

    /// Coordinatewise difference modulo the radices.
    index_t sub(index_t x, index_t y) const {
        check_point(x);
        check_point(y);
        index_t z = 0;
        for (std::size_t k = 0; k < m_.size(); ++k) {
            const int dx = static_cast<int>(x % m_[k]);
            const int dy = static_cast<int>(y % m_[k]);
            z += static_cast<index_t>((dx - dy + m_[k]) % m_[k]) * M_[k];
            x /= m_[k];
            y /= m_[k];
        }
        return z;
    }

    index_t negate(index_t x) const { return sub(0, x); }

    /// Position of the first nonzero digit, or levels() when x = 0.
    int first_nonzero_digit(index_t x) const {
        check_point(x);
        for (std::size_t k = 0; k < m_.size(); ++k) {
            if (x % m_[k] != 0) return static_cast<int>(k);
            x /= m_[k];
        }
        return levels();
    }

    bool operator==(const GroupSpec& other) const noexcept { return m_ == other.m_; }
    bool operator!=(const GroupSpec& other) const noexcept { return !(*this == other); }

private:
    void check_level(int level, int hi) const {
        if (level < 0 || level > hi)
            throw std::out_of_range("GroupSpec: level " + std::to_string(level) +
                                    " out of range");
    }
    void check_point(index_t x) const {
        if (x < 0 || x >= size())
            throw std::out_of_range("GroupSpec: point " + std::to_string(x) +
                                    " outside [0, " + std::to_string(size()) + ")");
    }

    std::vector<int> m_;
    std::vector<index_t> M_;
    std::vector<std::vector<cplx>> roots_;
};

inline void require_same_spec(const GroupSpec& a, const GroupSpec& b, const char* where) {
    if (a != b)
        throw std::invalid_argument(std::string(where) + ": mismatched group specs");
}

/// I_level(anchor): the set of points whose first `level` digits agree with
/// `anchor` (an index in [0, block(level))).  With anchor 0 this is the
/// subgroup of points vanishing below `level`; in general it is a coset.
struct Interval {
    int level = 0;
    index_t anchor = 0;
};

inline void check_interval(const GroupSpec& spec, const Interval& iv) {
    if (iv.level < 0 || iv.level > spec.levels())
        throw std::out_of_range("Interval: level out of range");
    if (iv.anchor < 0 || iv.anchor >= spec.block(iv.level))
        throw std::out_of_range("Interval: anchor outside [0, M_level)");
}

/// Normalized Haar measure of the interval: 1 / M_level.
inline double interval_measure(const GroupSpec& spec, const Interval& iv) {
    check_interval(spec, iv);
    return 1.0 / static_cast<double>(spec.block(iv.level));
}

inline bool interval_contains(const GroupSpec& spec, const Interval& iv, index_t x) {
    check_interval(spec, iv);
    return x % spec.block(iv.level) == iv.anchor;
}

/// All points of I_level(anchor), ascending.  In the flat little-endian layout
/// these are the indices congruent to `anchor` modulo M_level.
inline std::vector<index_t> interval_members(const GroupSpec& spec, const Interval& iv) {
    check_interval(spec, iv);
    const index_t step = spec.block(iv.level);
    std::vector<index_t> pts;
    pts.reserve(spec.size() / step);
    for (index_t x = iv.anchor; x < spec.size(); x += step) pts.push_back(x);
    return pts;
}

/// One cell of the disjoint decomposition of the complement of I_level(0).
///
/// For k < l < level: points whose first nonzero digit sits at position k and
/// whose next nonzero digit at or below `level`-1 sits at position l (digits
/// above l are free).  For l == level: points whose first nonzero digit sits
/// at position k and whose digits k+1 .. level-1 all vanish.  Every point
/// outside I_level(0) lies in exactly one cell.
struct ComplementCell {
    int level = 0;
    int k = 0;
    int l = 0;
};

inline bool cell_contains(const GroupSpec& spec, const ComplementCell& cell, index_t x) {
    if (cell.level < 1 || cell.level > spec.levels())
        throw std::out_of_range("ComplementCell: level out of range");
    if (cell.k < 0 || cell.k >= cell.level || cell.l <= cell.k || cell.l > cell.level)
        throw std::out_of_range("ComplementCell: indices must satisfy 0 <= k < l <= level");
    if (spec.first_nonzero_digit(x) != cell.k) return false;
    if (cell.l == cell.level) {
        for (int j = cell.k + 1; j < cell.level; ++j)
            if (spec.digit(x, j) != 0) return false;
        return true;
    }
    for (int j = cell.k + 1; j < cell.l; ++j)
        if (spec.digit(x, j) != 0) return false;
    return spec.digit(x, cell.l) != 0;
}

/// Cells covering the complement of I_level(0), in lexicographic (k, l) order:
/// (k, l) for 0 <= k < l <= level-1, then (k, level) for 0 <= k <= level-1.
inline std::vector<ComplementCell> complement_partition(const GroupSpec& spec, int level) {
    if (level < 1 || level > spec.levels())
        throw std::out_of_range("complement_partition: level out of range");
    std::vector<ComplementCell> cells;
    for (int k = 0; k + 1 <= level - 1; ++k)
        for (int l = k + 1; l <= level - 1; ++l)
            cells.push_back({level, k, l});
    for (int k = 0; k <= level - 1; ++k)
        cells.push_back({level, k, level});
    return cells;
}

inline std::vector<ComplementCell> complement_partition(const GroupSpec& spec) {
    return complement_partition(spec, spec.levels());
}

inline std::vector<index_t> cell_members(const GroupSpec& spec, const ComplementCell& cell) {
    std::vector<index_t> pts;
    for (index_t x = 0; x < spec.size(); ++x)
        if (cell_contains(spec, cell, x)) pts.push_back(x);
    return pts;
}

}  // namespace vilenkin
