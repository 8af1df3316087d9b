#pragma once

// Weight sequences {q_k} driving the summability means, their prefix sums
// Q_n = q_0 + ... + q_{n-1}, and the two boundedness conditions the theory
// keys on:
//
//   asymptotic-tail condition:   n * q_{n-1} / Q_n = O(1)
//   linear-growth condition:     n / Q_n = O(1)
//
// Built-in families:
//   fejer        q_k = 1                         (arithmetic means)
//   riesz        q_0 = 0, q_k = 1/k              (logarithmic T mean)
//   cesaro       q_k = A_k^{alpha-1}             (Norlund engine)
//   u            q_k = A_k^{alpha-1}             (T-mean engine)
//   v            q_0 = 0, q_k = k^{alpha-1}
//   b            q_0 = 0, q_k = max(log^{(beta)}(k^alpha), 0), base-2 logs
//   norlund_log  q_0 = 0, q_k = 1/k              (Norlund engine)
//
// A_n^alpha is the binomial coefficient sequence A_0 = 1,
// A_n = A_{n-1} * (alpha + n) / n.

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vilenkin {

inline double a_binom(double alpha, std::int64_t n) {
    if (n < 0) throw std::out_of_range("a_binom: order must be non-negative");
    double a = 1.0;
    for (std::int64_t j = 1; j <= n; ++j) a *= (alpha + static_cast<double>(j)) / static_cast<double>(j);
    return a;
}

enum class Monotonicity { NonIncreasing, NonDecreasing, Constant, Neither };

inline const char* to_string(Monotonicity m) {
    switch (m) {
        case Monotonicity::NonIncreasing: return "non_increasing";
        case Monotonicity::NonDecreasing: return "non_decreasing";
        case Monotonicity::Constant: return "constant";
        default: return "neither";
    }
}

inline bool is_non_increasing(Monotonicity m) {
    return m == Monotonicity::NonIncreasing || m == Monotonicity::Constant;
}
inline bool is_non_decreasing(Monotonicity m) {
    return m == Monotonicity::NonDecreasing || m == Monotonicity::Constant;
}

/// A weight sequence materialized over a fixed range.  q(k) is defined for
/// k < length, Q(n) for n <= length; both are frozen at construction so a
/// WeightSeq can be shared across threads without synchronization.
class WeightSeq {
public:
    WeightSeq(std::string name, std::vector<double> q) : name_(std::move(name)), q_(std::move(q)) {
        Q_.resize(q_.size() + 1);
        Q_[0] = 0.0;
        for (std::size_t k = 0; k < q_.size(); ++k) {
            if (!(q_[k] >= 0.0))
                throw std::invalid_argument("WeightSeq: weights must be non-negative and finite");
            Q_[k + 1] = Q_[k] + q_[k];
        }
    }

    const std::string& name() const noexcept { return name_; }
    std::int64_t length() const noexcept { return static_cast<std::int64_t>(q_.size()); }

    double q(std::int64_t k) const {
        if (k < 0 || k >= length())
            throw std::out_of_range("WeightSeq: q index outside materialized range");
        return q_[static_cast<std::size_t>(k)];
    }

    double Q(std::int64_t n) const {
        if (n < 0 || n > length())
            throw std::out_of_range("WeightSeq: Q index outside materialized range");
        return Q_[static_cast<std::size_t>(n)];
    }

    /// Direction of q_k, judged from the first nonzero entry onward so that
    /// families with a conventional leading zero classify by their tail.
    Monotonicity monotonicity() const {
        std::size_t start = 0;
        while (start < q_.size() && q_[start] == 0.0) ++start;
        bool up = false, down = false;
        for (std::size_t k = start; k + 1 < q_.size(); ++k) {
            if (q_[k + 1] > q_[k]) up = true;
            if (q_[k + 1] < q_[k]) down = true;
        }
        if (up && down) return Monotonicity::Neither;
        if (up) return Monotonicity::NonDecreasing;
        if (down) return Monotonicity::NonIncreasing;
        return Monotonicity::Constant;
    }

private:
    std::string name_;
    std::vector<double> q_;
    std::vector<double> Q_;
};

/// Which engine a family belongs to: forward-weighted T means
/// (1/Q_n) sum_{k<n} q_k S_k f, or Norlund means (1/Q_n) sum_{k=1..n} q_{n-k} S_k f.
enum class MeanEngine { TMean, Norlund };

struct Family {
    std::string kind;      // fejer | riesz | cesaro | u | v | b | norlund_log
    double alpha = 0.5;
    int beta = 1;

    MeanEngine engine() const {
        if (kind == "cesaro" || kind == "norlund_log") return MeanEngine::Norlund;
        return MeanEngine::TMean;
    }

    bool has_alpha() const { return kind == "cesaro" || kind == "u" || kind == "v" || kind == "b"; }
    bool has_beta() const { return kind == "b"; }

    std::string label() const {
        std::string s = kind;
        auto trim = [](double x) {
            std::string t = std::to_string(x);
            while (!t.empty() && t.back() == '0') t.pop_back();
            if (!t.empty() && t.back() == '.') t.pop_back();
            return t;
        };
        if (has_alpha()) s += "_" + trim(alpha);
        if (has_beta()) s += "_" + std::to_string(beta);
        return s;
    }

    /// Parses "kind", "kind:alpha" or "kind:alpha:beta" tokens.
    static Family parse(const std::string& token) {
        Family fam;
        std::size_t a = token.find(':');
        fam.kind = token.substr(0, a);
        try {
            if (a != std::string::npos) {
                std::size_t b = token.find(':', a + 1);
                fam.alpha = std::stod(token.substr(a + 1, b - a - 1));
                if (b != std::string::npos) fam.beta = std::stoi(token.substr(b + 1));
            }
        } catch (const std::exception&) {
            throw std::invalid_argument("Family: cannot parse token '" + token + "'");
        }
        if (fam.kind != "fejer" && fam.kind != "riesz" && fam.kind != "cesaro" && fam.kind != "u" &&
            fam.kind != "v" && fam.kind != "b" && fam.kind != "norlund_log")
            throw std::invalid_argument("Family: unknown kind '" + fam.kind + "'");
        return fam;
    }
};

namespace detail {

// Base-2 iterated logarithm, clamped at zero where undefined or negative.
inline double iterated_log2(double x, int depth) {
    for (int i = 0; i < depth; ++i) {
        if (x <= 0.0) return 0.0;
        x = std::log2(x);
    }
    return x < 0.0 ? 0.0 : x;
}

}  // namespace detail

/// Materializes the q/Q tables of a family over [0, length).
/// alpha must lie in (0,1) for the cesaro/u/v families (the regime the
/// estimates cover) unless allow_any_alpha is set; b needs alpha > 0 and
/// integer beta >= 1.
inline WeightSeq make_weights(const Family& fam, std::int64_t length, bool allow_any_alpha = false) {
    if (length < 1) throw std::invalid_argument("make_weights: length must be positive");
    if ((fam.kind == "cesaro" || fam.kind == "u" || fam.kind == "v") && !allow_any_alpha &&
        !(fam.alpha > 0.0 && fam.alpha < 1.0))
        throw std::invalid_argument("make_weights: alpha must lie in (0,1) for " + fam.kind);
    if (fam.kind == "b" && !(fam.alpha > 0.0))
        throw std::invalid_argument("make_weights: alpha must be positive for b");
    if (fam.kind == "b" && fam.beta < 1)
        throw std::invalid_argument("make_weights: beta must be a positive integer for b");

    std::vector<double> q(static_cast<std::size_t>(length));
    if (fam.kind == "fejer") {
        for (auto& v : q) v = 1.0;
    } else if (fam.kind == "riesz" || fam.kind == "norlund_log") {
        q[0] = 0.0;
        for (std::int64_t k = 1; k < length; ++k) q[static_cast<std::size_t>(k)] = 1.0 / static_cast<double>(k);
    } else if (fam.kind == "cesaro" || fam.kind == "u") {
        double a = 1.0;  // A_k^{alpha-1} via the ratio recurrence
        for (std::int64_t k = 0; k < length; ++k) {
            q[static_cast<std::size_t>(k)] = a;
            a *= (fam.alpha - 1.0 + static_cast<double>(k + 1)) / static_cast<double>(k + 1);
        }
    } else if (fam.kind == "v") {
        q[0] = 0.0;
        for (std::int64_t k = 1; k < length; ++k)
            q[static_cast<std::size_t>(k)] = std::pow(static_cast<double>(k), fam.alpha - 1.0);
    } else if (fam.kind == "b") {
        q[0] = 0.0;
        for (std::int64_t k = 1; k < length; ++k)
            q[static_cast<std::size_t>(k)] =
                detail::iterated_log2(std::pow(static_cast<double>(k), fam.alpha), fam.beta);
    } else {
        throw std::invalid_argument("make_weights: unknown family kind '" + fam.kind + "'");
    }
    return WeightSeq(fam.label(), std::move(q));
}

/// Empirical verdicts on the two boundedness conditions over n <= range_end.
/// A condition "holds" when the running sup of its ratio stays below the
/// pinned threshold and stops growing: the sup over the full range must
/// already be attained by n <= range_end/10 (no new maximum in the last
/// decade of the range).
struct ConditionReport {
    Monotonicity monotonicity = Monotonicity::Neither;
    double sup_tail_ratio = 0.0;    // sup_n n*q_{n-1}/Q_n
    std::int64_t arg_tail = 0;
    double sup_growth_ratio = 0.0;  // sup_n n/Q_n
    std::int64_t arg_growth = 0;
    double Q_end = 0.0;
    bool tail_condition_ok = false;    // n*q_{n-1}/Q_n = O(1)
    bool growth_condition_ok = false;  // n/Q_n = O(1)
};

inline ConditionReport check_conditions(const WeightSeq& w, std::int64_t range_end,
                                        double threshold = 64.0) {
    if (range_end < 2 || range_end > w.length())
        throw std::out_of_range("check_conditions: range outside materialized weights");
    ConditionReport rep;
    rep.monotonicity = w.monotonicity();
    rep.Q_end = w.Q(range_end);
    for (std::int64_t n = 2; n <= range_end; ++n) {
        const double Qn = w.Q(n);
        if (Qn <= 0.0) continue;  // means with an empty weight window are skipped
        const double tail = static_cast<double>(n) * w.q(n - 1) / Qn;
        const double growth = static_cast<double>(n) / Qn;
        if (tail > rep.sup_tail_ratio) {
            rep.sup_tail_ratio = tail;
            rep.arg_tail = n;
        }
        if (growth > rep.sup_growth_ratio) {
            rep.sup_growth_ratio = growth;
            rep.arg_growth = n;
        }
    }
    const std::int64_t last_decade = range_end / 10;
    rep.tail_condition_ok = rep.sup_tail_ratio <= threshold && rep.arg_tail <= last_decade;
    rep.growth_condition_ok = rep.sup_growth_ratio <= threshold && rep.arg_growth <= last_decade;
    return rep;
}

}  // namespace vilenkin
