#ifndef SCIENTO_SCORING_HPP
#define SCIENTO_SCORING_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sciento/format.hpp"
#include "sciento/graph.hpp"
#include "sciento/indicators.hpp"

namespace sciento::scoring {

using indicators::IndicatorVector;

/// Scale factor A and the four elasticity exponents.
struct Elasticities {
    double scale = 1.0;
    std::array<double, 4> alpha{0.25, 0.25, 0.25, 0.25};

    double returns_to_scale() const { return std::accumulate(alpha.begin(), alpha.end(), 0.0); }

    void validate() const
    {
        if (!std::isfinite(scale) || scale <= 0.0)
            throw std::invalid_argument("scale factor A must be positive and finite");
        for (double a : alpha) {
            if (!std::isfinite(a) || a < 0.0)
                throw std::invalid_argument("elasticities must be nonnegative and finite");
        }
        if (!(returns_to_scale() > 0.0))
            throw std::invalid_argument("elasticities must not all be zero");
    }

    bool operator==(const Elasticities&) const = default;
};

/// A * prod(x_i ^ alpha_i), evaluated in log space. A zero input with a
/// positive elasticity yields exactly 0; with a zero elasticity it is
/// ignored (0^0 = 1).
inline double cobb_douglas(const IndicatorVector& x, const Elasticities& e)
{
    e.validate();
    const auto xs = x.values();
    for (double xi : xs) {
        if (!std::isfinite(xi) || xi < 0.0)
            throw std::invalid_argument("indicator values must be finite and nonnegative");
    }
    double log_y = std::log(e.scale);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (e.alpha[i] == 0.0)
            continue;
        if (xs[i] == 0.0)
            return 0.0;
        log_y += e.alpha[i] * std::log(xs[i]);
    }
    return std::exp(log_y);
}

struct InternationalityScore {
    std::string journal;
    double y = 0;
    IndicatorVector inputs;
    Elasticities elasticities;
};

struct Ranking {
    std::vector<InternationalityScore> scores;
    std::vector<std::string> excluded; // journals missing some indicator
};

/// Sorts by descending score, ties by journal name.
inline void sort_scores(std::vector<InternationalityScore>& scores)
{
    std::sort(scores.begin(), scores.end(), [](const auto& a, const auto& b) {
        if (a.y != b.y)
            return a.y > b.y;
        return a.journal < b.journal;
    });
}

inline Ranking rank_journals(const std::vector<indicators::JournalIndicators>& rows, const Elasticities& e)
{
    e.validate();
    Ranking r;
    for (const auto& row : rows) {
        auto x = row.vector();
        if (!x) {
            r.excluded.push_back(row.journal);
            continue;
        }
        r.scores.push_back({row.journal, cobb_douglas(*x, e), *x, e});
    }
    sort_scores(r.scores);
    return r;
}

inline Ranking rank_journals(const graph::PropertyGraph& g, const Elasticities& e)
{
    return rank_journals(indicators::journal_indicators(g), e);
}

inline void write_ranking_csv(const Ranking& r, std::ostream& os)
{
    csv::write_row(os, {"rank", "journal", "y", "x1", "x2", "x3", "x4"});
    for (std::size_t i = 0; i < r.scores.size(); ++i) {
        const auto& s = r.scores[i];
        csv::write_row(os, {std::to_string(i + 1), s.journal, format_decimal(s.y), format_decimal(s.inputs.x1),
                            format_decimal(s.inputs.x2), format_decimal(s.inputs.x3), format_decimal(s.inputs.x4)});
    }
}

} // namespace sciento::scoring

#endif
