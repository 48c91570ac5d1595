#ifndef SCIENTO_SIMILARITY_HPP
#define SCIENTO_SIMILARITY_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include <unicode/uchar.h>

#include "sciento/text.hpp"

namespace sciento {

using TokenCounts = std::map<std::string, long long, std::less<>>;

/// Lowercased alphanumeric runs of `s` with their multiplicities.
inline TokenCounts tokenize(std::string_view s)
{
    TokenCounts counts;
    std::string token;
    for (UChar32 c : detail::decode_utf8(s)) {
        if (u_isalnum(c)) {
            detail::append_utf8(token, u_tolower(c));
        } else if (!token.empty()) {
            ++counts[token];
            token.clear();
        }
    }
    if (!token.empty())
        ++counts[token];
    return counts;
}

/// Cosine of the angle between the token-count vectors of `a` and `b`,
/// in [0, 1]. Two tokenless strings are identical (1); one tokenless string
/// is unrelated to anything (0).
inline double cosine_similarity(std::string_view a, std::string_view b)
{
    const TokenCounts ta = tokenize(a);
    const TokenCounts tb = tokenize(b);
    if (ta.empty() || tb.empty())
        return ta.empty() && tb.empty() ? 1.0 : 0.0;

    long long dot = 0;
    long long norm_a = 0;
    long long norm_b = 0;
    for (const auto& [token, n] : ta) {
        norm_a += n * n;
        if (auto it = tb.find(token); it != tb.end())
            dot += n * it->second;
    }
    for (const auto& [token, n] : tb)
        norm_b += n * n;

    // One square root of the integer product keeps identical bags at exactly 1.
    const double denom = std::sqrt(static_cast<double>(norm_a) * static_cast<double>(norm_b));
    return std::clamp(static_cast<double>(dot) / denom, 0.0, 1.0);
}

inline void check_threshold(double threshold)
{
    if (!(threshold > 0.0 && threshold <= 1.0))
        throw std::invalid_argument("name-match threshold must lie in (0, 1]");
}

inline bool same_name(std::string_view a, std::string_view b, double threshold)
{
    check_threshold(threshold);
    return cosine_similarity(a, b) >= threshold;
}

} // namespace sciento

#endif
