#ifndef SCIENTO_TEXT_HPP
#define SCIENTO_TEXT_HPP

#include <string>
#include <string_view>
#include <vector>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

namespace sciento {

namespace detail {

/// Decodes UTF-8 into code points. Ill-formed sequences become U+FFFD.
inline std::vector<UChar32> decode_utf8(std::string_view s)
{
    std::vector<UChar32> out;
    out.reserve(s.size());
    const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
    const auto length = static_cast<int32_t>(s.size());
    int32_t i = 0;
    while (i < length) {
        UChar32 c;
        U8_NEXT(bytes, i, length, c);
        out.push_back(c < 0 ? 0xFFFD : c);
    }
    return out;
}

inline void append_utf8(std::string& out, UChar32 c)
{
    char buf[U8_MAX_LENGTH];
    int32_t n = 0;
    UBool error = false;
    U8_APPEND(reinterpret_cast<uint8_t*>(buf), n, U8_MAX_LENGTH, c, error);
    if (!error)
        out.append(buf, static_cast<std::size_t>(n));
}

inline bool is_combining_diacritic(UChar32 c)
{
    switch (ublock_getCode(c)) {
    case UBLOCK_COMBINING_DIACRITICAL_MARKS:
    case UBLOCK_COMBINING_DIACRITICAL_MARKS_EXTENDED:
    case UBLOCK_COMBINING_DIACRITICAL_MARKS_SUPPLEMENT:
    case UBLOCK_COMBINING_MARKS_FOR_SYMBOLS:
    case UBLOCK_COMBINING_HALF_MARKS:
        return true;
    default:
        return false;
    }
}

inline bool is_zero_width(UChar32 c)
{
    return (c >= 0x200B && c <= 0x200F) || c == 0x2060 || c == 0xFEFF;
}

inline bool is_unwanted(UChar32 c)
{
    if (c == 0xFFFD || is_zero_width(c))
        return true;
    switch (u_charType(c)) {
    case U_CONTROL_CHAR:
    case U_FORMAT_CHAR:
    case U_SURROGATE:
    case U_PRIVATE_USE_CHAR:
    case U_UNASSIGNED:
        return true;
    default:
        return false;
    }
}

inline icu::UnicodeString to_unicode(const std::vector<UChar32>& cps)
{
    icu::UnicodeString u;
    for (UChar32 c : cps)
        u.append(c);
    return u;
}

inline std::vector<UChar32> from_unicode(const icu::UnicodeString& u)
{
    std::vector<UChar32> out;
    for (int32_t i = 0; i < u.length(); i = u.moveIndex32(i, 1))
        out.push_back(u.char32At(i));
    return out;
}

} // namespace detail

/// Normalizes scraped text for storage and comparison.
///
/// Whitespace runs (any Unicode white space, including tabs and newlines)
/// collapse to one ASCII space and are trimmed at both ends. Control, format,
/// zero-width, private-use and replacement characters are dropped. Letters are
/// canonically decomposed, combining diacritics removed and the remainder
/// recomposed, so "Müller" becomes "Muller" while "Ł", which has no canonical
/// decomposition, is kept.
inline std::string clean_text(std::string_view raw)
{
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfd = icu::Normalizer2::getNFDInstance(status);
    const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status))
        return std::string(raw);

    std::vector<UChar32> kept;
    for (UChar32 c : detail::decode_utf8(raw)) {
        if (u_isUWhiteSpace(c))
            kept.push_back(U' ');
        else if (!detail::is_unwanted(c))
            kept.push_back(c);
    }

    icu::UnicodeString decomposed = nfd->normalize(detail::to_unicode(kept), status);
    std::vector<UChar32> stripped;
    for (UChar32 c : detail::from_unicode(decomposed)) {
        if (!detail::is_combining_diacritic(c))
            stripped.push_back(c);
    }
    icu::UnicodeString composed = nfc->normalize(detail::to_unicode(stripped), status);
    if (U_FAILURE(status))
        return std::string(raw);

    std::string out;
    bool pending_space = false;
    for (UChar32 c : detail::from_unicode(composed)) {
        if (c == U' ') {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        detail::append_utf8(out, c);
    }
    return out;
}

} // namespace sciento

#endif
