#include <doctest.h>

#include "support/checks.hpp"

#include <random>

#include "sciento/text.hpp"

using sciento::clean_text;

TEST_CASE("CleanText.TrimsSurroundingWhitespace")
{
    CHECK_EQ(clean_text("  Neurocomputing\t"), "Neurocomputing");
}

TEST_CASE("CleanText.StripsDiacriticsButKeepsLettersWithoutDecomposition")
{
    // U+0141 has no canonical decomposition; u-umlaut is u + U+0308.
    CHECK_EQ(clean_text("\xC5\x81ukasz  M\xC3\xBCller"), "\xC5\x81ukasz Muller");
    CHECK_EQ(clean_text("Jos\xC3\xA9 Pe\xC3\xB1" "a"), "Jose Pena");
    // Already-decomposed input: e + combining acute.
    CHECK_EQ(clean_text("Jose\xCC\x81"), "Jose");
}

TEST_CASE("CleanText.EmptyIsFixedPoint")
{
    CHECK_EQ(clean_text(""), "");
    CHECK_EQ(clean_text(" \t\r\n "), "");
}

TEST_CASE("CleanText.DropsControlZeroWidthAndReplacementCharacters")
{
    CHECK_EQ(clean_text("Neuro\xE2\x80\x8B" "computing"), "Neurocomputing"); // U+200B
    CHECK_EQ(clean_text("A\x01" "B\x7F" "C"), "ABC");
    CHECK_EQ(clean_text("bad\xEF\xBF\xBD" "char"), "badchar"); // U+FFFD
    CHECK_EQ(clean_text("\xEF\xBB\xBFtitle"), "title");       // BOM
    CHECK_EQ(clean_text("broken\xC3"), "broken");              // truncated sequence
}

TEST_CASE("CleanText.CollapsesInternalWhitespaceRuns")
{
    CHECK_EQ(clean_text("Applied \n\t Soft\xC2\xA0\xC2\xA0" "Computing"), "Applied Soft Computing");
    CHECK_EQ(clean_text("a \xE2\x80\x8B b"), "a b");
}

TEST_CASE("CleanText.KeepsNonLatinScripts")
{
    CHECK_EQ(clean_text("\xE6\x9D\xB1\xE4\xBA\xAC"), "\xE6\x9D\xB1\xE4\xBA\xAC");         // Tokyo in kanji
    CHECK_EQ(clean_text("\xED\x95\x9C\xEA\xB5\xAD"), "\xED\x95\x9C\xEA\xB5\xAD");         // Hangul stays composed
}

TEST_CASE("CleanText.IsIdempotentOnRandomInput")
{
    const std::vector<std::string> pieces{"a",    "Z",        " ",        "\t",       "\n",   "\xC3\xA9", "\xC5\x81",
                                          "\xCC\x81", "\xE2\x80\x8B", "\xEF\xBF\xBD", "\x01", "\xC3",     "\xE6\x9D\xB1",
                                          "\xC2\xA0", "\xEF\xAC\x81", "\xE1\xBA\xA0", "-",    "'",        "\xF0\x9F\x98\x80"};
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        std::string s;
        const auto len = rng() % 12;
        for (std::size_t i = 0; i < len; ++i)
            s += pieces[rng() % pieces.size()];
        const std::string once = clean_text(s);
        INFO("input bytes: " << s);
        REQUIRE_EQ(clean_text(once), once);
        const bool trimmed = once.empty() || (once.front() != ' ' && once.back() != ' ');
        REQUIRE(trimmed);
        REQUIRE_EQ(once.find("  "), std::string::npos);
    }
}
