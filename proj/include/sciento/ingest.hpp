#ifndef SCIENTO_INGEST_HPP
#define SCIENTO_INGEST_HPP

#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sciento/text.hpp"

namespace sciento::ingest {

inline constexpr int min_year = 1500;
inline constexpr int max_year = 2100;

struct AuthorEntry {
    std::string name;
    std::optional<std::string> institute;
    std::optional<std::string> country;
    std::optional<std::string> region;

    bool operator==(const AuthorEntry&) const = default;
};

struct CitingEntry {
    std::string title;
    std::vector<std::string> author_names;
    std::optional<std::string> journal_name;

    /// Only entries carrying an author or a journal can be tested for self-citation.
    bool comparable() const { return !author_names.empty() || journal_name.has_value(); }

    bool operator==(const CitingEntry&) const = default;
};

/// One scraped article after cleaning and validation.
struct RawArticleRecord {
    std::string title;
    std::optional<int> year;
    std::string journal_name;
    std::vector<AuthorEntry> authors;
    std::int64_t total_cites = 0;
    std::vector<CitingEntry> citing_articles;
    std::optional<double> snip;

    bool operator==(const RawArticleRecord&) const = default;
};

struct RecordError {
    std::size_t line = 0;
    std::string cause;

    bool operator==(const RecordError&) const = default;
};

struct ParseResult {
    std::vector<RawArticleRecord> records;
    std::vector<RecordError> errors;
};

namespace detail {

using nlohmann::json;

struct FieldError {
    std::string cause;
};

inline std::optional<std::string> optional_text(const json& obj, const char* key, const std::string& where)
{
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
        return std::nullopt;
    if (!it->is_string())
        throw FieldError{where + "'" + key + "' must be a string"};
    std::string cleaned = clean_text(it->get_ref<const std::string&>());
    if (cleaned.empty())
        return std::nullopt;
    return cleaned;
}

inline const json* optional_array(const json& obj, const char* key)
{
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
        return nullptr;
    if (!it->is_array())
        throw FieldError{std::string("'") + key + "' must be an array"};
    return &*it;
}

inline AuthorEntry parse_author(const json& j, std::size_t index)
{
    const std::string where = "author " + std::to_string(index + 1) + ": ";
    if (!j.is_object())
        throw FieldError{where + "expected an object"};
    AuthorEntry a;
    auto name = optional_text(j, "name", where);
    if (!name)
        throw FieldError{where + "missing name"};
    a.name = std::move(*name);
    a.institute = optional_text(j, "institute", where);
    a.country = optional_text(j, "country", where);
    a.region = optional_text(j, "region", where);
    return a;
}

inline CitingEntry parse_citing(const json& j, std::size_t index)
{
    const std::string where = "citing article " + std::to_string(index + 1) + ": ";
    if (!j.is_object())
        throw FieldError{where + "expected an object"};
    CitingEntry c;
    c.title = optional_text(j, "title", where).value_or("");
    c.journal_name = optional_text(j, "journal", where);
    if (auto it = j.find("authors"); it != j.end() && !it->is_null()) {
        if (!it->is_array())
            throw FieldError{where + "'authors' must be an array of strings"};
        for (const auto& name : *it) {
            if (!name.is_string())
                throw FieldError{where + "'authors' must be an array of strings"};
            std::string cleaned = clean_text(name.get_ref<const std::string&>());
            if (!cleaned.empty())
                c.author_names.push_back(std::move(cleaned));
        }
    }
    return c;
}

inline RawArticleRecord parse_object(const json& j)
{
    if (!j.is_object())
        throw FieldError{"expected a JSON object"};

    RawArticleRecord r;
    auto title = optional_text(j, "title", "");
    if (!title)
        throw FieldError{"missing title"};
    r.title = std::move(*title);

    if (auto it = j.find("year"); it != j.end() && !it->is_null()) {
        if (!it->is_number_integer())
            throw FieldError{"non-integer year"};
        auto year = it->get<std::int64_t>();
        if (year < min_year || year > max_year)
            throw FieldError{"year " + std::to_string(year) + " out of range"};
        r.year = static_cast<int>(year);
    }

    r.journal_name = optional_text(j, "journal", "").value_or("");

    if (const json* authors = optional_array(j, "authors")) {
        for (std::size_t i = 0; i < authors->size(); ++i)
            r.authors.push_back(parse_author((*authors)[i], i));
    }

    if (auto it = j.find("total_cites"); it != j.end() && !it->is_null()) {
        if (!it->is_number_integer() || it->get<std::int64_t>() < 0)
            throw FieldError{"'total_cites' must be a nonnegative integer"};
        r.total_cites = it->get<std::int64_t>();
    }

    if (const json* citing = optional_array(j, "citing_articles")) {
        for (std::size_t i = 0; i < citing->size(); ++i)
            r.citing_articles.push_back(parse_citing((*citing)[i], i));
    }

    if (auto it = j.find("snip"); it != j.end() && !it->is_null()) {
        if (!it->is_number())
            throw FieldError{"'snip' must be a number"};
        double snip = it->get<double>();
        if (!std::isfinite(snip) || snip < 0.0)
            throw FieldError{"'snip' must be a finite nonnegative number"};
        r.snip = snip;
    }
    return r;
}

inline bool is_blank(std::string_view line)
{
    for (char c : line) {
        if (c != ' ' && c != '\t' && c != '\r' && c != '\n')
            return false;
    }
    return true;
}

} // namespace detail

/// Parses a single JSON-lines entry. Blank lines are the caller's business.
inline std::variant<RawArticleRecord, RecordError> parse_record_line(std::string_view line, std::size_t line_number)
{
    auto parsed = nlohmann::json::parse(line, nullptr, false);
    if (parsed.is_discarded())
        return RecordError{line_number, "malformed JSON"};
    try {
        return detail::parse_object(parsed);
    } catch (const detail::FieldError& e) {
        return RecordError{line_number, e.cause};
    }
}

/// Reads newline-delimited JSON records. A bad line produces a RecordError
/// and parsing continues; blank lines are skipped. Line numbers are 1-based
/// and shifted by `line_offset`, so consecutive chunks can be parsed
/// independently and concatenated.
inline ParseResult parse_records(std::istream& in, std::size_t line_offset = 0)
{
    ParseResult result;
    std::string line;
    std::size_t line_number = line_offset;
    while (std::getline(in, line)) {
        ++line_number;
        if (detail::is_blank(line))
            continue;
        auto parsed = parse_record_line(line, line_number);
        if (auto* record = std::get_if<RawArticleRecord>(&parsed))
            result.records.push_back(std::move(*record));
        else
            result.errors.push_back(std::get<RecordError>(std::move(parsed)));
    }
    return result;
}

} // namespace sciento::ingest

#endif
