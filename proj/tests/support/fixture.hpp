#ifndef SCIENTO_TESTS_FIXTURE_HPP
#define SCIENTO_TESTS_FIXTURE_HPP

#include <fstream>
#include <stdexcept>
#include <string>

#include "sciento/indicators.hpp"
#include "sciento/ingest.hpp"
#include "sciento/load.hpp"

namespace sciento::testing {

inline const std::string fixture_path = SCIENTO_TEST_DATA "/fixture.jsonl";

inline std::vector<ingest::RawArticleRecord> fixture_records()
{
    std::ifstream in(fixture_path);
    if (!in)
        throw std::runtime_error("cannot open " + fixture_path);
    auto parsed = ingest::parse_records(in);
    if (!parsed.errors.empty())
        throw std::runtime_error("fixture has parse errors");
    return parsed.records;
}

/// The fixture loaded and annotated with the default threshold.
inline graph::PropertyGraph fixture_graph()
{
    graph::PropertyGraph g;
    auto records = fixture_records();
    graph::load_records(g, records);
    indicators::annotate_graph(g, records, indicators::default_threshold);
    return g;
}

} // namespace sciento::testing

#endif
