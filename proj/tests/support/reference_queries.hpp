#ifndef SCIENTO_TESTS_REFERENCE_QUERIES_HPP
#define SCIENTO_TESTS_REFERENCE_QUERIES_HPP

namespace sciento::testing {

// The three published queries, byte for byte including their line breaks.
inline constexpr const char* publications_query_verbatim =
    "MATCH (Journal)-[:PUBLISHED_IN]-(Article)\n"
    "WHERE Journal.name IN ['Applied Soft Computing',\n"
    "'Neurocomputing', 'Genetic Programming and Evolvable\n"
    "Machines'] RETURN Article.year, Journal.name";

inline constexpr const char* citations_query_verbatim = "MATCH (n:Article) RETURN n.totalcites, n.selfcites";

inline constexpr const char* affiliation_query_verbatim =
    "MATCH (Author)-[r:WORKS_FOR]->(Institute)-\n"
    "[s:IS_IN]->(Country) RETURN Author.name,\n"
    "Country.name";

// The publications query with the wrapped journal name joined onto one line,
// which is how the name is stored in the graph.
inline constexpr const char* publications_query_joined =
    "MATCH (Journal)-[:PUBLISHED_IN]-(Article)\n"
    "WHERE Journal.name IN ['Applied Soft Computing',\n"
    "'Neurocomputing', 'Genetic Programming and Evolvable Machines']\n"
    "RETURN Article.year, Journal.name";

} // namespace sciento::testing

#endif
