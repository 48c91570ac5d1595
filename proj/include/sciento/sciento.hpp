#ifndef SCIENTO_SCIENTO_HPP
#define SCIENTO_SCIENTO_HPP

#include "sciento/chart.hpp"
#include "sciento/chart_render.hpp"
#include "sciento/config.hpp"
#include "sciento/format.hpp"
#include "sciento/graph.hpp"
#include "sciento/indicators.hpp"
#include "sciento/ingest.hpp"
#include "sciento/load.hpp"
#include "sciento/query/ast.hpp"
#include "sciento/query/executor.hpp"
#include "sciento/query/parser.hpp"
#include "sciento/query/render.hpp"
#include "sciento/scoring.hpp"
#include "sciento/similarity.hpp"
#include "sciento/snapshot.hpp"
#include "sciento/text.hpp"

#endif
