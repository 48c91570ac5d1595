#include <doctest.h>

#include "support/checks.hpp"

#include <sstream>

#include "sciento/config.hpp"

using namespace sciento;

namespace {

WorkspaceConfig parse(const std::string& text)
{
    WorkspaceConfig cfg;
    std::istringstream in(text);
    read_config(in, cfg);
    return cfg;
}

} // namespace

TEST_CASE("Config.Defaults")
{
    WorkspaceConfig cfg;
    CHECK_EQ(cfg.threshold, 0.6);
    CHECK_EQ(cfg.elasticities, scoring::Elasticities{});
    CHECK_EQ(cfg.elasticities.returns_to_scale(), 1.0);
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("Config.ReadsSettingsAndComments")
{
    const auto cfg = parse("# scoring\nthreshold = 0.8\nA = 2\nalpha = [0.1, 0.2, 0.3, 0.4]  # weights\n\n"
                           "chart_width=1024\nchart_height = 512\n");
    CHECK_EQ(cfg.threshold, 0.8);
    CHECK_EQ(cfg.elasticities.scale, 2.0);
    CHECK_EQ(cfg.elasticities.alpha, (std::array<double, 4>{0.1, 0.2, 0.3, 0.4}));
    CHECK_EQ(cfg.chart_size.width, 1024);
    CHECK_EQ(cfg.chart_size.height, 512);
}

TEST_CASE("Config.AlphaWithoutBrackets")
{
    CHECK_EQ(parse_alpha("0.5,0.5,0,0"), (std::array<double, 4>{0.5, 0.5, 0, 0}));
}

TEST_CASE("Config.Errors")
{
    CHECK_THROWS_AS(parse("colour = red\n"), ConfigError);
    CHECK_THROWS_AS(parse("threshold\n"), ConfigError);
    CHECK_THROWS_AS(parse("threshold = high\n"), ConfigError);
    CHECK_THROWS_AS(parse_alpha("[1, 2, 3]"), ConfigError);
    CHECK_THROWS_AS(parse_alpha("[1, 2, 3, 4, 5]"), ConfigError);
    CHECK_THROWS_AS(parse_alpha("[1, 2, 3, 4"), ConfigError);
    try {
        parse("\nthreshold = x\n");
        FAIL("");
    } catch (const ConfigError& e) {
        CHECK_NE(std::string(e.what()).find("config line 2"), std::string::npos);
    }
}

TEST_CASE("Config.ValidateRejectsOutOfRangeValues")
{
    auto bad_threshold = parse("threshold = 0\n");
    CHECK_THROWS_AS(bad_threshold.validate(), ConfigError);
    auto bad_alpha = parse("alpha = [-1, 1, 1, 1]\n");
    CHECK_THROWS_AS(bad_alpha.validate(), ConfigError);
    auto bad_size = parse("chart_width = 0\n");
    CHECK_THROWS_AS(bad_size.validate(), ConfigError);
}
