#include "anchored/config.hpp"
#include "anchored/io.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace anchored;

TEST(TraceCsv, HeaderAndRoundTrip) {
    RunTrace t;
    for (long k = 0; k < 3; ++k) {
        TraceRecord r;
        r.k = k;
        r.norm_g_y = 1.0 / (k + 3.0);
        if (k > 0) r.norm_dx = 0.1 * k;
        r.lyapunov_main = -1.5 * k;
        r.bound = 2.0;
        t.records.push_back(r);
    }
    std::ostringstream out;
    write_trace_csv(t, out);
    const std::string text = out.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), std::string(kTraceColumns));
    EXPECT_EQ(text.find('\r'), std::string::npos);
    EXPECT_NE(text.find("\n0,0.33333333333333331,,,,,-0,2\n"), std::string::npos);
    std::istringstream in(text);
    const auto back = read_trace_csv(in);
    ASSERT_EQ(back.size(), 3u);
    EXPECT_EQ(back[2].norm_g_y, t.records[2].norm_g_y);
    EXPECT_FALSE(back[0].norm_dx.has_value());
    EXPECT_EQ(*back[1].norm_dx, 0.1);
}

TEST(TraceCsv, RejectsBadHeader) {
    std::istringstream in("k,foo\n0,1\n");
    EXPECT_THROW(read_trace_csv(in), DataError);
}

TEST(Svg, PolylinePerCurve) {
    std::vector<Curve> curves(2);
    for (auto& c : curves)
        for (int k = 1; k <= 100; ++k) {
            c.k.push_back(k);
            c.value.push_back(1.0 / k);
        }
    curves[0].label = "a";
    curves[1].label = "b & c";
    std::ostringstream out;
    write_loglog_svg(curves, PlotOptions{}, out);
    const std::string svg = out.str();
    EXPECT_EQ(svg.rfind("<svg", 0) == 0 || svg.rfind("<?xml", 0) == 0, true);
    std::size_t n = 0;
    for (std::size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos) ++n;
    EXPECT_EQ(n, 2u);
    EXPECT_NE(svg.find("b &amp; c"), std::string::npos);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Svg, RejectsNonPositive) {
    Curve c;
    c.label = "x";
    c.k = {1, 2};
    c.value = {1.0, 0.0};
    std::vector<Curve> cs{c};
    std::ostringstream out;
    EXPECT_NO_THROW(write_loglog_svg(cs, PlotOptions{}, out));
}

TEST(Config, ParseSectionsAndComments) {
    const auto kv = KeyValueConfig::parse_string(
        "scheme = peag  # top-level goes to run\n"
        "[schedule]\n"
        "sigma = 2\n"
        "\n"
        "[instance]\n"
        "generator = huber\n"
        "m = 30\n"
        "n = 20\n");
    EXPECT_EQ(kv.get("run.scheme", ""), "peag");
    EXPECT_DOUBLE_EQ(kv.get_double("schedule.sigma", 0.0), 2.0);
    const auto cfg = run_config_from(kv);
    EXPECT_EQ(cfg.scheme, SchemeKind::peag);
    EXPECT_EQ(cfg.instance.generator, "huber");
    EXPECT_EQ(cfg.instance.n, 30);
    EXPECT_EQ(cfg.instance.p, 20);
    EXPECT_DOUBLE_EQ(cfg.constants.sigma, 2.0);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW(run_config_from(KeyValueConfig::parse_string("[run]\nschem = halpern\n")), InputError);
    EXPECT_THROW(run_config_from(KeyValueConfig::parse_string("[run]\niters = many\n")), InputError);
    EXPECT_THROW(KeyValueConfig::parse_string("[run\n"), InputError);
    EXPECT_THROW(KeyValueConfig::parse_string("novalue\n"), InputError);
    EXPECT_THROW(KeyValueConfig::load("/nonexistent/cfg"), InputError);
    EXPECT_THROW(run_config_from(KeyValueConfig::parse_string("[instance]\ngenerator = huber\np = 3\n")),
                 InputError);
}

TEST(Config, Defaults) {
    const auto cfg = run_config_from(KeyValueConfig{});
    EXPECT_EQ(cfg.scheme, SchemeKind::halpern);
    EXPECT_EQ(cfg.schedule, ScheduleKind::halpern_fast);
    EXPECT_EQ(cfg.seed, 7u);
}
