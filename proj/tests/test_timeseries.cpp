#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "tdldos/timeseries.hpp"

using namespace tdldos;

namespace {

TimeSeries three_rows() {
    TimeSeries ts;
    ts.metadata = {{"scenario", "fig3"}, {"units", "t=ps"}};
    ts.columns = {"t_ps", "n2"};
    ts.rows = {{0.0, 1.0}, {0.5, 0.99950012497916927}, {1.0, 1.0 / 3.0}};
    return ts;
}

void expect_bitwise_equal(const TimeSeries& a, const TimeSeries& b) {
    ASSERT_EQ(a.columns, b.columns);
    ASSERT_EQ(a.metadata, b.metadata);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        for (std::size_t j = 0; j < a.columns.size(); ++j)
            EXPECT_EQ(std::bit_cast<std::uint64_t>(a.rows[i][j]), std::bit_cast<std::uint64_t>(b.rows[i][j]))
                << "row " << i << " col " << j;
}

} // namespace

TEST(Csv, EmptySeriesHasMetadataAndHeaderOnly) {
    TimeSeries ts;
    ts.metadata = {{"k", "v"}};
    ts.columns = {"t_ps", "n2"};
    EXPECT_EQ(to_csv(ts), "# k=v\nt_ps,n2\n");
    std::istringstream is(to_csv(ts));
    const auto back = read_csv(is);
    EXPECT_TRUE(back.rows.empty());
    EXPECT_EQ(back.columns, ts.columns);
}

TEST(Csv, ThreeRowsRoundTripBitwise) {
    const auto ts = three_rows();
    const auto text = to_csv(ts);
    EXPECT_EQ(text.substr(0, text.find("t_ps")), "# scenario=fig3\n# units=t=ps\n");
    std::istringstream is(text);
    expect_bitwise_equal(ts, read_csv(is));
}

TEST(Csv, RandomValuesRoundTripBitwise) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::uint64_t> bits;
    TimeSeries ts;
    ts.columns = {"t_ps", "a", "b"};
    for (int i = 0; i < 2000; ++i) {
        double v1 = std::bit_cast<double>(bits(rng));
        double v2 = std::bit_cast<double>(bits(rng));
        if (!std::isfinite(v1)) v1 = 0.0;
        if (!std::isfinite(v2)) v2 = -0.0;
        ts.rows.push_back({static_cast<double>(i) * 0.1, v1, v2});
    }
    ts.rows.push_back({1e6, std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::max()});
    std::istringstream is(to_csv(ts));
    expect_bitwise_equal(ts, read_csv(is));
}

TEST(Csv, WriteIsDeterministic) { EXPECT_EQ(to_csv(three_rows()), to_csv(three_rows())); }

TEST(Csv, FileRoundTrip) {
    const auto path = std::filesystem::temp_directory_path() / "tdldos_timeseries_test.csv";
    write_csv(three_rows(), path);
    expect_bitwise_equal(three_rows(), read_csv(path));
    std::filesystem::remove(path);
}

TEST(Csv, ColumnAccess) {
    const auto ts = three_rows();
    EXPECT_EQ(ts.column("n2")[2], 1.0 / 3.0);
    EXPECT_TRUE(ts.has_column("t_ps"));
    EXPECT_FALSE(ts.has_column("x"));
    EXPECT_THROW(ts.column_index("x"), Error);
    ASSERT_NE(ts.meta("scenario"), nullptr);
    EXPECT_EQ(*ts.meta("scenario"), "fig3");
    EXPECT_EQ(ts.meta("nope"), nullptr);
}

TEST(Csv, ValidationErrors) {
    auto ts = three_rows();
    ts.rows[1].pop_back();
    EXPECT_THROW(to_csv(ts), Error);
    ts = three_rows();
    ts.rows[2][0] = 0.5;
    EXPECT_THROW(to_csv(ts), Error);
    ts = three_rows();
    ts.metadata.push_back({"bad", "multi\nline"});
    EXPECT_THROW(to_csv(ts), Error);
}

TEST(Csv, MalformedInputRejected) {
    std::istringstream wrong_width("t_ps,n2\n0,1\n1\n");
    EXPECT_THROW(read_csv(wrong_width), ParseError);
    std::istringstream bad_number("t_ps,n2\n0,abc\n");
    EXPECT_THROW(read_csv(bad_number), Error);
    std::istringstream empty("");
    EXPECT_THROW(read_csv(empty), Error);
}

TEST(FormatDouble, SeventeenSignificantDigits) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(1.0), "1");
    EXPECT_EQ(parse_double("+2.5"), 2.5);
    EXPECT_THROW(parse_double("2.5x"), Error);
    EXPECT_THROW(parse_double(""), Error);
}
