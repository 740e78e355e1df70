#include "subdep/io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace subdep;
using namespace subdep::io;

TEST(Csv, HeaderQuotesAndMissingValues) {
  std::istringstream in("a,\"b, c\",d\n1,2,NA\n 3 ,,4e-1\r\n\n-0,+5,1\n");
  const auto ds = read_csv(in);
  ASSERT_EQ(ds.column_names, (std::vector<std::string>{"a", "b, c", "d"}));
  EXPECT_EQ(ds.rows(), 3u);
  EXPECT_EQ(ds.column("a")[1], 3.0);
  EXPECT_TRUE(std::isnan(ds.column("b, c")[1]));
  EXPECT_TRUE(std::isnan(ds.column("d")[0]));
  EXPECT_EQ(ds.column("d")[1], 0.4);
  EXPECT_EQ(ds.column("b, c")[2], 5.0);
  EXPECT_THROW(ds.column("zz"), InputError);
}

TEST(Csv, CustomNaTokenAndErrors) {
  std::istringstream in("x,y\n1,-999\n2,3\n");
  EXPECT_TRUE(std::isnan(read_csv(in, "-999").column("y")[0]));
  std::istringstream ragged("x,y\n1,2,3\n");
  EXPECT_THROW(read_csv(ragged), InputError);
  std::istringstream text("x,y\n1,abc\n");
  EXPECT_THROW(read_csv(text), InputError);
  std::istringstream dup("x,x\n1,2\n");
  EXPECT_THROW(read_csv(dup), InputError);
  std::istringstream empty("");
  EXPECT_THROW(read_csv(empty), InputError);
  EXPECT_THROW(read_csv_file("/nonexistent/file.csv"), InputError);
}

TEST(Format, ShortestRoundTripDigits) {
  EXPECT_EQ(format_double(1.0), "1.0");
  EXPECT_EQ(format_double(-2.0), "-2.0");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  for (double x : {0.1, 1.0 / 3, -2.5e-300, 6.02214076e23, 0.0}) {
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
}

TEST(Rationals, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/10"), Rational(3, 10));
  EXPECT_EQ(parse_rational("0.3"), Rational(3, 10));
  EXPECT_EQ(parse_rational("-1.25e-1"), Rational(-1, 8));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("2/4"), Rational(1, 2));
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("abc"), InputError);
  EXPECT_THROW(parse_rational(""), InputError);
  EXPECT_EQ(rational_string(Rational(-3, 9)), "-1/3");
  EXPECT_EQ(rational_string(Rational(4)), "4");
}

TEST(Report, JsonRoundTrip) {
  ReportDocument doc;
  doc.command = "mu";
  doc.parameters["input"] = "x.csv";
  doc.results["mu"] = 0.25;
  doc.results["values"] = Json::array({1.0, 2.5});
  doc.warnings = {"dropped 1 row"};
  const auto text = dump_json(to_json(doc));
  EXPECT_EQ(report_from_json(Json::parse(text)), doc);
  EXPECT_EQ(dump_json(to_json(doc)), text);
  EXPECT_NE(text.find("\"version\": \"1.0\""), std::string::npos);
  EXPECT_THROW(report_from_json(Json::array()), InputError);
}

namespace {

Subcopula sample_exact() {
  const auto d = GridDomain::exact({0, 1, 2}, 2);
  return Subcopula::exact(d, d, {0, 0, 0, 0, 1, 1, 0, 1, 2});
}

Subcopula sample_floating() {
  const auto d1 = GridDomain::floating({0.0, 0.3, 1.0});
  const auto d2 = GridDomain::floating({0.0, 0.25, 0.5, 1.0});
  return Subcopula::floating(d1, d2, {0, 0, 0, 0, 0, 0.1, 0.2, 0.3, 0, 0.25, 0.5, 1.0});
}

}  // namespace

TEST(SubcopulaIo, JsonRoundTrip) {
  for (const auto& s : {sample_exact(), sample_floating()}) {
    EXPECT_EQ(subcopula_from_json(Json::parse(dump_json(to_json(s)))), s);
  }
}

TEST(SubcopulaIo, CsvRoundTrip) {
  for (const auto& s : {sample_exact(), sample_floating()}) {
    std::stringstream buf;
    write_subcopula_csv(buf, s);
    EXPECT_EQ(read_subcopula_csv(buf), s);
  }
}

TEST(SubcopulaIo, MalformedInput) {
  std::istringstream short_row("# d1\n0,1\n# d2\n0,1\n# values\n0,0\n0\n");
  EXPECT_THROW(read_subcopula_csv(short_row), StructuralError);
  std::istringstream missing("# d1\n0,1\n# values\n0,0\n0,1\n");
  EXPECT_THROW(read_subcopula_csv(missing), InputError);
  std::istringstream stray("0,1\n");
  EXPECT_THROW(read_subcopula_csv(stray), InputError);
  auto j = to_json(sample_exact());
  j["values"][1] = Json::array({0, 1});
  EXPECT_THROW(subcopula_from_json(j), StructuralError);
}

TEST(SubcopulaIo, FractionsReadBackExact) {
  std::istringstream in("# d1\n0,1/3,1\n# d2\n0,1\n# values\n0,0\n0,1/3\n0,1\n");
  const auto s = read_subcopula_csv(in);
  EXPECT_EQ(s.mode(), NumericMode::exact);
  EXPECT_EQ(s.exact_value(1, 1), Rational(1, 3));
}

TEST(DependenceJson, CarriesExactFields) {
  const auto j = to_json(mu_measure(sample_exact()));
  EXPECT_TRUE(j.contains("mu"));
  EXPECT_TRUE(j.contains("mu_exact"));
  EXPECT_EQ(j["mu_exact"], "1");
}
