#include <gtest/gtest.h>

#include <sstream>

#include "percolab/errors.hpp"
#include "percolab/report.hpp"

using namespace percolab;

namespace {

Report sample_report() {
  Report r{"demo", {{"seed", 3}, {"n", 100}}, {}};
  Table t{"main", {{"w", ColumnKind::Integer}, {"p", ColumnKind::Estimate}, {"c", ColumnKind::Cardy},
                   {"s", ColumnKind::Text}}, {}};
  t.add_row({std::int64_t{200}, 0.49871, 0.5, std::string("a,b")});
  t.add_row({std::int64_t{7}, 0.0, 0.0, std::string("x")});
  r.tables.push_back(t);
  Table u{"second", {{"r", ColumnKind::Real}}, {}};
  u.add_row({1.488});
  r.tables.push_back(u);
  return r;
}

}  // namespace

TEST(Report, CsvLayout) {
  std::ostringstream out;
  write_csv(sample_report(), out);
  EXPECT_EQ(out.str(),
            "# command: demo\n"
            "# config: {\"n\":100,\"seed\":3}\n"
            "# table: main\n"
            "w,p,c,s\n"
            "200,0.4987,0.5000000000,\"a,b\"\n"
            "7,0.0000,0,x\n"
            "\n"
            "# table: second\n"
            "r\n"
            "1.488000000\n");
}

TEST(Report, JsonRoundTrip) {
  const Report r = sample_report();
  const Report back = report_from_json(nlohmann::json::parse(to_json(r).dump()));
  EXPECT_EQ(back.command, r.command);
  EXPECT_EQ(back.config, r.config);
  ASSERT_EQ(back.tables.size(), 2u);
  EXPECT_EQ(back.tables[0].rows, r.tables[0].rows);
  EXPECT_EQ(back.tables[0].columns[2].kind, ColumnKind::Cardy);
  EXPECT_EQ(back.table("second").rows[0][0], Value{1.488});
  std::ostringstream a, b;
  write_csv(r, a);
  write_csv(back, b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Report, Errors) {
  Table t{"x", {{"a", ColumnKind::Real}}, {}};
  EXPECT_THROW(t.add_row({1.0, 2.0}), ContractError);
  EXPECT_THROW(sample_report().table("missing"), ContractError);
  EXPECT_THROW(parse_output_format("xml"), DomainError);
}

TEST(Report, PrettyAligns) {
  std::ostringstream out;
  write_pretty(sample_report(), out);
  EXPECT_NE(out.str().find("  w       p"), std::string::npos);
}
