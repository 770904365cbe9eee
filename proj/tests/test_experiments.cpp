#include <cmath>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "json.hpp"
#include "sqz/errors.hpp"
#include "sqz/experiments.hpp"
#include "sqz/parallel.hpp"

using namespace sqz;

namespace {

double num_at(const Table& t, std::size_t row, const std::string& col) {
  return std::get<double>(t.rows[row][t.column_index(col)]);
}

std::string csv_of(const Table& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

}  // namespace

TEST(Range, Parse) {
  const Range a = parse_range("0.5");
  EXPECT_EQ(a.lo, 0.5);
  EXPECT_EQ(a.hi, 0.5);
  const Range b = parse_range("0:3");
  EXPECT_EQ(b.lo, 0.0);
  EXPECT_EQ(b.hi, 3.0);
  EXPECT_THROW(parse_range("2:1"), ConfigError);
  EXPECT_THROW(parse_range("abc"), ConfigError);
  EXPECT_THROW(parse_range("1:"), ConfigError);
  EXPECT_THROW(parse_range("nan"), ConfigError);
}

TEST(Grid, Points) {
  const auto g = grid(Range{0.0, 3.0}, 0.05);
  ASSERT_EQ(g.size(), 61u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 3.0);
  EXPECT_EQ(grid(Range{0.2, 0.2}, 0.1).size(), 1u);
  EXPECT_EQ(grid(Range{0.0, 1.0}, 0.3).size(), 4u);
  EXPECT_THROW(grid(Range{0.0, 1.0}, 0.0), ConfigError);
}

TEST(Config, Validation) {
  ExperimentConfig c;
  EXPECT_NO_THROW(validate_config(c));
  c.etas = {0.9, 1.5};
  EXPECT_THROW(validate_config(c), ConfigError);
  c = ExperimentConfig{};
  c.n_max = 1;
  EXPECT_THROW(validate_config(c), ConfigError);
  c = ExperimentConfig{};
  c.tail_tol = 0.0;
  EXPECT_THROW(validate_config(c), ConfigError);
  c = ExperimentConfig{};
  c.grid_step = -0.1;
  EXPECT_THROW(validate_config(c), ConfigError);
  c = ExperimentConfig{};
  c.workers = 0;
  EXPECT_THROW(validate_config(c), ConfigError);
}

TEST(Table, CsvAndJson) {
  Table t;
  t.columns = {"a", "b", "c", "d"};
  t.add_row({1.0 / 3.0, std::string("x,y"), Cell{}, 7LL});
  EXPECT_EQ(csv_of(t), "a,b,c,d\r\n0.333333333333,\"x,y\",,7\r\n");
  std::ostringstream js;
  write_json(js, t);
  const auto parsed = nlohmann::json::parse(js.str());
  ASSERT_EQ(parsed.size(), 1u);
  EXPECT_DOUBLE_EQ(parsed[0]["a"].get<double>(), 0.333333333333);
  EXPECT_TRUE(parsed[0]["c"].is_null());
  EXPECT_EQ(parsed[0]["d"].get<int>(), 7);
  EXPECT_THROW(t.add_row({1.0}), std::logic_error);
  EXPECT_EQ(format_number(-0.0), "0");
}

TEST(Parallel, OrderAndErrors) {
  const auto v = parallel_map(100, 4, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], static_cast<int>(i * i));
  EXPECT_THROW(parallel_map(10, 3,
                            [](std::size_t i) -> int {
                              if (i == 7) throw std::runtime_error("boom");
                              return 0;
                            }),
               std::runtime_error);
}

TEST(Figure2, RowsAreOrdered) {
  ExperimentConfig c;
  c.delta_minus = Range{0.0, 1.5};
  c.grid_step = 0.25;
  c.sweep_step = 0.4;
  const Table t = figure2(c);
  ASSERT_EQ(t.rows.size(), 7u);
  EXPECT_EQ(num_at(t, 0, "p_opt"), 0.0);
  EXPECT_EQ(num_at(t, 0, "p_universal"), 0.0);
  EXPECT_EQ(num_at(t, 0, "p_two_hypotheses"), 0.0);
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    EXPECT_LT(num_at(t, i, "p_universal"), num_at(t, i, "p_opt"));
    EXPECT_LE(num_at(t, i, "p_opt"), num_at(t, i, "p_two_hypotheses") + 1e-6);
    EXPECT_LE(num_at(t, i, "sweep_max_dev"), 1e-6);
  }
  EXPECT_NEAR(num_at(t, 4, "p_universal"), 0.175973, 1e-6);
  EXPECT_NEAR(num_at(t, 4, "p_two_hypotheses"), 0.2135523, 1e-7);

  c.etas = {0.9};
  EXPECT_THROW(figure2(c), ConfigError);
}

TEST(Figure2, WorkerCountDoesNotChangeOutput) {
  ExperimentConfig c;
  c.delta_minus = Range{0.0, 2.0};
  c.grid_step = 0.2;
  const std::string one = csv_of(figure2(c));
  c.workers = 3;
  EXPECT_EQ(csv_of(figure2(c)), one);
}

TEST(Figure3, Shape) {
  ExperimentConfig c;
  c.r = Range{0.0, 3.0};
  c.grid_step = 0.25;
  const Table t = figure3(c);
  const std::size_t per_eta = 13;
  ASSERT_EQ(t.rows.size(), 4 * per_eta);
  for (std::size_t e = 0; e < 4; ++e) {
    EXPECT_EQ(num_at(t, e * per_eta, "p_zero"), 1.0);
    for (std::size_t i = 1; i < per_eta; ++i) {
      EXPECT_LE(num_at(t, e * per_eta + i, "p_zero"), num_at(t, e * per_eta + i - 1, "p_zero"));
    }
  }
  // default eta order is 0.999, 0.99, 0.9, 0.5: higher eta, higher p
  for (std::size_t i = 1; i < per_eta; ++i) {
    for (std::size_t e = 1; e < 4; ++e) {
      EXPECT_GT(num_at(t, (e - 1) * per_eta + i, "p_zero"), num_at(t, e * per_eta + i, "p_zero"));
    }
  }
}

TEST(Figure4, PanelsAndSentinel) {
  ExperimentConfig c;
  c.grid_step = 0.25;
  c.etas = {1.0, 0.9};
  const Table t = figure4(c);
  const auto status = t.column_index("status");
  const auto rel = t.column_index("reliability");
  bool saw_degenerate = false;
  for (const auto& row : t.rows) {
    const double dm = std::get<double>(row[t.column_index("delta_minus")]);
    const double eta = std::get<double>(row[t.column_index("eta")]);
    if (std::get<std::string>(row[status]) == "degenerate") {
      saw_degenerate = true;
      EXPECT_EQ(dm, 0.0);
      EXPECT_EQ(eta, 1.0);
      EXPECT_TRUE(std::holds_alternative<std::monostate>(row[rel]));
      continue;
    }
    const double r = std::get<double>(row[rel]);
    EXPECT_GE(r, 0.0);
    EXPECT_LE(r, 1.0);
    if (eta == 1.0) EXPECT_DOUBLE_EQ(r, 1.0);
    if (dm == 0.0 && eta < 1.0) EXPECT_NEAR(r, 0.5, 1e-12);
  }
  EXPECT_TRUE(saw_degenerate);

  c.delta_minus = Range{0.0, 1.5};
  EXPECT_THROW(figure4(c), ConfigError);
}

TEST(Probe, Quantities) {
  ExperimentConfig c;
  c.r = Range{0.6, 0.6};
  c.s = 0.4;
  c.etas = {1.0, 0.9};
  const Table t = probe(c);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_NEAR(num_at(t, 0, "p_diff"), 0.00990928321343, 1e-11);
  EXPECT_DOUBLE_EQ(num_at(t, 0, "reliability"), 1.0);
  EXPECT_NEAR(num_at(t, 1, "reliability"), 0.535436150714, 1e-10);
}

TEST(Validation, DefaultSuitePasses) {
  const auto checks = run_validation(ExperimentConfig{});
  EXPECT_GE(checks.size(), 8u);
  for (const auto& c : checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(Validation, SmallCutoffIsReported) {
  ExperimentConfig c;
  c.n_max = 8;
  c.r = Range{1.2, 1.2};
  const auto checks = run_validation(c);
  bool reported = false;
  for (const auto& chk : checks) {
    if (chk.name == "no_error_eta1") {
      EXPECT_FALSE(chk.passed);
      reported = chk.detail.find("n_max = 8") != std::string::npos;
    }
  }
  EXPECT_TRUE(reported);
}
