#include <gtest/gtest.h>

#include <cstdlib>
#include <string>

#include "ovqite/config.hpp"
#include "ovqite/errors.hpp"

using namespace ovqite;

namespace {

const char* kFull = R"(# comment line
[model]
n = 6
J = 1.5
h = 0.25   # trailing comment
periodic = false

[ansatz]
layers = 3

[evolution]
algorithm = "vqite"
operator_set = "S_IM"
delta = 0.01
steps = 20
mode = "shots"
shots = 1e4
rcond = 0.001
solver = "eiv"
eiv_lambda = 2.5
seed = 17
measurement = "naive"
threads = 2

[output]
path = "runs/a # b"
format = "csv"
)";

}  // namespace

TEST(Config, ParsesEveryField) {
  const ExperimentConfig c = parse_config(kFull);
  EXPECT_EQ(c.model.n, 6u);
  EXPECT_EQ(c.model.J, 1.5);
  EXPECT_EQ(c.model.h, 0.25);
  EXPECT_FALSE(c.model.periodic);
  EXPECT_EQ(c.layers, 3u);
  EXPECT_EQ(c.evolution.algorithm, Algorithm::vqite);
  EXPECT_EQ(c.evolution.operator_set, "S_IM");
  EXPECT_EQ(c.evolution.delta, 0.01);
  EXPECT_EQ(c.evolution.steps, 20u);
  EXPECT_EQ(c.evolution.shots, 10000u);
  ASSERT_TRUE(c.evolution.rcond.has_value());
  EXPECT_EQ(*c.evolution.rcond, 1e-3);
  EXPECT_EQ(c.evolution.solver, SolverKind::eiv);
  EXPECT_EQ(c.evolution.eiv_lambda, 2.5);
  EXPECT_EQ(c.evolution.seed, 17u);
  EXPECT_EQ(c.evolution.measurement, MeasurementStrategy::naive);
  EXPECT_EQ(c.threads, 2u);
  EXPECT_EQ(c.output_path, "runs/a # b");
}

TEST(Config, EmptyTextGivesDefaults) {
  const ExperimentConfig c = parse_config("");
  EXPECT_EQ(c, ExperimentConfig{});
  EXPECT_EQ(c.model.n, 10u);
  EXPECT_EQ(c.evolution.steps, 150u);
  EXPECT_EQ(c.evolution.shots, 0u);
  EXPECT_FALSE(c.evolution.rcond.has_value());
}

TEST(Config, RoundTrip) {
  const ExperimentConfig a = parse_config(kFull);
  const ExperimentConfig b = parse_config(serialize_config(a));
  EXPECT_EQ(a, b);
  EXPECT_EQ(serialize_config(a), serialize_config(b));
  const ExperimentConfig d;
  EXPECT_EQ(parse_config(serialize_config(d)), d);
}

TEST(Config, EqualityIsFieldwise) {
  ExperimentConfig a, b;
  b.evolution.seed = 2;
  EXPECT_FALSE(a == b);
  b = a;
  b.evolution.rcond = 1e-4;
  EXPECT_FALSE(a == b);
}

TEST(Config, HashIsStableAndSensitive) {
  const ExperimentConfig a = parse_config(kFull);
  EXPECT_EQ(config_hash(a), config_hash(parse_config(kFull)));
  EXPECT_EQ(config_hash(a).size(), 16u);
  ExperimentConfig b = a;
  b.model.h = 0.26;
  EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(Config, RcondAuto) {
  const ExperimentConfig c = parse_config("[evolution]\nrcond = \"auto\"\n");
  EXPECT_FALSE(c.evolution.rcond.has_value());
  EXPECT_THROW(parse_config("[evolution]\nrcond = \"tiny\"\n"), ConfigError);
  EXPECT_THROW(parse_config("[evolution]\nrcond = 1.5\n"), ConfigError);
}

TEST(Config, ModeAndShotsRules) {
  EXPECT_THROW(parse_config("[evolution]\nshots = 100\n"), ConfigError);
  EXPECT_THROW(parse_config("[evolution]\nmode = \"shots\"\n"), ConfigError);
  EXPECT_THROW(parse_config("[evolution]\nmode = \"shots\"\nshots = 0\n"), ConfigError);
  EXPECT_THROW(parse_config("[evolution]\nmode = \"fast\"\n"), ConfigError);
  EXPECT_EQ(parse_config("[evolution]\nmode = \"shots\"\nshots = 5\n").evolution.shots, 5u);
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(parse_config("[modle]\nn = 4\n"), ConfigError);
  EXPECT_THROW(parse_config("[model]\nqubits = 4\n"), ConfigError);
  EXPECT_THROW(parse_config("n = 4\n"), ConfigError);
  EXPECT_THROW(parse_config("[model]\nn = 4\nn = 5\n"), ConfigError);
  EXPECT_THROW(parse_config("[model]\nn\n"), ConfigError);
  EXPECT_THROW(parse_config("[output]\npath = \"abc\n"), ConfigError);
  EXPECT_THROW(parse_config("[model]\nn = 4.5\n"), ConfigError);
  EXPECT_THROW(parse_config("[model]\nn = -3\n"), ConfigError);
  EXPECT_THROW(parse_config("[model]\nperiodic = yes\n"), ConfigError);
  EXPECT_THROW(parse_config("[model]\nJ = \"1\"\n"), ConfigError);
  EXPECT_THROW(parse_config("[evolution]\nalgorithm = \"qite\"\n"), ConfigError);
}

TEST(Config, ValidatesRanges) {
  EXPECT_THROW(parse_config("[model]\nn = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("[model]\nn = 64\n"), ConfigError);
  EXPECT_THROW(parse_config("[model]\nJ = 0\n"), ConfigError);
  EXPECT_THROW(parse_config("[evolution]\ndelta = 0\n"), ConfigError);
  EXPECT_THROW(parse_config("[evolution]\nsteps = 0\n"), ConfigError);
  EXPECT_THROW(parse_config("[evolution]\neiv_lambda = -1\n"), ConfigError);
  EXPECT_THROW(parse_config("[output]\nformat = \"parquet\"\n"), ConfigError);
}

TEST(Config, ErrorsNameTheLine) {
  try {
    parse_config("[model]\nn = 4\n\nbogus = 1\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(Config, MissingFile) {
  EXPECT_THROW(load_config("/nonexistent/ovqite.toml"), ConfigError);
}

TEST(Config, SeedFromEnvironment) {
  ::unsetenv("OVQITE_SEED");
  EXPECT_FALSE(seed_from_environment().has_value());
  ::setenv("OVQITE_SEED", "1234", 1);
  EXPECT_EQ(seed_from_environment(), 1234u);
  ::setenv("OVQITE_SEED", "12x", 1);
  EXPECT_THROW(seed_from_environment(), ConfigError);
  ::unsetenv("OVQITE_SEED");
}

TEST(Config, HashIgnoresRuntimeSettings) {
  ExperimentConfig a;
  ExperimentConfig b = a;
  b.threads = 7;
  b.output_path = "elsewhere";
  EXPECT_EQ(config_hash(a), config_hash(b));
}
