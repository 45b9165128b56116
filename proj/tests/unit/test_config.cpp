#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "kac/config.hpp"

TEST_CASE("step function config") {
  const auto cfg = kac::parse_config(R"(
mode = "certify"
seed = 7
replicates = 5000
n_grid = [64, 256, 1024]
out = "certify.csv"

[function.step]
level = 2
values = [3, 1, -1, -3]
)");
  CHECK(cfg.mode == kac::Mode::certify);
  CHECK(cfg.master_seed == 7);
  CHECK(cfg.replicates == 5000);
  CHECK(cfg.n_grid == std::vector<std::uint64_t>{64, 256, 1024});
  CHECK(cfg.out == "certify.csv");
  REQUIRE(cfg.function);
  REQUIRE(cfg.function->is_step());
  CHECK(cfg.function->step() == kac::StepFunction(2, {3, 1, -1, -3}));
}

TEST_CASE("fourier config with range grid and levels") {
  const auto cfg = kac::parse_config(R"(
mode = "approximate"
n_grid = "2^4..2^6"
levels = [2, 4]
max_terms = 2
threads = 3
bootstrap_resamples = 10

[function.fourier]
coeffs = [1.0, 0.5, 0.25]
M = 2.0
beta = 1.0
)");
  CHECK(cfg.mode == kac::Mode::approximate);
  CHECK(cfg.n_grid == std::vector<std::uint64_t>{16, 32, 64});
  CHECK(cfg.levels == std::vector<unsigned>{2, 4});
  CHECK(cfg.sampling.threads == 3);
  CHECK(cfg.bootstrap_resamples == 10);
  REQUIRE(cfg.function);
  REQUIRE_FALSE(cfg.function->is_step());
  CHECK(cfg.function->fourier().terms() == 2);
  CHECK(cfg.function->fourier().decay_M() == 2.0);
}

TEST_CASE("step level may be inferred") {
  const auto cfg = kac::parse_config("[function.step]\nvalues = [1, -1, -1, 1]\n");
  CHECK(cfg.function->step().level() == 2);
  CHECK(cfg.mode == kac::Mode::convergence);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(kac::parse_config("mode = \"nope\""), std::invalid_argument);
  CHECK_THROWS_AS(kac::parse_config("seed = -1"), std::invalid_argument);
  CHECK_THROWS_AS(kac::parse_config("n_grid = [1, -2]"), std::invalid_argument);
  CHECK_THROWS_AS(kac::parse_config("this is not toml"), std::invalid_argument);
  CHECK_THROWS_AS(kac::parse_config("[function]\n"), std::invalid_argument);
  CHECK_THROWS_AS(kac::parse_config(
                      "[function.step]\nvalues=[1,-1]\n[function.fourier]\ncoeffs=[1.0]\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(kac::parse_config("[function.step]\nlevel = 2\nvalues = [1, -1]\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(kac::parse_config("[function.fourier]\ncoeffs = [1.0, 0.9]\nM = 1.5\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(kac::parse_config("[function.fourier]\ncoeffs = [\"x\"]\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(kac::load_config_file("/nonexistent/config.toml"), std::invalid_argument);
}

TEST_CASE("n grid and list parsing") {
  CHECK(kac::parse_n_grid("16, 64,256") == std::vector<std::uint64_t>{16, 64, 256});
  CHECK(kac::parse_n_grid("2^4..2^6") == std::vector<std::uint64_t>{16, 32, 64});
  CHECK(kac::parse_n_grid("2^3,100") == std::vector<std::uint64_t>{8, 100});
  CHECK_THROWS_AS(kac::parse_n_grid("4..12"), std::invalid_argument);
  CHECK_THROWS_AS(kac::parse_n_grid("2^6..2^4"), std::invalid_argument);
  CHECK_THROWS_AS(kac::parse_n_grid("a"), std::invalid_argument);
  CHECK(kac::parse_real_list("3,1,-1,-3.5") == std::vector<double>{3, 1, -1, -3.5});
  CHECK_THROWS_AS(kac::parse_real_list("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(kac::parse_real_list("1,x"), std::invalid_argument);
  CHECK(kac::step_from_values({1, -1}).level() == 1);
  CHECK_THROWS_AS(kac::step_from_values({1, -1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(kac::step_from_values({1}), std::invalid_argument);
}
