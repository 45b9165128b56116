#include "kac/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#define TOML_EXCEPTIONS 1
#include "toml.hpp"

namespace kac {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_uint(std::string_view s) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a non-negative integer: '" + std::string(s) + "'");
  }
  return v;
}

std::uint64_t parse_power(std::string_view s) {
  s = trim(s);
  if (s.starts_with("2^")) {
    const std::uint64_t e = parse_uint(s.substr(2));
    if (e > 62) throw std::invalid_argument("exponent too large in n_grid");
    return std::uint64_t{1} << e;
  }
  return parse_uint(s);
}

double number_of(const toml::node& node, const std::string& what) {
  if (auto v = node.value<double>()) return *v;
  throw std::invalid_argument(what + " must be a number");
}

std::vector<double> real_array(const toml::node_view<const toml::node>& node,
                               const std::string& what) {
  const toml::array* arr = node.as_array();
  if (!arr) throw std::invalid_argument(what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& el : *arr) out.push_back(number_of(el, what));
  return out;
}

template <class T>
std::vector<T> uint_array(const toml::node_view<const toml::node>& node, const std::string& what) {
  const toml::array* arr = node.as_array();
  if (!arr) throw std::invalid_argument(what + " must be an array of integers");
  std::vector<T> out;
  for (const auto& el : *arr) {
    auto v = el.value<std::int64_t>();
    if (!v || *v < 0) throw std::invalid_argument(what + " entries must be non-negative integers");
    out.push_back(static_cast<T>(*v));
  }
  return out;
}

std::uint64_t uint_value(const toml::node_view<const toml::node>& node, const std::string& what) {
  auto v = node.value<std::int64_t>();
  if (!v || *v < 0) throw std::invalid_argument(what + " must be a non-negative integer");
  return static_cast<std::uint64_t>(*v);
}

FunctionSpec parse_function(const toml::table& fn, std::size_t max_terms) {
  const bool has_step = fn.contains("step");
  const bool has_fourier = fn.contains("fourier");
  if (has_step == has_fourier) {
    throw std::invalid_argument("function must contain exactly one of 'step' or 'fourier'");
  }
  const toml::node_view<const toml::node> view{fn};
  if (has_step) {
    const auto step = view["step"];
    std::vector<double> values = real_array(step["values"], "function.step.values");
    if (step["level"]) {
      return StepFunction(static_cast<unsigned>(uint_value(step["level"], "function.step.level")),
                          std::move(values));
    }
    return step_from_values(std::move(values));
  }
  const auto fourier = view["fourier"];
  std::vector<double> coeffs = real_array(fourier["coeffs"], "function.fourier.coeffs");
  const double beta = fourier["beta"] ? number_of(*fourier["beta"].node(), "function.fourier.beta")
                                      : 1.0;
  if (coeffs.size() > max_terms) coeffs.resize(max_terms);
  if (fourier["M"]) {
    return FourierFunction(std::move(coeffs), number_of(*fourier["M"].node(), "function.fourier.M"),
                           beta);
  }
  return FourierFunction::with_default_envelope(std::move(coeffs), beta);
}

}  // namespace

std::vector<std::uint64_t> parse_n_grid(std::string_view text) {
  text = trim(text);
  std::vector<std::uint64_t> out;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const std::string_view lo = trim(text.substr(0, dots));
    const std::string_view hi = trim(text.substr(dots + 2));
    if (!lo.starts_with("2^") || !hi.starts_with("2^")) {
      throw std::invalid_argument("n_grid range must be written 2^a..2^b");
    }
    const std::uint64_t a = parse_uint(lo.substr(2));
    const std::uint64_t b = parse_uint(hi.substr(2));
    if (a > b || b > 62) throw std::invalid_argument("invalid n_grid range");
    for (std::uint64_t e = a; e <= b; ++e) out.push_back(std::uint64_t{1} << e);
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    out.push_back(parse_power(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string item(trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) {
      throw std::invalid_argument("not a number: '" + item + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

StepFunction step_from_values(std::vector<double> values) {
  unsigned level = 0;
  while ((std::size_t{1} << level) < values.size()) ++level;
  if (level == 0 || (std::size_t{1} << level) != values.size()) {
    throw std::invalid_argument("step function needs 2^r values with r >= 1, got " +
                                std::to_string(values.size()));
  }
  return StepFunction(level, std::move(values));
}

ExperimentConfig parse_config(std::string_view toml_text) {
  toml::table tbl;
  try {
    tbl = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "config parse error: " << e.description() << " at line " << e.source().begin.line;
    throw std::invalid_argument(os.str());
  }
  const toml::node_view<const toml::node> root{tbl};

  ExperimentConfig cfg;
  if (auto mode = root["mode"].value<std::string>()) {
    auto m = parse_mode(*mode);
    if (!m) throw std::invalid_argument("unknown mode '" + *mode + "'");
    cfg.mode = *m;
  }
  if (root["seed"]) cfg.master_seed = uint_value(root["seed"], "seed");
  if (root["replicates"]) cfg.replicates = uint_value(root["replicates"], "replicates");
  if (root["max_terms"]) cfg.max_terms = uint_value(root["max_terms"], "max_terms");
  if (root["bootstrap_resamples"]) {
    cfg.bootstrap_resamples =
        static_cast<unsigned>(uint_value(root["bootstrap_resamples"], "bootstrap_resamples"));
  }
  if (root["threads"]) cfg.sampling.threads = static_cast<unsigned>(uint_value(root["threads"], "threads"));
  if (auto out = root["out"].value<std::string>()) cfg.out = *out;
  if (auto dump = root["dump_samples"].value<std::string>()) cfg.dump_samples = *dump;
  if (auto grid = root["n_grid"]) {
    if (auto s = grid.value<std::string>()) {
      cfg.n_grid = parse_n_grid(*s);
    } else {
      cfg.n_grid = uint_array<std::uint64_t>(grid, "n_grid");
    }
  }
  if (root["levels"]) cfg.levels = uint_array<unsigned>(root["levels"], "levels");
  if (const toml::table* fn = root["function"].as_table()) {
    cfg.function = parse_function(*fn, cfg.max_terms);
  } else if (root["function"]) {
    throw std::invalid_argument("function must be a table");
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace kac
