#include "sngbm/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "sngbm/errors.hpp"

namespace sngbm {

SynthFamily parse_synth_family(const std::string& name) {
  if (name == "heteroscedastic") return SynthFamily::heteroscedastic;
  if (name == "homoscedastic") return SynthFamily::homoscedastic;
  if (name == "lognormal") return SynthFamily::lognormal;
  throw ConfigError("unknown generator family '" + name + "'");
}

std::string to_string(SynthFamily family) {
  switch (family) {
    case SynthFamily::heteroscedastic:
      return "heteroscedastic";
    case SynthFamily::homoscedastic:
      return "homoscedastic";
    case SynthFamily::lognormal:
      return "lognormal";
  }
  return "unknown";
}

void SynthConfig::validate() const {
  if (n < 10) throw ConfigError("synthetic sets need n >= 10");
  const std::size_t min_d = family == SynthFamily::homoscedastic ? 1 : 2;
  if (d < min_d) {
    throw ConfigError(to_string(family) + " generator needs d >= " + std::to_string(min_d));
  }
  if (!(noise > 0.0) || !std::isfinite(noise)) throw ConfigError("noise must be positive");
}

SynthData generate(const SynthConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  SynthData out;
  Dataset& data = out.data;
  data.features = Matrix(cfg.n, cfg.d);
  data.targets.resize(cfg.n);
  out.sigma.resize(cfg.n);
  for (std::size_t c = 0; c < cfg.d; ++c) data.feature_names.push_back("x" + std::to_string(c + 1));

  for (std::size_t r = 0; r < cfg.n; ++r) {
    for (std::size_t c = 0; c < cfg.d; ++c) data.features.at(r, c) = uniform(rng);
    const double eps = normal(rng);
    const double x1 = data.features.at(r, 0);
    const double wave = std::sin(2.0 * std::numbers::pi * x1);
    double sigma = cfg.noise;
    if (cfg.family != SynthFamily::homoscedastic) sigma = 0.1 + 0.9 * data.features.at(r, 1);
    out.sigma[r] = sigma;
    switch (cfg.family) {
      case SynthFamily::heteroscedastic:
      case SynthFamily::homoscedastic:
        data.targets[r] = wave + sigma * eps;
        break;
      case SynthFamily::lognormal:
        data.targets[r] = std::exp(3.0 + wave + sigma * eps);
        break;
    }
  }
  return out;
}

SynthData slice(const SynthData& all, std::size_t begin, std::size_t end) {
  if (begin > end || end > all.data.rows()) throw InvalidInput("slice out of range");
  SynthData out;
  const std::size_t d = all.data.cols();
  out.data.feature_names = all.data.feature_names;
  out.data.features = Matrix(end - begin, d);
  for (std::size_t r = begin; r < end; ++r) {
    for (std::size_t c = 0; c < d; ++c) out.data.features.at(r - begin, c) = all.data.features.at(r, c);
  }
  out.data.targets.assign(all.data.targets.begin() + static_cast<std::ptrdiff_t>(begin),
                          all.data.targets.begin() + static_cast<std::ptrdiff_t>(end));
  out.sigma.assign(all.sigma.begin() + static_cast<std::ptrdiff_t>(begin),
                   all.sigma.begin() + static_cast<std::ptrdiff_t>(end));
  return out;
}

}  // namespace sngbm
