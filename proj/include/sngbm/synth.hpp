#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sngbm/dataset.hpp"

namespace sngbm {

// Generator families. x ~ U(0, 1)^d; x1 and x2 are columns 0 and 1.
//   heteroscedastic: y = sin(2 pi x1) + N(0, s^2), s = 0.1 + 0.9 x2
//   homoscedastic:   y = sin(2 pi x1) + N(0, s^2), s = noise
//   lognormal:       y = exp(3 + sin(2 pi x1) + N(0, s^2)), s = 0.1 + 0.9 x2
enum class SynthFamily { heteroscedastic, homoscedastic, lognormal };

SynthFamily parse_synth_family(const std::string& name);
std::string to_string(SynthFamily family);

struct SynthConfig {
  SynthFamily family = SynthFamily::heteroscedastic;
  std::size_t n = 1000;
  std::size_t d = 5;
  double noise = 0.3;
  std::uint64_t seed = 42;

  void validate() const;
};

struct SynthData {
  Dataset data;
  // True standard deviation of the noise on the model (log) scale, per row.
  std::vector<double> sigma;
};

SynthData generate(const SynthConfig& cfg);

/// Row range [begin, end) of a generated set as its own dataset.
SynthData slice(const SynthData& all, std::size_t begin, std::size_t end);

}  // namespace sngbm
