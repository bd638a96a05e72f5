#pragma once

#include <string>
#include <variant>
#include <vector>

#include "repgame/oracle.hpp"
#include "repgame/rng.hpp"
#include "repgame/spd_matrix.hpp"

namespace repgame {

// Diagonal covariance families used by the experiments.
struct PowerLawSpectrum {
  double alpha = 1.0;  // eigenvalue i+1 proportional to (i+1)^-alpha, top = 1
};

struct LogNormalSpectrum {
  double sigma0 = 1.0;  // entries exp(sigma0 * N(0,1)), sorted
};

struct ExplicitSpectrum {
  Eigen::VectorXd values;  // nonnegative diagonal, any order
};

using SpectrumSpec = std::variant<PowerLawSpectrum, LogNormalSpectrum, ExplicitSpectrum>;

SpdMatrix make_covariance(int d, const SpectrumSpec& spec, Rng& rng);

// B rows of x ~ N(0, sigma_x), drawn row by row.
EmpiricalDistribution gaussian_samples(int count, const SpdMatrix& sigma_x, Rng& rng);

// Binary images composed of a few stamped glyphs, labeled per glyph kind.
struct ShapesConfig {
  int count = 300;
  int stamps_per_image = 4;  // drawn with replacement from the dictionary
  std::uint64_t seed = 0;
};

struct ShapesDataset {
  static constexpr int kSide = 25;
  static constexpr int kKinds = 6;

  EmpiricalDistribution images;          // count x 625, entries in {0, 1}
  std::vector<Eigen::VectorXd> labels;   // kKinds vectors of +/-1 per image
  // Placement log: per image, the drawn (kind, row, col) triples.
  struct Draw {
    int kind;
    int row;
    int col;
  };
  std::vector<std::vector<Draw>> draws;
};

ShapesDataset shapes_dataset(const ShapesConfig& cfg);

// The stamp dictionary itself, as kSide-agnostic binary masks.
std::vector<Eigen::MatrixXd> shape_stamps();

// Writes one image (row of a shapes sample matrix) as a binary PGM file.
void write_pgm(const std::string& path, const Eigen::VectorXd& image, int side);

}  // namespace repgame
