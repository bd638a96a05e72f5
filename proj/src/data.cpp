#include "repgame/data.hpp"

#include <cmath>
#include <fstream>

#include "repgame/errors.hpp"

namespace repgame {

SpdMatrix make_covariance(int d, const SpectrumSpec& spec, Rng& rng) {
  if (d < 1) throw DimensionError("make_covariance: d must be positive");
  Eigen::VectorXd diag(d);
  if (const auto* pl = std::get_if<PowerLawSpectrum>(&spec)) {
    if (!(pl->alpha > 0.0) || !std::isfinite(pl->alpha)) {
      throw ConfigError("make_covariance: power-law exponent must be positive");
    }
    for (int i = 0; i < d; ++i) diag(i) = std::pow(i + 1.0, -pl->alpha);
  } else if (const auto* ln = std::get_if<LogNormalSpectrum>(&spec)) {
    if (!(ln->sigma0 >= 0.0) || !std::isfinite(ln->sigma0)) {
      throw ConfigError("make_covariance: log-normal width must be nonnegative");
    }
    for (int i = 0; i < d; ++i) diag(i) = std::exp(ln->sigma0 * rng.normal());
  } else {
    const auto& ex = std::get<ExplicitSpectrum>(spec);
    if (ex.values.size() != d) {
      throw DimensionError("make_covariance: explicit spectrum length mismatch");
    }
    diag = ex.values;
  }
  return SpdMatrix::from_diagonal(diag);
}

EmpiricalDistribution gaussian_samples(int count, const SpdMatrix& sigma_x, Rng& rng) {
  if (count < 2) throw DimensionError("gaussian_samples: need at least two samples");
  const Eigen::MatrixXd half = sigma_x.sqrt();
  EmpiricalDistribution out;
  out.samples.resize(count, sigma_x.dim());
  for (int b = 0; b < count; ++b) {
    out.samples.row(b) = (half * rng.normal_vector(sigma_x.dim())).transpose();
  }
  return out;
}

std::vector<Eigen::MatrixXd> shape_stamps() {
  std::vector<Eigen::MatrixXd> stamps;

  stamps.push_back(Eigen::MatrixXd::Ones(5, 5));  // filled square

  Eigen::MatrixXd hollow = Eigen::MatrixXd::Zero(7, 7);  // hollow square
  hollow.row(0).setOnes();
  hollow.row(6).setOnes();
  hollow.col(0).setOnes();
  hollow.col(6).setOnes();
  stamps.push_back(hollow);

  Eigen::MatrixXd disk = Eigen::MatrixXd::Zero(7, 7);  // disk of radius 3
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      if ((i - 3) * (i - 3) + (j - 3) * (j - 3) <= 9) disk(i, j) = 1.0;
    }
  }
  stamps.push_back(disk);

  Eigen::MatrixXd plus = Eigen::MatrixXd::Zero(7, 7);  // plus sign
  plus.row(3).setOnes();
  plus.col(3).setOnes();
  stamps.push_back(plus);

  Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(7, 7);  // X, both diagonals
  for (int i = 0; i < 7; ++i) {
    cross(i, i) = 1.0;
    cross(i, 6 - i) = 1.0;
  }
  stamps.push_back(cross);

  stamps.push_back(Eigen::MatrixXd::Ones(3, 9));  // horizontal bar

  return stamps;
}

ShapesDataset shapes_dataset(const ShapesConfig& cfg) {
  if (cfg.count < 2) throw DimensionError("shapes_dataset: need at least two images");
  if (cfg.stamps_per_image < 1) {
    throw ConfigError("shapes_dataset: need at least one stamp per image");
  }
  const auto stamps = shape_stamps();
  const int side = ShapesDataset::kSide;
  Rng rng = make_rng(cfg.seed, "shapes");

  ShapesDataset out;
  out.images.samples = Eigen::MatrixXd::Zero(cfg.count, side * side);
  out.labels.assign(ShapesDataset::kKinds,
                    Eigen::VectorXd::Constant(cfg.count, -1.0));
  out.draws.resize(cfg.count);

  for (int n = 0; n < cfg.count; ++n) {
    for (int s = 0; s < cfg.stamps_per_image; ++s) {
      const int kind = rng.uniform_int(ShapesDataset::kKinds);
      const auto& stamp = stamps[kind];
      const int h = static_cast<int>(stamp.rows());
      const int w = static_cast<int>(stamp.cols());
      const int row = rng.uniform_int(side - h + 1);
      const int col = rng.uniform_int(side - w + 1);
      out.draws[n].push_back({kind, row, col});
      out.labels[kind](n) = 1.0;
      for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
          if (stamp(i, j) > 0.5) {
            out.images.samples(n, (row + i) * side + (col + j)) = 1.0;
          }
        }
      }
    }
  }
  return out;
}

void write_pgm(const std::string& path, const Eigen::VectorXd& image, int side) {
  if (image.size() != static_cast<Eigen::Index>(side) * side) {
    throw DimensionError("write_pgm: image length is not side^2");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << "P5\n" << side << " " << side << "\n255\n";
  for (Eigen::Index i = 0; i < image.size(); ++i) {
    const double v = std::min(1.0, std::max(0.0, image(i)));
    out.put(static_cast<char>(static_cast<unsigned char>(v * 255.0 + 0.5)));
  }
  if (!out) throw ConfigError("write failed: " + path);
}

}  // namespace repgame
