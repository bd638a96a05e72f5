#pragma once

#include <variant>
#include <vector>

#include <Eigen/Core>

#include "repgame/spd_matrix.hpp"

namespace repgame {

// d x r feature map, r columns acting on d raw features.
using Representation = Eigen::MatrixXd;

// Finitely supported distribution over representations.
struct MixedRepresentation {
  std::vector<Representation> atoms;
  Eigen::VectorXd weights;

  int atom_count() const { return static_cast<int>(atoms.size()); }

  // Throws if the weights are off the simplex, the atom list is empty, or
  // the atom shapes disagree.
  void validate() const;
};

// Functions the adversary may play: either the ellipsoid ||f||_S <= 1 or an
// explicit finite list.
struct QuadraticBall {
  SpdMatrix s;
};

struct FiniteSet {
  std::vector<Eigen::VectorXd> functions;
};

using ResponseClass = std::variant<QuadraticBall, FiniteSet>;

// Result of a worst-case evaluation of a (mixed) representation.
struct RegretReport {
  double value = 0.0;
  Eigen::VectorXd witness_f;      // function attaining the value
  Eigen::VectorXd per_atom_loss;  // excess risk of each atom at witness_f
};

}  // namespace repgame
