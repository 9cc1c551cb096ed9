// Copyright 2026 the maxent-nn authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Classical laminate theory. Units are GPa for moduli and mm for lengths, so
// A is in GPa*mm (kN/mm), B in GPa*mm^2 and D in GPa*mm^3.

#include <Eigen/Dense>
#include <array>
#include <map>
#include <string>
#include <vector>

namespace maxent::laminate {

using Matrix3 = Eigen::Matrix3d;

struct PlyProperties {
  double e1 = 0.0;
  double e2 = 0.0;
  double nu12 = 0.0;
  double g12 = 0.0;
  double thickness = 0.0;
  // Out-of-plane constants are carried for completeness; in-plane CLT ignores them.
  double nu23 = 0.0;
  double g23 = 0.0;

  /// Throws Error(invalid_material) if the ply cannot be physical.
  void validate() const;

  /// T700G unidirectional prepreg used by the reference coupons.
  static PlyProperties t700g();
};

struct Layup {
  std::string name;
  /// Ply angles in degrees, top to bottom.
  std::vector<double> angles;
  PlyProperties ply;

  double total_thickness() const { return ply.thickness * static_cast<double>(angles.size()); }
};

struct ABDMatrices {
  Matrix3 a = Matrix3::Zero();
  Matrix3 b = Matrix3::Zero();
  Matrix3 d = Matrix3::Zero();
};

/// In-plane compliance in ply axes (rows eps1, eps2, gamma12).
Matrix3 ply_compliance(const PlyProperties& ply);

/// Reduced stiffness in ply axes, the inverse of the compliance.
Matrix3 ply_stiffness_q12(const PlyProperties& ply);

/// Transformed reduced stiffness for a ply whose fibres sit at `angle_deg`
/// from the laminate x axis.
Matrix3 rotate_to_laminate_axes(const Matrix3& q12, double angle_deg);

/// A, B, D with ply interfaces measured from the mid-plane, first ply at
/// z = -H/2.
ABDMatrices abd_matrices(const Layup& layup);

/// A11 A12 A16 A22 A26 A66, then the same six terms of B and of D.
std::array<double, 18> stiffness_feature_row(const ABDMatrices& abd);

/// Names matching stiffness_feature_row: "A_11", "A_12", ... "D_66".
const std::array<std::string, 18>& stiffness_feature_names();

/// The three reference layups keyed 1..3, built from `ply`.
std::map<int, Layup> reference_layups(const PlyProperties& ply = PlyProperties::t700g());

}  // namespace maxent::laminate
