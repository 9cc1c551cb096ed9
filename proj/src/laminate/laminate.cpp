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

#include "laminate/laminate.hpp"

#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "laminate/layup_notation.hpp"

namespace maxent::laminate {

void PlyProperties::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(e1) || !positive(e2) || !positive(g12)) {
    fail(ErrorCode::invalid_material, "ply moduli must be positive");
  }
  if (!positive(thickness)) fail(ErrorCode::invalid_material, "ply thickness must be positive");
  if (!(nu12 >= 0.0 && nu12 < 0.5)) {
    fail(ErrorCode::invalid_material, "ply Poisson ratio nu12 must lie in [0, 0.5)");
  }
  if (!(nu12 * nu12 * e2 / e1 < 1.0)) {
    fail(ErrorCode::invalid_material, "ply compliance is not positive definite");
  }
}

PlyProperties PlyProperties::t700g() {
  PlyProperties p;
  p.e1 = 137.5;
  p.e2 = 8.4;
  p.nu12 = 0.309;
  p.nu23 = 0.5;
  p.g12 = 6.2;
  p.g23 = 3.092;
  p.thickness = 0.132;
  return p;
}

Matrix3 ply_compliance(const PlyProperties& ply) {
  ply.validate();
  Matrix3 s = Matrix3::Zero();
  s(0, 0) = 1.0 / ply.e1;
  s(0, 1) = s(1, 0) = -ply.nu12 / ply.e1;
  s(1, 1) = 1.0 / ply.e2;
  s(2, 2) = 1.0 / ply.g12;
  return s;
}

Matrix3 ply_stiffness_q12(const PlyProperties& ply) {
  ply.validate();
  const double nu21 = ply.nu12 * ply.e2 / ply.e1;
  const double denom = 1.0 - ply.nu12 * nu21;
  if (!(denom > 0.0)) fail(ErrorCode::invalid_material, "ply compliance is singular");
  Matrix3 q = Matrix3::Zero();
  q(0, 0) = ply.e1 / denom;
  q(1, 1) = ply.e2 / denom;
  q(0, 1) = q(1, 0) = ply.nu12 * ply.e2 / denom;
  q(2, 2) = ply.g12;
  return q;
}

Matrix3 rotate_to_laminate_axes(const Matrix3& q12, double angle_deg) {
  const double theta = angle_deg * std::numbers::pi / 180.0;
  const double m = std::cos(theta);
  const double n = std::sin(theta);
  const double m2 = m * m, n2 = n * n;
  const double m4 = m2 * m2, n4 = n2 * n2, m2n2 = m2 * n2;

  const double q11 = q12(0, 0), q22 = q12(1, 1), q1_2 = q12(0, 1), q66 = q12(2, 2);

  Matrix3 qb;
  qb(0, 0) = q11 * m4 + 2.0 * (q1_2 + 2.0 * q66) * m2n2 + q22 * n4;
  qb(1, 1) = q11 * n4 + 2.0 * (q1_2 + 2.0 * q66) * m2n2 + q22 * m4;
  qb(0, 1) = (q11 + q22 - 4.0 * q66) * m2n2 + q1_2 * (m4 + n4);
  qb(0, 2) = (q11 - q1_2 - 2.0 * q66) * m2 * m * n + (q1_2 - q22 + 2.0 * q66) * m * n2 * n;
  qb(1, 2) = (q11 - q1_2 - 2.0 * q66) * m * n2 * n + (q1_2 - q22 + 2.0 * q66) * m2 * m * n;
  qb(2, 2) = (q11 + q22 - 2.0 * q1_2 - 2.0 * q66) * m2n2 + q66 * (m4 + n4);
  qb(1, 0) = qb(0, 1);
  qb(2, 0) = qb(0, 2);
  qb(2, 1) = qb(1, 2);
  return qb;
}

ABDMatrices abd_matrices(const Layup& layup) {
  if (layup.angles.empty()) fail(ErrorCode::invalid_input, "layup has no plies");
  for (double a : layup.angles) {
    if (!std::isfinite(a)) fail(ErrorCode::invalid_input, "ply angle is not finite");
  }
  const Matrix3 q12 = ply_stiffness_q12(layup.ply);
  const double t = layup.ply.thickness;
  const double half = 0.5 * layup.total_thickness();

  ABDMatrices abd;
  for (std::size_t k = 0; k < layup.angles.size(); ++k) {
    const double z0 = -half + t * static_cast<double>(k);
    const double z1 = z0 + t;
    const Matrix3 qbar = rotate_to_laminate_axes(q12, layup.angles[k]);
    abd.a += qbar * (z1 - z0);
    abd.b += qbar * (0.5 * (z1 * z1 - z0 * z0));
    abd.d += qbar * ((z1 * z1 * z1 - z0 * z0 * z0) / 3.0);
  }
  return abd;
}

std::array<double, 18> stiffness_feature_row(const ABDMatrices& abd) {
  constexpr std::array<std::pair<int, int>, 6> terms{
      {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};
  std::array<double, 18> row{};
  const Matrix3* blocks[3] = {&abd.a, &abd.b, &abd.d};
  for (std::size_t b = 0; b < 3; ++b) {
    for (std::size_t t = 0; t < terms.size(); ++t) {
      row[b * 6 + t] = (*blocks[b])(terms[t].first, terms[t].second);
    }
  }
  return row;
}

const std::array<std::string, 18>& stiffness_feature_names() {
  static const std::array<std::string, 18> names = [] {
    std::array<std::string, 18> out;
    const char* blocks = "ABD";
    const char* terms[6] = {"11", "12", "16", "22", "26", "66"};
    for (int b = 0; b < 3; ++b) {
      for (int t = 0; t < 6; ++t) out[b * 6 + t] = std::string(1, blocks[b]) + "_" + terms[t];
    }
    return out;
  }();
  return names;
}

std::map<int, Layup> reference_layups(const PlyProperties& ply) {
  // Layup 3 is listed with the same stacking as layup 1.
  std::map<int, Layup> out;
  out[1] = Layup{"[90_2/45/-45]_2S", parse_layup_notation("[90_2/45/-45]_2S"), ply};
  out[2] = Layup{"[0/90_2/45/-45/90]_S", parse_layup_notation("[0/90_2/45/-45/90]_S"), ply};
  out[3] = Layup{"[90_2/45/-45]_2S", parse_layup_notation("[90_2/45/-45]_2S"), ply};
  return out;
}

}  // namespace maxent::laminate
