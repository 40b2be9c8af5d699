// Copyright 2026 The TDC Authors. All Rights Reserved.
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

#include "tdc/oxts.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "tdc/errors.h"

namespace tdc {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr int kOxtsFieldCount = 30;

std::vector<double> ParseReals(std::string_view line, const char* what) {
  std::vector<double> out;
  std::istringstream in{std::string(line)};
  std::string token;
  while (in >> token) {
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw FormatError(std::string(what) + ": cannot parse '" + token + "'");
    }
    out.push_back(value);
  }
  return out;
}

}  // namespace

void OxtsRecord::Validate() const {
  if (!(std::abs(lat) <= 90.0) || !(std::abs(lon) <= 180.0)) {
    throw DomainError("oxts: latitude/longitude out of range");
  }
  if (!std::isfinite(alt) || !std::isfinite(roll) || !std::isfinite(pitch) ||
      !std::isfinite(yaw)) {
    throw DomainError("oxts: non-finite altitude or angle");
  }
}

OxtsRecord ParseOxtsLine(std::string_view line) {
  const std::vector<double> fields = ParseReals(line, "oxts");
  if (fields.size() < 6) {
    throw FormatError("oxts: expected at least 6 fields, got " +
                      std::to_string(fields.size()));
  }
  OxtsRecord rec;
  rec.lat = fields[0];
  rec.lon = fields[1];
  rec.alt = fields[2];
  rec.roll = fields[3];
  rec.pitch = fields[4];
  rec.yaw = fields[5];
  rec.extra.assign(fields.begin() + 6, fields.end());
  rec.Validate();
  return rec;
}

OxtsRecord ReadOxtsFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::string line;
  std::getline(in, line);
  try {
    return ParseOxtsLine(line);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string FormatOxtsLine(const OxtsRecord& record) {
  std::ostringstream out;
  out.precision(17);
  out << record.lat << ' ' << record.lon << ' ' << record.alt << ' '
      << record.roll << ' ' << record.pitch << ' ' << record.yaw;
  for (size_t i = 0; i + 6 < kOxtsFieldCount; ++i) {
    out << ' ' << (i < record.extra.size() ? record.extra[i] : 0.0);
  }
  return out.str();
}

double MercatorScale(double lat0_degrees) {
  return std::cos(lat0_degrees * kDegToRad);
}

RigidTransform OxtsToWorldPose(const OxtsRecord& record,
                               double scale_lat0_degrees) {
  if (!(std::abs(record.lat) < 90.0)) {
    throw DomainError("oxts: Mercator projection undefined at |lat| >= 90");
  }
  record.Validate();
  const double s = MercatorScale(scale_lat0_degrees);
  const double lat = record.lat * kDegToRad;
  const double lon = record.lon * kDegToRad;
  const Eigen::Vector3d t(
      s * kEarthRadius * lon,
      s * kEarthRadius * std::log(std::tan(std::numbers::pi / 4.0 + lat / 2.0)),
      record.alt);
  const Eigen::Matrix3d r =
      (Eigen::AngleAxisd(record.yaw, Eigen::Vector3d::UnitZ()) *
       Eigen::AngleAxisd(record.pitch, Eigen::Vector3d::UnitY()) *
       Eigen::AngleAxisd(record.roll, Eigen::Vector3d::UnitX()))
          .toRotationMatrix();
  return RigidTransform::FromRotationTranslation(r, t);
}

OxtsRecord WorldPoseToOxts(const RigidTransform& world_from_imu,
                           double scale_lat0_degrees) {
  const double s = MercatorScale(scale_lat0_degrees);
  const Eigen::Vector3d& t = world_from_imu.translation();
  const Eigen::Matrix3d& r = world_from_imu.rotation();
  OxtsRecord rec;
  rec.lon = t.x() / (s * kEarthRadius) / kDegToRad;
  rec.lat = (2.0 * std::atan(std::exp(t.y() / (s * kEarthRadius))) -
             std::numbers::pi / 2.0) /
            kDegToRad;
  rec.alt = t.z();
  rec.pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
  rec.roll = std::atan2(r(2, 1), r(2, 2));
  rec.yaw = std::atan2(r(1, 0), r(0, 0));
  rec.extra.assign(kOxtsFieldCount - 6, 0.0);
  return rec;
}

}  // namespace tdc
