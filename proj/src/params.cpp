#include "lvseasons/params.hpp"

#include <cmath>
#include <sstream>

namespace lvseasons {

namespace {

std::string joined_message(const std::vector<ParamViolation>& v) {
  std::ostringstream os;
  os << "invalid parameters:";
  for (const auto& item : v)
    os << " [" << item.code << " " << item.field << "=" << item.value << "]";
  return os.str();
}

void check_positive(std::vector<ParamViolation>& out, const std::string& field,
                    double value) {
  if (!std::isfinite(value))
    out.push_back({"NonFiniteValue", field, value});
  else if (!(value > 0.0))
    out.push_back({"NonPositiveParameter", field, value});
}

}  // namespace

InvalidParams::InvalidParams(std::vector<ParamViolation> v)
    : std::invalid_argument(joined_message(v)), violations(std::move(v)) {}

std::vector<ParamViolation> validate_params(const SeasonalParams& raw) {
  std::vector<ParamViolation> out;
  check_positive(out, "omega", raw.period);
  if (!std::isfinite(raw.good_fraction))
    out.push_back({"NonFiniteValue", "phi", raw.good_fraction});
  else if (!(raw.good_fraction > 0.0 && raw.good_fraction <= 1.0))
    out.push_back({"PhiOutOfRange", "phi", raw.good_fraction});
  for (int i = 0; i < 3; ++i)
    check_positive(out, "mu" + std::to_string(i + 1), raw.death_rate[i]);
  for (int i = 0; i < 3; ++i)
    check_positive(out, "b" + std::to_string(i + 1), raw.growth_rate[i]);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      check_positive(out,
                     "a" + std::to_string(i + 1) + std::to_string(j + 1),
                     raw.competition(i, j));
  return out;
}

const SeasonalParams& checked(const SeasonalParams& raw) {
  auto violations = validate_params(raw);
  if (!violations.empty()) throw InvalidParams(std::move(violations));
  return raw;
}

DerivedQuantities derive(const SeasonalParams& params) {
  checked(params);
  const double good = params.good_duration();
  const double bad = params.bad_duration();
  const Mat3& a = params.competition;

  DerivedQuantities d;
  for (int i = 0; i < 3; ++i) {
    d.net_growth[i] =
        params.growth_rate[i] * good - params.death_rate[i] * bad;
    d.survival[i] = std::exp(-params.death_rate[i] * bad);
  }
  const Vec3& r = d.net_growth;
  for (int i = 0; i < 3; ++i) {
    d.axial_moment[i] = r[i] / a(i, i);
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      d.invasion_log(i, j) = r[j] - a(j, i) * r[i] / a(i, i);
      d.invasion_log_scaled(i, j) = a(i, i) * r[j] - a(j, i) * r[i];
      const double minor = a(i, i) * a(j, j) - a(i, j) * a(j, i);
      if (minor != 0.0)
        d.pair_moment[i][j] = (a(j, j) * r[i] - a(i, j) * r[j]) / minor;
    }
  }
  const Mat3& w = d.invasion_log;
  d.cycle_discriminant =
      w(0, 1) * w(1, 2) * w(2, 0) + w(1, 0) * w(0, 2) * w(2, 1);
  return d;
}

}  // namespace lvseasons
