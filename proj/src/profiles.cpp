#include "qsom/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "qsom/errors.hpp"

namespace qsom {

std::size_t profile_period(ProfileMode mode) {
  return mode == ProfileMode::Daily ? 24u : 8760u;
}

ProfileMode parse_profile_mode(std::string_view token) {
  if (token == "daily") return ProfileMode::Daily;
  if (token == "annual") return ProfileMode::Annual;
  throw ConfigError("unknown profile mode '" + std::string(token) + "' (expected daily|annual)");
}

std::string_view profile_mode_name(ProfileMode mode) {
  return mode == ProfileMode::Daily ? "daily" : "annual";
}

double BuildingProfile::max_need() const {
  return *std::max_element(needs_wh.begin(), needs_wh.end());
}

double BuildingProfile::mean_need() const {
  return std::accumulate(needs_wh.begin(), needs_wh.end(), 0.0) /
         static_cast<double>(needs_wh.size());
}

void BuildingProfile::fill_derived() {
  if (action_range_wh <= 0.0) action_range_wh = 1.1 * max_need();
  if (battery_capacity_wh <= 0.0) battery_capacity_wh = 3.0 * max_need();
  if (solar_production_wh <= 0.0) solar_production_wh = 0.2 * mean_need();
}

void BuildingProfile::validate(ProfileMode mode) const {
  if (needs_wh.size() != profile_period(mode)) {
    throw ConfigError("profile '" + name + "': " + std::to_string(needs_wh.size()) +
                      " hourly needs, expected " + std::to_string(profile_period(mode)) +
                      " for " + std::string(profile_mode_name(mode)) + " mode");
  }
  for (std::size_t h = 0; h < needs_wh.size(); ++h) {
    if (!(needs_wh[h] > 0.0)) {
      throw ConfigError("profile '" + name + "': need at hour " + std::to_string(h) +
                        " must be positive");
    }
  }
  if (!(action_range_wh >= max_need())) {
    throw ConfigError("profile '" + name + "': action range below the maximum hourly need");
  }
  if (!(battery_capacity_wh > 0.0)) {
    throw ConfigError("profile '" + name + "': battery capacity must be positive");
  }
  if (solar_production_wh < 0.0) {
    throw ConfigError("profile '" + name + "': solar production must be nonnegative");
  }
}

std::string_view building_name(Building kind) {
  switch (kind) {
    case Building::Household: return "Household";
    case Building::Office: return "Office";
    case Building::School: return "School";
  }
  return "?";
}

namespace {

// Bump of unit height centered on `center` o'clock, wrapping around midnight.
double day_bump(double hour, double center, double width) {
  double delta = std::abs(hour - center);
  delta = std::min(delta, 24.0 - delta);
  return std::exp(-(delta * delta) / (2.0 * width * width));
}

double hourly_need(Building kind, double hour) {
  switch (kind) {
    case Building::Household:
      return 300.0 + 500.0 * day_bump(hour, 7.0, 2.0) + 900.0 * day_bump(hour, 19.0, 2.5);
    case Building::Office:
      return 400.0 + 4600.0 * day_bump(hour, 13.0, 4.5);
    case Building::School:
      return 600.0 + 11400.0 * day_bump(hour, 12.0, 4.0);
  }
  return 0.0;
}

double seasonal_swing(Building kind) {
  switch (kind) {
    case Building::Household: return 0.25;
    case Building::Office: return 0.12;
    case Building::School: return 0.20;
  }
  return 0.0;
}

}  // namespace

BuildingProfile builtin_profile(Building kind, ProfileMode mode) {
  BuildingProfile profile;
  profile.name = building_name(kind);
  const std::size_t period = profile_period(mode);
  profile.needs_wh.resize(period);
  for (std::size_t h = 0; h < period; ++h) {
    double need = hourly_need(kind, static_cast<double>(h % 24));
    if (mode == ProfileMode::Annual) {
      // Consumption peaks in winter; day 0 is January 1st.
      const double day = static_cast<double>(h / 24);
      need *= 1.0 + seasonal_swing(kind) * std::cos(2.0 * std::numbers::pi * day / 365.0);
    }
    profile.needs_wh[h] = need;
  }
  profile.fill_derived();
  return profile;
}

BuildingProfile load_profile_csv(const std::filesystem::path& file, ProfileMode mode) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open profile file '" + file.string() + "'");

  const auto fail = [&](std::size_t row, const std::string& what) -> ConfigError {
    return ConfigError("profile file '" + file.string() + "', row " + std::to_string(row) + ": " +
                       what);
  };

  std::string line;
  if (!std::getline(in, line)) throw fail(0, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "hour_index,need_wh") {
    throw fail(0, "header must be exactly 'hour_index,need_wh', got '" + line + "'");
  }

  BuildingProfile profile;
  profile.name = file.stem().string();
  const std::size_t period = profile_period(mode);
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++row;
    std::istringstream fields(line);
    std::string hour_text, need_text;
    if (!std::getline(fields, hour_text, ',') || !std::getline(fields, need_text)) {
      throw fail(row, "expected two comma-separated columns");
    }
    std::size_t hour = 0;
    double need = 0.0;
    try {
      hour = std::stoul(hour_text);
      need = std::stod(need_text);
    } catch (const std::exception&) {
      throw fail(row, "unparseable value '" + line + "'");
    }
    if (hour != row - 1) {
      throw fail(row, "hour_index " + std::to_string(hour) + " out of order (expected " +
                          std::to_string(row - 1) + ")");
    }
    if (!(need > 0.0)) throw fail(row, "need_wh must be positive");
    profile.needs_wh.push_back(need);
  }
  if (profile.needs_wh.size() != period) {
    throw ConfigError("profile file '" + file.string() + "': " +
                      std::to_string(profile.needs_wh.size()) + " data rows, expected " +
                      std::to_string(period) + " for " + std::string(profile_mode_name(mode)) +
                      " mode");
  }
  profile.fill_derived();
  profile.validate(mode);
  return profile;
}

std::vector<BuildingProfile> load_profiles(const std::vector<std::filesystem::path>& files,
                                           ProfileMode mode) {
  std::vector<BuildingProfile> profiles;
  profiles.reserve(files.size());
  for (const auto& file : files) profiles.push_back(load_profile_csv(file, mode));
  return profiles;
}

}  // namespace qsom
