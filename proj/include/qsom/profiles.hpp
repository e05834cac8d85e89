#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace qsom {

enum class ProfileMode { Daily, Annual };

/// Hours covered by one profile cycle: 24 for daily, 8760 for annual.
std::size_t profile_period(ProfileMode mode);

ProfileMode parse_profile_mode(std::string_view token);
std::string_view profile_mode_name(ProfileMode mode);

/// One building archetype: its hourly energy needs plus the capacities that
/// follow from them. All energy quantities are Wh.
struct BuildingProfile {
  std::string name;
  std::vector<double> needs_wh;     // one entry per hour of the cycle
  double action_range_wh = 0.0;     // scales all six action dimensions
  double battery_capacity_wh = 0.0;
  double solar_production_wh = 0.0; // per step

  double max_need() const;
  double mean_need() const;

  /// Fills the zero/unset derived fields from the needs: action range
  /// 1.1 x max need, battery capacity 3 x max need, solar production
  /// 0.2 x mean need. Explicitly set fields are left alone.
  void fill_derived();

  void validate(ProfileMode mode) const;
};

enum class Building { Household, Office, School };

std::string_view building_name(Building kind);

/// Synthetic stand-ins for measured consumption data: residential morning and
/// evening peaks for households, business-hours plateaus for offices and
/// schools, plus a seasonal swing in annual mode. Deterministic.
BuildingProfile builtin_profile(Building kind, ProfileMode mode);

/// Reads one profile from a CSV file with header `hour_index,need_wh`.
/// Row count must match the mode's period; needs must be positive. Derived
/// fields are filled. Errors name the file and the offending row.
BuildingProfile load_profile_csv(const std::filesystem::path& file, ProfileMode mode);

/// Reads one profile per file.
std::vector<BuildingProfile> load_profiles(const std::vector<std::filesystem::path>& files,
                                           ProfileMode mode);

}  // namespace qsom
