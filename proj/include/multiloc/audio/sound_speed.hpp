#pragma once

namespace multiloc::audio {

// Linear temperature model c = 331.3 + 0.606 * T, valid for T in [-20, 50] C.
double speed_of_sound(double temperature_c);

struct SoundSpeedModel {
  double temperature_c = 22.0;
  double c = 0.0;  // m/s, derived

  static SoundSpeedModel at(double temperature_c);
};

// Lower bound of the model over its temperature range; used for the
// physical TDOA bound so retained delays stay feasible at any temperature.
inline constexpr double kMinSpeedOfSound = 300.0;

}  // namespace multiloc::audio
