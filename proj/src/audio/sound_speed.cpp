#include "multiloc/audio/sound_speed.hpp"

#include "multiloc/core/errors.hpp"

namespace multiloc::audio {

double speed_of_sound(double temperature_c) {
  if (temperature_c < -20.0 || temperature_c > 50.0) {
    throw ConfigError("temperature outside the supported [-20, 50] C range");
  }
  return 331.3 + 0.606 * temperature_c;
}

SoundSpeedModel SoundSpeedModel::at(double temperature_c) {
  return {temperature_c, speed_of_sound(temperature_c)};
}

}  // namespace multiloc::audio
