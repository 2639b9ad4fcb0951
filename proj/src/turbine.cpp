#include "windspc/turbine.hpp"

#include <algorithm>
#include <cmath>

#include "windspc/error.hpp"

namespace windspc {

void GeneratorBands::validate() const {
    if (!(0 < secondary_low && secondary_low < secondary_high &&
          secondary_high < primary_min)) {
        fail(Errc::InvalidParams, "generator bands must satisfy 0 < low < high < primary_min");
    }
}

GeneratorUse classify_generator(double rotor_rpm, const GeneratorBands& bands) {
    bands.validate();
    if (std::isnan(rotor_rpm) || rotor_rpm < 0.0) {
        fail(Errc::NegativeSpeed, "rotor speed must be nonnegative");
    }
    if (rotor_rpm > bands.primary_min) return GeneratorUse::Primary;
    if (rotor_rpm >= bands.secondary_low && rotor_rpm <= bands.secondary_high) {
        return GeneratorUse::Secondary;
    }
    return GeneratorUse::NoneInUse;
}

void PowerCurveParams::validate() const {
    if (!(air_density > 0) || !(rotor_area > 0)) {
        fail(Errc::InvalidParams, "air density and rotor area must be positive");
    }
    if (!(power_coefficient > 0 && power_coefficient < 1)) {
        fail(Errc::InvalidParams, "power coefficient must lie in (0,1)");
    }
    if (!(0 < cut_in && cut_in < rated && rated < cut_out)) {
        fail(Errc::InvalidParams, "speeds must satisfy 0 < cut_in < rated < cut_out");
    }
    if (!(rated_power_w > 0)) fail(Errc::InvalidParams, "rated power must be positive");
}

double theoretical_power(double wind_speed, const PowerCurveParams& params) {
    params.validate();
    if (std::isnan(wind_speed) || wind_speed < 0.0) {
        fail(Errc::InvalidParams, "wind speed must be nonnegative");
    }
    if (wind_speed < params.cut_in || wind_speed > params.cut_out) return 0.0;
    double cubic = 0.5 * params.air_density * params.rotor_area * params.power_coefficient *
                   wind_speed * wind_speed * wind_speed;
    return std::min(cubic, params.rated_power_w);
}

}  // namespace windspc
