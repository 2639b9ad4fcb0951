#pragma once

namespace windspc {

enum class GeneratorUse { Primary, Secondary, NoneInUse };

// Rotor-speed bands identifying which generator is producing. The primary
// generator runs strictly above primary_min RPM; the secondary generator runs
// in the closed band [secondary_low, secondary_high]; everything else means
// neither is in use.
struct GeneratorBands {
    double primary_min = 25.8;
    double secondary_low = 19.0;
    double secondary_high = 21.0;

    void validate() const;
};

GeneratorUse classify_generator(double rotor_rpm, const GeneratorBands& bands = {});

// Power curve parameters. Between cut-in and cut-out the output follows
// P = 0.5 * rho * A * c_p * u^3, capped at rated_power_w; outside that band
// the turbine produces nothing.
struct PowerCurveParams {
    double air_density = 1.225;       // kg/m^3
    double rotor_area = 1735.0;       // m^2 (disc area of a 47 m rotor)
    double power_coefficient = 0.4;   // dimensionless, in (0,1)
    double cut_in = 4.0;              // m/s
    double rated = 15.0;              // m/s
    double cut_out = 25.0;            // m/s
    double rated_power_w = 600000.0;  // W

    void validate() const;
};

// Output power in watts for a given wind speed.
double theoretical_power(double wind_speed, const PowerCurveParams& params);

}  // namespace windspc
