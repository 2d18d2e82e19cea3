#pragma once

namespace bartnik {

/// C-infinity step: 0 for t <= 0, 1 for t >= 1, built from exp(-1/t).
/// The flat contact at both ends is what lets cutoffs and interpolants be
/// spliced without introducing curvature jumps at the junctions.
double smoothstep(double t);
double smoothstep_d1(double t);
double smoothstep_d2(double t);

/// Quintic polynomial step 6t^5 - 15t^4 + 10t^3 (clamped). First and second
/// derivatives vanish at t = 0 and t = 1.
double quintic_step(double t);
double quintic_step_d1(double t);
double quintic_step_d2(double t);

/// Standard mollifier bump c * exp(-1/(1-t^2)) on (-1, 1), zero outside.
/// The constant c is fixed by numerical normalization so the mass is 1.
double mollifier(double t);
double mollifier_mass_raw();  // integral of the unnormalized bump

}  // namespace bartnik
