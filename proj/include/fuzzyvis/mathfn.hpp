#pragma once

namespace fuzzyvis {

// Exponential integral E1(x) = int_x^inf e^-t / t dt for x > 0.
double exp_integral_e1(double x);

// Upper incomplete gamma Gamma(s, x) = int_x^inf t^(s-1) e^-t dt for x > 0
// and any real s (finite for all real s when x > 0). Integer and half-integer
// s <= 0 are reached by downward recursion from E1 / erfc bases; s > 0 uses a
// Lentz continued fraction.
double upper_incomplete_gamma(double s, double x);

// Volume of the unit ball in d dimensions, pi^(d/2) / Gamma(d/2 + 1).
double unit_ball_volume(int d);

}  // namespace fuzzyvis
