#pragma once

namespace oscbath {

/// Dawson integral D(x) = exp(-x^2) \int_0^x exp(t^2) dt, accurate to ~1e-12.
/// Shows up as the real part of the smeared coupling's self-energy.
double dawson(double x);

} // namespace oscbath
