#pragma once

#include <cmath>

// |t| + sqrt(l+) + sqrt(l-) for the Rudolph family. l+- are the squared
// singular values of the block [[xy, xr], [ys, 1+r-s]] / 2 of D_x C D_y:
// (Frobenius^2 +- sqrt(Frobenius^4 - 4 det^2)) / 2.
inline double rudolph_closed_form(double x, double y, double r, double s, double t) {
  const double q = 1 + r - s;
  const double sum = q * q + r * r * x * x + s * s * y * y + x * x * y * y;
  const double disc = sum * sum - 4 * (1 + r) * (1 + r) * (1 - s) * (1 - s) * x * x * y * y;
  const double root = std::sqrt(std::max(0.0, disc));
  const double lp = (sum + root) / 8;
  // l+ l- = (det/4)^2 with det = (1+r)(1-s)xy; avoids cancellation in l-.
  const double det = (1 + r) * (1 - s) * x * y / 4;
  const double lm = lp > 0 ? det * det / lp : 0.0;
  return std::abs(t) + std::sqrt(lp) + std::sqrt(lm);
}

// The same expression with the r and s weights attached to x and y the other
// way round, i.e. the closed form for the transposed block. Equal to
// rudolph_closed_form(y, x, r, s, t).
inline double rudolph_closed_form_transposed(double x, double y, double r, double s, double t) {
  return rudolph_closed_form(y, x, r, s, t);
}
