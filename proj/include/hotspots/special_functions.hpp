#pragma once

#include <complex>
#include <stdexcept>

#include "hotspots/point.hpp"

namespace hotspots {

using Complex = std::complex<double>;

/// Thrown for arguments at a singularity or on the branch cut.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace special {

/// |z| at or below which the ascending series is used; above it the
/// Hankel asymptotic expansion takes over.
inline constexpr double kSeriesSwitchRadius = 14.0;

/// |z| above which the ascending series is summed in extended precision.
inline constexpr double kExtendedSeriesRadius = 5.0;

struct HankelPair {
    Complex h0;
    Complex h1;
};

/// First-kind Hankel functions of order zero and one, principal branch.
///
/// Relative accuracy is about 1e-13 for 1e-8 <= |z| <= 1e4 and
/// -0.6 <= Im z <= 3. Throws DomainError for z = 0 and for points on the
/// negative real axis (the branch cut).
HankelPair hankel1_01(Complex z);

Complex hankel1_0(Complex z);
Complex hankel1_1(Complex z);

/// Bessel J0, J1, Y0, Y1 through the same evaluation path.
struct BesselSet {
    Complex j0, j1, y0, y1;
};
BesselSet bessel_01(Complex z);

}  // namespace special

/// Free-space Helmholtz fundamental solution (i/4) H0(k |x - y|).
Complex fundamental_solution(Complex k, Point2 x, Point2 y);

}  // namespace hotspots
