#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "isodyn/util/numeric.hpp"

namespace isodyn::disk {

using Complex = std::complex<double>;

inline void require_in_disk(const Complex& z) {
    if (std::abs(z) >= 1.0) throw std::domain_error("poincare: point outside the open unit disk");
}

// d(z,w) = 2 artanh |(z-w)/(1 - conj(z) w)|
inline double poincare_distance(const Complex& z, const Complex& w) {
    require_in_disk(z);
    require_in_disk(w);
    const double r = std::abs((z - w) / (1.0 - std::conj(z) * w));
    return 2.0 * std::atanh(std::min(r, 1.0 - 1e-17));
}

struct PoincareDiskModel {
    using Point = Complex;
    double distance(const Point& z, const Point& w) const { return poincare_distance(z, w); }
    Point basepoint() const { return Complex(0.0, 0.0); }
};

// Point at hyperbolic distance s from 0 in direction angle phi.
inline Complex disk_ray_point(double phi, double s) {
    return std::polar(std::tanh(0.5 * s), phi);
}

// Moebius transformation of the disk, stored as a complex 2x2 matrix acting
// by z -> (az+b)/(cz+d). Automorphisms of the disk have c = conj(b),
// d = conj(a) up to a common scalar.
struct MoebiusDisk {
    Complex a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};

    Complex apply(const Complex& z) const { return (a * z + b) / (c * z + d); }

    // Circle action; input and output are angles.
    double apply_boundary(double phi) const {
        const Complex z = std::polar(1.0, phi);
        return std::arg(apply(z));
    }

    MoebiusDisk compose(const MoebiusDisk& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }

    MoebiusDisk inverse() const { return {d, -b, -c, a}; }

    static MoebiusDisk identity() { return {}; }

    // f(z) = e^{i phi} (z + z0) / (1 + conj(z0) z), an automorphism for |z0| < 1.
    static MoebiusDisk automorphism(double phi, const Complex& z0) {
        require_in_disk(z0);
        const Complex rot = std::polar(1.0, phi);
        return {rot, rot * z0, std::conj(z0), Complex(1.0, 0.0)};
    }
};

}  // namespace isodyn::disk
