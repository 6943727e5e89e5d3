#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "isodyn/disk/poincare.hpp"
#include "isodyn/util/numeric.hpp"

namespace isodyn::disk {

// Holomorphic self-map of the unit disk: a Moebius automorphism, a finite
// Blaschke product, or a polynomial whose sup-norm on the closed disk is
// verified below 1 on a boundary-adjacent grid.
class DiskMap {
  public:
    enum class Kind { Moebius, Blaschke, Polynomial };

    static DiskMap moebius(const MoebiusDisk& m) {
        DiskMap f;
        f.kind_ = Kind::Moebius;
        f.moeb_ = m;
        f.check_into_disk();
        return f;
    }

    static DiskMap blaschke(std::vector<Complex> zeros, Complex unimodular = Complex(1.0, 0.0)) {
        if (zeros.empty()) throw std::invalid_argument("blaschke: need at least one zero");
        for (const auto& z : zeros) require_in_disk(z);
        if (std::fabs(std::abs(unimodular) - 1.0) > 1e-12)
            throw std::invalid_argument("blaschke: factor must be unimodular");
        DiskMap f;
        f.kind_ = Kind::Blaschke;
        f.zeros_ = std::move(zeros);
        f.factor_ = unimodular;
        f.check_into_disk();
        return f;
    }

    static DiskMap polynomial(std::vector<Complex> coefficients) {
        if (coefficients.empty()) throw std::invalid_argument("polynomial: empty coefficient list");
        DiskMap f;
        f.kind_ = Kind::Polynomial;
        f.coeffs_ = std::move(coefficients);
        f.check_into_disk();
        return f;
    }

    Kind kind() const { return kind_; }
    double margin() const { return margin_; }

    Complex apply(const Complex& z) const {
        switch (kind_) {
            case Kind::Moebius:
                return moeb_.apply(z);
            case Kind::Blaschke: {
                Complex out = factor_;
                for (const auto& w : zeros_) out *= (z - w) / (1.0 - std::conj(w) * z);
                return out;
            }
            case Kind::Polynomial: {
                Complex acc(0.0, 0.0);
                for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
                return acc;
            }
        }
        return z;
    }

    const MoebiusDisk& moebius_part() const {
        if (kind_ != Kind::Moebius) throw std::logic_error("disk map: not a Moebius map");
        return moeb_;
    }

  private:
    // the defining invariant: the open disk maps into itself, verified on a
    // grid just inside the circle
    void check_into_disk() {
        const int grid = 1000;
        const double r = 1.0 - 1e-6;
        double worst = 1.0;
        for (int i = 0; i < grid; ++i) {
            const Complex z = std::polar(r, 2.0 * util::kPi * i / grid);
            worst = std::min(worst, 1.0 - std::abs(apply(z)));
        }
        margin_ = worst;
        // automorphisms flatten the margin to ~0 from inside; anything
        // negative beyond roundoff escapes the disk
        if (margin_ < -1e-9) throw std::invalid_argument("disk map: image leaves the unit disk");
    }

    Kind kind_ = Kind::Moebius;
    MoebiusDisk moeb_{};
    std::vector<Complex> zeros_;
    Complex factor_{1.0, 0.0};
    std::vector<Complex> coeffs_;
    double margin_ = 0.0;
};

// f(z) = e^{i phi} (z + z0)/(1 + conj(z0) z)
inline DiskMap automorphism(double phi, const Complex& z0) {
    return DiskMap::moebius(MoebiusDisk::automorphism(phi, z0));
}

// automorphism with axis (-1, +1), attracting at +1, translation length ell
inline DiskMap hyperbolic_automorphism(double ell) {
    const double t = std::tanh(0.5 * ell);
    return automorphism(0.0, Complex(t, 0.0));
}

// parabolic automorphism fixing z = 1; c is the half-plane translation step
inline DiskMap parabolic_automorphism(double c) {
    MoebiusDisk m;
    m.a = Complex(-c, 2.0);
    m.b = Complex(c, 0.0);
    m.c = Complex(-c, 0.0);
    m.d = Complex(c, 2.0);
    return DiskMap::moebius(m);
}

inline DiskMap elliptic_rotation(double alpha) { return automorphism(alpha, Complex(0.0, 0.0)); }

}  // namespace isodyn::disk
