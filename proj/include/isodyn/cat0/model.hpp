#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

#include "isodyn/disk/poincare.hpp"
#include "isodyn/util/numeric.hpp"

namespace isodyn::cat0 {

using Complex = std::complex<double>;

// Which factors a model has: R^m, H^2, or the product R^m x H^2.
struct Signature {
    int euclidean_dim = 0;
    bool hyperbolic = false;

    bool operator==(const Signature&) const = default;

    static Signature euclidean(int m) { return {m, false}; }
    static Signature h2() { return {0, true}; }
    static Signature product(int m) { return {m, true}; }
};

struct Cat0Point {
    Eigen::VectorXd euc;       // empty when the model has no Euclidean factor
    Complex hyp{0.0, 0.0};     // ignored when the model has no hyperbolic factor
};

// Product of R^m with the Poincare disk; factor distances combine in quadrature.
class Cat0Model {
  public:
    using Point = Cat0Point;

    explicit Cat0Model(Signature sig) : sig_(sig) {
        if (sig.euclidean_dim < 0 || (sig.euclidean_dim == 0 && !sig.hyperbolic))
            throw std::invalid_argument("cat0: empty model signature");
    }

    const Signature& signature() const { return sig_; }

    void validate(const Point& p) const {
        if (p.euc.size() != sig_.euclidean_dim)
            throw std::invalid_argument("cat0: point has wrong Euclidean dimension");
        if (sig_.hyperbolic && std::abs(p.hyp) >= 1.0 - 1e-12)
            throw std::domain_error("cat0: hyperbolic coordinate outside the open disk");
    }

    double distance(const Point& p, const Point& q) const {
        validate(p);
        validate(q);
        double d2 = 0.0;
        if (sig_.euclidean_dim > 0) d2 += (p.euc - q.euc).squaredNorm();
        if (sig_.hyperbolic) d2 += util::sqr(disk::poincare_distance(p.hyp, q.hyp));
        return std::sqrt(d2);
    }

    Point basepoint() const {
        Point p;
        p.euc = Eigen::VectorXd::Zero(sig_.euclidean_dim);
        return p;
    }

    Point make_point(Eigen::VectorXd euc, Complex hyp = Complex(0.0, 0.0)) const {
        Point p{std::move(euc), hyp};
        validate(p);
        return p;
    }

  private:
    Signature sig_;
};

}  // namespace isodyn::cat0
