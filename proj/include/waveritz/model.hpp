#ifndef WAVERITZ_MODEL_HPP
#define WAVERITZ_MODEL_HPP

namespace waveritz {

/// 1D model system with polynomial potential V(x) = v0 + v1 x + v2 x^2
/// (atomic units). The harmonic oscillator has v2 = omega^2 / 2.
struct ModelSystem {
    enum class Kind { HarmonicOscillator, Polynomial };

    Kind kind = Kind::HarmonicOscillator;
    double omega = 1.0;
    double v0 = 0.0;
    double v1 = 0.0;
    double v2 = 0.5;

    static ModelSystem harmonic(double omega) {
        ModelSystem m;
        m.kind = Kind::HarmonicOscillator;
        m.omega = omega;
        m.v0 = 0.0;
        m.v1 = 0.0;
        m.v2 = 0.5 * omega * omega;
        return m;
    }

    static ModelSystem polynomial(double v0, double v1, double v2) {
        ModelSystem m;
        m.kind = Kind::Polynomial;
        m.omega = 0.0;
        m.v0 = v0;
        m.v1 = v1;
        m.v2 = v2;
        return m;
    }

    double potential(double x) const { return v0 + x * (v1 + x * v2); }
};

} // namespace waveritz

#endif
