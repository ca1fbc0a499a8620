#ifndef WAVERITZ_PROBLEM_HPP
#define WAVERITZ_PROBLEM_HPP

#include "waveritz/connection.hpp"
#include "waveritz/filters.hpp"
#include "waveritz/model.hpp"

namespace waveritz {

/// Immutable bundle of the model system and basis machinery shared across
/// the pipeline.
struct Problem {
    ModelSystem model;
    FilterBank fb;
    ConnectionTable ct;
    double half_width = 8.0;

    static Problem harmonic(int genus, double omega, double half_width) {
        Problem p;
        p.model = ModelSystem::harmonic(omega);
        p.fb = build_filter(genus);
        p.ct = connection_table(p.fb);
        p.half_width = half_width;
        return p;
    }
};

} // namespace waveritz

#endif
