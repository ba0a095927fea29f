#pragma once

#include <cmath>

#include "error.hpp"

namespace tdldos {

/// Emitter ensemble excited at t0exc. Population is normalized so n02 = 1 by default.
struct EmitterParams {
    double n02 = 1.0;
    double gamma_nrad = 0.0; // 1/ns
    double t0exc = 0.0;      // ps

    void validate() const {
        if (!(n02 >= 0.0) || !std::isfinite(n02)) throw ValidationError("n02", "must be >= 0");
        if (!(gamma_nrad >= 0.0) || !std::isfinite(gamma_nrad))
            throw ValidationError("gamma_nrad", "must be >= 0");
        if (!std::isfinite(t0exc)) throw ValidationError("t0exc", "must be finite");
    }
};

} // namespace tdldos
