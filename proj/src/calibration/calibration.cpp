#include "kitten/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kitten/errors.hpp"

namespace kitten::calibration {
namespace {

void check_unit(double v, const char* name) {
    if (!(v > 0.0 && v <= 1.0)) throw CalibrationError(std::string(name) + " must lie in (0, 1]");
}

void check_pair(double v_sqz, double v_asqz) {
    if (!(v_sqz > 0.0 && v_sqz < 1.0)) throw CalibrationError("squeezed variance must lie in (0, 1)");
    if (!(v_asqz > 1.0) || !std::isfinite(v_asqz)) {
        throw CalibrationError("anti-squeezed variance must exceed the vacuum level 1");
    }
}

}  // namespace

double homodyne_efficiency(double eta_qe, double eta_t, double zeta) {
    check_unit(eta_qe, "photodiode quantum efficiency");
    check_unit(eta_t, "path transmission");
    check_unit(zeta, "fringe visibility");
    return eta_qe * eta_t * zeta * zeta;
}

double estimate_pure_squeezing(double v_sqz, double v_asqz) {
    check_pair(v_sqz, v_asqz);
    return (1.0 - v_sqz) / (v_asqz - 1.0);
}

double estimate_total_impurity(double v_sqz, double v_asqz, double eta_hd) {
    check_pair(v_sqz, v_asqz);
    check_unit(eta_hd, "homodyne efficiency");
    const double s = 2.0 - v_sqz - v_asqz;
    if (std::abs(s) < 1e-9) {
        throw CalibrationError("ill-conditioned measurement: V_sqz + V_asqz is too close to 2");
    }
    const double r = (eta_hd * s - (1.0 - v_sqz) * (1.0 - v_asqz)) / (s * eta_hd);
    // Tiny negative values are rounding on a pure-state pair.
    if (r < 0.0 && r > -1e-12) return 0.0;
    if (!(r >= 0.0 && r < 1.0)) {
        throw CalibrationError("measured variances imply an impurity outside [0, 1): " + std::to_string(r));
    }
    return r;
}

double split_impurity(double r_total, double r2) {
    if (!(r_total >= 0.0 && r_total < 1.0)) throw CalibrationError("total impurity must lie in [0, 1)");
    if (!(r2 >= 0.0 && r2 < 1.0)) throw CalibrationError("tap reflectivity must lie in [0, 1)");
    const double r1 = 1.0 - (1.0 - r_total) / (1.0 - r2);
    if (r1 < -1e-12) {
        throw CalibrationError("tap reflectivity exceeds the measured total impurity (r1 = " +
                               std::to_string(r1) + ")");
    }
    return std::max(0.0, r1);
}

double db_conversion(double value, DbDirection direction) {
    if (direction == DbDirection::to_db) {
        if (!(value > 0.0)) throw InvalidArgument("dB conversion needs a positive linear value");
        return 10.0 * std::log10(value);
    }
    if (!std::isfinite(value)) throw InvalidArgument("dB value must be finite");
    return std::pow(10.0, value / 10.0);
}

CalibrationResult calibrate(double v_sqz, double v_asqz, double eta_hd, double r2) {
    CalibrationResult out;
    out.eta_hd = eta_hd;
    out.v0 = estimate_pure_squeezing(v_sqz, v_asqz);
    out.v0_db = to_db(out.v0);
    out.r_total = estimate_total_impurity(v_sqz, v_asqz, eta_hd);
    out.r1 = split_impurity(out.r_total, r2);
    return out;
}

CalibrationResult calibrate(const CalibrationInput& in) {
    return calibrate(in.v_sqz, in.v_asqz, homodyne_efficiency(in.eta_qe, in.eta_t, in.zeta), in.r2);
}

}  // namespace kitten::calibration
