#pragma once
// Maps laboratory observables onto model parameters. Variances are linear and in
// vacuum units (vacuum = 1).

namespace kitten::calibration {

struct CalibrationInput {
    double v_sqz = 0.661;
    double v_asqz = 1.995;
    double eta_qe = 1.0;
    double eta_t = 1.0;
    double zeta = 1.0;
    double r2 = 0.08;
};

/// eta_QE * eta_t * zeta^2
double homodyne_efficiency(double eta_qe, double eta_t, double zeta);

/// V0 = (1 - V_sqz) / (V_asqz - 1)
double estimate_pure_squeezing(double v_sqz, double v_asqz);

/// Total impurity seen by the homodyne detector (input impurity plus tap loss).
double estimate_total_impurity(double v_sqz, double v_asqz, double eta_hd);

/// r1 such that (1 - r1)(1 - r2) = 1 - r_total.
double split_impurity(double r_total, double r2);

enum class DbDirection { to_db, from_db };
double db_conversion(double value, DbDirection direction);
inline double to_db(double linear) { return db_conversion(linear, DbDirection::to_db); }
inline double from_db(double db) { return db_conversion(db, DbDirection::from_db); }

struct CalibrationResult {
    double eta_hd = 1.0;
    double v0 = 0.0;
    double v0_db = 0.0;
    double r_total = 0.0;
    double r1 = 0.0;
};

/// The whole chain with eta_HD taken from the efficiency components.
CalibrationResult calibrate(const CalibrationInput& in);
/// The whole chain with a directly measured eta_HD.
CalibrationResult calibrate(double v_sqz, double v_asqz, double eta_hd, double r2);

}  // namespace kitten::calibration
