#include <cmath>
#include <string>

#include "../fock_core/math_util.hpp"
#include "kitten/errors.hpp"
#include "kitten/subtraction.hpp"

namespace kitten::subtraction {

void DetectorModel::validate() const {
    if (!(pdc >= 0.0 && pdc < 1.0)) throw InvalidArgument("dark-count probability must lie in [0, 1)");
    if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidArgument("detector efficiency must lie in [0, 1]");
    if (m < 1) throw InvalidArgument("herald click count must be >= 1");
}

std::string_view to_string(DetectorKind kind) {
    switch (kind) {
        case DetectorKind::pnrd: return "PNRD";
        case DetectorKind::npnrd: return "NPNRD";
        case DetectorKind::impnrd: return "IMPNRD";
        case DetectorKind::imnpnrd: return "IMNPNRD";
    }
    return "?";
}

DetectorKind parse_detector_kind(std::string_view name) {
    std::string lower(name);
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "pnrd") return DetectorKind::pnrd;
    if (lower == "npnrd") return DetectorKind::npnrd;
    if (lower == "impnrd") return DetectorKind::impnrd;
    if (lower == "imnpnrd") return DetectorKind::imnpnrd;
    throw InvalidArgument("unknown detector model '" + std::string(name) + "'");
}

DetectorModel make_detector(DetectorKind kind, double pdc, double eta, unsigned m) {
    DetectorModel det;
    det.pdc = pdc;
    det.eta = eta;
    det.m = m;
    det.resolving = kind == DetectorKind::pnrd || kind == DetectorKind::impnrd;
    det.ideal = kind == DetectorKind::pnrd || kind == DetectorKind::npnrd;
    return det;
}

DetectorKind kind_of(const DetectorModel& det) {
    if (det.ideal) return det.resolving ? DetectorKind::pnrd : DetectorKind::npnrd;
    return det.resolving ? DetectorKind::impnrd : DetectorKind::imnpnrd;
}

double detector_response(std::size_t k, std::size_t m, const DetectorModel& det) {
    const double pdc = det.effective_pdc();
    const double eta = det.effective_eta();
    if (pdc == 0.0) return detail::binomial_pmf(k, m, eta);
    // sum over d dark counts; m - d real detections out of k photons
    double total = 0.0;
    const double log_pdc = std::log(pdc);
    for (std::size_t d = 0; d <= m; ++d) {
        const std::size_t detected = m - d;
        if (detected > k) continue;
        const double poisson = std::exp(-pdc + static_cast<double>(d) * log_pdc - detail::log_factorial(d));
        total += poisson * detail::binomial_pmf(k, detected, eta);
    }
    return total;
}

}  // namespace kitten::subtraction
