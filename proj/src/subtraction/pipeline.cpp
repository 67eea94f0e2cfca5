#include "kitten/errors.hpp"
#include "kitten/subtraction.hpp"
#include "subtraction_internal.hpp"

namespace kitten::subtraction {

void ExperimentParams::validate() const {
    spec.validate();
    if (!(r1 >= 0.0 && r1 < 1.0)) throw InvalidArgument("input impurity r1 must lie in [0, 1)");
    if (!(r2 > 0.0 && r2 < 1.0)) throw InvalidArgument("tap reflectivity r2 must lie in (0, 1)");
    if (!(mode_purity >= 0.0 && mode_purity <= 1.0)) throw InvalidArgument("mode purity must lie in [0, 1]");
    if (!(eta_hd >= 0.0 && eta_hd <= 1.0)) throw InvalidArgument("homodyne efficiency must lie in [0, 1]");
}

KittenState prepare_kitten_detailed(const ExperimentParams& params, const DetectorModel& det,
                                    ClickWeighting weighting) {
    params.validate();
    det.validate();
    const DensityMatrix input = fock::impure_squeezed_vacuum(params.spec, params.r1);
    if (fock::insufficient_cutoff(input)) {
        throw TruncationOverflow("squeezed input is not resolved by the Fock cutoff; raise nmax");
    }
    const SubtractionFamily fam = subtraction_family(input, params.r2);

    KittenState out;
    DensityMatrix projected;
    if (det.resolving) {
        projected = internal::resolving_state(fam, det, det.m, &out.herald_probability);
    } else {
        projected = internal::non_resolving_state(fam, det, det.m, weighting, &out.herald_probability);
    }
    const DensityMatrix unprojected = fock::loss_channel(input, params.t2());
    out.state = fock::loss_channel(mode_mix(projected, unprojected, params.mode_purity), params.eta_hd);
    return out;
}

DensityMatrix prepare_kitten(const ExperimentParams& params, const DetectorModel& det) {
    return prepare_kitten_detailed(params, det).state;
}

}  // namespace kitten::subtraction
