#pragma once

#include "hyperflow/field.hpp"

namespace hyperflow {

// Forward DFT; coefficients normalized to Fourier-series convention
// (divide by the number of points).
SpectralField transform(const RealField& field);

// Inverse DFT, dropping the (round-off sized) imaginary part.
RealField inverse_transform(const SpectralField& spec);

}  // namespace hyperflow
