#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nehari/spectral.hpp"

namespace nehari {

// log(1e-13). Log-moduli below this are raised to it and counted as clipped.
inline constexpr double kLogClipFloor = -29.933606208922594;
inline constexpr double kClipValue = 1e-13;
// Clipped measure at or above this fraction means "not log-integrable".
inline constexpr double kMaxClippedFraction = 0.10;

using ClipMask = std::vector<std::uint8_t>;

// A zero (order > 0) or pole (order < 0) sitting on grid node `index` that was
// factored out analytically as (1 - conj(zeta_index) zeta)^order.
struct ExtractedSingularity {
    std::size_t index;
    double order;
};

class OuterFunction {
public:
    OuterFunction(GridFunction boundary, cplx value_at_zero, RealGridFunction log_modulus, ClipMask clipped,
                  std::vector<ExtractedSingularity> extracted);

    const GridFunction& boundary() const noexcept { return boundary_; }
    cplx value_at_zero() const noexcept { return value_at_zero_; }
    // Clipped log-modulus u; |boundary[k]| == exp(u[k]).
    const RealGridFunction& log_modulus() const noexcept { return log_modulus_; }
    const ClipMask& clipped() const noexcept { return clipped_; }
    std::size_t clipped_count() const noexcept;
    const std::vector<ExtractedSingularity>& extracted() const noexcept { return extracted_; }
    std::size_t size() const noexcept { return boundary_.size(); }

private:
    GridFunction boundary_;
    cplx value_at_zero_;
    RealGridFunction log_modulus_;
    ClipMask clipped_;
    std::vector<ExtractedSingularity> extracted_;
};

// Boundary samples of a Schur-class generator phi with phi(0) = 0.
class SchurFunction {
public:
    // Validates max|phi| <= 1 + 1e-9, |mean(phi)| <= 1e-8 and a clipped defect
    // measure below 10%.
    static SchurFunction from_samples(GridFunction phi);

    const GridFunction& boundary() const noexcept { return boundary_; }
    // log(1 - |phi|^2), raised to kLogClipFloor where the defect is below 1e-13.
    const RealGridFunction& defect_log() const noexcept { return defect_log_; }
    double clip_floor() const noexcept { return kLogClipFloor; }
    const ClipMask& clipped() const noexcept { return clipped_; }
    bool is_clipped(std::size_t k) const noexcept { return clipped_[k] != 0; }
    std::size_t clipped_count() const noexcept;
    double clipped_fraction() const noexcept;
    std::size_t size() const noexcept { return boundary_.size(); }

    // exp(ic) phi.
    SchurFunction rotated(double c) const;

private:
    SchurFunction(GridFunction phi, RealGridFunction defect_log, ClipMask clipped);

    GridFunction boundary_;
    RealGridFunction defect_log_;
    ClipMask clipped_;
};

// exp(u + i u~). Entries equal to -inf or below kLogClipFloor are clipped;
// +inf or NaN is rejected. Isolated clipped nodes are treated as grid zeros:
// a local power law is fitted from the neighbours and the factor
// (1 - conj(zeta_0) zeta)^order is carried analytically instead of through
// the discrete conjugate.
OuterFunction outer_from_log_modulus(const std::vector<double>& u);
OuterFunction outer_from_log_modulus(const RealGridFunction& u);

// Same, with the caller deciding which nodes are clipped (and so eligible for
// singularity extraction). u must already be finite.
OuterFunction outer_from_clipped_log_modulus(const RealGridFunction& u, const ClipMask& clipped);

// psi: |psi|^2 = 1 - |phi|^2 off the clipped set, psi(0) > 0.
OuterFunction defect_outer(const SchurFunction& phi);

// h = 1/psi.
OuterFunction reciprocal_outer(const OuterFunction& psi);

} // namespace nehari
