#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nehari/outer.hpp"
#include "nehari/parallel.hpp"
#include "nehari/spectral.hpp"

namespace nehari {

// S = [[phi, psi], [psi, f0]] with f0 = -conj(phi) psi / conj(psi).
class ScatteringMatrix {
public:
    ScatteringMatrix(SchurFunction phi, OuterFunction psi, GridFunction f0);

    const SchurFunction& phi() const noexcept { return phi_; }
    const OuterFunction& psi() const noexcept { return psi_; }
    const GridFunction& f0() const noexcept { return f0_; }
    std::size_t size() const noexcept { return f0_.size(); }

private:
    SchurFunction phi_;
    OuterFunction psi_;
    GridFunction f0_;
};

ScatteringMatrix build_scattering(const SchurFunction& phi);

// max over non-clipped nodes of the Frobenius norm of S*S - I.
double unitarity_residual(const ScatteringMatrix& s);

inline constexpr double kDenominatorFloor = 1e-12;
inline constexpr double kMaxDegenerateFraction = 0.01;

struct NehariSolution {
    GridFunction f;
    GridFunction amplitude; // A = psi / (1 - phi eps)
    GridFunction epsilon;
    ClipMask degenerate;    // |1 - phi eps| fell below the floor
    std::size_t degenerate_count = 0;
    double epsilon_anti_analytic = 0.0; // ||P- eps||_2
    bool epsilon_not_analytic = false;  // ||P- eps||_2 > 1e-6
};

// f = f0 + psi^2 eps / (1 - phi eps). eps is taken as raw samples in the
// closed unit disc; analyticity is only reported.
NehariSolution solve(const ScatteringMatrix& s, const GridFunction& eps, Exec exec = default_exec());

// Independent solves, one per eps, run concurrently under Exec::parallel.
std::vector<NehariSolution> solve_batch(const ScatteringMatrix& s, std::span<const GridFunction> eps,
                                        Exec exec = default_exec());

// max |1 - |f|^2 - |A|^2 (1 - |eps|^2)| over nodes that are neither
// defect-clipped nor denominator-degenerate.
double amplitude_identity_residual(const ScatteringMatrix& s, const NehariSolution& sol);

// phi = (Delta - Delta(0)) / (1 + Delta(0)) for an inner Delta with Delta(0) > 0.
SchurFunction counterexample_from_inner(const GridFunction& delta);

// ||P- f0||_2; vanishes when f0 is analytic.
double coset_residual_zero_test(const ScatteringMatrix& s);

} // namespace nehari
