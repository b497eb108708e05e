#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dilatron/contraction_tuple.hpp"
#include "dilatron/dilation_single.hpp"
#include "dilatron/matrix_kernel.hpp"
#include "dilatron/polynomial.hpp"

namespace dilatron {

using TorusPoint = std::vector<Complex>;

struct JointDiag {
    CMatrix basis;                            // unitary Q, columns are joint eigenvectors
    std::vector<std::vector<Complex>> spectra; // spectra[j][i]: eigenvalue of U_j on column i
    double residual = 0.0;                     // max_j ‖U_j Q − Q diag(spectra[j])‖
};

/// Simultaneous unitary diagonalization of commuting unitaries.
///
/// A random combination Z = Σ c_j U_j (c_j complex Gaussian drawn from
/// `seed`) is normal, so its Schur form is diagonal. When some Q*U_jQ keeps
/// an off-diagonal residual above tol.jd the eigenvalues of Z are clustered
/// (gap 1e-7) and each cluster is split again with fresh coefficients, up to
/// depth 5. Columns are sorted by (arg w_1, …, arg w_k), arg ∈ [0, 2π).
JointDiag joint_diagonalize(const std::vector<CMatrix>& unitaries, std::uint64_t seed = 42,
                            const Tolerances& tol = {});

struct VNCertificate {
    std::vector<TorusPoint> points;  // w^i on T^k
    std::vector<CMatrix> weights;    // A_i = (P_H e_i)(P_H e_i)*, n×n PSD, Σ A_i = I
    int order = 0;                   // certified polynomial degree
};

struct CubatureRule {
    std::vector<TorusPoint> points;
    std::vector<double> weights;     // nonnegative, Σ = 1
    int order = 0;
};

/// Operator weights from a joint eigenbasis of the dilation. Throws
/// NotADilation when `dil` does not dilate `tuple` at its declared order.
VNCertificate vn_certificate(const NDilation& dil, const ContractionTuple& tuple,
                             std::uint64_t seed = 42, const Tolerances& tol = {});

/// max over |α| ≤ order of ‖T^α − Σ_i (w^i)^α A_i‖.
double certificate_reconstruction_residual(const VNCertificate& cert,
                                           const ContractionTuple& tuple);

/// Rule with (N+1)^k torus points reproducing p(t) for every p of degree ≤ N.
CubatureRule scalar_cubature(const std::vector<Complex>& t_point, int n_order,
                             std::uint64_t seed = 42, const Tolerances& tol = {});

struct VNCheckReport {
    double lhs = 0.0;                   // ‖p(T)‖
    std::optional<double> cert_bound;   // max_i |p(w^i)|
    double sup_bound = 0.0;             // max |p| over the torus grid and any certificate points
    int grid = 0;
    bool pass = false;
};

inline constexpr double kCertSlack = 1e-8;
inline constexpr double kSupSlack = 1e-6;

VNCheckReport vn_check(const ContractionTuple& tuple, const MultiPoly& p,
                       const VNCertificate* cert = nullptr, const Tolerances& tol = {},
                       std::optional<int> grid = std::nullopt);

}  // namespace dilatron
