#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dilatron/contraction_tuple.hpp"
#include "dilatron/matrix_kernel.hpp"

namespace dilatron {

/// Defect operators of a contraction T, built in closed form from the SVD
/// T = W·Σ·V0*. Directions with σ ≥ 1 − tol.rank are treated as isometric
/// (no defect), so d_rank is stable for unitary and near-unitary input.
struct DefectData {
    CMatrix d_op;            // D_T = (I − T*T)^{1/2}
    CMatrix d_star_op;       // D_{T*} = (I − TT*)^{1/2}
    long d_rank = 0;         // d_T = dim Im D_T
    CMatrix iso_basis;       // n×d_T, orthonormal columns spanning Im D_T
    CMatrix iso_basis_star;  // n×d_T, orthonormal columns spanning Im D_{T*}
    RVector defect_sigma;    // singular values of T on the defect directions
};

enum class Construction { halmos, egervary, doubly_commuting, commutant_pair, external };

const char* to_string(Construction c);
Construction construction_from_string(const std::string& s);

/// Commuting unitaries on K ⊇ H, where H is spanned by the first h_dim
/// coordinates, certified to dilate a tuple up to total degree `order`.
struct NDilation {
    std::vector<CMatrix> unitaries;
    long h_dim = 0;
    int order = 0;
    Construction construction = Construction::external;

    long dim() const { return unitaries.empty() ? 0 : unitaries.front().rows(); }
};

struct IndexResidual {
    MultiIndex index;
    double residual = 0.0;
};

struct VerificationReport {
    std::vector<IndexResidual> residuals;    // one per checked multi-index, in check order
    double max_residual = 0.0;               // over the compression residuals
    std::optional<MultiIndex> first_failure;
    double unitarity_residual = 0.0;         // max_i ‖U_i*U_i − I‖
    double commutation_residual = 0.0;       // max_{i<j} ‖U_iU_j − U_jU_i‖
    double tolerance = 0.0;
    bool pass = false;
};

DefectData defect(const CMatrix& t, const Tolerances& tol = {});

/// The 2n×2n unitary [[T, D_{T*}], [D_T, −T*]]; a 1-dilation only.
NDilation halmos_dilation(const CMatrix& t, const Tolerances& tol = {});

/// N-minimal unitary N-dilation on dimension n + N·d_T:
///
///     [ T       0  …  0   D_{T*}  ]
///     [ V·D_T   0  …  0  −V·T*    ]
///     [ 0       I             0   ]
///     [            ⋱              ]
///     [ 0            I        0   ]
///
/// with each copy of Im D_{T*} written in the coordinates of iso_basis_star
/// and V mapping the i-th defect right singular vector of T to the i-th left
/// one. A unitary T (d_T = 0) is returned as its own dilation.
NDilation egervary_dilation(const CMatrix& t, int n_order, const Tolerances& tol = {});

/// P_H·U_1^{a_1}⋯U_k^{a_k}·P_H for a nonnegative multi-index.
CMatrix compressed_power(const NDilation& dil, const MultiIndex& exponents);

/// T_1^{a_1}⋯T_k^{a_k}.
CMatrix tuple_power(const ContractionTuple& tuple, const MultiIndex& exponents);

/// Checks T^α = P_H U^α P_H for every α with |α| ≤ n_order (graded lex
/// order), together with unitarity and commutation of the U_i.
VerificationReport verify_dilation(const NDilation& dil, const ContractionTuple& tuple,
                                   int n_order, const Tolerances& tol = {});

struct MinimalityResult {
    bool minimal = false;
    long dimension = 0;  // dim span{U^k e : e ∈ H, 0 ≤ k ≤ N}
};

MinimalityResult check_n_minimality(const NDilation& dil, int n_order,
                                    const Tolerances& tol = {});

/// ‖T*h − h‖/‖h‖ for a vector h with Th = h. Throws NotInvariant when
/// ‖Th − h‖ > tol.dil·‖h‖.
double invariant_vector_check(const CMatrix& t, const CVector& h, const Tolerances& tol = {});

struct ErgodicReport {
    int order = 0;               // N
    int dilation_order = 0;      // 2N + 1
    long dilation_dim = 0;       // 2N + 2
    Complex scalar_sum;          // (1/(N+1)) Σ_{k=0}^{N} u^k, u = exp(2πi/(2N+2))
    double residual_modulus = 0.0;
    double closed_form_modulus = 0.0;  // |2/((N+1)(1−u))|
    double limit_target = 0.0;         // 2/π
    double compressed_mean = 0.0;      // |P_H (1/(N+1)) Σ U_N^k P_H|
    double cesaro_mean_of_t = 0.0;     // 1/(N+1) for T = 0
    double compression_residual = 0.0; // max_{1≤k≤N} |P_H U_N^k P_H|
    double eigen_residual = 0.0;       // ‖U_N v − u v‖/‖v‖ for the u-eigenvector
};

/// Cesàro means of the (2N+1)-dilation of T = 0 ∈ ℂ: the compression tends
/// to 0 while the mean over the eigenvalue u stays near 2/π in modulus.
ErgodicReport ergodic_demo(int n_order, const Tolerances& tol = {});

}  // namespace dilatron
