#pragma once

#include <optional>
#include <vector>

#include "dilatron/matrix_kernel.hpp"

namespace dilatron {

/// Linear map on n×n matrices, held as its Choi matrix and, when known, a
/// Kraus list.
///
/// Conventions: matrix units E_ab are ordered row-major (a outer, b inner);
/// choi = Σ_ab E_ab ⊗ φ(E_ab), so choi(a·n + i, b·n + j) = φ(E_ab)(i, j);
/// vec(A) stacks the columns of A, vec(A)(a·n + i) = A(i, a). With these,
/// choi = Σ_r vec(A_r)·vec(A_r)* for φ(X) = Σ_r A_r X A_r*.
class CPMap {
public:
    static CPMap from_kraus(std::vector<CMatrix> kraus);
    /// images[a·n + b] = φ(E_ab).
    static CPMap from_unit_images(const std::vector<CMatrix>& images);

    long dim() const { return dim_; }
    const std::optional<std::vector<CMatrix>>& kraus() const { return kraus_; }
    const CMatrix& choi() const { return choi_; }

    CMatrix apply(const CMatrix& x) const;
    /// φ(E_ab) for all a, b in row-major order.
    std::vector<CMatrix> unit_images() const;

private:
    CPMap(long dim, std::optional<std::vector<CMatrix>> kraus, CMatrix choi)
        : dim_(dim), kraus_(std::move(kraus)), choi_(std::move(choi)) {}

    long dim_;
    std::optional<std::vector<CMatrix>> kraus_;
    CMatrix choi_;
};

CVector vec(const CMatrix& a);
CMatrix unvec(const CVector& v, long n);

CMatrix choi_matrix(const std::vector<CMatrix>& kraus);
CMatrix choi_matrix_from_images(const std::vector<CMatrix>& images);

struct CPTest {
    bool cp = false;
    double min_eigenvalue = 0.0;
};

CPTest is_cp(const CPMap& phi, const Tolerances& tol = {});

/// Kraus operators √λ_r·unvec(q_r) from the spectral decomposition of the
/// Choi matrix, largest eigenvalue first. Throws NotCP.
std::vector<CMatrix> kraus_decompose(const CPMap& phi, const Tolerances& tol = {});

/// Rank of the Choi matrix at relative tolerance 1e-10. Throws NotCP.
long index(const CPMap& phi, const Tolerances& tol = {});

/// ‖φ(I)‖; informational, contractivity is not required anywhere.
double unit_norm(const CPMap& phi);

/// φ∘ψ.
CPMap compose(const CPMap& phi, const CPMap& psi);

/// The map T ↦ (P_H U P_H)·T·(P_H U P_H)* obtained by compressing the
/// automorphism X ↦ UXU* to the first n coordinates. It has a single Kraus
/// operator, so its index is 1 unless the corner vanishes.
CPMap automorphism_compression_check(const CMatrix& u, long h_dim, const Tolerances& tol = {});

}  // namespace dilatron
