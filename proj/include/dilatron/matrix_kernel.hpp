#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dilatron {

using Complex = std::complex<double>;

/// Dense complex matrix. Every operator (T, U, D_T, projections, weights)
/// is carried in this type.
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

enum class ErrorCode {
    NotHermitian,
    NotPSD,
    ShapeMismatch,
    NotContraction,
    NotInvariant,
    NotCommuting,
    NotDoublyCommuting,
    NotUnitary,
    FugledeResidual,
    DegenerateFailure,
    NotInDisc,
    NegativeWeight,
    DegreeExceedsOrder,
    NotCP,
    NotADilation,
    InvalidInput,
};

const char* to_string(ErrorCode code);

class DilationError : public std::runtime_error {
public:
    DilationError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Numerical tolerances shared by every module.
struct Tolerances {
    double eig = 1e-10;   // eigen/SVD residuals, unitarity of constructed matrices
    double herm = 1e-8;   // Hermitian symmetry acceptance
    double psd = 1e-8;    // PSD acceptance and contraction slack
    double rank = 1e-10;  // numerical rank threshold
    double dil = 1e-10;   // dilation compression residuals
    double dc = 1e-8;     // commutation / double commutation of user input
    double jd = 1e-8;     // joint diagonalization off-diagonal residual

    Tolerances scaled(double factor) const;

    /// Defaults multiplied by DILATRON_TOLERANCE_SCALE when that variable is set.
    static Tolerances from_env();
};

struct HermEig {
    RVector eigenvalues;   // ascending
    CMatrix eigenvectors;  // unitary, columns match eigenvalues
};

struct Svd {
    CMatrix u;
    RVector singular_values;  // descending
    CMatrix v;
};

/// Throws InvalidInput if any entry is NaN/Inf or the matrix is empty.
void require_finite(const CMatrix& a, const std::string& what = "matrix");

CMatrix adjoint(const CMatrix& a);
CMatrix identity(long n);

HermEig herm_eig(const CMatrix& a, const Tolerances& tol = {});
Svd svd(const CMatrix& a);

double operator_norm(const CMatrix& a);

/// Count of singular values strictly above tol * max(1, sigma_max).
long numerical_rank(const CMatrix& a, double tol);

/// Hermitian PSD square root. Eigenvalues in [-tol.psd, 0) are clamped to 0.
CMatrix psd_sqrt(const CMatrix& a, const Tolerances& tol = {});

/// ‖A*A − I‖.
double unitarity_residual(const CMatrix& a);
double commutator_norm(const CMatrix& a, const CMatrix& b);

using BlockGrid = std::vector<std::vector<std::optional<CMatrix>>>;

/// Dense assembly of a block grid; absent blocks are zero.
CMatrix block_assemble(const BlockGrid& blocks, const std::vector<long>& row_dims,
                       const std::vector<long>& col_dims);

/// Kronecker product a ⊗ b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace dilatron
