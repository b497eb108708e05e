#include "dilatron/spectral_cubature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>
#include <sstream>

#include "dilatron/dilation_multi.hpp"
#include "dilatron/random.hpp"

namespace dilatron {

namespace {

constexpr double kClusterGap = 1e-7;
constexpr int kMaxDepth = 5;

double offdiag_residual(const std::vector<CMatrix>& us, const CMatrix& q) {
    double worst = 0.0;
    for (const CMatrix& u : us) {
        CMatrix d = q.adjoint() * u * q;
        d.diagonal().setZero();
        worst = std::max(worst, d.norm());
    }
    return worst;
}

// Groups indices of `eigs` into single-linkage clusters with link distance < gap.
std::vector<std::vector<long>> cluster(const CVector& eigs, double gap) {
    const long m = eigs.size();
    std::vector<long> parent(static_cast<std::size_t>(m));
    std::iota(parent.begin(), parent.end(), 0L);
    auto find = [&](long x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (long i = 0; i < m; ++i) {
        for (long j = i + 1; j < m; ++j) {
            if (std::abs(eigs(i) - eigs(j)) < gap) parent[find(i)] = find(j);
        }
    }
    std::vector<std::vector<long>> groups;
    std::vector<long> slot(static_cast<std::size_t>(m), -1);
    for (long i = 0; i < m; ++i) {
        const long r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<long>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(slot[r])].push_back(i);
    }
    return groups;
}

CMatrix diagonalize_block(const std::vector<CMatrix>& us, SplitMix64& rng, int depth,
                          const Tolerances& tol) {
    const long m = us.front().rows();
    CMatrix z = CMatrix::Zero(m, m);
    for (const CMatrix& u : us) z += rng.complex_normal() * u;

    Eigen::ComplexSchur<CMatrix> schur(z);
    CMatrix q = schur.matrixU();
    if (depth >= kMaxDepth || offdiag_residual(us, q) <= tol.jd) return q;

    const CVector eigs = schur.matrixT().diagonal();
    for (const auto& group : cluster(eigs, kClusterGap)) {
        if (group.size() < 2) continue;
        const auto s = static_cast<long>(group.size());
        CMatrix qc(m, s);
        for (long c = 0; c < s; ++c) qc.col(c) = q.col(group[static_cast<std::size_t>(c)]);
        std::vector<CMatrix> restricted;
        restricted.reserve(us.size());
        for (const CMatrix& u : us) restricted.push_back(qc.adjoint() * u * qc);
        const CMatrix refined = qc * diagonalize_block(restricted, rng, depth + 1, tol);
        for (long c = 0; c < s; ++c) q.col(group[static_cast<std::size_t>(c)]) = refined.col(c);
    }
    return q;
}

double positive_arg(Complex w) {
    double a = std::arg(w);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    if (a >= 2.0 * std::numbers::pi - 1e-12) a = 0.0;
    return a;
}

}  // namespace

JointDiag joint_diagonalize(const std::vector<CMatrix>& unitaries, std::uint64_t seed,
                            const Tolerances& tol) {
    if (unitaries.empty()) throw DilationError(ErrorCode::ShapeMismatch, "no unitaries given");
    const long m = unitaries.front().rows();
    for (const CMatrix& u : unitaries) {
        if (u.rows() != m || u.cols() != m) {
            throw DilationError(ErrorCode::ShapeMismatch, "unitaries differ in size");
        }
        const double r = unitarity_residual(u);
        if (r > tol.eig) {
            std::ostringstream os;
            os << "‖U*U − I‖ = " << r;
            throw DilationError(ErrorCode::NotUnitary, os.str());
        }
    }
    for (std::size_t i = 0; i < unitaries.size(); ++i) {
        for (std::size_t j = i + 1; j < unitaries.size(); ++j) {
            const double r = commutator_norm(unitaries[i], unitaries[j]);
            if (r > tol.dc) {
                std::ostringstream os;
                os << "‖U_" << i << "U_" << j << " − U_" << j << "U_" << i << "‖ = " << r;
                throw DilationError(ErrorCode::NotCommuting, os.str());
            }
        }
    }

    SplitMix64 rng(seed);
    const CMatrix q = diagonalize_block(unitaries, rng, 0, tol);

    const std::size_t k = unitaries.size();
    std::vector<std::vector<Complex>> raw(k, std::vector<Complex>(static_cast<std::size_t>(m)));
    for (std::size_t j = 0; j < k; ++j) {
        const CMatrix d = q.adjoint() * unitaries[j] * q;
        for (long i = 0; i < m; ++i) {
            const Complex w = d(i, i);
            raw[j][static_cast<std::size_t>(i)] = w / std::abs(w);
        }
    }

    std::vector<long> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0L);
    std::stable_sort(order.begin(), order.end(), [&](long a, long b) {
        for (std::size_t j = 0; j < k; ++j) {
            const double aa = positive_arg(raw[j][static_cast<std::size_t>(a)]);
            const double ab = positive_arg(raw[j][static_cast<std::size_t>(b)]);
            if (aa != ab) return aa < ab;
        }
        return false;
    });

    JointDiag out;
    out.basis.resize(m, m);
    out.spectra.assign(k, std::vector<Complex>(static_cast<std::size_t>(m)));
    for (long c = 0; c < m; ++c) {
        const long src = order[static_cast<std::size_t>(c)];
        out.basis.col(c) = q.col(src);
        for (std::size_t j = 0; j < k; ++j) {
            out.spectra[j][static_cast<std::size_t>(c)] = raw[j][static_cast<std::size_t>(src)];
        }
    }
    for (std::size_t j = 0; j < k; ++j) {
        CVector w(m);
        for (long i = 0; i < m; ++i) w(i) = out.spectra[j][static_cast<std::size_t>(i)];
        out.residual = std::max(
            out.residual, operator_norm(unitaries[j] * out.basis - out.basis * w.asDiagonal()));
    }
    if (out.residual > tol.jd) {
        std::ostringstream os;
        os << "joint eigenbasis residual " << out.residual << " after depth " << kMaxDepth;
        throw DilationError(ErrorCode::DegenerateFailure, os.str());
    }
    return out;
}

VNCertificate vn_certificate(const NDilation& dil, const ContractionTuple& tuple,
                             std::uint64_t seed, const Tolerances& tol) {
    const VerificationReport rep = verify_dilation(dil, tuple, dil.order, tol);
    if (!rep.pass) {
        std::ostringstream os;
        os << "dilation fails verification at order " << dil.order << " (max residual "
           << rep.max_residual << ")";
        throw DilationError(ErrorCode::NotADilation, os.str());
    }
    const JointDiag jd = joint_diagonalize(dil.unitaries, seed, tol);
    const long m = dil.dim();
    const long n = dil.h_dim;

    VNCertificate cert;
    cert.order = dil.order;
    for (long i = 0; i < m; ++i) {
        TorusPoint w(tuple.size());
        for (std::size_t j = 0; j < tuple.size(); ++j) w[j] = jd.spectra[j][static_cast<std::size_t>(i)];
        cert.points.push_back(std::move(w));
        const CVector x = jd.basis.col(i).head(n);
        cert.weights.push_back(x * x.adjoint());
    }
    return cert;
}

double certificate_reconstruction_residual(const VNCertificate& cert,
                                           const ContractionTuple& tuple) {
    double worst = 0.0;
    for (const MultiIndex& alpha : graded_indices(tuple.size(), cert.order)) {
        CMatrix sum = CMatrix::Zero(tuple.dim(), tuple.dim());
        for (std::size_t i = 0; i < cert.points.size(); ++i) {
            Complex mono = 1.0;
            for (std::size_t j = 0; j < alpha.size(); ++j) {
                for (int e = 0; e < alpha[j]; ++e) mono *= cert.points[i][j];
            }
            sum += mono * cert.weights[i];
        }
        worst = std::max(worst, operator_norm(tuple_power(tuple, alpha) - sum));
    }
    return worst;
}

CubatureRule scalar_cubature(const std::vector<Complex>& t_point, int n_order,
                             std::uint64_t seed, const Tolerances& tol) {
    if (t_point.empty()) throw DilationError(ErrorCode::InvalidInput, "point has no coordinates");
    std::vector<CMatrix> ops;
    for (std::size_t i = 0; i < t_point.size(); ++i) {
        const Complex t = t_point[i];
        if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) {
            throw DilationError(ErrorCode::InvalidInput,
                                "point[" + std::to_string(i) + "] is not finite");
        }
        if (!(std::abs(t) <= 1.0 - 1e-12)) {
            std::ostringstream os;
            os << "point[" << i << "] has modulus " << std::abs(t) << ", outside the open disc";
            throw DilationError(ErrorCode::NotInDisc, os.str());
        }
        ops.push_back(CMatrix::Constant(1, 1, t));
    }
    const ContractionTuple tuple(std::move(ops), tol);
    const NDilation dil = doubly_commuting_dilation(tuple, n_order, tol);
    const VNCertificate cert = vn_certificate(dil, tuple, seed, tol);

    CubatureRule rule;
    rule.order = n_order;
    rule.points = cert.points;
    double total = 0.0;
    for (const CMatrix& a : cert.weights) {
        double w = a(0, 0).real();
        if (w < -1e-12) {
            std::ostringstream os;
            os << "cubature weight " << w << " is negative";
            throw DilationError(ErrorCode::NegativeWeight, os.str());
        }
        w = std::max(w, 0.0);
        rule.weights.push_back(w);
        total += w;
    }
    for (double& w : rule.weights) w /= total;
    return rule;
}

VNCheckReport vn_check(const ContractionTuple& tuple, const MultiPoly& p,
                       const VNCertificate* cert, const Tolerances& tol, std::optional<int> grid) {
    if (p.num_vars() != tuple.size()) {
        throw DilationError(ErrorCode::ShapeMismatch, "polynomial variables differ from tuple size");
    }
    VNCheckReport rep;
    rep.lhs = operator_norm(eval_matrix(p, tuple, tol));
    rep.grid = grid.value_or(default_grid(p));
    rep.sup_bound = sup_norm_torus(p, rep.grid);
    rep.pass = rep.lhs <= rep.sup_bound + kSupSlack;
    if (cert != nullptr) {
        if (p.total_degree() > cert->order) {
            std::ostringstream os;
            os << "degree " << p.total_degree() << " exceeds certificate order " << cert->order;
            throw DilationError(ErrorCode::DegreeExceedsOrder, os.str());
        }
        double best = 0.0;
        for (const TorusPoint& w : cert->points) {
            if (w.size() != p.num_vars()) {
                throw DilationError(ErrorCode::ShapeMismatch, "certificate point dimension differs");
            }
            best = std::max(best, std::abs(eval_scalar(p, w)));
        }
        rep.cert_bound = best;
        // The certificate points are torus samples too, so they refine the grid bound.
        rep.sup_bound = std::max(rep.sup_bound, best);
        rep.pass = rep.lhs <= rep.sup_bound + kSupSlack && rep.lhs <= best + kCertSlack;
    }
    return rep;
}

}  // namespace dilatron
