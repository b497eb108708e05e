#include "dilatron/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>

#include <CLI11.hpp>

#include "dilatron/contraction_tuple.hpp"
#include "dilatron/cpmap.hpp"
#include "dilatron/dilation_multi.hpp"
#include "dilatron/dilation_single.hpp"
#include "dilatron/json_io.hpp"
#include "dilatron/polynomial.hpp"
#include "dilatron/random.hpp"
#include "dilatron/spectral_cubature.hpp"

namespace dilatron::cli {

using io::Json;

namespace {

constexpr double kCubatureTol = 1e-9;
constexpr double kWeightSumTol = 1e-12;
constexpr double kFixtureTol = 1e-12;

struct Context {
    std::uint64_t seed = 42;
    Tolerances tol;
};

struct Report {
    explicit Report(std::string name) : command(std::move(name)) {}

    std::string command;
    bool pass = true;
    std::map<std::string, double> residuals;
    std::map<std::string, std::string> outputs;
    Json details = Json::object();
};

Json tolerances_json(const Tolerances& t) {
    return Json{{"eig", t.eig},   {"herm", t.herm}, {"psd", t.psd}, {"rank", t.rank},
                {"dil", t.dil},   {"dc", t.dc},     {"jd", t.jd}};
}

Json to_json(const Report& r, const Context& ctx) {
    Json j = r.details;
    j["command"] = r.command;
    j["pass"] = r.pass;
    j["residuals"] = Json(r.residuals);
    j["outputs"] = Json(r.outputs);
    j["seed"] = ctx.seed;
    j["tolerances"] = tolerances_json(ctx.tol);
    return j;
}

Json index_json(const MultiIndex& m) { return Json(m); }

// Re-raises a parse failure with the file name in front of the field path.
template <class F>
auto load(const std::string& path, F&& parse) {
    const Json j = io::read_file(path);
    try {
        return parse(j);
    } catch (const DilationError& e) {
        throw DilationError(e.code(), path + ": " + e.what());
    }
}

ContractionTuple load_tuple(const std::string& path, const Tolerances& tol) {
    return ContractionTuple(load(path, [](const Json& j) { return io::tuple_ops_from_json(j); }),
                            tol);
}

void add_verification(Report& r, const VerificationReport& v, const std::string& prefix) {
    r.residuals[prefix + "compression"] = v.max_residual;
    r.residuals[prefix + "unitarity"] = v.unitarity_residual;
    r.residuals[prefix + "commutation"] = v.commutation_residual;
    r.details[prefix + "checked_indices"] = v.residuals.size();
    r.details[prefix + "first_failure"] =
        v.first_failure ? index_json(*v.first_failure) : Json(nullptr);
    r.pass = r.pass && v.pass;
}

void emit_or_embed(Report& r, const std::string& out_path, const std::string& key, const Json& j) {
    if (out_path.empty()) {
        r.details[key] = j;
    } else {
        io::write_file(out_path, j);
        r.outputs[key] = out_path;
    }
}

// max over monomials of degree ≤ order of |t^α − Σ a_i (w^i)^α|.
double cubature_error(const CubatureRule& rule, const std::vector<Complex>& t) {
    double worst = 0.0;
    for (const MultiIndex& alpha : graded_indices(t.size(), rule.order)) {
        auto mono = [&](const std::vector<Complex>& z) {
            Complex v = 1.0;
            for (std::size_t j = 0; j < alpha.size(); ++j) {
                for (int e = 0; e < alpha[j]; ++e) v *= z[j];
            }
            return v;
        };
        Complex sum = 0.0;
        for (std::size_t i = 0; i < rule.points.size(); ++i) sum += rule.weights[i] * mono(rule.points[i]);
        worst = std::max(worst, std::abs(mono(t) - sum));
    }
    return worst;
}

// Subcommand handlers.

Report cmd_dilate(const Context& ctx, const std::string& in, std::optional<int> order,
                  const std::string& method, const std::string& out_path) {
    const ContractionTuple tuple = load_tuple(in, ctx.tol);
    if (tuple.size() != 1) {
        throw DilationError(ErrorCode::ShapeMismatch, in + ": dilate takes a single operator");
    }
    Report r{"dilate"};
    const CMatrix& t = tuple.op(0);
    NDilation dil;
    int check_order = 1;
    if (method == "halmos") {
        dil = halmos_dilation(t, ctx.tol);
        check_order = order.value_or(1);
    } else {
        if (!order) throw DilationError(ErrorCode::InvalidInput, "--order is required for egervary");
        dil = egervary_dilation(t, *order, ctx.tol);
        check_order = *order;
        const MinimalityResult m = check_n_minimality(dil, *order, ctx.tol);
        r.details["n_minimal"] = m.minimal;
        r.details["minimal_span_dimension"] = m.dimension;
        r.pass = m.minimal;
    }
    add_verification(r, verify_dilation(dil, tuple, check_order, ctx.tol), "");
    r.details["construction"] = to_string(dil.construction);
    r.details["defect_rank"] = defect(t, ctx.tol).d_rank;
    r.details["dimension"] = dil.dim();
    r.details["verified_order"] = check_order;
    emit_or_embed(r, out_path, "dilation", io::dilation_to_json(dil));
    return r;
}

Report cmd_dilate_tuple(const Context& ctx, const std::string& in, int order,
                        const std::string& out_path, const std::string& cert_path) {
    const ContractionTuple tuple = load_tuple(in, ctx.tol);
    const NDilation dil = doubly_commuting_dilation(tuple, order, ctx.tol);
    Report r{"dilate-tuple"};
    add_verification(r, verify_dilation(dil, tuple, order, ctx.tol), "");
    add_verification(r, verify_regular(dil, tuple, order, ctx.tol), "regular_");
    r.details["dimension"] = dil.dim();
    r.details["construction"] = to_string(dil.construction);
    emit_or_embed(r, out_path, "dilation", io::dilation_to_json(dil));
    if (!cert_path.empty()) {
        const VNCertificate cert = vn_certificate(dil, tuple, ctx.seed, ctx.tol);
        r.residuals["certificate_reconstruction"] = certificate_reconstruction_residual(cert, tuple);
        r.pass = r.pass && r.residuals["certificate_reconstruction"] <= 1e-8;
        io::write_file(cert_path, io::certificate_to_json(cert));
        r.outputs["certificate"] = cert_path;
    }
    return r;
}

Report cmd_verify(const Context& ctx, const std::string& dil_path, const std::string& tuple_path,
                  std::optional<int> order, bool regular) {
    const NDilation dil =
        load(dil_path, [](const Json& j) { return io::dilation_from_json(j); });
    const ContractionTuple tuple = load_tuple(tuple_path, ctx.tol);
    if (dil.unitaries.size() != tuple.size() || dil.h_dim != tuple.dim()) {
        throw DilationError(ErrorCode::ShapeMismatch,
                            "dilation and tuple disagree in operator count or H dimension");
    }
    const int n = order.value_or(dil.order);
    Report r{regular ? "verify-regular" : "verify"};
    add_verification(r, regular ? verify_regular(dil, tuple, n, ctx.tol)
                                : verify_dilation(dil, tuple, n, ctx.tol),
                     "");
    r.details["verified_order"] = n;
    return r;
}

Report cmd_brehmer(const Context& ctx, const std::string& in) {
    const ContractionTuple tuple = load_tuple(in, ctx.tol);
    const BrehmerReport b = brehmer_check(tuple, ctx.tol);
    Report r{"brehmer"};
    Json subsets = Json::array();
    for (const BrehmerSubset& s : b.subsets) {
        std::vector<int> members;
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            if (s.mask & (1u << i)) members.push_back(static_cast<int>(i) + 1);
        }
        subsets.push_back(Json{{"subset", members}, {"min_eigenvalue", s.min_eigenvalue}});
    }
    r.details["subsets"] = std::move(subsets);
    r.details["min_eigenvalue"] = b.min_eigenvalue;
    r.residuals["negativity"] = std::max(0.0, -b.min_eigenvalue);
    r.pass = b.pass;
    return r;
}

Report cmd_cubature(const Context& ctx, const std::string& in, int order,
                    const std::string& out_path) {
    const std::vector<Complex> t = load(in, [](const Json& j) { return io::point_from_json(j); });
    const CubatureRule rule = scalar_cubature(t, order, ctx.seed, ctx.tol);
    Report r{"cubature"};
    double total = 0.0;
    for (double w : rule.weights) total += w;
    r.residuals["weight_sum"] = std::abs(total - 1.0);
    r.residuals["monomial_reproduction"] = cubature_error(rule, t);
    r.details["num_points"] = rule.points.size();
    r.details["min_weight"] = *std::min_element(rule.weights.begin(), rule.weights.end());
    r.pass = r.residuals["weight_sum"] <= kWeightSumTol &&
             r.residuals["monomial_reproduction"] <= kCubatureTol;
    emit_or_embed(r, out_path, "rule", io::cubature_to_json(rule));
    return r;
}

Report cmd_vn_check(const Context& ctx, const std::string& tuple_path,
                    const std::string& poly_path, const std::string& cert_path,
                    std::optional<int> grid) {
    const ContractionTuple tuple = load_tuple(tuple_path, ctx.tol);
    const MultiPoly p = load(poly_path, [](const Json& j) { return io::poly_from_json(j); });
    std::optional<VNCertificate> cert;
    if (!cert_path.empty()) {
        cert = load(cert_path, [](const Json& j) { return io::certificate_from_json(j); });
    }
    const VNCheckReport v = vn_check(tuple, p, cert ? &*cert : nullptr, ctx.tol, grid);
    Report r{"vn-check"};
    r.details["lhs"] = v.lhs;
    r.details["sup_bound"] = v.sup_bound;
    r.details["grid"] = v.grid;
    r.details["cert_bound"] = v.cert_bound ? Json(*v.cert_bound) : Json(nullptr);
    r.residuals["sup_excess"] = std::max(0.0, v.lhs - v.sup_bound);
    if (v.cert_bound) r.residuals["cert_excess"] = std::max(0.0, v.lhs - *v.cert_bound);
    r.pass = v.pass;
    return r;
}

Report cmd_cp_index(const Context& ctx, const std::string& in) {
    const CPMap phi = load(in, [](const Json& j) { return io::cpmap_from_json(j); });
    const CPTest test = is_cp(phi, ctx.tol);
    Report r{"cp-index"};
    r.details["cp"] = test.cp;
    r.details["choi_min_eig"] = test.min_eigenvalue;
    r.details["index"] = test.cp ? Json(index(phi, ctx.tol)) : Json(nullptr);
    r.residuals["choi_negativity"] = std::max(0.0, -test.min_eigenvalue);
    r.pass = test.cp;
    return r;
}

Report cmd_ergodic(const Context& ctx, int order) {
    const ErgodicReport e = ergodic_demo(order, ctx.tol);
    Report r{"ergodic-demo"};
    r.details["order"] = e.order;
    r.details["dilation_order"] = e.dilation_order;
    r.details["dilation_dim"] = e.dilation_dim;
    r.details["scalar_sum"] = io::complex_to_json(e.scalar_sum);
    r.details["residual_modulus"] = e.residual_modulus;
    r.details["limit_target"] = e.limit_target;
    r.details["relative_gap_to_limit"] = std::abs(e.residual_modulus - e.limit_target) / e.limit_target;
    r.details["compressed_mean"] = e.compressed_mean;
    r.details["cesaro_mean_of_t"] = e.cesaro_mean_of_t;
    r.residuals["closed_form"] = std::abs(e.residual_modulus - e.closed_form_modulus);
    r.residuals["compression"] = e.compression_residual;
    r.residuals["compressed_mean_vs_t"] = std::abs(e.compressed_mean - e.cesaro_mean_of_t);
    r.residuals["eigenvector"] = e.eigen_residual;
    for (const auto& [k, v] : r.residuals) r.pass = r.pass && v <= ctx.tol.dil;
    return r;
}

// Demo tour.

Report tour_halmos_vs_egervary(const Context& ctx) {
    const CMatrix t = CMatrix::Constant(1, 1, 0.5);
    const ContractionTuple tuple = ContractionTuple::single(t, ctx.tol);
    const NDilation h = halmos_dilation(t, ctx.tol);
    const VerificationReport h1 = verify_dilation(h, tuple, 1, ctx.tol);
    const VerificationReport h2 = verify_dilation(h, tuple, 2, ctx.tol);
    const NDilation eg = egervary_dilation(t, 2, ctx.tol);
    const VerificationReport e2 = verify_dilation(eg, tuple, 2, ctx.tol);
    Report r{"demo:halmos-vs-egervary"};
    r.details["halmos_order1_pass"] = h1.pass;
    r.details["halmos_order2_pass"] = h2.pass;
    r.details["halmos_order2_residual"] = h2.max_residual;
    r.details["egervary_dimension"] = eg.dim();
    r.details["egervary_order2_pass"] = e2.pass;
    r.residuals["halmos_order1"] = h1.max_residual;
    r.residuals["halmos_order2_vs_0.75"] = std::abs(h2.max_residual - 0.75);
    r.residuals["egervary_order2"] = e2.max_residual;
    r.pass = h1.pass && !h2.pass && r.residuals["halmos_order2_vs_0.75"] <= kFixtureTol && e2.pass;
    return r;
}

Report tour_zero_dilations(const Context& ctx) {
    const CMatrix zero = CMatrix::Zero(1, 1);
    const ContractionTuple tuple = ContractionTuple::single(zero, ctx.tol);
    CMatrix u1(2, 2), u2(2, 2);
    u1 << 0, 1, 1, 0;
    u2 << 0, -1, 1, 0;
    NDilation d1{{u1}, 1, 1, Construction::external};
    NDilation d2{{u2}, 1, 1, Construction::external};
    const VerificationReport v1 = verify_dilation(d1, tuple, 1, ctx.tol);
    const VerificationReport v2 = verify_dilation(d2, tuple, 1, ctx.tol);
    // Any isomorphism fixes H, so it would conjugate one spectrum onto the other.
    const Eigen::VectorXcd s1 = u1.eigenvalues();
    const Eigen::VectorXcd s2 = u2.eigenvalues();
    double gap = 0.0;
    for (long i = 0; i < s1.size(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (long j = 0; j < s2.size(); ++j) nearest = std::min(nearest, std::abs(s1(i) - s2(j)));
        gap = std::max(gap, nearest);
    }
    Report r{"demo:two-dilations-of-zero"};
    r.residuals["first"] = v1.max_residual;
    r.residuals["second"] = v2.max_residual;
    r.residuals["halmos_matches_first"] = operator_norm(halmos_dilation(zero, ctx.tol).unitaries[0] - u1);
    r.details["spectral_gap"] = gap;
    r.pass = v1.pass && v2.pass && gap > 0.5 && r.residuals["halmos_matches_first"] <= kFixtureTol;
    return r;
}

Report tour_pair_cubature(const Context& ctx, SplitMix64& rng) {
    constexpr int kOrder = 2;
    const CMatrix q = random_unitary(2, rng);
    std::vector<CMatrix> ops;
    for (int i = 0; i < 2; ++i) {
        CVector d(2);
        for (long j = 0; j < 2; ++j) d(j) = std::polar(0.9 * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
        ops.push_back(q * d.asDiagonal() * q.adjoint());
    }
    const ContractionTuple tuple(ops, ctx.tol);
    const NDilation dil = doubly_commuting_dilation(tuple, kOrder, ctx.tol);
    const VerificationReport v = verify_dilation(dil, tuple, kOrder, ctx.tol);
    const VerificationReport reg = verify_regular(dil, tuple, kOrder, ctx.tol);
    const VNCertificate cert = vn_certificate(dil, tuple, ctx.seed, ctx.tol);

    const std::vector<Complex> point{Complex(0.3, 0.0), Complex(0.0, -0.2)};
    const CubatureRule rule = scalar_cubature(point, kOrder, ctx.seed, ctx.tol);

    Report r{"demo:doubly-commuting-pair"};
    r.details["dimension"] = dil.dim();
    r.details["cubature_points"] = rule.points.size();
    r.residuals["compression"] = v.max_residual;
    r.residuals["regular"] = reg.max_residual;
    r.residuals["certificate_reconstruction"] = certificate_reconstruction_residual(cert, tuple);
    r.residuals["cubature"] = cubature_error(rule, point);
    r.pass = v.pass && reg.pass && r.residuals["certificate_reconstruction"] <= 1e-8 &&
             r.residuals["cubature"] <= kCubatureTol;
    return r;
}

Report tour_brehmer(const Context& ctx) {
    CMatrix s(2, 2);
    s << 0, 1, 0, 0;
    const BrehmerReport b = brehmer_check(ContractionTuple({s, s}, ctx.tol), ctx.tol);
    Report r{"demo:brehmer-failure"};
    r.details["min_eigenvalue"] = b.min_eigenvalue;
    r.details["brehmer_pass"] = b.pass;
    r.residuals["min_eigenvalue_vs_-1"] = std::abs(b.min_eigenvalue + 1.0);
    r.pass = !b.pass && r.residuals["min_eigenvalue_vs_-1"] <= kFixtureTol;
    return r;
}

Report tour_holbrook() {
    const MultiPoly p = holbrook_polynomial();
    const std::vector<Complex> ones(3, 1.0);
    Report r{"demo:holbrook"};
    r.details["value_at_ones"] = io::complex_to_json(eval_scalar(p, ones));
    const double coarse = sup_norm_torus(p, 64);
    const double fine = sup_norm_torus(p, 128);
    r.details["sup_grid_64"] = coarse;
    r.details["sup_grid_128"] = fine;
    r.residuals["value_at_ones_vs_-3"] = std::abs(eval_scalar(p, ones) + 3.0);
    r.residuals["grid_refinement"] = std::abs(fine - coarse);
    r.pass = r.residuals["value_at_ones_vs_-3"] <= kFixtureTol && fine >= coarse - kFixtureTol;
    return r;
}

Report tour_cp(const Context& ctx, SplitMix64& rng) {
    constexpr long n = 2;
    Report r{"demo:cp-index"};
    Json samples = Json::array();
    for (long d = 1; d <= n * n; ++d) {
        std::vector<CMatrix> kraus;
        for (long i = 0; i < d; ++i) kraus.push_back(random_gaussian(n, n, rng));
        const long idx = index(CPMap::from_kraus(kraus), ctx.tol);
        samples.push_back(Json{{"kraus_count", d}, {"index", idx}});
        r.pass = r.pass && idx == d;
    }
    r.details["kraus_samples"] = std::move(samples);

    std::vector<CMatrix> transpose_images;
    for (long a = 0; a < n; ++a) {
        for (long b = 0; b < n; ++b) {
            CMatrix e = CMatrix::Zero(n, n);
            e(b, a) = 1.0;
            transpose_images.push_back(e);
        }
    }
    const CPTest transpose = is_cp(CPMap::from_unit_images(transpose_images), ctx.tol);
    r.details["transpose_cp"] = transpose.cp;
    r.residuals["transpose_min_eig_vs_-1"] = std::abs(transpose.min_eigenvalue + 1.0);

    const long compression = index(automorphism_compression_check(random_unitary(4, rng), n, ctx.tol), ctx.tol);
    r.details["compression_index"] = compression;
    r.pass = r.pass && !transpose.cp && r.residuals["transpose_min_eig_vs_-1"] <= 1e-10 &&
             compression == 1;
    return r;
}

Json cmd_demo(const Context& ctx) {
    SplitMix64 rng(ctx.seed);
    std::vector<Report> tour;
    tour.push_back(tour_halmos_vs_egervary(ctx));
    tour.push_back(tour_zero_dilations(ctx));
    tour.push_back(tour_pair_cubature(ctx, rng));
    tour.push_back(tour_brehmer(ctx));
    tour.push_back(tour_holbrook());
    tour.push_back(tour_cp(ctx, rng));
    Report ergodic = cmd_ergodic(ctx, 500);
    ergodic.command = "demo:ergodic";
    tour.push_back(std::move(ergodic));

    Report top{"demo"};
    Json reports = Json::array();
    for (const Report& r : tour) {
        reports.push_back(to_json(r, ctx));
        top.pass = top.pass && r.pass;
    }
    top.details["reports"] = std::move(reports);
    return to_json(top, ctx);
}

bool numerical(ErrorCode c) {
    return c == ErrorCode::DegenerateFailure || c == ErrorCode::NegativeWeight ||
           c == ErrorCode::NotADilation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Unitary dilations, von Neumann certificates and CP maps", "dilatron"};
    app.require_subcommand(1);
    app.fallthrough();

    Context ctx;
    app.add_option("--seed", ctx.seed, "Seed for every randomized choice")->capture_default_str();

    std::string in, out_path, cert_path, tuple_path, dil_path, poly_path, method = "egervary";
    std::optional<int> order_opt, grid;
    int order = 0;
    const auto positive = CLI::Range(1, 100000);

    std::function<Json()> action;
    auto report = [&](auto fn) { return [&, fn] { action = [&, fn] { return to_json(fn(), ctx); }; }; };

    auto* dilate = app.add_subcommand("dilate", "Unitary N-dilation of one contraction");
    dilate->add_option("--in", in, "Matrix or one-operator tuple JSON")->required();
    dilate->add_option("--order", order_opt, "Dilation order N")->check(positive);
    dilate->add_option("--method", method, "halmos or egervary")
        ->check(CLI::IsMember({"halmos", "egervary"}))
        ->capture_default_str();
    dilate->add_option("--out", out_path, "Write the dilation here");
    dilate->callback(report([&] { return cmd_dilate(ctx, in, order_opt, method, out_path); }));

    auto* dtuple = app.add_subcommand("dilate-tuple", "Regular dilation of a doubly commuting tuple");
    dtuple->add_option("--in", in, "Tuple JSON")->required();
    dtuple->add_option("--order", order, "Dilation order N")->required()->check(positive);
    dtuple->add_option("--out", out_path, "Write the dilation here");
    dtuple->add_option("--cert-out", cert_path, "Write a von Neumann certificate here");
    dtuple->callback(report([&] { return cmd_dilate_tuple(ctx, in, order, out_path, cert_path); }));

    for (const bool regular : {false, true}) {
        auto* v = app.add_subcommand(regular ? "verify-regular" : "verify",
                                     regular ? "Check T(m) = P U(m) P for |m| <= N"
                                             : "Check T^a = P U^a P for |a| <= N");
        v->add_option("--dilation", dil_path, "Dilation JSON")->required();
        v->add_option("--tuple", tuple_path, "Tuple JSON")->required();
        v->add_option("--order", order_opt, "Order to check (default: declared order)")->check(positive);
        v->callback(report([&, regular] { return cmd_verify(ctx, dil_path, tuple_path, order_opt, regular); }));
    }

    auto* brehmer = app.add_subcommand("brehmer", "Brehmer positivity of a commuting tuple");
    brehmer->add_option("--in", in, "Tuple JSON")->required();
    brehmer->callback(report([&] { return cmd_brehmer(ctx, in); }));

    auto* cub = app.add_subcommand("cubature", "Torus cubature rule for a point of the polydisc");
    cub->add_option("--point", in, "Point JSON")->required();
    cub->add_option("--order", order, "Polynomial degree N")->required()->check(positive);
    cub->add_option("--out", out_path, "Write the rule here");
    cub->callback(report([&] { return cmd_cubature(ctx, in, order, out_path); }));

    auto* vn = app.add_subcommand("vn-check", "von Neumann inequality for one polynomial");
    vn->add_option("--tuple", tuple_path, "Tuple JSON")->required();
    vn->add_option("--poly", poly_path, "Polynomial JSON")->required();
    vn->add_option("--cert", cert_path, "Certificate JSON");
    vn->add_option("--grid", grid, "Torus grid points per coordinate")->check(positive);
    vn->callback(report([&] { return cmd_vn_check(ctx, tuple_path, poly_path, cert_path, grid); }));

    auto* cp = app.add_subcommand("cp-index", "Complete positivity and index of a map");
    cp->add_option("--in", in, "CP map JSON")->required();
    cp->callback(report([&] { return cmd_cp_index(ctx, in); }));

    auto* erg = app.add_subcommand("ergodic-demo", "Cesaro means of the dilation of T = 0");
    erg->add_option("--order", order_opt, "N (default 500)")->check(positive);
    erg->callback(report([&] { return cmd_ergodic(ctx, order_opt.value_or(500)); }));

    auto* demo = app.add_subcommand("demo", "Run the bundled tour");
    demo->callback([&] { action = [&] { return cmd_demo(ctx); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "dilatron: " << e.what() << "\n" << app.help();
        return kInputError;
    }

    try {
        ctx.tol = Tolerances::from_env();
        const Json result = action();
        out << io::dump(result);
        return result.at("pass").get<bool>() ? kPass : kNumericalFailure;
    } catch (const DilationError& e) {
        err << "dilatron: " << e.what() << "\n";
        return numerical(e.code()) ? kNumericalFailure : kInputError;
    } catch (const std::exception& e) {
        err << "dilatron: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace dilatron::cli
