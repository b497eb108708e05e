// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <unistd.h>

#include "dilatron/cli.hpp"
#include "dilatron/cpmap.hpp"
#include "dilatron/dilation_multi.hpp"
#include "dilatron/dilation_single.hpp"
#include "dilatron/json_io.hpp"
#include "dilatron/spectral_cubature.hpp"
#include "support.hpp"

using namespace dilatron;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

CMatrix scalar(Complex z) { return CMatrix::Constant(1, 1, z); }

Outcome egervary_suite() {
    Timer clock;
    SplitMix64 rng(1001);
    Outcome o;
    double worst_residual = 0.0, worst_unitarity = 0.0;
    int failures = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const long n = rng.uniform_int(1, 6);
        const int n_order = static_cast<int>(rng.uniform_int(1, 8));
        const CMatrix t = random_contraction(n, rng, 0.2);
        const NDilation d = egervary_dilation(t, n_order);
        const double unit = unitarity_residual(d.unitaries[0]);
        const VerificationReport v = verify_dilation(d, ContractionTuple::single(t), n_order);
        const bool ok = unit <= 1e-10 && d.dim() == n + n_order * defect(t).d_rank && v.pass &&
                        v.max_residual <= 1e-10 && check_n_minimality(d, n_order).minimal;
        failures += ok ? 0 : 1;
        worst_residual = std::max(worst_residual, v.max_residual);
        worst_unitarity = std::max(worst_unitarity, unit);
    }
    const double secs = clock.seconds();
    o.pass = failures == 0 && secs <= 30.0;
    o.detail = fmt("200 contractions, %.0f failures, max residual %.2e, max unitarity %.2e, %.2f s",
                   failures, worst_residual, worst_unitarity, secs);
    return o;
}

Outcome halmos_boundary() {
    const CMatrix t = scalar(0.5);
    const NDilation h = halmos_dilation(t);
    const ContractionTuple tuple = ContractionTuple::single(t);
    const VerificationReport r1 = verify_dilation(h, tuple, 1);
    const VerificationReport r2 = verify_dilation(h, tuple, 2);
    Outcome o;
    o.pass = r1.pass && !r2.pass && std::abs(r2.max_residual - 0.75) <= 1e-12;
    o.detail = fmt("order 1 residual %.2e, order 2 residual %.17g", r1.max_residual, r2.max_residual);
    return o;
}

Outcome doubly_commuting_suite() {
    Timer clock;
    SplitMix64 rng(1003);
    int failures = 0, trials = 0;
    double worst = 0.0, min_brehmer = 1e300;
    for (std::size_t k = 1; k <= 3; ++k) {
        for (long n = 1; n <= 3; ++n) {
            for (int n_order = 1; n_order <= 3; ++n_order) {
                for (int rep = 0; rep < 3; ++rep) {
                    ++trials;
                    const ContractionTuple tuple(testing::random_doubly_commuting(k, n, rng));
                    const NDilation d = doubly_commuting_dilation(tuple, n_order);
                    const VerificationReport v = verify_dilation(d, tuple, n_order);
                    const VerificationReport r = verify_regular(d, tuple, n_order);
                    const BrehmerReport b = brehmer_check(tuple);
                    const long expected = static_cast<long>(std::pow(n_order + 1, k)) * n;
                    const bool ok = d.dim() == expected && v.pass && r.pass && b.pass &&
                                    b.min_eigenvalue >= -1e-10;
                    failures += ok ? 0 : 1;
                    worst = std::max({worst, v.max_residual, r.max_residual});
                    min_brehmer = std::min(min_brehmer, b.min_eigenvalue);
                }
            }
        }
    }
    const double secs = clock.seconds();
    Outcome o;
    o.pass = failures == 0 && secs <= 60.0;
    o.detail = fmt("%.0f tuples, %.0f failures, max residual %.2e, min Brehmer eigenvalue %.2e", trials,
                   failures, worst, min_brehmer) +
               fmt(", %.2f s", secs);
    return o;
}

Outcome brehmer_fixture() {
    CMatrix s(2, 2);
    s << 0, 1, 0, 0;
    const BrehmerReport b = brehmer_check(ContractionTuple({s, s}));
    double full = 0.0;
    for (const BrehmerSubset& sub : b.subsets) {
        if (sub.mask == 3u) full = sub.min_eigenvalue;
    }
    Outcome o;
    o.pass = std::abs(full + 1.0) <= 1e-12;
    o.detail = fmt("min eigenvalue for u = {1,2}: %.17g", full);
    return o;
}

Outcome cubature_suite() {
    SplitMix64 rng(1005);
    int failures = 0;
    double worst_mono = 0.0, worst_sum = 0.0, min_weight = 1.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t k = static_cast<std::size_t>(rng.uniform_int(1, 3));
        const int n_order = static_cast<int>(rng.uniform_int(1, 4));
        std::vector<Complex> t;
        for (std::size_t i = 0; i < k; ++i) t.push_back(testing::random_disc_point(rng, 0.999));
        const CubatureRule rule = scalar_cubature(t, n_order, 42);
        double total = 0.0, mono_err = 0.0;
        for (double w : rule.weights) {
            total += w;
            min_weight = std::min(min_weight, w);
        }
        for (const MultiIndex& alpha : graded_indices(k, n_order)) {
            Complex sum = 0.0;
            for (std::size_t i = 0; i < rule.points.size(); ++i) {
                sum += rule.weights[i] * testing::monomial(rule.points[i], alpha);
            }
            mono_err = std::max(mono_err, std::abs(testing::monomial(t, alpha) - sum));
        }
        const bool ok = rule.points.size() == static_cast<std::size_t>(std::pow(n_order + 1, k)) &&
                        min_weight >= 0.0 && std::abs(total - 1.0) <= 1e-12 && mono_err <= 1e-9;
        failures += ok ? 0 : 1;
        worst_mono = std::max(worst_mono, mono_err);
        worst_sum = std::max(worst_sum, std::abs(total - 1.0));
    }

    const CubatureRule zero = scalar_cubature({0.0}, 1);
    bool zero_ok = zero.points.size() == 2;
    for (std::size_t i = 0; zero_ok && i < 2; ++i) {
        const Complex w = zero.points[i][0];
        zero_ok = std::abs(zero.weights[i] - 0.5) <= 1e-10 &&
                  std::min(std::abs(w - 1.0), std::abs(w + 1.0)) <= 1e-10;
    }
    zero_ok = zero_ok && std::abs(zero.points[0][0] + zero.points[1][0]) <= 1e-10;

    Outcome o;
    o.pass = failures == 0 && zero_ok;
    o.detail = fmt("50 points, %.0f failures, max monomial error %.2e, max |sum-1| %.2e, min weight %.2e",
                   failures, worst_mono, worst_sum, min_weight) +
               (zero_ok ? ", t=0 rule {(1,1/2),(-1,1/2)}" : ", t=0 rule wrong");
    return o;
}

Outcome certificate_suite() {
    SplitMix64 rng(1007);
    int failures = 0, instances = 0;
    double worst_psd = 0.0, worst_sum = 0.0, worst_rec = 0.0, worst_excess = -1e300;
    auto check = [&](const NDilation& d, const ContractionTuple& tuple) {
        ++instances;
        const VNCertificate cert = vn_certificate(d, tuple, 42);
        const long n = tuple.dim();
        CMatrix sum = CMatrix::Zero(n, n);
        double neg = 0.0;
        for (const CMatrix& a : cert.weights) {
            neg = std::max(neg, -herm_eig(a).eigenvalues(0));
            sum += a;
        }
        const double sum_err = operator_norm(sum - identity(n));
        const double rec = certificate_reconstruction_residual(cert, tuple);
        bool ok = neg <= 1e-10 && sum_err <= 1e-10 && rec <= 1e-8;
        for (int p_trial = 0; p_trial < 20; ++p_trial) {
            const MultiPoly p = testing::random_poly(tuple.size(), d.order, rng);
            const VNCheckReport rep = vn_check(tuple, p, &cert);
            worst_excess = std::max(worst_excess, rep.lhs - *rep.cert_bound);
            ok = ok && rep.lhs <= *rep.cert_bound + 1e-8;
        }
        failures += ok ? 0 : 1;
        worst_psd = std::max(worst_psd, neg);
        worst_sum = std::max(worst_sum, sum_err);
        worst_rec = std::max(worst_rec, rec);
    };
    for (int trial = 0; trial < 15; ++trial) {
        const long n = rng.uniform_int(1, 4);
        const int n_order = static_cast<int>(rng.uniform_int(1, 4));
        const CMatrix t = random_contraction(n, rng, 0.2);
        check(egervary_dilation(t, n_order), ContractionTuple::single(t));
    }
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 3));
        const long n = rng.uniform_int(1, 2);
        const int n_order = static_cast<int>(rng.uniform_int(1, 2));
        const ContractionTuple tuple(testing::random_doubly_commuting(k, n, rng));
        check(doubly_commuting_dilation(tuple, n_order), tuple);
    }
    Outcome o;
    o.pass = failures == 0;
    o.detail = fmt("%.0f instances x 20 polynomials, %.0f failures, PSD deficit %.2e, |sum A - I| %.2e",
                   instances, failures, worst_psd, worst_sum) +
               fmt(", reconstruction %.2e, max(lhs - cert bound) %.2e", worst_rec, worst_excess);
    return o;
}

Outcome ergodic_anchor() {
    const ErgodicReport e = ergodic_demo(500);
    const double target = 2.0 / std::numbers::pi;
    Outcome o;
    o.pass = std::abs(e.residual_modulus - target) <= 0.01 * target && e.cesaro_mean_of_t <= 0.002 &&
             std::abs(e.cesaro_mean_of_t - 1.0 / 501.0) <= 1e-15;
    o.detail = fmt("scalar-sum modulus %.6f vs 2/pi %.6f (gap %.2e relative); Cesaro mean of T %.6f",
                   e.residual_modulus, target, std::abs(e.residual_modulus - target) / target,
                   e.cesaro_mean_of_t);
    return o;
}

Outcome von_neumann_2x2() {
    SplitMix64 rng(1009);
    int failures = 0;
    double worst_margin = -1e300;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t k = static_cast<std::size_t>(rng.uniform_int(1, 3));
        const ContractionTuple tuple(testing::polynomial_tuple(k, 2, 3, rng));
        const MultiPoly p = testing::random_poly(k, 4, rng);
        const VNCheckReport rep = vn_check(tuple, p);
        failures += rep.pass ? 0 : 1;
        worst_margin = std::max(worst_margin, rep.lhs - rep.sup_bound);
    }
    Outcome o;
    o.pass = failures == 0;
    o.detail = fmt("500 trials, %.0f failures, max(lhs - grid sup) %.3e", failures, worst_margin);
    return o;
}

Outcome cp_suite() {
    SplitMix64 rng(1011);
    int index_failures = 0, compression_failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const long n = rng.uniform_int(1, 3);
        const long d = rng.uniform_int(1, n * n);
        std::vector<CMatrix> kraus;
        for (long i = 0; i < d; ++i) kraus.push_back(random_gaussian(n, n, rng));
        index_failures += index(CPMap::from_kraus(kraus)) == d ? 0 : 1;

        const long m = rng.uniform_int(2, 6);
        const long h = rng.uniform_int(1, m);
        compression_failures += index(automorphism_compression_check(random_unitary(m, rng), h)) == 1 ? 0 : 1;
    }
    std::vector<CMatrix> images;
    for (long a = 0; a < 2; ++a) {
        for (long b = 0; b < 2; ++b) {
            CMatrix e = CMatrix::Zero(2, 2);
            e(b, a) = 1.0;
            images.push_back(e);
        }
    }
    const CPTest transpose = is_cp(CPMap::from_unit_images(images));
    Outcome o;
    o.pass = index_failures == 0 && compression_failures == 0 && !transpose.cp &&
             std::abs(transpose.min_eigenvalue + 1.0) <= 1e-10;
    o.detail = fmt("index failures %.0f/100, compression index failures %.0f/100, transpose min eig %.17g",
                   index_failures, compression_failures, transpose.min_eigenvalue);
    return o;
}

Outcome cli_determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("dilatron-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string tuple = (dir / "pair.json").string();
    std::ofstream(tuple) << R"({"ops":[{"rows":1,"cols":1,"data":[[[0.5,0]]]},)"
                         << R"({"rows":1,"cols":1,"data":[[[0,0.3]]]}]})";
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    auto invoke = [&](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return std::to_string(code) + "\n" + out.str();
    };
    std::vector<std::string> runs;
    for (int i = 0; i < 2; ++i) {
        const std::string cert = (dir / ("cert" + std::to_string(i) + ".json")).string();
        std::string text = invoke({"--seed", "2718", "demo"});
        text += invoke({"--seed", "2718", "dilate-tuple", "--in", tuple, "--order", "2", "--cert-out", cert});
        text += slurp(cert);
        runs.push_back(text);
    }
    fs::remove_all(dir);
    // Report paths differ between the two runs only through the certificate file name.
    std::string a = runs[0], b = runs[1];
    const auto strip = [](std::string s, const std::string& needle) {
        for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle)) s.erase(pos, needle.size());
        return s;
    };
    a = strip(a, "cert0.json");
    b = strip(b, "cert1.json");
    Outcome o;
    o.pass = a == b && !a.empty() && a.substr(0, 2) == "0\n";
    o.detail = std::to_string(a.size()) + " report bytes, " + (a == b ? "identical" : "different");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Egervary dilation suite", egervary_suite},
        {"Halmos order boundary", halmos_boundary},
        {"Doubly-commuting suite", doubly_commuting_suite},
        {"Brehmer failure fixture", brehmer_fixture},
        {"Cubature exactness", cubature_suite},
        {"Certificate suite", certificate_suite},
        {"Ergodic anchor", ergodic_anchor},
        {"2x2 von Neumann", von_neumann_2x2},
        {"CP maps", cp_suite},
        {"CLI determinism", cli_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": "
                  << o.detail << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
