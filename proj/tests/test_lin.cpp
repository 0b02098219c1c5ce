#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "pincushion/linlab.hpp"

using namespace pincushion;
using Complex = std::complex<double>;

namespace {

const SimplicialGraph k2({"1", "2"}, {{"1", "2"}});
const SimplicialGraph edgeless2({"1", "2"}, {});
const SimplicialGraph p3({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}});

Eigen::MatrixXcd random_matrix(std::mt19937& rng, Eigen::Index n, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = scale * Complex(u(rng), u(rng));
    return m;
}

MatrixFamily random_family(std::mt19937& rng, const SimplicialGraph& g, Eigen::Index n,
                           double scale = 1.0) {
    std::map<Vertex, Eigen::MatrixXcd> entries;
    for (const auto& v : g.vertices()) entries.emplace(v, random_matrix(rng, n, scale));
    return MatrixFamily::create(g, std::move(entries));
}

}  // namespace

TEST_CASE("normalized Hilbert-Schmidt norm") {
    CHECK(hs_norm(Eigen::MatrixXcd::Identity(5, 5)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(hs_norm(Eigen::MatrixXcd::Zero(3, 3)) == 0.0);

    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(2, 2);
    diag(0, 0) = 3.0;
    diag(1, 1) = 4.0;
    CHECK(hs_norm(diag) == doctest::Approx(std::sqrt(25.0 / 2.0)).epsilon(1e-14));

    CHECK_THROWS_AS(hs_norm(Eigen::MatrixXcd::Zero(2, 3)), std::invalid_argument);

    std::mt19937 rng(3);
    for (int iter = 0; iter < 20; ++iter) {
        auto a = random_matrix(rng, 4);
        auto b = random_matrix(rng, 4);
        CHECK(hs_norm(a + b) <= hs_norm(a) + hs_norm(b) + 1e-12);
        CHECK(hs_norm(a) <= operator_norm(a) + 1e-12);
        // unitary invariance via a random reflection-free rotation
        Eigen::MatrixXcd q = random_matrix(rng, 4);
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(q);
        Eigen::MatrixXcd u = qr.householderQ();
        CHECK(hs_norm(u * a * u.adjoint()) == doctest::Approx(hs_norm(a)).epsilon(1e-10));
    }
}

TEST_CASE("commutators") {
    std::mt19937 rng(5);
    auto a = random_matrix(rng, 3);
    CHECK(commutator(a, a).norm() == 0.0);
    CHECK(commutator(a, Eigen::MatrixXcd::Identity(3, 3)).norm() ==
          doctest::Approx(0.0).epsilon(1e-14));

    Eigen::MatrixXcd e12 = Eigen::MatrixXcd::Zero(2, 2);
    e12(0, 1) = 1.0;
    Eigen::MatrixXcd e21 = Eigen::MatrixXcd::Zero(2, 2);
    e21(1, 0) = 1.0;
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(2, 2);
    expected(0, 0) = 1.0;
    expected(1, 1) = -1.0;
    CHECK((commutator(e12, e21) - expected).norm() == 0.0);

    CHECK_THROWS_AS(commutator(a, random_matrix(rng, 2)), std::invalid_argument);
}

TEST_CASE("defect report on exact and trivial families") {
    auto fam = generate_gamma_family(p3, 2, 7, MatrixKind::Normal);
    auto report = gamma_defect(fam);
    CHECK(report.max_edge_commutator <= 1e-12);
    CHECK(report.max_normality <= 1e-12);

    std::map<Vertex, Eigen::MatrixXcd> ones;
    for (const auto& v : p3.vertices()) ones.emplace(v, Eigen::MatrixXcd::Identity(4, 4));
    auto idfam = MatrixFamily::create(p3, std::move(ones));
    auto idreport = gamma_defect(idfam);
    CHECK(idreport.max_edge_commutator == 0.0);
    CHECK(idreport.max_normality == 0.0);
    CHECK(idreport.max_selfadjoint == 0.0);
    CHECK(idreport.max_unitary == 0.0);
}

TEST_CASE("tensor-leg generator commutes exactly on edges, generically elsewhere") {
    // two legs for the edge graph: dimension 4, disjoint supports
    auto fam = generate_gamma_family(k2, 2, 11, MatrixKind::Normal);
    CHECK(fam.dimension == 4);
    CHECK(hs_norm(commutator(fam.at("1"), fam.at("2"))) <= 1e-14);

    int generic = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto shared = generate_gamma_family(edgeless2, 2, seed, MatrixKind::Normal);
        CHECK(shared.dimension == 8);
        if (hs_norm(commutator(shared.at("1"), shared.at("2"))) >= 1e-3) ++generic;
    }
    CHECK(generic >= 19);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto path = generate_gamma_family(p3, 2, seed, MatrixKind::Normal);
        auto report = gamma_defect(path);
        CHECK(report.max_edge_commutator <= 1e-12);
        CHECK(hs_norm(commutator(path.at("1"), path.at("3"))) >= 1e-3);
    }
}

TEST_CASE("generator kinds and caps") {
    auto unitary = generate_gamma_family(p3, 2, 3, MatrixKind::Unitary);
    CHECK(gamma_defect(unitary).max_unitary <= 1e-12);
    CHECK(gamma_defect(unitary).max_normality <= 1e-12);

    auto selfadj = generate_gamma_family(p3, 2, 3, MatrixKind::SelfAdjoint);
    CHECK(gamma_defect(selfadj).max_selfadjoint <= 1e-12);

    for (const auto& [v, m] : unitary.entries)
        CHECK(operator_norm(m) <= 1.0 + 1e-12);

    CHECK_THROWS_AS(generate_gamma_family(star_graph(4), 2, 1, MatrixKind::Normal),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_gamma_family(k2, 1, 1, MatrixKind::Normal),
                    std::invalid_argument);
    // raising the cap admits the larger graph
    auto star = generate_gamma_family(star_graph(4), 2, 1, MatrixKind::Normal, 256);
    CHECK(star.dimension == 128);
}

TEST_CASE("perturbation produces contractions") {
    auto fam = generate_gamma_family(p3, 2, 13, MatrixKind::Normal);
    auto same = perturb(fam, 0.0, 99);
    for (const auto& v : p3.vertices())
        CHECK((same.at(v) - fam.at(v)).norm() == 0.0);

    for (double delta : {1e-3, 1e-2, 0.5, 2.0}) {
        auto noisy = perturb(fam, delta, 42);
        for (const auto& v : p3.vertices())
            CHECK(operator_norm(noisy.at(v)) <= 1.0 + 1e-12);
    }

    // edge defect grows at the perturbation scale: observed factor is ~2,
    // frozen bound 10x
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto noisy = perturb(fam, 1e-3, seed);
        auto report = gamma_defect(noisy);
        CHECK(report.max_edge_commutator > 0.0);
        CHECK(report.max_edge_commutator <= 10.0 * 1e-3);
    }
}

TEST_CASE("objective vanishes exactly at an exact family and reduces to distance") {
    auto fam = generate_gamma_family(p3, 2, 17, MatrixKind::Normal);
    CHECK(objective(fam, fam, 1e6, MatrixKind::Normal) <= 1e-20);

    std::mt19937 rng(7);
    auto b = random_family(rng, p3, fam.dimension);
    double expected = 0.0;
    for (const auto& v : p3.vertices()) {
        double d = hs_norm(b.at(v) - fam.at(v));
        expected += d * d;
    }
    CHECK(objective(fam, b, 0.0, MatrixKind::Normal) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("objective matches independent scalar arithmetic on a 2x2 edge") {
    using M2 = std::array<std::array<Complex, 2>, 2>;
    auto mul = [](const M2& x, const M2& y) {
        M2 z{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) z[i][j] += x[i][k] * y[k][j];
        return z;
    };
    auto sub = [](const M2& x, const M2& y) {
        M2 z{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) z[i][j] = x[i][j] - y[i][j];
        return z;
    };
    auto adj = [](const M2& x) {
        M2 z{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) z[i][j] = std::conj(x[j][i]);
        return z;
    };
    auto hs2 = [](const M2& x) {
        double s = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s += std::norm(x[i][j]);
        return s / 2.0;
    };

    M2 a1{{{Complex(0.3, 0.1), Complex(-0.2, 0.4)}, {Complex(0.0, -0.5), Complex(0.7, 0.0)}}};
    M2 a2{{{Complex(-0.1, 0.2), Complex(0.6, -0.3)}, {Complex(0.25, 0.0), Complex(-0.4, 0.1)}}};
    M2 b1{{{Complex(0.2, -0.1), Complex(0.1, 0.1)}, {Complex(-0.3, 0.2), Complex(0.5, -0.6)}}};
    M2 b2{{{Complex(0.4, 0.0), Complex(-0.5, 0.2)}, {Complex(0.15, -0.25), Complex(0.0, 0.3)}}};

    const double lambda = 2.5;
    double expected = hs2(sub(b1, a1)) + hs2(sub(b2, a2));
    expected += lambda * hs2(sub(mul(b1, b2), mul(b2, b1)));
    expected += lambda * hs2(sub(mul(b1, adj(b1)), mul(adj(b1), b1)));
    expected += lambda * hs2(sub(mul(b2, adj(b2)), mul(adj(b2), b2)));

    auto to_eigen = [](const M2& x) {
        Eigen::MatrixXcd m(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(i, j) = x[i][j];
        return m;
    };
    auto a = MatrixFamily::create(k2, {{"1", to_eigen(a1)}, {"2", to_eigen(a2)}});
    auto b = MatrixFamily::create(k2, {{"1", to_eigen(b1)}, {"2", to_eigen(b2)}});
    CHECK(objective(a, b, lambda, MatrixKind::Normal) ==
          doctest::Approx(expected).epsilon(1e-12));
}

namespace {

// Coordinate-wise central finite differences of the objective in b.
std::map<Vertex, Eigen::MatrixXcd> fd_gradient(const MatrixFamily& a, const MatrixFamily& b,
                                               double lambda, MatrixKind kind,
                                               double step = 1e-5) {
    std::map<Vertex, Eigen::MatrixXcd> out;
    for (const auto& v : a.graph.vertices()) {
        const auto& m = b.at(v);
        Eigen::MatrixXcd g(m.rows(), m.cols());
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                MatrixFamily plus = b, minus = b;
                plus.entries.at(v)(i, j) += step;
                minus.entries.at(v)(i, j) -= step;
                double d_re = (objective(a, plus, lambda, kind) -
                               objective(a, minus, lambda, kind)) /
                              (2 * step);
                plus = b;
                minus = b;
                plus.entries.at(v)(i, j) += Complex(0, step);
                minus.entries.at(v)(i, j) -= Complex(0, step);
                double d_im = (objective(a, plus, lambda, kind) -
                               objective(a, minus, lambda, kind)) /
                              (2 * step);
                g(i, j) = Complex(d_re, d_im);
            }
        }
        out.emplace(v, std::move(g));
    }
    return out;
}

}  // namespace

TEST_CASE("analytic gradient agrees with finite differences") {
    std::mt19937 rng(101);
    const std::array<double, 3> lambdas{0.0, 1.0, 10.0};
    int checked = 0;
    for (int iter = 0; iter < 50; ++iter) {
        const SimplicialGraph& g = (iter % 2 == 0) ? k2 : p3;
        Eigen::Index dim = 2 + iter % 3;  // dimensions 2..4
        auto a = random_family(rng, g, dim, 0.7);
        auto b = random_family(rng, g, dim, 0.7);
        double lambda = lambdas[static_cast<std::size_t>(iter) % lambdas.size()];
        auto analytic = gradient(a, b, lambda, MatrixKind::Normal);
        auto numeric = fd_gradient(a, b, lambda, MatrixKind::Normal);
        double num = 0.0, den = 0.0;
        for (const auto& v : g.vertices()) {
            num += (analytic.at(v) - numeric.at(v)).squaredNorm();
            den += numeric.at(v).squaredNorm();
        }
        CHECK(std::sqrt(num) <= 1e-5 * std::max(1e-9, std::sqrt(den)));
        ++checked;
    }
    CHECK(checked == 50);
}

TEST_CASE("gradient at an exact family vanishes and lambda 0 is the distance term") {
    auto fam = generate_gamma_family(p3, 2, 23, MatrixKind::Normal);
    auto grad = gradient(fam, fam, 1.0, MatrixKind::Normal);
    for (const auto& v : p3.vertices()) CHECK(hs_norm(grad.at(v)) <= 1e-12);
    // at large penalty weights the roundoff floor of the normality term scales
    // with lambda but stays inside the stage tolerance
    auto grad_hi = gradient(fam, fam, 1e6, MatrixKind::Normal);
    for (const auto& v : p3.vertices()) CHECK(hs_norm(grad_hi.at(v)) <= 1e-9);

    std::mt19937 rng(9);
    auto b = random_family(rng, p3, fam.dimension);
    auto g0 = gradient(fam, b, 0.0, MatrixKind::Normal);
    double n = static_cast<double>(fam.dimension);
    for (const auto& v : p3.vertices()) {
        Eigen::MatrixXcd expected = (2.0 / n) * (b.at(v) - fam.at(v));
        CHECK((g0.at(v) - expected).norm() <= 1e-14);
    }
}

TEST_CASE("projection fixes exact families") {
    auto fam = generate_gamma_family(p3, 2, 31, MatrixKind::Normal);
    auto result = project_to_gamma_commuting(fam);
    CHECK(result.record.epsilon <= 1e-8);
    CHECK(result.record.converged);
    CHECK(result.record.after.max_edge_commutator <= 1e-6);

    // no edges: normal inputs are already optimal
    auto lonely = generate_gamma_family(edgeless2, 2, 37, MatrixKind::Normal);
    auto lonely_result = project_to_gamma_commuting(lonely);
    CHECK(lonely_result.record.epsilon <= 1e-8);
}

TEST_CASE("projection recovers a commuting family near a perturbed one") {
    auto exact = generate_gamma_family(p3, 2, 41, MatrixKind::Normal);
    auto noisy = perturb(exact, 1e-2, 43);
    std::vector<std::pair<double, double>> trace;
    ProjectOptions options;
    options.objective_trace = &trace;
    auto result = project_to_gamma_commuting(noisy, options);

    CHECK(result.record.converged);
    CHECK(result.record.after.max_edge_commutator <= 1e-6);
    CHECK(result.record.after.max_normality <= 1e-4);
    // regression bound frozen from the first build: observed epsilon ~2e-2
    CHECK(result.record.epsilon <= 10.0 * 1e-2);
    CHECK(result.record.epsilon > 0.0);

    // the objective never increases within a penalty stage
    for (std::size_t i = 1; i < trace.size(); ++i)
        if (trace[i].first == trace[i - 1].first)
            CHECK(trace[i].second <= trace[i - 1].second + 1e-15);
}

TEST_CASE("self-adjoint projection stays Hermitian") {
    auto exact = generate_gamma_family(k2, 2, 47, MatrixKind::SelfAdjoint);
    auto noisy = perturb(exact, 1e-2, 53);
    ProjectOptions options;
    options.kind = MatrixKind::SelfAdjoint;
    auto result = project_to_gamma_commuting(noisy, options);
    for (const auto& v : k2.vertices()) {
        const auto& m = result.family.at(v);
        CHECK(hs_norm(m - m.adjoint().eval()) <= 1e-12);
    }
    CHECK(result.record.after.max_edge_commutator <= 1e-6);
}

TEST_CASE("unitary projection stays unitary") {
    auto exact = generate_gamma_family(k2, 2, 59, MatrixKind::Unitary);
    auto noisy = perturb(exact, 1e-2, 61);
    ProjectOptions options;
    options.kind = MatrixKind::Unitary;
    auto result = project_to_gamma_commuting(noisy, options);
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(exact.dimension, exact.dimension);
    for (const auto& v : k2.vertices()) {
        const auto& m = result.family.at(v);
        CHECK(hs_norm(id - m * m.adjoint()) <= 1e-10);
    }
    CHECK(result.record.after.max_edge_commutator <= 1e-6);
}

TEST_CASE("sweep determinism and record layout") {
    std::vector<double> deltas{5e-2, 5e-3};
    auto records = sweep(p3, deltas, 2, 271828, MatrixKind::Normal);
    REQUIRE(records.size() == 4);
    CHECK(records[0].delta == 5e-2);
    CHECK(records[0].trial == 0);
    CHECK(records[1].trial == 1);
    CHECK(records[2].delta == 5e-3);
    for (const auto& r : records) {
        CHECK(r.epsilon >= 0.0);
        if (r.converged) CHECK(r.after.max_edge_commutator <= 1e-6);
    }

    auto again = sweep(p3, {5e-3, 5e-2}, 2, 271828, MatrixKind::Normal);
    CHECK(records_to_csv(records) == records_to_csv(again));

    CHECK(sweep(p3, deltas, 0, 1, MatrixKind::Normal).empty());
    CHECK_THROWS_AS(sweep(p3, {-1.0}, 1, 1, MatrixKind::Normal), std::invalid_argument);
}

TEST_CASE("csv layout") {
    ExperimentRecord r;
    r.delta = 0.1;
    r.trial = 3;
    r.seed = 12345;
    r.before.max_edge_commutator = 0.25;
    r.before.max_normality = 0.5;
    r.epsilon = 0.125;
    r.after.max_edge_commutator = 1e-7;
    r.after.max_normality = 2e-7;
    r.iterations = 42;
    r.converged = true;
    ExperimentRecord earlier = r;
    earlier.delta = 0.2;
    earlier.trial = 0;
    std::string csv = records_to_csv({r, earlier});
    CHECK(csv ==
          "delta,trial,seed,pre_edge_defect,pre_normality,epsilon,"
          "post_edge_defect,post_normality,iterations,converged\n"
          "0.2,0,12345,0.25,0.5,0.125,1e-07,2e-07,42,true\n"
          "0.1,3,12345,0.25,0.5,0.125,1e-07,2e-07,42,true\n");
}

TEST_CASE("family files round trip") {
    Eigen::MatrixXcd m1(2, 2), m2(2, 2);
    m1 << Complex(1.5, -0.25), Complex(0, 1), Complex(-2, 0), Complex(0.125, 0.5);
    m2 << Complex(0, 0), Complex(1, -1), Complex(0.1, 0.2), Complex(-0.3, -0.4);
    auto fam = MatrixFamily::create(k2, {{"1", m1}, {"2", m2}});
    auto text = serialize_family(fam);
    std::istringstream in(text);
    auto parsed = parse_family(k2, in);
    for (const auto& v : k2.vertices())
        CHECK((parsed.at(v) - fam.at(v)).norm() == 0.0);
    CHECK(serialize_family(parsed) == text);

    auto bad = [&](const std::string& s) {
        std::istringstream stream(s);
        CHECK_THROWS_AS(parse_family(k2, stream), ParseError);
    };
    bad("matrix 1 2\n1+0i 0+0i\n0+0i 1+0i\n");                     // missing vertex 2
    bad("matrix 1 1\n1+0i\nmatrix 1 1\n1+0i\n");                   // duplicate
    bad("grid 1 2\n");                                             // bad header
    bad("matrix 1 2\n1+0i 0+0i\n0+0i\n");                          // truncated
    bad("matrix 1 1\nbogus\nmatrix 2 1\n1+0i\n");                  // bad token
    bad("matrix 1 1\n1+0i\nmatrix 2 2\n1+0i 0+0i\n0+0i 1+0i\n");   // mixed dims
}

TEST_CASE("shortest round-trip decimals") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(0.0) == "0");
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        double x = u(rng);
        CHECK(std::stod(format_double(x)) == x);
    }
}
