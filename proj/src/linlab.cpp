#include "pincushion/linlab.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "rng.hpp"

namespace pincushion {

double hs_norm(const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("hs_norm requires a square matrix");
    if (a.rows() == 0) return 0.0;
    return a.norm() / std::sqrt(static_cast<double>(a.rows()));
}

Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
        throw std::invalid_argument("commutator requires equal square dimensions");
    return a * b - b * a;
}

double operator_norm(const Eigen::MatrixXcd& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    return svd.singularValues()(0);
}

MatrixFamily MatrixFamily::create(SimplicialGraph graph,
                                  std::map<Vertex, Eigen::MatrixXcd> entries) {
    if (entries.size() != graph.vertex_count())
        throw std::invalid_argument("matrix family must cover every vertex exactly once");
    Eigen::Index n = 1;
    bool first = true;
    for (const auto& v : graph.vertices()) {
        auto it = entries.find(v);
        if (it == entries.end())
            throw std::invalid_argument("matrix family is missing vertex '" + v + "'");
        const auto& m = it->second;
        if (m.rows() != m.cols())
            throw std::invalid_argument("matrix for vertex '" + v + "' is not square");
        if (first) {
            n = m.rows();
            first = false;
        } else if (m.rows() != n) {
            throw std::invalid_argument("matrix dimensions differ across vertices");
        }
        if (!m.allFinite())
            throw std::invalid_argument("matrix for vertex '" + v + "' has non-finite entries");
    }
    if (!first && n < 1)
        throw std::invalid_argument("matrix dimension must be at least 1");
    MatrixFamily fam;
    fam.graph = std::move(graph);
    fam.entries = std::move(entries);
    fam.dimension = first ? 1 : n;
    return fam;
}

DefectReport gamma_defect(const MatrixFamily& fam) {
    DefectReport report;
    for (const auto& [u, w] : fam.graph.edge_list()) {
        double c = hs_norm(commutator(fam.at(u), fam.at(w)));
        report.max_edge_commutator = std::max(report.max_edge_commutator, c);
    }
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(fam.dimension, fam.dimension);
    for (const auto& [v, m] : fam.entries) {
        Eigen::MatrixXcd adj = m.adjoint();
        report.max_normality = std::max(report.max_normality, hs_norm(commutator(m, adj)));
        report.max_selfadjoint = std::max(report.max_selfadjoint, hs_norm(m - adj));
        report.max_unitary =
            std::max(report.max_unitary, hs_norm(id - m * adj));
    }
    return report;
}

namespace {

Eigen::MatrixXcd haar_unitary(Eigen::Index n, detail::GaussianSource& rng) {
    Eigen::MatrixXcd z(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            z(i, j) = rng.complex_normal();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR();
    // fix the phase ambiguity so that the distribution is Haar
    for (Eigen::Index i = 0; i < n; ++i) {
        std::complex<double> d = r(i, i);
        std::complex<double> phase = std::abs(d) > 0 ? d / std::abs(d) : 1.0;
        q.col(i) *= phase;
    }
    return q;
}

Eigen::MatrixXcd random_contraction(Eigen::Index n, MatrixKind kind,
                                    detail::GaussianSource& rng) {
    Eigen::MatrixXcd q = haar_unitary(n, rng);
    if (kind == MatrixKind::Unitary) return q;
    Eigen::VectorXcd d(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (kind == MatrixKind::SelfAdjoint) {
            d(i) = 2.0 * rng.uniform01() - 1.0;  // spectrum in [-1, 1]
        } else {
            double radius = std::sqrt(rng.uniform01());  // uniform in the unit disk
            double angle = 2.0 * std::numbers::pi * rng.uniform01();
            d(i) = std::polar(radius, angle);
        }
    }
    return q * d.asDiagonal() * q.adjoint();
}

}  // namespace

MatrixFamily generate_gamma_family(const SimplicialGraph& g, int leg_dim,
                                   std::uint64_t seed, MatrixKind kind,
                                   Eigen::Index dimension_limit) {
    if (leg_dim < 2) throw std::invalid_argument("leg dimension must be at least 2");
    const std::size_t n = g.vertex_count();

    // one leg per singleton plus one per non-adjacent pair
    std::vector<std::pair<std::size_t, std::size_t>> legs;
    for (std::size_t i = 0; i < n; ++i) legs.emplace_back(i, i);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!g.has_edge(i, j)) legs.emplace_back(i, j);

    Eigen::Index dim = 1;
    for (std::size_t l = 0; l < legs.size(); ++l) {
        if (dim > dimension_limit / leg_dim)
            throw std::invalid_argument("total dimension exceeds the cap of " +
                                        std::to_string(dimension_limit));
        dim *= leg_dim;
    }
    if (dim >= dimension_limit && !legs.empty())
        throw std::invalid_argument("total dimension " + std::to_string(dim) +
                                    " reaches the cap of " +
                                    std::to_string(dimension_limit));

    // digit decomposition of each full index, leg 0 most significant
    const std::size_t nlegs = legs.size();
    std::vector<std::vector<int>> digits(static_cast<std::size_t>(dim),
                                         std::vector<int>(nlegs, 0));
    for (Eigen::Index x = 0; x < dim; ++x) {
        Eigen::Index rem = x;
        for (std::size_t l = nlegs; l-- > 0;) {
            digits[static_cast<std::size_t>(x)][l] = static_cast<int>(rem % leg_dim);
            rem /= leg_dim;
        }
    }

    std::map<Vertex, Eigen::MatrixXcd> entries;
    for (std::size_t vi = 0; vi < n; ++vi) {
        std::vector<std::size_t> support;
        for (std::size_t l = 0; l < nlegs; ++l)
            if (legs[l].first == vi || legs[l].second == vi) support.push_back(l);

        Eigen::Index sub_dim = 1;
        for (std::size_t s = 0; s < support.size(); ++s) sub_dim *= leg_dim;

        detail::GaussianSource rng(detail::derive_seed(seed, vi));
        Eigen::MatrixXcd base = random_contraction(sub_dim, kind, rng);

        // sub-index on the support legs and signature of the rest
        std::vector<Eigen::Index> sub(static_cast<std::size_t>(dim));
        std::vector<Eigen::Index> sig(static_cast<std::size_t>(dim));
        for (Eigen::Index x = 0; x < dim; ++x) {
            Eigen::Index s = 0, t = 0;
            std::size_t si = 0;
            for (std::size_t l = 0; l < nlegs; ++l) {
                int digit = digits[static_cast<std::size_t>(x)][l];
                if (si < support.size() && support[si] == l) {
                    s = s * leg_dim + digit;
                    ++si;
                } else {
                    t = t * leg_dim + digit;
                }
            }
            sub[static_cast<std::size_t>(x)] = s;
            sig[static_cast<std::size_t>(x)] = t;
        }

        Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
        for (Eigen::Index r = 0; r < dim; ++r)
            for (Eigen::Index c = 0; c < dim; ++c)
                if (sig[static_cast<std::size_t>(r)] == sig[static_cast<std::size_t>(c)])
                    full(r, c) = base(sub[static_cast<std::size_t>(r)],
                                      sub[static_cast<std::size_t>(c)]);
        entries.emplace(g.vertices()[vi], std::move(full));
    }
    MatrixFamily fam;
    fam.graph = g;
    fam.entries = std::move(entries);
    fam.dimension = dim;
    return fam;
}

MatrixFamily perturb(const MatrixFamily& fam, double delta, std::uint64_t seed) {
    if (delta < 0) throw std::invalid_argument("perturbation scale must be non-negative");
    const Eigen::Index n = fam.dimension;
    const double entry_scale = 1.0 / std::sqrt(static_cast<double>(n));
    MatrixFamily out;
    out.graph = fam.graph;
    out.dimension = n;
    std::size_t vi = 0;
    for (const auto& v : fam.graph.vertices()) {
        detail::GaussianSource rng(detail::derive_seed(seed, vi++));
        Eigen::MatrixXcd g(n, n);
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < n; ++c)
                g(r, c) = rng.complex_normal() * entry_scale;
        Eigen::MatrixXcd b = fam.at(v) + delta * g;
        double norm = operator_norm(b);
        if (norm > 1.0) b /= norm;
        out.entries.emplace(v, std::move(b));
    }
    return out;
}

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

namespace {

std::complex<double> parse_complex_token(const std::string& tok) {
    const char* begin = tok.data();
    const char* end = tok.data() + tok.size();
    auto parse_part = [&](const char*& p, double& out) -> bool {
        if (p < end && *p == '+') ++p;  // from_chars rejects a leading plus
        auto [next, ec] = std::from_chars(p, end, out);
        if (ec != std::errc{}) return false;
        p = next;
        return true;
    };
    const char* p = begin;
    double first = 0.0;
    if (!parse_part(p, first)) throw ParseError("malformed complex entry '" + tok + "'");
    if (p == end) return {first, 0.0};                       // pure real
    if (*p == 'i' && p + 1 == end) return {0.0, first};      // pure imaginary
    double second = 0.0;
    if (!parse_part(p, second) || p == end || *p != 'i' || p + 1 != end)
        throw ParseError("malformed complex entry '" + tok + "'");
    return {first, second};
}

std::string format_complex(std::complex<double> z) {
    double re = z.real() == 0.0 ? 0.0 : z.real();  // fold negative zero
    double im = z.imag() == 0.0 ? 0.0 : z.imag();
    std::string out = format_double(re);
    if (im >= 0.0) out += '+';
    out += format_double(im);
    out += 'i';
    return out;
}

}  // namespace

MatrixFamily parse_family(const SimplicialGraph& g, std::istream& in) {
    std::map<Vertex, Eigen::MatrixXcd> entries;
    std::string keyword;
    while (in >> keyword) {
        if (keyword != "matrix")
            throw ParseError("expected 'matrix' header, found '" + keyword + "'");
        std::string vertex;
        Eigen::Index n = 0;
        if (!(in >> vertex >> n) || n < 1)
            throw ParseError("malformed matrix header");
        Eigen::MatrixXcd m(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = 0; c < n; ++c) {
                std::string tok;
                if (!(in >> tok))
                    throw ParseError("matrix for vertex '" + vertex + "' is truncated");
                m(r, c) = parse_complex_token(tok);
            }
        }
        if (!entries.emplace(vertex, std::move(m)).second)
            throw ParseError("duplicate matrix for vertex '" + vertex + "'");
    }
    try {
        return MatrixFamily::create(g, std::move(entries));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

MatrixFamily load_family(const SimplicialGraph& g, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open family file '" + path + "'");
    return parse_family(g, in);
}

std::string serialize_family(const MatrixFamily& fam) {
    std::ostringstream out;
    for (const auto& v : fam.graph.vertices()) {
        const auto& m = fam.at(v);
        out << "matrix " << v << " " << m.rows() << "\n";
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                if (c) out << ' ';
                out << format_complex(m(r, c));
            }
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace pincushion
