#include <algorithm>
#include <cmath>
#include <limits>

#include "pincushion/linlab.hpp"
#include "rng.hpp"

namespace pincushion {

namespace {

void check_compatible(const MatrixFamily& a, const MatrixFamily& b) {
    if (!(a.graph == b.graph))
        throw std::invalid_argument("matrix families live over different graphs");
    if (a.dimension != b.dimension)
        throw std::invalid_argument("matrix families have different dimensions");
}

double hs_sq(const Eigen::MatrixXcd& m) {
    double v = hs_norm(m);
    return v * v;
}

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& m) {
    return 0.5 * (m + m.adjoint());
}

Eigen::MatrixXcd polar_factor(const Eigen::MatrixXcd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

double objective(const MatrixFamily& a, const MatrixFamily& b, double lambda,
                 MatrixKind kind) {
    check_compatible(a, b);
    if (lambda < 0) throw std::invalid_argument("penalty weight must be non-negative");
    double distance = 0.0;
    for (const auto& v : a.graph.vertices()) distance += hs_sq(b.at(v) - a.at(v));
    double penalty = 0.0;
    for (const auto& [u, w] : a.graph.edge_list())
        penalty += hs_sq(commutator(b.at(u), b.at(w)));
    if (kind == MatrixKind::Normal) {
        for (const auto& v : a.graph.vertices()) {
            const auto& m = b.at(v);
            penalty += hs_sq(commutator(m, m.adjoint()));
        }
    }
    return distance + lambda * penalty;
}

std::map<Vertex, Eigen::MatrixXcd> gradient(const MatrixFamily& a,
                                            const MatrixFamily& b, double lambda,
                                            MatrixKind kind) {
    check_compatible(a, b);
    if (lambda < 0) throw std::invalid_argument("penalty weight must be non-negative");
    const double n = static_cast<double>(a.dimension);
    std::map<Vertex, Eigen::MatrixXcd> grad;
    for (const auto& v : a.graph.vertices())
        grad.emplace(v, (2.0 / n) * (b.at(v) - a.at(v)));

    for (const auto& [u, w] : a.graph.edge_list()) {
        const auto& bu = b.at(u);
        const auto& bw = b.at(w);
        Eigen::MatrixXcd c = commutator(bu, bw);
        grad.at(u) += (2.0 * lambda / n) * commutator(c, bw.adjoint());
        grad.at(w) -= (2.0 * lambda / n) * commutator(c, bu.adjoint());
    }

    if (kind == MatrixKind::Normal) {
        for (const auto& v : a.graph.vertices()) {
            const auto& m = b.at(v);
            Eigen::MatrixXcd nrm = commutator(m, m.adjoint());
            grad.at(v) += (4.0 * lambda / n) * commutator(nrm, m);
        }
    }

    if (kind == MatrixKind::SelfAdjoint)
        for (auto& [v, g] : grad) g = hermitian_part(g);

    return grad;
}

namespace {

using Direction = std::map<Vertex, Eigen::MatrixXcd>;

// Riemannian gradient on the unitary group: projection of the ambient
// gradient onto the tangent space at b.
Direction unitary_tangent(const MatrixFamily& b, const Direction& grad) {
    Direction out;
    for (const auto& [v, g] : grad) {
        const auto& u = b.at(v);
        Eigen::MatrixXcd k = u.adjoint() * g;
        out.emplace(v, u * (0.5 * (k - k.adjoint())));
    }
    return out;
}

MatrixFamily take_step(const MatrixFamily& b, const Direction& dir, double t,
                       MatrixKind kind) {
    MatrixFamily out;
    out.graph = b.graph;
    out.dimension = b.dimension;
    for (const auto& [v, m] : b.entries) {
        Eigen::MatrixXcd next = m - t * dir.at(v);
        if (kind == MatrixKind::Unitary) next = polar_factor(next);
        out.entries.emplace(v, std::move(next));
    }
    return out;
}

double direction_norm_sq(const Direction& dir) {  // sum of squared HS norms
    double total = 0.0;
    for (const auto& [v, g] : dir) total += hs_sq(g);
    return total;
}

double frobenius_norm_sq(const Direction& dir) {
    double total = 0.0;
    for (const auto& [v, g] : dir) total += g.squaredNorm();
    return total;
}

double family_inner(const Direction& x, const Direction& y) {  // Re tr(x* y)
    double total = 0.0;
    for (const auto& [v, m] : x)
        total += m.conjugate().cwiseProduct(y.at(v)).real().sum();
    return total;
}

// Exact change of the objective along b -> b - t*dir as a polynomial in t.
// Both the recovery distance and the penalty terms are quadratic in the
// commutators, which are themselves quadratic in t, so the decrease is a
// quartic whose coefficients carry full relative precision. Evaluating the
// decrease this way avoids the cancellation floor of comparing two nearly
// equal objective values, which otherwise stalls the line search once the
// per-step decrease drops below one ulp of the objective.
struct LinePolynomial {
    double c1 = 0, c2 = 0, c3 = 0, c4 = 0;

    double decrease_at(double t) const { return ((c4 * t + c3) * t + c2) * t * t + c1 * t; }
};

LinePolynomial line_polynomial(const MatrixFamily& a, const MatrixFamily& b,
                               const Direction& dir, double lambda, MatrixKind kind) {
    const double n = static_cast<double>(a.dimension);
    LinePolynomial p;
    for (const auto& v : a.graph.vertices()) {
        const auto& g = dir.at(v);
        Eigen::MatrixXcd displaced = b.at(v) - a.at(v);
        p.c1 += -2.0 / n * displaced.conjugate().cwiseProduct(g).real().sum();
        p.c2 += g.squaredNorm() / n;
    }
    auto add_penalty = [&](const Eigen::MatrixXcd& c0, const Eigen::MatrixXcd& d,
                           const Eigen::MatrixXcd& e) {
        // ||c0 - t d + t^2 e||^2 - ||c0||^2 expanded in t
        p.c1 += lambda / n * (-2.0 * c0.conjugate().cwiseProduct(d).real().sum());
        p.c2 += lambda / n *
                (d.squaredNorm() + 2.0 * c0.conjugate().cwiseProduct(e).real().sum());
        p.c3 += lambda / n * (-2.0 * d.conjugate().cwiseProduct(e).real().sum());
        p.c4 += lambda / n * e.squaredNorm();
    };
    for (const auto& [u, w] : a.graph.edge_list()) {
        const auto& bu = b.at(u);
        const auto& bw = b.at(w);
        const auto& gu = dir.at(u);
        const auto& gw = dir.at(w);
        add_penalty(commutator(bu, bw), commutator(gu, bw) + commutator(bu, gw),
                    commutator(gu, gw));
    }
    if (kind == MatrixKind::Normal) {
        for (const auto& v : a.graph.vertices()) {
            const auto& bv = b.at(v);
            const auto& gv = dir.at(v);
            Eigen::MatrixXcd badj = bv.adjoint();
            Eigen::MatrixXcd gadj = gv.adjoint();
            add_penalty(commutator(bv, badj),
                        commutator(gv, badj) + commutator(bv, gadj),
                        commutator(gv, gadj));
        }
    }
    return p;
}

// How one penalty stage ended; reaching the iteration cap is a legitimate
// stop (the budget bounds the work per stage), tracked so the projection can
// tell whether the gradient tolerance was ever reached at all.
enum class StageEnd { GradientTolerance, DescentFloor, BudgetExhausted };

struct StageState {
    MatrixFamily b;
    double bb_step = 0.0;  // current Barzilai-Borwein step estimate
    long long iterations = 0;
};

StageEnd run_stage(const MatrixFamily& a, StageState& state, double lambda,
                   const ProjectOptions& options) {
    const MatrixKind kind = options.kind;
    const bool polynomial_path = kind != MatrixKind::Unitary;
    const double c1 = 1e-4;
    bool have_prev = false;
    MatrixFamily prev_b = state.b;
    Direction prev_dir;

    for (int it = 0; it < options.max_iterations_per_stage; ++it) {
        Direction dir = gradient(a, state.b, lambda, kind);
        if (kind == MatrixKind::Unitary) dir = unitary_tangent(state.b, dir);
        double grad_norm = std::sqrt(direction_norm_sq(dir));
        if (!std::isfinite(grad_norm))
            throw std::runtime_error("non-finite gradient during projection");
        if (grad_norm <= options.gradient_tolerance) return StageEnd::GradientTolerance;

        // Barzilai-Borwein step estimate from the last accepted move, kept
        // sticky across iterations where the curvature pairing is unusable.
        if (have_prev) {
            Direction db, dg;
            for (const auto& [v, m] : state.b.entries)
                db.emplace(v, m - prev_b.entries.at(v));
            for (const auto& [v, m] : dir) dg.emplace(v, m - prev_dir.at(v));
            double sy = family_inner(db, dg);
            double yy = family_inner(dg, dg);
            if (sy > 0 && yy > 0 && std::isfinite(sy / yy)) state.bb_step = sy / yy;
        }

        double slope = frobenius_norm_sq(dir);  // -d/dt f(b - t dir) at t = 0
        double t = state.bb_step > 0 ? state.bb_step : 1.0;
        prev_b = state.b;
        prev_dir = dir;
        bool accepted = false;

        if (polynomial_path) {
            LinePolynomial poly = line_polynomial(a, state.b, dir, lambda, kind);
            for (int halving = 0; halving < 60; ++halving) {
                if (poly.decrease_at(t) <= -c1 * t * slope) {
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
            if (accepted) {
                for (auto& [v, m] : state.b.entries) m -= t * dir.at(v);
                if (options.objective_trace)
                    options.objective_trace->emplace_back(
                        lambda, objective(a, state.b, lambda, kind));
            }
        } else {
            // the polar retraction is not polynomial in t; compare objectives
            // directly and stop once the decrease falls below representable
            double f0 = objective(a, state.b, lambda, kind);
            double resolution = 8.0 * std::numeric_limits<double>::epsilon() *
                                std::max(f0, std::numeric_limits<double>::min());
            for (int halving = 0; halving < 60; ++halving) {
                if (t * slope <= resolution) return StageEnd::DescentFloor;
                MatrixFamily trial = take_step(state.b, dir, t, kind);
                double f1 = objective(a, trial, lambda, kind);
                if (!std::isfinite(f1))
                    throw std::runtime_error("non-finite objective during projection");
                if (f1 <= f0 - c1 * t * slope) {
                    state.b = std::move(trial);
                    accepted = true;
                    if (options.objective_trace)
                        options.objective_trace->emplace_back(lambda, f1);
                    break;
                }
                t *= 0.5;
            }
        }
        ++state.iterations;
        if (!accepted) return StageEnd::DescentFloor;
        have_prev = true;
        if (state.bb_step <= 0) state.bb_step = t;
    }
    return StageEnd::BudgetExhausted;
}

}  // namespace

ProjectionResult project_to_gamma_commuting(const MatrixFamily& a,
                                            const ProjectOptions& options) {
    const MatrixKind kind = options.kind;

    StageState state;
    state.b.graph = a.graph;
    state.b.dimension = a.dimension;
    for (const auto& [v, m] : a.entries) {
        switch (kind) {
            case MatrixKind::SelfAdjoint:
                state.b.entries.emplace(v, hermitian_part(m));
                break;
            case MatrixKind::Unitary:
                state.b.entries.emplace(v, polar_factor(m));
                break;
            default:
                state.b.entries.emplace(v, m);
        }
    }

    long long stages = 0;
    for (double lambda = options.lambda_initial;
         lambda <= options.lambda_max * (1 + 1e-12); lambda *= options.lambda_factor) {
        ++stages;
        run_stage(a, state, lambda, options);
        // penalty curvature grows with lambda; rescale the carried step
        if (state.bb_step > 0 && options.lambda_factor > 1.0)
            state.bb_step /= options.lambda_factor;
        if (options.lambda_factor <= 1.0) break;
    }

    // exhausted = every stage consumed its full budget, i.e. the descent never
    // reached the gradient tolerance or its numerical floor anywhere
    bool budget_exhausted =
        state.iterations >= stages * static_cast<long long>(options.max_iterations_per_stage);

    ExperimentRecord record;
    record.before = gamma_defect(a);
    record.after = gamma_defect(state.b);
    double epsilon = 0.0;
    for (const auto& v : a.graph.vertices())
        epsilon += hs_norm(a.at(v) - state.b.at(v));
    record.epsilon = epsilon;
    record.iterations = state.iterations;
    record.converged = !budget_exhausted &&
                       record.after.max_edge_commutator <= options.hard_edge_tolerance;
    return ProjectionResult{std::move(state.b), std::move(record)};
}

std::vector<ExperimentRecord> sweep(const SimplicialGraph& g, std::vector<double> deltas,
                                    int trials, std::uint64_t base_seed, MatrixKind kind,
                                    SweepOptions options) {
    for (double d : deltas)
        if (!(d > 0)) throw std::invalid_argument("perturbation scales must be positive");
    if (trials < 0) throw std::invalid_argument("trial count must be non-negative");
    std::sort(deltas.begin(), deltas.end(), std::greater<>());
    options.projection.kind = kind;

    std::vector<ExperimentRecord> records;
    records.reserve(deltas.size() * static_cast<std::size_t>(trials));
    for (std::size_t di = 0; di < deltas.size(); ++di) {
        for (int trial = 0; trial < trials; ++trial) {
            std::uint64_t seed = detail::derive_seed(
                detail::derive_seed(base_seed, di), static_cast<std::uint64_t>(trial));
            MatrixFamily exact = generate_gamma_family(
                g, options.leg_dim, detail::derive_seed(seed, 1), kind,
                options.dimension_limit);
            MatrixFamily noisy = perturb(exact, deltas[di], detail::derive_seed(seed, 2));
            ProjectionResult projected = project_to_gamma_commuting(noisy, options.projection);
            ExperimentRecord rec = projected.record;
            rec.delta = deltas[di];
            rec.trial = trial;
            rec.seed = seed;
            records.push_back(std::move(rec));
        }
    }
    return records;
}

std::string records_to_csv(std::vector<ExperimentRecord> records) {
    std::sort(records.begin(), records.end(),
              [](const ExperimentRecord& x, const ExperimentRecord& y) {
                  if (x.delta != y.delta) return x.delta > y.delta;
                  return x.trial < y.trial;
              });
    std::string out =
        "delta,trial,seed,pre_edge_defect,pre_normality,epsilon,"
        "post_edge_defect,post_normality,iterations,converged\n";
    for (const auto& r : records) {
        out += format_double(r.delta);
        out += ',';
        out += std::to_string(r.trial);
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += format_double(r.before.max_edge_commutator);
        out += ',';
        out += format_double(r.before.max_normality);
        out += ',';
        out += format_double(r.epsilon);
        out += ',';
        out += format_double(r.after.max_edge_commutator);
        out += ',';
        out += format_double(r.after.max_normality);
        out += ',';
        out += std::to_string(r.iterations);
        out += ',';
        out += r.converged ? "true" : "false";
        out += '\n';
    }
    return out;
}

}  // namespace pincushion
