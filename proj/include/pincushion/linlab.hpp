#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pincushion/graph.hpp"

namespace pincushion {

/// Normalized Hilbert-Schmidt norm sqrt(tr(a* a) / n). Unitarily invariant
/// and bounded by the operator norm. Throws on non-square input.
double hs_norm(const Eigen::MatrixXcd& a);

/// ab - ba. Throws on dimension mismatch.
Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Largest singular value.
double operator_norm(const Eigen::MatrixXcd& a);

enum class MatrixKind { Normal, SelfAdjoint, Unitary };

/// Assignment of one complex n x n matrix to every vertex of a graph.
struct MatrixFamily {
    SimplicialGraph graph;
    std::map<Vertex, Eigen::MatrixXcd> entries;
    Eigen::Index dimension = 1;

    /// Validates: entries keyed exactly by the graph's vertices, all square
    /// of one dimension >= 1, all values finite.
    static MatrixFamily create(SimplicialGraph graph,
                               std::map<Vertex, Eigen::MatrixXcd> entries);

    const Eigen::MatrixXcd& at(const Vertex& v) const { return entries.at(v); }
};

/// Worst-case relation defects of a family, all in the normalized
/// Hilbert-Schmidt norm.
struct DefectReport {
    double max_edge_commutator = 0.0;  // max over edges of ||[a_v, a_w]||
    double max_normality = 0.0;        // max over vertices of ||[a_v, a_v*]||
    double max_selfadjoint = 0.0;      // max of ||a_v - a_v*||
    double max_unitary = 0.0;          // max of ||1 - a_v a_v*||
};

DefectReport gamma_defect(const MatrixFamily& fam);

/// Tensor-leg construction: one leg per non-adjacent unordered vertex pair
/// (including each singleton {v,v}); vertex v acts by a random matrix of the
/// chosen kind on the legs containing v and by the identity elsewhere.
/// Supports are disjoint exactly for edges, so the family commutes exactly
/// according to the graph and generically in no stronger pattern. Total
/// dimension leg_dim^legs; dimensions >= dimension_limit are rejected.
MatrixFamily generate_gamma_family(const SimplicialGraph& g, int leg_dim,
                                   std::uint64_t seed, MatrixKind kind,
                                   Eigen::Index dimension_limit = 64);

/// a_v <- (a_v + delta G_v) / max(1, opnorm(a_v + delta G_v)) with G_v an
/// independent complex Gaussian with entries of variance 1/n. Outputs are
/// contractions.
MatrixFamily perturb(const MatrixFamily& fam, double delta, std::uint64_t seed);

/// Squared recovery distance plus lambda times the squared relation defects:
/// sum_v ||a_v - b_v||^2 + lambda (sum_edges ||[b_v,b_w]||^2 + sum_v
/// ||[b_v,b_v*]||^2), the normality sum appearing for kind Normal only
/// (Hermitian parameterization and unitary retraction make it redundant for
/// the other kinds).
double objective(const MatrixFamily& a, const MatrixFamily& b, double lambda,
                 MatrixKind kind);

/// Per-vertex derivative of `objective` with respect to b_v, in the
/// convention f(b + eps H) = f(b) + eps Re tr(G_v^* H_v) + O(eps^2).
/// Hermitian-projected for kind SelfAdjoint.
std::map<Vertex, Eigen::MatrixXcd> gradient(const MatrixFamily& a,
                                            const MatrixFamily& b, double lambda,
                                            MatrixKind kind);

struct ProjectOptions {
    MatrixKind kind = MatrixKind::Normal;
    double lambda_initial = 1.0;
    double lambda_max = 1e6;
    double lambda_factor = 10.0;
    int max_iterations_per_stage = 10000;
    double gradient_tolerance = 1e-9;
    double hard_edge_tolerance = 1e-6;
    /// When set, receives (lambda, objective) after every accepted step.
    std::vector<std::pair<double, double>>* objective_trace = nullptr;
};

/// One trial of the recovery experiment.
struct ExperimentRecord {
    double delta = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;
    DefectReport before;
    double epsilon = 0.0;  // sum_v ||a_v - b_v||, recomputed post hoc
    DefectReport after;
    long long iterations = 0;
    bool converged = false;
};

struct ProjectionResult {
    MatrixFamily family;
    ExperimentRecord record;
};

/// Penalty-method descent toward the nearest family commuting according to
/// the graph: gradient descent with backtracking line search at each lambda
/// of an increasing schedule, warm-started across stages. Kind SelfAdjoint
/// keeps iterates Hermitian; kind Unitary applies a polar retraction after
/// every step. converged requires the gradient tolerance at every stage
/// within budget and a final edge defect within hard_edge_tolerance. Throws
/// std::runtime_error if non-finite values appear.
ProjectionResult project_to_gamma_commuting(const MatrixFamily& a,
                                            const ProjectOptions& options = {});

struct SweepOptions {
    int leg_dim = 2;
    Eigen::Index dimension_limit = 64;
    ProjectOptions projection;
};

/// For each delta (descending) and trial: generate an exact family, perturb
/// at scale delta, project back, record. Deterministic in base_seed.
std::vector<ExperimentRecord> sweep(const SimplicialGraph& g,
                                    std::vector<double> deltas, int trials,
                                    std::uint64_t base_seed, MatrixKind kind,
                                    SweepOptions options = {});

/// CSV with the fixed header
/// delta,trial,seed,pre_edge_defect,pre_normality,epsilon,post_edge_defect,post_normality,iterations,converged
/// rows sorted by (delta desc, trial asc), reals in shortest round-trip form.
std::string records_to_csv(std::vector<ExperimentRecord> records);

/// Family text format: per vertex a `matrix <vertex> <n>` header followed by
/// n rows of n complex entries `a+bi`.
MatrixFamily parse_family(const SimplicialGraph& g, std::istream& in);
MatrixFamily load_family(const SimplicialGraph& g, const std::string& path);
std::string serialize_family(const MatrixFamily& fam);

/// Shortest round-trip decimal rendering used in all numeric output.
std::string format_double(double x);

}  // namespace pincushion
