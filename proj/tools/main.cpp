#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "pincushion/classify.hpp"
#include "pincushion/graph.hpp"
#include "pincushion/linlab.hpp"
#include "pincushion/raag.hpp"
#include "pincushion/trace.hpp"
#include "pincushion/words.hpp"

namespace {

using namespace pincushion;

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i];
    }
    return out;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
}

const std::map<std::string, MatrixKind> kind_names{
    {"normal", MatrixKind::Normal},
    {"selfadjoint", MatrixKind::SelfAdjoint},
    {"unitary", MatrixKind::Unitary}};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pincushion graph classification, graph-product word calculus, "
                 "and almost-commuting matrix recovery experiments"};
    app.require_subcommand(1);

    // classify
    std::string classify_graph;
    int classify_max_level = -1;
    bool classify_certificate = false;
    auto* classify = app.add_subcommand("classify", "Decide pincushion-class membership");
    classify->add_option("graph-file", classify_graph)->required();
    classify->add_option("--max-level", classify_max_level, "Cap the level search");
    classify->add_flag("--certificate", classify_certificate, "Print the construction trace");

    // pins
    std::string pins_graph;
    auto* pins_cmd = app.add_subcommand("pins", "List the vertices of degree 1");
    pins_cmd->add_option("graph-file", pins_graph)->required();

    // word
    auto* word = app.add_subcommand("word", "Graph-product word calculus");
    word->require_subcommand(1);
    std::string word_graph;
    std::vector<std::string> word_tokens;
    std::string equal_graph, equal_first, equal_second;
    auto* word_reduce = word->add_subcommand("reduce", "Reduce a word");
    auto* word_nf = word->add_subcommand("normal-form", "Canonical reduced word");
    auto* word_reduced = word->add_subcommand("reduced?", "Test reducedness");
    for (auto* sub : {word_reduce, word_nf, word_reduced}) {
        sub->add_option("graph-file", word_graph)->required();
        sub->add_option("word", word_tokens, "Vertex identifiers");
    }
    auto* word_equal = word->add_subcommand("equal", "Test word equivalence");
    word_equal->add_option("graph-file", equal_graph)->required();
    word_equal->add_option("first", equal_first, "First word (quoted)")->required();
    word_equal->add_option("second", equal_second, "Second word (quoted)")->required();

    // raag
    auto* raag = app.add_subcommand("raag", "Right-angled Artin group word problem");
    raag->require_subcommand(1);
    std::string raag_graph;
    std::vector<std::string> raag_tokens;
    auto* raag_nf = raag->add_subcommand("normal-form", "Canonical group word");
    auto* raag_trivial = raag->add_subcommand("trivial?", "Test group-word triviality");
    for (auto* sub : {raag_nf, raag_trivial}) {
        sub->add_option("graph-file", raag_graph)->required();
        sub->add_option("word", raag_tokens, "Syllables v or v^k");
    }

    // lin
    auto* lin = app.add_subcommand("lin", "Almost-commuting matrix experiments");
    lin->require_subcommand(1);

    std::string sweep_graph, sweep_out;
    std::vector<double> sweep_deltas;
    int sweep_trials = 10;
    std::uint64_t sweep_seed = 0;
    MatrixKind sweep_kind = MatrixKind::Normal;
    int sweep_leg_dim = 2;
    Eigen::Index sweep_dim_limit = 64;
    auto* lin_sweep = lin->add_subcommand("sweep", "Perturb-and-recover sweep, CSV output");
    lin_sweep->add_option("graph-file", sweep_graph)->required();
    lin_sweep->add_option("--deltas", sweep_deltas, "Perturbation scales")
        ->required()
        ->delimiter(',');
    lin_sweep->add_option("--trials", sweep_trials, "Trials per scale");
    lin_sweep->add_option("--seed", sweep_seed, "Base seed")->required();
    lin_sweep->add_option("--kind", sweep_kind, "Matrix kind")
        ->transform(CLI::CheckedTransformer(kind_names, CLI::ignore_case));
    lin_sweep->add_option("--leg-dim", sweep_leg_dim, "Tensor leg dimension");
    lin_sweep->add_option("--dim-limit", sweep_dim_limit, "Total dimension cap");
    lin_sweep->add_option("--out", sweep_out, "CSV file (default: stdout)");

    std::string project_graph, project_family, project_out;
    MatrixKind project_kind = MatrixKind::Normal;
    auto* lin_project = lin->add_subcommand("project", "Project one family, print a report");
    lin_project->add_option("graph-file", project_graph)->required();
    lin_project->add_option("family-file", project_family)->required();
    lin_project->add_option("--kind", project_kind, "Matrix kind")
        ->transform(CLI::CheckedTransformer(kind_names, CLI::ignore_case));
    lin_project->add_option("--out", project_out, "Write the recovered family here");

    try {
        app.parse(argc, argv);

        if (classify->parsed()) {
            auto g = load_graph(classify_graph);
            auto result = min_level(g, classify_max_level);
            if (result) {
                std::cout << "member " << result->level << "\n";
                if (classify_certificate) std::cout << trace_to_text(result->trace);
            } else {
                std::cout << "not-member\n";
            }
        } else if (pins_cmd->parsed()) {
            auto g = load_graph(pins_graph);
            for (const auto& v : pins(g)) std::cout << v << "\n";
        } else if (word->parsed()) {
            if (word_equal->parsed()) {
                auto g = load_graph(equal_graph);
                bool eq = equivalent(g, parse_word(g, equal_first), parse_word(g, equal_second));
                std::cout << (eq ? "true" : "false") << "\n";
            } else {
                auto g = load_graph(word_graph);
                Word w = parse_word(g, join_tokens(word_tokens));
                if (word_reduce->parsed())
                    std::cout << word_to_string(reduce(g, w)) << "\n";
                else if (word_nf->parsed())
                    std::cout << word_to_string(normal_form(g, w)) << "\n";
                else
                    std::cout << (is_reduced(g, w) ? "true" : "false") << "\n";
            }
        } else if (raag->parsed()) {
            auto g = load_graph(raag_graph);
            GroupWord w = parse_group_word(g, join_tokens(raag_tokens));
            if (raag_nf->parsed())
                std::cout << group_word_to_string(raag_normal_form(g, w)) << "\n";
            else
                std::cout << (raag_is_trivial(g, w) ? "true" : "false") << "\n";
        } else if (lin_sweep->parsed()) {
            auto g = load_graph(sweep_graph);
            SweepOptions options;
            options.leg_dim = sweep_leg_dim;
            options.dimension_limit = sweep_dim_limit;
            auto records = sweep(g, sweep_deltas, sweep_trials, sweep_seed, sweep_kind, options);
            write_output(sweep_out, records_to_csv(std::move(records)));
        } else if (lin_project->parsed()) {
            auto g = load_graph(project_graph);
            auto fam = load_family(g, project_family);
            ProjectOptions options;
            options.kind = project_kind;
            auto result = project_to_gamma_commuting(fam, options);
            const auto& r = result.record;
            std::cout << "epsilon " << format_double(r.epsilon) << "\n"
                      << "pre_edge_defect " << format_double(r.before.max_edge_commutator) << "\n"
                      << "pre_normality " << format_double(r.before.max_normality) << "\n"
                      << "post_edge_defect " << format_double(r.after.max_edge_commutator) << "\n"
                      << "post_normality " << format_double(r.after.max_normality) << "\n"
                      << "iterations " << r.iterations << "\n"
                      << "converged " << (r.converged ? "true" : "false") << "\n";
            if (!project_out.empty())
                write_output(project_out, serialize_family(result.family));
        }
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
