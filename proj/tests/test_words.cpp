#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "pincushion/words.hpp"

using namespace pincushion;

namespace {

const SimplicialGraph k2({"1", "2"}, {{"1", "2"}});
const SimplicialGraph edgeless2({"1", "2"}, {});

std::vector<Word> all_words(const SimplicialGraph& g, std::size_t max_len) {
    std::vector<Word> out{{}};
    std::size_t start = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t stop = out.size();
        for (std::size_t i = start; i < stop; ++i)
            for (const auto& v : g.vertices()) {
                Word w = out[i];
                w.push_back(v);
                out.push_back(std::move(w));
            }
        start = stop;
    }
    return out;
}

std::vector<SimplicialGraph> graphs_on(int n) {
    std::vector<Vertex> verts;
    for (int i = 1; i <= n; ++i) verts.push_back(std::to_string(i));
    std::vector<SimplicialGraph> out;
    int pairs = n * (n - 1) / 2;
    for (unsigned bits = 0; bits < (1u << pairs); ++bits) {
        std::vector<std::pair<Vertex, Vertex>> edges;
        int bit = 0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < j; ++i, ++bit)
                if ((bits >> bit) & 1)
                    edges.emplace_back(std::to_string(i + 1), std::to_string(j + 1));
        out.emplace_back(verts, edges);
    }
    return out;
}

}  // namespace

TEST_CASE("reducedness by definition") {
    CHECK(is_reduced(edgeless2, {"1", "2", "1"}));
    CHECK(!is_reduced(k2, {"1", "2", "1"}));
    CHECK(is_reduced(k2, {}));
    CHECK(!is_reduced(k2, {"1", "1"}));
    CHECK(is_reduced(k2, {"1", "2"}));
    CHECK_THROWS_AS(is_reduced(k2, {"9"}), std::invalid_argument);
}

TEST_CASE("small equivalence classes by direct closure") {
    CHECK(bfs_class(k2, {"1", "2"}, 2) == std::set<Word>{{"1", "2"}, {"2", "1"}});
    CHECK(bfs_class(k2, {"1"}, 1) == std::set<Word>{{"1"}});
    CHECK(bfs_class(edgeless2, {"1", "2", "1"}, 3) == std::set<Word>{{"1", "2", "1"}});
    CHECK_THROWS_AS(bfs_class(k2, {"1", "2"}, 1), std::invalid_argument);
}

TEST_CASE("reduce reaches a shortest representative") {
    // oracle: the full closure of (1,2,1) over the edge graph
    auto cls = bfs_class(k2, {"1", "2", "1"}, 3);
    std::size_t min_len = 99;
    for (const auto& w : cls) min_len = std::min(min_len, w.size());
    CHECK(min_len == 2);

    Word r = reduce(k2, {"1", "2", "1"});
    CHECK(r.size() == 2);
    CHECK(is_reduced(k2, r));
    CHECK(cls.count(r) == 1);

    CHECK(reduce(k2, {"1", "1"}) == Word{"1"});
    CHECK(reduce(edgeless2, {"1", "1"}) == Word{"1"});

    Word already{"1", "2", "1"};
    CHECK(reduce(edgeless2, already) == already);
}

TEST_CASE("equivalence from canonical forms") {
    CHECK(equivalent(k2, {"1", "2"}, {"2", "1"}));
    CHECK(!equivalent(edgeless2, {"1", "2"}, {"2", "1"}));
    CHECK(equivalent(edgeless2, {"1", "2", "1"}, {"1", "2", "1"}));
    CHECK(equivalent(k2, {"1", "1", "2"}, {"2", "1"}));
}

TEST_CASE("normal form picks the lexicographically least reduced word") {
    CHECK(normal_form(k2, {"2", "1"}) == Word{"1", "2"});
    CHECK(normal_form(edgeless2, {"2", "1"}) == Word{"2", "1"});
    CHECK(normal_form(k2, {"1", "1", "2"}) == Word{"1", "2"});
    CHECK(normal_form(k2, {}) == Word{});

    // idempotence on assorted words
    for (const auto& g : {k2, edgeless2})
        for (const auto& w : all_words(g, 4)) {
            Word nf = normal_form(g, w);
            CHECK(normal_form(g, nf) == nf);
            CHECK(equivalent(g, w, nf));
        }
}

TEST_CASE("matching permutation on forced cases") {
    Word w{"1", "2"};
    CHECK(matching_permutation(k2, w, w) == Permutation{0, 1});
    CHECK(matching_permutation(k2, {"1", "2"}, {"2", "1"}) == Permutation{1, 0});

    CHECK_THROWS_AS(matching_permutation(k2, {"1", "1"}, {"1"}), std::invalid_argument);
    CHECK_THROWS_AS(matching_permutation(edgeless2, {"1", "2"}, {"2", "1"}),
                    std::invalid_argument);
}

TEST_CASE("exhaustive agreement with the rewriting closure") {
    // every graph on 3 vertices, every word of length <= 5; the canonical
    // form must lie in the closure and be shared by every member, which
    // makes the two partitions identical
    for (const auto& g : graphs_on(3)) {
        auto words = all_words(g, 5);
        std::map<Word, Word> class_rep;  // word -> normal form of its BFS class
        for (const auto& w : words) {
            if (class_rep.count(w)) continue;
            auto cls = bfs_class(g, w, 5);
            Word nf = normal_form(g, w);
            CHECK(cls.count(nf) == 1);
            for (const auto& member : cls) {
                CHECK(normal_form(g, member) == nf);
                class_rep[member] = nf;
            }
        }
    }
}

TEST_CASE("reduced representatives conserve length and letters") {
    for (const auto& g : graphs_on(3)) {
        for (const auto& w : all_words(g, 5)) {
            if (!is_reduced(g, w)) continue;
            auto cls = bfs_class(g, w, w.size());
            Word sorted_w = w;
            std::sort(sorted_w.begin(), sorted_w.end());
            for (const auto& member : cls) {
                if (!is_reduced(g, member)) continue;
                CHECK(member.size() == w.size());
                Word sorted_m = member;
                std::sort(sorted_m.begin(), sorted_m.end());
                CHECK(sorted_m == sorted_w);

                auto sigma = matching_permutation(g, w, member);
                REQUIRE(sigma.size() == w.size());
                for (std::size_t i = 0; i < sigma.size(); ++i)
                    CHECK(member[i] == w[sigma[i]]);
                // equal letters keep their relative order
                for (std::size_t i = 0; i < sigma.size(); ++i)
                    for (std::size_t j = i + 1; j < sigma.size(); ++j)
                        if (member[i] == member[j]) CHECK(sigma[i] < sigma[j]);
            }
        }
    }
}

TEST_CASE("complete graphs sort letters, edgeless graphs only merge neighbors") {
    SimplicialGraph k3({"1", "2", "3"}, {{"1", "2"}, {"1", "3"}, {"2", "3"}});
    for (const auto& w : all_words(k3, 5)) {
        Word nf = normal_form(k3, w);
        CHECK(std::is_sorted(nf.begin(), nf.end()));
        CHECK(std::adjacent_find(nf.begin(), nf.end()) == nf.end());
    }
    SimplicialGraph free3({"1", "2", "3"}, {});
    for (const auto& w : all_words(free3, 5)) {
        bool no_adjacent_equal = std::adjacent_find(w.begin(), w.end()) == w.end();
        CHECK(is_reduced(free3, w) == no_adjacent_equal);
    }
}

TEST_CASE("word literals") {
    CHECK(parse_word(k2, "1 2 1") == Word{"1", "2", "1"});
    CHECK(parse_word(k2, "") == Word{});
    CHECK(word_to_string(Word{"1", "2"}) == "1 2");
    CHECK(word_to_string(Word{}) == "");
    CHECK_THROWS_AS(parse_word(k2, "1 7"), std::invalid_argument);
}
