#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "pincushion/graph.hpp"

namespace pincushion {

/// A word over the vertex alphabet of some graph. The empty word is legal.
using Word = std::vector<Vertex>;

/// A bijection on {0..n-1} given as the sequence of images.
using Permutation = std::vector<std::size_t>;

/// True iff any two equal letters are separated by a letter not adjacent to
/// them. The empty word is reduced.
bool is_reduced(const SimplicialGraph& g, const Word& w);

/// Some reduced word equivalent to w under deleting an adjacent duplicate
/// letter and swapping adjacent letters joined by an edge. Never longer than
/// the input.
Word reduce(const SimplicialGraph& g, Word w);

/// Class invariance of the canonical form: a ~ b iff their normal forms match.
bool equivalent(const SimplicialGraph& g, const Word& a, const Word& b);

/// The lexicographically least reduced word in the equivalence class of w,
/// computed by eager merging followed by greedy leftmost selection of the
/// smallest shuffle-movable letter. Idempotent.
Word normal_form(const SimplicialGraph& g, const Word& w);

/// The unique permutation sigma with to[i] == from[sigma[i]] that preserves
/// the relative order of equal letters. Both words must be reduced and
/// equivalent; throws std::invalid_argument otherwise.
Permutation matching_permutation(const SimplicialGraph& g, const Word& from,
                                 const Word& to);

/// Closure of w under single rewriting moves in both directions (merge,
/// shuffle, duplicate), truncated at words of length cap. With cap ==
/// w.size() the closure contains every reduced representative. Exponential;
/// intended as an oracle for short words.
std::set<Word> bfs_class(const SimplicialGraph& g, const Word& w, std::size_t cap);

/// Word literal syntax: whitespace-separated vertex identifiers.
Word parse_word(const SimplicialGraph& g, const std::string& text);
std::string word_to_string(const Word& w);

}  // namespace pincushion
