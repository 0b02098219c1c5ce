#pragma once

#include <string>
#include <vector>

#include "pincushion/graph.hpp"

namespace pincushion {

/// One generator power s_v^e with e != 0.
struct Syllable {
    Vertex vertex;
    long long exponent = 1;

    friend bool operator==(const Syllable&, const Syllable&) = default;
    friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

/// A product of generator powers in the group presented over the graph:
/// generators commute exactly when their vertices are joined by an edge.
using GroupWord = std::vector<Syllable>;

/// Canonical form: merge same-vertex syllables whenever the syllables between
/// them commute past, drop vanishing exponents, then order the survivors as
/// the lexicographically least linearization under (vertex, exponent).
/// Idempotent and compatible with multiplication.
GroupWord raag_normal_form(const SimplicialGraph& g, GroupWord w);

/// True iff the word represents the group identity.
bool raag_is_trivial(const SimplicialGraph& g, const GroupWord& w);

/// Normal form of the concatenation.
GroupWord raag_multiply(const SimplicialGraph& g, const GroupWord& a, const GroupWord& b);

/// Normal form of the reversed word with negated exponents.
GroupWord raag_invert(const SimplicialGraph& g, const GroupWord& w);

/// Token syntax: `v` (exponent 1) or `v^k` with nonzero integer k,
/// whitespace-separated. Unknown vertices are domain errors; malformed
/// tokens are parse errors.
GroupWord parse_group_word(const SimplicialGraph& g, const std::string& text);
std::string group_word_to_string(const GroupWord& w);

}  // namespace pincushion
