#include "pincushion/raag.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace pincushion {

namespace {

void validate(const SimplicialGraph& g, const GroupWord& w) {
    for (const auto& s : w) {
        g.index_of(s.vertex);
        if (s.exponent == 0)
            throw std::invalid_argument("zero exponent on generator '" + s.vertex + "'");
    }
}

}  // namespace

GroupWord raag_normal_form(const SimplicialGraph& g, GroupWord w) {
    validate(g, w);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < w.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < w.size(); ++j) {
                if (w[j].vertex == w[i].vertex) {
                    w[i].exponent += w[j].exponent;
                    w.erase(w.begin() + static_cast<std::ptrdiff_t>(j));
                    if (w[i].exponent == 0)
                        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
                    changed = true;
                    break;
                }
                if (!g.has_edge(w[i].vertex, w[j].vertex)) break;
            }
        }
    }
    // lexicographically least linearization; movable syllables have distinct
    // vertices, so the greedy choice is unambiguous
    GroupWord out;
    out.reserve(w.size());
    while (!w.empty()) {
        std::size_t best = w.size();
        for (std::size_t i = 0; i < w.size(); ++i) {
            bool movable = true;
            for (std::size_t j = 0; j < i && movable; ++j)
                movable = g.has_edge(w[j].vertex, w[i].vertex);
            if (movable && (best == w.size() || w[i] < w[best])) best = i;
        }
        out.push_back(w[best]);
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return out;
}

bool raag_is_trivial(const SimplicialGraph& g, const GroupWord& w) {
    return raag_normal_form(g, w).empty();
}

GroupWord raag_multiply(const SimplicialGraph& g, const GroupWord& a, const GroupWord& b) {
    validate(g, a);
    validate(g, b);
    GroupWord prod = a;
    prod.insert(prod.end(), b.begin(), b.end());
    return raag_normal_form(g, prod);
}

GroupWord raag_invert(const SimplicialGraph& g, const GroupWord& w) {
    validate(g, w);
    GroupWord inv;
    inv.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        inv.push_back({it->vertex, -it->exponent});
    return raag_normal_form(g, inv);
}

GroupWord parse_group_word(const SimplicialGraph& g, const std::string& text) {
    std::istringstream in(text);
    GroupWord w;
    std::string token;
    while (in >> token) {
        auto caret = token.find('^');
        Vertex v;
        long long e = 1;
        if (caret == std::string::npos) {
            v = token;
        } else {
            v = token.substr(0, caret);
            std::string exp = token.substr(caret + 1);
            if (v.empty() || exp.empty())
                throw ParseError("malformed group-word token '" + token + "'");
            auto [ptr, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), e);
            if (ec != std::errc{} || ptr != exp.data() + exp.size())
                throw ParseError("malformed exponent in token '" + token + "'");
            if (e == 0) throw ParseError("zero exponent in token '" + token + "'");
        }
        w.push_back({std::move(v), e});
    }
    validate(g, w);
    return w;
}

std::string group_word_to_string(const GroupWord& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += w[i].vertex;
        if (w[i].exponent != 1) {
            out += '^';
            out += std::to_string(w[i].exponent);
        }
    }
    return out;
}

}  // namespace pincushion
