#include "pincushion/words.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace pincushion {

namespace {

std::vector<std::size_t> letter_indices(const SimplicialGraph& g, const Word& w) {
    std::vector<std::size_t> idx;
    idx.reserve(w.size());
    for (const auto& v : w) idx.push_back(g.index_of(v));
    return idx;
}

}  // namespace

bool is_reduced(const SimplicialGraph& g, const Word& w) {
    auto idx = letter_indices(g, w);
    const std::size_t n = idx.size();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t p = k + 1; p < n; ++p) {
            if (idx[p] == idx[k]) return false;  // every letter between was adjacent
            if (!g.has_edge(idx[k], idx[p])) break;
        }
    }
    return true;
}

Word reduce(const SimplicialGraph& g, Word w) {
    auto idx = letter_indices(g, w);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k < idx.size() && !changed; ++k) {
            for (std::size_t p = k + 1; p < idx.size(); ++p) {
                if (idx[p] == idx[k]) {
                    // shuffle the duplicate next to position k and delete it
                    idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(p));
                    w.erase(w.begin() + static_cast<std::ptrdiff_t>(p));
                    changed = true;
                    break;
                }
                if (!g.has_edge(idx[k], idx[p])) break;
            }
        }
    }
    return w;
}

Word normal_form(const SimplicialGraph& g, const Word& w) {
    Word u = reduce(g, w);
    auto idx = letter_indices(g, u);
    Word out;
    out.reserve(u.size());
    while (!u.empty()) {
        std::size_t best = u.size();
        for (std::size_t i = 0; i < u.size(); ++i) {
            bool movable = true;
            for (std::size_t j = 0; j < i && movable; ++j)
                movable = g.has_edge(idx[j], idx[i]);
            if (movable && (best == u.size() || u[i] < u[best])) best = i;
        }
        out.push_back(u[best]);
        u.erase(u.begin() + static_cast<std::ptrdiff_t>(best));
        idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return out;
}

bool equivalent(const SimplicialGraph& g, const Word& a, const Word& b) {
    return normal_form(g, a) == normal_form(g, b);
}

Permutation matching_permutation(const SimplicialGraph& g, const Word& from,
                                 const Word& to) {
    if (!is_reduced(g, from) || !is_reduced(g, to))
        throw std::invalid_argument("matching_permutation requires reduced words");
    if (!equivalent(g, from, to))
        throw std::invalid_argument("matching_permutation requires equivalent words");
    // Equal letters keep their relative order, so occurrences match up in order.
    Permutation sigma(to.size());
    for (std::size_t i = 0; i < to.size(); ++i) {
        std::size_t occurrence = 0;
        for (std::size_t j = 0; j < i; ++j)
            if (to[j] == to[i]) ++occurrence;
        std::size_t seen = 0;
        for (std::size_t p = 0; p < from.size(); ++p) {
            if (from[p] == to[i] && seen++ == occurrence) {
                sigma[i] = p;
                break;
            }
        }
    }
    return sigma;
}

std::set<Word> bfs_class(const SimplicialGraph& g, const Word& w, std::size_t cap) {
    if (cap < w.size())
        throw std::invalid_argument("bfs_class cap below the word length");
    letter_indices(g, w);  // validate letters
    std::set<Word> seen{w};
    std::deque<Word> queue{w};
    auto visit = [&](Word&& next) {
        if (seen.insert(next).second) queue.push_back(std::move(next));
    };
    while (!queue.empty()) {
        Word u = std::move(queue.front());
        queue.pop_front();
        for (std::size_t i = 0; i + 1 < u.size(); ++i) {
            if (u[i] == u[i + 1]) {
                Word v = u;
                v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
                visit(std::move(v));
            } else if (g.has_edge(u[i], u[i + 1])) {
                Word v = u;
                std::swap(v[i], v[i + 1]);
                visit(std::move(v));
            }
        }
        if (u.size() < cap) {
            for (std::size_t i = 0; i < u.size(); ++i) {
                Word v = u;
                v.insert(v.begin() + static_cast<std::ptrdiff_t>(i), u[i]);
                visit(std::move(v));
            }
        }
    }
    return seen;
}

Word parse_word(const SimplicialGraph& g, const std::string& text) {
    std::istringstream in(text);
    Word w;
    std::string token;
    while (in >> token) w.push_back(token);
    letter_indices(g, w);  // unknown letters are domain errors
    return w;
}

std::string word_to_string(const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += w[i];
    }
    return out;
}

}  // namespace pincushion
