#include "strata/group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace strata::grp {

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<uint32_t>>& mul) {
    FiniteGroup g;
    g.n_ = static_cast<uint32_t>(mul.size());
    if (g.n_ == 0) throw std::invalid_argument("empty multiplication table");
    g.mul_.resize(static_cast<std::size_t>(g.n_) * g.n_);
    for (uint32_t i = 0; i < g.n_; ++i) {
        if (mul[i].size() != g.n_) throw std::invalid_argument("multiplication table is not square");
        for (uint32_t j = 0; j < g.n_; ++j) {
            if (mul[i][j] >= g.n_) throw std::invalid_argument("multiplication table entry out of range");
            g.mul_[i * g.n_ + j] = mul[i][j];
        }
    }
    // Locate the two-sided identity.
    uint32_t e = g.n_;
    for (uint32_t c = 0; c < g.n_; ++c) {
        bool ok = true;
        for (uint32_t x = 0; x < g.n_ && ok; ++x) ok = g.mul(c, x) == x && g.mul(x, c) == x;
        if (ok) {
            e = c;
            break;
        }
    }
    if (e == g.n_) throw std::invalid_argument("multiplication table has no identity");
    g.e_ = e;
    g.inv_.assign(g.n_, g.n_);
    for (uint32_t a = 0; a < g.n_; ++a) {
        for (uint32_t b = 0; b < g.n_; ++b)
            if (g.mul(a, b) == e && g.mul(b, a) == e) {
                g.inv_[a] = b;
                break;
            }
        if (g.inv_[a] == g.n_) throw std::invalid_argument("multiplication table element has no inverse");
    }
    g.validate();
    return g;
}

void FiniteGroup::validate() const {
    for (uint32_t a = 0; a < n_; ++a)
        for (uint32_t b = 0; b < n_; ++b)
            for (uint32_t c = 0; c < n_; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw std::invalid_argument("multiplication table is not associative");
}

FiniteGroup FiniteGroup::from_perm_gens(const std::vector<std::vector<uint32_t>>& gens) {
    if (gens.empty()) return trivial();
    const std::size_t deg = gens[0].size();
    for (const auto& g : gens) {
        if (g.size() != deg) throw std::invalid_argument("permutation generators have mixed degrees");
        std::vector<bool> seen(deg, false);
        for (uint32_t v : g) {
            if (v >= deg || seen[v]) throw std::invalid_argument("generator is not a permutation");
            seen[v] = true;
        }
    }
    std::vector<uint32_t> id(deg);
    for (std::size_t i = 0; i < deg; ++i) id[i] = static_cast<uint32_t>(i);

    std::vector<std::vector<uint32_t>> elems{id};
    std::map<std::vector<uint32_t>, uint32_t> index{{id, 0}};
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto& g : gens) {
            std::vector<uint32_t> prod(deg);
            for (std::size_t t = 0; t < deg; ++t) prod[t] = g[elems[i][t]];
            if (!index.count(prod)) {
                index[prod] = static_cast<uint32_t>(elems.size());
                elems.push_back(prod);
                if (elems.size() > 4096) throw std::invalid_argument("permutation group too large");
            }
        }
    }
    const std::size_t n = elems.size();
    std::vector<std::vector<uint32_t>> table(n, std::vector<uint32_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            std::vector<uint32_t> prod(deg);
            for (std::size_t t = 0; t < deg; ++t) prod[t] = elems[a][elems[b][t]];
            table[a][b] = index.at(prod);
        }
    return from_table(table);
}

FiniteGroup FiniteGroup::trivial() { return from_table({{0}}); }

FiniteGroup FiniteGroup::cyclic(uint32_t n) {
    std::vector<std::vector<uint32_t>> table(n, std::vector<uint32_t>(n));
    for (uint32_t a = 0; a < n; ++a)
        for (uint32_t b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    return from_table(table);
}

FiniteGroup FiniteGroup::symmetric3() {
    return from_perm_gens({{1, 0, 2}, {1, 2, 0}});
}

FiniteGroup FiniteGroup::dihedral8() {
    // Symmetries of the square: a 4-cycle and a reflection.
    return from_perm_gens({{1, 2, 3, 0}, {1, 0, 3, 2}});
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
    const uint32_t n = a.order() * b.order();
    std::vector<std::vector<uint32_t>> table(n, std::vector<uint32_t>(n));
    auto idx = [&](uint32_t x, uint32_t y) { return x * b.order() + y; };
    for (uint32_t x1 = 0; x1 < a.order(); ++x1)
        for (uint32_t y1 = 0; y1 < b.order(); ++y1)
            for (uint32_t x2 = 0; x2 < a.order(); ++x2)
                for (uint32_t y2 = 0; y2 < b.order(); ++y2)
                    table[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
    return from_table(table);
}

uint32_t FiniteGroup::element_order(uint32_t a) const {
    uint32_t x = a, k = 1;
    while (x != e_) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

uint32_t FiniteGroup::pow(uint32_t a, uint32_t e) const {
    uint32_t r = e_;
    for (uint32_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

bool Subgroup::contains(uint32_t g) const {
    return std::binary_search(elements.begin(), elements.end(), g);
}

Subgroup closure(const FiniteGroup& G, std::vector<uint32_t> gens) {
    std::set<uint32_t> elems{G.identity()};
    std::vector<uint32_t> frontier{G.identity()};
    for (uint32_t g : gens)
        if (elems.insert(g).second) frontier.push_back(g);
    for (std::size_t i = 0; i < frontier.size(); ++i)
        for (uint32_t g : gens) {
            uint32_t x = G.mul(frontier[i], g);
            if (elems.insert(x).second) frontier.push_back(x);
            x = G.mul(g, frontier[i]);
            if (elems.insert(x).second) frontier.push_back(x);
        }
    Subgroup s;
    s.parent = &G;
    s.elements.assign(elems.begin(), elems.end());
    return s;
}

Subgroup conjugate_subgroup(const FiniteGroup& G, const Subgroup& S, uint32_t g) {
    Subgroup r;
    r.parent = &G;
    r.elements.reserve(S.elements.size());
    for (uint32_t h : S.elements) r.elements.push_back(G.conj(g, h));
    std::sort(r.elements.begin(), r.elements.end());
    return r;
}

bool is_subgroup(const FiniteGroup& G, const std::vector<uint32_t>& elems) {
    std::set<uint32_t> s(elems.begin(), elems.end());
    if (!s.count(G.identity())) return false;
    for (uint32_t a : elems)
        for (uint32_t b : elems)
            if (!s.count(G.mul(a, b))) return false;
    return true;
}

namespace {

bool is_p_power(uint32_t n, uint32_t p) {
    while (n % p == 0) n /= p;
    return n == 1;
}

}  // namespace

std::vector<Subgroup> p_subgroups(const FiniteGroup& G, uint32_t p) {
    std::vector<uint32_t> p_elements;  // elements of p-power order
    for (uint32_t g = 0; g < G.order(); ++g)
        if (is_p_power(G.element_order(g), p)) p_elements.push_back(g);

    std::set<std::vector<uint32_t>> seen;
    std::vector<Subgroup> out;
    Subgroup triv;
    triv.parent = &G;
    triv.elements = {G.identity()};
    seen.insert(triv.elements);
    out.push_back(triv);
    // Every p-subgroup is reached by adding one p-element at a time, because
    // intermediate subgroups of a p-group are again p-groups.
    for (std::size_t i = 0; i < out.size(); ++i) {
        Subgroup current = out[i];
        for (uint32_t x : p_elements) {
            if (current.contains(x)) continue;
            std::vector<uint32_t> gens = current.elements;
            gens.push_back(x);
            Subgroup c = closure(G, gens);
            if (!is_p_power(c.order(), p)) continue;
            if (seen.insert(c.elements).second) out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ElementaryAbelian> elementary_abelian_subgroups(const FiniteGroup& G, uint32_t p) {
    std::vector<ElementaryAbelian> out;
    for (const Subgroup& s : p_subgroups(G, p)) {
        bool elem_ab = true;
        for (uint32_t a : s.elements) {
            if (G.pow(a, p) != G.identity()) {
                elem_ab = false;
                break;
            }
            for (uint32_t b : s.elements)
                if (G.mul(a, b) != G.mul(b, a)) {
                    elem_ab = false;
                    break;
                }
            if (!elem_ab) break;
        }
        if (!elem_ab) continue;
        uint32_t rank = 0, n = s.order();
        while (n > 1) {
            n /= p;
            ++rank;
        }
        out.push_back({s, rank});
    }
    return out;
}

PairStabilizers pair_stabilizers(const FiniteGroup& G, const Subgroup& E,
                                 const std::vector<uint32_t>& C,
                                 const std::vector<std::vector<uint32_t>>& action) {
    if (action.size() != G.order()) throw std::invalid_argument("action table order mismatch");
    const std::size_t m = action.empty() ? 0 : action[0].size();
    std::set<uint32_t> cset(C.begin(), C.end());
    for (uint32_t x : C)
        if (x >= m) throw std::invalid_argument("pair component references objects outside the action domain");

    auto fixes_c = [&](uint32_t g) {
        for (uint32_t x : C)
            if (!cset.count(action[g][x])) return false;
        return true;
    };

    PairStabilizers r;
    r.normalizer.parent = &G;
    r.centralizer.parent = &G;
    for (uint32_t g = 0; g < G.order(); ++g) {
        if (!fixes_c(g)) continue;
        if (!(conjugate_subgroup(G, E, g) == E)) continue;
        r.normalizer.elements.push_back(g);
        bool central = true;
        for (uint32_t h : E.elements)
            if (G.conj(g, h) != h) {
                central = false;
                break;
            }
        if (central) r.centralizer.elements.push_back(g);
    }
    // Coset representatives of Z in N, smallest element per coset.
    std::set<uint32_t> covered;
    for (uint32_t g : r.normalizer.elements) {
        if (covered.count(g)) continue;
        r.weyl_reps.push_back(g);
        for (uint32_t z : r.centralizer.elements) covered.insert(G.mul(g, z));
    }
    if (r.normalizer.elements.size() != r.centralizer.elements.size() * r.weyl_reps.size())
        throw std::logic_error("stabilizer coset decomposition is inconsistent");
    return r;
}

}  // namespace strata::grp
