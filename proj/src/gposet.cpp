#include "strata/gposet.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace strata::poset {

namespace {

std::vector<bool> transitive_reflexive_closure(uint32_t m, std::vector<bool> rel) {
    for (uint32_t i = 0; i < m; ++i) rel[i * m + i] = true;
    for (uint32_t k = 0; k < m; ++k)
        for (uint32_t i = 0; i < m; ++i)
            if (rel[i * m + k])
                for (uint32_t j = 0; j < m; ++j)
                    if (rel[k * m + j]) rel[i * m + j] = true;
    return rel;
}

}  // namespace

uint32_t GPoset::act(uint32_t g, uint32_t x) const {
    uint32_t y = act_[g][x];
    if (y == npos) throw std::domain_error("group element does not act on this subposet");
    return y;
}

bool GPoset::act_defined(uint32_t g) const {
    for (uint32_t x = 0; x < m_; ++x)
        if (act_[g][x] == npos) return false;
    return true;
}

void GPoset::validate() const {
    const uint32_t m = m_;
    for (uint32_t i = 0; i < m; ++i)
        if (!leq(i, i)) throw std::invalid_argument("order relation is not reflexive at " + std::to_string(i));
    for (uint32_t i = 0; i < m; ++i)
        for (uint32_t j = 0; j < m; ++j)
            if (i != j && leq(i, j) && leq(j, i))
                throw std::invalid_argument("order relation is not antisymmetric on (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
    for (uint32_t i = 0; i < m; ++i)
        for (uint32_t j = 0; j < m; ++j)
            for (uint32_t k = 0; k < m; ++k)
                if (leq(i, j) && leq(j, k) && !leq(i, k))
                    throw std::invalid_argument("order relation is not transitive on (" + std::to_string(i) + "," +
                                                std::to_string(j) + "," + std::to_string(k) + ")");

    const grp::FiniteGroup& G = *group_;
    if (act_.size() != G.order()) throw std::invalid_argument("action table does not match the group order");
    for (const auto& row : act_)
        if (row.size() != m) throw std::invalid_argument("action table row width mismatch");

    // Identity acts as identity; composition matches the group table; the
    // action is by poset automorphisms.  Sentinel rows are skipped.
    for (uint32_t x = 0; x < m; ++x)
        if (act_[G.identity()][x] != x) throw std::invalid_argument("identity does not act trivially");
    for (uint32_t g = 0; g < G.order(); ++g) {
        if (!act_defined(g)) continue;
        for (uint32_t x = 0; x < m; ++x)
            if (act_[g][x] >= m) throw std::invalid_argument("action table entry out of range");
        for (uint32_t h = 0; h < G.order(); ++h) {
            if (!act_defined(h)) continue;
            uint32_t gh = G.mul(g, h);
            if (!act_defined(gh)) continue;
            for (uint32_t x = 0; x < m; ++x)
                if (act_[gh][x] != act_[g][act_[h][x]])
                    throw std::invalid_argument("action table is not a group action");
        }
        for (uint32_t x = 0; x < m; ++x)
            for (uint32_t y = 0; y < m; ++y)
                if (leq(x, y) && !leq(act_[g][x], act_[g][y]))
                    throw std::invalid_argument("action does not preserve the order relation");
    }
}

GPoset GPoset::from_covers(GroupPtr G, uint32_t m,
                           const std::vector<std::pair<uint32_t, uint32_t>>& covers,
                           std::vector<std::vector<uint32_t>> action) {
    std::vector<bool> rel(static_cast<std::size_t>(m) * m, false);
    for (auto [i, j] : covers) {
        if (i >= m || j >= m) throw std::invalid_argument("cover relation out of range");
        rel[i * m + j] = true;
    }
    GPoset p;
    p.m_ = m;
    p.leq_ = transitive_reflexive_closure(m, std::move(rel));
    p.group_ = std::move(G);
    p.act_ = std::move(action);
    p.validate();
    return p;
}

GPoset GPoset::from_relation(GroupPtr G, uint32_t m, std::vector<std::vector<bool>> leq,
                             std::vector<std::vector<uint32_t>> action) {
    std::vector<bool> rel(static_cast<std::size_t>(m) * m, false);
    if (leq.size() != m) throw std::invalid_argument("relation table size mismatch");
    for (uint32_t i = 0; i < m; ++i) {
        if (leq[i].size() != m) throw std::invalid_argument("relation table row width mismatch");
        for (uint32_t j = 0; j < m; ++j) rel[i * m + j] = leq[i][j];
    }
    // Closure is always recomputed and must agree with the input.
    std::vector<bool> closed = transitive_reflexive_closure(m, rel);
    for (uint32_t i = 0; i < m; ++i)
        for (uint32_t j = 0; j < m; ++j)
            if (closed[i * m + j] != rel[i * m + j])
                throw std::invalid_argument("relation is not transitively closed on (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
    GPoset p;
    p.m_ = m;
    p.leq_ = std::move(closed);
    p.group_ = std::move(G);
    p.act_ = std::move(action);
    p.validate();
    return p;
}

namespace {
std::vector<std::vector<uint32_t>> trivial_action(const grp::FiniteGroup& G, uint32_t m) {
    std::vector<uint32_t> row(m);
    for (uint32_t x = 0; x < m; ++x) row[x] = x;
    return std::vector<std::vector<uint32_t>>(G.order(), row);
}
}  // namespace

GPoset GPoset::point(GroupPtr G) { return discrete(std::move(G), 1); }

GPoset GPoset::chain(GroupPtr G, uint32_t n) {
    std::vector<std::pair<uint32_t, uint32_t>> covers;
    for (uint32_t i = 0; i + 1 < n; ++i) covers.push_back({i, i + 1});
    auto action = trivial_action(*G, n);
    return from_covers(std::move(G), n, covers, std::move(action));
}

GPoset GPoset::discrete(GroupPtr G, uint32_t n) {
    auto action = trivial_action(*G, n);
    return from_covers(std::move(G), n, {}, std::move(action));
}

GPoset GPoset::c2_swap(GroupPtr c2) {
    if (c2->order() != 2) throw std::invalid_argument("c2_swap needs a group of order 2");
    std::vector<std::vector<uint32_t>> action{{0, 1}, {1, 0}};
    if (c2->identity() != 0) std::swap(action[0], action[1]);
    return from_covers(std::move(c2), 2, {}, std::move(action));
}

uint32_t GPoset::dimension() const {
    std::vector<long long> counts = chain_counts(*this);
    uint32_t d = 0;
    for (uint32_t i = 0; i < counts.size(); ++i)
        if (counts[i] > 0) d = i;
    return d;
}

GPoset fixed_subposet(const GPoset& P, const grp::Subgroup& E) {
    const uint32_t m = P.size();
    std::vector<uint32_t> fixed;
    for (uint32_t x = 0; x < m; ++x) {
        bool ok = true;
        for (uint32_t g : E.elements)
            if (!P.act_defined(g) || P.act(g, x) != x) {
                ok = false;
                break;
            }
        if (ok) fixed.push_back(x);
    }
    const uint32_t k = static_cast<uint32_t>(fixed.size());
    std::vector<uint32_t> where(m, GPoset::npos);
    for (uint32_t i = 0; i < k; ++i) where[fixed[i]] = i;

    std::vector<std::vector<bool>> leq(k, std::vector<bool>(k, false));
    for (uint32_t i = 0; i < k; ++i)
        for (uint32_t j = 0; j < k; ++j) leq[i][j] = P.leq(fixed[i], fixed[j]);

    const grp::FiniteGroup& G = P.group();
    std::vector<std::vector<uint32_t>> action(G.order(), std::vector<uint32_t>(k, GPoset::npos));
    for (uint32_t g = 0; g < G.order(); ++g) {
        if (!P.act_defined(g)) continue;
        bool preserves = true;
        for (uint32_t i = 0; i < k && preserves; ++i) preserves = where[P.act(g, fixed[i])] != GPoset::npos;
        if (!preserves) continue;
        for (uint32_t i = 0; i < k; ++i) action[g][i] = where[P.act(g, fixed[i])];
    }
    return GPoset::from_relation(P.group_ptr(), k, std::move(leq), std::move(action));
}

std::vector<std::vector<uint32_t>> components(const GPoset& P) {
    const uint32_t m = P.size();
    std::vector<uint32_t> comp(m, GPoset::npos);
    uint32_t next = 0;
    for (uint32_t s = 0; s < m; ++s) {
        if (comp[s] != GPoset::npos) continue;
        comp[s] = next;
        std::vector<uint32_t> stack{s};
        while (!stack.empty()) {
            uint32_t x = stack.back();
            stack.pop_back();
            for (uint32_t y = 0; y < m; ++y)
                if ((P.leq(x, y) || P.leq(y, x)) && comp[y] == GPoset::npos) {
                    comp[y] = next;
                    stack.push_back(y);
                }
        }
        ++next;
    }
    std::vector<std::vector<uint32_t>> out(next);
    for (uint32_t x = 0; x < m; ++x) out[comp[x]].push_back(x);
    return out;
}

std::vector<long long> chain_counts(const GPoset& P) {
    const uint32_t m = P.size();
    std::vector<long long> out;
    std::vector<long long> f(m, 1);  // chains of length d ending at x
    while (true) {
        long long total = 0;
        for (uint32_t x = 0; x < m; ++x) total += f[x];
        if (total == 0) break;
        out.push_back(total);
        std::vector<long long> g(m, 0);
        for (uint32_t x = 0; x < m; ++x)
            for (uint32_t y = 0; y < m; ++y)
                if (P.less(y, x)) g[x] += f[y];
        f = std::move(g);
    }
    return out;
}

long long euler_characteristic(const GPoset& P) {
    std::vector<long long> counts = chain_counts(P);
    long long chi = 0;
    for (std::size_t d = 0; d < counts.size(); ++d) chi += (d % 2 == 0) ? counts[d] : -counts[d];
    return chi;
}

SubgroupPoset build_sp_poset(GroupPtr G, uint32_t p, SpVariant variant) {
    if (G->order() % p != 0) throw std::invalid_argument("prime does not divide the group order");

    std::vector<grp::Subgroup> objects;
    if (variant == SpVariant::AllP) {
        for (const grp::Subgroup& s : grp::p_subgroups(*G, p))
            if (s.order() > 1) objects.push_back(s);
    } else {
        for (const auto& ea : grp::elementary_abelian_subgroups(*G, p))
            if (ea.subgroup.order() > 1) objects.push_back(ea.subgroup);
    }
    const uint32_t m = static_cast<uint32_t>(objects.size());

    std::vector<std::vector<bool>> leq(m, std::vector<bool>(m, false));
    for (uint32_t i = 0; i < m; ++i)
        for (uint32_t j = 0; j < m; ++j)
            leq[i][j] = std::includes(objects[j].elements.begin(), objects[j].elements.end(),
                                      objects[i].elements.begin(), objects[i].elements.end());

    std::vector<std::vector<uint32_t>> action(G->order(), std::vector<uint32_t>(m));
    for (uint32_t g = 0; g < G->order(); ++g)
        for (uint32_t i = 0; i < m; ++i) {
            grp::Subgroup c = grp::conjugate_subgroup(*G, objects[i], g);
            auto it = std::find(objects.begin(), objects.end(), c);
            if (it == objects.end()) throw std::logic_error("conjugation left the subgroup poset");
            action[g][i] = static_cast<uint32_t>(it - objects.begin());
        }
    GPoset poset = GPoset::from_relation(G, m, std::move(leq), std::move(action));
    return {std::move(poset), std::move(objects)};
}

RestrictedPoset restrict_poset(const GPoset& P, const std::vector<uint32_t>& objects,
                               const grp::Subgroup& H) {
    const uint32_t k = static_cast<uint32_t>(objects.size());
    std::vector<uint32_t> where(P.size(), GPoset::npos);
    for (uint32_t i = 0; i < k; ++i) {
        if (objects[i] >= P.size()) throw std::invalid_argument("restriction object out of range");
        where[objects[i]] = i;
    }
    // Realize H as a group in its own right.
    const grp::FiniteGroup& G = P.group();
    const auto& elems = H.elements;
    std::vector<std::vector<uint32_t>> table(elems.size(), std::vector<uint32_t>(elems.size()));
    for (std::size_t a = 0; a < elems.size(); ++a)
        for (std::size_t b = 0; b < elems.size(); ++b) {
            uint32_t prod = G.mul(elems[a], elems[b]);
            auto it = std::lower_bound(elems.begin(), elems.end(), prod);
            if (it == elems.end() || *it != prod) throw std::invalid_argument("restriction subgroup is not closed");
            table[a][b] = static_cast<uint32_t>(it - elems.begin());
        }
    auto Hgrp = std::make_shared<grp::FiniteGroup>(grp::FiniteGroup::from_table(table));

    std::vector<std::vector<bool>> leq(k, std::vector<bool>(k, false));
    for (uint32_t i = 0; i < k; ++i)
        for (uint32_t j = 0; j < k; ++j) leq[i][j] = P.leq(objects[i], objects[j]);

    std::vector<std::vector<uint32_t>> action(elems.size(), std::vector<uint32_t>(k));
    for (std::size_t a = 0; a < elems.size(); ++a)
        for (uint32_t i = 0; i < k; ++i) {
            uint32_t img = where[P.act(elems[a], objects[i])];
            if (img == GPoset::npos) throw std::invalid_argument("subgroup does not preserve the object subset");
            action[a][i] = img;
        }
    RestrictedPoset r{GPoset::from_relation(std::move(Hgrp), k, std::move(leq), std::move(action)),
                      objects};
    return r;
}

}  // namespace strata::poset
