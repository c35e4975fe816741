#include "strata/category.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace strata::cat {

namespace {

struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s += 0x9E3779B97f4A7C15ULL;
        uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

constexpr uint64_t kValidationSeed = 0x5717A;  // fixed, documented in the README
constexpr uint32_t kExhaustiveLimit = 200;     // morphism count for exhaustive triples

}  // namespace

FiniteCategory::FiniteCategory(uint32_t n_objects, std::vector<Morphism> morphisms,
                               std::vector<int32_t> comp_table, std::vector<uint32_t> identities)
    : n_obj_(n_objects), mor_(std::move(morphisms)), comp_(std::move(comp_table)), id_(std::move(identities)) {
    const std::size_t n = mor_.size();
    if (comp_.size() != n * n) throw std::invalid_argument("composition table size mismatch");
    if (id_.size() != n_obj_) throw std::invalid_argument("identity list size mismatch");
    hom_.assign(static_cast<std::size_t>(n_obj_) * n_obj_, {});
    for (uint32_t f = 0; f < n; ++f) {
        if (mor_[f].src >= n_obj_ || mor_[f].dst >= n_obj_) throw std::invalid_argument("morphism endpoint out of range");
        hom_[mor_[f].src * n_obj_ + mor_[f].dst].push_back(f);
    }
    validate();
    inverse_.assign(n, undefined);
    for (uint32_t f = 0; f < n; ++f) {
        if (inverse_[f] != undefined) continue;
        for (uint32_t g : hom(mor_[f].dst, mor_[f].src)) {
            if (compose(g, f) == static_cast<int32_t>(id_[mor_[f].src]) &&
                compose(f, g) == static_cast<int32_t>(id_[mor_[f].dst])) {
                inverse_[f] = static_cast<int32_t>(g);
                inverse_[g] = static_cast<int32_t>(f);
                break;
            }
        }
    }
}

void FiniteCategory::validate() const {
    const uint32_t n = morphisms();
    for (uint32_t x = 0; x < n_obj_; ++x) {
        uint32_t e = id_[x];
        if (e >= n || mor_[e].src != x || mor_[e].dst != x)
            throw std::invalid_argument("identity of object " + std::to_string(x) + " is not an endomorphism");
    }
    for (uint32_t g = 0; g < n; ++g)
        for (uint32_t f = 0; f < n; ++f) {
            int32_t c = compose(g, f);
            bool composable = mor_[f].dst == mor_[g].src;
            if (composable != (c != undefined))
                throw std::invalid_argument("composition defined on the wrong pairs");
            if (c != undefined) {
                if (mor_[c].src != mor_[f].src || mor_[c].dst != mor_[g].dst)
                    throw std::invalid_argument("composite has wrong endpoints");
            }
        }
    for (uint32_t f = 0; f < n; ++f) {
        if (compose(f, id_[mor_[f].src]) != static_cast<int32_t>(f) ||
            compose(id_[mor_[f].dst], f) != static_cast<int32_t>(f))
            throw std::invalid_argument("identity laws fail");
    }
    auto check_triple = [&](uint32_t h, uint32_t g, uint32_t f) {
        if (mor_[f].dst != mor_[g].src || mor_[g].dst != mor_[h].src) return;
        int32_t gf = compose(g, f);
        int32_t hg = compose(h, g);
        if (gf == undefined || hg == undefined || compose(h, static_cast<uint32_t>(gf)) != compose(static_cast<uint32_t>(hg), f))
            throw std::invalid_argument("composition is not associative");
    };
    if (n <= kExhaustiveLimit) {
        for (uint32_t h = 0; h < n; ++h)
            for (uint32_t g = 0; g < n; ++g)
                for (uint32_t f = 0; f < n; ++f) check_triple(h, g, f);
    } else {
        Rng rng(kValidationSeed);
        for (int t = 0; t < 200000; ++t)
            check_triple(static_cast<uint32_t>(rng.next() % n), static_cast<uint32_t>(rng.next() % n),
                         static_cast<uint32_t>(rng.next() % n));
    }
}

bool FiniteCategory::is_ei() const {
    for (uint32_t f = 0; f < morphisms(); ++f)
        if (mor_[f].src == mor_[f].dst && !is_iso(f)) return false;
    return true;
}

std::vector<std::vector<uint32_t>> FiniteCategory::iso_classes() const {
    std::vector<uint32_t> cls(n_obj_, n_obj_);
    uint32_t next = 0;
    for (uint32_t x = 0; x < n_obj_; ++x) {
        if (cls[x] != n_obj_) continue;
        cls[x] = next;
        for (uint32_t y = x + 1; y < n_obj_; ++y) {
            if (cls[y] != n_obj_) continue;
            for (uint32_t f : hom(x, y))
                if (is_iso(f)) {
                    cls[y] = next;
                    break;
                }
        }
        ++next;
    }
    std::vector<std::vector<uint32_t>> out(next);
    for (uint32_t x = 0; x < n_obj_; ++x) out[cls[x]].push_back(x);
    return out;
}

std::vector<std::vector<uint32_t>> FiniteCategory::object_components() const {
    std::vector<uint32_t> comp(n_obj_, n_obj_);
    uint32_t next = 0;
    for (uint32_t s = 0; s < n_obj_; ++s) {
        if (comp[s] != n_obj_) continue;
        comp[s] = next;
        std::vector<uint32_t> stack{s};
        while (!stack.empty()) {
            uint32_t x = stack.back();
            stack.pop_back();
            for (uint32_t y = 0; y < n_obj_; ++y) {
                if (comp[y] != n_obj_) continue;
                if (!hom(x, y).empty() || !hom(y, x).empty()) {
                    comp[y] = next;
                    stack.push_back(y);
                }
            }
        }
        ++next;
    }
    std::vector<std::vector<uint32_t>> out(next);
    for (uint32_t x = 0; x < n_obj_; ++x) out[comp[x]].push_back(x);
    return out;
}

void Functor::validate() const {
    const FiniteCategory& S = *source;
    const FiniteCategory& T = *target;
    if (obj_map.size() != S.objects() || mor_map.size() != S.morphisms())
        throw std::invalid_argument("functor map sizes mismatch");
    for (uint32_t f = 0; f < S.morphisms(); ++f) {
        if (T.src(mor_map[f]) != obj_map[S.src(f)] || T.dst(mor_map[f]) != obj_map[S.dst(f)])
            throw std::invalid_argument("functor does not preserve endpoints");
    }
    for (uint32_t x = 0; x < S.objects(); ++x)
        if (mor_map[S.identity(x)] != T.identity(obj_map[x]))
            throw std::invalid_argument("functor does not preserve identities");
    for (uint32_t g = 0; g < S.morphisms(); ++g)
        for (uint32_t f = 0; f < S.morphisms(); ++f) {
            int32_t c = S.compose(g, f);
            if (c == FiniteCategory::undefined) continue;
            if (T.compose(mor_map[g], mor_map[f]) != static_cast<int32_t>(mor_map[c]))
                throw std::invalid_argument("functor does not preserve composition");
        }
}

int32_t TransporterCategory::find(uint32_t g, uint32_t x, uint32_t y) const {
    for (uint32_t f : cat->hom(x, y))
        if (payload[f][0] == g) return static_cast<int32_t>(f);
    return -1;
}

TransporterCategory build_transporter(poset::GroupPtr G, std::shared_ptr<const poset::GPoset> P) {
    const uint32_t m = P->size();
    const uint32_t n = G->order();
    std::vector<Morphism> mors;
    std::vector<std::array<uint32_t, 3>> payload;
    std::map<std::array<uint32_t, 3>, uint32_t> index;
    for (uint32_t x = 0; x < m; ++x)
        for (uint32_t y = 0; y < m; ++y)
            for (uint32_t g = 0; g < n; ++g)
                if (P->leq(P->act(g, x), y)) {
                    index[{g, x, y}] = static_cast<uint32_t>(mors.size());
                    mors.push_back({x, y});
                    payload.push_back({g, x, y});
                }
    const std::size_t nm = mors.size();
    std::vector<int32_t> comp(nm * nm, FiniteCategory::undefined);
    for (uint32_t f = 0; f < nm; ++f)
        for (uint32_t g = 0; g < nm; ++g) {
            if (payload[f][2] != payload[g][1]) continue;  // dst(f) == src(g)
            uint32_t hg = G->mul(payload[g][0], payload[f][0]);
            auto it = index.find({hg, payload[f][1], payload[g][2]});
            if (it == index.end()) throw std::logic_error("transporter composition left the morphism set");
            comp[static_cast<std::size_t>(g) * nm + f] = static_cast<int32_t>(it->second);
        }
    std::vector<uint32_t> ids(m);
    for (uint32_t x = 0; x < m; ++x) {
        auto it = index.find({G->identity(), x, x});
        if (it == index.end()) throw std::logic_error("transporter category lacks an identity");
        ids[x] = it->second;
    }
    TransporterCategory t;
    t.cat = std::make_shared<FiniteCategory>(m, std::move(mors), std::move(comp), std::move(ids));
    t.group = std::move(G);
    t.poset = std::move(P);
    t.payload = std::move(payload);

    // EI property: every endomorphism is an isomorphism.
    if (!t.cat->is_ei()) throw std::logic_error("transporter category is not EI");
    // Aut(x) is the isotropy group of x.
    for (uint32_t x = 0; x < m; ++x) {
        std::size_t isotropy = 0;
        for (uint32_t g = 0; g < t.group->order(); ++g)
            if (t.poset->act(g, x) == x) ++isotropy;
        if (t.cat->hom(x, x).size() != isotropy) throw std::logic_error("Aut(x) is not the isotropy group");
    }
    // Free actions of Aut(dst) and Aut(src) on nonempty hom sets.
    for (uint32_t x = 0; x < m; ++x)
        for (uint32_t y = 0; y < m; ++y) {
            const auto& hom = t.cat->hom(x, y);
            if (hom.empty()) continue;
            for (uint32_t a : t.cat->hom(y, y))
                for (uint32_t f : hom)
                    if (!t.cat->is_identity(a) && t.cat->compose(a, f) == static_cast<int32_t>(f))
                        throw std::logic_error("Aut(y) does not act freely on Hom(x,y)");
            for (uint32_t a : t.cat->hom(x, x))
                for (uint32_t f : hom)
                    if (!t.cat->is_identity(a) && t.cat->compose(f, a) == static_cast<int32_t>(f))
                        throw std::logic_error("Aut(x) does not act freely on Hom(x,y)");
        }
    return t;
}

FiniteCategory group_as_category(const grp::FiniteGroup& G) {
    const uint32_t n = G.order();
    std::vector<Morphism> mors(n, Morphism{0, 0});
    std::vector<int32_t> comp(static_cast<std::size_t>(n) * n);
    for (uint32_t g = 0; g < n; ++g)
        for (uint32_t f = 0; f < n; ++f) comp[static_cast<std::size_t>(g) * n + f] = static_cast<int32_t>(G.mul(g, f));
    return FiniteCategory(1, std::move(mors), std::move(comp), {G.identity()});
}

FiniteCategory poset_as_category(const poset::GPoset& P) {
    const uint32_t m = P.size();
    std::vector<Morphism> mors;
    std::vector<std::vector<int32_t>> at(m, std::vector<int32_t>(m, -1));
    for (uint32_t x = 0; x < m; ++x)
        for (uint32_t y = 0; y < m; ++y)
            if (P.leq(x, y)) {
                at[x][y] = static_cast<int32_t>(mors.size());
                mors.push_back({x, y});
            }
    const std::size_t nm = mors.size();
    std::vector<int32_t> comp(nm * nm, FiniteCategory::undefined);
    for (uint32_t f = 0; f < nm; ++f)
        for (uint32_t g = 0; g < nm; ++g)
            if (mors[f].dst == mors[g].src)
                comp[static_cast<std::size_t>(g) * nm + f] = at[mors[f].src][mors[g].dst];
    std::vector<uint32_t> ids(m);
    for (uint32_t x = 0; x < m; ++x) ids[x] = static_cast<uint32_t>(at[x][x]);
    return FiniteCategory(m, std::move(mors), std::move(comp), std::move(ids));
}

ProductCategory product_category(const FiniteCategory& a, const FiniteCategory& b) {
    const uint32_t na = a.morphisms(), nb = b.morphisms();
    const uint32_t n = na * nb;
    std::vector<Morphism> mors(n);
    for (uint32_t f1 = 0; f1 < na; ++f1)
        for (uint32_t f2 = 0; f2 < nb; ++f2)
            mors[f1 * nb + f2] = {a.src(f1) * b.objects() + b.src(f2), a.dst(f1) * b.objects() + b.dst(f2)};
    std::vector<int32_t> comp(static_cast<std::size_t>(n) * n, FiniteCategory::undefined);
    for (uint32_t g1 = 0; g1 < na; ++g1)
        for (uint32_t g2 = 0; g2 < nb; ++g2)
            for (uint32_t f1 = 0; f1 < na; ++f1)
                for (uint32_t f2 = 0; f2 < nb; ++f2) {
                    int32_t c1 = a.compose(g1, f1);
                    int32_t c2 = b.compose(g2, f2);
                    if (c1 == FiniteCategory::undefined || c2 == FiniteCategory::undefined) continue;
                    comp[static_cast<std::size_t>(g1 * nb + g2) * n + (f1 * nb + f2)] =
                        static_cast<int32_t>(static_cast<uint32_t>(c1) * nb + static_cast<uint32_t>(c2));
                }
    std::vector<uint32_t> ids(a.objects() * b.objects());
    for (uint32_t x1 = 0; x1 < a.objects(); ++x1)
        for (uint32_t x2 = 0; x2 < b.objects(); ++x2)
            ids[x1 * b.objects() + x2] = a.identity(x1) * nb + b.identity(x2);
    ProductCategory out{FiniteCategory(a.objects() * b.objects(), std::move(mors), std::move(comp), std::move(ids)),
                        nb, b.objects()};
    return out;
}

FiniteCategory opposite_category(const FiniteCategory& c) {
    const uint32_t n = c.morphisms();
    std::vector<Morphism> mors(n);
    for (uint32_t f = 0; f < n; ++f) mors[f] = {c.dst(f), c.src(f)};
    std::vector<int32_t> comp(static_cast<std::size_t>(n) * n, FiniteCategory::undefined);
    for (uint32_t g = 0; g < n; ++g)
        for (uint32_t f = 0; f < n; ++f) comp[static_cast<std::size_t>(g) * n + f] = c.compose(f, g);
    std::vector<uint32_t> ids(c.objects());
    for (uint32_t x = 0; x < c.objects(); ++x) ids[x] = c.identity(x);
    return FiniteCategory(c.objects(), std::move(mors), std::move(comp), std::move(ids));
}

FiniteCategory factorization_category(const FiniteCategory& c, std::size_t ceiling) {
    const uint32_t n = c.morphisms();
    // Objects are the morphisms of C; a morphism [a] -> [b] is (mu, gamma)
    // with b = mu a gamma.
    struct FMor {
        uint32_t from, to, mu, gamma;
    };
    std::vector<FMor> fms;
    std::map<std::array<uint32_t, 4>, uint32_t> index;
    for (uint32_t alpha = 0; alpha < n; ++alpha)
        for (uint32_t gamma = 0; gamma < n; ++gamma) {
            int32_t ag = c.compose(alpha, gamma);
            if (ag == FiniteCategory::undefined) continue;
            for (uint32_t mu = 0; mu < n; ++mu) {
                int32_t beta = c.compose(mu, static_cast<uint32_t>(ag));
                if (beta == FiniteCategory::undefined) continue;
                index[{alpha, static_cast<uint32_t>(beta), mu, gamma}] = static_cast<uint32_t>(fms.size());
                fms.push_back({alpha, static_cast<uint32_t>(beta), mu, gamma});
                if (ceiling && fms.size() > ceiling)
                    throw std::runtime_error("factorization category exceeds the configured ceiling");
            }
        }
    const std::size_t nm = fms.size();
    std::vector<Morphism> mors(nm);
    for (std::size_t i = 0; i < nm; ++i) mors[i] = {fms[i].from, fms[i].to};
    std::vector<int32_t> comp(nm * nm, FiniteCategory::undefined);
    for (uint32_t f = 0; f < nm; ++f)
        for (uint32_t g = 0; g < nm; ++g) {
            if (fms[f].to != fms[g].from) continue;
            // (mu', gamma') o (mu, gamma) = (mu' mu, gamma gamma')
            int32_t mu = c.compose(fms[g].mu, fms[f].mu);
            int32_t gamma = c.compose(fms[f].gamma, fms[g].gamma);
            if (mu == FiniteCategory::undefined || gamma == FiniteCategory::undefined)
                throw std::logic_error("factorization composition mismatch");
            auto it = index.find({fms[f].from, fms[g].to, static_cast<uint32_t>(mu), static_cast<uint32_t>(gamma)});
            if (it == index.end()) throw std::logic_error("factorization composite missing");
            comp[static_cast<std::size_t>(g) * nm + f] = static_cast<int32_t>(it->second);
        }
    std::vector<uint32_t> ids(n);
    for (uint32_t alpha = 0; alpha < n; ++alpha) {
        auto it = index.find({alpha, alpha, c.identity(c.dst(alpha)), c.identity(c.src(alpha))});
        if (it == index.end()) throw std::logic_error("factorization identity missing");
        ids[alpha] = it->second;
    }
    return FiniteCategory(n, std::move(mors), std::move(comp), std::move(ids));
}

FiniteCategory enveloping_category(const FiniteCategory& c, std::size_t ceiling) {
    if (ceiling && static_cast<std::size_t>(c.morphisms()) * c.morphisms() > ceiling)
        throw std::runtime_error("enveloping category exceeds the configured ceiling");
    return product_category(c, opposite_category(c)).cat;
}

FullSubcategory full_subcategory(const FiniteCategory& c, const std::vector<uint32_t>& objects) {
    std::vector<uint32_t> owhere(c.objects(), c.objects());
    for (uint32_t i = 0; i < objects.size(); ++i) {
        if (objects[i] >= c.objects()) throw std::invalid_argument("subcategory object out of range");
        owhere[objects[i]] = i;
    }
    std::vector<uint32_t> keep;
    std::vector<uint32_t> mwhere(c.morphisms(), c.morphisms());
    for (uint32_t f = 0; f < c.morphisms(); ++f)
        if (owhere[c.src(f)] != c.objects() && owhere[c.dst(f)] != c.objects()) {
            mwhere[f] = static_cast<uint32_t>(keep.size());
            keep.push_back(f);
        }
    const std::size_t nm = keep.size();
    std::vector<Morphism> mors(nm);
    for (std::size_t i = 0; i < nm; ++i) mors[i] = {owhere[c.src(keep[i])], owhere[c.dst(keep[i])]};
    std::vector<int32_t> comp(nm * nm, FiniteCategory::undefined);
    for (uint32_t f = 0; f < nm; ++f)
        for (uint32_t g = 0; g < nm; ++g) {
            int32_t cc = c.compose(keep[g], keep[f]);
            if (cc == FiniteCategory::undefined) continue;
            comp[static_cast<std::size_t>(g) * nm + f] = static_cast<int32_t>(mwhere[static_cast<uint32_t>(cc)]);
        }
    std::vector<uint32_t> ids(objects.size());
    for (uint32_t i = 0; i < objects.size(); ++i) ids[i] = mwhere[c.identity(objects[i])];
    FullSubcategory out{FiniteCategory(static_cast<uint32_t>(objects.size()), std::move(mors), std::move(comp), std::move(ids)),
                        objects, std::move(keep)};
    return out;
}

poset::GPoset product_poset(const poset::GPoset& a, const poset::GPoset& b) {
    using grp::FiniteGroup;
    auto prod = std::make_shared<FiniteGroup>(FiniteGroup::product(a.group(), b.group()));
    const uint32_t m = a.size() * b.size();
    std::vector<std::vector<bool>> leq(m, std::vector<bool>(m, false));
    for (uint32_t x1 = 0; x1 < a.size(); ++x1)
        for (uint32_t x2 = 0; x2 < b.size(); ++x2)
            for (uint32_t y1 = 0; y1 < a.size(); ++y1)
                for (uint32_t y2 = 0; y2 < b.size(); ++y2)
                    leq[x1 * b.size() + x2][y1 * b.size() + y2] = a.leq(x1, y1) && b.leq(x2, y2);
    std::vector<std::vector<uint32_t>> action(prod->order(), std::vector<uint32_t>(m));
    for (uint32_t g1 = 0; g1 < a.group().order(); ++g1)
        for (uint32_t g2 = 0; g2 < b.group().order(); ++g2)
            for (uint32_t x1 = 0; x1 < a.size(); ++x1)
                for (uint32_t x2 = 0; x2 < b.size(); ++x2)
                    action[g1 * b.group().order() + g2][x1 * b.size() + x2] =
                        a.act(g1, x1) * b.size() + b.act(g2, x2);
    return poset::GPoset::from_relation(std::move(prod), m, std::move(leq), std::move(action));
}

}  // namespace strata::cat
