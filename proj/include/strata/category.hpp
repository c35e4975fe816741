#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "strata/gposet.hpp"
#include "strata/group.hpp"

namespace strata::cat {

struct Morphism {
    uint32_t src, dst;
};

/// Finite category: objects 0..n-1, a morphism list, and a composition table.
/// comp(g, f) = g after f, defined exactly when dst(f) = src(g).  Identity
/// and associativity laws are validated at construction (exhaustively for
/// small categories, on a fixed-seed sample beyond that).
class FiniteCategory {
public:
    static constexpr int32_t undefined = -1;

    FiniteCategory(uint32_t n_objects, std::vector<Morphism> morphisms,
                   std::vector<int32_t> comp_table, std::vector<uint32_t> identities);

    uint32_t objects() const { return n_obj_; }
    uint32_t morphisms() const { return static_cast<uint32_t>(mor_.size()); }
    const Morphism& mor(uint32_t f) const { return mor_[f]; }
    uint32_t src(uint32_t f) const { return mor_[f].src; }
    uint32_t dst(uint32_t f) const { return mor_[f].dst; }
    uint32_t identity(uint32_t x) const { return id_[x]; }
    bool is_identity(uint32_t f) const { return id_[mor_[f].src] == f && mor_[f].src == mor_[f].dst; }

    /// g after f, or `undefined`.
    int32_t compose(uint32_t g, uint32_t f) const { return comp_[static_cast<std::size_t>(g) * mor_.size() + f]; }

    const std::vector<uint32_t>& hom(uint32_t x, uint32_t y) const { return hom_[x * n_obj_ + y]; }

    bool is_iso(uint32_t f) const { return inverse_[f] != undefined; }
    int32_t inverse(uint32_t f) const { return inverse_[f]; }

    /// Every endomorphism is an isomorphism.
    bool is_ei() const;

    /// Partition of objects into isomorphism classes (by genuine two-sided
    /// inverses), each sorted, ordered by smallest member.
    std::vector<std::vector<uint32_t>> iso_classes() const;

    /// Connected components of the underlying object graph.
    std::vector<std::vector<uint32_t>> object_components() const;
    bool is_connected() const { return object_components().size() <= 1; }

private:
    void validate() const;

    uint32_t n_obj_;
    std::vector<Morphism> mor_;
    std::vector<int32_t> comp_;
    std::vector<uint32_t> id_;
    std::vector<std::vector<uint32_t>> hom_;
    std::vector<int32_t> inverse_;
};

using CategoryPtr = std::shared_ptr<const FiniteCategory>;

/// Functor between finite categories as explicit object and morphism maps;
/// validated: preserves sources, targets, identities and composition.
struct Functor {
    CategoryPtr source;
    CategoryPtr target;
    std::vector<uint32_t> obj_map;
    std::vector<uint32_t> mor_map;

    void validate() const;
};

/// Transporter category G x| P: objects of P, morphisms (g, x, y) with
/// g.x <= y.  The EI property and the free Aut-actions on hom sets are
/// verified during construction.
struct TransporterCategory {
    CategoryPtr cat;
    poset::GroupPtr group;
    std::shared_ptr<const poset::GPoset> poset;
    std::vector<std::array<uint32_t, 3>> payload;  // (g, x, y) per morphism

    /// Morphism index of (g, x, y), or -1.
    int32_t find(uint32_t g, uint32_t x, uint32_t y) const;
};

TransporterCategory build_transporter(poset::GroupPtr G, std::shared_ptr<const poset::GPoset> P);

/// A group as a one-object category; morphism ids equal element indices.
FiniteCategory group_as_category(const grp::FiniteGroup& G);
/// A poset as a category; one morphism per related pair.
FiniteCategory poset_as_category(const poset::GPoset& P);

struct ProductCategory {
    FiniteCategory cat;
    // Index helpers: morphism (f1, f2) <-> f1 * n2 + f2, objects likewise.
    uint32_t mor_index(uint32_t f1, uint32_t f2) const { return f1 * n2_mor + f2; }
    uint32_t obj_index(uint32_t x1, uint32_t x2) const { return x1 * n2_obj + x2; }
    uint32_t n2_mor, n2_obj;
};

ProductCategory product_category(const FiniteCategory& a, const FiniteCategory& b);
FiniteCategory opposite_category(const FiniteCategory& c);

/// Category of factorizations F(C): objects are the morphisms of C, a
/// morphism [a] -> [b] is a pair (mu, gamma) with b = mu a gamma.
/// `ceiling` bounds the morphism count of the result.
FiniteCategory factorization_category(const FiniteCategory& c, std::size_t ceiling = 0);

/// C^e = C x C^op.
FiniteCategory enveloping_category(const FiniteCategory& c, std::size_t ceiling = 0);

/// Full subcategory on an object subset, with the inclusion data.
struct FullSubcategory {
    FiniteCategory cat;
    std::vector<uint32_t> obj_map;  // new object -> original object
    std::vector<uint32_t> mor_map;  // new morphism -> original morphism
};
FullSubcategory full_subcategory(const FiniteCategory& c, const std::vector<uint32_t>& objects);

/// Product of G-posets as a poset over the product group (index convention
/// (g1, g2) -> g1 * |G2| + g2, (x1, x2) -> x1 * |P2| + x2).
poset::GPoset product_poset(const poset::GPoset& a, const poset::GPoset& b);

}  // namespace strata::cat
