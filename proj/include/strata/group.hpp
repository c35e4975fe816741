#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace strata::grp {

/// Finite group given by its multiplication table.  Element indices are
/// 0..n-1; the table is validated on construction (associativity on all
/// triples, identity, inverses).
class FiniteGroup {
public:
    static FiniteGroup from_table(const std::vector<std::vector<uint32_t>>& mul);
    /// Close a set of permutation generators (of a common domain) into a
    /// multiplication table.  Element 0 is the identity.
    static FiniteGroup from_perm_gens(const std::vector<std::vector<uint32_t>>& gens);

    static FiniteGroup trivial();
    static FiniteGroup cyclic(uint32_t n);
    static FiniteGroup symmetric3();
    static FiniteGroup dihedral8();
    static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);

    uint32_t order() const { return n_; }
    uint32_t identity() const { return e_; }
    uint32_t mul(uint32_t a, uint32_t b) const { return mul_[a * n_ + b]; }
    uint32_t inv(uint32_t a) const { return inv_[a]; }
    uint32_t conj(uint32_t g, uint32_t a) const { return mul(mul(g, a), inv(g)); }
    uint32_t element_order(uint32_t a) const;
    uint32_t pow(uint32_t a, uint32_t e) const;

private:
    FiniteGroup() = default;
    void validate() const;

    uint32_t n_ = 0;
    uint32_t e_ = 0;
    std::vector<uint32_t> mul_;
    std::vector<uint32_t> inv_;
};

/// Subgroup as a sorted element set of a parent group.
struct Subgroup {
    const FiniteGroup* parent = nullptr;
    std::vector<uint32_t> elements;  // sorted, contains the identity

    uint32_t order() const { return static_cast<uint32_t>(elements.size()); }
    bool contains(uint32_t g) const;
    bool operator==(const Subgroup& o) const { return elements == o.elements; }
    bool operator<(const Subgroup& o) const { return elements < o.elements; }
};

Subgroup closure(const FiniteGroup& G, std::vector<uint32_t> gens);
Subgroup conjugate_subgroup(const FiniteGroup& G, const Subgroup& S, uint32_t g);
bool is_subgroup(const FiniteGroup& G, const std::vector<uint32_t>& elems);

/// All subgroups of p-power order (including the trivial one), by breadth
/// first closure over p-element extensions.
std::vector<Subgroup> p_subgroups(const FiniteGroup& G, uint32_t p);

struct ElementaryAbelian {
    Subgroup subgroup;
    uint32_t rank;  // |E| = p^rank
};

/// All elementary abelian p-subgroups, the trivial subgroup (rank 0)
/// included.  The list is closed under conjugation and sorted.
std::vector<ElementaryAbelian> elementary_abelian_subgroups(const FiniteGroup& G, uint32_t p);

/// Stabilizer data of a pair (E, C): N = {g : gEg^-1 = E and gC = C},
/// Z = {g in N : ghg^-1 = h for all h in E}, W = N/Z as coset representatives.
struct PairStabilizers {
    Subgroup normalizer;
    Subgroup centralizer;
    std::vector<uint32_t> weyl_reps;  // coset representatives of Z in N
};

/// `action` is the |G| x m table of a G-action on objects 0..m-1 and C a set
/// of object indices.  Throws when C references objects outside the action
/// domain.
PairStabilizers pair_stabilizers(const FiniteGroup& G, const Subgroup& E,
                                 const std::vector<uint32_t>& C,
                                 const std::vector<std::vector<uint32_t>>& action);

}  // namespace strata::grp
