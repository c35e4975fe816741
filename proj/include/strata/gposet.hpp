#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "strata/group.hpp"

namespace strata::poset {

using GroupPtr = std::shared_ptr<const grp::FiniteGroup>;

/// Finite poset with a compatible group action.  The order relation is kept
/// as the full reflexive-transitive closure; the action table maps (g, x) to
/// g.x and acts by poset automorphisms.  Rows of the action table may carry
/// the sentinel `npos` (only produced by fixed_subposet): using such an
/// element throws.
class GPoset {
public:
    static constexpr uint32_t npos = 0xFFFFFFFF;

    /// From cover relations; the closure is computed, then validated.
    static GPoset from_covers(GroupPtr G, uint32_t m,
                              const std::vector<std::pair<uint32_t, uint32_t>>& covers,
                              std::vector<std::vector<uint32_t>> action);
    /// From a full relation; closure is recomputed and must match.
    static GPoset from_relation(GroupPtr G, uint32_t m, std::vector<std::vector<bool>> leq,
                                std::vector<std::vector<uint32_t>> action);

    static GPoset point(GroupPtr G);
    static GPoset chain(GroupPtr G, uint32_t n);     // 0 < 1 < ... < n-1, trivial action
    static GPoset discrete(GroupPtr G, uint32_t n);  // n incomparable points, trivial action
    /// Two incomparable points swapped by the non-identity element of C_2.
    static GPoset c2_swap(GroupPtr c2);

    uint32_t size() const { return m_; }
    const grp::FiniteGroup& group() const { return *group_; }
    GroupPtr group_ptr() const { return group_; }
    bool leq(uint32_t x, uint32_t y) const { return leq_[x * m_ + y]; }
    bool less(uint32_t x, uint32_t y) const { return x != y && leq(x, y); }
    uint32_t act(uint32_t g, uint32_t x) const;
    bool act_defined(uint32_t g) const;

    /// Longest strict chain length (a single point has dimension 0).
    uint32_t dimension() const;

    const std::vector<std::vector<uint32_t>>& action_table() const { return act_; }

private:
    GPoset() = default;
    void validate() const;

    uint32_t m_ = 0;
    std::vector<bool> leq_;
    GroupPtr group_;
    std::vector<std::vector<uint32_t>> act_;
};

/// Subposet of the points fixed by every element of E, with induced order.
/// The action table keeps exactly the group elements that preserve the fixed
/// set; other rows are sentinel-filled.
GPoset fixed_subposet(const GPoset& P, const grp::Subgroup& E);

/// Object sets of the connected components of the comparability graph,
/// each sorted, ordered by smallest member.
std::vector<std::vector<uint32_t>> components(const GPoset& P);

/// Euler characteristic of the order complex: alternating sum of strict chain
/// counts.
long long euler_characteristic(const GPoset& P);

/// Number of strict chains x_0 < ... < x_d per dimension d.
std::vector<long long> chain_counts(const GPoset& P);

enum class SpVariant { AllP, Elementary };

struct SubgroupPoset {
    GPoset poset;
    std::vector<grp::Subgroup> objects;  // object i is this subgroup
};

/// The G-poset of non-identity p-subgroups (or non-identity elementary
/// abelian p-subgroups) ordered by inclusion with conjugation action.
/// Rejects primes not dividing |G|.
SubgroupPoset build_sp_poset(GroupPtr G, uint32_t p, SpVariant variant);

/// Restriction of the ambient structure to an object subset and an acting
/// subgroup (which must preserve the subset).  Returns the poset over the
/// subgroup realized as a group in its own right, together with the object
/// relabeling old -> new.
struct RestrictedPoset {
    GPoset poset;
    std::vector<uint32_t> object_map;  // new index -> original object
};
RestrictedPoset restrict_poset(const GPoset& P, const std::vector<uint32_t>& objects,
                               const grp::Subgroup& H);

}  // namespace strata::poset
