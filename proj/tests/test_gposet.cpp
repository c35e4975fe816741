#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "strata/gposet.hpp"

using namespace strata::poset;
using strata::grp::FiniteGroup;
using strata::grp::Subgroup;

namespace {
GroupPtr make(FiniteGroup g) { return std::make_shared<FiniteGroup>(std::move(g)); }
}  // namespace

TEST_CASE("euler characteristic of basic posets") {
    auto triv = make(FiniteGroup::trivial());
    CHECK(euler_characteristic(GPoset::point(triv)) == 1);
    // Chain x < y: 2 vertices - 1 edge, counted by hand.
    CHECK(euler_characteristic(GPoset::chain(triv, 2)) == 1);
    CHECK(euler_characteristic(GPoset::discrete(triv, 3)) == 3);
}

TEST_CASE("dimension is the longest strict chain") {
    auto triv = make(FiniteGroup::trivial());
    CHECK(GPoset::point(triv).dimension() == 0);
    CHECK(GPoset::chain(triv, 2).dimension() == 1);
    CHECK(GPoset::chain(triv, 4).dimension() == 3);
    CHECK(GPoset::discrete(triv, 5).dimension() == 0);
}

TEST_CASE("components") {
    auto triv = make(FiniteGroup::trivial());
    CHECK(components(GPoset::chain(triv, 2)).size() == 1);
    CHECK(components(GPoset::discrete(triv, 3)).size() == 3);
    // Disjoint union of a chain and a point via covers.
    GPoset p = GPoset::from_covers(triv, 3, {{0, 1}}, {{0, 1, 2}});
    CHECK(components(p).size() == 2);
}

TEST_CASE("fixed subposet under trivial and full actions") {
    auto c2 = make(FiniteGroup::cyclic(2));
    GPoset chain = GPoset::chain(c2, 2);  // trivial action
    Subgroup whole{nullptr, {0, 1}};
    GPoset fixed = fixed_subposet(chain, whole);
    CHECK(fixed.size() == 2);
    CHECK(fixed.leq(0, 1));

    Subgroup trivial_sub{nullptr, {0}};
    CHECK(fixed_subposet(chain, trivial_sub).size() == 2);

    GPoset swap = GPoset::c2_swap(c2);
    GPoset swap_fixed = fixed_subposet(swap, whole);
    CHECK(swap_fixed.size() == 0);
}

TEST_CASE("fixed subposet of the conjugation action on S_2(S_3)") {
    auto s3 = make(FiniteGroup::symmetric3());
    SubgroupPoset sp = build_sp_poset(s3, 2, SpVariant::AllP);
    REQUIRE(sp.poset.size() == 3);  // three C_2 subgroups, discrete
    CHECK(sp.poset.dimension() == 0);
    // Fixing by one involution leaves exactly its own subgroup: t1 t2 t1 = t3
    // by table lookup, so the other two objects move.
    GPoset fx = fixed_subposet(sp.poset, sp.objects[0]);
    CHECK(fx.size() == 1);
}

TEST_CASE("monotonicity of fixed subposets") {
    auto d8 = make(FiniteGroup::dihedral8());
    SubgroupPoset sp = build_sp_poset(d8, 2, SpVariant::AllP);
    auto eas = strata::grp::elementary_abelian_subgroups(*d8, 2);
    for (const auto& small : eas)
        for (const auto& big : eas) {
            if (!std::includes(big.subgroup.elements.begin(), big.subgroup.elements.end(),
                               small.subgroup.elements.begin(), small.subgroup.elements.end()))
                continue;
            // P^big is contained in P^small.
            GPoset fs = fixed_subposet(sp.poset, small.subgroup);
            GPoset fb = fixed_subposet(sp.poset, big.subgroup);
            CHECK(fb.size() <= fs.size());
        }
}

TEST_CASE("sp poset examples and the Brown congruence") {
    auto s3 = make(FiniteGroup::symmetric3());
    SubgroupPoset sp2 = build_sp_poset(s3, 2, SpVariant::AllP);
    CHECK(sp2.poset.size() == 3);
    // Conjugation is transitive on the three involutions.
    bool transitive = false;
    for (uint32_t g = 0; g < 6; ++g)
        if (sp2.poset.act(g, 0) == 1) transitive = true;
    CHECK(transitive);

    SubgroupPoset sp3 = build_sp_poset(s3, 3, SpVariant::AllP);
    CHECK(sp3.poset.size() == 1);
    CHECK(euler_characteristic(sp3.poset) % 3 == 1 % 3);

    auto c2 = make(FiniteGroup::cyclic(2));
    CHECK(build_sp_poset(c2, 2, SpVariant::AllP).poset.size() == 1);

    CHECK_THROWS_AS(build_sp_poset(s3, 5, SpVariant::AllP), std::invalid_argument);

    // Brown congruence chi(S_p(G)) = 1 mod p over the catalog groups.
    auto v4 = make(FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
    auto d8 = make(FiniteGroup::dihedral8());
    CHECK((euler_characteristic(build_sp_poset(s3, 2, SpVariant::AllP).poset) - 1) % 2 == 0);
    CHECK((euler_characteristic(build_sp_poset(s3, 3, SpVariant::AllP).poset) - 1) % 3 == 0);
    CHECK((euler_characteristic(build_sp_poset(v4, 2, SpVariant::AllP).poset) - 1) % 2 == 0);
    CHECK((euler_characteristic(build_sp_poset(d8, 2, SpVariant::AllP).poset) - 1) % 2 == 0);
}

TEST_CASE("elementary variant differs from all-p on D_8") {
    auto d8 = make(FiniteGroup::dihedral8());
    SubgroupPoset all = build_sp_poset(d8, 2, SpVariant::AllP);
    SubgroupPoset elem = build_sp_poset(d8, 2, SpVariant::Elementary);
    CHECK(all.poset.size() == 9);   // 5 C_2, 2 V_4, C_4, D_8
    CHECK(elem.poset.size() == 7);  // 5 C_2, 2 V_4
}

TEST_CASE("from_relation rejects non-transitive input naming the triple") {
    auto triv = make(FiniteGroup::trivial());
    std::vector<std::vector<bool>> rel{{true, true, false}, {false, true, true}, {false, false, true}};
    try {
        GPoset::from_relation(triv, 3, rel, {{0, 1, 2}});
        CHECK(false);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("transitive") != std::string::npos);
    }
}

TEST_CASE("action must preserve the order") {
    auto c2 = make(FiniteGroup::cyclic(2));
    // Swap on a chain x < y does not preserve the order.
    CHECK_THROWS_AS(GPoset::from_covers(c2, 2, {{0, 1}}, {{0, 1}, {1, 0}}), std::invalid_argument);
}

TEST_CASE("restrict_poset produces a poset over the subgroup") {
    auto s3 = make(FiniteGroup::symmetric3());
    SubgroupPoset sp = build_sp_poset(s3, 2, SpVariant::AllP);
    // Restrict to one object with its stabilizer.
    auto eas = strata::grp::elementary_abelian_subgroups(*s3, 2);
    Subgroup t1;
    for (const auto& ea : eas)
        if (ea.rank == 1) {
            t1 = ea.subgroup;
            break;
        }
    uint32_t obj = 0;
    for (uint32_t i = 0; i < sp.objects.size(); ++i)
        if (sp.objects[i] == t1) obj = i;
    RestrictedPoset r = restrict_poset(sp.poset, {obj}, t1);
    CHECK(r.poset.size() == 1);
    CHECK(r.poset.group().order() == 2);
}
