#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "strata/module.hpp"

using namespace strata;
using namespace strata::rep;
using strata::cat::build_transporter;
using strata::cat::FiniteCategory;
using strata::cat::group_as_category;
using strata::cat::poset_as_category;
using strata::grp::FiniteGroup;
using strata::poset::GPoset;
using strata::poset::GroupPtr;

namespace {
GroupPtr make(FiniteGroup g) { return std::make_shared<FiniteGroup>(std::move(g)); }
std::shared_ptr<const GPoset> makep(GPoset p) { return std::make_shared<GPoset>(std::move(p)); }
cat::CategoryPtr makec(FiniteCategory c) { return std::make_shared<FiniteCategory>(std::move(c)); }

cat::TransporterCategory s3_s2_transporter() {
    auto s3 = make(FiniteGroup::symmetric3());
    auto sp = poset::build_sp_poset(s3, 2, poset::SpVariant::AllP);
    return build_transporter(s3, makep(std::move(sp.poset)));
}
}  // namespace

TEST_CASE("trivial module basics") {
    PrimeField F2(2);
    auto triv = make(FiniteGroup::trivial());
    auto pt = makec(group_as_category(*triv));
    FunctorModule k = FunctorModule::trivial(pt, F2);
    CHECK(k.total_dim() == 1);

    auto ks3 = makec(group_as_category(FiniteGroup::symmetric3()));
    CHECK(FunctorModule::trivial(ks3, F2).total_dim() == 1);

    auto t = s3_s2_transporter();
    FunctorModule ktriv = FunctorModule::trivial(t.cat, F2);
    CHECK(ktriv.total_dim() == 3);
    CHECK(t.cat->is_connected());
}

TEST_CASE("constant modules along the projection") {
    PrimeField F2(2);
    auto c2 = make(FiniteGroup::cyclic(2));
    auto t = build_transporter(c2, makep(GPoset::chain(c2, 2)));

    // kappa_k = trivial module.
    FunctorModule kk = constant_module(t, F2, trivial_rep(*c2, F2));
    FunctorModule ktriv = FunctorModule::trivial(t.cat, F2);
    auto iso = find_isomorphism(kk, ktriv);
    CHECK(iso.has_value());

    // kappa of the regular module: dimension 2 at both objects.
    FunctorModule kreg = constant_module(t, F2, regular_rep(*c2, F2));
    CHECK(kreg.dims() == std::vector<uint32_t>{2, 2});

    // Swap poset: the action over the swap morphisms is the regular matrix.
    auto tsw = build_transporter(c2, makep(GPoset::c2_swap(c2)));
    FunctorModule kreg2 = constant_module(tsw, F2, regular_rep(*c2, F2));
    bool found_nontrivial = false;
    for (uint32_t m = 0; m < tsw.cat->morphisms(); ++m)
        if (tsw.payload[m][0] != tsw.group->identity()) {
            CHECK(kreg2.action(m) == regular_rep(*c2, F2)[tsw.payload[m][0]]);
            found_nontrivial = true;
        }
    CHECK(found_nontrivial);

    // Rejects non-representations.
    std::vector<DenseMat> bad{DenseMat::identity(1, 2), DenseMat(1, 1, 2)};
    CHECK_THROWS_AS(constant_module(t, F2, bad), std::invalid_argument);
}

TEST_CASE("atomic truncation") {
    PrimeField F2(2);
    auto triv = make(FiniteGroup::trivial());
    auto t = build_transporter(triv, makep(GPoset::chain(triv, 2)));
    FunctorModule k = FunctorModule::trivial(t.cat, F2);
    FunctorModule kx = atomic_truncation(k, 0);
    CHECK(kx.dims() == std::vector<uint32_t>{1, 0});
    FunctorModule ky = atomic_truncation(k, 1);
    CHECK(ky.dims() == std::vector<uint32_t>{0, 1});

    // Truncation over a transitive orbit keeps every object.
    auto ts = s3_s2_transporter();
    FunctorModule kk = FunctorModule::trivial(ts.cat, F2);
    CHECK(atomic_truncation(kk, 1).dims() == std::vector<uint32_t>{1, 1, 1});

    // Truncation at a non-M-object gives the zero module.
    CHECK(atomic_truncation(kx, 1).total_dim() == 0);

    // Filtration dimension bookkeeping: sum over classes = total.
    uint32_t total = 0;
    total += atomic_truncation(k, 0).total_dim();
    total += atomic_truncation(k, 1).total_dim();
    CHECK(total == k.total_dim());
}

TEST_CASE("tensor product with the trivial module is the identity") {
    PrimeField F2(2);
    auto c2 = make(FiniteGroup::cyclic(2));
    auto t = build_transporter(c2, makep(GPoset::chain(c2, 2)));
    FunctorModule k = FunctorModule::trivial(t.cat, F2);
    FunctorModule m = constant_module(t, F2, regular_rep(*c2, F2));
    FunctorModule km = tensor_hat(k, m);
    CHECK(find_isomorphism(km, m).has_value());
    // kappa_M (x) kappa_N = kappa_(M (x) N): here M = N = regular.
    FunctorModule mm = tensor_hat(m, m);
    std::vector<DenseMat> reg = regular_rep(*c2, F2);
    std::vector<DenseMat> kron;
    for (uint32_t g = 0; g < 2; ++g) kron.push_back(reg[g].kron(reg[g]));
    FunctorModule kmn = constant_module(t, F2, kron);
    CHECK(find_isomorphism(mm, kmn).has_value());
    // Zero tensor anything is zero.
    FunctorModule z = FunctorModule::zero(t.cat, F2);
    CHECK(tensor_hat(z, m).total_dim() == 0);
    // Commutativity isomorphism (explicit permutation).
    auto sw = tensor_swap_iso(k, m);
    for (uint32_t x = 0; x < t.cat->objects(); ++x) CHECK(fp::rank(sw[x]) == km.dim(x));
}

TEST_CASE("internal hom: adjunction dimensions and the constant-module formula") {
    PrimeField F2(2);
    auto c2 = make(FiniteGroup::cyclic(2));
    auto t = build_transporter(c2, makep(GPoset::chain(c2, 2)));
    FunctorModule k = FunctorModule::trivial(t.cat, F2);
    FunctorModule m = constant_module(t, F2, regular_rep(*c2, F2));

    // Hom(k, N) = N.
    FunctorModule hkm = internal_hom(k, m);
    CHECK(find_isomorphism(hkm, m).has_value());

    // Hom(kappa_M, kappa_N) = kappa_{Hom_k(M, N)}: for M = N = regular kC_2,
    // Hom_k(M, N) as a kG-module is M* (x) N with g acting by conjugation.
    FunctorModule hmm = internal_hom(m, m);
    std::vector<DenseMat> conj;
    std::vector<DenseMat> reg = regular_rep(*c2, F2);
    for (uint32_t g = 0; g < 2; ++g) conj.push_back(reg[g].transpose().kron(reg[g]).transpose());
    // (transpose twice keeps it a representation: g -> (g^-T) (x) g)
    std::vector<DenseMat> homrep;
    for (uint32_t g = 0; g < 2; ++g) {
        uint32_t ginv = c2->inv(g);
        homrep.push_back(reg[ginv].transpose().kron(reg[g]));
    }
    FunctorModule kh = constant_module(t, F2, homrep);
    CHECK(find_isomorphism(hmm, kh).has_value());

    // Adjunction dimension check with L = M = N = trivial.
    auto lhs = hom_space(tensor_hat(k, k), k);
    auto rhs = hom_space(k, internal_hom(k, k));
    CHECK(lhs.size() == rhs.size());
    // And with L = k, M = N = kappa_regular.
    auto lhs2 = hom_space(tensor_hat(k, m), m);
    auto rhs2 = hom_space(k, internal_hom(m, m));
    CHECK(lhs2.size() == rhs2.size());
}

TEST_CASE("k-dual over the opposite category") {
    PrimeField F2(2);
    auto ts = s3_s2_transporter();
    auto op = makec(cat::opposite_category(*ts.cat));
    FunctorModule k = FunctorModule::trivial(ts.cat, F2);
    FunctorModule kd = k_dual(k, op);
    CHECK(kd.dims() == k.dims());
    // Double dual comes back to the original category with equal dims.
    auto opop = makec(cat::opposite_category(*op));
    FunctorModule kdd = k_dual(kd, opop);
    CHECK(kdd.dims() == k.dims());
    // The dual of the trivial module is trivial over C^op.
    FunctorModule ktriv_op = FunctorModule::trivial(op, F2);
    CHECK(find_isomorphism(kd, ktriv_op).has_value());
}

TEST_CASE("restriction along a functor preserves evaluations") {
    PrimeField F2(2);
    auto c2 = make(FiniteGroup::cyclic(2));
    auto t = build_transporter(c2, makep(GPoset::chain(c2, 2)));
    // pi: transporter -> group category.
    auto gcat = makec(group_as_category(*c2));
    cat::Functor pi{t.cat, gcat, std::vector<uint32_t>(t.cat->objects(), 0), {}};
    pi.mor_map.resize(t.cat->morphisms());
    for (uint32_t m = 0; m < t.cat->morphisms(); ++m) pi.mor_map[m] = t.payload[m][0];
    pi.validate();
    FunctorModule reg = group_module(gcat, F2, regular_rep(*c2, F2));
    FunctorModule res = restrict_along(pi, reg);
    for (uint32_t x = 0; x < t.cat->objects(); ++x) CHECK(res.dim(x) == reg.dim(pi.obj_map[x]));
    // Same thing as the constant module.
    FunctorModule kreg = constant_module(t, F2, regular_rep(*c2, F2));
    CHECK(find_isomorphism(res, kreg).has_value());
}

TEST_CASE("direct sum dimensions and kappa additivity") {
    PrimeField F2(2);
    auto c2 = make(FiniteGroup::cyclic(2));
    auto t = build_transporter(c2, makep(GPoset::point(c2)));
    FunctorModule k = FunctorModule::trivial(t.cat, F2);
    FunctorModule m = constant_module(t, F2, regular_rep(*c2, F2));
    FunctorModule s = direct_sum(k, m);
    CHECK(s.total_dim() == k.total_dim() + m.total_dim());
    // kappa_{M + N} = kappa_M + kappa_N for M = N = k.
    std::vector<DenseMat> two_triv(2, DenseMat::identity(2, 2));
    FunctorModule k2 = constant_module(t, F2, two_triv);
    CHECK(find_isomorphism(direct_sum(k, k), k2).has_value());
}

TEST_CASE("hom space of the trivial module detects connectivity") {
    PrimeField F2(2);
    auto ts = s3_s2_transporter();
    FunctorModule k = FunctorModule::trivial(ts.cat, F2);
    CHECK(hom_space(k, k).size() == 1);  // connected category

    auto triv = make(FiniteGroup::trivial());
    auto disc = build_transporter(triv, makep(GPoset::discrete(triv, 3)));
    FunctorModule kd = FunctorModule::trivial(disc.cat, F2);
    CHECK(hom_space(kd, kd).size() == 3);
}

TEST_CASE("bimodule of the algebra over the envelope") {
    PrimeField F2(2);
    auto c2 = make(FiniteGroup::cyclic(2));
    auto gcat = makec(group_as_category(*c2));
    alg::CategoryAlgebra A(gcat, F2);
    auto env = makec(cat::enveloping_category(*gcat));
    FunctorModule bimod = bimodule_of_algebra(A, env);
    CHECK(bimod.total_dim() == 2);  // kC_2 over its envelope

    auto triv = make(FiniteGroup::trivial());
    auto chain = makec(poset_as_category(GPoset::chain(triv, 2)));
    alg::CategoryAlgebra Ac(chain, F2);
    auto envc = makec(cat::enveloping_category(*chain));
    FunctorModule bmc = bimodule_of_algebra(Ac, envc);
    CHECK(bmc.total_dim() == 3);  // one dimension per morphism
}

TEST_CASE("isomorphism testing is not fooled by equal dimensions") {
    PrimeField F2(2);
    auto c2 = make(FiniteGroup::cyclic(2));
    auto gcat = makec(group_as_category(*c2));
    // k + k vs the regular module: both dimension 2, not isomorphic.
    FunctorModule k = FunctorModule::trivial(gcat, F2);
    FunctorModule kk = direct_sum(k, k);
    FunctorModule reg = group_module(gcat, F2, regular_rep(*c2, F2));
    CHECK(!find_isomorphism(kk, reg).has_value());
    CHECK(find_isomorphism(reg, reg).has_value());
}
