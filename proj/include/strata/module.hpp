#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "strata/algebra.hpp"
#include "strata/category.hpp"
#include "strata/fp/matrix.hpp"

namespace strata::rep {

using fp::DenseMat;
using fp::PrimeField;
using fp::Vec;

/// A kC-module as a functor: a dimension per object and a matrix per
/// morphism.  Functoriality (identities to identities, T_{ba} = T_b T_a) is
/// checked exhaustively at construction.
class FunctorModule {
public:
    FunctorModule(cat::CategoryPtr c, PrimeField F, std::vector<uint32_t> dims, std::vector<DenseMat> action);

    static FunctorModule trivial(cat::CategoryPtr c, PrimeField F);
    static FunctorModule zero(cat::CategoryPtr c, PrimeField F);

    const cat::FiniteCategory& category() const { return *cat_; }
    cat::CategoryPtr category_ptr() const { return cat_; }
    const PrimeField& field() const { return F_; }

    uint32_t dim(uint32_t x) const { return dims_[x]; }
    const std::vector<uint32_t>& dims() const { return dims_; }
    uint32_t total_dim() const { return total_; }
    uint32_t offset(uint32_t x) const { return offset_[x]; }
    const DenseMat& action(uint32_t m) const { return act_[m]; }

    /// Action of a basis morphism on a total-space vector.
    Vec mor_apply(uint32_t m, const Vec& v) const;
    /// Action of an algebra element (coefficients over morphisms).
    Vec alg_apply(const Vec& a, const Vec& v) const;

    bool is_zero() const { return total_ == 0; }

private:
    cat::CategoryPtr cat_;
    PrimeField F_;
    std::vector<uint32_t> dims_;
    std::vector<DenseMat> act_;
    std::vector<uint32_t> offset_;
    uint32_t total_ = 0;
};

/// kappa_M: the restriction of a kG-module along the projection functor of a
/// transporter category.  `group_matrices` has one matrix per group element
/// and is validated as a representation.
FunctorModule constant_module(const cat::TransporterCategory& T, PrimeField F,
                              const std::vector<DenseMat>& group_matrices);

/// The regular representation matrices of a group (for kappa_{kG}).
std::vector<DenseMat> regular_rep(const grp::FiniteGroup& G, PrimeField F);
/// One-dimensional trivial representation matrices.
std::vector<DenseMat> trivial_rep(const grp::FiniteGroup& G, PrimeField F);

/// A kG-module given by matrices, as a module over the one-object category.
FunctorModule group_module(cat::CategoryPtr group_cat, PrimeField F, const std::vector<DenseMat>& matrices);

/// Brutal truncation to the isomorphism class of `object`: values kept on
/// the class, all other objects zero, non-isomorphisms act as zero.
FunctorModule atomic_truncation(const FunctorModule& M, uint32_t object);

/// The submodule M_hat{x} (values of M away from the minimal class [x]) in
/// the atomic filtration sequence 0 -> M_hat -> M -> M_x -> 0.  `object`
/// must be minimal among M-objects.
FunctorModule atomic_kernel(const FunctorModule& M, uint32_t object);

FunctorModule direct_sum(const FunctorModule& A, const FunctorModule& B);
FunctorModule tensor_hat(const FunctorModule& A, const FunctorModule& B);

/// The swap isomorphism A (x) B -> B (x) A as per-object permutation
/// matrices.
std::vector<DenseMat> tensor_swap_iso(const FunctorModule& A, const FunctorModule& B);

/// k-linear dual as a module over the opposite category (matrices
/// transposed along reversed arrows).
FunctorModule k_dual(const FunctorModule& M, cat::CategoryPtr opposite);

/// Restriction along a functor: (Res M)(d) = M(tau d).
FunctorModule restrict_along(const cat::Functor& tau, const FunctorModule& M);

/// Internal hom of transporter-category modules via the Yoneda formula
/// Hom(M,N)(x) = Hom_kC(kHom(x,-) (x) M, N).
FunctorModule internal_hom(const FunctorModule& M, const FunctorModule& N);

/// The corner projective kHom(x,-) as a functor module.
FunctorModule hom_functor_module(cat::CategoryPtr c, PrimeField F, uint32_t x);

/// Basis of the intertwiner space Hom_kC(M, N), each given by per-object
/// matrices.
std::vector<std::vector<DenseMat>> hom_space(const FunctorModule& M, const FunctorModule& N);

/// kC as a module over C^e = C x C^op (objects indexed (x,y) -> x*|Ob C|+y,
/// value kHom(y,x)); the Hochschild coefficient module.  `e` optionally cuts
/// down to a block: value e*kHom(y,x).
FunctorModule bimodule_of_algebra(const alg::CategoryAlgebra& A, cat::CategoryPtr envelope,
                                  const Vec* block_idempotent = nullptr);

/// Exact isomorphism test: equal dimension vectors plus an invertible
/// intertwiner (searched deterministically, then with a fixed-seed sampler).
/// A returned witness is exact; nullopt means no isomorphism was found.
std::optional<std::vector<DenseMat>> find_isomorphism(const FunctorModule& M, const FunctorModule& N);

}  // namespace strata::rep
