#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "strata/algebra.hpp"
#include "strata/module.hpp"

namespace strata::hml {

using fp::DenseMat;
using fp::PrimeField;
using fp::Vec;

/// A simple kC-module: an isomorphism class together with a simple module of
/// the vertex group algebra, spread across the class.
struct SimpleInfo {
    uint32_t cls;           // iso class index (classes ordered by smallest object)
    uint32_t base_object;   // smallest object of the class
    uint32_t vertex;        // index of the kAut-simple within the class
    Vec idempotent;         // primitive idempotent in kC coordinates
};

/// Minimal projective resolution.  Levels are structural sums of the
/// engine's projective prototypes; differentials are stored through their
/// generator images.
struct Resolution {
    std::vector<std::vector<uint32_t>> summands;  // per level: prototype ids
    std::vector<std::vector<Vec>> gen_images;     // per level: image of each generator
                                                  // (level 0 in M coordinates, level t in level t-1 coordinates)
    std::vector<uint32_t> total_dims;             // per level
    bool terminated = false;                      // a kernel vanished within the requested degree
    std::vector<uint32_t> ranks() const;          // summand counts per level
    uint32_t levels() const { return static_cast<uint32_t>(summands.size()); }
};

struct ExtDegree {
    uint32_t cochain_dim = 0;
    uint32_t ext_dim = 0;
    std::vector<Vec> class_reps;  // reduced cocycle representatives, one per class
    fp::RowBasis coboundaries{0, 2};
    fp::RowBasis class_span{0, 2};
};

struct ExtTable {
    std::vector<ExtDegree> degrees;
    std::vector<uint32_t> dims() const;
};

/// Chain map lifting a degree-s cocycle phi: RM_s -> N through the
/// resolution RN of N: per t, generator images in RN_t coordinates.
struct ChainMap {
    uint32_t shift = 0;
    std::vector<std::vector<Vec>> gen_images;
};

struct ComplexityEstimate {
    std::vector<uint32_t> dims;
    std::vector<uint32_t> ranks;
    uint32_t complexity = 0;
    bool stable = true;
    bool terminated = false;
    uint32_t length = 0;
};

/// An explicit complex of functor modules (used as a lifting target):
/// diff[0] maps T[0] onto the resolved module, diff[t] maps T[t] to T[t-1];
/// all maps as per-object matrices.
struct ExplicitComplex {
    std::vector<rep::FunctorModule> levels;
    std::vector<std::vector<DenseMat>> diff;
};

/// Homological engine over one category algebra: simples, projective covers,
/// minimal resolutions, Ext with products.
class HomologyEngine {
public:
    explicit HomologyEngine(alg::CategoryAlgebra A);

    const alg::CategoryAlgebra& algebra() const { return A_; }
    const std::vector<Vec>& radical_basis() const { return radical_; }
    const std::vector<SimpleInfo>& simples() const { return simples_; }
    const rep::FunctorModule& simple_module(uint32_t s) const { return simple_modules_[s]; }
    const rep::FunctorModule& projective(uint32_t s) const { return protos_[s]; }

    Resolution resolve(const rep::FunctorModule& M, uint32_t max_degree) const;

    rep::FunctorModule level_module(const Resolution& R, uint32_t t) const;
    /// Per-object matrices of level t -> level t-1 (t = 0: augmentation into
    /// M), in the object-major coordinates of level_module.
    std::vector<DenseMat> level_differential(const Resolution& R, uint32_t t,
                                             const rep::FunctorModule& M) const;

    /// Syzygy Omega^n(M) as an explicit functor module (n >= 1).
    rep::FunctorModule syzygy(const Resolution& R, const rep::FunctorModule& M, uint32_t n) const;

    ExtTable ext(const Resolution& RM, const rep::FunctorModule& M, const rep::FunctorModule& N,
                 uint32_t max_degree) const;

    uint32_t cochain_dim(const Resolution& R, const rep::FunctorModule& N, uint32_t level) const;

    /// Evaluate a cochain (coordinates at the given level) on a level vector.
    Vec evaluate_cochain(const Resolution& R, const rep::FunctorModule& N, uint32_t level, const Vec& phi,
                         const Vec& v) const;

    ChainMap lift(const Resolution& RM, const rep::FunctorModule& M, const Resolution& RN,
                  const rep::FunctorModule& N, const Vec& phi, uint32_t s, uint32_t t_max) const;

    /// Yoneda product psi o (lift of phi): phi in C^i(RM, N), psi in
    /// C^s(RN, L); result in C^{i+s}(RM, L).
    Vec yoneda(const Resolution& RM, const rep::FunctorModule& M, const Resolution& RN,
               const rep::FunctorModule& N, const rep::FunctorModule& L, const Vec& phi, uint32_t i,
               const Vec& psi, uint32_t s) const;

    /// Comparison map of RS into an explicit exact complex over the same
    /// category, lifting the identity of MS.  Returns generator images per
    /// level (vectors in the total space of complex.levels[t]).
    std::vector<std::vector<Vec>> compare_with_complex(const Resolution& RS, const rep::FunctorModule& MS,
                                                       const ExplicitComplex& cx, uint32_t t_max) const;

    /// Image of a trivial-pair class zeta (cochain at degree deg of Rk) under
    /// - (x) M, as a cochain in C^deg(RM, M).
    Vec tensor_image(const Resolution& Rk, const rep::FunctorModule& ktriv, const Vec& zeta, uint32_t deg,
                     const Resolution& RM, const rep::FunctorModule& M) const;

    Vec class_coords(const ExtTable& T, uint32_t degree, const Vec& cochain) const;

    Vec level_alg_apply(const Resolution& R, uint32_t level, const Vec& a, const Vec& v) const;
    Vec level_mor_apply(const Resolution& R, uint32_t level, uint32_t m, const Vec& v) const;

private:
    alg::CategoryAlgebra A_;
    std::vector<Vec> radical_;
    std::vector<std::vector<uint32_t>> classes_;
    std::vector<SimpleInfo> simples_;
    std::vector<rep::FunctorModule> simple_modules_;
    std::vector<rep::FunctorModule> protos_;
    std::vector<std::vector<std::vector<Vec>>> proto_basis_alg_;  // proto -> object -> basis index -> kC vector

    struct FNBasis {
        std::vector<fp::RowBasis> per_summand;
        std::vector<uint32_t> offsets;
        uint32_t total = 0;
    };
    FNBasis fn_basis(const Resolution& R, const rep::FunctorModule& N, uint32_t level) const;
    DenseMat cochain_differential(const Resolution& R, const rep::FunctorModule& M,
                                  const rep::FunctorModule& N, uint32_t level) const;
    Vec eval_boundary(const Resolution& R, const rep::FunctorModule& M, uint32_t t, const Vec& v) const;
};

ComplexityEstimate complexity_fit(const Resolution& R, uint32_t max_degree);

struct ProjdimReport {
    bool finite = false;
    std::vector<uint32_t> failing_objects;
    bool resolution_terminated = false;
    uint32_t length = 0;
};
/// Finite projective dimension test: every value of M must be projective
/// over its vertex group algebra; cross-checked against the resolution of M
/// terminating within dim P steps.
ProjdimReport finite_projdim_test(const cat::TransporterCategory& T, const rep::FunctorModule& M,
                                  uint32_t poset_dim);

struct EnvelopeDims {
    std::vector<uint32_t> ext_c;
    std::vector<uint32_t> ext_fc;
    std::vector<uint32_t> hochschild;
    std::vector<uint32_t> hochschild_b0;
    bool factorization_matches = false;
    bool hochschild_dominates = false;
};
EnvelopeDims envelope_and_factorization_dims(cat::CategoryPtr C, PrimeField F, uint32_t max_degree,
                                             std::size_t ceiling, bool with_blocks);

struct RestrictionSquare {
    std::vector<uint32_t> ext_dims_full;
    std::vector<uint32_t> ext_dims_class;
    std::vector<uint32_t> ext_dims_vertex;
    bool commutes = true;
};
RestrictionSquare restriction_on_ext(const cat::TransporterCategory& T, const rep::FunctorModule& M,
                                     const rep::FunctorModule& N, uint32_t object, uint32_t max_degree);

/// The vertex group Aut(x) as a FiniteGroup plus the morphism ids realizing
/// its elements.
std::pair<grp::FiniteGroup, std::vector<uint32_t>> aut_group(const cat::FiniteCategory& C, uint32_t x);

}  // namespace strata::hml
