#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "strata/category.hpp"
#include "strata/errors.hpp"
#include "strata/fp/matrix.hpp"

namespace strata::alg {

using fp::DenseMat;
using fp::PrimeField;
using fp::Vec;

/// Finite-dimensional associative unital algebra over F_p given by its
/// structure constants: table[i*dim+j] = coordinates of b_i * b_j.
struct TableAlgebra {
    PrimeField F{2};
    uint32_t dim = 0;
    std::vector<Vec> table;
    Vec one;

    Vec mul(const Vec& a, const Vec& b) const;
    DenseMat left_mult(const Vec& a) const;
    DenseMat right_mult(const Vec& a) const;
    Vec pow(Vec a, uint32_t e) const;
    bool is_idempotent(const Vec& a) const;
    void validate_associativity() const;
};

/// Group algebra kH with basis the group elements.
TableAlgebra group_algebra(const grp::FiniteGroup& H, PrimeField F);

/// A subquotient S/I of an ambient algebra, with its own structure table and
/// the data to move between ambient vectors and intrinsic coordinates.
struct AlgebraView {
    TableAlgebra alg;
    std::vector<Vec> reps;  // intrinsic basis -> ambient representative
    fp::RowBasis ideal;     // reduce ambient vectors by this first
    fp::RowBasis span;      // RREF of reduced representatives

    Vec to_ambient(const Vec& coords) const;
    Vec coords(const Vec& ambient) const;  // throws when outside the span
};

/// View of span(subspace)/span(ideal) inside an ambient algebra with the
/// given multiplication.  `one_ambient` must be a two-sided unit of the
/// subquotient.
AlgebraView make_view(PrimeField F, uint32_t ambient_dim,
                      const std::function<Vec(const Vec&, const Vec&)>& mul,
                      const std::vector<Vec>& subspace, const std::vector<Vec>& ideal,
                      const Vec& one_ambient);

/// Jacobson radical of a small algebra by the characteristic-polynomial
/// coefficient chain over the prime field: at stage i the linear functional
/// z -> e_{p^i}(eigenvalues of L_z) cuts away the semisimple blocks whose
/// regular multiplicity has p-valuation i.  Returns an RREF basis.
/// The result is verified to be a nilpotent two-sided ideal.
std::vector<Vec> radical_small(const TableAlgebra& A);

/// Basis of the center {z : za = az for all a}.
std::vector<Vec> center_basis(const TableAlgebra& A);

/// Nilradical of a commutative algebra: kernel of the iterated Frobenius.
std::vector<Vec> nilradical_commutative(const TableAlgebra& Z);

/// Complete list of primitive orthogonal idempotents of a commutative
/// algebra (sum = 1): Frobenius fixed-space splitting on the reduced
/// quotient, then Hensel lifting through the nilradical.
std::vector<Vec> commutative_primitive_idempotents(const TableAlgebra& Z);

/// Complete orthogonal primitive idempotent family of a (possibly
/// noncommutative) small algebra with the given radical.  Lifted from the
/// semisimple quotient block by block.
std::vector<Vec> primitive_idempotents(const TableAlgebra& A, const std::vector<Vec>& radical);

/// Simple modules of a small algebra, one per Wedderburn block of A/J,
/// with explicit action matrices for every algebra basis element.
struct SimpleAlgebraModule {
    uint32_t dim = 0;
    std::vector<DenseMat> action;  // per basis element of A
};
std::vector<SimpleAlgebraModule> simple_modules(const TableAlgebra& A, const std::vector<Vec>& radical);

/// The category algebra kC: basis = morphisms, product = composition or 0.
class CategoryAlgebra {
public:
    CategoryAlgebra(cat::CategoryPtr c, PrimeField F);

    uint32_t dim() const { return cat_->morphisms(); }
    const cat::FiniteCategory& category() const { return *cat_; }
    cat::CategoryPtr category_ptr() const { return cat_; }
    const PrimeField& field() const { return F_; }

    Vec unit() const;
    Vec mul(const Vec& a, const Vec& b) const;
    DenseMat left_mult(const Vec& a) const;
    DenseMat right_mult(const Vec& a) const;

    /// Matrix of the action of an algebra element on the trivial module
    /// (objects as basis).
    DenseMat trivial_action(const Vec& a) const;

    /// The subalgebra k Aut(x) with its morphism indices.
    struct AutAlgebra {
        TableAlgebra alg;
        std::vector<uint32_t> morphisms;  // intrinsic basis -> kC morphism id
    };
    AutAlgebra aut_algebra(uint32_t object) const;

    /// Embed a k Aut(x) coordinate vector into kC coordinates.
    Vec embed(const AutAlgebra& aut, const Vec& coords) const;

private:
    cat::CategoryPtr cat_;
    PrimeField F_;
};

/// Jacobson radical of an EI category algebra: the non-isomorphism span
/// together with the matrix-algebra spread of the radicals of the vertex
/// group algebras.  Verified nilpotent two-sided ideal with semisimple
/// quotient.  Rejects non-EI categories.
struct RadicalResult {
    std::vector<Vec> basis;       // RREF basis of J(kC)
    uint32_t nilpotency_index;    // least N with J^N = 0
};
RadicalResult radical_ei(const CategoryAlgebra& A);

struct BlockDecomposition {
    std::vector<Vec> idempotents;  // central, orthogonal, primitive, sum 1
    std::vector<uint32_t> dims;    // dim of e_i * kC
    uint32_t principal;            // index of the block with e_i acting nonzero on the trivial module
};
BlockDecomposition blocks(const CategoryAlgebra& A);

/// Skew group algebra kP[G] with basis (poset pair, group element) and the
/// isomorphism with the transporter category algebra of Lemma-level checks:
/// forward (g, gx<=y) -> (gx<=y) (x) g.
struct SkewIsoResult {
    std::vector<std::pair<uint32_t, uint32_t>> skew_basis;  // (pair id, g)
    std::vector<std::pair<uint32_t, uint32_t>> poset_pairs;  // pair id -> (x, y)
    std::vector<uint32_t> forward;   // morphism id -> skew basis id
    std::vector<uint32_t> backward;  // skew basis id -> morphism id
    std::size_t checked_pairs = 0;   // multiplicativity checks performed
};
SkewIsoResult skew_iso(const cat::TransporterCategory& T, PrimeField F);

}  // namespace strata::alg
